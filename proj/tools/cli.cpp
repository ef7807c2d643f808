// Copyright 2026 The permkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "permkit/bosonic.hpp"
#include "permkit/error.hpp"
#include "permkit/estimators.hpp"
#include "permkit/identities.hpp"
#include "permkit/json_io.hpp"
#include "permkit/permanents.hpp"

namespace permkit::cli {

namespace {

// Raw option values as given on the command line; typed parsing happens in
// the handlers so that library errors map onto exit code 1 uniformly.
struct Options {
    std::string manifest_path;

    // per / estimate / verify / report variance
    std::string algo = "ryser";
    std::string matrix_path;
    std::string b_path;
    std::string rows_path;
    std::string cols_path;

    // verify
    std::string identity;
    bool all = false;
    std::optional<unsigned> cap;
    double tolerance = kDefaultTolerance;

    std::uint64_t seed = 0;

    // estimate
    std::string f = "pown";
    std::vector<std::string> f_list{"pown", "exp", "geom"};
    std::uint64_t samples = 100000;
    unsigned streams = 4;
    std::optional<unsigned> power;

    // sample
    std::string unitary_path;
    std::string input = "fock";
    std::string alpha = "1";
    unsigned n = 0;
    std::optional<unsigned> cutoff;
    std::uint64_t count = 1000;
    std::optional<unsigned> reject_to;

    // report regime
    std::size_t modes = 2;
    double c = 1.0;
};

Complex parse_alpha(const std::string &text) {
    std::istringstream in(text);
    double re = 0.0;
    double im = 0.0;
    char sep = 0;
    if (!(in >> re)) {
        throw Error(ErrorCode::ParseError, "--alpha expects re[,im]");
    }
    if (in >> sep) {
        if (sep != ',' || !(in >> im)) {
            throw Error(ErrorCode::ParseError, "--alpha expects re[,im]");
        }
    }
    std::string rest;
    if (in >> rest) {
        throw Error(ErrorCode::ParseError, "--alpha expects re[,im]");
    }
    return {re, im};
}

ComplexMatrix load_matrix(const std::string &path) {
    return matrix_from_json(read_json_file(path));
}

/// Rows/cols files are optional and default to all ones.
RepetitionPattern load_pattern(const Options &o, std::size_t dim) {
    RepetitionPattern pat = RepetitionPattern::identity(dim);
    if (!o.rows_path.empty()) {
        pat.rows = multi_index_from_json(read_json_file(o.rows_path));
    }
    if (!o.cols_path.empty()) {
        pat.cols = multi_index_from_json(read_json_file(o.cols_path));
    }
    if (pat.rows.size() != dim || pat.cols.size() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "rows/cols must have one entry per matrix row/column");
    }
    return pat;
}

struct Outcome {
    std::string text;
    int code = 0;
};

Outcome cmd_per(const Options &o) {
    const auto algo = parse_algorithm(o.algo);
    if (!algo) {
        throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + o.algo + "'");
    }
    const ComplexMatrix a = load_matrix(o.matrix_path);
    std::optional<RepetitionPattern> pat;
    if (!o.rows_path.empty() || !o.cols_path.empty()) {
        pat = load_pattern(o, a.dim());
    }
    std::optional<ComplexMatrix> b;
    if (!o.b_path.empty()) {
        b = load_matrix(o.b_path);
    }
    return {to_json(permanent(*algo, a, pat, b)).dump() + "\n", 0};
}

Outcome cmd_verify(const Options &o) {
    VerifyOptions vo;
    vo.seed = o.seed;
    vo.tolerance = o.tolerance;
    vo.cap = o.cap;
    if (!o.matrix_path.empty()) {
        vo.matrix = load_matrix(o.matrix_path);
    }
    if (o.all) {
        const auto reports = run_all_identities(vo);
        Json arr = Json::array();
        bool ok = true;
        for (const auto &r : reports) {
            arr.push_back(to_json(r));
            ok = ok && r.passed;
        }
        return {arr.dump(2) + "\n", ok ? 0 : 2};
    }
    const IdentityReport r = run_identity(o.identity, vo);
    return {to_json(r).dump(2) + "\n", r.passed ? 0 : 2};
}

EstimatorOptions estimator_options(const Options &o) {
    EstimatorOptions eo;
    eo.samples = o.samples;
    eo.seed = o.seed;
    eo.streams = o.streams;
    eo.power = o.power;
    return eo;
}

Outcome cmd_estimate(const Options &o) {
    const ComplexMatrix a = load_matrix(o.matrix_path);
    const RepetitionPattern pat = load_pattern(o, a.dim());
    const EstimatorFunction f = parse_estimator_function(o.f);
    return {to_json(estimate_permanent(a, pat, f, estimator_options(o))).dump(2) + "\n", 0};
}

Outcome cmd_sample(const Options &o) {
    const UnitaryMatrix u(load_matrix(o.unitary_path));
    const unsigned cutoff = o.cutoff.value_or(o.n + 6);
    OutcomeDistribution dist;
    std::optional<CatInputSpec> spec;
    if (o.input == "fock") {
        dist = bs_distribution(u, o.n);
    } else if (o.input == "cat") {
        spec = CatInputSpec{parse_alpha(o.alpha), o.n, u.dim()};
        dist = cat_distribution(u, *spec, cutoff);
    } else {
        throw Error(ErrorCode::InvalidArgument, "--input must be fock or cat");
    }
    const auto samples = sample(dist, o.count, o.seed);

    std::ostringstream lines;
    std::uint64_t kept = 0;
    std::uint64_t overflow = 0;
    for (const auto &s : samples) {
        if (!s) {
            ++overflow;
        }
        if (o.reject_to && (!s || s->weight() != *o.reject_to)) {
            continue;
        }
        ++kept;
        lines << (s ? Json{{"outcome", multi_index_to_json(*s)}} : Json{{"outcome", nullptr}, {"overflow", true}}).dump()
              << "\n";
    }

    Json summary{{"input", o.input},
                 {"n", o.n},
                 {"count", o.count},
                 {"seed", o.seed},
                 {"support_size", dist.support.size()},
                 {"truncated_mass", dist.truncated_mass},
                 {"overflow", overflow}};
    if (spec) {
        summary["cutoff"] = cutoff;
        summary["tail_bound"] = dist.tail_bound;
    }
    const unsigned target = o.reject_to.value_or(o.n);
    if (o.reject_to) {
        summary["reject_to"] = target;
        summary["kept"] = kept;
        summary["kept_fraction"] = o.count ? static_cast<double>(kept) / static_cast<double>(o.count) : 0.0;
        if (spec && target == o.n) {
            const double f = photon_fraction(spec->alpha, o.n);
            summary["expected_fraction"] = f;
            summary["binomial_stderr"] = o.count ? std::sqrt(f * (1.0 - f) / static_cast<double>(o.count)) : 0.0;
        }
    }
    // Compare the |p| = target samples with the exact single-photon law when that is the reference.
    if (target == o.n) {
        const auto exact = bs_distribution(u, o.n);
        const auto empirical = empirical_distribution(samples, o.n);
        std::uint64_t matched = 0;
        for (const auto &s : samples) {
            matched += (s && s->weight() == o.n) ? 1 : 0;
        }
        if (matched > 0) {
            summary["tv_distance"] = total_variation(empirical, exact.support);
            summary["tv_bound"] =
                3.0 * std::sqrt(static_cast<double>(exact.support.size()) / static_cast<double>(matched));
        }
    }
    lines << Json{{"summary", summary}}.dump() << "\n";
    return {lines.str(), 0};
}

Outcome cmd_report_regime(const Options &o) {
    return {to_json(amplitude_regime_check(o.n, o.modes, o.c)).dump(2) + "\n", 0};
}

Outcome cmd_report_variance(const Options &o) {
    const ComplexMatrix a = load_matrix(o.matrix_path);
    const RepetitionPattern pat = load_pattern(o, a.dim());
    std::vector<EstimatorFunction> fs;
    for (const auto &name : o.f_list) {
        fs.push_back(parse_estimator_function(name));
    }
    Json arr = Json::array();
    for (const auto &r : estimator_variance_scan(a, pat, fs, estimator_options(o))) {
        arr.push_back(to_json(r));
    }
    return {arr.dump(2) + "\n", 0};
}

Json collect_parameters(const CLI::App &cmd) {
    Json params = Json::object();
    for (const CLI::Option *opt : cmd.get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") {
            continue;
        }
        const auto &res = opt->results();
        std::string key = opt->get_name();
        while (!key.empty() && key.front() == '-') {
            key.erase(key.begin());
        }
        if (opt->get_expected_max() == 0) {
            params[key] = true;
        } else if (res.size() == 1) {
            params[key] = res.front();
        } else {
            params[key] = res;
        }
    }
    return params;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Permanent algorithms, identity verification, estimators and boson sampling", "permkit"};
    app.require_subcommand(1);
    app.add_option("--manifest", o.manifest_path, "Write the run manifest to FILE instead of standard error");

    CLI::App *per = app.add_subcommand("per", "Compute Per(A_{p,q})");
    per->add_option("--algo", o.algo, "naive|ryser|glynn|glynn_repeated_rows|roots_of_unity|glynn_kan|"
                                      "glynn_kan_repeated|cauchy_binet|ryser_repeated")
        ->capture_default_str();
    per->add_option("--matrix", o.matrix_path, "Matrix JSON file")->required();
    per->add_option("--rows", o.rows_path, "Row repetitions p (JSON array)");
    per->add_option("--cols", o.cols_path, "Column repetitions q (JSON array)");
    per->add_option("--b", o.b_path, "Second factor for cauchy_binet (default identity)");

    CLI::App *verify = app.add_subcommand("verify", "Check permanent identities");
    auto *ident = verify->add_option("--identity", o.identity, "Identity name");
    auto *all = verify->add_flag("--all", o.all, "Run the full battery");
    ident->excludes(all);
    verify->add_option("--matrix", o.matrix_path, "Replace the random matrix in single-matrix checks");
    verify->add_option("--cap", o.cap, "Per-variable degree cap");
    verify->add_option("--seed", o.seed)->capture_default_str();
    verify->add_option("--tolerance", o.tolerance)->capture_default_str();

    CLI::App *estimate = app.add_subcommand("estimate", "Monte Carlo permanent estimate");
    estimate->add_option("--matrix", o.matrix_path)->required();
    estimate->add_option("--rows", o.rows_path);
    estimate->add_option("--cols", o.cols_path);
    estimate->add_option("--f", o.f, "exp|pown|geom")->capture_default_str();
    estimate->add_option("--samples", o.samples)->capture_default_str();
    estimate->add_option("--seed", o.seed)->capture_default_str();
    estimate->add_option("--streams", o.streams)->capture_default_str();
    estimate->add_option("--power", o.power, "Degree of the monomial for pown (default n)");

    CLI::App *samp = app.add_subcommand("sample", "Sample photon-count outcomes");
    samp->add_option("--unitary", o.unitary_path)->required();
    samp->add_option("--input", o.input, "fock|cat")->capture_default_str();
    samp->add_option("--alpha", o.alpha, "Cat amplitude re[,im]")->capture_default_str();
    samp->add_option("--n", o.n, "Number of occupied input modes")->required();
    samp->add_option("--cutoff", o.cutoff, "Largest total photon number enumerated (default n + 6)");
    samp->add_option("--count", o.count)->capture_default_str();
    samp->add_option("--seed", o.seed)->capture_default_str();
    samp->add_option("--reject-to", o.reject_to, "Keep only outcomes with this total photon number");

    CLI::App *report = app.add_subcommand("report", "Tabulations");
    report->require_subcommand(1);
    CLI::App *regime = report->add_subcommand("regime", "Photon fraction at alpha = c n^{-1/4} (ln m)^{1/4}");
    regime->add_option("--n", o.n)->required();
    regime->add_option("--m", o.modes)->required();
    regime->add_option("--c", o.c)->capture_default_str();
    CLI::App *variance = report->add_subcommand("variance", "Estimator variance per analytic function");
    variance->add_option("--matrix", o.matrix_path)->required();
    variance->add_option("--rows", o.rows_path);
    variance->add_option("--cols", o.cols_path);
    variance->add_option("--f", o.f_list, "Functions to compare")->delimiter(',')->capture_default_str();
    variance->add_option("--samples", o.samples)->capture_default_str();
    variance->add_option("--seed", o.seed)->capture_default_str();
    variance->add_option("--streams", o.streams)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (verify->parsed() && !o.all && o.identity.empty()) {
            throw CLI::RequiredError("--identity or --all");
        }
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const CLI::App *cmd = per->parsed()        ? per
                          : verify->parsed()   ? verify
                          : estimate->parsed() ? estimate
                          : samp->parsed()     ? samp
                          : regime->parsed()   ? regime
                                               : variance;
    std::string command = cmd->get_name();
    if (cmd == regime || cmd == variance) {
        command = "report " + command;
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome result;
    std::optional<std::string> failure;
    try {
        if (cmd == per) result = cmd_per(o);
        else if (cmd == verify) result = cmd_verify(o);
        else if (cmd == estimate) result = cmd_estimate(o);
        else if (cmd == samp) result = cmd_sample(o);
        else if (cmd == regime) result = cmd_report_regime(o);
        else result = cmd_report_variance(o);
    } catch (const Error &e) {
        failure = e.what();
    } catch (const std::exception &e) {
        failure = std::string("error: ") + e.what();
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

    const Json manifest{{"command", command},
                        {"parameters", collect_parameters(*cmd)},
                        {"seed", o.seed},
                        {"tool_version", kToolVersion},
                        {"wall_time_ms", elapsed.count()}};
    if (!o.manifest_path.empty()) {
        std::ofstream mf(o.manifest_path);
        if (!mf) {
            err << "cannot write manifest to '" << o.manifest_path << "'\n";
            return 1;
        }
        mf << manifest.dump(2) << "\n";
    } else {
        err << manifest.dump() << "\n";
    }

    if (failure) {
        err << *failure << "\n";
        return 1;
    }
    out << result.text;
    return result.code;
}

}  // namespace permkit::cli
