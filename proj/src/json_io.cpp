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

#include "permkit/json_io.hpp"

#include <cmath>
#include <fstream>

#include "permkit/error.hpp"

namespace permkit {

namespace {

// JSON has no infinity; errors that overflowed are written as null.
Json finite_or_null(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

double as_number(const Json &j, const char *what) {
    if (!j.is_number()) {
        throw Error(ErrorCode::ParseError, std::string(what) + " must be a number");
    }
    return j.get<double>();
}

}  // namespace

ComplexMatrix matrix_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw Error(ErrorCode::ParseError, "matrix must be an object with \"dim\" and \"entries\"");
    }
    const Json &dim_j = j.at("dim");
    if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) {
        throw Error(ErrorCode::ParseError, "\"dim\" must be a positive integer");
    }
    const auto dim = static_cast<std::size_t>(dim_j.get<long long>());
    const Json &entries = j.at("entries");
    if (!entries.is_array()) {
        throw Error(ErrorCode::ParseError, "\"entries\" must be an array");
    }
    if (entries.size() != dim * dim) {
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim * dim) + " entries, got " +
                                                      std::to_string(entries.size()));
    }
    ComplexMatrix a(dim, dim);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const Json &e = entries[k];
        if (!e.is_array() || e.size() != 2) {
            throw Error(ErrorCode::ParseError, "entry " + std::to_string(k) + " must be [re, im]");
        }
        const Complex z(as_number(e[0], "re"), as_number(e[1], "im"));
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorCode::ParseError, "entry " + std::to_string(k) + " is not finite");
        }
        a(k / dim, k % dim) = z;
    }
    return a;
}

Json matrix_to_json(const ComplexMatrix &a) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            entries.push_back({a(i, j).real(), a(i, j).imag()});
        }
    }
    return Json{{"dim", a.rows()}, {"entries", std::move(entries)}};
}

MultiIndex multi_index_from_json(const Json &j) {
    if (!j.is_array()) {
        throw Error(ErrorCode::ParseError, "multi-index must be an array of non-negative integers");
    }
    std::vector<unsigned> parts;
    for (const Json &v : j) {
        if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000000) {
            throw Error(ErrorCode::ParseError, "multi-index entries must be non-negative integers");
        }
        parts.push_back(static_cast<unsigned>(v.get<long long>()));
    }
    return MultiIndex(std::move(parts));
}

Json multi_index_to_json(const MultiIndex &p) {
    return Json(p.parts());
}

Json complex_to_json(Complex z) {
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

Json to_json(const PermanentResult &r) {
    return Json{{"re", r.value.real()},
                {"im", r.value.imag()},
                {"algo", std::string(algorithm_name(r.algorithm))},
                {"terms", r.term_count},
                {"weight_mismatch", r.weight_mismatch}};
}

Json to_json(const IdentityReport &r) {
    return Json{{"identity_name", r.identity_name},
                {"passed", r.passed},
                {"exact", r.exact},
                {"max_abs_error", finite_or_null(r.max_abs_error)},
                {"max_scaled_error", finite_or_null(r.max_scaled_error)},
                {"num_coefficients_checked", r.num_coefficients_checked},
                {"caps_used", multi_index_to_json(r.caps_used)},
                {"tolerance", r.tolerance},
                {"tail_bound", r.tail_bound},
                {"note", r.note}};
}

Json to_json(const EstimateReport &r) {
    return Json{{"estimate", complex_to_json(r.estimate)},
                {"stderr", r.standard_error},
                {"variance", r.variance},
                {"samples", r.samples},
                {"seed", r.seed},
                {"f_choice", std::string(estimator_function_name(r.f_choice))},
                {"streams", r.streams},
                {"radius", r.radius}};
}

Json to_json(const PipelineReport &r) {
    return Json{{"samples", r.samples},
                {"kept", r.kept},
                {"overflow", r.overflow},
                {"kept_fraction", r.kept_fraction},
                {"expected_fraction", r.expected_fraction},
                {"binomial_stderr", r.binomial_stderr},
                {"fraction_ok", r.fraction_ok},
                {"tv_distance", r.tv_distance},
                {"tv_bound", r.tv_bound},
                {"tv_ok", r.tv_ok},
                {"support_size", r.support_size},
                {"truncated_mass", r.truncated_mass}};
}

Json to_json(const RegimeReport &r) {
    return Json{{"n", r.n},
                {"m", r.m},
                {"c", r.c},
                {"alpha", r.alpha},
                {"defined", r.defined},
                {"fraction", r.fraction},
                {"leading_order", r.leading_order},
                {"floor", r.floor},
                {"above_floor", r.above_floor}};
}

}  // namespace permkit
