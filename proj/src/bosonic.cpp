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

#include "permkit/bosonic.hpp"

#include <algorithm>
#include <cmath>

#include "permkit/error.hpp"
#include "permkit/parallel.hpp"
#include "permkit/permanents.hpp"
#include "permkit/random.hpp"

namespace permkit {

namespace {

void check_spec(const UnitaryMatrix &u, const CatInputSpec &spec) {
    if (spec.m != u.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "mode count does not match unitary");
    }
    if (spec.n > spec.m) {
        throw Error(ErrorCode::InvalidArgument, "more cat modes than modes");
    }
    if (spec.alpha == 0.0) {
        throw Error(ErrorCode::ZeroAmplitude, "cat amplitude must be nonzero");
    }
}

double sqrt_factorial_product(const MultiIndex &p) {
    double out = 1.0;
    for (unsigned v : p) {
        out *= std::sqrt(std::tgamma(v + 1.0));
    }
    return out;
}

/// Distribution of the total photon number of n cat modes, up to `cutoff`.
std::vector<double> cat_photon_number(double t, unsigned n, unsigned cutoff) {
    std::vector<double> single(cutoff + 1, 0.0);
    const double norm = std::sinh(t);
    for (unsigned k = 1; k <= cutoff; k += 2) {
        single[k] = std::exp(k * std::log(t) - std::lgamma(k + 1.0)) / norm;
    }
    std::vector<double> dist(cutoff + 1, 0.0);
    dist[0] = 1.0;
    for (unsigned mode = 0; mode < n; ++mode) {
        std::vector<double> next(cutoff + 1, 0.0);
        for (unsigned a = 0; a <= cutoff; ++a) {
            if (dist[a] == 0.0) {
                continue;
            }
            for (unsigned b = 0; a + b <= cutoff; ++b) {
                next[a + b] += dist[a] * single[b];
            }
        }
        dist = std::move(next);
    }
    return dist;
}

OutcomeDistribution finalize(std::vector<std::map<MultiIndex, double>> strata, unsigned cutoff, double tail) {
    OutcomeDistribution out;
    out.cutoff = cutoff;
    for (auto &s : strata) {
        out.support.merge(s);
    }
    out.truncated_mass = std::max(0.0, 1.0 - out.total());
    out.tail_bound = tail;
    return out;
}

}  // namespace

double OutcomeDistribution::probability(const MultiIndex &p) const {
    const auto it = support.find(p);
    return it == support.end() ? 0.0 : it->second;
}

double OutcomeDistribution::total() const {
    double s = 0.0;
    for (const auto &[p, prob] : support) {
        s += prob;
    }
    return s;
}

Complex fock_amplitude(const UnitaryMatrix &u, const MultiIndex &p, const MultiIndex &q) {
    if (p.size() != u.dim() || q.size() != u.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "occupation vectors must have one entry per mode");
    }
    if (p.weight() != q.weight()) {
        return 0.0;
    }
    if (p.weight() == 0) {
        return 1.0;
    }
    const Complex per = permanent_ryser(repeat_matrix(u.matrix(), {p, q})).value;
    return per / (sqrt_factorial_product(p) * sqrt_factorial_product(q));
}

OutcomeDistribution bs_distribution(const UnitaryMatrix &u, unsigned n) {
    const std::size_t m = u.dim();
    if (n > m) {
        throw Error(ErrorCode::InvalidArgument, "more photons than input modes");
    }
    if (count_weight(m, n) > kTermBudget) {
        throw Error(ErrorCode::TooLarge, "outcome space exceeds budget");
    }
    MultiIndex input = MultiIndex::zeros(m);
    for (unsigned i = 0; i < n; ++i) {
        input[i] = 1;
    }
    const auto outcomes = enumerate_weight(m, n);
    std::vector<double> probs(outcomes.size());
    parallel_for(outcomes.size(), [&](std::size_t i) { probs[i] = std::norm(fock_amplitude(u, outcomes[i], input)); });
    std::vector<std::map<MultiIndex, double>> strata(1);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        strata[0].emplace(outcomes[i], probs[i]);
    }
    OutcomeDistribution out = finalize(std::move(strata), n, 0.0);
    out.truncated_mass = 0.0;
    return out;
}

Complex cat_amplitude(const UnitaryMatrix &u, const CatInputSpec &spec, const MultiIndex &p) {
    check_spec(u, spec);
    const std::size_t m = u.dim();
    if (p.size() != m) {
        throw Error(ErrorCode::DimensionMismatch, "occupation vector must have one entry per mode");
    }
    const unsigned n = spec.n;
    const unsigned total = p.weight();
    // Flipping every sign multiplies a term by (-1)^{n + |p|}.
    if (total < n || (total - n) % 2 != 0) {
        return 0.0;
    }
    if (n == 0) {
        return total == 0 ? Complex(1.0) : Complex(0.0);
    }
    if (n > 40) {
        throw Error(ErrorCode::TooLarge, "sign sum over more than 2^40 terms");
    }
    const ComplexMatrix &um = u.matrix();
    // s_i = sum_{j < n} u_ij x_j with x_0 fixed to +1; the remaining signs follow a Gray code.
    std::vector<Complex> s(m, 0.0);
    std::vector<int> x(n, 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            s[i] += um(i, j);
        }
    }
    auto term = [&](int sign) {
        Complex t = static_cast<double>(sign);
        for (std::size_t i = 0; i < m; ++i) {
            if (p[i] > 0) {
                t *= int_pow(s[i], p[i]);
            }
        }
        return t;
    };
    int sign = 1;
    Complex sum = term(sign);
    for_each_gray_flip(n - 1, [&](std::uint64_t, unsigned bit) {
        const unsigned j = bit + 1;
        x[j] = -x[j];
        sign = -sign;
        for (std::size_t i = 0; i < m; ++i) {
            s[i] += 2.0 * x[j] * um(i, j);
        }
        sum += term(sign);
    });
    const double t = std::norm(spec.alpha);
    // The full 2^n sum is twice the half sum.
    const Complex prefactor = std::pow(spec.alpha, static_cast<double>(total)) * 2.0 /
                              (std::pow(std::sinh(t), n / 2.0) * std::pow(2.0, n) * sqrt_factorial_product(p));
    return prefactor * sum;
}

OutcomeDistribution cat_distribution(const UnitaryMatrix &u, const CatInputSpec &spec, unsigned cutoff) {
    check_spec(u, spec);
    if (cutoff < spec.n) {
        throw Error(ErrorCode::InvalidArgument, "cutoff must be at least n");
    }
    const std::size_t m = u.dim();
    std::uint64_t outcomes = 0;
    for (unsigned k = spec.n; k <= cutoff; k += 2) {
        outcomes += count_weight(m, k);
    }
    if (outcomes > kTermBudget) {
        throw Error(ErrorCode::TooLarge, "outcome space exceeds budget");
    }
    std::vector<unsigned> levels;
    for (unsigned k = spec.n; k <= cutoff; k += 2) {
        levels.push_back(k);
    }
    std::vector<std::map<MultiIndex, double>> strata(levels.size());
    parallel_for(levels.size(), [&](std::size_t li) {
        for (const MultiIndex &p : enumerate_weight(m, levels[li])) {
            strata[li].emplace(p, std::norm(cat_amplitude(u, spec, p)));
        }
    });
    // Sum the photon-number law directly past the cutoff; its terms decay
    // factorially once k exceeds n |alpha|^2.
    const double t = std::norm(spec.alpha);
    const unsigned horizon = cutoff + 64 + static_cast<unsigned>(std::ceil(20.0 * spec.n * t));
    const auto photons = cat_photon_number(t, spec.n, horizon);
    double tail = 0.0;
    for (unsigned k = horizon; k > cutoff; --k) {
        tail += photons[k];
    }
    return finalize(std::move(strata), cutoff, tail);
}

double photon_fraction(Complex alpha, unsigned n) {
    if (alpha == 0.0) {
        throw Error(ErrorCode::ZeroAmplitude, "photon fraction undefined for alpha = 0");
    }
    const double t = std::norm(alpha);
    return std::pow(t / std::sinh(t), static_cast<double>(n));
}

OutcomeDistribution reject_to_fixed_n(const OutcomeDistribution &dist, unsigned n) {
    OutcomeDistribution out;
    out.cutoff = n;
    double mass = 0.0;
    for (const auto &[p, prob] : dist.support) {
        if (p.weight() == n) {
            mass += prob;
        }
    }
    if (!(mass > 0.0)) {
        throw Error(ErrorCode::EmptyConditioning, "no mass at total photon number " + std::to_string(n));
    }
    for (const auto &[p, prob] : dist.support) {
        if (p.weight() == n) {
            out.support.emplace(p, prob / mass);
        }
    }
    return out;
}

std::vector<SampledOutcome> sample(const OutcomeDistribution &dist, std::uint64_t count, std::uint64_t seed) {
    std::vector<const MultiIndex *> keys;
    std::vector<double> cdf;
    double acc = 0.0;
    for (const auto &[p, prob] : dist.support) {
        acc += prob;
        keys.push_back(&p);
        cdf.push_back(acc);
    }
    const double total = acc + dist.truncated_mass;
    std::vector<SampledOutcome> out;
    out.reserve(count);
    Rng rng(seed, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double u = rng.uniform() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) {
            out.emplace_back(std::nullopt);
        } else {
            out.emplace_back(*keys[static_cast<std::size_t>(it - cdf.begin())]);
        }
    }
    return out;
}

double total_variation(const std::map<MultiIndex, double> &a, const std::map<MultiIndex, double> &b) {
    double sum = 0.0;
    for (const auto &[p, prob] : a) {
        const auto it = b.find(p);
        sum += std::abs(prob - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto &[p, prob] : b) {
        if (!a.contains(p)) {
            sum += std::abs(prob);
        }
    }
    return 0.5 * sum;
}

std::map<MultiIndex, double> empirical_distribution(const std::vector<SampledOutcome> &samples, unsigned n) {
    std::map<MultiIndex, double> out;
    std::uint64_t kept = 0;
    for (const auto &s : samples) {
        if (s && s->weight() == n) {
            out[*s] += 1.0;
            ++kept;
        }
    }
    for (auto &[p, v] : out) {
        v /= static_cast<double>(kept);
    }
    return out;
}

PipelineReport rejection_sampling_pipeline(const UnitaryMatrix &u, const CatInputSpec &spec, unsigned cutoff,
                                           std::uint64_t count, std::uint64_t seed) {
    const OutcomeDistribution cat = cat_distribution(u, spec, cutoff);
    const OutcomeDistribution bs = bs_distribution(u, spec.n);
    const auto samples = sample(cat, count, seed);
    PipelineReport rep;
    rep.samples = count;
    rep.truncated_mass = cat.truncated_mass;
    for (const auto &s : samples) {
        if (!s) {
            ++rep.overflow;
        } else if (s->weight() == spec.n) {
            ++rep.kept;
        }
    }
    rep.expected_fraction = photon_fraction(spec.alpha, spec.n);
    if (count > 0) {
        const double f = rep.expected_fraction;
        rep.kept_fraction = static_cast<double>(rep.kept) / static_cast<double>(count);
        rep.binomial_stderr = std::sqrt(f * (1.0 - f) / static_cast<double>(count));
        rep.fraction_ok = std::abs(rep.kept_fraction - f) <= 3.0 * rep.binomial_stderr;
    }
    rep.support_size = bs.support.size();
    if (rep.kept > 0) {
        rep.tv_distance = total_variation(empirical_distribution(samples, spec.n), bs.support);
        rep.tv_bound = 3.0 * std::sqrt(static_cast<double>(rep.support_size) / static_cast<double>(rep.kept));
        rep.tv_ok = rep.tv_distance <= rep.tv_bound;
    }
    return rep;
}

RegimeReport amplitude_regime_check(unsigned n, std::size_t m, double c) {
    if (n == 0 || m == 0) {
        throw Error(ErrorCode::InvalidArgument, "n and m must be positive");
    }
    RegimeReport rep;
    rep.n = n;
    rep.m = m;
    rep.c = c;
    rep.alpha = c * std::pow(static_cast<double>(n), -0.25) * std::pow(std::log(static_cast<double>(m)), 0.25);
    rep.floor = 1.0 / static_cast<double>(m);
    rep.defined = rep.alpha != 0.0;
    if (rep.defined) {
        rep.fraction = photon_fraction(rep.alpha, n);
        rep.leading_order = std::exp(-static_cast<double>(n) * std::pow(rep.alpha, 4) / 6.0);
        rep.above_floor = rep.fraction >= rep.floor;
    }
    return rep;
}

}  // namespace permkit
