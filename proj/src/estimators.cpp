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

#include "permkit/estimators.hpp"

#include <cmath>
#include <numbers>

#include "permkit/error.hpp"
#include "permkit/parallel.hpp"

namespace permkit {

namespace {

// Running moments of a complex sample, real and imaginary parts separately.
struct Moments {
    std::uint64_t n = 0;
    Complex mean;
    double m2_re = 0.0;
    double m2_im = 0.0;

    void push(Complex v) {
        ++n;
        const Complex delta = v - mean;
        mean += delta / static_cast<double>(n);
        const Complex delta2 = v - mean;
        m2_re += delta.real() * delta2.real();
        m2_im += delta.imag() * delta2.imag();
    }

    // Chan et al. pairwise combination.
    void merge(const Moments &o) {
        if (o.n == 0) {
            return;
        }
        if (n == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n);
        const double nb = static_cast<double>(o.n);
        const double total = na + nb;
        const Complex delta = o.mean - mean;
        mean += delta * (nb / total);
        m2_re += o.m2_re + delta.real() * delta.real() * na * nb / total;
        m2_im += o.m2_im + delta.imag() * delta.imag() * na * nb / total;
        n += o.n;
    }
};

void check_pattern(const ComplexMatrix &a, const RepetitionPattern &pat) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NotSquare, "estimator needs a square matrix");
    }
    if (pat.rows.size() != a.dim() || pat.cols.size() != a.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "pattern length must equal dim");
    }
    if (pat.rows.weight() != pat.cols.weight()) {
        throw Error(ErrorCode::WeightMismatch, "|p| and |q| differ");
    }
}

Complex conj_monomial(const std::vector<Complex> &x, const MultiIndex &p) {
    Complex out = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out *= int_pow(std::conj(x[i]), p[i]);
    }
    return out;
}

}  // namespace

std::string_view estimator_function_name(EstimatorFunction f) {
    switch (f) {
        case EstimatorFunction::Exp: return "exp";
        case EstimatorFunction::PowerN: return "pown";
        case EstimatorFunction::GeometricInverse: return "geom";
    }
    return "?";
}

EstimatorFunction parse_estimator_function(std::string_view name) {
    if (name == "exp") return EstimatorFunction::Exp;
    if (name == "pown") return EstimatorFunction::PowerN;
    if (name == "geom") return EstimatorFunction::GeometricInverse;
    throw Error(ErrorCode::InvalidArgument, "unknown function '" + std::string(name) + "' (exp|pown|geom)");
}

PhaseVector PhaseVector::draw(std::size_t m, Rng &rng) {
    PhaseVector v;
    v.angles.resize(m);
    for (auto &t : v.angles) {
        t = 2.0 * std::numbers::pi * rng.uniform();
    }
    return v;
}

std::vector<Complex> PhaseVector::entries() const {
    std::vector<Complex> out(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i) {
        out[i] = std::polar(1.0, angles[i]);
    }
    return out;
}

double geometric_radius(const ComplexMatrix &a) {
    const double norm = spectral_norm(a);
    if (norm == 0.0) {
        return 1.0;
    }
    return std::sqrt(1.0 / (2.0 * static_cast<double>(a.dim()) * norm));
}

Complex estimator_integrand(const ComplexMatrix &a, const RepetitionPattern &pat, EstimatorFunction f,
                            const std::vector<Complex> &x, const std::vector<Complex> &y, double radius) {
    const std::size_t m = a.dim();
    const unsigned n = pat.rows.weight();
    Complex w = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        Complex row = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            row += a(i, j) * y[j];
        }
        w += x[i] * row;
    }
    const double nf = factorial(n).get_d();
    Complex fw;
    switch (f) {
        case EstimatorFunction::PowerN: fw = int_pow(w, n) / nf; break;
        case EstimatorFunction::Exp: fw = std::exp(w); break;
        case EstimatorFunction::GeometricInverse: {
            const double r2 = radius * radius;
            fw = 1.0 / (1.0 - r2 * w) / (nf * std::pow(r2, static_cast<double>(n)));
            break;
        }
    }
    const double pq = factorial_product(pat.rows).get_d() * factorial_product(pat.cols).get_d();
    return pq * conj_monomial(x, pat.rows) * conj_monomial(y, pat.cols) * fw;
}

EstimateReport estimate_permanent(const ComplexMatrix &a, const RepetitionPattern &pat, EstimatorFunction f,
                                  const EstimatorOptions &options) {
    check_pattern(a, pat);
    const unsigned n = pat.rows.weight();
    if (f == EstimatorFunction::PowerN && options.power && *options.power != n) {
        throw Error(ErrorCode::ZeroDerivative,
                    "z^" + std::to_string(*options.power) + " has zero derivative of order " + std::to_string(n));
    }
    if (options.samples == 0) {
        throw Error(ErrorCode::InvalidArgument, "samples must be positive");
    }
    const unsigned streams = std::max(1U, options.streams);
    const double radius = f == EstimatorFunction::GeometricInverse ? geometric_radius(a) : 1.0;
    const std::size_t m = a.dim();

    std::vector<Moments> parts(streams);
    parallel_for(streams, [&](std::size_t s) {
        const std::uint64_t count = options.samples / streams + (s < options.samples % streams ? 1 : 0);
        Rng rng(options.seed, s);
        Moments mom;
        for (std::uint64_t k = 0; k < count; ++k) {
            const auto x = PhaseVector::draw(m, rng).entries();
            const auto y = PhaseVector::draw(m, rng).entries();
            mom.push(estimator_integrand(a, pat, f, x, y, radius));
        }
        parts[s] = mom;
    });
    Moments total;
    for (const auto &p : parts) {
        total.merge(p);
    }

    EstimateReport rep;
    rep.estimate = total.mean;
    rep.samples = total.n;
    rep.seed = options.seed;
    rep.f_choice = f;
    rep.streams = streams;
    rep.radius = radius;
    if (total.n > 1) {
        const double denom = static_cast<double>(total.n - 1);
        rep.variance = (total.m2_re + total.m2_im) / denom;
        rep.standard_error = std::sqrt(rep.variance / static_cast<double>(total.n));
    }
    return rep;
}

std::vector<EstimateReport> estimator_variance_scan(const ComplexMatrix &a, const RepetitionPattern &pat,
                                                    const std::vector<EstimatorFunction> &fs,
                                                    const EstimatorOptions &options) {
    std::vector<EstimateReport> out;
    out.reserve(fs.size());
    for (auto f : fs) {
        out.push_back(estimate_permanent(a, pat, f, options));
    }
    return out;
}

Complex grid_expectation(const ComplexMatrix &a, const RepetitionPattern &pat) {
    check_pattern(a, pat);
    const std::size_t m = a.dim();
    const unsigned order = pat.rows.weight() + 1;
    const double points = std::pow(static_cast<double>(order), static_cast<double>(2 * m));
    if (points > 1e7) {
        throw Error(ErrorCode::TooLarge, "roots-of-unity grid exceeds 1e7 points");
    }
    std::vector<Complex> roots(order);
    for (unsigned k = 0; k < order; ++k) {
        roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / order);
    }
    const MultiIndex caps = MultiIndex::filled(2 * m, order - 1);
    Complex total = 0.0;
    std::vector<Complex> x(m);
    std::vector<Complex> y(m);
    for (const MultiIndex &idx : enumerate_box(caps)) {
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = roots[idx[i]];
            y[i] = roots[idx[m + i]];
        }
        total += estimator_integrand(a, pat, EstimatorFunction::PowerN, x, y);
    }
    return total / points;
}

}  // namespace permkit
