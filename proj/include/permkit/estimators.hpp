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

#ifndef PERMKIT_ESTIMATORS_HPP
#define PERMKIT_ESTIMATORS_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "permkit/combinatorics.hpp"
#include "permkit/numerics.hpp"
#include "permkit/random.hpp"

namespace permkit {

// Analytic function f in the torus average
//   Per(A_{p,q}) = E_{x,y} [ p! q! / (x^p y^q) * f(x^T A y) / f^{(n)}(0) ].
enum class EstimatorFunction { Exp, PowerN, GeometricInverse };

std::string_view estimator_function_name(EstimatorFunction f);
/// Accepts the CLI spellings exp, pown, geom.
EstimatorFunction parse_estimator_function(std::string_view name);

struct PhaseVector {
    std::vector<double> angles;

    static PhaseVector draw(std::size_t m, Rng &rng);
    std::vector<Complex> entries() const;
};

struct EstimateReport {
    Complex estimate;
    // Real and imaginary standard errors combined in quadrature.
    double standard_error = 0.0;
    // Per-sample variance, E|X - mean|^2 (so standard_error^2 * samples).
    double variance = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    EstimatorFunction f_choice = EstimatorFunction::PowerN;
    unsigned streams = 1;
    // Torus radius; 1 except for GeometricInverse.
    double radius = 1.0;
};

struct EstimatorOptions {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    unsigned streams = 4;
    // Degree of the monomial for PowerN; defaults to n. Any other degree has
    // a vanishing n-th derivative and is rejected.
    std::optional<unsigned> power;
};

/// Radius used for GeometricInverse: r^2 = 1 / (2 m ||A||), so that
/// |r^2 x^T A y| <= 1/2 on the torus. Returns 1 for the zero matrix.
double geometric_radius(const ComplexMatrix &a);

/// One evaluation of the integrand at phases (x, y).
Complex estimator_integrand(const ComplexMatrix &a, const RepetitionPattern &pat, EstimatorFunction f,
                            const std::vector<Complex> &x, const std::vector<Complex> &y, double radius = 1.0);

/// Sample mean of the integrand. The budget is split over `streams`
/// independent Rng streams (seed, s) whose moments are merged in order, so
/// the result depends only on (seed, streams) and not on thread timing.
EstimateReport estimate_permanent(const ComplexMatrix &a, const RepetitionPattern &pat, EstimatorFunction f,
                                  const EstimatorOptions &options);

std::vector<EstimateReport> estimator_variance_scan(const ComplexMatrix &a, const RepetitionPattern &pat,
                                                    const std::vector<EstimatorFunction> &fs,
                                                    const EstimatorOptions &options);

/// Exact average of the PowerN integrand over the grid of (n+1)-th roots of
/// unity in every coordinate. Equals Per(A_{p,q}) up to rounding.
Complex grid_expectation(const ComplexMatrix &a, const RepetitionPattern &pat);

}  // namespace permkit

#endif
