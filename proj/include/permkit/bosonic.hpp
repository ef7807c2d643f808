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

#ifndef PERMKIT_BOSONIC_HPP
#define PERMKIT_BOSONIC_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "permkit/combinatorics.hpp"
#include "permkit/numerics.hpp"

namespace permkit {

/// n odd cat states |cat_alpha> in the first n of m modes, vacuum elsewhere.
struct CatInputSpec {
    Complex alpha;
    unsigned n = 0;
    std::size_t m = 0;
};

struct OutcomeDistribution {
    std::map<MultiIndex, double> support;
    // Largest total photon number enumerated.
    unsigned cutoff = 0;
    // 1 - sum of enumerated probabilities (never negative).
    double truncated_mass = 0.0;
    // Analytic mass beyond the cutoff; truncated_mass agrees with it up to rounding.
    double tail_bound = 0.0;

    double probability(const MultiIndex &p) const;
    double total() const;
};

/// <p| U |q> = Per(U_{p,q}) / sqrt(p! q!); zero when |p| != |q|.
Complex fock_amplitude(const UnitaryMatrix &u, const MultiIndex &p, const MultiIndex &q);

/// Output distribution for single photons in the first n modes.
OutcomeDistribution bs_distribution(const UnitaryMatrix &u, unsigned n);

/// Amplitude of outcome p for cat inputs. Evaluated from the coherent-state
/// sign sum, so no truncation of the input state is involved.
Complex cat_amplitude(const UnitaryMatrix &u, const CatInputSpec &spec, const MultiIndex &p);

/// All outcomes with |p| <= cutoff and |p| = n mod 2.
OutcomeDistribution cat_distribution(const UnitaryMatrix &u, const CatInputSpec &spec, unsigned cutoff);

/// Probability that n cat modes carry exactly n photons: (|a|^2 / sinh |a|^2)^n.
double photon_fraction(Complex alpha, unsigned n);

/// Conditions on |p| = n and renormalizes.
OutcomeDistribution reject_to_fixed_n(const OutcomeDistribution &dist, unsigned n);

/// A sampled outcome; nullopt stands for the overflow sentinel (mass beyond the cutoff).
using SampledOutcome = std::optional<MultiIndex>;

/// Inverse-CDF sampling, deterministic per seed.
std::vector<SampledOutcome> sample(const OutcomeDistribution &dist, std::uint64_t count, std::uint64_t seed);

/// Half the L1 distance; outcomes missing from one side count as zero.
double total_variation(const std::map<MultiIndex, double> &a, const std::map<MultiIndex, double> &b);

/// Normalized frequencies of the outcomes with total photon number n.
std::map<MultiIndex, double> empirical_distribution(const std::vector<SampledOutcome> &samples, unsigned n);

struct PipelineReport {
    std::uint64_t samples = 0;
    std::uint64_t kept = 0;
    std::uint64_t overflow = 0;
    double kept_fraction = 0.0;
    double expected_fraction = 0.0;
    double binomial_stderr = 0.0;
    double tv_distance = 0.0;
    double tv_bound = 0.0;
    std::size_t support_size = 0;
    double truncated_mass = 0.0;
    bool fraction_ok = false;
    bool tv_ok = false;
};

/// Samples the cat distribution, keeps |p| = n, and compares with the
/// single-photon distribution.
PipelineReport rejection_sampling_pipeline(const UnitaryMatrix &u, const CatInputSpec &spec, unsigned cutoff,
                                           std::uint64_t count, std::uint64_t seed);

struct RegimeReport {
    unsigned n = 0;
    std::size_t m = 0;
    double c = 0.0;
    double alpha = 0.0;
    // False when alpha = 0 (sampling undefined).
    bool defined = false;
    double fraction = 0.0;
    // exp(-n alpha^4 / 6)
    double leading_order = 0.0;
    double floor = 0.0;
    bool above_floor = false;
};

/// alpha = c n^{-1/4} (ln m)^{1/4} and the photon fraction it yields.
RegimeReport amplitude_regime_check(unsigned n, std::size_t m, double c);

}  // namespace permkit

#endif
