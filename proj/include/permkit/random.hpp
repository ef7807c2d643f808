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

#ifndef PERMKIT_RANDOM_HPP
#define PERMKIT_RANDOM_HPP

#include <gmpxx.h>

#include <cstdint>

#include "permkit/numerics.hpp"

namespace permkit {

/// Counter-based generator: output i of stream s is SplitMix64 applied to
/// key(seed, s) + i * golden. Streams are independent and reproducible on
/// any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller.
    double normal();
    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    /// exp(i theta) with theta uniform in [0, 2 pi).
    Complex unit_phase();
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Entries uniform in the closed unit disk.
ComplexMatrix random_disk_matrix(std::size_t rows, std::size_t cols, Rng &rng);
inline ComplexMatrix random_disk_matrix(std::size_t dim, Rng &rng) { return random_disk_matrix(dim, dim, rng); }

/// Haar-distributed unitary from Gram-Schmidt QR of a complex Gaussian matrix.
UnitaryMatrix haar_unitary(std::size_t dim, Rng &rng);

/// Small integer entries in [-range, range], as rationals.
Matrix<mpq_class> random_integer_matrix(std::size_t dim, Rng &rng, int range = 3);

/// Random rational num/den with |num| <= range, 1 <= den <= range.
mpq_class random_rational(Rng &rng, int range = 9);

}  // namespace permkit

#endif
