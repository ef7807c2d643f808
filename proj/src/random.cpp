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

#include "permkit/random.hpp"

#include <cmath>
#include <numbers>

namespace permkit {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(seed ^ splitmix64(stream + 0x5851F42D4C957F2DULL))) {}

std::uint64_t Rng::next_u64() { return splitmix64(key_ + kGolden * counter_++); }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
}

Complex Rng::unit_phase() {
    const double t = 2.0 * std::numbers::pi * uniform();
    return {std::cos(t), std::sin(t)};
}

ComplexMatrix random_disk_matrix(std::size_t rows, std::size_t cols, Rng &rng) {
    ComplexMatrix a(rows, cols);
    for (auto &v : a.data()) {
        const double r = std::sqrt(rng.uniform());
        v = r * rng.unit_phase();
    }
    return a;
}

UnitaryMatrix haar_unitary(std::size_t dim, Rng &rng) {
    ComplexMatrix g(dim, dim);
    for (auto &v : g.data()) {
        v = Complex(rng.normal(), rng.normal()) / std::numbers::sqrt2;
    }
    // Modified Gram-Schmidt on columns; R has a positive diagonal, which
    // makes Q Haar distributed.
    ComplexMatrix q(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Complex> v(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = g(i, j);
        }
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                dot += std::conj(q(i, k)) * v[i];
            }
            for (std::size_t i = 0; i < dim; ++i) {
                v[i] -= dot * q(i, k);
            }
        }
        double norm = 0.0;
        for (const auto &x : v) {
            norm += std::norm(x);
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < dim; ++i) {
            q(i, j) = v[i] / norm;
        }
    }
    return UnitaryMatrix(std::move(q));
}

Matrix<mpq_class> random_integer_matrix(std::size_t dim, Rng &rng, int range) {
    Matrix<mpq_class> a(dim, dim);
    for (auto &v : a.data()) {
        v = mpq_class(static_cast<long>(rng.uniform_int(-range, range)));
    }
    return a;
}

mpq_class random_rational(Rng &rng, int range) {
    mpq_class q(static_cast<long>(rng.uniform_int(-range, range)), static_cast<unsigned long>(rng.uniform_int(1, range)));
    q.canonicalize();
    return q;
}

}  // namespace permkit
