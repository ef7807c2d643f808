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

#include "permkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace permkit {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::NormExceedsOne: return "NormExceedsOne";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::WeightMismatch: return "WeightMismatch";
        case ErrorCode::CapMismatch: return "CapMismatch";
        case ErrorCode::ExceedsCap: return "ExceedsCap";
        case ErrorCode::NonInvertibleConstantTerm: return "NonInvertibleConstantTerm";
        case ErrorCode::ConstantTermNotOne: return "ConstantTermNotOne";
        case ErrorCode::BadConstantTerm: return "BadConstantTerm";
        case ErrorCode::OddDimension: return "OddDimension";
        case ErrorCode::AmplitudeOutOfRange: return "AmplitudeOutOfRange";
        case ErrorCode::ZeroDerivative: return "ZeroDerivative";
        case ErrorCode::ZeroAmplitude: return "ZeroAmplitude";
        case ErrorCode::EmptyConditioning: return "EmptyConditioning";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = std::conj(a(i, j));
        }
    }
    return t;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "shapes differ");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    }
    return worst;
}

Complex determinant(const ComplexMatrix &a) {
    const std::size_t n = a.dim();
    ComplexMatrix lu = a;
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lu(r, col)) > best) {
                best = std::abs(lu(r, col));
                pivot = r;
            }
        }
        if (best == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(lu(pivot, c), lu(col, c));
            }
            det = -det;
        }
        const Complex diag = lu(col, col);
        det *= diag;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = lu(r, col) / diag;
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t c = col + 1; c < n; ++c) {
                lu(r, c) -= factor * lu(col, c);
            }
        }
    }
    return det;
}

namespace {

std::vector<Complex> mat_vec(const ComplexMatrix &a, const std::vector<Complex> &v) {
    std::vector<Complex> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[i] += a(i, j) * v[j];
        }
    }
    return out;
}

double norm2(const std::vector<Complex> &v) {
    double s = 0.0;
    for (const auto &x : v) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

}  // namespace

double spectral_norm(const ComplexMatrix &a) {
    const std::size_t n = a.dim();
    const ComplexMatrix gram = matrix_product(adjoint(a), a);
    double frob = 0.0;
    for (const auto &x : gram.data()) {
        frob += std::norm(x);
    }
    if (frob == 0.0) {
        return 0.0;
    }
    // A start vector with distinct, non-symmetric components avoids being
    // orthogonal to the dominant eigenvector for structured inputs.
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = Complex(1.0 + 0.37 * static_cast<double>(i), 0.11 * static_cast<double>(i * i % 7));
    }
    double lambda = 0.0;
    for (int iter = 0; iter < 200000; ++iter) {
        const double len = norm2(v);
        for (auto &x : v) {
            x /= len;
        }
        std::vector<Complex> w = mat_vec(gram, v);
        Complex rayleigh = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rayleigh += std::conj(v[i]) * w[i];
        }
        const double next = rayleigh.real();
        const bool converged = std::abs(next - lambda) <= 1e-15 * std::max(1.0, next);
        lambda = next;
        v = std::move(w);
        if (converged && iter > 2) {
            break;
        }
    }
    return std::sqrt(std::max(lambda, 0.0));
}

HermitianEigen hermitian_eigen(const ComplexMatrix &h_in, double tolerance) {
    const std::size_t n = h_in.dim();
    ComplexMatrix h = h_in;
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    s += std::norm(h(i, j));
                }
            }
        }
        return std::sqrt(s);
    };
    double full = 0.0;
    for (const auto &x : h.data()) {
        full += std::norm(x);
    }
    const double stop = tolerance * std::max(1.0, std::sqrt(full));

    for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex hpq = h(p, q);
                const double mag = std::abs(hpq);
                if (mag == 0.0) {
                    continue;
                }
                // Rotate the phase out of h(p, q), then apply a real Jacobi rotation.
                const Complex phase = hpq / mag;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns p, q of G: G = D J with D = diag(1, conj(phase)) on (p, q).
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);
                // h <- G^dagger h G
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex hkp = h(k, p);
                    const Complex hkq = h(k, q);
                    h(k, p) = hkp * gpp + hkq * gqp;
                    h(k, q) = hkp * gpq + hkq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex hpk = h(p, k);
                    const Complex hqk = h(q, k);
                    h(p, k) = std::conj(gpp) * hpk + std::conj(gqp) * hqk;
                    h(q, k) = std::conj(gpq) * hpk + std::conj(gqq) * hqk;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    HermitianEigen out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = h(i, i).real();
    }
    out.vectors = std::move(v);
    return out;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix &h) {
    const HermitianEigen eig = hermitian_eigen(h);
    const std::size_t n = h.dim();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double root = std::sqrt(std::max(eig.values[k], 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = eig.vectors(i, k) * root;
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += vik * std::conj(eig.vectors(j, k));
            }
        }
    }
    return out;
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix u) : u_(std::move(u)) {
    const std::size_t n = u_.dim();
    if (n == 0) {
        throw Error(ErrorCode::NotUnitary, "unitary matrix must have dim >= 1");
    }
    const double err = max_abs_diff(matrix_product(adjoint(u_), u_), ComplexMatrix::identity(n));
    if (!(err <= kTolerance)) {
        throw Error(ErrorCode::NotUnitary, "||U^dagger U - I||_max = " + std::to_string(err));
    }
}

UnitaryMatrix embed_contraction(const ComplexMatrix &b) {
    const std::size_t m = b.dim();
    const double norm = spectral_norm(b);
    if (norm > 1.0 + 1e-12) {
        throw Error(ErrorCode::NormExceedsOne, "spectral norm " + std::to_string(norm) + " exceeds 1");
    }
    const ComplexMatrix id = ComplexMatrix::identity(m);
    const ComplexMatrix bd = adjoint(b);
    const ComplexMatrix top_right = hermitian_sqrt(id - matrix_product(b, bd));
    const ComplexMatrix bottom_left = hermitian_sqrt(id - matrix_product(bd, b));
    ComplexMatrix u(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            u(i, j) = b(i, j);
            u(i, m + j) = top_right(i, j);
            u(m + i, j) = bottom_left(i, j);
            u(m + i, m + j) = -bd(i, j);
        }
    }
    return UnitaryMatrix(std::move(u));
}

}  // namespace permkit
