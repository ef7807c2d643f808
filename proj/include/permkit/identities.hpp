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

#ifndef PERMKIT_IDENTITIES_HPP
#define PERMKIT_IDENTITIES_HPP

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "permkit/combinatorics.hpp"
#include "permkit/numerics.hpp"
#include "permkit/series.hpp"

namespace permkit {

inline constexpr double kDefaultTolerance = 1e-8;

/// Outcome of checking one identity. Both sides are computed independently;
/// left sides always come from oracle_permanent, never from the formula under
/// test. `passed` compares the scaled error (relative above magnitude one,
/// absolute below) with the tolerance; exact checks require zero error.
struct IdentityReport {
    std::string identity_name;
    double max_abs_error = 0.0;
    double max_scaled_error = 0.0;
    std::uint64_t num_coefficients_checked = 0;
    MultiIndex caps_used;
    double tolerance = kDefaultTolerance;
    // Extra allowance added to the tolerance, e.g. a bound on a truncated tail.
    double tail_bound = 0.0;
    bool exact = false;
    bool passed = true;
    std::string note;

    void record(Complex lhs, Complex rhs);
    void record_exact(const mpq_class &lhs, const mpq_class &rhs);
    /// Recomputes `passed` from the accumulated errors.
    IdentityReport &finish();
};

/// Combines several sub-checks into one report under `name`.
IdentityReport merge_reports(const std::string &name, const std::vector<IdentityReport> &parts);

// Sum over p of z^p Per(A_{p,p}) / p! against 1 / Det(I - Z A).
IdentityReport verify_macmahon(const ComplexMatrix &a, const MultiIndex &caps, double tolerance = kDefaultTolerance);
IdentityReport verify_macmahon_exact(const Matrix<mpq_class> &a, const MultiIndex &caps);

/// The antisymmetric 3x3 matrix [[0,1,-1],[-1,0,1],[1,-1,0]].
Matrix<mpq_class> dixon_matrix();

/// For p = (2n,2n,2n) and the matrix above, asserts exact equality of
/// p![z^p] 1/Det(I - ZA), p![z^p](Az)^p, p! sum_k (-1)^k C(2n,k)^3,
/// p! (-1)^n (3n)!/(n!)^3, and the exact permanent Per(A_{p,p}).
IdentityReport verify_dixon(unsigned n);

// Two-matrix form with Per(B_{q,p}) and Det(I - XAYB), together with the
// Per(B_{p,q}) / Det(I - XAYB^T) form; the two coefficient tables must agree.
// caps has 2m entries: x variables first, then y.
IdentityReport verify_mmmt_two(const ComplexMatrix &a, const ComplexMatrix &b, const MultiIndex &caps,
                               double tolerance = kDefaultTolerance);

enum class MmmtReduction { IdentityB, AllOnesB };

/// Exact reductions of the two-matrix form: B = I gives MacMahon in z_i = x_i y_i,
/// B = J gives 1 / (1 - x^T A y). `cap` applies to every variable.
IdentityReport verify_mmmt_reduction(const Matrix<mpq_class> &a, MmmtReduction kind, unsigned cap);

/// Cyclic chain of N >= 2 matrices; caps has N*m entries (z_1 block first).
IdentityReport verify_mmmt_n(const std::vector<ComplexMatrix> &matrices, const MultiIndex &caps,
                             double tolerance = kDefaultTolerance);

/// The three-chain (A, B, I) must reproduce the two-chain (A, B): the
/// coefficient at (p1, p2, p3) equals the two-chain coefficient at (p1, p2)
/// when p3 = p1 and vanishes otherwise.
IdentityReport verify_mmmt_chain_reduction(const ComplexMatrix &a, const ComplexMatrix &b, unsigned cap,
                                           double tolerance = kDefaultTolerance);

/// Per(A_{p,q}) = (p!q!/n!) [x^p y^q] (x^T A y)^n.
IdentityReport verify_corollary_rank_one(const ComplexMatrix &a, const MultiIndex &p, const MultiIndex &q,
                                         double tolerance = kDefaultTolerance);

enum class GeneratingFunction { Exp, GeometricInverse, PowerN, LogInverse };

/// f(x^T A y) = sum f_n n! x^p y^q Per(A_{p,q}) / (p!q!). `power` is the
/// exponent for PowerN. caps has 2m entries.
IdentityReport verify_generating_function(const ComplexMatrix &a, GeneratingFunction f, const MultiIndex &caps,
                                          unsigned power = 2, double tolerance = kDefaultTolerance);

/// sum_q z^q Per(A_{p,q}) / q! = (Az)^p.
IdentityReport verify_monomial_glynn(const ComplexMatrix &a, const MultiIndex &p, const MultiIndex &caps,
                                     double tolerance = kDefaultTolerance);

/// Per((A+B)_{p,q}) = sum over s+t=p, u+v=q of p!q!/(s!t!u!v!) Per(A_{s,u}) Per(B_{t,v}).
IdentityReport verify_sum_formula(const ComplexMatrix &a, const ComplexMatrix &b, const RepetitionPattern &pat,
                                  double tolerance = kDefaultTolerance);

/// Laplace expansion with split weights k and l = n - k.
IdentityReport verify_laplace(const ComplexMatrix &a, const RepetitionPattern &pat, unsigned k,
                              double tolerance = kDefaultTolerance);

/// Per(A_{p,q}) + Per(B_{p,q}) as an alternating sum over three-way splits.
IdentityReport verify_sum_of_permanents(const ComplexMatrix &a, const ComplexMatrix &b, const RepetitionPattern &pat,
                                        double tolerance = kDefaultTolerance);

enum class EvenMode { SingleCoefficient, FullSeries };

/// Permanent of a (2m)x(2m) matrix through 1/sqrt(Det(I - V_x M V_y M^T)).
/// SingleCoefficient ignores `caps`; FullSeries uses 2m caps (x block, y block).
IdentityReport verify_even_matrix(const ComplexMatrix &m, EvenMode mode, const MultiIndex &caps = {},
                                  double tolerance = 1e-7);

/// sum over |p| = |q| <= trunc of lambda^p mu^q Per(U_{p+p,q+q}) / (p!q!)
/// against 1/sqrt(Det(I - V_lambda U V_mu U^T)); passes if the discrepancy is
/// within tolerance plus the bound on the omitted tail.
IdentityReport verify_tmss_overlap(const UnitaryMatrix &u, const std::vector<Complex> &lambda,
                                   const std::vector<Complex> &mu, unsigned trunc, double tolerance = 1e-7);

/// Upper bound on the magnitude of the terms with |p| = |q| > trunc.
double tmss_tail_bound(std::size_t m, double radius, unsigned trunc);

/// S_n(a,b) = sum_k C(n,k)^2 a^k b^(n-k).
mpq_class sn_value(const mpq_class &a, const mpq_class &b, unsigned n);

/// Exact check of S_n(a,b)^2 = sum_l C(2l,l) C(n+l,2l) (-1)^(n-l) (a-b)^(2n-2l) S_l(a^2,b^2),
/// of sum_k C(n,k)^2 = C(2n,n), and (n <= 4) of the series route through the
/// two-matrix generating function with A = [[1,a],[1,b]].
IdentityReport verify_sn_identity(const mpq_class &a, const mpq_class &b, unsigned n);

struct VerifyOptions {
    std::uint64_t seed = 0;
    double tolerance = kDefaultTolerance;
    std::optional<ComplexMatrix> matrix;
    std::optional<unsigned> cap;
};

struct IdentityEntry {
    std::string name;
    std::function<IdentityReport(const VerifyOptions &)> run;
};

/// Every identity verifier with its default battery, in fixed order.
const std::vector<IdentityEntry> &identity_registry();

/// Runs one registered battery; throws InvalidArgument for unknown names.
IdentityReport run_identity(const std::string &name, const VerifyOptions &options);

/// Runs the whole registry, possibly concurrently; results follow registry order.
std::vector<IdentityReport> run_all_identities(const VerifyOptions &options);

}  // namespace permkit

#endif
