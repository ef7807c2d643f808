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

#include "permkit/identities.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "permkit/parallel.hpp"
#include "permkit/permanents.hpp"
#include "permkit/random.hpp"

namespace permkit {

namespace {

IdentityReport named_report(std::string name) {
    IdentityReport rep;
    rep.identity_name = std::move(name);
    return rep;
}

double fact_d(const MultiIndex &p) { return factorial_product(p).get_d(); }

mpq_class fact_q(const MultiIndex &p) { return mpq_class(factorial_product(p)); }

MultiIndex slice(const MultiIndex &e, std::size_t offset, std::size_t len) {
    return MultiIndex(std::vector<unsigned>(e.begin() + static_cast<long>(offset), e.begin() + static_cast<long>(offset + len)));
}

void require_caps(const MultiIndex &caps, std::size_t expected) {
    if (caps.size() != expected) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(expected) + " caps, got " + std::to_string(caps.size()));
    }
}

template <typename T>
Matrix<T> transpose_of(const Matrix<T> &a) {
    return transpose(a);
}

/// sum_ij a_ij x_i y_j with x = variables [0, m), y = variables [m, 2m).
template <typename T>
TruncatedSeries<T> bilinear_series(const Matrix<T> &a, const MultiIndex &caps) {
    const std::size_t m = a.rows();
    TruncatedSeries<T> w(caps);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (a(i, j) == T(0)) {
                continue;
            }
            MultiIndex e = MultiIndex::zeros(caps.size());
            e[i] = 1;
            e[m + j] = 1;
            w += TruncatedSeries<T>::monomial(caps, e, a(i, j));
        }
    }
    return w;
}

/// 1 / Det(I - Z_1 A_1 Z_2 A_2 ... Z_N A_N) with block k of the variables in Z_k.
template <typename T>
TruncatedSeries<T> chain_series(const std::vector<Matrix<T>> &mats, const MultiIndex &caps) {
    const std::size_t m = mats.front().rows();
    SeriesMatrix<T> prod;
    for (std::size_t k = 0; k < mats.size(); ++k) {
        SeriesMatrix<T> factor =
            series_matrix_product(diagonal_variables<T>(caps, k * m, m), constant_series_matrix(mats[k], caps));
        prod = k == 0 ? std::move(factor) : series_matrix_product(prod, factor);
    }
    return det_series(identity_minus(prod)).inverse();
}

/// (Az)^p over the given caps.
template <typename T>
TruncatedSeries<T> monomial_power_series(const Matrix<T> &a, const MultiIndex &p, const MultiIndex &caps) {
    const std::size_t m = a.rows();
    TruncatedSeries<T> out = TruncatedSeries<T>::constant(caps, T(1));
    for (std::size_t i = 0; i < m; ++i) {
        if (p[i] == 0) {
            continue;
        }
        TruncatedSeries<T> row(caps);
        for (std::size_t j = 0; j < m; ++j) {
            row += TruncatedSeries<T>::variable(caps, j) * a(i, j);
        }
        out = out.mul(row.pow(p[i]));
    }
    return out;
}

/// V_w = [[0, Diag(w)], [Diag(w), 0]] applied on the left of M: row i of the
/// result is w_i M_{m+i} for i < m and w_{i-m} M_{i-m} otherwise.
ComplexMatrix apply_v(const std::vector<Complex> &w, const ComplexMatrix &m) {
    const std::size_t half = w.size();
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < half; ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(i, j) = w[i] * m(half + i, j);
            out(half + i, j) = w[i] * m(i, j);
        }
    }
    return out;
}

/// Series-valued version of apply_v with w = variables [offset, offset + m).
SeriesMatrix<Complex> apply_v_series(const MultiIndex &caps, std::size_t offset, const ComplexMatrix &m) {
    const std::size_t half = m.rows() / 2;
    SeriesMatrix<Complex> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const std::size_t var = offset + (r < half ? r : r - half);
        const std::size_t src = r < half ? half + r : r - half;
        const auto w = TruncatedSeries<Complex>::variable(caps, var);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[r].push_back(w * m(src, j));
        }
    }
    return out;
}

/// Follows sqrt(Det(I - tN)) from t = 0 to t = 1 so the branch matches the
/// series normalization (value +1 at the origin).
Complex continued_sqrt_det(const ComplexMatrix &n) {
    const std::size_t dim = n.rows();
    Complex root = 1.0;
    constexpr int kSteps = 256;
    for (int s = 1; s <= kSteps; ++s) {
        const double t = static_cast<double>(s) / kSteps;
        const Complex det = determinant(ComplexMatrix::identity(dim) - scale(n, Complex(t)));
        Complex cand = std::sqrt(det);
        if (std::abs(cand - root) > std::abs(-cand - root)) {
            cand = -cand;
        }
        root = cand;
    }
    return root;
}

}  // namespace

void IdentityReport::record(Complex lhs, Complex rhs) {
    double abs_err = std::abs(lhs - rhs);
    double scaled = scaled_error(lhs, rhs);
    if (!std::isfinite(abs_err) || !std::isfinite(scaled)) {
        abs_err = scaled = std::numeric_limits<double>::infinity();
    }
    max_abs_error = std::max(max_abs_error, abs_err);
    max_scaled_error = std::max(max_scaled_error, scaled);
    ++num_coefficients_checked;
}

void IdentityReport::record_exact(const mpq_class &lhs, const mpq_class &rhs) {
    exact = true;
    ++num_coefficients_checked;
    if (lhs == rhs) {
        return;
    }
    const mpq_class diff = abs(lhs - rhs);
    double abs_err = std::max(diff.get_d(), std::numeric_limits<double>::min());
    const double scale_by = std::max({1.0, std::abs(lhs.get_d()), std::abs(rhs.get_d())});
    max_abs_error = std::max(max_abs_error, abs_err);
    max_scaled_error = std::max(max_scaled_error, std::max(abs_err / scale_by, std::numeric_limits<double>::min()));
}

IdentityReport &IdentityReport::finish() {
    if (exact) {
        passed = max_abs_error == 0.0;
    } else {
        passed = max_scaled_error <= tolerance + tail_bound;
    }
    return *this;
}

IdentityReport merge_reports(const std::string &name, const std::vector<IdentityReport> &parts) {
    IdentityReport out;
    out.identity_name = name;
    out.exact = !parts.empty();
    out.tolerance = parts.empty() ? kDefaultTolerance : parts.front().tolerance;
    std::ostringstream notes;
    for (const auto &p : parts) {
        out.max_abs_error = std::max(out.max_abs_error, p.max_abs_error);
        out.max_scaled_error = std::max(out.max_scaled_error, p.max_scaled_error);
        out.num_coefficients_checked += p.num_coefficients_checked;
        out.tail_bound = std::max(out.tail_bound, p.tail_bound);
        out.exact = out.exact && p.exact;
        if (p.caps_used.size() > out.caps_used.size()) {
            out.caps_used = p.caps_used;
        } else if (p.caps_used.size() == out.caps_used.size()) {
            std::vector<unsigned> c(p.caps_used.size());
            for (std::size_t i = 0; i < c.size(); ++i) {
                c[i] = std::max(p.caps_used[i], out.caps_used[i]);
            }
            out.caps_used = MultiIndex(std::move(c));
        }
        if (!p.passed) {
            notes << (notes.tellp() > 0 ? "; " : "") << p.identity_name << " failed";
        }
    }
    out.passed = std::all_of(parts.begin(), parts.end(), [](const IdentityReport &p) { return p.passed; });
    out.note = notes.str();
    return out;
}

IdentityReport verify_macmahon(const ComplexMatrix &a, const MultiIndex &caps, double tolerance) {
    const std::size_t m = a.dim();
    require_caps(caps, m);
    IdentityReport rep = named_report("macmahon");
    rep.caps_used = caps;
    rep.tolerance = tolerance;
    const TruncatedSeries<Complex> rhs = chain_series<Complex>({a}, caps);
    for (std::size_t flat = 0; flat < rhs.size(); ++flat) {
        const MultiIndex p = rhs.exponent_of(flat);
        rep.record(oracle_permanent(a, {p, p}) / fact_d(p), rhs[flat]);
    }
    return rep.finish();
}

IdentityReport verify_macmahon_exact(const Matrix<mpq_class> &a, const MultiIndex &caps) {
    const std::size_t m = a.dim();
    require_caps(caps, m);
    IdentityReport rep = named_report("macmahon_exact");
    rep.caps_used = caps;
    rep.exact = true;
    const TruncatedSeries<mpq_class> rhs = chain_series<mpq_class>({a}, caps);
    for (std::size_t flat = 0; flat < rhs.size(); ++flat) {
        const MultiIndex p = rhs.exponent_of(flat);
        rep.record_exact(oracle_permanent_exact(a, {p, p}) / fact_q(p), rhs[flat]);
    }
    return rep.finish();
}

Matrix<mpq_class> dixon_matrix() {
    return Matrix<mpq_class>(3, 3, {0, 1, -1, -1, 0, 1, 1, -1, 0});
}

IdentityReport verify_dixon(unsigned n) {
    const Matrix<mpq_class> a = dixon_matrix();
    const MultiIndex p = MultiIndex::filled(3, 2 * n);
    IdentityReport rep = named_report("dixon");
    rep.caps_used = p;
    rep.exact = true;
    const mpq_class pf = fact_q(p);

    const mpq_class via_det = pf * chain_series<mpq_class>({a}, p).coefficient(p);
    const mpq_class via_monomial = pf * monomial_power_series(a, p, p).coefficient(p);
    mpz_class binomial_sum = 0;
    for (unsigned k = 0; k <= 2 * n; ++k) {
        const mpz_class c = binomial(2 * n, k);
        binomial_sum += (k % 2 == 0 ? 1 : -1) * c * c * c;
    }
    const mpq_class via_binomial = pf * mpq_class(binomial_sum);
    mpz_class closed = factorial(3 * n) / (factorial(n) * factorial(n) * factorial(n));
    if (n % 2 == 1) {
        closed = -closed;
    }
    const mpq_class via_closed = pf * mpq_class(closed);
    const mpq_class via_permanent = oracle_permanent_exact(a, {p, p});

    rep.record_exact(via_det, via_binomial);
    rep.record_exact(via_monomial, via_binomial);
    rep.record_exact(via_closed, via_binomial);
    rep.record_exact(via_permanent, via_binomial);
    return rep.finish();
}

IdentityReport verify_mmmt_two(const ComplexMatrix &a, const ComplexMatrix &b, const MultiIndex &caps, double tolerance) {
    const std::size_t m = a.dim();
    if (b.dim() != m) {
        throw Error(ErrorCode::DimensionMismatch, "matrices must have equal dimensions");
    }
    require_caps(caps, 2 * m);
    IdentityReport rep = named_report("mmmt_two");
    rep.caps_used = caps;
    rep.tolerance = tolerance;
    const ComplexMatrix bt = transpose(b);
    const TruncatedSeries<Complex> rhs_qp = chain_series<Complex>({a, b}, caps);
    const TruncatedSeries<Complex> rhs_pq = chain_series<Complex>({a, bt}, caps);
    for (std::size_t flat = 0; flat < rhs_qp.size(); ++flat) {
        const MultiIndex e = rhs_qp.exponent_of(flat);
        const MultiIndex p = slice(e, 0, m);
        const MultiIndex q = slice(e, m, m);
        const double norm = fact_d(p) * fact_d(q);
        const Complex per_a = oracle_permanent(a, {p, q});
        const Complex lhs_qp = per_a * oracle_permanent(b, {q, p}) / norm;
        const Complex lhs_pq = per_a * oracle_permanent(b, {p, q}) / norm;
        rep.record(lhs_qp, rhs_qp[flat]);
        rep.record(lhs_pq, rhs_pq[flat]);
        // Both forms describe the same table once B is transposed.
        rep.record(per_a * oracle_permanent(bt, {p, q}) / norm, lhs_qp);
    }
    return rep.finish();
}

IdentityReport verify_mmmt_reduction(const Matrix<mpq_class> &a, MmmtReduction kind, unsigned cap) {
    const std::size_t m = a.dim();
    const MultiIndex caps = MultiIndex::filled(2 * m, cap);
    IdentityReport rep = named_report(kind == MmmtReduction::IdentityB ? "mmmt_two/B=I" : "mmmt_two/B=J");
    rep.caps_used = caps;
    rep.exact = true;
    const Matrix<mpq_class> b =
        kind == MmmtReduction::IdentityB ? Matrix<mpq_class>::identity(m) : Matrix<mpq_class>::all_ones(m);
    const TruncatedSeries<mpq_class> rhs = chain_series<mpq_class>({a, b}, caps);

    std::optional<TruncatedSeries<mpq_class>> macmahon;
    std::optional<TruncatedSeries<mpq_class>> geometric;
    if (kind == MmmtReduction::IdentityB) {
        macmahon = chain_series<mpq_class>({a}, MultiIndex::filled(m, cap));
    } else {
        geometric = (TruncatedSeries<mpq_class>::constant(caps, 1) - bilinear_series(a, caps)).inverse();
    }
    for (std::size_t flat = 0; flat < rhs.size(); ++flat) {
        const MultiIndex e = rhs.exponent_of(flat);
        const MultiIndex p = slice(e, 0, m);
        const MultiIndex q = slice(e, m, m);
        mpq_class expected;
        if (macmahon) {
            expected = p == q ? macmahon->coefficient(p) : mpq_class(0);
        } else {
            expected = (*geometric)[flat];
        }
        rep.record_exact(rhs[flat], expected);
        const mpq_class lhs =
            oracle_permanent_exact(a, {p, q}) * oracle_permanent_exact(b, {q, p}) / (fact_q(p) * fact_q(q));
        rep.record_exact(lhs, rhs[flat]);
    }
    return rep.finish();
}

IdentityReport verify_mmmt_n(const std::vector<ComplexMatrix> &matrices, const MultiIndex &caps, double tolerance) {
    if (matrices.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "chain needs at least two matrices");
    }
    const std::size_t m = matrices.front().dim();
    for (const auto &mat : matrices) {
        if (mat.dim() != m) {
            throw Error(ErrorCode::DimensionMismatch, "chain matrices must have equal dimensions");
        }
    }
    const std::size_t n_mats = matrices.size();
    require_caps(caps, n_mats * m);
    IdentityReport rep = named_report("mmmt_n");
    rep.caps_used = caps;
    rep.tolerance = tolerance;
    const TruncatedSeries<Complex> rhs = chain_series<Complex>(matrices, caps);
    for (std::size_t flat = 0; flat < rhs.size(); ++flat) {
        const MultiIndex e = rhs.exponent_of(flat);
        std::vector<MultiIndex> blocks;
        double norm = 1.0;
        for (std::size_t k = 0; k < n_mats; ++k) {
            blocks.push_back(slice(e, k * m, m));
            norm *= fact_d(blocks.back());
        }
        Complex lhs = 1.0 / norm;
        for (std::size_t k = 0; k < n_mats && lhs != 0.0; ++k) {
            lhs *= oracle_permanent(matrices[k], {blocks[k], blocks[(k + 1) % n_mats]});
        }
        rep.record(lhs, rhs[flat]);
    }
    return rep.finish();
}

IdentityReport verify_mmmt_chain_reduction(const ComplexMatrix &a, const ComplexMatrix &b, unsigned cap,
                                           double tolerance) {
    const std::size_t m = a.dim();
    IdentityReport rep = named_report("mmmt_n/three_to_two");
    rep.tolerance = tolerance;
    const MultiIndex caps3 = MultiIndex::filled(3 * m, cap);
    const MultiIndex caps2 = MultiIndex::filled(2 * m, cap);
    rep.caps_used = caps3;
    const auto three = chain_series<Complex>({a, b, ComplexMatrix::identity(m)}, caps3);
    const auto two = chain_series<Complex>({a, b}, caps2);
    for (std::size_t flat = 0; flat < three.size(); ++flat) {
        const MultiIndex e = three.exponent_of(flat);
        const MultiIndex p1 = slice(e, 0, m);
        const MultiIndex p2 = slice(e, m, m);
        const MultiIndex p3 = slice(e, 2 * m, m);
        const Complex expected = p3 == p1 ? two.coefficient(p1.concat(p2)) : Complex(0.0);
        rep.record(three[flat], expected);
    }
    return rep.finish();
}

IdentityReport verify_corollary_rank_one(const ComplexMatrix &a, const MultiIndex &p, const MultiIndex &q,
                                         double tolerance) {
    const std::size_t m = a.dim();
    if (p.size() != m || q.size() != m) {
        throw Error(ErrorCode::DimensionMismatch, "pattern length must equal dim");
    }
    const unsigned n = p.weight();
    if (n != q.weight()) {
        throw Error(ErrorCode::WeightMismatch, "|p| and |q| differ");
    }
    IdentityReport rep = named_report("corollary_rank_one");
    const MultiIndex caps = p.concat(q);
    rep.caps_used = caps;
    rep.tolerance = tolerance;
    const auto power = bilinear_series(a, caps).pow(n);
    const double nf = factorial(n).get_d();
    for (std::size_t flat = 0; flat < power.size(); ++flat) {
        const MultiIndex e = power.exponent_of(flat);
        const MultiIndex pp = slice(e, 0, m);
        const MultiIndex qq = slice(e, m, m);
        if (pp.weight() != n || qq.weight() != n) {
            rep.record(power[flat], 0.0);
            continue;
        }
        rep.record(oracle_permanent(a, {pp, qq}), fact_d(pp) * fact_d(qq) / nf * power[flat]);
    }
    return rep.finish();
}

IdentityReport verify_generating_function(const ComplexMatrix &a, GeneratingFunction f, const MultiIndex &caps,
                                          unsigned power, double tolerance) {
    const std::size_t m = a.dim();
    require_caps(caps, 2 * m);
    static const char *const kNames[] = {"generating_function/exp", "generating_function/geometric",
                                         "generating_function/power", "generating_function/log"};
    IdentityReport rep = named_report(kNames[static_cast<int>(f)]);
    rep.caps_used = caps;
    rep.tolerance = tolerance;
    const auto w = bilinear_series(a, caps);
    const auto one = TruncatedSeries<Complex>::constant(caps, 1.0);
    TruncatedSeries<Complex> lhs(caps);
    switch (f) {
        case GeneratingFunction::Exp: lhs = w.exp(); break;
        case GeneratingFunction::GeometricInverse: lhs = (one - w).inverse(); break;
        case GeneratingFunction::PowerN: lhs = w.pow(power); break;
        case GeneratingFunction::LogInverse: lhs = (one - w).log() * Complex(-1.0); break;
    }
    // n! f_n for each f.
    auto scaled_coefficient = [&](unsigned n) -> double {
        switch (f) {
            case GeneratingFunction::Exp: return 1.0;
            case GeneratingFunction::GeometricInverse: return factorial(n).get_d();
            case GeneratingFunction::PowerN: return n == power ? factorial(n).get_d() : 0.0;
            case GeneratingFunction::LogInverse: return n == 0 ? 0.0 : factorial(n - 1).get_d();
        }
        return 0.0;
    };
    for (std::size_t flat = 0; flat < lhs.size(); ++flat) {
        const MultiIndex e = lhs.exponent_of(flat);
        const MultiIndex p = slice(e, 0, m);
        const MultiIndex q = slice(e, m, m);
        Complex rhs = 0.0;
        if (p.weight() == q.weight()) {
            const double c = scaled_coefficient(p.weight());
            if (c != 0.0) {
                rhs = c * oracle_permanent(a, {p, q}) / (fact_d(p) * fact_d(q));
            }
        }
        rep.record(lhs[flat], rhs);
    }
    return rep.finish();
}

IdentityReport verify_monomial_glynn(const ComplexMatrix &a, const MultiIndex &p, const MultiIndex &caps,
                                     double tolerance) {
    const std::size_t m = a.dim();
    require_caps(caps, m);
    require_caps(p, m);
    IdentityReport rep = named_report("monomial_glynn");
    rep.caps_used = caps;
    rep.tolerance = tolerance;
    const auto rhs = monomial_power_series(a, p, caps);
    for (std::size_t flat = 0; flat < rhs.size(); ++flat) {
        const MultiIndex q = rhs.exponent_of(flat);
        rep.record(oracle_permanent(a, {p, q}) / fact_d(q), rhs[flat]);
    }
    return rep.finish();
}

IdentityReport verify_sum_formula(const ComplexMatrix &a, const ComplexMatrix &b, const RepetitionPattern &pat,
                                  double tolerance) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "matrices must have equal dimensions");
    }
    IdentityReport rep = named_report("sum_formula");
    rep.caps_used = pat.rows.concat(pat.cols);
    rep.tolerance = tolerance;
    const double pq = fact_d(pat.rows) * fact_d(pat.cols);
    Complex rhs = 0.0;
    for (const auto &rs : enumerate_splits(pat.rows, 2)) {
        for (const auto &cs : enumerate_splits(pat.cols, 2)) {
            if (rs[0].weight() != cs[0].weight()) {
                continue;
            }
            const double w = pq / (fact_d(rs[0]) * fact_d(rs[1]) * fact_d(cs[0]) * fact_d(cs[1]));
            rhs += w * oracle_permanent(a, {rs[0], cs[0]}) * oracle_permanent(b, {rs[1], cs[1]});
        }
    }
    rep.record(oracle_permanent(a + b, pat), rhs);
    return rep.finish();
}

IdentityReport verify_laplace(const ComplexMatrix &a, const RepetitionPattern &pat, unsigned k, double tolerance) {
    const unsigned n = pat.rows.weight();
    if (n != pat.cols.weight()) {
        throw Error(ErrorCode::WeightMismatch, "|p| and |q| differ");
    }
    if (k > n) {
        throw Error(ErrorCode::WeightMismatch, "split weight exceeds |p|");
    }
    const unsigned l = n - k;
    IdentityReport rep = named_report("laplace");
    rep.caps_used = pat.rows.concat(pat.cols);
    rep.tolerance = tolerance;
    const double prefactor = factorial(k).get_d() * factorial(l).get_d() / factorial(n).get_d();
    const double pq = fact_d(pat.rows) * fact_d(pat.cols);
    Complex rhs = 0.0;
    const auto row_splits = enumerate_splits(pat.rows, 2, {k, l});
    const auto col_splits = enumerate_splits(pat.cols, 2, {k, l});
    for (const auto &rs : row_splits) {
        for (const auto &cs : col_splits) {
            const double w = pq / (fact_d(rs[0]) * fact_d(rs[1]) * fact_d(cs[0]) * fact_d(cs[1]));
            rhs += w * oracle_permanent(a, {rs[0], cs[0]}) * oracle_permanent(a, {rs[1], cs[1]});
        }
    }
    rep.record(oracle_permanent(a, pat), prefactor * rhs);
    return rep.finish();
}

IdentityReport verify_sum_of_permanents(const ComplexMatrix &a, const ComplexMatrix &b, const RepetitionPattern &pat,
                                        double tolerance) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "matrices must have equal dimensions");
    }
    const unsigned n = pat.rows.weight();
    if (n != pat.cols.weight() || n == 0) {
        throw Error(ErrorCode::WeightMismatch, "requires |p| = |q| >= 1");
    }
    IdentityReport rep = named_report("sum_of_permanents");
    rep.caps_used = pat.rows.concat(pat.cols);
    rep.tolerance = tolerance;
    const ComplexMatrix sum = a + b;
    const double pq = fact_d(pat.rows) * fact_d(pat.cols);
    Complex rhs = 0.0;
    for (unsigned k = 0; k <= n / 2; ++k) {
        const double outer = (k % 2 == 0 ? 1.0 : -1.0) / binomial(n - 1, k).get_d();
        Complex inner = 0.0;
        const auto row_splits = enumerate_splits(pat.rows, 3, {k, k, std::nullopt});
        const auto col_splits = enumerate_splits(pat.cols, 3, {k, k, std::nullopt});
        for (const auto &r : row_splits) {
            for (const auto &c : col_splits) {
                const Complex pa = oracle_permanent(a, {r[0], c[0]});
                if (pa == 0.0) {
                    continue;
                }
                const Complex pb = oracle_permanent(b, {r[1], c[1]});
                const double w = pq / (fact_d(r[0]) * fact_d(r[1]) * fact_d(r[2]) * fact_d(c[0]) * fact_d(c[1]) *
                                       fact_d(c[2]));
                inner += w * pa * pb * oracle_permanent(sum, {r[2], c[2]});
            }
        }
        rhs += outer * inner;
    }
    rep.record(oracle_permanent(a, pat) + oracle_permanent(b, pat), rhs);
    return rep.finish();
}

IdentityReport verify_even_matrix(const ComplexMatrix &mat, EvenMode mode, const MultiIndex &caps_in,
                                  double tolerance) {
    const std::size_t dim = mat.dim();
    if (dim % 2 != 0) {
        throw Error(ErrorCode::OddDimension, "matrix dimension must be even");
    }
    const std::size_t m = dim / 2;
    const ComplexMatrix mt = transpose(mat);
    IdentityReport rep;
    rep.tolerance = tolerance;
    if (mode == EvenMode::SingleCoefficient) {
        if (dim > 8) {
            throw Error(ErrorCode::TooLarge, "single-coefficient form limited to dim <= 8");
        }
        rep.identity_name = "even_matrix/single";
        const MultiIndex caps{static_cast<unsigned>(m)};
        rep.caps_used = caps;
        Complex total = 0.0;
        const std::uint64_t count = std::uint64_t{1} << m;
        for (std::uint64_t xs = 0; xs < count; ++xs) {
            std::vector<Complex> x(m);
            int sign_x = 1;
            for (std::size_t i = 0; i < m; ++i) {
                x[i] = (xs >> i) & 1U ? -1.0 : 1.0;
                sign_x *= (xs >> i) & 1U ? -1 : 1;
            }
            const ComplexMatrix vxm = apply_v(x, mat);
            for (std::uint64_t ys = 0; ys < count; ++ys) {
                std::vector<Complex> y(m);
                int sign_y = 1;
                for (std::size_t i = 0; i < m; ++i) {
                    y[i] = (ys >> i) & 1U ? -1.0 : 1.0;
                    sign_y *= (ys >> i) & 1U ? -1 : 1;
                }
                const ComplexMatrix nmat = matrix_product(vxm, apply_v(y, mt));
                SeriesMatrix<Complex> ser(dim);
                const auto z = TruncatedSeries<Complex>::variable(caps, 0);
                for (std::size_t i = 0; i < dim; ++i) {
                    for (std::size_t j = 0; j < dim; ++j) {
                        TruncatedSeries<Complex> entry = z * (-nmat(i, j));
                        if (i == j) {
                            entry[0] += 1.0;
                        }
                        ser[i].push_back(std::move(entry));
                    }
                }
                const auto root = det_series(ser).sqrt_inverse();
                total += static_cast<double>(sign_x * sign_y) * root[m];
            }
        }
        total /= std::pow(4.0, static_cast<double>(m));
        rep.record(oracle_permanent(mat, RepetitionPattern::identity(dim)), total);
        return rep.finish();
    }
    rep.identity_name = "even_matrix/full";
    require_caps(caps_in, 2 * m);
    rep.caps_used = caps_in;
    const SeriesMatrix<Complex> left = apply_v_series(caps_in, 0, mat);
    const SeriesMatrix<Complex> right = apply_v_series(caps_in, m, mt);
    const auto rhs = det_series(identity_minus(series_matrix_product(left, right))).sqrt_inverse();
    for (std::size_t flat = 0; flat < rhs.size(); ++flat) {
        const MultiIndex e = rhs.exponent_of(flat);
        const MultiIndex p = slice(e, 0, m);
        const MultiIndex q = slice(e, m, m);
        rep.record(oracle_permanent(mat, {p.concat(p), q.concat(q)}) / (fact_d(p) * fact_d(q)), rhs[flat]);
    }
    return rep.finish();
}

double tmss_tail_bound(std::size_t m, double radius, unsigned trunc) {
    if (radius <= 0.0) {
        return 0.0;
    }
    double total = 0.0;
    const double r2 = radius * radius;
    for (unsigned k = trunc + 1; k < trunc + 100000; ++k) {
        const double c = binomial(k + static_cast<unsigned>(m) - 1, static_cast<unsigned>(m) - 1).get_d();
        const double term = c * c * std::pow(r2, static_cast<double>(k));
        total += term;
        if (term < 1e-18 * total || term == 0.0) {
            break;
        }
    }
    return total;
}

IdentityReport verify_tmss_overlap(const UnitaryMatrix &u, const std::vector<Complex> &lambda,
                                   const std::vector<Complex> &mu, unsigned trunc, double tolerance) {
    const std::size_t dim = u.dim();
    if (dim % 2 != 0) {
        throw Error(ErrorCode::OddDimension, "unitary dimension must be even");
    }
    const std::size_t m = dim / 2;
    if (lambda.size() != m || mu.size() != m) {
        throw Error(ErrorCode::DimensionMismatch, "lambda and mu need dim/2 entries");
    }
    double radius = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (!(std::abs(lambda[k]) < 1.0) || !(std::abs(mu[k]) < 1.0)) {
            throw Error(ErrorCode::AmplitudeOutOfRange, "|lambda_k| and |mu_k| must be below 1");
        }
        radius = std::max({radius, std::abs(lambda[k]), std::abs(mu[k])});
    }
    IdentityReport rep = named_report("tmss_overlap");
    rep.tolerance = tolerance;
    rep.caps_used = MultiIndex{trunc};
    const ComplexMatrix &um = u.matrix();
    Complex lhs = 0.0;
    for (unsigned k = 0; k <= trunc; ++k) {
        const auto layer = enumerate_weight(m, k);
        for (const MultiIndex &p : layer) {
            Complex lp = 1.0;
            for (std::size_t i = 0; i < m; ++i) {
                lp *= int_pow(lambda[i], p[i]);
            }
            if (lp == 0.0) {
                continue;
            }
            for (const MultiIndex &q : layer) {
                Complex mq = 1.0;
                for (std::size_t i = 0; i < m; ++i) {
                    mq *= int_pow(mu[i], q[i]);
                }
                if (mq == 0.0) {
                    continue;
                }
                lhs += lp * mq * oracle_permanent(um, {p.concat(p), q.concat(q)}) / (fact_d(p) * fact_d(q));
            }
        }
    }
    const ComplexMatrix n = matrix_product(apply_v(lambda, um), apply_v(mu, transpose(um)));
    const Complex rhs = 1.0 / continued_sqrt_det(n);
    rep.tail_bound = tmss_tail_bound(m, radius, trunc);
    rep.record(lhs, rhs);
    std::ostringstream os;
    os << "tail bound " << rep.tail_bound;
    rep.note = os.str();
    return rep.finish();
}

mpq_class sn_value(const mpq_class &a, const mpq_class &b, unsigned n) {
    mpq_class total = 0;
    for (unsigned k = 0; k <= n; ++k) {
        const mpz_class c = binomial(n, k);
        total += mpq_class(c * c) * int_pow(a, k) * int_pow(b, n - k);
    }
    return total;
}

IdentityReport verify_sn_identity(const mpq_class &a, const mpq_class &b, unsigned n) {
    if (n > 8) {
        throw Error(ErrorCode::TooLarge, "S_n identity limited to n <= 8");
    }
    IdentityReport rep = named_report("sn_identity");
    rep.exact = true;
    rep.caps_used = MultiIndex::filled(4, n);
    const mpq_class s = sn_value(a, b, n);
    mpq_class rhs = 0;
    const mpq_class a2 = a * a;
    const mpq_class b2 = b * b;
    const mpq_class d = a - b;
    for (unsigned l = 0; l <= n; ++l) {
        mpq_class term = mpq_class(binomial(2 * l, l) * binomial(n + l, 2 * l)) * int_pow(d, 2 * n - 2 * l) *
                         sn_value(a2, b2, l);
        if ((n - l) % 2 == 1) {
            term = -term;
        }
        rhs += term;
    }
    rep.record_exact(s * s, rhs);
    rep.record_exact(sn_value(1, 1, n), mpq_class(binomial(2 * n, n)));

    const Matrix<mpq_class> mat(2, 2, {1, a, 1, b});
    const MultiIndex p{n, n};
    const mpq_class nf = mpq_class(factorial(n));
    const mpq_class per = oracle_permanent_exact(mat, {p, p});
    rep.record_exact(per, nf * nf * s);
    if (n >= 1 && n <= 4) {
        const MultiIndex caps = MultiIndex::filled(4, n);
        const auto series = chain_series<mpq_class>({mat, transpose(mat)}, caps);
        rep.record_exact(nf * nf * nf * nf * series.coefficient(caps), per * per);
    }
    return rep.finish();
}

namespace {

ComplexMatrix pick_matrix(const VerifyOptions &o, std::size_t dim, Rng &rng) {
    if (o.matrix && o.matrix->is_square() && o.matrix->rows() == dim) {
        return *o.matrix;
    }
    return random_disk_matrix(dim, rng);
}

/// Dimension of the user matrix if one was given, else `fallback`.
std::size_t user_dim(const VerifyOptions &o, std::size_t fallback, std::size_t max_dim) {
    if (o.matrix && o.matrix->is_square() && o.matrix->rows() >= 1 && o.matrix->rows() <= max_dim) {
        return o.matrix->rows();
    }
    return fallback;
}

std::vector<IdentityEntry> build_registry() {
    std::vector<IdentityEntry> r;
    r.push_back({"macmahon", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 1);
                     const std::size_t m = user_dim(o, 3, 4);
                     const unsigned cap = o.cap.value_or(2);
                     std::vector<IdentityReport> parts;
                     for (int t = 0; t < 3; ++t) {
                         parts.push_back(verify_macmahon(pick_matrix(o, m, rng), MultiIndex::filled(m, cap), o.tolerance));
                     }
                     parts.push_back(verify_macmahon_exact(random_integer_matrix(3, rng), MultiIndex::filled(3, 2)));
                     parts.push_back(verify_macmahon_exact(dixon_matrix(), MultiIndex::filled(3, 4)));
                     return merge_reports("macmahon", parts);
                 }});
    r.push_back({"dixon", [](const VerifyOptions &) {
                     std::vector<IdentityReport> parts;
                     for (unsigned n = 1; n <= 4; ++n) {
                         parts.push_back(verify_dixon(n));
                     }
                     return merge_reports("dixon", parts);
                 }});
    r.push_back({"mmmt_two", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 2);
                     const std::size_t m = user_dim(o, 2, 3);
                     const unsigned cap = o.cap.value_or(2);
                     std::vector<IdentityReport> parts;
                     for (int t = 0; t < 3; ++t) {
                         const ComplexMatrix a = pick_matrix(o, m, rng);
                         parts.push_back(verify_mmmt_two(a, random_disk_matrix(m, rng), MultiIndex::filled(2 * m, cap),
                                                         o.tolerance));
                     }
                     parts.push_back(verify_mmmt_reduction(random_integer_matrix(2, rng), MmmtReduction::IdentityB, 2));
                     parts.push_back(verify_mmmt_reduction(random_integer_matrix(2, rng), MmmtReduction::AllOnesB, 2));
                     return merge_reports("mmmt_two", parts);
                 }});
    r.push_back({"mmmt_n", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 3);
                     const unsigned cap = o.cap.value_or(2);
                     const ComplexMatrix a = pick_matrix(o, 2, rng);
                     const ComplexMatrix b = random_disk_matrix(2, rng);
                     const ComplexMatrix c = random_disk_matrix(2, rng);
                     std::vector<IdentityReport> parts;
                     parts.push_back(verify_mmmt_n({a, b}, MultiIndex::filled(4, cap), o.tolerance));
                     parts.push_back(verify_mmmt_n({a, b, c}, MultiIndex::filled(6, cap), o.tolerance));
                     parts.push_back(verify_mmmt_chain_reduction(a, b, cap, o.tolerance));
                     return merge_reports("mmmt_n", parts);
                 }});
    r.push_back({"corollary_rank_one", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 4);
                     const ComplexMatrix a = pick_matrix(o, 3, rng);
                     std::vector<IdentityReport> parts;
                     parts.push_back(verify_corollary_rank_one(a, {0, 0, 0}, {0, 0, 0}, o.tolerance));
                     parts.push_back(verify_corollary_rank_one(a, {1, 1, 1}, {1, 1, 1}, o.tolerance));
                     parts.push_back(verify_corollary_rank_one(a, {2, 1, 0}, {1, 1, 1}, o.tolerance));
                     parts.push_back(verify_corollary_rank_one(a, {3, 0, 0}, {0, 1, 2}, o.tolerance));
                     return merge_reports("corollary_rank_one", parts);
                 }});
    r.push_back({"generating_function", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 5);
                     const std::size_t m = user_dim(o, 2, 2);
                     const ComplexMatrix a = pick_matrix(o, m, rng);
                     const MultiIndex caps = MultiIndex::filled(2 * m, o.cap.value_or(2));
                     std::vector<IdentityReport> parts;
                     for (auto f : {GeneratingFunction::Exp, GeneratingFunction::GeometricInverse,
                                    GeneratingFunction::PowerN, GeneratingFunction::LogInverse}) {
                         parts.push_back(verify_generating_function(a, f, caps, 2, o.tolerance));
                     }
                     return merge_reports("generating_function", parts);
                 }});
    r.push_back({"monomial_glynn", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 6);
                     const ComplexMatrix a = pick_matrix(o, 3, rng);
                     const MultiIndex caps = MultiIndex::filled(3, o.cap.value_or(3));
                     std::vector<IdentityReport> parts;
                     parts.push_back(verify_monomial_glynn(a, {0, 0, 0}, caps, o.tolerance));
                     parts.push_back(verify_monomial_glynn(a, {1, 2, 0}, caps, o.tolerance));
                     parts.push_back(verify_monomial_glynn(a, {1, 1, 1}, caps, o.tolerance));
                     return merge_reports("monomial_glynn", parts);
                 }});
    r.push_back({"sum_formula", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 7);
                     const ComplexMatrix a = pick_matrix(o, 3, rng);
                     const ComplexMatrix b = random_disk_matrix(3, rng);
                     std::vector<IdentityReport> parts;
                     parts.push_back(verify_sum_formula(a, b, RepetitionPattern::identity(3), o.tolerance));
                     parts.push_back(verify_sum_formula(a, b, {{2, 1, 0}, {0, 1, 2}}, o.tolerance));
                     parts.push_back(verify_sum_formula(a, ComplexMatrix(3, 3), {{1, 2, 0}, {1, 1, 1}}, o.tolerance));
                     return merge_reports("sum_formula", parts);
                 }});
    r.push_back({"laplace", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 8);
                     const ComplexMatrix a = pick_matrix(o, 3, rng);
                     std::vector<IdentityReport> parts;
                     parts.push_back(verify_laplace(a, RepetitionPattern::identity(3), 0, o.tolerance));
                     parts.push_back(verify_laplace(a, RepetitionPattern::identity(3), 1, o.tolerance));
                     parts.push_back(verify_laplace(random_disk_matrix(2, rng), {{2, 2}, {2, 2}}, 2, o.tolerance));
                     return merge_reports("laplace", parts);
                 }});
    r.push_back({"sum_of_permanents", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 9);
                     const ComplexMatrix a = pick_matrix(o, 3, rng);
                     std::vector<IdentityReport> parts;
                     parts.push_back(verify_sum_of_permanents(a, random_disk_matrix(3, rng),
                                                              RepetitionPattern::identity(3), o.tolerance));
                     parts.push_back(verify_sum_of_permanents(random_disk_matrix(2, rng), random_disk_matrix(2, rng),
                                                              {{2, 1}, {1, 2}}, o.tolerance));
                     return merge_reports("sum_of_permanents", parts);
                 }});
    r.push_back({"even_matrix", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 10);
                     std::vector<IdentityReport> parts;
                     const ComplexMatrix m4 = pick_matrix(o, 4, rng);
                     parts.push_back(verify_even_matrix(m4, EvenMode::SingleCoefficient, {}, o.tolerance));
                     parts.push_back(verify_even_matrix(random_disk_matrix(6, rng), EvenMode::SingleCoefficient, {},
                                                        o.tolerance));
                     parts.push_back(verify_even_matrix(m4, EvenMode::FullSeries, MultiIndex::filled(4, o.cap.value_or(2)),
                                                        o.tolerance));
                     return merge_reports("even_matrix", parts);
                 }});
    r.push_back({"tmss_overlap", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 11);
                     const UnitaryMatrix u = haar_unitary(4, rng);
                     std::vector<Complex> lambda(2);
                     std::vector<Complex> mu(2);
                     for (std::size_t k = 0; k < 2; ++k) {
                         lambda[k] = 0.2 * rng.unit_phase();
                         mu[k] = 0.2 * rng.unit_phase();
                     }
                     return verify_tmss_overlap(u, lambda, mu, o.cap.value_or(8), o.tolerance);
                 }});
    r.push_back({"sn_identity", [](const VerifyOptions &o) {
                     Rng rng(o.seed, 12);
                     std::vector<IdentityReport> parts;
                     for (unsigned n = 0; n <= 8; ++n) {
                         parts.push_back(verify_sn_identity(random_rational(rng), random_rational(rng), n));
                     }
                     parts.push_back(verify_sn_identity(1, 1, 5));
                     return merge_reports("sn_identity", parts);
                 }});
    return r;
}

}  // namespace

const std::vector<IdentityEntry> &identity_registry() {
    static const std::vector<IdentityEntry> registry = build_registry();
    return registry;
}

IdentityReport run_identity(const std::string &name, const VerifyOptions &options) {
    for (const auto &entry : identity_registry()) {
        if (entry.name == name) {
            return entry.run(options);
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown identity '" + name + "'");
}

std::vector<IdentityReport> run_all_identities(const VerifyOptions &options) {
    const auto &registry = identity_registry();
    std::vector<IdentityReport> out(registry.size());
    parallel_for(registry.size(), [&](std::size_t i) { out[i] = registry[i].run(options); });
    return out;
}

}  // namespace permkit
