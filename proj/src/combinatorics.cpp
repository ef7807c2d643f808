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

#include "permkit/combinatorics.hpp"

#include <sstream>

namespace permkit {

bool MultiIndex::dominated_by(const MultiIndex &other) const {
    if (size() != other.size()) {
        throw Error(ErrorCode::DimensionMismatch, "multi-index lengths differ");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (parts_[i] > other.parts_[i]) {
            return false;
        }
    }
    return true;
}

bool MultiIndex::is_concentrated() const noexcept {
    std::size_t nonzero = 0;
    for (unsigned v : parts_) {
        nonzero += v != 0;
    }
    return nonzero <= 1;
}

MultiIndex MultiIndex::concat(const MultiIndex &other) const {
    std::vector<unsigned> out = parts_;
    out.insert(out.end(), other.parts_.begin(), other.parts_.end());
    return MultiIndex(std::move(out));
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        os << (i ? "," : "") << parts_[i];
    }
    os << ')';
    return os.str();
}

MultiIndex operator+(const MultiIndex &a, const MultiIndex &b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "multi-index lengths differ");
    }
    std::vector<unsigned> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + b[i];
    }
    return MultiIndex(std::move(out));
}

MultiIndex operator-(const MultiIndex &a, const MultiIndex &b) {
    if (!b.dominated_by(a)) {
        throw Error(ErrorCode::InvalidArgument, "multi-index difference would be negative");
    }
    std::vector<unsigned> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return MultiIndex(std::move(out));
}

mpz_class factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class factorial_product(const MultiIndex &p) {
    mpz_class r = 1;
    for (unsigned v : p) {
        r *= factorial(v);
    }
    return r;
}

mpz_class binomial(unsigned n, unsigned k) {
    if (k > n) {
        return 0;
    }
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class multinomial(const MultiIndex &p) {
    mpz_class r = factorial(p.weight());
    return r / factorial_product(p);
}

namespace {

void weight_rec(std::vector<unsigned> &cur, std::size_t pos, unsigned left, std::vector<MultiIndex> &out) {
    if (pos + 1 == cur.size()) {
        cur[pos] = left;
        out.emplace_back(cur);
        return;
    }
    for (unsigned v = 0; v <= left; ++v) {
        cur[pos] = v;
        weight_rec(cur, pos + 1, left - v, out);
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_weight(std::size_t m, unsigned n) {
    std::vector<MultiIndex> out;
    if (m == 0) {
        if (n == 0) {
            out.emplace_back();
        }
        return out;
    }
    out.reserve(count_weight(m, n));
    std::vector<unsigned> cur(m, 0);
    weight_rec(cur, 0, n, out);
    return out;
}

std::vector<MultiIndex> enumerate_box(const MultiIndex &caps) {
    std::vector<MultiIndex> out;
    std::vector<unsigned> cur(caps.size(), 0);
    while (true) {
        out.emplace_back(cur);
        std::size_t i = cur.size();
        while (i > 0) {
            --i;
            if (cur[i] < caps[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
            if (i == 0) {
                return out;
            }
        }
        if (cur.empty()) {
            return out;
        }
    }
}

std::vector<std::vector<MultiIndex>> enumerate_splits(
    const MultiIndex &p, std::size_t parts, const std::vector<std::optional<unsigned>> &weights) {
    if (parts != 2 && parts != 3) {
        throw Error(ErrorCode::InvalidArgument, "splits support 2 or 3 parts");
    }
    if (!weights.empty() && weights.size() != parts) {
        throw Error(ErrorCode::InvalidArgument, "one weight constraint per part expected");
    }
    auto ok = [&](const std::vector<MultiIndex> &split) {
        for (std::size_t k = 0; k < weights.size(); ++k) {
            if (weights[k] && split[k].weight() != *weights[k]) {
                return false;
            }
        }
        return true;
    };
    std::vector<std::vector<MultiIndex>> out;
    for (const MultiIndex &a : enumerate_box(p)) {
        const MultiIndex rest = p - a;
        if (parts == 2) {
            std::vector<MultiIndex> split{a, rest};
            if (ok(split)) {
                out.push_back(std::move(split));
            }
            continue;
        }
        for (const MultiIndex &b : enumerate_box(rest)) {
            std::vector<MultiIndex> split{a, b, rest - b};
            if (ok(split)) {
                out.push_back(std::move(split));
            }
        }
    }
    return out;
}

std::uint64_t count_weight(std::size_t m, unsigned n) {
    if (m == 0) {
        return n == 0 ? 1 : 0;
    }
    const mpz_class c = binomial(n + static_cast<unsigned>(m) - 1, static_cast<unsigned>(m) - 1);
    if (!c.fits_ulong_p()) {
        return UINT64_MAX;
    }
    return c.get_ui();
}

}  // namespace permkit
