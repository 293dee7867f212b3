#include "linalg.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace rsc::linalg {

bool BitVec::any() const {
    for (auto w : w_)
        if (w) return true;
    return false;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t BitVec::first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w_[k]));
    return bits_;
}

std::size_t f2_rank(std::vector<BitVec>& rows) {
    if (rows.empty()) return 0;
    const std::size_t ncols = rows[0].size();
    std::vector<std::vector<std::uint64_t>> m;
    m.reserve(rows.size());
    for (auto& r : rows) m.push_back(r.words());
    const std::size_t nw = (ncols + 63) / 64;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < m.size(); ++col) {
        const std::size_t w = col >> 6;
        const std::uint64_t bit = std::uint64_t(1) << (col & 63);
        std::size_t piv = rank;
        while (piv < m.size() && !(m[piv][w] & bit)) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        const auto& pr = m[rank];
        for (std::size_t r = rank + 1; r < m.size(); ++r) {
            if (m[r][w] & bit) {
                auto& row = m[r];
                for (std::size_t k = w; k < nw; ++k) row[k] ^= pr[k];
            }
        }
        ++rank;
    }
    return rank;
}

bool F2Span::insert(BitVec v) {
    v = reduce(std::move(v));
    if (!v.any()) return false;
    pivot_[v.first()] = static_cast<int>(basis_.size());
    basis_.push_back(std::move(v));
    return true;
}

BitVec F2Span::reduce(BitVec v) const {
    while (true) {
        std::size_t f = v.first();
        if (f >= bits_ || pivot_[f] < 0) return v;
        v.xor_with(basis_[pivot_[f]]);
    }
}

std::int64_t mod_inverse(std::int64_t x, std::int64_t p) {
    std::int64_t a = ((x % p) + p) % p, b = p, u = 1, v = 0;
    while (b) {
        std::int64_t t = a / b;
        a -= t * b;
        std::swap(a, b);
        u -= t * v;
        std::swap(u, v);
    }
    return ((u % p) + p) % p;
}

std::size_t fp_rank(DenseMat m, std::int64_t p) {
    for (auto& x : m.a) x = ((x % p) + p) % p;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t piv = rank;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != rank)
            for (std::size_t k = 0; k < m.cols; ++k) std::swap(m.at(piv, k), m.at(rank, k));
        const std::int64_t inv = mod_inverse(m.at(rank, col), p);
        for (std::size_t r = rank + 1; r < m.rows; ++r) {
            std::int64_t f = m.at(r, col) * inv % p;
            if (!f) continue;
            for (std::size_t k = col; k < m.cols; ++k)
                m.at(r, k) = ((m.at(r, k) - f * m.at(rank, k)) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

bool FpSpan::insert(std::vector<std::int64_t> v) {
    v = reduce(std::move(v));
    std::size_t f = 0;
    while (f < len_ && v[f] == 0) ++f;
    if (f == len_) return false;
    const std::int64_t inv = mod_inverse(v[f], p_);
    for (auto& x : v) x = x * inv % p_;
    pivot_[f] = static_cast<int>(basis_.size());
    basis_.push_back(std::move(v));
    return true;
}

std::vector<std::int64_t> FpSpan::reduce(std::vector<std::int64_t> v) const {
    for (auto& x : v) x = ((x % p_) + p_) % p_;
    for (std::size_t f = 0; f < len_; ++f) {
        if (v[f] == 0 || pivot_[f] < 0) continue;
        const auto& b = basis_[pivot_[f]];
        const std::int64_t c = v[f];
        for (std::size_t k = f; k < len_; ++k) v[k] = ((v[k] - c * b[k]) % p_ + p_) % p_;
    }
    return v;
}

std::size_t f2_sparse_rank(std::vector<std::vector<std::uint32_t>> cols, std::size_t nrows) {
    std::vector<std::int64_t> owner(nrows, -1);
    std::size_t rank = 0;
    std::vector<std::uint32_t> tmp;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        auto& col = cols[c];
        while (!col.empty()) {
            std::int64_t o = owner[col.back()];
            if (o < 0) break;
            const auto& other = cols[static_cast<std::size_t>(o)];
            tmp.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(tmp));
            col.swap(tmp);
        }
        if (!col.empty()) {
            owner[col.back()] = static_cast<std::int64_t>(c);
            ++rank;
        }
    }
    return rank;
}

std::vector<BigInt> invariant_factors(std::vector<BigInt> orders) {
    for (auto& x : orders) x = abs(x);
    orders.erase(std::remove_if(orders.begin(), orders.end(), [](const BigInt& x) { return x == 1; }),
                 orders.end());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        for (std::size_t k = i + 1; k < orders.size(); ++k) {
            if (orders[i] == 0 || orders[k] == 0) {
                if (orders[i] == 0) std::swap(orders[i], orders[k]);
                continue;
            }
            BigInt g = gcd(orders[i], orders[k]);
            BigInt l = orders[i] / g * orders[k];
            orders[i] = g;
            orders[k] = l;
        }
    }
    orders.erase(std::remove_if(orders.begin(), orders.end(), [](const BigInt& x) { return x == 1; }),
                 orders.end());
    return orders;
}

namespace {

// gcd/lcm normalisation that keeps unit entries, so the length stays equal to the rank.
std::vector<BigInt> invariant_factors_keep(std::vector<BigInt> d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t k = i + 1; k < d.size(); ++k) {
            BigInt g = gcd(d[i], d[k]);
            BigInt l = d[i] / g * d[k];
            d[i] = g;
            d[k] = l;
        }
    return d;
}

}  // namespace

std::vector<BigInt> smith_diagonal(const DenseMat& in) {
    std::vector<std::vector<BigInt>> a(in.rows, std::vector<BigInt>(in.cols));
    for (std::size_t i = 0; i < in.rows; ++i)
        for (std::size_t j = 0; j < in.cols; ++j) a[i][j] = in.at(i, j);
    const std::size_t R = in.rows, C = in.cols;
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < std::min(R, C); ++t) {
        while (true) {
            // Smallest nonzero magnitude in the trailing block becomes the pivot.
            std::size_t pi = R, pj = C;
            BigInt best;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j) {
                    if (a[i][j] == 0) continue;
                    BigInt v = abs(a[i][j]);
                    if (pi == R || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                        if (best == 1) goto found;
                    }
                }
        found:
            if (pi == R) return invariant_factors_keep(diag);
            std::swap(a[pi], a[t]);
            if (pj != t)
                for (std::size_t i = t; i < R; ++i) std::swap(a[i][pj], a[i][t]);
            bool clean = true;
            const BigInt piv = a[t][t];
            for (std::size_t i = t + 1; i < R; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / piv;
                for (std::size_t j = t; j < C; ++j)
                    if (a[t][j] != 0) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / piv;
                for (std::size_t i = t; i < R; ++i)
                    if (a[i][t] != 0) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        diag.push_back(abs(a[t][t]));
    }
    return invariant_factors_keep(diag);
}

}  // namespace rsc::linalg
