#include "rsc/cohomology.hpp"

#include <algorithm>
#include <cmath>

#include "linalg.hpp"
#include "rsc/error.hpp"

namespace rsc {

using linalg::BigInt;
using linalg::BitVec;

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

Ring Ring::fp(std::int64_t p) {
    if (!is_prime(p)) fail(ErrorKind::InvalidInput, "fp:" + std::to_string(p) + " is not prime");
    if (p > (std::int64_t(1) << 30)) fail(ErrorKind::InvalidInput, "prime too large");
    return {Kind::PrimeField, p};
}

Ring Ring::zmod(std::int64_t m) {
    if (m < 2) fail(ErrorKind::InvalidInput, "zmod needs m >= 2");
    if (m > (std::int64_t(1) << 30)) fail(ErrorKind::InvalidInput, "modulus too large");
    return {Kind::IntegersMod, m};
}

Ring Ring::parse(const std::string& s) {
    auto number = [&](std::size_t from) -> std::int64_t {
        try {
            std::size_t used = 0;
            long long v = std::stoll(s.substr(from), &used);
            if (used != s.size() - from) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidInput, "bad ring spec '" + s + "'");
        }
    };
    if (s == "f2") return f2();
    if (s == "z") return z();
    if (s.rfind("fp:", 0) == 0) return fp(number(3));
    if (s.rfind("zmod:", 0) == 0) return zmod(number(5));
    fail(ErrorKind::InvalidInput, "bad ring spec '" + s + "'");
}

std::int64_t Ring::reduce(std::int64_t x) const {
    if (kind == Kind::Integers) return x;
    return ((x % modulus) + modulus) % modulus;
}

std::string Ring::str() const {
    switch (kind) {
        case Kind::PrimeField: return modulus == 2 ? "f2" : "fp:" + std::to_string(modulus);
        case Kind::Integers: return "z";
        case Kind::IntegersMod: return "zmod:" + std::to_string(modulus);
    }
    return "?";
}

void Cochain::set(const Simplex& s, std::int64_t value) {
    if (s.dim() != j_) fail(ErrorKind::InvalidInput, "cochain degree mismatch for " + s.str());
    value = ring_.reduce(value);
    if (value == 0)
        values_.erase(s);
    else
        values_[s] = value;
}

void Cochain::add(const Simplex& s, std::int64_t value) { set(s, get(s) + value); }

std::int64_t Cochain::get(const Simplex& s) const {
    auto it = values_.find(s);
    return it == values_.end() ? 0 : it->second;
}

std::int64_t Cochain::value_on(const std::vector<int>& ordered) const {
    std::vector<int> v(ordered);
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t k = 0; k + 1 < v.size() - i; ++k)
            if (v[k] > v[k + 1]) {
                std::swap(v[k], v[k + 1]);
                sign = -sign;
            }
    return ring_.reduce(sign * get(Simplex(v)));
}

std::vector<Simplex> Cochain::support() const {
    std::vector<Simplex> out;
    out.reserve(values_.size());
    for (const auto& [s, v] : values_) out.push_back(s);
    return out;
}

SparseMatrix coboundary_matrix(const Complex& c, int j) {
    SparseMatrix m;
    const auto& rows = c.simplices(j + 1);
    m.rows = rows.size();
    m.cols = c.simplices(j).size();
    m.entries.resize(m.rows);
    if (m.cols == 0) return m;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Simplex& s = rows[r];
        for (int i = 0; i < s.size(); ++i) {
            int col = c.index_of(s.face(i));
            m.entries[r].emplace_back(static_cast<std::uint32_t>(col), (i % 2) ? -1 : 1);
        }
        std::sort(m.entries[r].begin(), m.entries[r].end());
    }
    return m;
}

Cochain apply_coboundary(const Complex& c, const Cochain& f) {
    Cochain out(f.degree() + 1, f.ring());
    for (const auto& [s, val] : f.values()) {
        if (!c.contains(s)) fail(ErrorKind::InvalidInput, "cochain supported off the complex at " + s.str());
        for (int v = 1; v <= c.n(); ++v) {
            const Vertex x = static_cast<Vertex>(v);
            if (s.contains(x) || s.size() >= kMaxVertices) continue;
            Simplex t = s.with(x);
            if (!c.contains(t)) continue;
            const int pos = static_cast<int>(std::lower_bound(t.begin(), t.end(), x) - t.begin());
            out.add(t, (pos % 2) ? -val : val);
        }
    }
    return out;
}

bool is_cocycle(const Complex& c, const Cochain& f) { return apply_coboundary(c, f).is_zero(); }

namespace {

constexpr std::size_t kDenseBitGuard = std::size_t(1) << 26;
constexpr std::size_t kDenseEntryGuard = std::size_t(1) << 24;

linalg::DenseMat dense(const SparseMatrix& m) {
    if (m.rows * m.cols > kDenseEntryGuard)
        fail(ErrorKind::GuardExceeded, "coboundary matrix too large for dense elimination");
    linalg::DenseMat d(m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (auto [col, v] : m.entries[r]) d.at(r, col) = v;
    return d;
}

std::vector<BigInt> smith(const Complex& c, int j) {
    if (j < 0) return {};
    return linalg::smith_diagonal(dense(coboundary_matrix(c, j)));
}

std::vector<std::string> as_strings(const std::vector<BigInt>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

}  // namespace

std::size_t coboundary_rank_fp(const Complex& c, int j, std::int64_t p) {
    if (j < 0) return 0;
    SparseMatrix m = coboundary_matrix(c, j);
    if (m.rows == 0 || m.cols == 0) return 0;
    if (p == 2) {
        if (m.rows * m.cols <= kDenseBitGuard) {
            std::vector<BitVec> rows;
            rows.reserve(m.rows);
            for (const auto& e : m.entries) {
                BitVec b(m.cols);
                for (auto [col, v] : e) b.set(col);
                rows.push_back(std::move(b));
            }
            return linalg::f2_rank(rows);
        }
        // Too big to pack densely; reduce the transpose column by column instead.
        std::vector<std::vector<std::uint32_t>> cols(m.rows);
        for (std::size_t r = 0; r < m.rows; ++r)
            for (auto [col, v] : m.entries[r]) cols[r].push_back(col);
        return linalg::f2_sparse_rank(std::move(cols), m.cols);
    }
    return linalg::fp_rank(dense(m), p);
}

std::vector<std::string> coboundary_elementary_divisors(const Complex& c, int j) {
    return as_strings(smith(c, j));
}

CohomologySummary cohomology(const Complex& c, int j, const Ring& ring) {
    if (j < 0 || j > c.d()) fail(ErrorKind::InvalidInput, "degree out of range");
    CohomologySummary out;
    out.j = j;
    const std::size_t nj = c.count(j);
    if (ring.is_field()) {
        const std::size_t r_hi = coboundary_rank_fp(c, j, ring.modulus);
        const std::size_t r_lo = coboundary_rank_fp(c, j - 1, ring.modulus);
        out.free_rank = nj - r_hi - r_lo;
        return out;
    }
    const auto hi = smith(c, j);
    const auto lo = smith(c, j - 1);
    const std::size_t betti = nj - hi.size() - lo.size();
    if (ring.kind == Ring::Kind::Integers) {
        out.free_rank = betti;
        for (const auto& e : lo)
            if (e > 1) out.torsion.push_back(e.str());
        return out;
    }
    // Z/m coefficients through the universal coefficient theorem:
    // H^j = Hom(H_j, Z/m) + Ext(H_{j-1}, Z/m).
    const BigInt m = ring.modulus;
    std::vector<BigInt> orders(betti, m);
    for (const auto& e : hi) orders.push_back(gcd(e, m));
    for (const auto& e : lo) orders.push_back(gcd(e, m));
    for (const auto& f : linalg::invariant_factors(orders)) {
        if (f == m)
            ++out.free_rank;
        else
            out.torsion.push_back(f.str());
    }
    return out;
}

bool is_cohom_connected(const Complex& c, int j, const Ring& ring) {
    if (connected_components(c).size() != 1) return false;
    for (int i = 1; i <= j; ++i)
        if (!cohomology(c, i, ring).vanishes()) return false;
    return true;
}

std::optional<Simplex> shell_certificate(const Complex& c, const Cochain& f) {
    const int j = f.degree();
    std::optional<Simplex> best;
    for (const auto& s : f.support()) {
        for (int a : shells_containing(c, s)) {
            Simplex shell = s.with(static_cast<Vertex>(a));
            if (best && !(shell < *best)) continue;
            int hits = 0;
            for_each_subset(shell, j + 1, [&](const Simplex& side) { hits += f.get(side) != 0; });
            if (hits == 1) best = shell;
        }
    }
    return best;
}

Cochain min_support_in_class(const Complex& c, const Cochain& f) {
    const Ring& ring = f.ring();
    if (!ring.is_field()) fail(ErrorKind::InvalidInput, "min_support_in_class needs a prime field");
    const int j = f.degree();
    if (j == 0) return f;
    const auto& js = c.simplices(j);
    const std::size_t len = js.size();
    const std::int64_t p = ring.modulus;
    const SparseMatrix m = coboundary_matrix(c, j - 1);

    // Columns of delta^{j-1} span the coboundaries inside C^j.
    std::vector<std::vector<std::int64_t>> cols(m.cols, std::vector<std::int64_t>(len, 0));
    for (std::size_t r = 0; r < m.rows; ++r)
        for (auto [col, v] : m.entries[r]) cols[col][r] = ring.reduce(v);
    linalg::FpSpan span(len, p);
    for (auto& col : cols) span.insert(col);
    const std::size_t r = span.dim();
    const double space = std::pow(static_cast<double>(p), static_cast<double>(r));
    if (space > static_cast<double>(kCosetGuard))
        fail(ErrorKind::SearchSpaceTooLarge, "coboundary space too large for exhaustive search");

    std::vector<std::int64_t> cur(len, 0);
    for (const auto& [s, v] : f.values()) {
        int idx = c.index_of(s);
        if (idx < 0) fail(ErrorKind::InvalidInput, "cochain supported off the complex at " + s.str());
        cur[idx] = v;
    }
    auto weight = [](const std::vector<std::int64_t>& v) {
        return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto x) { return x != 0; }));
    };
    std::vector<std::int64_t> best = cur;
    std::size_t best_w = weight(cur);
    const auto& basis = span.basis();

    // Depth-first over digit vectors; each level cycles its basis vector through all p
    // multiples, returning to the start, so every coboundary is visited exactly once.
    auto visit = [&](auto&& self, std::size_t level) -> void {
        if (level == r) {
            std::size_t w = weight(cur);
            if (w < best_w) {
                best_w = w;
                best = cur;
            }
            return;
        }
        for (std::int64_t t = 0; t < p; ++t) {
            self(self, level + 1);
            for (std::size_t k = 0; k < len; ++k) cur[k] = (cur[k] + basis[level][k]) % p;
        }
    };
    visit(visit, 0);

    Cochain out(j, ring);
    for (std::size_t k = 0; k < len; ++k)
        if (best[k]) out.set(js[k], best[k]);
    return out;
}

Complex full_complex(int n, int d) {
    const int top = std::min(d, n - 1);
    return Complex::from_generators(n, d, all_subsets(n, top + 1));
}

MeshulamWallachResult meshulam_wallach(int n, const Cochain& f) {
    const int j = f.degree();
    Complex full = full_complex(n, j + 1);
    MeshulamWallachResult res;
    res.support = f.support_size();
    res.coboundary_support = apply_coboundary(full, f).support_size();
    res.bound = static_cast<double>(n) * static_cast<double>(res.support) / (j + 2);
    res.holds = res.coboundary_support * static_cast<std::size_t>(j + 2) >=
                static_cast<std::size_t>(n) * res.support;
    return res;
}

}  // namespace rsc
