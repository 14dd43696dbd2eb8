#pragma once
// small dense integer matrices: Hermite form, kernels, Smith invariants

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace torelli {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using ZVec = std::vector<Int>;

struct ZMat {
    size_t rows = 0, cols = 0;
    std::vector<Int> a;

    ZMat() = default;
    ZMat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

    Int& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    static ZMat from_rows(const std::vector<ZVec>& rs, size_t ncols)
    {
        ZMat m(rs.size(), ncols);
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = 0; j < ncols; ++j) m(i, j) = rs[i][j];
        return m;
    }
    ZVec row(size_t i) const { return ZVec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
    ZMat transpose() const
    {
        ZMat t(cols, rows);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    void swap_rows(size_t i, size_t k)
    {
        if (i == k) return;
        for (size_t j = 0; j < cols; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
};

inline Int floor_div(const Int& a, const Int& b)
{
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

// extended gcd: g = s*a + t*b, g >= 0
inline void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t)
{
    Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    g = r0; s = s0; t = t0;
}

// Row-style Hermite normal form. Unimodular row operations are mirrored into
// `track` (if given), which must have the same number of rows.
inline ZMat hnf_rows(ZMat m, ZMat* track = nullptr)
{
    size_t piv_row = 0;
    for (size_t col = 0; col < m.cols && piv_row < m.rows; ++col) {
        // gcd-combine everything below into piv_row
        for (size_t i = piv_row + 1; i < m.rows; ++i) {
            if (m(i, col) == 0) continue;
            Int a = m(piv_row, col), b = m(i, col), g, s, t;
            xgcd(a, b, g, s, t);
            Int ua = a / g, ub = b / g;
            auto combine = [&](ZMat& x) {
                for (size_t j = 0; j < x.cols; ++j) {
                    Int p = x(piv_row, j), q = x(i, j);
                    x(piv_row, j) = s * p + t * q;
                    x(i, j) = -ub * p + ua * q;
                }
            };
            combine(m);
            if (track) combine(*track);
        }
        if (m(piv_row, col) == 0) continue;
        if (m(piv_row, col) < 0) {
            for (size_t j = 0; j < m.cols; ++j) m(piv_row, j) = -m(piv_row, j);
            if (track)
                for (size_t j = 0; j < track->cols; ++j) (*track)(piv_row, j) = -(*track)(piv_row, j);
        }
        for (size_t i = 0; i < piv_row; ++i) {
            Int q = floor_div(m(i, col), m(piv_row, col));
            if (q == 0) continue;
            for (size_t j = 0; j < m.cols; ++j) m(i, j) -= q * m(piv_row, j);
            if (track)
                for (size_t j = 0; j < track->cols; ++j) (*track)(i, j) -= q * (*track)(piv_row, j);
        }
        ++piv_row;
    }
    return m;
}

inline size_t nonzero_rows(const ZMat& h)
{
    size_t n = 0;
    for (size_t i = 0; i < h.rows; ++i) {
        bool nz = false;
        for (size_t j = 0; j < h.cols && !nz; ++j) nz = h(i, j) != 0;
        if (nz) ++n;
    }
    return n;
}

inline size_t rank(const ZMat& m) { return nonzero_rows(hnf_rows(m)); }

// canonical basis (HNF rows) of the lattice spanned by the given vectors
inline std::vector<ZVec> lattice_basis(const std::vector<ZVec>& vs, size_t n)
{
    if (vs.empty()) return {};
    ZMat h = hnf_rows(ZMat::from_rows(vs, n));
    std::vector<ZVec> out;
    for (size_t i = 0; i < h.rows; ++i) {
        ZVec r = h.row(i);
        if (std::any_of(r.begin(), r.end(), [](const Int& v) { return v != 0; })) out.push_back(r);
    }
    return out;
}

// Z-basis of {v : m v = 0}, in canonical (Hermite) form
inline std::vector<ZVec> kernel_basis(const ZMat& m)
{
    ZMat t = m.transpose();  // cols x rows
    ZMat id(m.cols, m.cols);
    for (size_t i = 0; i < m.cols; ++i) id(i, i) = 1;
    ZMat h = hnf_rows(t, &id);
    std::vector<ZVec> ker;
    for (size_t i = 0; i < h.rows; ++i) {
        bool zero = true;
        for (size_t j = 0; j < h.cols && zero; ++j) zero = h(i, j) == 0;
        if (zero) ker.push_back(id.row(i));
    }
    return lattice_basis(ker, m.cols);
}

// Smith invariants d_1 | d_2 | ... (nonzero ones only)
inline std::vector<Int> elementary_divisors(ZMat m)
{
    std::vector<Int> d;
    size_t r = m.rows, c = m.cols, t = 0;
    while (t < r && t < c) {
        // find a nonzero entry of minimal absolute value in the trailing block
        size_t pi = r, pj = c;
        for (size_t i = t; i < r; ++i)
            for (size_t j = t; j < c; ++j)
                if (m(i, j) != 0 && (pi == r || abs(m(i, j)) < abs(m(pi, pj)))) { pi = i; pj = j; }
        if (pi == r) break;
        m.swap_rows(t, pi);
        for (size_t i = 0; i < r; ++i) std::swap(m(i, t), m(i, pj));
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < r; ++i) {
                Int q = floor_div(m(i, t), m(t, t));
                if (q != 0)
                    for (size_t j = t; j < c; ++j) m(i, j) -= q * m(t, j);
                if (m(i, t) != 0) {
                    clean = false;
                    m.swap_rows(t, i);
                }
            }
            for (size_t j = t + 1; j < c; ++j) {
                Int q = floor_div(m(t, j), m(t, t));
                if (q != 0)
                    for (size_t i = t; i < r; ++i) m(i, j) -= q * m(i, t);
                if (m(t, j) != 0) {
                    clean = false;
                    for (size_t i = 0; i < r; ++i) std::swap(m(i, t), m(i, j));
                }
            }
            if (clean) {
                // divisibility of the rest
                for (size_t i = t + 1; i < r && clean; ++i)
                    for (size_t j = t + 1; j < c && clean; ++j)
                        if (m(i, j) % m(t, t) != 0) {
                            for (size_t k = t; k < c; ++k) m(t, k) += m(i, k);
                            clean = false;
                        }
            }
        }
        d.push_back(abs(m(t, t)));
        ++t;
    }
    return d;
}

// unique rational solution of sum_j x_j cols[j] = b, if it exists and columns are independent
inline std::optional<std::vector<Rat>> solve_independent(const std::vector<ZVec>& cols, const ZVec& b)
{
    size_t n = b.size(), k = cols.size();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(k + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) m[i][j] = Rat(cols[j][i]);
        m[i][k] = Rat(b[i]);
    }
    size_t row = 0;
    std::vector<size_t> pivcol;
    for (size_t j = 0; j < k; ++j) {
        size_t p = row;
        while (p < n && m[p][j] == 0) ++p;
        if (p == n) return std::nullopt;  // dependent columns
        std::swap(m[p], m[row]);
        for (size_t i = 0; i < n; ++i) {
            if (i == row || m[i][j] == 0) continue;
            Rat f = m[i][j] / m[row][j];
            for (size_t l = j; l <= k; ++l) m[i][l] -= f * m[row][l];
        }
        pivcol.push_back(j);
        ++row;
    }
    for (size_t i = row; i < n; ++i)
        if (m[i][k] != 0) return std::nullopt;
    std::vector<Rat> x(k);
    for (size_t i = 0; i < k; ++i) x[i] = m[i][k] / m[i][i];
    return x;
}

// coordinates of v in the basis `basis` (vectors assumed independent, v in their Q-span)
inline std::vector<Rat> coords_in(const std::vector<ZVec>& basis, const ZVec& v)
{
    auto s = solve_independent(basis, v);
    if (!s) throw std::logic_error("vector outside span");
    return *s;
}

template <class T>
inline T det(std::vector<std::vector<T>> m)
{
    size_t n = m.size();
    T d = 1;
    for (size_t j = 0; j < n; ++j) {
        size_t p = j;
        while (p < n && m[p][j] == 0) ++p;
        if (p == n) return T(0);
        if (p != j) { std::swap(m[p], m[j]); d = -d; }
        d *= m[j][j];
        for (size_t i = j + 1; i < n; ++i) {
            if (m[i][j] == 0) continue;
            T f = m[i][j] / m[j][j];
            for (size_t l = j; l < n; ++l) m[i][l] -= f * m[j][l];
        }
    }
    return d;
}

}  // namespace torelli
