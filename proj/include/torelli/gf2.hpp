#pragma once
// GF(2) linear algebra on packed bit rows

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace torelli::gf2 {

inline int parity(uint64_t v) { return std::popcount(v) & 1; }

// Incremental echelon basis for vectors of up to 64 bits.
struct Basis64 {
    std::vector<uint64_t> rows;  // each row has a distinct leading bit
    std::vector<int> lead;

    uint64_t reduce(uint64_t v) const
    {
        for (size_t i = 0; i < rows.size(); ++i)
            if ((v >> lead[i]) & 1) v ^= rows[i];
        return v;
    }
    bool contains(uint64_t v) const { return reduce(v) == 0; }
    bool insert(uint64_t v)
    {
        v = reduce(v);
        if (!v) return false;
        int l = 63 - std::countl_zero(v);
        for (auto& r : rows)
            if ((r >> l) & 1) r ^= v;
        rows.push_back(v);
        lead.push_back(l);
        return true;
    }
    size_t dim() const { return rows.size(); }
};

// Dense bit matrix with arbitrary column count.
struct BitMatrix {
    size_t ncols = 0, words = 0;
    std::vector<std::vector<uint64_t>> rows;

    explicit BitMatrix(size_t n = 0) : ncols(n), words((n + 63) / 64) {}

    std::vector<uint64_t> zero_row() const { return std::vector<uint64_t>(words, 0); }
    static void flip(std::vector<uint64_t>& r, size_t j) { r[j / 64] ^= uint64_t(1) << (j % 64); }
    static bool get(const std::vector<uint64_t>& r, size_t j) { return (r[j / 64] >> (j % 64)) & 1; }
    void add_row(std::vector<uint64_t> r) { rows.push_back(std::move(r)); }

    // reduced row echelon form in place; returns pivot columns
    std::vector<size_t> rref()
    {
        std::vector<size_t> piv;
        size_t r = 0;
        for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
            size_t p = r;
            while (p < rows.size() && !get(rows[p], c)) ++p;
            if (p == rows.size()) continue;
            std::swap(rows[p], rows[r]);
            for (size_t i = 0; i < rows.size(); ++i) {
                if (i == r || !get(rows[i], c)) continue;
                for (size_t w = 0; w < words; ++w) rows[i][w] ^= rows[r][w];
            }
            piv.push_back(c);
            ++r;
        }
        rows.resize(r);
        return piv;
    }
    size_t rank() const
    {
        BitMatrix m = *this;
        return m.rref().size();
    }
    // basis of the null space {v : M v = 0}
    std::vector<std::vector<uint64_t>> kernel() const
    {
        BitMatrix m = *this;
        auto piv = m.rref();
        std::vector<char> is_piv(ncols, 0);
        for (size_t c : piv) is_piv[c] = 1;
        std::vector<std::vector<uint64_t>> out;
        for (size_t f = 0; f < ncols; ++f) {
            if (is_piv[f]) continue;
            auto v = zero_row();
            flip(v, f);
            for (size_t i = 0; i < piv.size(); ++i)
                if (get(m.rows[i], f)) flip(v, piv[i]);
            out.push_back(std::move(v));
        }
        return out;
    }
};

}  // namespace torelli::gf2
