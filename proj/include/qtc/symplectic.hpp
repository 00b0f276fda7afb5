#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qtc/pauli.hpp"
#include "qtc/rng.hpp"

namespace qtc {

/// Square binary matrix acting on 2d-bit row vectors in [z-half | x-half] layout.
/// Rows are stored as bit masks, so 2d must fit in 64 bits (d <= 32 qubits).
class BinarySymplecticMatrix {
  public:
    BinarySymplecticMatrix() = default;
    explicit BinarySymplecticMatrix(size_t dim_qubits)
        : d_(dim_qubits), rows_(2 * dim_qubits, 0) {
        if (2 * dim_qubits > 64) throw std::invalid_argument("matrix side exceeds 64 bits");
        for (size_t i = 0; i < 2 * d_; ++i) rows_[i] = uint64_t{1} << i;
    }
    BinarySymplecticMatrix(size_t dim_qubits, std::vector<uint64_t> rows)
        : d_(dim_qubits), rows_(std::move(rows)) {
        if (2 * dim_qubits > 64) throw std::invalid_argument("matrix side exceeds 64 bits");
        if (rows_.size() != 2 * d_) throw std::invalid_argument("row count != 2*dim_qubits");
    }

    size_t dim_qubits() const { return d_; }
    size_t side() const { return 2 * d_; }
    uint64_t row(size_t i) const { return rows_[i]; }
    const std::vector<uint64_t>& rows() const { return rows_; }
    bool entry(size_t i, size_t j) const { return (rows_[i] >> j) & 1; }
    void set_entry(size_t i, size_t j, bool v) {
        if (v)
            rows_[i] |= uint64_t{1} << j;
        else
            rows_[i] &= ~(uint64_t{1} << j);
    }

    /// Row-vector times matrix for a packed 2d-bit vector.
    uint64_t apply_bits(uint64_t v) const {
        uint64_t out = 0;
        while (v) {
            int i = std::countr_zero(v);
            out ^= rows_[i];
            v &= v - 1;
        }
        return out;
    }

    bool operator==(const BinarySymplecticMatrix& o) const {
        return d_ == o.d_ && rows_ == o.rows_;
    }

  private:
    size_t d_ = 0;
    std::vector<uint64_t> rows_;
};

inline int symplectic_product_bits(uint64_t a, uint64_t b, size_t d) {
    uint64_t zmask = (d == 32) ? 0xffffffffull : ((uint64_t{1} << d) - 1);
    uint64_t az = a & zmask, ax = a >> d;
    uint64_t bz = b & zmask, bx = b >> d;
    return (std::popcount(az & bx) + std::popcount(ax & bz)) & 1;
}

/// True iff M * Lambda * M^T = Lambda with Lambda = [[0, I_d], [I_d, 0]].
inline bool is_symplectic(const BinarySymplecticMatrix& m) {
    size_t d = m.dim_qubits();
    for (size_t i = 0; i < 2 * d; ++i) {
        for (size_t j = i; j < 2 * d; ++j) {
            int want = (j == i + d) ? 1 : 0;
            if (symplectic_product_bits(m.row(i), m.row(j), d) != want) return false;
        }
    }
    return true;
}

/// Symplectic inverse Lambda * M^T * Lambda (closed form, no elimination).
inline BinarySymplecticMatrix invert_symplectic(const BinarySymplecticMatrix& m) {
    if (!is_symplectic(m)) throw std::invalid_argument("invert_symplectic: matrix not symplectic");
    size_t d = m.dim_qubits();
    BinarySymplecticMatrix out(d);
    // (Lambda M^T Lambda)[i][j] = M^T[i+-d][j+-d] = M[(j+d)%2d][(i+d)%2d]
    for (size_t i = 0; i < 2 * d; ++i)
        for (size_t j = 0; j < 2 * d; ++j)
            out.set_entry(i, j, m.entry((j + d) % (2 * d), (i + d) % (2 * d)));
    return out;
}

inline EffectiveVector apply_matrix(const EffectiveVector& v, const BinarySymplecticMatrix& m) {
    if (2 * v.n_qubits() != m.side())
        throw std::invalid_argument("apply_matrix: dimension mismatch");
    uint64_t bits = 0;
    for (size_t i = 0; i < v.n_bits(); ++i) bits |= uint64_t{v.bit(i)} << i;
    uint64_t out = m.apply_bits(bits);
    EffectiveVector r(v.n_qubits());
    for (size_t i = 0; i < v.n_bits(); ++i) r.set_bit(i, (out >> i) & 1);
    return r;
}

/// The 6 elements of Sp(2, GF(2)) = GL(2, GF(2)), ordered lexicographically by
/// (row0, row1) bit masks. Element 2 is the identity.
inline std::vector<BinarySymplecticMatrix> single_qubit_symplectics() {
    std::vector<BinarySymplecticMatrix> out;
    for (uint64_t r0 = 1; r0 < 4; ++r0)
        for (uint64_t r1 = 1; r1 < 4; ++r1) {
            if (r0 == r1) continue;
            out.push_back(BinarySymplecticMatrix(1, {r0, r1}));
        }
    return out;
}

/// Uniform sample from Sp(2d, GF(2)): draw hyperbolic pairs sequentially inside
/// shrinking symplectic complements.
inline BinarySymplecticMatrix random_symplectic(size_t dim_qubits, Rng& rng) {
    if (dim_qubits < 1 || dim_qubits > 32)
        throw std::invalid_argument("random_symplectic: dim_qubits out of range");
    size_t d = dim_qubits;
    std::vector<uint64_t> basis(2 * d);
    for (size_t i = 0; i < 2 * d; ++i) basis[i] = uint64_t{1} << i;
    std::vector<uint64_t> zrows, xrows;
    std::vector<uint64_t> cur = basis;
    for (size_t round = 0; round < d; ++round) {
        size_t dim = cur.size();
        auto combine = [&](uint64_t coeffs) {
            uint64_t v = 0;
            for (size_t i = 0; i < dim; ++i)
                if ((coeffs >> i) & 1) v ^= cur[i];
            return v;
        };
        uint64_t z = 0;
        while (z == 0) z = combine(rng.bits(dim));
        uint64_t x0 = 0;
        for (uint64_t b : cur) {
            if (symplectic_product_bits(z, b, d)) {
                x0 = b;
                break;
            }
        }
        uint64_t x = combine(rng.bits(dim));
        if (!symplectic_product_bits(z, x, d)) x ^= x0;
        zrows.push_back(z);
        xrows.push_back(x);
        // project remaining basis into the symplectic complement of {z, x}
        std::vector<uint64_t> next;
        std::vector<std::pair<int, uint64_t>> pivots;
        for (uint64_t b : cur) {
            uint64_t v = b;
            if (symplectic_product_bits(v, x, d)) v ^= z;
            if (symplectic_product_bits(v, z, d)) v ^= x;
            for (auto& [p, pb] : pivots)
                if ((v >> p) & 1) v ^= pb;
            if (v) {
                int p = 63 - std::countl_zero(v);
                pivots.emplace_back(p, v);
                next.push_back(v);
                if (next.size() == dim - 2) break;
            }
        }
        cur = next;
    }
    std::vector<uint64_t> rows(zrows);
    rows.insert(rows.end(), xrows.begin(), xrows.end());
    return BinarySymplecticMatrix(d, rows);
}

}  // namespace qtc
