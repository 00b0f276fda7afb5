#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtc {

/// Effective single-qubit Pauli, phases dropped. Order fixes argmax tie-breaking.
enum class PauliSymbol : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<uint8_t, 4> kSymbolZ = {0, 0, 1, 1};  // I X Y Z
inline constexpr std::array<uint8_t, 4> kSymbolX = {0, 1, 1, 0};

inline PauliSymbol symbol_from_zx(int z, int x) {
    // (z,x): I=(0,0) X=(0,1) Y=(1,1) Z=(1,0)
    static constexpr PauliSymbol table[2][2] = {{PauliSymbol::I, PauliSymbol::X},
                                                {PauliSymbol::Z, PauliSymbol::Y}};
    return table[z & 1][x & 1];
}

inline char symbol_char(PauliSymbol s) {
    return "IXYZ"[static_cast<int>(s)];
}

/// Binary representation of an n-qubit effective Pauli error:
/// bits [z_0 .. z_{n-1} | x_0 .. x_{n-1}].
class EffectiveVector {
  public:
    EffectiveVector() = default;
    explicit EffectiveVector(size_t n_qubits)
        : n_(n_qubits), words_((2 * n_qubits + 63) / 64, 0) {}

    size_t n_qubits() const { return n_; }
    size_t n_bits() const { return 2 * n_; }

    bool bit(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set_bit(size_t i, bool v) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    bool z_bit(size_t q) const { return bit(q); }
    bool x_bit(size_t q) const { return bit(n_ + q); }
    void set_z(size_t q, bool v) { set_bit(q, v); }
    void set_x(size_t q, bool v) { set_bit(n_ + q, v); }

    PauliSymbol symbol(size_t q) const { return symbol_from_zx(z_bit(q), x_bit(q)); }
    void set_symbol(size_t q, PauliSymbol s) {
        set_z(q, kSymbolZ[static_cast<int>(s)]);
        set_x(q, kSymbolX[static_cast<int>(s)]);
    }

    EffectiveVector& operator^=(const EffectiveVector& o) {
        if (o.n_ != n_) throw std::invalid_argument("EffectiveVector xor: length mismatch");
        for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    friend EffectiveVector operator^(EffectiveVector a, const EffectiveVector& b) {
        a ^= b;
        return a;
    }
    bool operator==(const EffectiveVector& o) const {
        return n_ == o.n_ && words_ == o.words_;
    }
    bool operator!=(const EffectiveVector& o) const { return !(*this == o); }

    bool is_zero() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }

    std::string str() const {
        std::string s;
        s.reserve(n_);
        for (size_t q = 0; q < n_; ++q) s.push_back(symbol_char(symbol(q)));
        return s;
    }

  private:
    size_t n_ = 0;
    std::vector<uint64_t> words_;
};

/// Qubit positions carrying a non-identity symbol.
inline size_t weight(const EffectiveVector& v) {
    size_t w = 0;
    for (size_t q = 0; q < v.n_qubits(); ++q)
        if (v.symbol(q) != PauliSymbol::I) ++w;
    return w;
}

/// GF(2) symplectic product a_z.b_x + a_x.b_z; 1 iff the Paulis anti-commute.
inline int symplectic_product(const EffectiveVector& a, const EffectiveVector& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("symplectic_product: length mismatch");
    int acc = 0;
    for (size_t q = 0; q < a.n_qubits(); ++q)
        acc ^= (a.z_bit(q) & b.x_bit(q)) ^ (a.x_bit(q) & b.z_bit(q));
    return acc;
}

}  // namespace qtc
