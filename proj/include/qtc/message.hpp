#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qtc/pauli.hpp"

namespace qtc {

/// Probability table over the 4 effective Pauli symbols, indexed by PauliSymbol.
struct SymbolDistribution {
    std::array<double, 4> p{0.25, 0.25, 0.25, 0.25};

    double& operator[](size_t i) { return p[i]; }
    double operator[](size_t i) const { return p[i]; }
    double operator[](PauliSymbol s) const { return p[static_cast<size_t>(s)]; }

    static SymbolDistribution uniform() { return {}; }
    static SymbolDistribution delta(PauliSymbol s) {
        SymbolDistribution d;
        d.p = {0, 0, 0, 0};
        d.p[static_cast<size_t>(s)] = 1.0;
        return d;
    }

    double sum() const { return p[0] + p[1] + p[2] + p[3]; }
    void normalize() {
        double s = sum();
        if (s <= 0.0) throw std::runtime_error("SymbolDistribution: zero mass");
        for (double& v : p) v /= s;
    }
    bool is_normalized(double tol = 1e-9) const { return std::abs(sum() - 1.0) <= tol; }

    /// Deterministic MAP pick; ties broken by symbol order I < X < Y < Z.
    PauliSymbol argmax() const {
        size_t best = 0;
        for (size_t i = 1; i < 4; ++i)
            if (p[i] > p[best]) best = i;
        return static_cast<PauliSymbol>(best);
    }
};

enum class MessageRole : uint8_t { APriori, Extrinsic, APosteriori };
enum class MessageSubject : uint8_t { L, P };

/// Per-qubit symbol distributions carried between SISO stages.
struct MessageSequence {
    MessageRole role = MessageRole::APriori;
    MessageSubject subject = MessageSubject::L;
    std::vector<SymbolDistribution> symbols;

    size_t size() const { return symbols.size(); }
    SymbolDistribution& operator[](size_t i) { return symbols[i]; }
    const SymbolDistribution& operator[](size_t i) const { return symbols[i]; }

    static MessageSequence uniform(size_t n, MessageRole r, MessageSubject s) {
        MessageSequence m;
        m.role = r;
        m.subject = s;
        m.symbols.assign(n, SymbolDistribution::uniform());
        return m;
    }

    void check_normalized(double tol = 1e-9) const {
        for (const auto& d : symbols)
            if (!d.is_normalized(tol)) throw std::invalid_argument("message not normalized");
    }
};

}  // namespace qtc
