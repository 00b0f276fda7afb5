#pragma once

#include <cmath>
#include <stdexcept>

#include "qtc/message.hpp"
#include "qtc/pauli.hpp"
#include "qtc/rng.hpp"

namespace qtc {

/// Maximum tolerable depolarizing probability of a rate-1/9 code with
/// entanglement consumption rate 6/9 (used only for dB-gap reporting).
inline constexpr double kEaHashingPmax = 0.3779;

struct DepolarizingChannel {
    double p = 0.0;
    explicit DepolarizingChannel(double prob) : p(prob) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("DepolarizingChannel: p outside [0,1]");
    }
};

/// Each qubit independently stays I with probability 1-p, else X/Y/Z each p/3.
inline EffectiveVector sample_error(const DepolarizingChannel& ch, size_t n_qubits, Rng& rng) {
    EffectiveVector v(n_qubits);
    for (size_t q = 0; q < n_qubits; ++q) {
        double u = rng.uniform();
        if (u < ch.p) {
            int which = static_cast<int>(rng.below(3));  // X, Y, Z equally likely
            v.set_symbol(q, static_cast<PauliSymbol>(1 + which));
        }
    }
    return v;
}

inline SymbolDistribution symbol_priors(const DepolarizingChannel& ch) {
    SymbolDistribution d;
    d.p = {1.0 - ch.p, ch.p / 3.0, ch.p / 3.0, ch.p / 3.0};
    return d;
}

inline double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("binary_entropy: q outside [0,1]");
    if (q == 0.0 || q == 1.0) return 0.0;
    return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

/// 1 - H2(2p/3): capacity of each of the two marginal binary symmetric channels.
inline double bsc_capacity(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bsc_capacity: p outside [0,1]");
    return 1.0 - binary_entropy(2.0 * p / 3.0);
}

/// (1/2)[2 - H2(p) - p log2 3]: classical capacity per half of the 4-ary channel.
inline double fourary_classical_capacity(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("fourary_classical_capacity: p outside [0,1]");
    return 0.5 * (2.0 - binary_entropy(p) - p * std::log2(3.0));
}

/// 1 - H2(p) - p log2 3, the hashing bound.
inline double hashing_bound(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("hashing_bound: p outside [0,1]");
    return 1.0 - binary_entropy(p) - p * std::log2(3.0);
}

/// R_C = (1 + R_Q) / 2.
inline double classical_rate(double r_q) {
    if (!(r_q >= 0.0 && r_q <= 1.0)) throw std::invalid_argument("classical_rate: out of range");
    return 0.5 * (1.0 + r_q);
}

/// 10 log10(p_a / p_b), in dB.
inline double db_gap(double p_a, double p_b) {
    if (p_a <= 0.0 || p_b <= 0.0) throw std::invalid_argument("db_gap: non-positive input");
    return 10.0 * std::log10(p_a / p_b);
}

}  // namespace qtc
