#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qtc/message.hpp"
#include "qtc/pauli.hpp"
#include "qtc/rng.hpp"
#include "qtc/symplectic.hpp"

namespace qtc {

/// Random qubit permutation combined with independent per-qubit symplectic twists.
/// apply(): qubit i's (z,x) pair is twisted by twists[i], then moved to perm[i].
class QuantumInterleaver {
  public:
    QuantumInterleaver(std::vector<uint32_t> perm, std::vector<uint8_t> twists)
        : perm_(std::move(perm)), twists_(std::move(twists)) {
        if (perm_.size() != twists_.size() || perm_.empty())
            throw std::invalid_argument("QuantumInterleaver: bad sizes");
        init_maps();
        std::vector<uint32_t> seen(perm_.size(), 0);
        for (uint32_t p : perm_) {
            if (p >= perm_.size() || seen[p]++)
                throw std::invalid_argument("QuantumInterleaver: perm is not a bijection");
        }
    }

    static QuantumInterleaver new_random(size_t n, Rng& rng) {
        if (n == 0) throw std::invalid_argument("QuantumInterleaver: N must be positive");
        std::vector<uint32_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        for (size_t i = n - 1; i > 0; --i) {
            size_t j = rng.below(i + 1);
            std::swap(perm[i], perm[j]);
        }
        std::vector<uint8_t> tw(n);
        for (auto& t : tw) t = static_cast<uint8_t>(rng.below(6));
        return QuantumInterleaver(std::move(perm), std::move(tw));
    }

    size_t size() const { return perm_.size(); }
    const std::vector<uint32_t>& perm() const { return perm_; }
    const std::vector<uint8_t>& twists() const { return twists_; }

    EffectiveVector apply(const EffectiveVector& v) const {
        check(v.n_qubits());
        EffectiveVector out(v.n_qubits());
        for (size_t i = 0; i < v.n_qubits(); ++i)
            out.set_symbol(perm_[i], fwd_[twists_[i]][static_cast<int>(v.symbol(i))]);
        return out;
    }

    EffectiveVector inverse_apply(const EffectiveVector& v) const {
        check(v.n_qubits());
        EffectiveVector out(v.n_qubits());
        for (size_t i = 0; i < v.n_qubits(); ++i)
            out.set_symbol(i, inv_[twists_[i]][static_cast<int>(v.symbol(perm_[i]))]);
        return out;
    }

    /// Transport beliefs the same way apply() transports symbols:
    /// out[perm[i]][twist(s)] = in[i][s].
    MessageSequence apply_messages(const MessageSequence& msgs) const {
        check(msgs.size());
        MessageSequence out = msgs;
        for (size_t i = 0; i < msgs.size(); ++i) {
            const auto& src = msgs[i];
            auto& dst = out.symbols[perm_[i]];
            for (int s = 0; s < 4; ++s) dst.p[static_cast<int>(fwd_[twists_[i]][s])] = src.p[s];
        }
        return out;
    }

    MessageSequence inverse_apply_messages(const MessageSequence& msgs) const {
        check(msgs.size());
        MessageSequence out = msgs;
        for (size_t i = 0; i < msgs.size(); ++i) {
            const auto& src = msgs[perm_[i]];
            auto& dst = out.symbols[i];
            for (int s = 0; s < 4; ++s) dst.p[s] = src.p[static_cast<int>(fwd_[twists_[i]][s])];
        }
        return out;
    }

  private:
    void check(size_t n) const {
        if (n != perm_.size()) throw std::invalid_argument("QuantumInterleaver: size mismatch");
    }

    void init_maps() {
        auto sq = single_qubit_symplectics();
        for (int t = 0; t < 6; ++t) {
            for (int s = 0; s < 4; ++s) {
                EffectiveVector v(1);
                v.set_symbol(0, static_cast<PauliSymbol>(s));
                PauliSymbol w = apply_matrix(v, sq[t]).symbol(0);
                fwd_[t][s] = w;
                inv_[t][static_cast<int>(w)] = static_cast<PauliSymbol>(s);
            }
        }
    }

    std::vector<uint32_t> perm_;
    std::vector<uint8_t> twists_;
    std::array<std::array<PauliSymbol, 4>, 6> fwd_{}, inv_{};
};

}  // namespace qtc
