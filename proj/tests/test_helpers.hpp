#pragma once

#include <optional>
#include <vector>

#include "qtc/exit.hpp"
#include "qtc/qcc.hpp"
#include "qtc/registry.hpp"

namespace qtc_test {

using namespace qtc;

/// A [n,k,m] seed that routes the logical and syndrome inputs straight to the
/// physical outputs and keeps the memory in place: qubit permutation
/// (M1..Mm, L1..Lk, S1..S(n-k)) -> (P=L:S, M). Symplectic, trivially trackable.
inline SeedTransform passthrough_seed(size_t n, size_t k, size_t m,
                                      std::vector<AncillaKind> kinds) {
    size_t d = n + m;
    BinarySymplecticMatrix mat(d);
    // input qubit q -> output qubit perm(q), same component
    auto out_q = [&](size_t q) { return q < m ? n + q : q - m; };
    for (size_t i = 0; i < 2 * d; ++i)
        for (size_t j = 0; j < 2 * d; ++j) mat.set_entry(i, j, false);
    for (size_t q = 0; q < d; ++q) {
        mat.set_entry(q, out_q(q), true);
        mat.set_entry(d + q, d + out_q(q), true);
    }
    return SeedTransform(n, k, m, mat, std::move(kinds), SeedConvention::MsbFirst);
}

/// Random toy seed with a valid tracking block.
inline SeedTransform random_toy_seed(size_t n, size_t k, size_t m,
                                     std::vector<AncillaKind> kinds, Rng& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        BinarySymplecticMatrix mat = random_symplectic(n + m, rng);
        try {
            return SeedTransform(n, k, m, mat, kinds, SeedConvention::MsbFirst);
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::runtime_error("random_toy_seed: no valid draw");
}

inline MessageSequence random_messages(size_t len, MessageSubject subj, Rng& rng) {
    MessageSequence m = MessageSequence::uniform(len, MessageRole::APriori, subj);
    for (auto& d : m.symbols) {
        for (auto& v : d.p) v = rng.uniform() + 0.05;
        d.normalize();
    }
    return m;
}

/// Exhaustive posterior over logical sequences: enumerate every physical error
/// pattern, keep the ones consistent with the observable syndrome, weight by the
/// factorized priors, and marginalize per logical qubit. Independent of the
/// trellis recursion by construction.
inline std::vector<SymbolDistribution> brute_force_posterior(const CodeSpec& spec,
                                                             const MessageSequence& priors_p,
                                                             const MessageSequence& priors_l,
                                                             const SyndromeSequence& syn) {
    size_t n = spec.n(), k = spec.k(), nb = spec.block_count(), na = n - k;
    size_t total_q = n * nb;
    std::vector<double> post(k * nb * 4, 0.0);
    double z = 0.0;
    uint64_t npat = 1;
    for (size_t i = 0; i < total_q; ++i) npat *= 4;
    for (uint64_t pat = 0; pat < npat; ++pat) {
        EffectiveVector pv(total_q);
        uint64_t t = pat;
        for (size_t q = 0; q < total_q; ++q) {
            pv.set_symbol(q, static_cast<PauliSymbol>(t & 3));
            t >>= 2;
        }
        TrackResult tr = track_error(spec, pv);
        bool ok = true;
        for (size_t st = 0; st < nb && ok; ++st)
            for (size_t j = 0; j < na; ++j) {
                if (tr.syndrome.x_at(st, j) != syn.x_at(st, j)) ok = false;
                if (spec.seed().ancilla_kinds()[j] == AncillaKind::Ebit &&
                    tr.syndrome.z_at(st, j) != syn.z_at(st, j))
                    ok = false;
            }
        if (!ok) continue;
        double w = 1.0;
        for (size_t q = 0; q < total_q; ++q)
            w *= priors_p[q][pv.symbol(q)];
        for (size_t q = 0; q < k * nb; ++q)
            w *= priors_l[q][tr.logical.symbol(q)];
        if (w == 0.0) continue;
        z += w;
        for (size_t q = 0; q < k * nb; ++q)
            post[q * 4 + static_cast<size_t>(tr.logical.symbol(q))] += w;
    }
    std::vector<SymbolDistribution> out(k * nb);
    for (size_t q = 0; q < k * nb; ++q) {
        for (int s = 0; s < 4; ++s) out[q].p[s] = post[q * 4 + s] / z;
    }
    return out;
}

}  // namespace qtc_test
