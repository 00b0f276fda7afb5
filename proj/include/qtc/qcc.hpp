#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qtc/message.hpp"
#include "qtc/seed.hpp"

namespace qtc {

enum class CodeRole : uint8_t { Inner, Outer };

/// Observable part of the syndrome: x bits everywhere, z bits at ebit positions.
struct SyndromeSequence {
    size_t steps = 0;
    size_t n_anc = 0;                // n - k
    std::vector<AncillaKind> kinds;  // one per ancilla position
    std::vector<uint8_t> x;          // steps * n_anc
    std::vector<uint8_t> z;          // steps * n_anc; meaningful only where kinds == Ebit

    uint8_t x_at(size_t t, size_t j) const { return x[t * n_anc + j]; }
    uint8_t z_at(size_t t, size_t j) const { return z[t * n_anc + j]; }
};

struct TrackResult {
    EffectiveVector logical;   // k * steps qubits
    SyndromeSequence syndrome; // observable part
    EffectiveVector s_full;    // (n-k) * steps qubits, both components (for oracles)
};

struct SisoResult {
    MessageSequence ext_L;
    MessageSequence ext_P;
    MessageSequence post_L;
};

class DecodingFailure : public std::runtime_error {
  public:
    DecodingFailure(const std::string& what, size_t step) : std::runtime_error(what), step(step) {}
    size_t step;
};

/// A seed transform bound to a frame duration, with precomputed trellis tables.
class CodeSpec {
  public:
    CodeSpec(SeedTransform seed, CodeRole role, size_t block_count, bool terminated_tail = false)
        : seed_(std::move(seed)), role_(role), nb_(block_count), terminated_(terminated_tail) {
        if (nb_ == 0) throw std::invalid_argument("CodeSpec: block_count must be positive");
        build_tables();
    }

    const SeedTransform& seed() const { return seed_; }
    CodeRole role() const { return role_; }
    size_t block_count() const { return nb_; }
    bool terminated_tail() const { return terminated_; }
    size_t physical_len() const { return seed_.n() * nb_; }
    size_t logical_len() const { return seed_.k() * nb_; }

    size_t n() const { return seed_.n(); }
    size_t k() const { return seed_.k(); }
    size_t m() const { return seed_.m(); }

    // trellis table access (used by the SISO and the spectrum enumerator)
    size_t n_mem_states() const { return size_t{1} << (2 * m()); }
    size_t n_log_inputs() const { return size_t{1} << (2 * k()); }
    size_t n_free_sigma() const { return size_t{1} << free_pos_.size(); }

    uint32_t io(uint32_t in_bits) const { return io_[in_bits]; }
    uint32_t mem_mask(size_t mu) const { return mem_mask_[mu]; }
    uint32_t log_mask(size_t lam) const { return log_mask_[lam]; }
    uint32_t free_mask(size_t f) const { return free_mask_[f]; }
    uint16_t p_index(uint32_t out_bits) const { return pidx_[out_bits]; }
    uint16_t m_index(uint32_t out_bits) const { return midx_[out_bits]; }
    const std::vector<size_t>& free_positions() const { return free_pos_; }
    uint32_t anc_x_bit(size_t j) const { return anc_x_bit_[j]; }
    uint32_t anc_z_bit(size_t j) const { return anc_z_bit_[j]; }

  private:
    void build_tables() {
        size_t d = seed_.dim();
        if (2 * d > 20)
            throw std::invalid_argument("CodeSpec: seed too large for table-driven trellis");
        size_t n = seed_.n(), k = seed_.k(), m = seed_.m();
        io_.resize(size_t{1} << (2 * d));
        pidx_.resize(io_.size());
        midx_.resize(io_.size());
        for (uint32_t v = 0; v < io_.size(); ++v) {
            io_[v] = static_cast<uint32_t>(seed_.matrix().apply_bits(v));
            uint16_t pi = 0, mi = 0;
            for (size_t i = 0; i < n; ++i) {
                int z = (v >> i) & 1, x = (v >> (d + i)) & 1;
                pi |= static_cast<uint16_t>(symbol_from_zx(z, x)) << (2 * i);
            }
            for (size_t j = 0; j < m; ++j) {
                int z = (v >> (n + j)) & 1, x = (v >> (d + n + j)) & 1;
                mi |= static_cast<uint16_t>(symbol_from_zx(z, x)) << (2 * j);
            }
            pidx_[v] = pi;
            midx_[v] = mi;
        }
        mem_mask_.resize(size_t{1} << (2 * m));
        for (size_t mu = 0; mu < mem_mask_.size(); ++mu) {
            uint32_t v = 0;
            for (size_t j = 0; j < m; ++j) {
                auto s = static_cast<PauliSymbol>((mu >> (2 * j)) & 3);
                v |= uint32_t{kSymbolZ[static_cast<int>(s)]} << j;
                v |= uint32_t{kSymbolX[static_cast<int>(s)]} << (d + j);
            }
            mem_mask_[mu] = v;
        }
        log_mask_.resize(size_t{1} << (2 * k));
        for (size_t lam = 0; lam < log_mask_.size(); ++lam) {
            uint32_t v = 0;
            for (size_t j = 0; j < k; ++j) {
                auto s = static_cast<PauliSymbol>((lam >> (2 * j)) & 3);
                v |= uint32_t{kSymbolZ[static_cast<int>(s)]} << (m + j);
                v |= uint32_t{kSymbolX[static_cast<int>(s)]} << (d + m + j);
            }
            log_mask_[lam] = v;
        }
        anc_z_bit_.resize(n - k);
        anc_x_bit_.resize(n - k);
        for (size_t j = 0; j < n - k; ++j) {
            anc_z_bit_[j] = uint32_t{1} << (m + k + j);
            anc_x_bit_[j] = uint32_t{1} << (d + m + k + j);
        }
        for (size_t j = 0; j < n - k; ++j)
            if (seed_.ancilla_kinds()[j] == AncillaKind::Ancilla) free_pos_.push_back(j);
        free_mask_.resize(size_t{1} << free_pos_.size());
        for (size_t f = 0; f < free_mask_.size(); ++f) {
            uint32_t v = 0;
            for (size_t b = 0; b < free_pos_.size(); ++b)
                if ((f >> b) & 1) v |= anc_z_bit_[free_pos_[b]];
            free_mask_[f] = v;
        }
    }

    SeedTransform seed_;
    CodeRole role_;
    size_t nb_;
    bool terminated_;
    std::vector<uint32_t> io_, mem_mask_, log_mask_, free_mask_, anc_z_bit_, anc_x_bit_;
    std::vector<uint16_t> pidx_, midx_;
    std::vector<size_t> free_pos_;
};

/// One encoder step: (m_prev : l : s) -> (p, m_next) per the seed transform.
inline std::pair<EffectiveVector, EffectiveVector> encode_step(const EffectiveVector& m_prev,
                                                               const EffectiveVector& l,
                                                               const EffectiveVector& s,
                                                               const SeedTransform& seed) {
    if (m_prev.n_qubits() != seed.m() || l.n_qubits() != seed.k() ||
        s.n_qubits() != seed.n() - seed.k())
        throw std::invalid_argument("encode_step: block dimension mismatch");
    size_t d = seed.dim();
    uint64_t in = 0;
    for (size_t j = 0; j < seed.m(); ++j) {
        in |= uint64_t{m_prev.z_bit(j)} << j;
        in |= uint64_t{m_prev.x_bit(j)} << (d + j);
    }
    for (size_t j = 0; j < seed.k(); ++j) {
        in |= uint64_t{l.z_bit(j)} << (seed.m() + j);
        in |= uint64_t{l.x_bit(j)} << (d + seed.m() + j);
    }
    for (size_t j = 0; j < seed.n() - seed.k(); ++j) {
        in |= uint64_t{s.z_bit(j)} << (seed.m() + seed.k() + j);
        in |= uint64_t{s.x_bit(j)} << (d + seed.m() + seed.k() + j);
    }
    uint64_t out = seed.matrix().apply_bits(in);
    EffectiveVector p(seed.n()), mn(seed.m());
    for (size_t i = 0; i < seed.n(); ++i) {
        p.set_z(i, (out >> i) & 1);
        p.set_x(i, (out >> (d + i)) & 1);
    }
    for (size_t j = 0; j < seed.m(); ++j) {
        mn.set_z(j, (out >> (seed.n() + j)) & 1);
        mn.set_x(j, (out >> (d + seed.n() + j)) & 1);
    }
    return {p, mn};
}

/// Literal Eq.-style inverse step: (p : m_next) -> (m_prev, l, s).
inline std::tuple<EffectiveVector, EffectiveVector, EffectiveVector> inverse_encode_step(
    const EffectiveVector& p, const EffectiveVector& m_next, const SeedTransform& seed) {
    if (p.n_qubits() != seed.n() || m_next.n_qubits() != seed.m())
        throw std::invalid_argument("inverse_encode_step: block dimension mismatch");
    size_t d = seed.dim();
    uint64_t out = 0;
    for (size_t i = 0; i < seed.n(); ++i) {
        out |= uint64_t{p.z_bit(i)} << i;
        out |= uint64_t{p.x_bit(i)} << (d + i);
    }
    for (size_t j = 0; j < seed.m(); ++j) {
        out |= uint64_t{m_next.z_bit(j)} << (seed.n() + j);
        out |= uint64_t{m_next.x_bit(j)} << (d + seed.n() + j);
    }
    uint64_t in = invert_symplectic(seed.matrix()).apply_bits(out);
    EffectiveVector mp(seed.m()), l(seed.k()), s(seed.n() - seed.k());
    for (size_t j = 0; j < seed.m(); ++j) {
        mp.set_z(j, (in >> j) & 1);
        mp.set_x(j, (in >> (d + j)) & 1);
    }
    for (size_t j = 0; j < seed.k(); ++j) {
        l.set_z(j, (in >> (seed.m() + j)) & 1);
        l.set_x(j, (in >> (d + seed.m() + j)) & 1);
    }
    for (size_t j = 0; j < seed.n() - seed.k(); ++j) {
        s.set_z(j, (in >> (seed.m() + seed.k() + j)) & 1);
        s.set_x(j, (in >> (d + seed.m() + seed.k() + j)) & 1);
    }
    return {mp, l, s};
}

/// Forward error tracking: memory error starts as identity; at each step the 2n
/// unknown (L_t, S_t) bits are solved from (M_{t-1}, P_t) through the inverted
/// (L,S) block of u_p, then the next memory error follows by encoding.
inline TrackResult track_error(const CodeSpec& spec, const EffectiveVector& phys) {
    const SeedTransform& seed = spec.seed();
    size_t n = seed.n(), k = seed.k(), m = seed.m(), d = seed.dim();
    size_t na = n - k;
    if (phys.n_qubits() != spec.physical_len())
        throw std::invalid_argument("track_error: physical length mismatch");
    TrackResult out;
    out.logical = EffectiveVector(k * spec.block_count());
    out.s_full = EffectiveVector(na * spec.block_count());
    out.syndrome.steps = spec.block_count();
    out.syndrome.n_anc = na;
    out.syndrome.kinds = seed.ancilla_kinds();
    out.syndrome.x.assign(spec.block_count() * na, 0);
    out.syndrome.z.assign(spec.block_count() * na, 0);

    auto up = seed.u_p();
    const auto& ls_inv = seed.ls_block_inverse();
    uint64_t mem = 0;  // raw input-layout bits of the current memory error
    for (size_t t = 0; t < spec.block_count(); ++t) {
        // P_t in its own [z|x] layout
        uint64_t pv = 0;
        for (size_t i = 0; i < n; ++i) {
            pv |= uint64_t{phys.z_bit(t * n + i)} << i;
            pv |= uint64_t{phys.x_bit(t * n + i)} << (n + i);
        }
        // subtract the memory contribution through u_p
        uint64_t contrib = 0;
        {
            uint64_t v = mem;
            while (v) {
                int i = std::countr_zero(v);
                contrib ^= up[i];
                v &= v - 1;
            }
        }
        uint64_t b = pv ^ contrib;
        // solve (L:S) against the tracking block
        uint64_t ls = 0;
        {
            uint64_t v = b;
            while (v) {
                int i = std::countr_zero(v);
                ls ^= ls_inv[i];
                v &= v - 1;
            }
        }
        // ls layout: [L_z(k) S_z(na) | L_x(k) S_x(na)]
        uint64_t in = mem;
        for (size_t j = 0; j < k; ++j) {
            int z = (ls >> j) & 1, x = (ls >> (n + j)) & 1;
            out.logical.set_z(t * k + j, z);
            out.logical.set_x(t * k + j, x);
            in |= uint64_t{static_cast<uint64_t>(z)} << (m + j);
            in |= uint64_t{static_cast<uint64_t>(x)} << (d + m + j);
        }
        for (size_t j = 0; j < na; ++j) {
            int z = (ls >> (k + j)) & 1, x = (ls >> (n + k + j)) & 1;
            out.s_full.set_z(t * na + j, z);
            out.s_full.set_x(t * na + j, x);
            out.syndrome.x[t * na + j] = static_cast<uint8_t>(x);
            if (seed.ancilla_kinds()[j] == AncillaKind::Ebit)
                out.syndrome.z[t * na + j] = static_cast<uint8_t>(z);
            in |= uint64_t{static_cast<uint64_t>(z)} << (m + k + j);
            in |= uint64_t{static_cast<uint64_t>(x)} << (d + m + k + j);
        }
        uint64_t outv = seed.matrix().apply_bits(in);
        mem = 0;
        for (size_t j = 0; j < m; ++j) {
            mem |= ((outv >> (n + j)) & 1) << j;
            mem |= ((outv >> (d + n + j)) & 1) << (d + j);
        }
    }
    return out;
}

namespace detail {

struct SisoScratch {
    std::vector<double> alpha, beta, chtab, latab, g, h;
};

}  // namespace detail

/// Degenerate symbol-MAP SISO decoder (forward-backward over the memory error).
///
/// The syndrome pins the x component of every ancilla input and, at ebit
/// positions, the z component as well; remaining z components are marginalized.
/// Extrinsic outputs exclude the target qubit's own prior by construction, which
/// stays exact when priors contain zeros (delta a-priori at I_A = 1).
inline SisoResult siso_decode(const CodeSpec& spec, const MessageSequence& priors_P,
                              const MessageSequence& priors_L, const SyndromeSequence& syn) {
    const size_t n = spec.n(), k = spec.k(), m = spec.m();
    const size_t nb = spec.block_count(), na = n - k;
    if (priors_P.size() != n * nb || priors_L.size() != k * nb)
        throw std::invalid_argument("siso_decode: message length mismatch");
    if (syn.steps != nb || syn.n_anc != na)
        throw std::invalid_argument("siso_decode: syndrome shape mismatch");
    priors_P.check_normalized();
    priors_L.check_normalized();

    const size_t NM = spec.n_mem_states();
    const size_t NL = spec.n_log_inputs();
    const size_t NF = spec.n_free_sigma();
    const size_t NP = size_t{1} << (2 * n);

    std::vector<uint32_t> pinned(nb, 0);
    for (size_t t = 0; t < nb; ++t) {
        uint32_t v = 0;
        for (size_t j = 0; j < na; ++j) {
            if (syn.x_at(t, j)) v |= spec.anc_x_bit(j);
            if (spec.seed().ancilla_kinds()[j] == AncillaKind::Ebit && syn.z_at(t, j))
                v |= spec.anc_z_bit(j);
        }
        pinned[t] = v;
    }

    std::vector<double> alpha((nb + 1) * NM, 0.0), beta((nb + 1) * NM, 0.0);
    std::vector<double> chtab(nb * NP), latab(nb * NL);
    for (size_t t = 0; t < nb; ++t) {
        double* ch = &chtab[t * NP];
        for (size_t idx = 0; idx < NP; ++idx) {
            double w = 1.0;
            for (size_t i = 0; i < n; ++i) w *= priors_P[t * n + i][(idx >> (2 * i)) & 3];
            ch[idx] = w;
        }
        double* la = &latab[t * NL];
        for (size_t idx = 0; idx < NL; ++idx) {
            double w = 1.0;
            for (size_t j = 0; j < k; ++j) w *= priors_L[t * k + j][(idx >> (2 * j)) & 3];
            la[idx] = w;
        }
    }

    alpha[0] = 1.0;  // memory error before step 1 is identity
    for (size_t t = 0; t < nb; ++t) {
        const double* a = &alpha[t * NM];
        double* an = &alpha[(t + 1) * NM];
        const double* ch = &chtab[t * NP];
        const double* la = &latab[t * NL];
        for (size_t mu = 0; mu < NM; ++mu) {
            double amu = a[mu];
            if (amu == 0.0) continue;
            uint32_t base_mu = spec.mem_mask(mu) | pinned[t];
            for (size_t lam = 0; lam < NL; ++lam) {
                double w0 = amu * la[lam];
                if (w0 == 0.0) continue;
                uint32_t base = base_mu | spec.log_mask(lam);
                for (size_t f = 0; f < NF; ++f) {
                    uint32_t o = spec.io(base | spec.free_mask(f));
                    an[spec.m_index(o)] += w0 * ch[spec.p_index(o)];
                }
            }
        }
        double s = 0.0;
        for (size_t i = 0; i < NM; ++i) s += an[i];
        if (s <= 0.0) throw DecodingFailure("siso_decode: forward recursion died", t);
        double inv = 1.0 / s;
        for (size_t i = 0; i < NM; ++i) an[i] *= inv;
    }

    {
        double* bN = &beta[nb * NM];
        if (spec.terminated_tail())
            bN[0] = 1.0;
        else
            for (size_t i = 0; i < NM; ++i) bN[i] = 1.0 / static_cast<double>(NM);
    }
    for (size_t t = nb; t-- > 0;) {
        const double* bn = &beta[(t + 1) * NM];
        double* b = &beta[t * NM];
        const double* ch = &chtab[t * NP];
        const double* la = &latab[t * NL];
        double s = 0.0;
        for (size_t mu = 0; mu < NM; ++mu) {
            double acc = 0.0;
            uint32_t base_mu = spec.mem_mask(mu) | pinned[t];
            for (size_t lam = 0; lam < NL; ++lam) {
                double wl = la[lam];
                if (wl == 0.0) continue;
                uint32_t base = base_mu | spec.log_mask(lam);
                for (size_t f = 0; f < NF; ++f) {
                    uint32_t o = spec.io(base | spec.free_mask(f));
                    acc += wl * ch[spec.p_index(o)] * bn[spec.m_index(o)];
                }
            }
            b[mu] = acc;
            s += acc;
        }
        if (s <= 0.0) throw DecodingFailure("siso_decode: backward recursion died", t);
        double inv = 1.0 / s;
        for (size_t i = 0; i < NM; ++i) b[i] *= inv;
    }

    SisoResult res;
    res.ext_L = MessageSequence::uniform(k * nb, MessageRole::Extrinsic, MessageSubject::L);
    res.post_L = MessageSequence::uniform(k * nb, MessageRole::APosteriori, MessageSubject::L);
    res.ext_P = MessageSequence::uniform(n * nb, MessageRole::Extrinsic, MessageSubject::P);

    std::vector<double> g(NL), h(NP);
    for (size_t t = 0; t < nb; ++t) {
        const double* a = &alpha[t * NM];
        const double* bn = &beta[(t + 1) * NM];
        const double* ch = &chtab[t * NP];
        const double* la = &latab[t * NL];
        std::fill(g.begin(), g.end(), 0.0);
        std::fill(h.begin(), h.end(), 0.0);
        for (size_t mu = 0; mu < NM; ++mu) {
            double amu = a[mu];
            if (amu == 0.0) continue;
            uint32_t base_mu = spec.mem_mask(mu) | pinned[t];
            for (size_t lam = 0; lam < NL; ++lam) {
                uint32_t base = base_mu | spec.log_mask(lam);
                for (size_t f = 0; f < NF; ++f) {
                    uint32_t o = spec.io(base | spec.free_mask(f));
                    double w = amu * bn[spec.m_index(o)];
                    uint16_t pi = spec.p_index(o);
                    g[lam] += w * ch[pi];
                    h[pi] += w * la[lam];
                }
            }
        }
        // logical-qubit marginals; extrinsic keeps the priors of the other
        // logical qubits in the same block but never the target's own
        for (size_t j = 0; j < k; ++j) {
            SymbolDistribution e{}, po{};
            e.p = {0, 0, 0, 0};
            po.p = {0, 0, 0, 0};
            for (size_t lam = 0; lam < NL; ++lam) {
                double others = 1.0;
                for (size_t j2 = 0; j2 < k; ++j2)
                    if (j2 != j) others *= priors_L[t * k + j2][(lam >> (2 * j2)) & 3];
                size_t sym = (lam >> (2 * j)) & 3;
                double base = g[lam] * others;
                e.p[sym] += base;
                po.p[sym] += base * priors_L[t * k + j][sym];
            }
            if (e.sum() <= 0.0) throw DecodingFailure("siso_decode: extrinsic L died", t);
            e.normalize();
            po.normalize();
            res.ext_L[t * k + j] = e;
            res.post_L[t * k + j] = po;
        }
        for (size_t i = 0; i < n; ++i) {
            SymbolDistribution e{};
            e.p = {0, 0, 0, 0};
            for (size_t idx = 0; idx < NP; ++idx) {
                if (h[idx] == 0.0) continue;
                double others = 1.0;
                for (size_t i2 = 0; i2 < n; ++i2)
                    if (i2 != i) others *= priors_P[t * n + i2][(idx >> (2 * i2)) & 3];
                e.p[(idx >> (2 * i)) & 3] += h[idx] * others;
            }
            if (e.sum() <= 0.0) throw DecodingFailure("siso_decode: extrinsic P died", t);
            e.normalize();
            res.ext_P[t * n + i] = e;
        }
    }
    return res;
}

struct DistanceSpectrum {
    std::map<size_t, uint64_t> counts;  // physical Pauli weight -> event count
    bool truncated = false;             // paths still alive at the step cap
};

/// Truncated weight spectrum of simple error events: start from zero memory with a
/// non-identity logical block, sigma_x = 0 throughout, sigma_z free at non-ebit
/// positions, memory strictly nonzero until the final return to zero. Counts
/// distinct input sequences by the Pauli weight of the generated physical error.
inline DistanceSpectrum distance_spectrum(const CodeSpec& spec, size_t max_weight,
                                          size_t max_steps) {
    const size_t NM = spec.n_mem_states();
    const size_t NL = spec.n_log_inputs();
    const size_t NF = spec.n_free_sigma();
    const size_t n = spec.n();
    DistanceSpectrum out;

    // transition list: (mu, lam, f) -> (next mem, added weight)
    auto trans = [&](size_t mu, size_t lam, size_t f) {
        uint32_t o = spec.io(spec.mem_mask(mu) | spec.log_mask(lam) | spec.free_mask(f));
        uint16_t pi = spec.p_index(o);
        size_t w = 0;
        for (size_t i = 0; i < n; ++i)
            if ((pi >> (2 * i)) & 3) ++w;
        return std::pair<size_t, size_t>(spec.m_index(o), w);
    };

    // frontier[mem][weight] = count of live prefixes
    std::vector<std::map<size_t, uint64_t>> frontier(NM);
    for (size_t lam = 1; lam < NL; ++lam) {
        for (size_t f = 0; f < NF; ++f) {
            auto [m2, w] = trans(0, lam, f);
            if (w > max_weight) continue;
            if (m2 == 0)
                out.counts[w] += 1;
            else
                frontier[m2][w] += 1;
        }
    }
    for (size_t step = 2; step <= max_steps; ++step) {
        bool alive = false;
        for (const auto& mmap : frontier)
            if (!mmap.empty()) {
                alive = true;
                break;
            }
        if (!alive) break;
        std::vector<std::map<size_t, uint64_t>> next(NM);
        for (size_t mu = 1; mu < NM; ++mu) {
            for (auto [w0, c] : frontier[mu]) {
                for (size_t lam = 0; lam < NL; ++lam) {
                    for (size_t f = 0; f < NF; ++f) {
                        auto [m2, dw] = trans(mu, lam, f);
                        size_t w = w0 + dw;
                        if (w > max_weight) continue;
                        if (m2 == 0)
                            out.counts[w] += c;
                        else
                            next[m2][w] += c;
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    // counts are incomplete only if a live prefix could still return to the zero
    // state within the weight budget; compute the cheapest exit per state
    constexpr size_t kInf = ~size_t{0};
    std::vector<size_t> exit_cost(NM, kInf);
    exit_cost[0] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t mu = 1; mu < NM; ++mu) {
            for (size_t lam = 0; lam < NL; ++lam) {
                for (size_t f = 0; f < NF; ++f) {
                    auto [m2, dw] = trans(mu, lam, f);
                    if (exit_cost[m2] == kInf) continue;
                    size_t cand = exit_cost[m2] + dw;
                    if (cand < exit_cost[mu]) {
                        exit_cost[mu] = cand;
                        changed = true;
                    }
                }
            }
        }
    }
    for (size_t mu = 1; mu < NM; ++mu)
        for (auto [w0, c] : frontier[mu])
            if (exit_cost[mu] != kInf && w0 + exit_cost[mu] <= max_weight) out.truncated = true;
    return out;
}

}  // namespace qtc
