#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qtc/channel.hpp"
#include "qtc/parallel.hpp"
#include "qtc/turbo.hpp"

namespace qtc {

inline constexpr double kSigmaACap = 40.0;

/// Mutual information of a binary variable under the consistent-Gaussian model:
/// evidence A ~ N(sigma^2/2 * (1-2b), sigma^2). Simpson integration.
inline double j_function(double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("j_function: sigma must be >= 0");
    if (sigma == 0.0) return 0.0;
    const double mu = sigma * sigma / 2.0;
    const double lo = mu - 12.0 * sigma, hi = mu + 12.0 * sigma;
    const size_t steps = 4000;  // even
    const double h = (hi - lo) / steps;
    auto f = [&](double a) {
        double t = (a - mu) / sigma;
        double dens = std::exp(-0.5 * t * t);
        // log2(1 + e^-a), stable for both signs
        double val = a > 0 ? std::log1p(std::exp(-a)) : (-a + std::log1p(std::exp(a)));
        return dens * val / std::log(2.0);
    };
    double acc = f(lo) + f(hi);
    for (size_t i = 1; i < steps; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    double integral = acc * h / 3.0 / (sigma * std::sqrt(2.0 * M_PI));
    double v = 1.0 - integral;
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

/// Inverse of j_function by bisection, capped at sigma = 40.
inline double j_inverse(double mi) {
    if (!(mi >= 0.0 && mi < 1.0)) throw std::invalid_argument("j_inverse: mi must be in [0,1)");
    if (mi == 0.0) return 0.0;
    double lo = 0.0, hi = kSigmaACap;
    if (j_function(hi) < mi) return hi;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        if (j_function(mid) < mi)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct AprioriChannel {
    double sigma_a = 0.0;
};

/// Consistent-Gaussian a-priori channel: independent evidence per classical bit,
/// mean (sigma^2/2)(1-2b) and standard deviation sigma; the 4-ary table is the
/// product of the two bit tables. target_ia = 1 yields exact deltas.
inline MessageSequence generate_apriori(const EffectiveVector& true_errors, double target_ia,
                                        Rng& rng) {
    if (!(target_ia >= 0.0 && target_ia <= 1.0))
        throw std::invalid_argument("generate_apriori: target I_A outside [0,1]");
    size_t n = true_errors.n_qubits();
    MessageSequence out = MessageSequence::uniform(n, MessageRole::APriori, MessageSubject::L);
    if (target_ia == 0.0) return out;
    if (target_ia == 1.0) {
        for (size_t q = 0; q < n; ++q)
            out.symbols[q] = SymbolDistribution::delta(true_errors.symbol(q));
        return out;
    }
    AprioriChannel ch{j_inverse(target_ia)};
    double sigma = ch.sigma_a;
    double mu = sigma * sigma / 2.0;
    for (size_t q = 0; q < n; ++q) {
        double az = mu * (true_errors.z_bit(q) ? -1.0 : 1.0) + sigma * rng.normal();
        double ax = mu * (true_errors.x_bit(q) ? -1.0 : 1.0) + sigma * rng.normal();
        double qz0 = 1.0 / (1.0 + std::exp(-az));
        double qx0 = 1.0 / (1.0 + std::exp(-ax));
        SymbolDistribution d;
        for (int s = 0; s < 4; ++s) {
            double pz = kSymbolZ[s] ? 1.0 - qz0 : qz0;
            double px = kSymbolX[s] ? 1.0 - qx0 : qx0;
            d.p[s] = pz * px;
        }
        out.symbols[q] = d;
    }
    return out;
}

/// Truth-referenced estimate of the normalized 4-ary mutual information carried
/// by a message stream: (1/2)(2 + mean log2 q(true symbol)), clamped to [0,1].
inline double measure_mi(const EffectiveVector& true_errors, const MessageSequence& msgs) {
    if (true_errors.n_qubits() != msgs.size())
        throw std::invalid_argument("measure_mi: length mismatch");
    msgs.check_normalized(1e-6);
    double acc = 0.0;
    for (size_t q = 0; q < msgs.size(); ++q) {
        double v = msgs[q][true_errors.symbol(q)];
        acc += std::log2(std::max(v, 1e-12));
    }
    double mi = 0.5 * (2.0 + acc / static_cast<double>(msgs.size()));
    return mi < 0.0 ? 0.0 : (mi > 1.0 ? 1.0 : mi);
}

struct ExitPointStats {
    double i_e = 0.0;
    size_t failures = 0;  // SISO failures excluded from the average
};

/// One inner transfer-function sample: channel error -> tracked L and syndrome ->
/// Gaussian a-priori on L at I_A -> SISO -> extrinsic MI against the true L.
inline ExitPointStats inner_exit_point(const CodeSpec& spec, double p, double target_ia,
                                       size_t frames, uint64_t seed) {
    if (spec.role() != CodeRole::Inner)
        throw std::invalid_argument("inner_exit_point: spec role must be inner");
    DepolarizingChannel ch(p);
    SymbolDistribution chd = symbol_priors(ch);
    ExitPointStats st;
    double acc = 0.0;
    size_t ok = 0;
    for (size_t f = 0; f < frames; ++f) {
        Rng rng = Rng::derive(seed, f);
        EffectiveVector perr = sample_error(ch, spec.physical_len(), rng);
        TrackResult tr = track_error(spec, perr);
        MessageSequence priors_p =
            MessageSequence::uniform(spec.physical_len(), MessageRole::APriori, MessageSubject::P);
        for (auto& d : priors_p.symbols) d = chd;
        MessageSequence priors_l = generate_apriori(tr.logical, target_ia, rng);
        priors_l.subject = MessageSubject::L;
        try {
            SisoResult r = siso_decode(spec, priors_p, priors_l, tr.syndrome);
            acc += measure_mi(tr.logical, r.ext_L);
            ++ok;
        } catch (const DecodingFailure&) {
            ++st.failures;
        }
    }
    if (ok == 0) throw std::runtime_error("inner_exit_point: every frame failed");
    st.i_e = acc / static_cast<double>(ok);
    return st;
}

/// One outer transfer-function sample; the channel never enters. The true
/// physical error is drawn uniformly over the 4 symbols per qubit.
inline ExitPointStats outer_exit_point(const CodeSpec& spec, double target_ia, size_t frames,
                                       uint64_t seed) {
    if (spec.role() != CodeRole::Outer)
        throw std::invalid_argument("outer_exit_point: spec role must be outer");
    ExitPointStats st;
    double acc = 0.0;
    size_t ok = 0;
    for (size_t f = 0; f < frames; ++f) {
        Rng rng = Rng::derive(seed, f);
        EffectiveVector perr(spec.physical_len());
        for (size_t q = 0; q < perr.n_qubits(); ++q)
            perr.set_symbol(q, static_cast<PauliSymbol>(rng.below(4)));
        TrackResult tr = track_error(spec, perr);
        MessageSequence priors_p = generate_apriori(perr, target_ia, rng);
        priors_p.subject = MessageSubject::P;
        MessageSequence priors_l =
            MessageSequence::uniform(spec.logical_len(), MessageRole::APriori, MessageSubject::L);
        try {
            SisoResult r = siso_decode(spec, priors_p, priors_l, tr.syndrome);
            acc += measure_mi(perr, r.ext_P);
            ++ok;
        } catch (const DecodingFailure&) {
            ++st.failures;
        }
    }
    if (ok == 0) throw std::runtime_error("outer_exit_point: every frame failed");
    st.i_e = acc / static_cast<double>(ok);
    return st;
}

struct ExitCurve {
    CodeRole role = CodeRole::Inner;
    std::optional<double> p;  // inner curves only
    std::vector<std::pair<double, double>> points;  // (I_A, I_E), I_A strictly increasing
};

struct ExitSettings {
    size_t grid = 21;
    size_t frames = 10;
    size_t frame_len = 3000;  // subject qubits per frame
    uint64_t seed = 1;
    size_t workers = default_worker_count();
};

inline ExitCurve inner_exit_curve(const SeedTransform& seed, double p, const ExitSettings& s) {
    if (s.grid < 2) throw std::invalid_argument("exit_curve: grid must be >= 2");
    size_t nb = std::max<size_t>(1, s.frame_len / seed.k());
    CodeSpec spec(seed, CodeRole::Inner, nb);
    ExitCurve c;
    c.role = CodeRole::Inner;
    c.p = p;
    auto vals = parallel_map<double>(s.grid, s.workers, [&](size_t i) {
        double ia = static_cast<double>(i) / static_cast<double>(s.grid - 1);
        return inner_exit_point(spec, p, ia, s.frames, splitmix64(s.seed) ^ (i * 0x9e37ull)).i_e;
    });
    for (size_t i = 0; i < s.grid; ++i)
        c.points.emplace_back(static_cast<double>(i) / static_cast<double>(s.grid - 1), vals[i]);
    return c;
}

inline ExitCurve outer_exit_curve(const SeedTransform& seed, const ExitSettings& s) {
    if (s.grid < 2) throw std::invalid_argument("exit_curve: grid must be >= 2");
    size_t nb = std::max<size_t>(1, s.frame_len / seed.n());
    CodeSpec spec(seed, CodeRole::Outer, nb);
    ExitCurve c;
    c.role = CodeRole::Outer;
    auto vals = parallel_map<double>(s.grid, s.workers, [&](size_t i) {
        double ia = static_cast<double>(i) / static_cast<double>(s.grid - 1);
        return outer_exit_point(spec, ia, s.frames, splitmix64(s.seed ^ 0xabcdull) ^ (i * 0x9e37ull))
            .i_e;
    });
    for (size_t i = 0; i < s.grid; ++i)
        c.points.emplace_back(static_cast<double>(i) / static_cast<double>(s.grid - 1), vals[i]);
    return c;
}

struct TunnelAnalysis {
    bool open = false;
    double area = 0.0;                  // trapezoidal integral of the positive gap
    std::optional<double> crossover_ia; // first interior grid point with no gap
};

/// Compares the inner curve against the axis-swapped outer curve on the shared
/// grid. The outer curve is made monotone by a running maximum, then inverted by
/// linear interpolation. Open means a strictly positive gap at every interior
/// grid point.
inline TunnelAnalysis tunnel_analysis(const ExitCurve& inner, const ExitCurve& outer) {
    if (inner.points.size() != outer.points.size() || inner.points.size() < 2)
        throw std::invalid_argument("tunnel_analysis: curves must share a grid");
    size_t g = inner.points.size();
    for (size_t i = 0; i < g; ++i)
        if (std::abs(inner.points[i].first - outer.points[i].first) > 1e-12)
            throw std::invalid_argument("tunnel_analysis: grids differ");
    std::vector<double> oe(g);
    double run = 0.0;
    for (size_t i = 0; i < g; ++i) {
        run = std::max(run, outer.points[i].second);
        oe[i] = run;
    }
    auto outer_inv = [&](double x) {
        if (x <= oe[0]) {
            double y0 = outer.points[0].first;
            return oe[0] > 0.0 ? y0 * (x / oe[0]) : y0;
        }
        for (size_t j = 1; j < g; ++j) {
            if (x <= oe[j]) {
                double x0 = oe[j - 1], x1 = oe[j];
                double y0 = outer.points[j - 1].first, y1 = outer.points[j].first;
                if (x1 == x0) return y1;
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        return 1.0;
    };
    TunnelAnalysis ta;
    ta.open = true;
    std::vector<double> gap(g);
    for (size_t i = 0; i < g; ++i) {
        double x = inner.points[i].first;
        gap[i] = inner.points[i].second - outer_inv(x);
        if (i > 0 && i + 1 < g && gap[i] <= 0.0 && ta.open) {
            ta.open = false;
            ta.crossover_ia = x;
        }
    }
    for (size_t i = 0; i + 1 < g; ++i) {
        double a = std::max(gap[i], 0.0), b = std::max(gap[i + 1], 0.0);
        ta.area += 0.5 * (a + b) * (inner.points[i + 1].first - inner.points[i].first);
    }
    return ta;
}

struct ThresholdResult {
    double p_star = 0.0;
    ExitCurve outer_curve;
    std::vector<std::pair<double, bool>> evaluations;  // (p, open)
};

/// Bisection on the tunnel-open predicate. The outer curve never depends on p and
/// is computed once.
inline ThresholdResult threshold_search(const SeedTransform& inner_seed,
                                        const SeedTransform& outer_seed, double p_lo, double p_hi,
                                        double tol, const ExitSettings& s) {
    ThresholdResult res;
    res.outer_curve = outer_exit_curve(outer_seed, s);
    auto open_at = [&](double p) {
        ExitCurve ic = inner_exit_curve(inner_seed, p, s);
        bool open = tunnel_analysis(ic, res.outer_curve).open;
        res.evaluations.emplace_back(p, open);
        return open;
    };
    bool lo_open = open_at(p_lo);
    bool hi_open = open_at(p_hi);
    if (!lo_open || hi_open) {
        std::string msg = "threshold_search: precondition violated (tunnel must be open at p_lo "
                          "and closed at p_hi); p_lo=" +
                          std::to_string(p_lo) + (lo_open ? " open" : " CLOSED") +
                          ", p_hi=" + std::to_string(p_hi) + (hi_open ? " OPEN" : " closed");
        throw std::runtime_error(msg);
    }
    double lo = p_lo, hi = p_hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (open_at(mid))
            lo = mid;
        else
            hi = mid;
    }
    res.p_star = 0.5 * (lo + hi);
    return res;
}

struct Trajectory {
    double p = 0.0;
    size_t interleaver_len = 0;
    // staircase points: (I_A, I_E) of the inner stage then the outer stage, per iteration
    std::vector<std::pair<double, double>> points;
    double final_ia_l1 = 0.0;
};

/// Runs one simulated frame through the iterative decoder, measuring the actual
/// exchanged messages against the true errors at each half-iteration.
inline Trajectory trajectory(const TurboSystem& sys, const DepolarizingChannel& ch, Rng& rng) {
    Trajectory tr;
    tr.p = ch.p;
    tr.interleaver_len = sys.interleaver.size();
    FrameSample fs = simulate_frame(sys, ch, rng);
    double final_ext_p2_mi = 0.0;
    TurboObserver obs = [&](size_t, const MessageSequence& priors_l1,
                            const MessageSequence& ext_l1, const MessageSequence&,
                            const MessageSequence& ext_p2) {
        double ia1 = measure_mi(fs.true_l1, priors_l1);
        double ie1 = measure_mi(fs.true_l1, ext_l1);
        tr.points.emplace_back(ia1, ie1);
        double ia2 = ie1;  // transport through the interleaver preserves the estimator
        double ie2 = measure_mi(fs.true_p2, ext_p2);
        tr.points.emplace_back(ia2, ie2);
        final_ext_p2_mi = ie2;
    };
    turbo_decode(sys, fs.syn1, fs.syn2, ch, obs);
    tr.final_ia_l1 = final_ext_p2_mi;  // next inner a-priori = transported outer extrinsic
    return tr;
}

struct CodeCandidate {
    std::vector<uint64_t> inner_decimals;
    std::vector<uint64_t> outer_decimals;
    bool open = false;
    double area = 0.0;
};

/// Random code search: draw symplectic seed pairs (inner all-ebit, outer
/// unassisted), evaluate the tunnel at target_p, rank by (open, ascending area).
inline std::vector<CodeCandidate> optimize_search(size_t n, size_t k, size_t m, double target_p,
                                                  size_t trials, const ExitSettings& s,
                                                  uint64_t seed) {
    std::vector<CodeCandidate> out;
    std::vector<AncillaKind> ebits(n - k, AncillaKind::Ebit);
    std::vector<AncillaKind> plain(n - k, AncillaKind::Ancilla);
    for (size_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::derive(seed, trial, 0xc0de);
        // emit [3,1,3] candidates in the same decimal convention as the built-ins
        SeedConvention conv = (n == 3 && k == 1 && m == 3) ? SeedConvention::PublishedPair
                                                           : SeedConvention::MsbFirst;
        auto draw = [&](const std::vector<AncillaKind>& kinds) -> std::optional<SeedTransform> {
            for (int attempt = 0; attempt < 64; ++attempt) {
                BinarySymplecticMatrix msp = random_symplectic(n + m, rng);
                try {
                    return SeedTransform(n, k, m, msp, kinds, conv);
                } catch (const std::invalid_argument&) {
                    // singular tracking block; redraw
                }
            }
            return std::nullopt;
        };
        auto inner = draw(ebits);
        auto outer = draw(plain);
        if (!inner || !outer) continue;
        ExitSettings st = s;
        st.seed = splitmix64(seed ^ (trial + 1));
        ExitCurve oc = outer_exit_curve(*outer, st);
        ExitCurve ic = inner_exit_curve(*inner, target_p, st);
        TunnelAnalysis ta = tunnel_analysis(ic, oc);
        CodeCandidate c;
        c.inner_decimals = encode_seed_decimals(*inner);
        c.outer_decimals = encode_seed_decimals(*outer);
        c.open = ta.open;
        c.area = ta.area;
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const CodeCandidate& a, const CodeCandidate& b) {
        if (a.open != b.open) return a.open;
        return a.area < b.area;
    });
    return out;
}

}  // namespace qtc
