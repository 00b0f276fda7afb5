#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "qtc/channel.hpp"
#include "qtc/interleaver.hpp"
#include "qtc/parallel.hpp"
#include "qtc/qcc.hpp"

namespace qtc {

/// Serial concatenation: outer physical stream passes through the interleaver to
/// become the inner logical stream.
struct TurboSystem {
    CodeSpec inner;
    CodeSpec outer;
    QuantumInterleaver interleaver;
    size_t max_iterations = 15;
    double early_exit_delta = 1e-4;

    TurboSystem(CodeSpec in, CodeSpec out, QuantumInterleaver il, size_t iters = 15)
        : inner(std::move(in)), outer(std::move(out)), interleaver(std::move(il)),
          max_iterations(iters) {
        if (interleaver.size() != inner.logical_len() ||
            interleaver.size() != outer.physical_len())
            throw std::invalid_argument(
                "TurboSystem: interleaver size must equal inner logical length and outer "
                "physical length");
    }
};

struct FrameSample {
    EffectiveVector p1;       // channel error on the inner physical qubits
    EffectiveVector true_l1;  // inner logical error (= interleaved outer physical error)
    EffectiveVector true_p2;  // outer physical error
    EffectiveVector true_l2;  // outer logical error
    SyndromeSequence syn1, syn2;
};

inline FrameSample simulate_frame(const TurboSystem& sys, const DepolarizingChannel& ch,
                                  Rng& rng) {
    FrameSample fs;
    fs.p1 = sample_error(ch, sys.inner.physical_len(), rng);
    auto t1 = track_error(sys.inner, fs.p1);
    fs.true_l1 = t1.logical;
    fs.syn1 = std::move(t1.syndrome);
    fs.true_p2 = sys.interleaver.inverse_apply(fs.true_l1);
    auto t2 = track_error(sys.outer, fs.true_p2);
    fs.true_l2 = t2.logical;
    fs.syn2 = std::move(t2.syndrome);
    return fs;
}

/// Self-referential extrinsic information content of a message stream
/// (normalized 4-ary average, no truth labels); drives the early-exit rule.
inline double message_self_mi(const MessageSequence& msgs) {
    double acc = 0.0;
    for (const auto& d : msgs.symbols) {
        double h = 0.0;
        for (double q : d.p)
            if (q > 0.0) h += q * std::log2(q);
        acc += h;
    }
    double v = 0.5 * (2.0 + acc / static_cast<double>(msgs.size()));
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

struct IterationLogEntry {
    size_t iteration;     // 1-based
    double ext_p2_mi;     // self-referential MI of the outer extrinsic
};

struct TurboDecodeResult {
    EffectiveVector estimated_l2;
    size_t iterations_used = 0;
    bool failed = false;  // a SISO pass died; estimate falls back to identity
    std::vector<IterationLogEntry> mi_log;
    std::vector<EffectiveVector> per_iteration_estimates;
};

/// Observer invoked once per iteration with the exchanged message streams.
using TurboObserver = std::function<void(size_t iteration, const MessageSequence& priors_l1,
                                         const MessageSequence& ext_l1,
                                         const MessageSequence& priors_p2,
                                         const MessageSequence& ext_p2)>;

inline TurboDecodeResult turbo_decode(const TurboSystem& sys, const SyndromeSequence& syn1,
                                      const SyndromeSequence& syn2, const DepolarizingChannel& ch,
                                      const TurboObserver& observer = nullptr) {
    const size_t n1 = sys.inner.physical_len();
    MessageSequence priors_p1 = MessageSequence::uniform(n1, MessageRole::APriori,
                                                         MessageSubject::P);
    SymbolDistribution chd = symbol_priors(ch);
    for (auto& d : priors_p1.symbols) d = chd;
    MessageSequence priors_l1 = MessageSequence::uniform(sys.inner.logical_len(),
                                                         MessageRole::APriori, MessageSubject::L);
    TurboDecodeResult res;
    res.estimated_l2 = EffectiveVector(sys.outer.logical_len());
    double last_mi = -1.0;
    for (size_t it = 1; it <= sys.max_iterations; ++it) {
        SisoResult inner_out;
        SisoResult outer_out;
        try {
            inner_out = siso_decode(sys.inner, priors_p1, priors_l1, syn1);
            MessageSequence priors_p2 = sys.interleaver.inverse_apply_messages(inner_out.ext_L);
            priors_p2.subject = MessageSubject::P;
            MessageSequence uni_l2 = MessageSequence::uniform(
                sys.outer.logical_len(), MessageRole::APriori, MessageSubject::L);
            outer_out = siso_decode(sys.outer, priors_p2, uni_l2, syn2);
            if (observer) observer(it, priors_l1, inner_out.ext_L, priors_p2, outer_out.ext_P);
        } catch (const DecodingFailure&) {
            res.failed = true;
            res.iterations_used = it;
            break;
        }
        for (size_t q = 0; q < sys.outer.logical_len(); ++q)
            res.estimated_l2.set_symbol(q, outer_out.post_L[q].argmax());
        res.per_iteration_estimates.push_back(res.estimated_l2);
        double mi = message_self_mi(outer_out.ext_P);
        res.mi_log.push_back({it, mi});
        res.iterations_used = it;
        priors_l1 = sys.interleaver.apply_messages(outer_out.ext_P);
        priors_l1.subject = MessageSubject::L;
        priors_l1.role = MessageRole::APriori;
        if (last_mi >= 0.0 && std::abs(mi - last_mi) < sys.early_exit_delta) break;
        last_mi = mi;
    }
    return res;
}

struct FrameResult {
    EffectiveVector true_l2, estimated_l2;
    size_t qubit_errors = 0;
    bool word_error = false;
    size_t iterations_used = 0;
    bool failed = false;
    std::vector<size_t> qubit_errors_by_iteration;
};

inline FrameResult run_frame(const TurboSystem& sys, const DepolarizingChannel& ch, Rng& rng) {
    FrameSample fs = simulate_frame(sys, ch, rng);
    TurboDecodeResult dec = turbo_decode(sys, fs.syn1, fs.syn2, ch);
    FrameResult fr;
    fr.true_l2 = fs.true_l2;
    fr.estimated_l2 = dec.estimated_l2;
    fr.iterations_used = dec.iterations_used;
    fr.failed = dec.failed;
    for (size_t q = 0; q < fr.true_l2.n_qubits(); ++q)
        if (fr.true_l2.symbol(q) != fr.estimated_l2.symbol(q)) ++fr.qubit_errors;
    fr.word_error = fr.qubit_errors > 0;
    for (size_t it = 0; it < sys.max_iterations; ++it) {
        const EffectiveVector& est =
            dec.per_iteration_estimates.empty()
                ? fr.estimated_l2
                : dec.per_iteration_estimates[std::min(it, dec.per_iteration_estimates.size() - 1)];
        size_t qe = 0;
        for (size_t q = 0; q < fr.true_l2.n_qubits(); ++q)
            if (fr.true_l2.symbol(q) != est.symbol(q)) ++qe;
        fr.qubit_errors_by_iteration.push_back(qe);
    }
    return fr;
}

struct QberRecord {
    double p = 0.0;
    size_t frames = 0;
    size_t qubit_errors = 0;
    size_t word_errors = 0;
    size_t decode_failures = 0;
    double qber = 0.0;
    double wer = 0.0;
    double mean_iterations = 0.0;
    // per iteration index: cumulative tallies across decoded frames
    std::vector<size_t> qubit_errors_by_iteration;
    std::vector<size_t> word_errors_by_iteration;
};

/// Monte-Carlo QBER: frames are independent work units with RNG streams derived
/// from (seed, frame index); the early-stop rule is evaluated on fixed blocks in
/// frame order, so tallies are identical for every worker count.
inline QberRecord run_qber(const TurboSystem& sys, const DepolarizingChannel& ch, size_t frames,
                           size_t stop_at_errors, uint64_t seed,
                           size_t workers = default_worker_count()) {
    if (frames < 1) throw std::invalid_argument("run_qber: frames must be >= 1");
    constexpr size_t kBlock = 64;
    QberRecord rec;
    rec.p = ch.p;
    rec.qubit_errors_by_iteration.assign(sys.max_iterations, 0);
    rec.word_errors_by_iteration.assign(sys.max_iterations, 0);
    size_t done = 0;
    double iter_sum = 0.0;
    bool stopped = false;
    for (size_t base = 0; base < frames && !stopped; base += kBlock) {
        size_t count = std::min(kBlock, frames - base);
        auto results = parallel_map<FrameResult>(count, workers, [&](size_t i) {
            Rng rng = Rng::derive(seed, base + i);
            return run_frame(sys, ch, rng);
        });
        for (size_t i = 0; i < count; ++i) {
            const FrameResult& fr = results[i];
            ++done;
            rec.qubit_errors += fr.qubit_errors;
            rec.word_errors += fr.word_error ? 1 : 0;
            rec.decode_failures += fr.failed ? 1 : 0;
            iter_sum += static_cast<double>(fr.iterations_used);
            for (size_t it = 0; it < sys.max_iterations; ++it) {
                rec.qubit_errors_by_iteration[it] += fr.qubit_errors_by_iteration[it];
                rec.word_errors_by_iteration[it] += fr.qubit_errors_by_iteration[it] > 0 ? 1 : 0;
            }
            if (stop_at_errors > 0 && rec.word_errors >= stop_at_errors) {
                stopped = true;
                break;
            }
        }
    }
    rec.frames = done;
    size_t logical = sys.outer.logical_len();
    rec.qber = static_cast<double>(rec.qubit_errors) / static_cast<double>(logical * done);
    rec.wer = static_cast<double>(rec.word_errors) / static_cast<double>(done);
    rec.mean_iterations = iter_sum / static_cast<double>(done);
    return rec;
}

}  // namespace qtc
