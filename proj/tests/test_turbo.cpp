#include <catch2/catch_amalgamated.hpp>

#include "qtc/exit.hpp"
#include "qtc/registry.hpp"
#include "qtc/turbo.hpp"

#include "test_helpers.hpp"

using namespace qtc;
using qtc_test::random_toy_seed;

namespace {

TurboSystem toy_system(size_t il_len, Rng& rng, size_t iters = 8) {
    // two [2,1,1] toy components; interleaver length must be divisible by 2
    auto si = random_toy_seed(2, 1, 1, {AncillaKind::Ebit}, rng);
    auto so = random_toy_seed(2, 1, 1, {AncillaKind::Ancilla}, rng);
    CodeSpec inner(si, CodeRole::Inner, il_len);
    CodeSpec outer(so, CodeRole::Outer, il_len / 2);
    auto il = QuantumInterleaver::new_random(il_len, rng);
    return TurboSystem(std::move(inner), std::move(outer), std::move(il), iters);
}

TurboSystem optimized_system(size_t il_len, uint64_t seed, size_t iters = 15) {
    auto reg = builtin_registry();
    CodeSpec inner(reg.get("opt-inner"), CodeRole::Inner, il_len);
    CodeSpec outer(reg.get("opt-outer"), CodeRole::Outer, il_len / 3);
    Rng rng = Rng::derive(seed, 0x11ea);
    auto il = QuantumInterleaver::new_random(il_len, rng);
    return TurboSystem(std::move(inner), std::move(outer), std::move(il), iters);
}

}  // namespace

TEST_CASE("system wiring invariant is enforced") {
    Rng rng(2);
    auto si = random_toy_seed(2, 1, 1, {AncillaKind::Ebit}, rng);
    auto so = random_toy_seed(2, 1, 1, {AncillaKind::Ancilla}, rng);
    CodeSpec inner(si, CodeRole::Inner, 10);
    CodeSpec outer(so, CodeRole::Outer, 5);
    auto il = QuantumInterleaver::new_random(8, rng);  // wrong size
    REQUIRE_THROWS_AS(TurboSystem(std::move(inner), std::move(outer), std::move(il), 4),
                      std::invalid_argument);
}

TEST_CASE("p = 0 frames have zero syndromes and decode to the identity coset") {
    Rng rng(3);
    auto sys = toy_system(12, rng);
    DepolarizingChannel ch(0.0);
    Rng frng(4);
    auto fs = simulate_frame(sys, ch, frng);
    REQUIRE(fs.true_l2.is_zero());
    for (uint8_t b : fs.syn1.x) REQUIRE(b == 0);
    for (uint8_t b : fs.syn2.x) REQUIRE(b == 0);
    auto dec = turbo_decode(sys, fs.syn1, fs.syn2, ch);
    REQUIRE(dec.estimated_l2.is_zero());
    REQUIRE(dec.iterations_used <= 2);  // early exit on a flat fixed point
}

TEST_CASE("frame chain is linear over GF(2)") {
    Rng rng(5);
    auto sys = toy_system(12, rng);
    auto chain = [&](const EffectiveVector& p1) {
        auto t1 = track_error(sys.inner, p1);
        auto p2 = sys.interleaver.inverse_apply(t1.logical);
        auto t2 = track_error(sys.outer, p2);
        return t2.logical;
    };
    for (int rep = 0; rep < 10; ++rep) {
        EffectiveVector a(sys.inner.physical_len()), b(sys.inner.physical_len());
        for (size_t q = 0; q < a.n_qubits(); ++q) {
            a.set_symbol(q, static_cast<PauliSymbol>(rng.below(4)));
            b.set_symbol(q, static_cast<PauliSymbol>(rng.below(4)));
        }
        REQUIRE(chain(a ^ b) == (chain(a) ^ chain(b)));
    }
}

TEST_CASE("one-iteration outer marginals match the exhaustive oracle on its inputs") {
    // The outer stage of the loop is exact symbol-MAP inference given the
    // factorized a-priori stream handed over by the inner stage.
    Rng rng(7);
    auto sys = toy_system(8, rng, 1);
    DepolarizingChannel ch(0.12);
    Rng frng(8);
    auto fs = simulate_frame(sys, ch, frng);

    MessageSequence priors_p1 =
        MessageSequence::uniform(sys.inner.physical_len(), MessageRole::APriori, MessageSubject::P);
    for (auto& d : priors_p1.symbols) d = symbol_priors(ch);
    MessageSequence priors_l1 =
        MessageSequence::uniform(sys.inner.logical_len(), MessageRole::APriori, MessageSubject::L);
    auto inner_out = siso_decode(sys.inner, priors_p1, priors_l1, fs.syn1);
    auto priors_p2 = sys.interleaver.inverse_apply_messages(inner_out.ext_L);
    MessageSequence uni_l2 =
        MessageSequence::uniform(sys.outer.logical_len(), MessageRole::APriori, MessageSubject::L);
    auto outer_out = siso_decode(sys.outer, priors_p2, uni_l2, fs.syn2);

    auto bf = qtc_test::brute_force_posterior(sys.outer, priors_p2, uni_l2, fs.syn2);
    for (size_t q = 0; q < bf.size(); ++q)
        for (int s = 0; s < 4; ++s)
            REQUIRE(outer_out.post_L[q][s] == Catch::Approx(bf[q][s]).margin(1e-6));

    auto dec = turbo_decode(sys, fs.syn1, fs.syn2, ch);
    for (size_t q = 0; q < bf.size(); ++q)
        REQUIRE(dec.per_iteration_estimates.front().symbol(q) == bf[q].argmax());
}

TEST_CASE("optimized pair corrects everything far below threshold") {
    auto sys = optimized_system(60, 13, 8);
    size_t qerr = 0;
    for (int f = 0; f < 10; ++f) {
        Rng frng = Rng::derive(99, f);
        auto fr = run_frame(sys, DepolarizingChannel(0.02), frng);
        qerr += fr.qubit_errors;
    }
    REQUIRE(qerr == 0);
}

TEST_CASE("run_qber tallies, early stop, and determinism across worker counts") {
    auto sys = optimized_system(60, 7, 6);
    DepolarizingChannel ch(0.5);  // far above threshold: plenty of word errors
    auto r1 = run_qber(sys, ch, 24, 0, 1234, 1);
    auto r4 = run_qber(sys, ch, 24, 0, 1234, 4);
    REQUIRE(r1.frames == r4.frames);
    REQUIRE(r1.qubit_errors == r4.qubit_errors);
    REQUIRE(r1.word_errors == r4.word_errors);
    REQUIRE(r1.mean_iterations == r4.mean_iterations);
    REQUIRE(r1.qubit_errors_by_iteration == r4.qubit_errors_by_iteration);

    auto rs = run_qber(sys, ch, 1000, 3, 1234, 2);
    REQUIRE(rs.word_errors >= 3);
    REQUIRE(rs.frames < 1000);

    // p = 0 gives zero error rates
    auto rz = run_qber(sys, DepolarizingChannel(0.0), 4, 0, 1, 2);
    REQUIRE(rz.qber == 0.0);
    REQUIRE(rz.wer == 0.0);
}

TEST_CASE("far above threshold the decoder degrades to the channel-prior baseline") {
    auto sys = optimized_system(120, 11, 4);
    DepolarizingChannel ch(0.5);
    auto rec = run_qber(sys, ch, 40, 0, 555, 2);
    // argmax of the channel prior is I, so the baseline qber is the probability
    // that the true logical symbol is non-identity; with the logical error
    // marginal near-uniform at p = 0.5 this sits around 3/4
    double baseline = 0.75;
    double sigma = std::sqrt(baseline * (1 - baseline) /
                             static_cast<double>(sys.outer.logical_len() * rec.frames));
    REQUIRE(std::abs(rec.qber - baseline) <= 5 * sigma + 0.05);
}
