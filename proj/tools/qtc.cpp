// qtc: classical-domain workbench for entanglement-assisted quantum turbo codes.
// Subcommands: capacity, exit, threshold, trajectory, qber, optimize, spectrum.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtc/csv.hpp"
#include "qtc/exit.hpp"
#include "qtc/registry.hpp"
#include "qtc/version.hpp"

namespace {

using qtc::format_double;

struct OutputTarget {
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;

    explicit OutputTarget(const std::string& path) {
        if (!path.empty() && path != "-") {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) throw std::runtime_error("cannot open output file '" + path + "'");
            os = file.get();
        }
    }
};

std::string join_argv(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s.push_back(' ');
        s += argv[i];
    }
    return s;
}

struct Common {
    std::string registry_path;
    std::string out_path;
    uint64_t seed = 1;
    size_t workers = qtc::default_worker_count();
    std::string cmdline;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    qtc::Registry load() const {
        if (registry_path.empty()) return qtc::builtin_registry();
        return qtc::load_registry(registry_path);
    }

    void write_meta(qtc::CsvWriter& w) const {
        w.meta("qtc-version", qtc::kVersion);
        w.meta("command", cmdline);
        w.meta("seed", std::to_string(seed));
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        w.meta("wall-time-s", format_double(secs));
    }
};

void add_common(CLI::App* cmd, Common& c, bool with_seed = true) {
    cmd->add_option("--registry", c.registry_path, "extra registry file (overrides built-ins)");
    cmd->add_option("--out", c.out_path, "output file (default: stdout)");
    cmd->add_option("--workers", c.workers, "worker thread count (default: env QTC_WORKERS or cores)");
    if (with_seed) cmd->add_option("--seed", c.seed, "master random seed");
}

int run(int argc, char** argv) {
    CLI::App app{"quantum turbo code workbench"};
    app.require_subcommand(1);

    // ---- capacity ----
    auto* cap = app.add_subcommand("capacity", "capacity and hashing-bound figures at one p");
    double cap_p = 0.0;
    Common cap_c;
    cap->add_option("--p", cap_p, "depolarizing probability")->required();
    cap->add_option("--out", cap_c.out_path, "output file (default: stdout)");

    // ---- exit ----
    auto* exi = app.add_subcommand("exit", "EXIT transfer curve of one decoder");
    std::string exi_role, exi_code;
    double exi_p = 0.0;
    qtc::ExitSettings exi_s;
    Common exi_c;
    exi->add_option("--role", exi_role, "inner|outer")->required();
    exi->add_option("--code", exi_code, "registry code name")->required();
    exi->add_option("--p", exi_p, "depolarizing probability (inner role only)");
    exi->add_option("--grid", exi_s.grid, "I_A grid size");
    exi->add_option("--frames", exi_s.frames, "frames per grid point");
    exi->add_option("--len", exi_s.frame_len, "frame length (subject qubits)");
    add_common(exi, exi_c);

    // ---- threshold ----
    auto* thr = app.add_subcommand("threshold", "bisection for the largest open-tunnel p");
    std::string thr_inner, thr_outer;
    double thr_lo = 0.0, thr_hi = 0.5, thr_tol = 0.01;
    qtc::ExitSettings thr_s;
    Common thr_c;
    thr->add_option("--inner", thr_inner)->required();
    thr->add_option("--outer", thr_outer)->required();
    thr->add_option("--p-lo", thr_lo)->required();
    thr->add_option("--p-hi", thr_hi)->required();
    thr->add_option("--tol", thr_tol, "bracket width");
    thr->add_option("--grid", thr_s.grid);
    thr->add_option("--frames", thr_s.frames);
    thr->add_option("--len", thr_s.frame_len);
    add_common(thr, thr_c);

    // ---- trajectory ----
    auto* trj = app.add_subcommand("trajectory", "decoding trajectory of one frame");
    std::string trj_inner, trj_outer;
    double trj_p = 0.0;
    size_t trj_len = 3000, trj_iters = 15;
    Common trj_c;
    trj->add_option("--inner", trj_inner)->required();
    trj->add_option("--outer", trj_outer)->required();
    trj->add_option("--p", trj_p)->required();
    trj->add_option("--len", trj_len, "interleaver length (qubits)");
    trj->add_option("--iters", trj_iters, "maximum iterations");
    add_common(trj, trj_c);

    // ---- qber ----
    auto* qbr = app.add_subcommand("qber", "Monte-Carlo qubit/word error rates over a p sweep");
    std::string qbr_inner, qbr_outer;
    double qbr_start = 0.1, qbr_end = 0.1, qbr_step = 0.01;
    size_t qbr_len = 1500, qbr_frames = 100, qbr_stop = 0, qbr_iters = 15;
    Common qbr_c;
    qbr->add_option("--inner", qbr_inner)->required();
    qbr->add_option("--outer", qbr_outer)->required();
    qbr->add_option("--p-start", qbr_start)->required();
    qbr->add_option("--p-end", qbr_end)->required();
    qbr->add_option("--p-step", qbr_step);
    qbr->add_option("--interleaver-len", qbr_len);
    qbr->add_option("--frames", qbr_frames, "frames per p point");
    qbr->add_option("--stop-errors", qbr_stop, "stop a point early after this many word errors");
    qbr->add_option("--iters", qbr_iters, "maximum decoder iterations");
    add_common(qbr, qbr_c);

    // ---- optimize ----
    auto* opt = app.add_subcommand("optimize", "random EXIT-area code search");
    size_t opt_n = 3, opt_k = 1, opt_m = 3, opt_trials = 10;
    double opt_target = 0.35;
    qtc::ExitSettings opt_s;
    opt_s.grid = 11;
    opt_s.frames = 4;
    opt_s.frame_len = 1500;
    Common opt_c;
    opt->add_option("--n", opt_n);
    opt->add_option("--k", opt_k);
    opt->add_option("--m", opt_m);
    opt->add_option("--target-p", opt_target)->required();
    opt->add_option("--trials", opt_trials);
    opt->add_option("--grid", opt_s.grid);
    opt->add_option("--frames", opt_s.frames);
    opt->add_option("--len", opt_s.frame_len);
    add_common(opt, opt_c);

    // ---- spectrum ----
    auto* spc = app.add_subcommand("spectrum", "truncated distance spectrum of a code");
    std::string spc_code;
    size_t spc_w = 5, spc_steps = 60;
    Common spc_c;
    spc->add_option("--code", spc_code)->required();
    spc->add_option("--max-weight", spc_w);
    spc->add_option("--max-steps", spc_steps);
    add_common(spc, spc_c, /*with_seed=*/false);

    std::string cmdline = join_argv(argc, argv);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto make_system = [&](const qtc::Registry& reg, const std::string& inner,
                           const std::string& outer, size_t il_len, size_t iters,
                           uint64_t seed) {
        const auto& si = reg.get(inner);
        const auto& so = reg.get(outer);
        if (il_len % (si.k()) != 0 || il_len % so.n() != 0)
            throw std::runtime_error("interleaver length must be divisible by inner k and outer n");
        qtc::CodeSpec in(si, qtc::CodeRole::Inner, il_len / si.k());
        qtc::CodeSpec out(so, qtc::CodeRole::Outer, il_len / so.n());
        qtc::Rng il_rng = qtc::Rng::derive(seed, 0x11ea);
        auto il = qtc::QuantumInterleaver::new_random(il_len, il_rng);
        return qtc::TurboSystem(std::move(in), std::move(out), std::move(il), iters);
    };

    if (*cap) {
        cap_c.cmdline = cmdline;
        OutputTarget out(cap_c.out_path);
        qtc::CsvWriter w(*out.os);
        w.meta("qtc-version", qtc::kVersion);
        w.meta("command", cmdline);
        w.header({"p", "c_bsc", "c_4ary", "hashing_bound", "db_gap_to_ea_pmax"});
        std::string gap = cap_p > 0.0 ? format_double(qtc::db_gap(cap_p, qtc::kEaHashingPmax))
                                      : std::string("-inf");
        w.row({format_double(cap_p), format_double(qtc::bsc_capacity(cap_p)),
               format_double(qtc::fourary_classical_capacity(cap_p)),
               format_double(qtc::hashing_bound(cap_p)), gap});
        return 0;
    }

    if (*exi) {
        exi_c.cmdline = cmdline;
        exi_s.seed = exi_c.seed;
        exi_s.workers = exi_c.workers;
        auto reg = exi_c.load();
        for (const auto& wmsg : reg.warnings) std::cerr << wmsg << "\n";
        qtc::ExitCurve curve;
        if (exi_role == "inner") {
            curve = qtc::inner_exit_curve(reg.get(exi_code), exi_p, exi_s);
        } else if (exi_role == "outer") {
            curve = qtc::outer_exit_curve(reg.get(exi_code), exi_s);
        } else {
            throw std::runtime_error("exit: --role must be inner or outer");
        }
        OutputTarget out(exi_c.out_path);
        qtc::CsvWriter w(*out.os);
        exi_c.write_meta(w);
        w.meta("code", exi_code);
        if (curve.p) w.meta("p", format_double(*curve.p));
        w.header({"i_a", "i_e"});
        for (auto [ia, ie] : curve.points) w.row({format_double(ia), format_double(ie)});
        return 0;
    }

    if (*thr) {
        thr_c.cmdline = cmdline;
        thr_s.seed = thr_c.seed;
        thr_s.workers = thr_c.workers;
        auto reg = thr_c.load();
        std::cerr << "threshold: bisecting p in [" << thr_lo << ", " << thr_hi << "]\n";
        auto res = qtc::threshold_search(reg.get(thr_inner), reg.get(thr_outer), thr_lo, thr_hi,
                                         thr_tol, thr_s);
        OutputTarget out(thr_c.out_path);
        qtc::CsvWriter w(*out.os);
        thr_c.write_meta(w);
        w.header({"p_star", "db_gap_to_ea_pmax", "evaluations"});
        w.row({format_double(res.p_star),
               format_double(qtc::db_gap(res.p_star, qtc::kEaHashingPmax)),
               std::to_string(res.evaluations.size())});
        return 0;
    }

    if (*trj) {
        trj_c.cmdline = cmdline;
        auto reg = trj_c.load();
        auto sys = make_system(reg, trj_inner, trj_outer, trj_len, trj_iters, trj_c.seed);
        qtc::Rng rng = qtc::Rng::derive(trj_c.seed, 0x77, 1);
        qtc::DepolarizingChannel ch(trj_p);
        auto tr = qtc::trajectory(sys, ch, rng);
        OutputTarget out(trj_c.out_path);
        qtc::CsvWriter w(*out.os);
        trj_c.write_meta(w);
        w.meta("final-ia-l1", format_double(tr.final_ia_l1));
        w.header({"i_a", "i_e"});
        for (auto [ia, ie] : tr.points) w.row({format_double(ia), format_double(ie)});
        return 0;
    }

    if (*qbr) {
        qbr_c.cmdline = cmdline;
        auto reg = qbr_c.load();
        auto sys = make_system(reg, qbr_inner, qbr_outer, qbr_len, qbr_iters, qbr_c.seed);
        std::vector<std::vector<std::string>> rows;
        for (size_t i = 0;; ++i) {
            double p = qbr_start + static_cast<double>(i) * qbr_step;
            if (p > qbr_end + 1e-12) break;
            std::cerr << "qber: p=" << p << "\n";
            qtc::DepolarizingChannel ch(p);
            uint64_t pseed = qtc::splitmix64(qbr_c.seed ^
                                             static_cast<uint64_t>(std::llround(p * 1e9)));
            auto rec = qtc::run_qber(sys, ch, qbr_frames, qbr_stop, pseed, qbr_c.workers);
            rows.push_back({format_double(p), std::to_string(rec.frames),
                            std::to_string(rec.qubit_errors), std::to_string(rec.word_errors),
                            format_double(rec.qber), format_double(rec.wer),
                            format_double(rec.mean_iterations)});
            if (qbr_step <= 0) break;
        }
        OutputTarget out(qbr_c.out_path);
        qtc::CsvWriter w(*out.os);
        qbr_c.write_meta(w);
        w.header({"p", "frames", "qubit_errors", "word_errors", "qber", "wer",
                  "mean_iterations"});
        for (const auto& r : rows) w.row(r);
        return 0;
    }

    if (*opt) {
        opt_c.cmdline = cmdline;
        opt_s.workers = opt_c.workers;
        auto cands =
            qtc::optimize_search(opt_n, opt_k, opt_m, opt_target, opt_trials, opt_s, opt_c.seed);
        nlohmann::json j;
        j["qtc-version"] = qtc::kVersion;
        j["command"] = cmdline;
        j["seed"] = opt_c.seed;
        j["target_p"] = opt_target;
        j["candidates"] = nlohmann::json::array();
        for (const auto& c : cands) {
            nlohmann::json jc;
            jc["inner_decimals"] = c.inner_decimals;
            jc["outer_decimals"] = c.outer_decimals;
            jc["open"] = c.open;
            jc["area"] = c.area;
            j["candidates"].push_back(jc);
        }
        OutputTarget out(opt_c.out_path);
        *out.os << j.dump(2) << "\n";
        return 0;
    }

    if (*spc) {
        spc_c.cmdline = cmdline;
        auto reg = spc_c.load();
        const auto& seed = reg.get(spc_code);
        qtc::CodeSpec spec(seed, qtc::CodeRole::Outer, 1);
        auto ds = qtc::distance_spectrum(spec, spc_w, spc_steps);
        OutputTarget out(spc_c.out_path);
        qtc::CsvWriter w(*out.os);
        spc_c.write_meta(w);
        w.meta("truncated", ds.truncated ? "yes" : "no");
        w.header({"weight", "count"});
        for (auto [wgt, cnt] : ds.counts) w.row({std::to_string(wgt), std::to_string(cnt)});
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
