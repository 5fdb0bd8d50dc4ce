#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "statechan/crypto.hpp"
#include "statechan/msfe.hpp"
#include "statechan/scenario.hpp"
#include "statechan/sim.hpp"

using namespace statechan;

namespace {

std::optional<uint64_t> env_seed() {
    const char* v = std::getenv("STATECHAN_SEED");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    uint64_t s = std::strtoull(v, &end, 10);
    if (end == v || *end) return std::nullopt;
    return s;
}

void print_summary(const sim::Scenario& s, const sim::RunResult& r,
                   const sim::InvariantReport& rep, std::ostream& os) {
    os << "scenario " << s.name << " (" << sim::protocol_name(s.protocol) << ", n=" << s.n
       << ", seed=" << s.seed << ")\n";
    os << "  strategy: " << sim::strategy_kind_name(s.strategy.kind);
    if (!s.corrupt.empty()) {
        os << "  corrupt:";
        for (int j : s.corrupt) os << " P" << j;
    }
    os << "\n";
    os << "  triggers accepted: " << r.accepted_triggers << " (disputed: " << r.dispute_triggers
       << ")  final mode: " << r.final_mode << "\n";
    for (const auto& [j, po] : r.parties) {
        int64_t delta = static_cast<int64_t>(po.final_wallet) - static_cast<int64_t>(po.initial);
        os << "  P" << j << (po.honest ? " honest " : " corrupt") << "  initial " << po.initial
           << "  final " << po.final_wallet << "  (" << (delta >= 0 ? "+" : "") << delta << ")";
        if (po.honest && delta > 0) os << "  [compensated]";
        if (!po.honest && delta < 0) os << "  [penalized]";
        os << "\n";
    }
    for (size_t i = 0; i < r.honest_outputs.size(); ++i)
        os << "  execution " << (i + 1) << ": "
           << (r.honest_outputs[i] ? "output " + to_hex(*r.honest_outputs[i]) : "no output")
           << "\n";
    os << "  conservation: " << (r.coins_conserved ? "all coins accounted for on every tick"
                                                   : "VIOLATED")
       << "\n";
    for (const auto& f : rep.failed) os << "  FAILED: " << f << "\n";
    os << "  invariants: " << rep.passed.size() << " passed, " << rep.failed.size() << " failed\n";
}

int cmd_run(const std::string& path, std::optional<uint64_t> seed, const std::string& out,
            const std::string& format) {
    sim::Scenario s = sim::load_scenario(path);
    if (seed)
        s.seed = *seed;
    else if (auto es = env_seed())
        s.seed = *es;
    sim::RunResult r = sim::run_scenario(s);
    sim::InvariantReport rep = sim::check_invariants(s, r);

    if (!out.empty()) {
        std::ofstream of(out);
        if (!of) throw CLI::ValidationError("--out", "cannot write " + out);
        of << r.trace.dump();
    }
    if (format == "json") {
        if (out.empty()) std::cout << r.trace.dump();
    } else {
        print_summary(s, r, rep, std::cout);
    }
    return rep.ok ? 0 : 2;
}

int cmd_sweep(const std::string& protocol, int n, int executions, int max_abort_points,
              uint64_t seed) {
    auto p = sim::protocol_from_name(protocol);
    if (!p) throw CLI::ValidationError("--protocol", "unknown protocol " + protocol);
    uint32_t stages = 1;
    auto grid = sim::strategy_grid(*p, n, executions, stages, max_abort_points);
    int ran = 0, failed = 0;
    std::string first_failure;
    for (const auto& st : grid) {
        sim::Scenario s;
        s.protocol = *p;
        s.n = *p == sim::Protocol::Duplex ? 2 : n;
        s.executions = executions;
        s.seed = seed + static_cast<uint64_t>(ran);
        s.strategy = st;
        s.corrupt = sim::default_corrupt_for(st, s.n);
        if (*p == sim::Protocol::Msfe) {
            s.q = msfe::lcm_up_to(s.n);
        } else if (*p == sim::Protocol::Mscd) {
            s.q = 4;
            s.stages = stages;
            s.start_balance =
                static_cast<ledger::Coin>(executions) * static_cast<ledger::Coin>(stages);
        } else {
            s.duplex_deposits = {50, 50};
            s.payments = 8;
        }
        s.name = std::string(sim::protocol_name(*p)) + "/" +
                 sim::strategy_kind_name(st.kind) + "/e" + std::to_string(st.exec_id) + "s" +
                 std::to_string(st.step) + "r" + std::to_string(st.round) +
                 (st.open_onchain ? "/onchain" : "");
        sim::RunResult r = sim::run_scenario(s);
        sim::InvariantReport rep = sim::check_invariants(s, r);
        bool ok = rep.ok;
        sim::IdealOutcome ideal = sim::ideal_oracle(s);
        if (ideal.mappable) {
            for (const auto& [j, w] : ideal.honest_wallets)
                if (r.parties.at(j).final_wallet != w) {
                    ok = false;
                    rep.failed.push_back("ideal wallet mismatch for P" + std::to_string(j));
                }
            if (ideal.honest_outputs != r.honest_outputs) {
                ok = false;
                rep.failed.push_back("ideal output mismatch");
            }
        }
        ran++;
        if (!ok) {
            failed++;
            if (first_failure.empty()) first_failure = s.name;
            std::cout << "FAIL " << s.name;
            for (const auto& f : rep.failed) std::cout << "\n     " << f;
            std::cout << "\n";
        } else {
            std::cout << "ok   " << s.name << "\n";
        }
    }
    std::cout << ran << " scenarios, " << failed << " failed";
    if (failed) std::cout << " (first: " << first_failure << ")";
    std::cout << "\n";
    return failed ? 2 : 0;
}

Bytes need_hex(const std::string& flag, const std::string& hex) {
    auto b = from_hex(hex);
    if (!b) throw CLI::ValidationError(flag, "malformed hex");
    return *b;
}

crypto::GroupElement need_point(const std::string& flag, const std::string& hex) {
    auto p = crypto::GroupElement::from_bytes(need_hex(flag, hex));
    if (!p) throw CLI::ValidationError(flag, "not a curve point");
    return *p;
}

int cmd_nizk_prove(const std::string& x_hex, const std::string& h_hex, const std::string& k_hex) {
    crypto::Scalar x = crypto::Scalar::from_bytes_mod_order(need_hex("--x", x_hex));
    crypto::GroupElement g = crypto::GroupElement::generator();
    crypto::GroupElement h = h_hex.empty() ? crypto::hash_to_curve(to_bytes("nizk-default-h"))
                                           : need_point("--h2", h_hex);
    std::optional<crypto::DlogEqProof> proof;
    if (!k_hex.empty()) {
        crypto::Scalar k = crypto::Scalar::from_bytes_mod_order(need_hex("--k", k_hex));
        proof = crypto::nizk_prove_with_nonce(x, g, h, k);
    } else {
        Rng rng(env_seed().value_or(1));
        proof = crypto::nizk_prove(x, g, h, rng);
    }
    if (!proof) {
        std::cerr << "degenerate inputs\n";
        return 1;
    }
    std::cout << "X  " << to_hex(g.mul(x).data) << "\n";
    std::cout << "Y  " << to_hex(h.mul(x).data) << "\n";
    std::cout << "KX " << to_hex(proof->kx.data) << "\n";
    std::cout << "KY " << to_hex(proof->ky.data) << "\n";
    std::cout << "S  " << to_hex(proof->s.be) << "\n";
    return 0;
}

int cmd_nizk_verify(const std::string& h_hex, const std::string& x_hex, const std::string& y_hex,
                    const std::string& kx_hex, const std::string& ky_hex,
                    const std::string& s_hex) {
    crypto::GroupElement g = crypto::GroupElement::generator();
    crypto::GroupElement h = h_hex.empty() ? crypto::hash_to_curve(to_bytes("nizk-default-h"))
                                           : need_point("--h2", h_hex);
    crypto::DlogEqProof proof;
    proof.kx = need_point("--kx", kx_hex);
    proof.ky = need_point("--ky", ky_hex);
    Bytes s_raw = need_hex("--s", s_hex);
    if (s_raw.size() != 32) throw CLI::ValidationError("--s", "scalar must be 32 bytes");
    proof.s = crypto::Scalar::from_bytes_mod_order(s_raw);
    bool ok = crypto::nizk_verify(g, h, need_point("--x", x_hex), need_point("--y", y_hex), proof);
    std::cout << (ok ? 1 : 0) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"state channel protocol simulator"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, format = "summary";
    std::optional<uint64_t> seed;
    auto* run = app.add_subcommand("run", "run one scenario file");
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--out", out_path, "write the JSON trace here");
    run->add_option("--format", format, "summary or json")
        ->check(CLI::IsMember({"summary", "json"}));

    std::string sweep_protocol = "msfe";
    int sweep_n = 3, sweep_exec = 2, sweep_points = 8;
    uint64_t sweep_seed = 1;
    auto* sweep = app.add_subcommand("sweep", "run the full adversary strategy grid");
    sweep->add_option("--protocol", sweep_protocol, "msfe, mscd or duplex");
    sweep->add_option("--n", sweep_n, "party count");
    sweep->add_option("--executions", sweep_exec, "executions per run");
    sweep->add_option("--max-abort-points", sweep_points, "abort rounds enumerated per execution");
    sweep->add_option("--seed", sweep_seed, "base seed");

    auto* nizk = app.add_subcommand("nizk", "discrete-log-equality proof tool");
    nizk->require_subcommand(1);
    std::string nx, nh, nk, ny, nkx, nky, ns;
    auto* prove = nizk->add_subcommand("prove", "prove knowledge of x with X=xG, Y=xH");
    prove->add_option("--x", nx, "witness scalar, hex")->required();
    prove->add_option("--h2", nh, "second base point, hex (default: fixed curve point)");
    prove->add_option("--k", nk, "nonce scalar, hex (deterministic test vectors)");
    auto* verify = nizk->add_subcommand("verify", "verify a proof; prints 1 or 0");
    verify->add_option("--h2", nh, "second base point, hex");
    verify->add_option("--x", nx, "statement point X, hex")->required();
    verify->add_option("--y", ny, "statement point Y, hex")->required();
    verify->add_option("--kx", nkx, "proof commitment KX, hex")->required();
    verify->add_option("--ky", nky, "proof commitment KY, hex")->required();
    verify->add_option("--s", ns, "proof response s, hex")->required();

    try {
        app.parse(argc, argv);
        if (*run) return cmd_run(scenario_path, seed, out_path, format);
        if (*sweep) {
            if (env_seed() && sweep->count("--seed") == 0) sweep_seed = *env_seed();
            return cmd_sweep(sweep_protocol, sweep_n, sweep_exec, sweep_points, sweep_seed);
        }
        if (*prove) return cmd_nizk_prove(nx, nh, nk);
        if (*verify) return cmd_nizk_verify(nh, nx, ny, nkx, nky, ns);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
