#include "statechan/sim.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "statechan/duplex.hpp"
#include "statechan/games.hpp"
#include "statechan/mscd.hpp"
#include "statechan/msfe.hpp"
#include "statechan/rng.hpp"

namespace statechan::sim {

const char* protocol_name(Protocol p) {
    switch (p) {
        case Protocol::Msfe: return "msfe";
        case Protocol::Mscd: return "mscd";
        case Protocol::Duplex: return "duplex";
    }
    return "?";
}

std::optional<Protocol> protocol_from_name(const std::string& s) {
    if (s == "msfe") return Protocol::Msfe;
    if (s == "mscd") return Protocol::Mscd;
    if (s == "duplex") return Protocol::Duplex;
    return std::nullopt;
}

const char* strategy_kind_name(Strategy::Kind k) {
    switch (k) {
        case Strategy::Kind::Honest: return "honest";
        case Strategy::Kind::AbortAtStep: return "abort-at-step";
        case Strategy::Kind::WithholdShare: return "withhold-share";
        case Strategy::Kind::WithholdSignature: return "withhold-signature";
        case Strategy::Kind::AbortAtRound: return "abort-at-round";
        case Strategy::Kind::ReplayStale: return "replay-stale";
        case Strategy::Kind::PrematureExit: return "premature-exit";
        case Strategy::Kind::StaleDuplexSubmit: return "stale-duplex-submit";
        case Strategy::Kind::SilentForever: return "silent-forever";
    }
    return "?";
}

std::optional<Strategy::Kind> strategy_kind_from_name(const std::string& s) {
    using K = Strategy::Kind;
    for (K k : {K::Honest, K::AbortAtStep, K::WithholdShare, K::WithholdSignature, K::AbortAtRound,
                K::ReplayStale, K::PrematureExit, K::StaleDuplexSubmit, K::SilentForever})
        if (s == strategy_kind_name(k)) return k;
    return std::nullopt;
}

bool Scenario::is_corrupt(int j) const {
    return std::find(corrupt.begin(), corrupt.end(), j) != corrupt.end();
}

bool Scenario::valid(std::string* err) const {
    auto fail = [&](const char* m) {
        if (err) *err = m;
        return false;
    };
    if (n < 2) return fail("n must be at least 2");
    if (static_cast<int>(corrupt.size()) > n - 1) return fail("need at least one honest party");
    for (int j : corrupt)
        if (j < 1 || j > n) return fail("corrupt party id out of range");
    if (delta < 3) return fail("delta too small for one-tick response latency");
    if (delta_off < 1) return fail("delta_off must be positive");
    if (max_ticks < 10) return fail("max_ticks too small");
    if (executions < 0) return fail("negative execution count");
    Coin dep = static_cast<Coin>(n - 1) * q;
    switch (protocol) {
        case Protocol::Msfe:
            if (q == 0 || q % msfe::lcm_up_to(n) != 0)
                return fail("q must be a positive multiple of lcm(1..n)");
            if (initial_wallet < dep) return fail("wallet cannot cover the deposit");
            if (output_len == 0 || output_len > 64) return fail("output_len out of range");
            break;
        case Protocol::Mscd:
            if (q == 0) return fail("q must be positive");
            if (stages == 0) return fail("at least one stage per execution");
            if (initial_wallet < dep + start_balance) return fail("wallet cannot cover deposit and stake");
            if (executions > 0 &&
                start_balance < static_cast<Coin>(executions) * static_cast<Coin>(stages))
                return fail("stake must cover the worst-case lottery losses");
            break;
        case Protocol::Duplex:
            if (n != 2) return fail("duplex channels have exactly two parties");
            if (duplex_deposits[0] == 0 || duplex_deposits[1] == 0)
                return fail("both channel deposits must be positive");
            if (initial_wallet < duplex_deposits[0] || initial_wallet < duplex_deposits[1])
                return fail("wallet cannot cover the channel deposit");
            if (payments < 0) return fail("negative payment count");
            break;
    }
    return true;
}

// ---------------------------------------------------------------------------

static uint64_t mix(uint64_t a, uint64_t b) {
    uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

Bytes party_input(const Scenario& s, int j, int64_t exec, uint32_t stage, size_t len) {
    Rng r(mix(mix(mix(s.seed, 0x696e * 31 + static_cast<uint64_t>(j)),
                  static_cast<uint64_t>(exec)),
              stage));
    return r.bytes(len);
}

namespace {

using ledger::Ledger;

struct RunCtx {
    const Scenario& s;
    RunResult& res;
    Ledger lg;
    int instance = -1;
    Coin total0 = 0;

    RunCtx(const Scenario& sc, RunResult& r) : s(sc), res(r), lg(sc.n, sc.initial_wallet, &r.trace) {
        total0 = lg.total_coins();
        for (int j = 1; j <= sc.n; ++j) {
            PartyOutcome po;
            po.initial = sc.initial_wallet;
            po.honest = !sc.is_corrupt(j);
            r.parties[j] = po;
        }
        r.honest_outputs.assign(static_cast<size_t>(std::max(sc.executions, 0)), std::nullopt);
        r.adversary_learned.assign(r.honest_outputs.size(), false);
    }

    /// One ledger tick with conservation and budget accounting; false when
    /// the tick budget ran out.
    bool tick() {
        lg.advance_tick();
        if (lg.total_coins() != total0) res.coins_conserved = false;
        if (lg.now() >= s.max_ticks) {
            res.budget_exhausted = true;
            return false;
        }
        return true;
    }

    void watch_triggers() {
        lg.subscribe(instance, 0, [this](const ledger::LedgerEvent& ev) {
            if (ev.is_update) return;
            res.accepted_triggers++;
            if (!ev.witness.empty() && ev.witness[0] != 0) res.dispute_triggers++;
        });
    }

    void finish() {
        res.terminated = instance >= 0 && lg.is_terminated(instance);
        nlohmann::ordered_json wallets = nlohmann::ordered_json::object();
        for (int j = 1; j <= s.n; ++j) {
            res.parties[j].final_wallet = lg.wallet(j);
            wallets[std::to_string(j)] = lg.wallet(j);
        }
        res.trace.record({{"ev", "final"},
                          {"tick", lg.now()},
                          {"terminated", res.terminated},
                          {"refunded", res.refunded},
                          {"wallets", wallets}});
    }
};

/// True when the corrupt coalition runs strategy `k` against execution `e`.
bool strat_hits(const Scenario& s, Strategy::Kind k, int64_t e) {
    return !s.corrupt.empty() && s.strategy.kind == k && s.strategy.exec_id == e;
}

// --- sfe-with-penalties runner ---------------------------------------------

struct MsfeDriver {
    int j = 0;
    bool honest = true;
    const Scenario* sc = nullptr;
    const msfe::MsfeConfig* cfg = nullptr;
    std::map<int64_t, crypto::Opening> my_openings;
    std::optional<int64_t> best_id;
    msfe::MsfeTranscript best_tt;
    bool wants_exit = false;
    bool install_intent = false;
    std::optional<Bytes> pending;  // one-shot adversarial witness
    std::set<std::pair<uint64_t, int>> done;

    bool acted(uint64_t ver, int rule) { return !done.insert({ver, rule}).second; }

    std::optional<Bytes> decide(const msfe::MsfeState& st, uint64_t ver, Tick now) {
        using msfe::Mode;
        if (pending) {
            Bytes w = std::move(*pending);
            pending.reset();
            return w;
        }
        if (st.mode == Mode::Inactive) return std::nullopt;
        int64_t bid = best_id.value_or(0);
        int64_t dl = st.t + static_cast<int64_t>(cfg->delta);
        bool mine_missing = st.tt && !st.tt->openings[static_cast<size_t>(j - 1)];
        if (st.mode == Mode::Payout || st.mode == Mode::Abort) {
            if (st.live[static_cast<size_t>(j - 1)] && static_cast<int64_t>(now) > dl &&
                !acted(ver, 0))
                return msfe::encode_exit_witness();
            return std::nullopt;
        }
        if (honest) {
            bool may_install = install_intent || st.id >= 0;
            if (best_id && may_install && st.id < bid && !acted(ver, 1))
                return msfe::encode_transcript_witness(bid, best_tt);
            if (best_id && st.id == bid && mine_missing && !acted(ver, 2))
                return msfe::encode_transcript_witness(bid, best_tt);
            if (st.id == bid + 1 && st.tt && mine_missing && my_openings.count(st.id) &&
                !acted(ver, 3)) {
                msfe::MsfeTranscript tt;
                tt.openings.assign(static_cast<size_t>(cfg->n), std::nullopt);
                tt.openings[static_cast<size_t>(j - 1)] = my_openings[st.id];
                tt.commitments = st.tt->commitments;
                tt.sigs = st.tt->sigs;
                return msfe::encode_transcript_witness(st.id, tt);
            }
            if (st.mode == Mode::Exec && st.tt &&
                st.tt->open_count() == static_cast<size_t>(cfg->n) && !acted(ver, 4))
                return msfe::encode_exit_witness();
        }
        if ((st.mode == Mode::Exec || st.mode == Mode::Exit) &&
            st.live[static_cast<size_t>(j - 1)] && static_cast<int64_t>(now) > dl &&
            !acted(ver, 5))
            return msfe::encode_exit_witness();
        if (st.mode == Mode::Init && wants_exit && !acted(ver, 6))
            return msfe::encode_exit_witness();
        return std::nullopt;
    }
};

void run_msfe(RunCtx& ctx) {
    const Scenario& s = ctx.s;
    Rng key_rng(mix(s.seed, 0x6b6579));
    msfe::MsfeConfig cfg;
    cfg.n = s.n;
    cfg.q = s.q;
    cfg.delta = s.delta;
    cfg.delta_off = s.delta_off;
    cfg.aggregate_sigs = s.aggregate_sigs;
    std::vector<crypto::SigKeyPair> keys;
    crypto::MultiKey mk;
    if (s.aggregate_sigs) {
        mk = crypto::multi_keygen(static_cast<size_t>(s.n), key_rng);
        cfg.pks = mk.share_pks;
        cfg.pk_master = mk.pk_master;
        for (int j = 0; j < s.n; ++j) keys.push_back({mk.shares[j], mk.share_pks[j]});
    } else {
        for (int j = 0; j < s.n; ++j) keys.push_back(crypto::sig_keygen(key_rng));
        for (auto& k : keys) cfg.pks.push_back(k.pk);
    }
    if (!cfg.valid()) throw std::logic_error("bad protocol config");

    auto prog_owned = std::make_unique<msfe::MsfeProgram>(cfg);
    const msfe::MsfeProgram* prog = prog_owned.get();
    std::map<ledger::PartyId, Coin> deposits;
    for (int j = 1; j <= s.n; ++j) deposits[j] = cfg.deposit();
    ctx.instance = ctx.lg.open_contract(std::move(prog_owned), deposits, ctx.lg.now() + 3);
    ctx.watch_triggers();

    bool silent = !s.corrupt.empty() && s.strategy.kind == Strategy::Kind::SilentForever;
    for (int j = 1; j <= s.n; ++j)
        if (!(silent && s.is_corrupt(j))) ctx.lg.fund(ctx.instance, j, cfg.deposit());
    ctx.tick();
    if (!ctx.lg.is_live(ctx.instance)) {
        while (ctx.lg.is_live(ctx.instance) == false && ctx.lg.now() <= 5 && ctx.tick()) {
        }
        ctx.res.refunded = true;
        ctx.finish();
        return;
    }

    std::vector<MsfeDriver> drv(static_cast<size_t>(s.n) + 1);
    for (int j = 1; j <= s.n; ++j) {
        drv[j].j = j;
        drv[j].honest = !s.is_corrupt(j);
        drv[j].sc = &s;
        drv[j].cfg = &cfg;
    }
    // Per-execution transcripts the corrupt side can replay at settlement.
    std::map<int64_t, msfe::MsfeTranscript> full_transcripts;

    uint64_t last_ver = ctx.lg.state_version(ctx.instance);
    bool onchain = false;   // dispute or settlement reached
    bool budget_ok = true;
    // Off-chain tick that also detects on-chain activity.
    auto step_tick = [&]() {
        if (!ctx.tick()) {
            budget_ok = false;
            return true;
        }
        uint64_t v = ctx.lg.state_version(ctx.instance);
        if (v != last_ver) {
            last_ver = v;
            return true;
        }
        return false;
    };
    Rng dealer_rng(mix(s.seed, 0xdea1e4));

    for (int64_t id = 1; id <= s.executions && budget_ok && !onchain; ++id) {
        if (strat_hits(s, Strategy::Kind::PrematureExit, id)) {
            ctx.lg.queue_trigger(ctx.instance, s.corrupt[0], msfe::encode_exit_witness());
            step_tick();
            onchain = true;
            break;
        }
        // Step 1: dealer stands in for the MPC; every party contributes an
        // input and receives its share opening plus all commitments.
        if (strat_hits(s, Strategy::Kind::AbortAtStep, id) && s.strategy.step == 1) {
            for (int j = 1; j <= s.n; ++j)
                if (drv[j].honest) drv[j].wants_exit = true;
            onchain = true;
            break;
        }
        std::vector<Bytes> inputs;
        for (int j = 1; j <= s.n; ++j) inputs.push_back(party_input(s, j, id, 1, s.output_len));
        Rng er = dealer_rng.fork(static_cast<uint64_t>(id));
        auto dealt = msfe::dealer_execute(msfe::xor_function(s.output_len), inputs, er);
        for (int j = 1; j <= s.n; ++j)
            drv[j].my_openings[id] = dealt.openings[static_cast<size_t>(j - 1)];
        ctx.res.trace.record({{"ev", "offchain"}, {"exec", id}, {"step", 1}});
        if (step_tick()) {
            onchain = true;
            break;
        }

        // Step 2: signature broadcast on (id, h).
        bool abort2 = (strat_hits(s, Strategy::Kind::AbortAtStep, id) && s.strategy.step == 2) ||
                      strat_hits(s, Strategy::Kind::WithholdSignature, id);
        Bytes payload = msfe::encode_sign_payload(id, dealt.commitments);
        std::vector<Bytes> sigs;
        if (s.aggregate_sigs) {
            std::vector<std::optional<crypto::Scalar>> shares;
            for (int j = 1; j <= s.n; ++j) shares.push_back(mk.shares[static_cast<size_t>(j - 1)]);
            auto agg = crypto::multi_sign(payload, shares, mk.pk_master);
            sigs = {*agg};
        } else {
            for (int j = 1; j <= s.n; ++j)
                sigs.push_back(crypto::sig_sign(keys[static_cast<size_t>(j - 1)], payload));
        }
        ctx.res.trace.record({{"ev", "offchain"}, {"exec", id}, {"step", 2}, {"abort", abort2}});
        if (abort2) {
            // A rushing coalition already holds every honest signature plus
            // its own, even though honest parties never saw the full set.
            if (s.strategy.open_onchain) {
                msfe::MsfeTranscript tt;
                tt.openings.assign(static_cast<size_t>(s.n), std::nullopt);
                for (int j : s.corrupt)
                    tt.openings[static_cast<size_t>(j - 1)] = drv[j].my_openings[id];
                tt.commitments = dealt.commitments;
                tt.sigs = sigs;
                drv[s.corrupt[0]].pending = msfe::encode_transcript_witness(id, tt);
            }
            for (int j = 1; j <= s.n; ++j)
                if (drv[j].honest) drv[j].wants_exit = true;
            step_tick();
            onchain = true;
            break;
        }
        for (int j = 1; j <= s.n; ++j) {
            drv[j].best_id = id;
            drv[j].best_tt = msfe::MsfeTranscript{};
            drv[j].best_tt.openings.assign(static_cast<size_t>(s.n), std::nullopt);
            drv[j].best_tt.openings[static_cast<size_t>(j - 1)] = drv[j].my_openings[id];
            drv[j].best_tt.commitments = dealt.commitments;
            drv[j].best_tt.sigs = sigs;
        }
        if (step_tick()) {
            onchain = true;
            break;
        }

        // Step 3: share broadcast. Honest parties release first; a rushing
        // coalition therefore always learns z here.
        bool abort3 = (strat_hits(s, Strategy::Kind::AbortAtStep, id) && s.strategy.step == 3) ||
                      strat_hits(s, Strategy::Kind::WithholdShare, id);
        ctx.res.adversary_learned[static_cast<size_t>(id - 1)] = true;
        std::vector<std::optional<crypto::Opening>> received(static_cast<size_t>(s.n));
        for (int j = 1; j <= s.n; ++j)
            if (drv[j].honest || !abort3)
                received[static_cast<size_t>(j - 1)] = drv[j].my_openings[id];
        for (int j = 1; j <= s.n; ++j) drv[j].best_tt.openings = received;
        ctx.res.trace.record({{"ev", "offchain"}, {"exec", id}, {"step", 3}, {"abort", abort3}});
        if (abort3) {
            if (s.strategy.open_onchain) {
                msfe::MsfeTranscript tt;
                tt.openings.assign(static_cast<size_t>(s.n), std::nullopt);
                for (int j : s.corrupt)
                    tt.openings[static_cast<size_t>(j - 1)] = drv[j].my_openings[id];
                tt.commitments = dealt.commitments;
                tt.sigs = sigs;
                drv[s.corrupt[0]].pending = msfe::encode_transcript_witness(id, tt);
            }
            for (int j = 1; j <= s.n; ++j)
                if (drv[j].honest) drv[j].install_intent = true;
            step_tick();
            onchain = true;
            break;
        }
        auto z = msfe::reconstruct_output(received);
        ctx.res.honest_outputs[static_cast<size_t>(id - 1)] = *z;
        msfe::MsfeTranscript full;
        full.openings = received;
        full.commitments = dealt.commitments;
        full.sigs = sigs;
        full_transcripts[id] = std::move(full);
        if (step_tick()) {
            onchain = true;
            break;
        }
    }

    if (budget_ok && !onchain) {
        // Clean settlement: the lowest honest party exits; everyone claims
        // after the response window.
        for (int j = 1; j <= s.n; ++j)
            if (drv[j].honest) {
                drv[j].wants_exit = true;
                break;
            }
        if (!s.corrupt.empty() && s.strategy.kind == Strategy::Kind::ReplayStale &&
            full_transcripts.count(s.strategy.stale_id))
            drv[s.corrupt[0]].pending = msfe::encode_transcript_witness(
                s.strategy.stale_id, full_transcripts[s.strategy.stale_id]);
    }

    // Dispute/settlement loop.
    while (budget_ok && !ctx.lg.is_terminated(ctx.instance)) {
        const msfe::MsfeState& st = prog->state();
        if (st.tt && st.id >= 1 && st.id <= s.executions &&
            st.tt->open_count() == static_cast<size_t>(s.n) &&
            !ctx.res.honest_outputs[static_cast<size_t>(st.id - 1)]) {
            ctx.res.honest_outputs[static_cast<size_t>(st.id - 1)] =
                msfe::reconstruct_output(st.tt->openings);
            ctx.res.adversary_learned[static_cast<size_t>(st.id - 1)] = true;
        }
        uint64_t ver = ctx.lg.state_version(ctx.instance);
        for (int j = 1; j <= s.n; ++j)
            if (auto w = drv[j].decide(st, ver, ctx.lg.now()))
                ctx.lg.queue_trigger(ctx.instance, j, *w);
        if (!ctx.tick()) break;
    }
    ctx.res.final_mode = msfe::mode_name(prog->state().mode);
    ctx.finish();
}

// --- cash-distribution runner ----------------------------------------------

struct MscdDriver {
    int j = 0;
    bool honest = true;
    bool plays_onchain = false;  // corrupt continuation for the corner case
    const Scenario* sc = nullptr;
    const mscd::MscdConfig* cfg = nullptr;
    crypto::SigKeyPair key;
    Rng rng{0};
    mscd::PartySecrets secrets;
    std::optional<int64_t> best_id;
    mscd::MscdTranscript best_tt;
    mscd::TvDescriptor best_tv;
    std::vector<Coin> best_b;
    std::vector<Bytes> best_sigs;
    bool wants_exit = false;
    bool install_intent = false;
    std::optional<Bytes> pending;
    std::set<std::pair<uint64_t, int>> done;

    bool acted(uint64_t ver, int rule) { return !done.insert({ver, rule}).second; }

    std::optional<Bytes> decide(const mscd::MscdState& st, uint64_t ver, Tick now) {
        using mscd::Mode;
        if (pending) {
            Bytes w = std::move(*pending);
            pending.reset();
            return w;
        }
        if (st.mode == Mode::Inactive) return std::nullopt;
        int64_t dl = st.t + static_cast<int64_t>(cfg->delta);
        size_t ji = static_cast<size_t>(j - 1);
        if (st.mode == Mode::Payout || st.mode == Mode::Abort) {
            if (st.live[ji] && static_cast<int64_t>(now) > dl && !acted(ver, 0))
                return mscd::encode_exit_witness();
            return std::nullopt;
        }
        bool have_longer_best =
            best_id && st.id == *best_id && best_tt.size() > st.tt.size();
        if (honest && best_id) {
            bool may_install = install_intent || st.id >= 0;
            if (may_install && (st.id < *best_id || have_longer_best) && !acted(ver, 1))
                return mscd::encode_transcript_witness(*best_id, best_tv, best_b, best_sigs,
                                                       best_tt);
        }
        if ((honest || plays_onchain) && st.mode == Mode::Exec && st.tv) {
            mscd::TranscriptValidator v(*st.tv, *cfg);
            uint32_t r = static_cast<uint32_t>(st.tt.size()) + 1;
            if (st.tt.size() < v.total_messages() && v.sender(r) == j && !have_longer_best &&
                !acted(ver, 2)) {
                uint32_t stage =
                    static_cast<uint32_t>(st.tt.size() / (2 * static_cast<size_t>(cfg->n))) + 1;
                Bytes input = party_input(*sc, j, st.id, stage, st.tv->input_len);
                auto m = mscd::next_message(v, st.id, st.tt, j, input, secrets, rng, key);
                if (m) return mscd::encode_message_witness(st.id, *m);
            }
            if (honest && st.tt.size() == v.total_messages() && !acted(ver, 3))
                return mscd::encode_exit_witness();
        }
        if ((st.mode == Mode::Exec || st.mode == Mode::Exit) && st.live[ji] &&
            static_cast<int64_t>(now) > dl && !acted(ver, 4))
            return mscd::encode_exit_witness();
        if (honest && st.mode == Mode::Init && wants_exit && !acted(ver, 5))
            return mscd::encode_exit_witness();
        return std::nullopt;
    }
};

void run_mscd(RunCtx& ctx) {
    const Scenario& s = ctx.s;
    Rng key_rng(mix(s.seed, 0x6b6579));
    mscd::MscdConfig cfg;
    cfg.n = s.n;
    cfg.q = s.q;
    cfg.delta = s.delta;
    cfg.delta_off = s.delta_off;
    std::vector<crypto::SigKeyPair> keys;
    for (int j = 0; j < s.n; ++j) keys.push_back(crypto::sig_keygen(key_rng));
    for (auto& k : keys) cfg.pks.push_back(k.pk);
    if (!cfg.valid()) throw std::logic_error("bad protocol config");

    auto prog_owned = std::make_unique<mscd::MscdProgram>(cfg);
    const mscd::MscdProgram* prog = prog_owned.get();
    std::map<ledger::PartyId, Coin> deposits;
    for (int j = 1; j <= s.n; ++j) deposits[j] = cfg.deposit();
    ctx.instance = ctx.lg.open_contract(std::move(prog_owned), deposits, ctx.lg.now() + 3);
    ctx.watch_triggers();

    bool silent = !s.corrupt.empty() && s.strategy.kind == Strategy::Kind::SilentForever;
    for (int j = 1; j <= s.n; ++j)
        if (!(silent && s.is_corrupt(j))) ctx.lg.fund(ctx.instance, j, cfg.deposit());
    ctx.tick();
    if (!ctx.lg.is_live(ctx.instance)) {
        while (!ctx.lg.is_live(ctx.instance) && ctx.lg.now() <= 5 && ctx.tick()) {
        }
        ctx.res.refunded = true;
        ctx.finish();
        return;
    }

    std::vector<MscdDriver> drv(static_cast<size_t>(s.n) + 1);
    for (int j = 1; j <= s.n; ++j) {
        drv[j].j = j;
        drv[j].honest = !s.is_corrupt(j);
        drv[j].plays_onchain = s.is_corrupt(j) && s.strategy.open_onchain;
        drv[j].sc = &s;
        drv[j].cfg = &cfg;
        drv[j].key = keys[static_cast<size_t>(j - 1)];
        drv[j].rng = Rng(mix(s.seed, 0x7061 + static_cast<uint64_t>(j)));
    }

    uint64_t last_ver = ctx.lg.state_version(ctx.instance);
    bool onchain = false;
    bool budget_ok = true;
    auto step_tick = [&]() {
        if (!ctx.tick()) {
            budget_ok = false;
            return true;
        }
        uint64_t v = ctx.lg.state_version(ctx.instance);
        if (v != last_ver) {
            last_ver = v;
            return true;
        }
        return false;
    };

    // Cash top-ups before the first execution.
    std::vector<Coin> agreed_b(static_cast<size_t>(s.n), 0);
    if (s.start_balance > 0) {
        for (int j = 1; j <= s.n && budget_ok && !onchain; ++j) {
            std::vector<Coin> b_new = agreed_b;
            b_new[static_cast<size_t>(j - 1)] += s.start_balance;
            Bytes payload = mscd::encode_update_sign_payload(j, b_new);
            std::vector<Bytes> sigs;
            for (int k = 1; k <= s.n; ++k)
                sigs.push_back(crypto::sig_sign(keys[static_cast<size_t>(k - 1)], payload));
            ctx.lg.queue_update(ctx.instance, j, mscd::encode_update_witness(b_new, sigs),
                                s.start_balance);
            if (!ctx.tick()) budget_ok = false;
            last_ver = ctx.lg.state_version(ctx.instance);
            agreed_b = b_new;
        }
    }

    auto abort_to_chain = [&](bool punish) {
        for (int j = 1; j <= s.n; ++j)
            if (drv[j].honest) {
                drv[j].wants_exit = true;
                drv[j].install_intent = punish || drv[j].best_id.has_value();
            }
    };

    std::map<int64_t, std::tuple<mscd::TvDescriptor, std::vector<Coin>, std::vector<Bytes>,
                                 mscd::MscdTranscript>>
        full_execs;

    for (int64_t id = 1; id <= s.executions && budget_ok && !onchain; ++id) {
        if (strat_hits(s, Strategy::Kind::PrematureExit, id)) {
            ctx.lg.queue_trigger(ctx.instance, s.corrupt[0], mscd::encode_exit_witness());
            abort_to_chain(false);
            step_tick();
            onchain = true;
            break;
        }
        mscd::TvDescriptor tv{"lottery", s.stages, 8};
        mscd::TranscriptValidator v(tv, cfg);
        Bytes payload = mscd::encode_exec_sign_payload(id, tv, agreed_b);
        std::vector<Bytes> sigs;
        for (int k = 1; k <= s.n; ++k)
            sigs.push_back(crypto::sig_sign(keys[static_cast<size_t>(k - 1)], payload));
        bool abort_params = strat_hits(s, Strategy::Kind::WithholdSignature, id);
        ctx.res.trace.record(
            {{"ev", "offchain"}, {"exec", id}, {"step", "params"}, {"abort", abort_params}});
        if (abort_params) {
            if (s.strategy.open_onchain)
                drv[s.corrupt[0]].pending =
                    mscd::encode_transcript_witness(id, tv, agreed_b, sigs, {});
            abort_to_chain(false);
            step_tick();
            onchain = true;
            break;
        }
        for (int j = 1; j <= s.n; ++j) {
            drv[j].best_id = id;
            drv[j].best_tt.clear();
            drv[j].best_tv = tv;
            drv[j].best_b = agreed_b;
            drv[j].best_sigs = sigs;
        }
        if (step_tick()) {
            onchain = true;
            break;
        }

        mscd::MscdTranscript tt;
        bool aborted_round = false;
        for (uint32_t r = 1; r <= v.total_messages() && budget_ok; ++r) {
            int sender = v.sender(r);
            if (s.is_corrupt(sender) && strat_hits(s, Strategy::Kind::AbortAtRound, id) &&
                s.strategy.round == r) {
                ctx.res.trace.record(
                    {{"ev", "offchain"}, {"exec", id}, {"round", r}, {"abort", true}});
                abort_to_chain(true);
                step_tick();
                aborted_round = true;
                break;
            }
            uint32_t stage =
                static_cast<uint32_t>((r - 1) / (2 * static_cast<uint32_t>(s.n))) + 1;
            Bytes input = party_input(s, sender, id, stage, tv.input_len);
            auto m = mscd::next_message(v, id, tt, sender, input, drv[sender].secrets,
                                        drv[sender].rng, drv[sender].key);
            if (!m) throw std::logic_error("next_message failed for the scheduled sender");
            tt.push_back(*m);
            for (int j = 1; j <= s.n; ++j) drv[j].best_tt = tt;
            if (step_tick()) {
                onchain = true;
                break;
            }
        }
        if (aborted_round || onchain) {
            onchain = true;
            break;
        }
        auto winners = v.stage_winners(tt, agreed_b);
        auto bal = v.replay_balances(tt, agreed_b);
        if (!winners || !bal) throw std::logic_error("complete transcript failed replay");
        Bytes out;
        for (size_t w : *winners) out.push_back(static_cast<uint8_t>(w));
        ctx.res.honest_outputs[static_cast<size_t>(id - 1)] = out;
        ctx.res.adversary_learned[static_cast<size_t>(id - 1)] = true;
        for (size_t w : *winners) ctx.res.stage_winners.push_back(w);
        agreed_b = *bal;
        full_execs[id] = {tv, drv[1].best_b, sigs, tt};
    }

    if (budget_ok && !onchain) {
        // Settlement: install the last complete transcript so claims replay
        // the final balances, then exit.
        for (int j = 1; j <= s.n; ++j)
            if (drv[j].honest) {
                drv[j].wants_exit = true;
                drv[j].install_intent = true;
                break;
            }
        if (!s.corrupt.empty() && s.strategy.kind == Strategy::Kind::ReplayStale &&
            full_execs.count(s.strategy.stale_id)) {
            auto& [tv0, b0, sg0, tt0] = full_execs[s.strategy.stale_id];
            drv[s.corrupt[0]].pending =
                mscd::encode_transcript_witness(s.strategy.stale_id, tv0, b0, sg0, tt0);
        }
    }

    while (budget_ok && !ctx.lg.is_terminated(ctx.instance)) {
        const mscd::MscdState& st = prog->state();
        uint64_t ver = ctx.lg.state_version(ctx.instance);
        for (int j = 1; j <= s.n; ++j)
            if (auto w = drv[j].decide(st, ver, ctx.lg.now()))
                ctx.lg.queue_trigger(ctx.instance, j, *w);
        if (!ctx.tick()) break;
    }

    const mscd::MscdState& st = prog->state();
    ctx.res.final_mode = mscd::mode_name(st.mode);
    if (st.mode == mscd::Mode::Abort || (st.tv && st.tt.size() <
                                         mscd::TranscriptValidator(*st.tv, cfg).total_messages()))
        ctx.res.aborter = prog->next_sender();
    if (st.tv && st.id >= 1 && st.id <= s.executions) {
        mscd::TranscriptValidator v(*st.tv, cfg);
        if (st.tt.size() == v.total_messages() &&
            !ctx.res.honest_outputs[static_cast<size_t>(st.id - 1)]) {
            auto winners = v.stage_winners(st.tt, st.b);
            auto bal = v.replay_balances(st.tt, st.b);
            if (winners && bal) {
                Bytes out;
                for (size_t w : *winners) out.push_back(static_cast<uint8_t>(w));
                ctx.res.honest_outputs[static_cast<size_t>(st.id - 1)] = out;
                ctx.res.adversary_learned[static_cast<size_t>(st.id - 1)] = true;
                for (size_t w : *winners) ctx.res.stage_winners.push_back(w);
                agreed_b = *bal;
            }
        }
    }
    ctx.res.final_balances = agreed_b;
    ctx.finish();
}

// --- duplex runner ----------------------------------------------------------

void run_duplex(RunCtx& ctx) {
    const Scenario& s = ctx.s;
    Rng key_rng(mix(s.seed, 0x6b6579));
    crypto::SigKeyPair k0 = crypto::sig_keygen(key_rng);
    crypto::SigKeyPair k1 = crypto::sig_keygen(key_rng);
    duplex::DuplexConfig cfg;
    cfg.window = s.duplex_window;
    cfg.pks = {k0.pk, k1.pk};

    auto prog_owned = std::make_unique<duplex::DuplexProgram>(cfg);
    const duplex::DuplexProgram* prog = prog_owned.get();
    ctx.instance = ctx.lg.open_contract(std::move(prog_owned), {}, ctx.lg.now() + 3);
    ctx.watch_triggers();

    ctx.lg.queue_trigger(ctx.instance, 1, duplex::encode_deposit_witness(), s.duplex_deposits[0]);
    ctx.lg.queue_trigger(ctx.instance, 2, duplex::encode_deposit_witness(), s.duplex_deposits[1]);
    ctx.tick();

    duplex::ChannelParty p0(0, k0, k1.pk), p1(1, k1, k0.pk);
    p0.set_deposits(s.duplex_deposits);
    p1.set_deposits(s.duplex_deposits);
    std::vector<std::pair<duplex::ChannelStateMsg, std::array<Bytes, 2>>> history;

    Rng pay_rng(mix(s.seed, 0xd09));
    for (int k = 0; k < s.payments; ++k) {
        int payer = static_cast<int>(pay_rng.below(2));
        duplex::ChannelParty& a = payer == 0 ? p0 : p1;
        duplex::ChannelParty& b = payer == 0 ? p1 : p0;
        int64_t net = a.latest().net;
        int64_t ent = static_cast<int64_t>(s.duplex_deposits[static_cast<size_t>(payer)]) +
                      (payer == 0 ? net : -net) -
                      static_cast<int64_t>(a.latest().withdrawals[static_cast<size_t>(payer)]);
        if (ent <= 0) continue;
        Coin amount = 1 + pay_rng.below(static_cast<uint64_t>(ent));
        auto prop = a.propose_pay(amount);
        if (!prop) throw std::logic_error("solvency-capped payment was refused");
        auto csig = b.on_proposal(prop->first, prop->second);
        if (!csig || !a.on_countersigned(prop->first, *csig))
            throw std::logic_error("channel payment handshake failed");
        std::array<Bytes, 2> sigs;
        sigs[static_cast<size_t>(payer)] = prop->second;
        sigs[static_cast<size_t>(1 - payer)] = *csig;
        history.push_back({prop->first, sigs});
        ctx.res.trace.record({{"ev", "channel_pay"},
                              {"payer", payer + 1},
                              {"amount", amount},
                              {"round", prop->first.r},
                              {"net", prop->first.net}});
    }
    ctx.res.duplex_final_net = p0.latest().net;
    for (int i = 0; i < 2; ++i) {
        int64_t net2 = (i == 0) ? p0.latest().net : -p0.latest().net;
        ctx.res.duplex_expected[static_cast<size_t>(i)] =
            static_cast<Coin>(static_cast<int64_t>(s.duplex_deposits[static_cast<size_t>(i)]) +
                              net2);
    }

    bool stale = !s.corrupt.empty() && s.strategy.kind == Strategy::Kind::StaleDuplexSubmit;
    int attacker = stale ? s.corrupt[0] : 0;
    if (stale) {
        ctx.lg.queue_trigger(ctx.instance, attacker, duplex::encode_trigger_witness());
        if (!history.empty()) {
            size_t idx = std::min(static_cast<size_t>(s.strategy.round), history.size() - 1);
            auto& [msg, sigs] = history[idx];
            ctx.lg.queue_trigger(ctx.instance, attacker,
                                 duplex::encode_update_witness(msg, sigs[0], sigs[1]));
        }
    } else {
        ctx.lg.queue_trigger(ctx.instance, 1, duplex::encode_trigger_witness());
    }

    std::array<bool, 2> sent_update{false, false}, withdrew{false, false};
    while (!ctx.lg.is_terminated(ctx.instance)) {
        const duplex::DuplexState& st = prog->state();
        for (int i = 0; i < 2; ++i) {
            int j = i + 1;
            bool honest = !s.is_corrupt(j);
            duplex::ChannelParty& p = i == 0 ? p0 : p1;
            if (honest && st.t1 && !sent_update[static_cast<size_t>(i)] &&
                st.best_round < p.latest().r) {
                if (auto w = p.update_witness()) ctx.lg.queue_trigger(ctx.instance, j, *w);
                sent_update[static_cast<size_t>(i)] = true;
            }
            if (st.t2 && ctx.lg.now() >= *st.t2 && !withdrew[static_cast<size_t>(i)]) {
                ctx.lg.queue_trigger(ctx.instance, j, duplex::encode_withdraw_witness());
                withdrew[static_cast<size_t>(i)] = true;
            }
        }
        if (!ctx.tick()) break;
    }
    ctx.res.duplex_withdrawn = prog->state().withdrawn;
    ctx.res.duplex_final_net = prog->state().net;
    ctx.res.final_mode = "duplex";
    ctx.finish();
}

}  // namespace

RunResult run_scenario(const Scenario& s) {
    std::string err;
    if (!s.valid(&err)) throw std::runtime_error("invalid scenario: " + err);
    RunResult res;
    res.trace.record({{"ev", "scenario"},
                      {"name", s.name},
                      {"protocol", protocol_name(s.protocol)},
                      {"n", s.n},
                      {"q", s.q},
                      {"seed", s.seed},
                      {"strategy", strategy_kind_name(s.strategy.kind)},
                      {"corrupt", s.corrupt}});
    RunCtx ctx(s, res);
    switch (s.protocol) {
        case Protocol::Msfe: run_msfe(ctx); break;
        case Protocol::Mscd: run_mscd(ctx); break;
        case Protocol::Duplex: run_duplex(ctx); break;
    }
    return res;
}

// --- Ideal-world oracle -----------------------------------------------------

namespace {

/// Lottery outputs and end-of-execution balances computed straight from the
/// agreed stage functions; shared ground truth for oracle and checker.
struct MscdIdeal {
    std::vector<Bytes> exec_outputs;          // winners per completed execution
    std::vector<std::vector<Coin>> balances;  // balances[e] = after execution e; [0] = start
};

MscdIdeal mscd_ideal_evolution(const Scenario& s, int64_t upto_exec) {
    MscdIdeal out;
    std::vector<Coin> bal(static_cast<size_t>(s.n), s.start_balance);
    out.balances.push_back(bal);
    for (int64_t e = 1; e <= upto_exec; ++e) {
        Bytes winners;
        for (uint32_t k = 1; k <= s.stages; ++k) {
            std::vector<Bytes> inputs;
            for (int j = 1; j <= s.n; ++j) inputs.push_back(party_input(s, j, e, k, 8));
            auto st = games::lottery_stage(inputs, bal);
            if (!st) throw std::logic_error("lottery stage guard failed in the ideal evolution");
            winners.push_back(static_cast<uint8_t>(st->winner));
            bal = st->balances;
        }
        out.exec_outputs.push_back(winners);
        out.balances.push_back(bal);
    }
    return out;
}

Bytes msfe_ideal_output(const Scenario& s, int64_t e) {
    std::vector<Bytes> inputs;
    for (int j = 1; j <= s.n; ++j) inputs.push_back(party_input(s, j, e, 1, s.output_len));
    return msfe::xor_function(s.output_len).eval(inputs);
}

}  // namespace

IdealOutcome ideal_oracle(const Scenario& s) {
    IdealOutcome out;
    out.honest_outputs.assign(static_cast<size_t>(std::max(s.executions, 0)), std::nullopt);
    using K = Strategy::Kind;
    K k = s.corrupt.empty() ? K::Honest : s.strategy.kind;
    int64_t e = s.strategy.exec_id;
    if (k == K::AbortAtStep && s.strategy.step == 2) k = K::WithholdSignature;
    if (k == K::AbortAtStep && s.strategy.step == 3) k = K::WithholdShare;
    if (e > s.executions &&
        (k == K::AbortAtStep || k == K::WithholdSignature || k == K::WithholdShare ||
         k == K::AbortAtRound || k == K::PrematureExit))
        k = K::Honest;

    auto honest_ids = [&]() {
        std::vector<int> h;
        for (int j = 1; j <= s.n; ++j)
            if (!s.is_corrupt(j)) h.push_back(j);
        return h;
    }();

    if (s.protocol == Protocol::Msfe) {
        int64_t completed = 0;  // executions whose output honest parties learn
        Coin bonus = 0;
        switch (k) {
            case K::Honest: completed = s.executions; break;
            case K::AbortAtStep:  // step 1
            case K::PrematureExit: completed = e - 1; break;
            case K::WithholdSignature: completed = s.strategy.open_onchain ? e : e - 1; break;
            case K::WithholdShare:
                completed = s.strategy.open_onchain ? e : e - 1;
                bonus = s.strategy.open_onchain ? 0 : s.q;
                break;
            case K::SilentForever: completed = 0; break;
            default: return out;  // no clean ideal counterpart
        }
        for (int64_t i = 1; i <= completed; ++i)
            out.honest_outputs[static_cast<size_t>(i - 1)] = msfe_ideal_output(s, i);
        for (int j : honest_ids) out.honest_wallets[j] = s.initial_wallet + bonus;
        out.mappable = true;
        return out;
    }

    if (s.protocol == Protocol::Mscd) {
        int64_t completed = 0;
        Coin bonus = 0;
        switch (k) {
            case K::Honest: completed = s.executions; break;
            case K::PrematureExit: completed = e - 1; break;
            case K::WithholdSignature: completed = s.strategy.open_onchain ? e : e - 1; break;
            case K::AbortAtRound: {
                // Fires only when the round's sender is corrupt.
                int sender = 1 + static_cast<int>((s.strategy.round - 1) % s.n);
                if (!s.is_corrupt(sender)) {
                    completed = s.executions;
                } else {
                    completed = e - 1;
                    bonus = s.q;
                }
                break;
            }
            case K::SilentForever: completed = 0; break;
            default: return out;
        }
        auto ev = mscd_ideal_evolution(s, completed);
        for (int64_t i = 1; i <= completed; ++i)
            out.honest_outputs[static_cast<size_t>(i - 1)] = ev.exec_outputs[static_cast<size_t>(i - 1)];
        const std::vector<Coin>& bal = ev.balances.back();
        for (int j : honest_ids) {
            if (k == K::SilentForever) {
                out.honest_wallets[j] = s.initial_wallet;
            } else {
                out.honest_wallets[j] = s.initial_wallet - s.start_balance + bonus +
                                        bal[static_cast<size_t>(j - 1)];
            }
        }
        out.mappable = true;
        return out;
    }
    return out;  // duplex has no Fig 5/6 counterpart
}

// --- Invariant checker ------------------------------------------------------

InvariantReport check_invariants(const Scenario& s, const RunResult& r) {
    InvariantReport rep;
    rep.check(r.coins_conserved, "coin conservation holds on every tick");
    rep.check(!r.budget_exhausted, "run finished within the tick budget");
    rep.check(r.terminated || r.refunded, "instance drained to zero or was refunded");

    // Honest no-loss floor. In the cash protocol coins legitimately move
    // between honest parties through the game, so the floor is the staked
    // amount; everything sharper is checked per strategy below.
    for (const auto& [j, po] : r.parties) {
        if (!po.honest) continue;
        Coin floor = po.initial;
        if (s.protocol == Protocol::Mscd) floor = po.initial - s.start_balance;
        if (s.protocol == Protocol::Duplex)
            floor = po.initial - s.duplex_deposits[static_cast<size_t>(j - 1)];
        rep.check(po.final_wallet >= floor,
                  "honest party " + std::to_string(j) + " lost no staked coins");
    }

    using K = Strategy::Kind;
    bool corrupted = !s.corrupt.empty();
    K k = corrupted ? s.strategy.kind : K::Honest;

    if (s.protocol == Protocol::Msfe) {
        if (k == K::Honest) {
            rep.check(r.accepted_triggers == static_cast<uint64_t>(s.n) + 1,
                      "optimistic run used exactly n+1 accepted triggers");
            rep.check(r.dispute_triggers == 0, "optimistic run had no dispute triggers");
        }
        bool post_share_abort = (k == K::WithholdShare ||
                                 (k == K::AbortAtStep && s.strategy.step == 3)) &&
                                !s.strategy.open_onchain && s.strategy.exec_id <= s.executions;
        if (post_share_abort && s.corrupt.size() == 1) {
            for (const auto& [j, po] : r.parties)
                if (po.honest)
                    rep.check(po.final_wallet == po.initial + s.q,
                              "honest party " + std::to_string(j) +
                                  " compensated exactly +q after post-share abort");
        }
    }

    if (s.protocol == Protocol::Mscd) {
        if (k == K::Honest && r.final_balances.size() == static_cast<size_t>(s.n)) {
            for (const auto& [j, po] : r.parties)
                rep.check(po.final_wallet ==
                              po.initial - s.start_balance +
                                  r.final_balances[static_cast<size_t>(j - 1)],
                          "party " + std::to_string(j) +
                              " settled exactly at its final game balance");
        }
        if (r.final_mode == "abort" && r.aborter != 0)
            rep.check(s.is_corrupt(r.aborter), "the blamed aborter is corrupt");
        if (k == K::AbortAtRound && s.strategy.exec_id <= s.executions &&
            s.is_corrupt(1 + static_cast<int>((s.strategy.round - 1) % s.n))) {
            auto ev = mscd_ideal_evolution(s, s.strategy.exec_id - 1);
            const std::vector<Coin>& bal = ev.balances.back();
            for (const auto& [j, po] : r.parties)
                if (po.honest)
                    rep.check(po.final_wallet == po.initial + s.q - s.start_balance +
                                                     bal[static_cast<size_t>(j - 1)],
                              "honest party " + std::to_string(j) +
                                  " got exactly q plus its entitled balance");
        }
    }

    if (s.protocol == Protocol::Duplex) {
        rep.check(r.duplex_withdrawn[0] == r.duplex_expected[0] &&
                      r.duplex_withdrawn[1] == r.duplex_expected[1],
                  "final withdrawals equal deposits adjusted by the last co-signed net");
        rep.check(r.duplex_withdrawn[0] + r.duplex_withdrawn[1] ==
                      s.duplex_deposits[0] + s.duplex_deposits[1],
                  "withdrawals sum to total deposits");
        for (const auto& [j, po] : r.parties)
            if (po.honest)
                rep.check(po.final_wallet ==
                              po.initial - s.duplex_deposits[static_cast<size_t>(j - 1)] +
                                  r.duplex_expected[static_cast<size_t>(j - 1)],
                          "honest party " + std::to_string(j) + " got exactly its channel split");
        for (int j : s.corrupt)
            rep.check(r.parties.at(j).final_wallet ==
                          s.initial_wallet - s.duplex_deposits[static_cast<size_t>(j - 1)] +
                              r.duplex_expected[static_cast<size_t>(j - 1)],
                      "stale submitter gained nothing over its entitled split");
    }
    return rep;
}

// --- Sweep grids ------------------------------------------------------------

std::vector<Strategy> strategy_grid(Protocol p, int n, int executions, uint32_t stages,
                                    int max_abort_points) {
    std::vector<Strategy> g;
    using K = Strategy::Kind;
    auto add = [&](Strategy st) { g.push_back(st); };
    add({});
    if (p == Protocol::Msfe) {
        for (int64_t e = 1; e <= executions; ++e) {
            add({K::AbortAtStep, e, 1, 1, 1, false});
            add({K::WithholdSignature, e, 2, 1, 1, false});
            add({K::WithholdSignature, e, 2, 1, 1, true});
            add({K::WithholdShare, e, 3, 1, 1, false});
            add({K::WithholdShare, e, 3, 1, 1, true});
            add({K::PrematureExit, e, 1, 1, 1, false});
        }
        if (executions >= 2) add({K::ReplayStale, 1, 1, 1, 1, false});
        add({K::SilentForever, 1, 1, 1, 1, false});
    } else if (p == Protocol::Mscd) {
        uint32_t rounds = 2 * static_cast<uint32_t>(n) * stages;
        for (int64_t e = 1; e <= executions; ++e) {
            add({K::WithholdSignature, e, 2, 1, 1, false});
            add({K::WithholdSignature, e, 2, 1, 1, true});
            int added = 0;
            for (uint32_t r = 1; r <= rounds && added < max_abort_points; ++r, ++added)
                add({K::AbortAtRound, e, 0, r, 1, false});
            add({K::PrematureExit, e, 1, 1, 1, false});
        }
        if (executions >= 2) add({K::ReplayStale, 1, 1, 1, 1, false});
        add({K::SilentForever, 1, 1, 1, 1, false});
    } else {
        for (int i = 0; i < max_abort_points; ++i)
            add({K::StaleDuplexSubmit, 1, 1, static_cast<uint32_t>(i), 1, false});
    }
    return g;
}

std::vector<int> default_corrupt_for(const Strategy& st, int n) {
    using K = Strategy::Kind;
    switch (st.kind) {
        case K::Honest: return {};
        case K::AbortAtRound: return {1 + static_cast<int>((st.round - 1) % n)};
        case K::StaleDuplexSubmit: return {2};
        default: return {1};
    }
}

}  // namespace statechan::sim
