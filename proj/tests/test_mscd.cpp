#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "statechan/mscd.hpp"

using namespace statechan;
using namespace statechan::mscd;

namespace {

struct Fixture {
    MscdConfig cfg;
    std::vector<crypto::SigKeyPair> keys;
    std::vector<PartySecrets> secrets;
    std::vector<Rng> rngs;
    TvDescriptor tv{"lottery", 1, 8};

    explicit Fixture(int n = 3, Coin q = 6, uint32_t stages = 1) {
        cfg.n = n;
        cfg.q = q;
        cfg.delta = 4;
        Rng rng(31);
        for (int j = 0; j < n; ++j) {
            keys.push_back(crypto::sig_keygen(rng));
            cfg.pks.push_back(keys.back().pk);
            rngs.push_back(rng.fork(static_cast<uint64_t>(j)));
        }
        secrets.resize(static_cast<size_t>(n));
        tv.stages = stages;
        REQUIRE(cfg.valid());
    }

    Bytes input(PartyId j, uint32_t round) {
        Bytes b(tv.input_len, 0);
        b[0] = static_cast<uint8_t>(j);
        b[1] = static_cast<uint8_t>(round);
        return b;
    }

    /// Builds the first `len` messages of execution `id` honestly.
    MscdTranscript play(int64_t id, size_t len) {
        TranscriptValidator v(tv, cfg);
        MscdTranscript tt;
        for (size_t i = 0; i < len; ++i) {
            uint32_t r = static_cast<uint32_t>(i) + 1;
            PartyId s = v.sender(r);
            uint32_t stage = (r - 1) / (2 * static_cast<uint32_t>(cfg.n)) + 1;
            auto m = next_message(v, id, tt, s, input(s, stage), secrets[s - 1], rngs[s - 1],
                                  keys[s - 1]);
            REQUIRE(m);
            tt.push_back(*m);
        }
        return tt;
    }

    std::vector<Bytes> sign_exec(int64_t id, const std::vector<Coin>& b) {
        Bytes payload = encode_exec_sign_payload(id, tv, b);
        std::vector<Bytes> sigs;
        for (const auto& k : keys) sigs.push_back(crypto::sig_sign(k, payload));
        return sigs;
    }

    std::vector<Bytes> sign_update(PartyId j, const std::vector<Coin>& b_new) {
        Bytes payload = encode_update_sign_payload(j, b_new);
        std::vector<Bytes> sigs;
        for (const auto& k : keys) sigs.push_back(crypto::sig_sign(k, payload));
        return sigs;
    }
};

}  // namespace

TEST_CASE("descriptor codec accepts only known functions and sane sizes") {
    TvDescriptor tv{"lottery", 3, 8};
    auto rt = TvDescriptor::decode(tv.encode());
    REQUIRE(rt);
    CHECK(*rt == tv);
    CHECK(!TvDescriptor::decode(TvDescriptor{"poker", 1, 8}.encode()));
    CHECK(!TvDescriptor::decode(TvDescriptor{"lottery", 0, 8}.encode()));
    CHECK(!TvDescriptor::decode(TvDescriptor{"lottery", 1, 65}.encode()));
}

TEST_CASE("validator accepts the honest transcript and replays balances") {
    Fixture f(3, 6, 2);
    std::vector<Coin> b0{4, 4, 4};
    auto tt = f.play(1, 12);  // 2 stages * 2 * 3
    TranscriptValidator v(f.tv, f.cfg);
    CHECK(v.validate(tt, 1, b0));
    auto bal = v.replay_balances(tt, b0);
    auto winners = v.stage_winners(tt, b0);
    REQUIRE(bal);
    REQUIRE(winners);
    CHECK(winners->size() == 2);
    Coin sum = 0;
    for (Coin c : *bal) sum += c;
    CHECK(sum == 12);  // lottery only moves coins around
    // Winner of each stage gained n-1, everyone else paid 1.
    for (size_t k = 0; k < 3; ++k) CHECK((*bal)[k] >= 2);
}

TEST_CASE("validator rejects tampering, wrong turns and wrong ids") {
    Fixture f;
    std::vector<Coin> b0{4, 4, 4};
    auto tt = f.play(1, 6);
    TranscriptValidator v(f.tv, f.cfg);
    REQUIRE(v.validate(tt, 1, b0));
    CHECK(!v.validate(tt, 2, b0));

    auto bad = tt;
    bad[2].sig[5] ^= 1;
    CHECK(!v.validate(bad, 1, b0));

    bad = tt;
    std::swap(bad[0], bad[1]);  // out of turn
    CHECK(!v.validate(bad, 1, b0));

    bad = tt;
    bad[4] = tt[3];  // reveal does not open the right commitment
    CHECK(!v.validate(bad, 1, b0));

    // Stage guard: a party without the 1-coin stake blocks the whole stage.
    CHECK(!v.validate(tt, 1, {4, 0, 4}));
}

TEST_CASE("next_message only talks in turn and remembers its openings") {
    Fixture f;
    auto tt = f.play(1, 2);
    TranscriptValidator v(f.tv, f.cfg);
    // Round 3 belongs to party 3.
    CHECK(!next_message(v, 1, tt, 1, f.input(1, 1), f.secrets[0], f.rngs[0], f.keys[0]));
    // A reveal by a party that never committed fails.
    auto tt5 = f.play(1, 3);
    PartySecrets empty;
    CHECK(!next_message(v, 1, tt5, 1, f.input(1, 1), empty, f.rngs[0], f.keys[0]));
}

TEST_CASE("cash top-ups verify the agreed vector and block replays") {
    Fixture f;
    MscdProgram prog(f.cfg);
    std::vector<Coin> b1{5, 0, 0};
    Bytes u1 = encode_update_witness(b1, f.sign_update(1, b1));
    CHECK(prog.on_update(1, u1, 5, 1));
    CHECK(prog.state().B == std::vector<Coin>{5, 0, 0});
    // Replay: sum(b') must equal amount + sum(B), which no longer holds.
    CHECK(!prog.on_update(1, u1, 5, 2));
    std::vector<Coin> b2{5, 3, 0};
    Bytes u2 = encode_update_witness(b2, f.sign_update(2, b2));
    CHECK(!prog.on_update(2, u2, 2, 3));  // wrong amount for the delta
    CHECK(prog.on_update(2, u2, 3, 3));
    CHECK(prog.state().B == std::vector<Coin>{5, 3, 0});
    Bytes bad = u2;
    bad[20] ^= 1;
    CHECK(!prog.on_update(2, bad, 3, 4));
}

TEST_CASE("transcript install, strict renewal window, message extension") {
    Fixture f;
    MscdProgram prog(f.cfg);
    std::vector<Coin> b0{4, 4, 4};
    auto sigs = f.sign_exec(1, b0);
    auto tt2 = f.play(1, 2);
    REQUIRE(prog.on_trigger(1, encode_transcript_witness(1, f.tv, b0, sigs, tt2), 5, 0));
    CHECK(prog.state().mode == Mode::Exec);
    CHECK(prog.state().tt.size() == 2);

    // Longer transcript, same id: accepted strictly before t + delta.
    auto tt4 = f.play(1, 4);
    Bytes w4 = encode_transcript_witness(1, f.tv, b0, sigs, tt4);
    CHECK(!prog.on_trigger(2, w4, 9, 0));  // 9 == 5 + delta, too late
    REQUIRE(prog.on_trigger(2, w4, 8, 0));
    CHECK(prog.state().tt.size() == 4);
    // Shorter or equal transcript rejected.
    CHECK(!prog.on_trigger(3, encode_transcript_witness(1, f.tv, b0, sigs, tt2), 9, 0));

    // Single-message extension resets the response clock.
    TranscriptValidator v(f.tv, f.cfg);
    auto m5 = next_message(v, 1, tt4, 2, f.input(2, 1), f.secrets[1], f.rngs[1], f.keys[1]);
    REQUIRE(m5);
    REQUIRE(prog.on_trigger(2, encode_message_witness(1, *m5), 11, 0));
    CHECK(prog.state().tt.size() == 5);
    CHECK(prog.state().t == 11);
}

TEST_CASE("abort splits the pot exactly as in the worked example") {
    // n=3, q=6, balances (10, 4, 4), transcript stops after P1's commit, so
    // the blamed party is P2. P1 claims 3*6+10 = 28, P3 claims 3*6+4 = 22,
    // and P2 keeps only its game balance of 4: total 54 = pot 36 + cash 18.
    Fixture f;
    MscdProgram prog(f.cfg);
    std::vector<Coin> b0{10, 4, 4};
    auto tt1 = f.play(1, 1);
    REQUIRE(prog.on_trigger(1, encode_transcript_witness(1, f.tv, b0, f.sign_exec(1, b0), tt1), 5,
                            0));
    CHECK(prog.next_sender() == 2);

    CHECK(!prog.on_trigger(1, encode_exit_witness(), 9, 0));   // window still open
    CHECK(!prog.on_trigger(2, encode_exit_witness(), 10, 0));  // the blamed party cannot claim
    auto r1 = prog.on_trigger(1, encode_exit_witness(), 10, 0);
    REQUIRE(r1);
    CHECK(r1->payout == 28);
    REQUIRE(r1->extra_payouts.size() == 1);
    CHECK(r1->extra_payouts[0] == std::make_pair(ledger::PartyId{2}, Coin{4}));
    CHECK(prog.state().mode == Mode::Abort);

    auto r3 = prog.on_trigger(3, encode_exit_witness(), 11, 0);
    REQUIRE(r3);
    CHECK(r3->payout == 22);
    CHECK(r3->extra_payouts.empty());
    CHECK(prog.state().mode == Mode::Inactive);
    CHECK(28 + 22 + 4 == 54);
}

TEST_CASE("payout replays the installed transcript for the cash split") {
    Fixture f;
    MscdProgram prog(f.cfg);
    std::vector<Coin> b0{4, 4, 4};
    auto tt = f.play(1, 6);
    REQUIRE(prog.on_trigger(1, encode_transcript_witness(1, f.tv, b0, f.sign_exec(1, b0), tt), 5,
                            0));
    TranscriptValidator v(f.tv, f.cfg);
    auto bal = v.replay_balances(tt, b0);
    REQUIRE(bal);

    REQUIRE(prog.on_trigger(1, encode_exit_witness(), 6, 0));  // complete => exit
    CHECK(prog.state().mode == Mode::Exit);
    Coin total = 0;
    for (int j = 1; j <= 3; ++j) {
        auto r = prog.on_trigger(j, encode_exit_witness(), 11, 0);
        REQUIRE(r);
        CHECK(r->payout == 12 + (*bal)[static_cast<size_t>(j - 1)]);
        total += r->payout;
    }
    CHECK(total == 36 + 12);
    CHECK(prog.state().mode == Mode::Inactive);
}

TEST_CASE("without an installed transcript, payout falls back to the credited cash") {
    Fixture f;
    MscdProgram prog(f.cfg);
    std::vector<Coin> b1{0, 7, 0};
    REQUIRE(prog.on_update(2, encode_update_witness(b1, f.sign_update(2, b1)), 7, 1));
    REQUIRE(prog.on_trigger(1, encode_exit_witness(), 2, 0));  // exit from init
    auto r2 = prog.on_trigger(2, encode_exit_witness(), 7, 0);
    REQUIRE(r2);
    CHECK(r2->payout == 12 + 7);
    auto r1 = prog.on_trigger(1, encode_exit_witness(), 7, 0);
    REQUIRE(r1);
    CHECK(r1->payout == 12);
}

TEST_CASE("message extensions are confined to a running dispute") {
    Fixture f;
    MscdProgram prog(f.cfg);
    TranscriptValidator v(f.tv, f.cfg);
    auto m1 = next_message(v, 1, {}, 1, f.input(1, 1), f.secrets[0], f.rngs[0], f.keys[0]);
    REQUIRE(m1);
    // Init mode: no extension without an installed execution.
    CHECK(!prog.on_trigger(1, encode_message_witness(1, *m1), 3, 0));
    std::vector<Coin> b0{4, 4, 4};
    REQUIRE(prog.on_trigger(1, encode_transcript_witness(1, f.tv, b0, f.sign_exec(1, b0), {}), 5,
                            0));
    REQUIRE(prog.on_trigger(1, encode_message_witness(1, *m1), 6, 0));
    CHECK(prog.state().tt.size() == 1);
    // Wrong id rejected.
    CHECK(!prog.on_trigger(2, encode_message_witness(2, *m1), 7, 0));
}
