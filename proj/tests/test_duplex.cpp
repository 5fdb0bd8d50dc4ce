#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "statechan/duplex.hpp"

using namespace statechan;
using namespace statechan::duplex;

namespace {

struct Fixture {
    Rng rng{17};
    crypto::SigKeyPair k0, k1;
    DuplexProgram prog;

    Fixture()
        : k0(crypto::sig_keygen(rng)),
          k1(crypto::sig_keygen(rng)),
          prog(DuplexConfig{10, {k0.pk, k1.pk}}) {}

    Bytes cosigned(const ChannelStateMsg& s) {
        Bytes enc = encode_channel_state(s);
        return encode_update_witness(s, crypto::sig_sign(k0, enc), crypto::sig_sign(k1, enc));
    }

    void fund(Coin d0 = 10, Coin d1 = 10) {
        REQUIRE(prog.on_trigger(1, encode_deposit_witness(), 1, d0));
        REQUIRE(prog.on_trigger(2, encode_deposit_witness(), 1, d1));
    }
};

}  // namespace

TEST_CASE("deposits accumulate until the channel is triggered") {
    Fixture f;
    f.fund();
    CHECK(f.prog.state().deposits == std::array<Coin, 2>{10, 10});
    REQUIRE(f.prog.on_trigger(2, encode_trigger_witness(), 5, 0));
    CHECK(*f.prog.state().t1 == 5);
    CHECK(*f.prog.state().t2 == 15);
    CHECK(!f.prog.on_trigger(1, encode_deposit_witness(), 6, 3));  // too late
    CHECK(!f.prog.on_trigger(1, encode_trigger_witness(), 6, 0));  // already triggered
    CHECK(!f.prog.on_trigger(3, encode_trigger_witness(), 6, 0));  // not a member
}

TEST_CASE("updates need both signatures and a strictly higher round") {
    Fixture f;
    f.fund();
    ChannelStateMsg s{2, 3, {0, 0}};
    REQUIRE(f.prog.on_trigger(1, f.cosigned(s), 3, 0));
    CHECK(f.prog.state().best_round == 2);
    CHECK(f.prog.state().net == 3);

    ChannelStateMsg stale{1, -5, {0, 0}};
    CHECK(!f.prog.on_trigger(2, f.cosigned(stale), 4, 0));
    ChannelStateMsg same{2, -5, {0, 0}};
    CHECK(!f.prog.on_trigger(2, f.cosigned(same), 4, 0));

    ChannelStateMsg s3{3, 4, {0, 0}};
    Bytes enc = encode_channel_state(s3);
    Bytes good0 = crypto::sig_sign(f.k0, enc);
    Bytes bad1 = crypto::sig_sign(f.k0, enc);  // wrong signer for slot 1
    CHECK(!f.prog.on_trigger(1, encode_update_witness(s3, good0, bad1), 4, 0));
    CHECK(f.prog.state().net == 3);

    // Window: trigger at 5 -> T2 = 15; round 4 lands at 14, round 5 at 15 is late.
    REQUIRE(f.prog.on_trigger(1, encode_trigger_witness(), 5, 0));
    REQUIRE(f.prog.on_trigger(1, f.cosigned({4, 1, {0, 0}}), 14, 0));
    CHECK(!f.prog.on_trigger(1, f.cosigned({5, 9, {0, 0}}), 15, 0));
    CHECK(f.prog.state().net == 1);
}

TEST_CASE("incremental withdrawals pay only the newly approved amount") {
    Fixture f;
    f.fund();
    REQUIRE(f.prog.on_trigger(1, f.cosigned({1, 0, {4, 0}}), 3, 0));
    auto r = f.prog.on_trigger(1, encode_withdraw_witness(), 4, 0);
    REQUIRE(r);
    CHECK(r->payout == 4);
    r = f.prog.on_trigger(1, encode_withdraw_witness(), 5, 0);
    REQUIRE(r);
    CHECK(r->payout == 0);  // nothing newly approved
    REQUIRE(f.prog.on_trigger(1, f.cosigned({2, 0, {7, 2}}), 6, 0));
    r = f.prog.on_trigger(1, encode_withdraw_witness(), 7, 0);
    REQUIRE(r);
    CHECK(r->payout == 3);
    r = f.prog.on_trigger(2, encode_withdraw_witness(), 7, 0);
    REQUIRE(r);
    CHECK(r->payout == 2);
}

TEST_CASE("final settlement pays deposits shifted by net, minus prior withdrawals") {
    Fixture f;
    f.fund();
    REQUIRE(f.prog.on_trigger(1, f.cosigned({1, 3, {2, 0}}), 3, 0));
    auto r = f.prog.on_trigger(1, encode_withdraw_witness(), 4, 0);
    REQUIRE(r);
    CHECK(r->payout == 2);
    REQUIRE(f.prog.on_trigger(2, encode_trigger_witness(), 5, 0));
    r = f.prog.on_trigger(1, encode_withdraw_witness(), 15, 0);
    REQUIRE(r);
    CHECK(r->payout == 11);  // 10 + 3 - 2 already taken
    r = f.prog.on_trigger(2, encode_withdraw_witness(), 15, 0);
    REQUIRE(r);
    CHECK(r->payout == 7);  // 10 - 3
    r = f.prog.on_trigger(1, encode_withdraw_witness(), 16, 0);
    REQUIRE(r);
    CHECK(r->payout == 0);
}

TEST_CASE("an insolvent co-signed state cannot settle") {
    Fixture f;
    f.fund();
    REQUIRE(f.prog.on_trigger(1, f.cosigned({1, -11, {0, 0}}), 3, 0));
    REQUIRE(f.prog.on_trigger(1, encode_trigger_witness(), 4, 0));
    CHECK_THROWS(f.prog.on_trigger(1, encode_withdraw_witness(), 14, 0));
}

TEST_CASE("honest payment handshake converges and settles exactly") {
    Fixture f;
    ChannelParty a(0, f.k0, f.k1.pk), b(1, f.k1, f.k0.pk);
    a.set_deposits({10, 10});
    b.set_deposits({10, 10});
    f.fund();

    // a pays 3, then b pays 1 back: net = -3 + 1 = -2.
    auto p = a.propose_pay(3);
    REQUIRE(p);
    auto sb = b.on_proposal(p->first, p->second);
    REQUIRE(sb);
    REQUIRE(a.on_countersigned(p->first, *sb));
    p = b.propose_pay(1);
    REQUIRE(p);
    auto sa = a.on_proposal(p->first, p->second);
    REQUIRE(sa);
    REQUIRE(b.on_countersigned(p->first, *sa));
    CHECK(a.latest() == b.latest());
    CHECK(a.latest().net == -2);

    auto w = a.update_witness();
    REQUIRE(w);
    REQUIRE(f.prog.on_trigger(1, *w, 3, 0));
    REQUIRE(f.prog.on_trigger(1, encode_trigger_witness(), 4, 0));
    CHECK(f.prog.entitlement(0) == 8);
    CHECK(f.prog.entitlement(1) == 12);
}

TEST_CASE("the signing policy refuses losing or regressing states") {
    Fixture f;
    ChannelParty a(0, f.k0, f.k1.pk), b(1, f.k1, f.k0.pk);
    a.set_deposits({10, 10});
    b.set_deposits({10, 10});

    auto p = a.propose_pay(3);
    REQUIRE(p);
    auto sb = b.on_proposal(p->first, p->second);
    REQUIRE(sb);
    REQUIRE(a.on_countersigned(p->first, *sb));
    CHECK(!b.on_proposal(p->first, p->second));  // replay of a seen round

    // A forged state moving net toward the signer is refused by the victim.
    ChannelStateMsg grab = a.latest();
    grab.r += 1;
    grab.net = 5;  // favors a; b must refuse
    CHECK(!b.on_proposal(grab, crypto::sig_sign(f.k0, encode_channel_state(grab))));

    // Stale round refused.
    ChannelStateMsg stale = a.latest();
    CHECK(!b.on_proposal(stale, crypto::sig_sign(f.k0, encode_channel_state(stale))));

    // Shrinking withdrawal approvals refused.
    auto w = b.propose_withdrawal(4);
    REQUIRE(w);
    auto saw = a.on_proposal(w->first, w->second);
    REQUIRE(saw);
    REQUIRE(b.on_countersigned(w->first, *saw));
    ChannelStateMsg shrink = b.latest();
    shrink.r += 1;
    shrink.withdrawals[1] = 0;
    CHECK(!a.on_proposal(shrink, crypto::sig_sign(f.k1, encode_channel_state(shrink))));

    // Overdrawing the channel is refused at proposal time.
    CHECK(!a.propose_pay(50));
    // Bad peer signature refused.
    ChannelStateMsg ok = b.latest();
    ok.r += 1;
    CHECK(!a.on_proposal(ok, crypto::sig_sign(f.k1, encode_channel_state(b.latest()))));
}
