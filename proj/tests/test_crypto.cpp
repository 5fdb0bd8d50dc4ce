#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "statechan/crypto.hpp"

using namespace statechan;
using namespace statechan::crypto;

static Bytes hex(const char* s) {
    auto b = from_hex(s);
    REQUIRE(b);
    return *b;
}

TEST_CASE("sha256 matches the FIPS 180 test vector") {
    CHECK(to_hex(sha256(to_bytes("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(to_hex(sha256({})) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("commitments open only with the exact message and randomness") {
    Rng rng(1);
    Opening o{rng.bytes(16), rng.bytes(kCommitRandLen)};
    Bytes com = commit(o);
    CHECK(verify_open(o, com));
    Opening bad = o;
    bad.message[0] ^= 1;
    CHECK(!verify_open(bad, com));
    bad = o;
    bad.randomness[31] ^= 1;
    CHECK(!verify_open(bad, com));
}

TEST_CASE("group arithmetic basics") {
    auto g = GroupElement::generator();
    auto two = Scalar::from_u64(2);
    CHECK(g.add(g) == g.mul(two));
    CHECK(g.mul(Scalar::zero()).is_identity());
    auto a = Scalar::from_u64(5), b = Scalar::from_u64(7);
    CHECK(g.mul(a).add(g.mul(b)) == g.mul(a.add(b)));
    auto parsed = GroupElement::from_bytes(g.data);
    REQUIRE(parsed);
    CHECK(*parsed == g);
    Bytes off = g.data;
    off[10] ^= 1;
    CHECK(!GroupElement::from_bytes(off));
}

TEST_CASE("schnorr signatures verify and reject tampering") {
    Rng rng(42);
    auto key = sig_keygen(rng);
    Bytes m = to_bytes("settlement payload");
    Bytes sig = sig_sign(key, m);
    CHECK(sig_verify(key.pk, m, sig));
    CHECK(sig == sig_sign(key, m));  // deterministic nonce
    CHECK(!sig_verify(key.pk, to_bytes("settlement payloae"), sig));
    Bytes bad = sig;
    bad[40] ^= 1;
    CHECK(!sig_verify(key.pk, m, bad));
    auto other = sig_keygen(rng);
    CHECK(!sig_verify(other.pk, m, sig));
}

TEST_CASE("aggregated multisignature verifies against the master key") {
    Rng rng(7);
    auto mk = multi_keygen(4, rng);
    Bytes m = to_bytes("joint statement");
    std::vector<std::optional<Scalar>> shares(mk.shares.begin(), mk.shares.end());
    auto sig = multi_sign(m, shares, mk.pk_master);
    REQUIRE(sig);
    CHECK(multi_verify(mk.pk_master, m, *sig));
    CHECK(sig_verify(mk.pk_master, m, *sig));  // same verification equation
    shares[2] = std::nullopt;
    CHECK(!multi_sign(m, shares, mk.pk_master));
    Bytes bad = *sig;
    bad[35] ^= 1;
    CHECK(!multi_verify(mk.pk_master, m, bad));
    CHECK(!multi_verify(mk.share_pks[0], m, *sig));
}

// Golden vector produced by tests/oracles/nizk_vector.py (independent
// pure-Python implementation of the same curve and hash rules).
TEST_CASE("dlog-equality proof matches the independently generated vector") {
    auto g = GroupElement::generator();
    auto h = hash_to_curve(to_bytes("nizk-golden-h"));
    CHECK(to_hex(h.data) == "02481226082e5d4a1f0dd1a674bca06b9fe0d489ca468190a46f5cb8546de70de3");

    Scalar x = Scalar::from_bytes_mod_order(sha256(to_bytes("nizk-golden-x")));
    Scalar k = Scalar::from_bytes_mod_order(sha256(to_bytes("nizk-golden-k")));
    CHECK(to_hex(x.be) == "1143c6268518d0f0cc8a3d3ebd6b6d3b4449e0df19715d684c8f83d6bdf2dc4a");

    auto proof = nizk_prove_with_nonce(x, g, h, k);
    REQUIRE(proof);
    CHECK(to_hex(g.mul(x).data) ==
          "034e05ab3fdf7fbdadf156a1c9480d413b869a2c8d6a33bd11a8db5c2b8580cebc");
    CHECK(to_hex(h.mul(x).data) ==
          "02824eb6cd31020e9d48cd7e4e0a98e782c2bd9c5b8f61274ca47acbeaf3e26b99");
    CHECK(to_hex(proof->kx.data) ==
          "03fac832cbfbf033ada2755d56fd9a6fa61b65312c7158f839973151d1c8ab37a4");
    CHECK(to_hex(proof->ky.data) ==
          "034d75719acff0e9f3030aa921f76372936d30eb0f75985b2c73af994bc5d4e83a");
    CHECK(to_hex(nizk_challenge(proof->kx, proof->ky).be) ==
          "39d7d951966623c29cdfafa1e6a66b65c7f842b51d93139de2e6d80060a894e1");
    CHECK(to_hex(proof->s.be) ==
          "f0b0a71631a48353a219a1e0a9fb9b2facef50c5890a97921ffc188b45c9d8bf");
    CHECK(nizk_verify(g, h, g.mul(x), h.mul(x), *proof));
}

TEST_CASE("dlog-equality completeness: 1000 of 1000 verify") {
    Rng rng(99);
    auto g = GroupElement::generator();
    auto h = hash_to_curve(to_bytes("completeness-h"));
    int good = 0;
    for (int i = 0; i < 1000; ++i) {
        Scalar x = Scalar::random(rng);
        auto proof = nizk_prove(x, g, h, rng);
        REQUIRE(proof);
        if (nizk_verify(g, h, g.mul(x), h.mul(x), *proof)) ++good;
    }
    CHECK(good == 1000);
}

TEST_CASE("dlog-equality soundness: 0 of 1000 mutations verify") {
    Rng rng(100);
    auto g = GroupElement::generator();
    auto h = hash_to_curve(to_bytes("soundness-h"));
    int accepted = 0;
    for (int i = 0; i < 1000; ++i) {
        Scalar x = Scalar::random(rng);
        auto proof = nizk_prove(x, g, h, rng);
        REQUIRE(proof);
        auto gx = g.mul(x);
        auto hx = h.mul(x);
        switch (i % 5) {
            case 0:  // claim a different statement
                gx = g.mul(Scalar::random(rng));
                break;
            case 1:
                hx = h.mul(Scalar::random(rng));
                break;
            case 2:
                proof->s = Scalar::random(rng);
                break;
            case 3:
                proof->kx = g.mul(Scalar::random(rng));
                break;
            case 4:
                proof->ky = h.mul(Scalar::random(rng));
                break;
        }
        if (nizk_verify(g, h, gx, hx, *proof)) ++accepted;
    }
    CHECK(accepted == 0);
}

TEST_CASE("nizk verify rejects identity and off-curve points") {
    Rng rng(5);
    auto g = GroupElement::generator();
    auto h = hash_to_curve(to_bytes("reject-h"));
    Scalar x = Scalar::random(rng);
    auto proof = nizk_prove(x, g, h, rng);
    REQUIRE(proof);
    CHECK(!nizk_verify(g, h, GroupElement::identity(), h.mul(x), *proof));
    auto mangled = *proof;
    mangled.kx = GroupElement::identity();
    CHECK(!nizk_verify(g, h, g.mul(x), h.mul(x), mangled));
}

TEST_CASE("hash_to_curve is deterministic and never the identity") {
    auto a = hash_to_curve(to_bytes("label"));
    auto b = hash_to_curve(to_bytes("label"));
    auto c = hash_to_curve(to_bytes("other"));
    CHECK(a == b);
    CHECK(!(a == c));
    CHECK(!a.is_identity());
    (void)hex;
}
