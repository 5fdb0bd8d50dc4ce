#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "statechan/games.hpp"

using namespace statechan;
using namespace statechan::games;

TEST_CASE("lottery winner is the XOR of inputs reduced mod n") {
    // XOR = 01 ^ 03 ^ 03 = 01 -> winner index 1 % 3 = 1: party 2 gains 2,
    // the other two pay 1 each.
    std::vector<Bytes> revealed{{0x01}, {0x03}, {0x03}};
    auto out = lottery_stage(revealed, {5, 5, 5});
    REQUIRE(out);
    CHECK(out->winner == 1);
    CHECK(out->balances == std::vector<Coin>{4, 7, 4});

    // Multi-byte values reduce big-endian: 0x0100 = 256, 256 % 3 = 1.
    out = lottery_stage({{0x01, 0x00}, {0x00, 0x00}, {0x00, 0x00}}, {5, 5, 5});
    REQUIRE(out);
    CHECK(out->winner == 1);

    out = lottery_stage({{0x00}, {0x00}, {0x00}}, {1, 1, 1});
    REQUIRE(out);
    CHECK(out->winner == 0);
    CHECK(out->balances == std::vector<Coin>{3, 0, 0});
}

TEST_CASE("lottery stage requires every party to hold the 1-coin stake") {
    CHECK(!lottery_stage({{0x01}, {0x02}}, {3, 0}));
    CHECK(lottery_stage({{0x01}, {0x02}}, {3, 1}));
}

TEST_CASE("conservation: each stage moves coins but never creates them") {
    Rng rng(9);
    std::vector<Coin> bal{10, 10, 10, 10};
    for (int round = 0; round < 50; ++round) {
        std::vector<Bytes> revealed;
        for (int j = 0; j < 4; ++j) revealed.push_back(rng.bytes(8));
        auto out = lottery_stage(revealed, bal);
        if (!out) break;  // a party ran out of stake, stage legitimately refused
        bal = out->balances;
        Coin sum = 0;
        for (Coin c : bal) sum += c;
        CHECK(sum == 40);
    }
}

TEST_CASE("lottery collateral formula is (n-1)^2") {
    for (int n = 2; n <= 8; ++n) {
        CHECK(lottery_penalty_unit(n) == static_cast<Coin>(n - 1));
        CHECK(lottery_deposit(n) == static_cast<Coin>(n - 1) * static_cast<Coin>(n - 1));
    }
}

TEST_CASE("the deck has 52 distinct named curve points") {
    const auto& deck = standard_deck();
    REQUIRE(deck.size() == 52);
    std::set<std::string> names;
    std::set<Bytes> points;
    for (const auto& c : deck) {
        names.insert(c.name);
        points.insert(c.point.data);
        CHECK(!c.point.is_identity());
        CHECK(crypto::GroupElement::from_bytes(c.point.data).has_value());
    }
    CHECK(names.size() == 52);
    CHECK(points.size() == 52);
    // Deterministic across calls.
    CHECK(standard_deck()[17].point == deck[17].point);
}

TEST_CASE("card draw shares verify exactly when honestly unmasked") {
    Rng rng(13);
    const auto& deck = standard_deck();
    auto g = crypto::GroupElement::generator();
    crypto::Scalar x = crypto::Scalar::random(rng);
    auto mask_pk = g.mul(x);

    const auto& card = deck[31].point;
    auto share = card.mul(x);
    auto proof = crypto::nizk_prove(x, g, card, rng);
    REQUIRE(proof);
    CHECK(card_draw_verify(card, mask_pk, share, *proof));
    // A share for a different card fails against this card.
    CHECK(!card_draw_verify(card, mask_pk, deck[30].point.mul(x), *proof));
    // A proof for a different secret fails.
    auto other = crypto::nizk_prove(crypto::Scalar::random(rng), g, card, rng);
    REQUIRE(other);
    CHECK(!card_draw_verify(card, mask_pk, share, *other));
}
