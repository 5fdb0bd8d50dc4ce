#include "statechan/games.hpp"

namespace statechan::games {

std::optional<LotteryOutcome> lottery_stage(const std::vector<Bytes>& revealed,
                                            const std::vector<Coin>& balances) {
    size_t n = balances.size();
    if (revealed.size() != n || n == 0) return std::nullopt;
    for (Coin b : balances)
        if (b < 1) return std::nullopt;
    Bytes acc;
    for (const Bytes& y : revealed) acc = xor_bytes(acc, y);
    // Interpret the XOR as a big-endian integer mod n. Inputs are uniform
    // strings, so for the 8-byte inputs the parties use the residue bias is
    // negligible against the 3-sigma fairness check.
    uint64_t v = 0;
    for (uint8_t byte : acc) v = (v * 256 + byte) % n;
    LotteryOutcome out;
    out.winner = static_cast<size_t>(v);
    out.balances = balances;
    for (size_t j = 0; j < n; ++j) {
        if (j == out.winner)
            out.balances[j] += static_cast<Coin>(n - 1);
        else
            out.balances[j] -= 1;
    }
    return out;
}

Coin lottery_penalty_unit(int n) { return static_cast<Coin>(n - 1); }

Coin lottery_deposit(int n) {
    return static_cast<Coin>(n - 1) * lottery_penalty_unit(n);
}

const std::vector<DeckCard>& standard_deck() {
    static const std::vector<DeckCard> deck = [] {
        static const char* ranks[] = {"2", "3",  "4", "5", "6", "7", "8",
                                      "9", "10", "J", "Q", "K", "A"};
        static const char* suits[] = {"clubs", "diamonds", "hearts", "spades"};
        std::vector<DeckCard> d;
        for (const char* suit : suits)
            for (const char* rank : ranks) {
                std::string name = std::string(rank) + "-" + suit;
                d.push_back({name, crypto::hash_to_curve(to_bytes("card:" + name))});
            }
        return d;
    }();
    return deck;
}

bool card_draw_verify(const crypto::GroupElement& deck_element, const crypto::GroupElement& mask_pk,
                      const crypto::GroupElement& unmask_share, const crypto::DlogEqProof& proof) {
    return crypto::nizk_verify(crypto::GroupElement::generator(), deck_element, mask_pk,
                               unmask_share, proof);
}

}  // namespace statechan::games
