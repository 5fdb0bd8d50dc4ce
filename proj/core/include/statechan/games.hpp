#pragma once

#include <optional>
#include <vector>

#include "statechan/crypto.hpp"
#include "statechan/ledger.hpp"

namespace statechan::games {

using ledger::Coin;

// ---------------------------------------------------------------------------
// Repeated lottery stage: XOR the revealed inputs, reduce mod n; the winner
// gains n-1 coins, everyone else loses one.

struct LotteryOutcome {
    size_t winner = 0;  // 0-based
    std::vector<Coin> balances;
};

/// nullopt iff some balance is below the 1-coin stake.
std::optional<LotteryOutcome> lottery_stage(const std::vector<Bytes>& revealed,
                                            const std::vector<Coin>& balances);

/// Collateral per party for the repeated lottery: q = n-1, deposit (n-1)q.
Coin lottery_deposit(int n);
Coin lottery_penalty_unit(int n);

// ---------------------------------------------------------------------------
// Single-card draw demo: a fixed 52-card deck of group elements, with each
// party's unmask share checked by the discrete-log-equality NIZK.

struct DeckCard {
    std::string name;
    crypto::GroupElement point;
};

/// 52 fixed encodings derived by hash-to-curve from the card names.
const std::vector<DeckCard>& standard_deck();

/// Checks that Y_i is deck_element raised to the same secret as X_i = x_i*G.
bool card_draw_verify(const crypto::GroupElement& deck_element, const crypto::GroupElement& mask_pk,
                      const crypto::GroupElement& unmask_share, const crypto::DlogEqProof& proof);

}  // namespace statechan::games
