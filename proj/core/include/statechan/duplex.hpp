#pragma once

#include <array>
#include <optional>

#include "statechan/crypto.hpp"
#include "statechan/ledger.hpp"

namespace statechan::duplex {

using ledger::Coin;
using ledger::PartyId;
using ledger::Tick;

struct DuplexConfig {
    Tick window = 10;  // finalization window T2 - T1
    std::array<crypto::GroupElement, 2> pks;
};

/// Off-chain co-signed channel state. Positive net moves coins to party 1
/// (index 0); withdrawals are cumulative approved amounts.
struct ChannelStateMsg {
    int64_t r = -1;
    int64_t net = 0;
    std::array<Coin, 2> withdrawals{0, 0};

    bool operator==(const ChannelStateMsg& o) const {
        return r == o.r && net == o.net && withdrawals == o.withdrawals;
    }
};

Bytes encode_channel_state(const ChannelStateMsg& s);

struct DuplexState {
    std::array<Coin, 2> deposits{0, 0};
    int64_t net = 0;
    int64_t best_round = -1;
    std::array<Coin, 2> withdrawals{0, 0};
    std::array<Coin, 2> withdrawn{0, 0};
    std::optional<Tick> t1, t2;
};

// Witnesses: 0 = deposit (coins attached), 1 = update (msg + both sigs),
// 2 = trigger, 3 = withdraw.
Bytes encode_deposit_witness();
Bytes encode_update_witness(const ChannelStateMsg& s, const Bytes& sig0, const Bytes& sig1);
Bytes encode_trigger_witness();
Bytes encode_withdraw_witness();

class DuplexProgram : public ledger::ContractProgram {
public:
    explicit DuplexProgram(DuplexConfig cfg);

    std::optional<ledger::StepResult> on_trigger(PartyId j, const Bytes& witness, Tick t,
                                                 Coin attached) override;
    Bytes state_snapshot() const override;
    std::string state_summary() const override;

    const DuplexState& state() const { return st_; }
    const DuplexConfig& config() const { return cfg_; }
    /// Final entitlement deposits[i] +/- net; throws if a co-signed state is
    /// insolvent (unreachable under the honest signing policy).
    Coin entitlement(int i) const;

private:
    DuplexConfig cfg_;
    DuplexState st_;
};

// --- Party-side logic -------------------------------------------------------

/// One endpoint of the channel. Tracks the latest co-signed state and
/// enforces the honest signing policy: monotone rounds, solvency on both
/// sides, monotone withdrawal approvals, and never countersigning a state
/// that moves net against us.
class ChannelParty {
public:
    ChannelParty(int index, crypto::SigKeyPair key, crypto::GroupElement peer_pk);

    void set_deposits(std::array<Coin, 2> deposits) { deposits_ = deposits; }

    const ChannelStateMsg& latest() const { return latest_; }
    bool has_cosigned() const { return latest_.r >= 0; }

    /// Pay `amount` to the peer: proposes (r+1, net -/+ amount, withdrawals).
    std::optional<std::pair<ChannelStateMsg, Bytes>> propose_pay(Coin amount);
    /// Ask approval to incrementally withdraw `amount` more on-chain.
    std::optional<std::pair<ChannelStateMsg, Bytes>> propose_withdrawal(Coin amount);
    /// Re-issue own intended state at r+2 after conflicting r+1 proposals;
    /// used by the lower-index resolver.
    std::optional<std::pair<ChannelStateMsg, Bytes>> reissue(const ChannelStateMsg& intended);

    /// Peer's proposal; returns our signature iff the policy accepts it, in
    /// which case the state becomes our latest co-signed state.
    std::optional<Bytes> on_proposal(const ChannelStateMsg& s, const Bytes& peer_sig);
    /// Peer accepted our proposal.
    bool on_countersigned(const ChannelStateMsg& s, const Bytes& peer_sig);

    /// Witness installing the latest co-signed state on-chain.
    std::optional<Bytes> update_witness() const;

private:
    bool solvent(const ChannelStateMsg& s) const;
    int64_t signed_net(int i, int64_t net) const { return i == 0 ? net : -net; }

    int index_;
    crypto::SigKeyPair key_;
    crypto::GroupElement peer_pk_;
    std::array<Coin, 2> deposits_{0, 0};
    ChannelStateMsg latest_;
    std::array<Bytes, 2> latest_sigs_;
    ChannelStateMsg pending_;
    Bytes pending_sig_;
    int64_t last_signed_r_ = -1;
};

}  // namespace statechan::duplex
