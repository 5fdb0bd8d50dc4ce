#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "statechan/bytes.hpp"
#include "statechan/trace.hpp"

namespace statechan::ledger {

using Tick = uint64_t;
using Coin = uint64_t;
using PartyId = int;  // 1..n

/// Coin arithmetic aborts the run on wrap instead of silently overflowing.
inline Coin coin_add(Coin a, Coin b) {
    Coin r = a + b;
    if (r < a) throw std::runtime_error("coin amount overflow");
    return r;
}
inline Coin coin_sub(Coin a, Coin b) {
    if (b > a) throw std::runtime_error("coin amount underflow");
    return a - b;
}

/// Outcome of an accepted trigger: the payout e to the triggering party,
/// coins absorbed into escrow from the trigger's attached amount, and any
/// side payouts the transition mandates for other parties.
struct StepResult {
    Coin payout = 0;
    Coin absorb = 0;
    std::vector<std::pair<PartyId, Coin>> extra_payouts;
};

/// A contract program hosted on the ledger: Prog plus, where supported, the
/// Update validation function. State is owned by the program; the ledger only
/// sees serialized snapshots.
class ContractProgram {
public:
    virtual ~ContractProgram() = default;

    /// Prog(j, w, t; st). nullopt means the trigger is invalid (silently
    /// rejected, no state change).
    virtual std::optional<StepResult> on_trigger(PartyId j, const Bytes& witness, Tick t,
                                                Coin attached) = 0;

    virtual bool supports_updates() const { return false; }
    /// Update(j, u, t; st); true absorbs coins(b) into escrow.
    virtual bool on_update(PartyId, const Bytes&, Coin, Tick) { return false; }

    virtual Bytes state_snapshot() const = 0;
    virtual std::string state_summary() const = 0;  // human-readable, for traces
};

struct LedgerEvent {
    uint64_t seq = 0;  // state version, increments per accepted trigger/update
    int instance = 0;
    PartyId origin = 0;
    Bytes witness;
    Tick time = 0;
    Bytes new_state;
    Coin payout = 0;
    std::vector<std::pair<PartyId, Coin>> extra_payouts;
    bool is_update = false;
    Coin update_amount = 0;
};

enum class DepositError { None, WrongDepositAmount, DuplicateDeposit, NotPending };
enum class SubmitError { None, InstanceTerminated, UpdatesNotSupported, UnknownInstance };

/// Deterministic simulated blockchain: discrete ticks, per-party wallets,
/// contract escrows, fair round-robin trigger processing, and state-change
/// notifications to subscribers.
class Ledger {
public:
    Ledger(int n_parties, Coin initial_wallet, Trace* trace = nullptr);

    int n_parties() const { return n_; }
    Tick now() const { return now_; }
    Coin wallet(PartyId j) const { return wallets_.at(j); }
    void credit_wallet(PartyId j, Coin amount);  // scenario setup only

    /// Opens a funding round. The instance goes live when every party has
    /// deposited exactly its required amount; if the deadline passes first,
    /// all received deposits are refunded and the instance is dead.
    int open_contract(std::unique_ptr<ContractProgram> program,
                      std::map<PartyId, Coin> required_deposits, Tick deadline);
    DepositError fund(int instance, PartyId j, Coin amount);

    SubmitError queue_trigger(int instance, PartyId j, Bytes witness, Coin attached = 0);
    SubmitError queue_update(int instance, PartyId j, Bytes update_witness, Coin amount);

    void subscribe(int instance, PartyId j, std::function<void(const LedgerEvent&)> cb);

    /// Advances time by one tick, then processes every item queued during
    /// earlier ticks in round-robin order over parties (start offset
    /// tick mod n, FIFO within a party), then delivers events.
    Tick advance_tick();

    bool is_live(int instance) const;
    bool is_terminated(int instance) const;
    Coin escrow(int instance) const;
    uint64_t state_version(int instance) const;
    const ContractProgram* program(int instance) const;
    ContractProgram* program(int instance);

    /// Sum of wallets, escrows and pending funding pools; constant across a
    /// run (checked by the conservation invariant).
    Coin total_coins() const;

private:
    enum class Phase { Pending, Live, Terminated, Refunded };

    struct Instance {
        std::unique_ptr<ContractProgram> program;
        Phase phase = Phase::Pending;
        std::map<PartyId, Coin> required;
        std::map<PartyId, Coin> received;
        Tick funding_deadline = 0;
        Coin escrow = 0;
        Tick created_at = 0;
        uint64_t version = 0;
        std::map<PartyId, std::function<void(const LedgerEvent&)>> subscribers;
    };

    struct QueueItem {
        int instance;
        Bytes witness;
        Coin attached = 0;
        bool is_update = false;
        Coin update_amount = 0;
    };

    void maybe_go_live(int id);
    void process_item(PartyId j, const QueueItem& item, std::vector<LedgerEvent>& events);
    void trace_record(nlohmann::ordered_json e);

    int n_;
    Tick now_ = 0;
    std::map<PartyId, Coin> wallets_;
    std::vector<Instance> instances_;
    std::map<PartyId, std::deque<QueueItem>> queues_;
    Trace* trace_;
};

}  // namespace statechan::ledger
