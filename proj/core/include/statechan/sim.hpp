#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "statechan/ledger.hpp"
#include "statechan/trace.hpp"

namespace statechan::sim {

using ledger::Coin;
using ledger::PartyId;
using ledger::Tick;

enum class Protocol { Msfe, Mscd, Duplex };
const char* protocol_name(Protocol p);
std::optional<Protocol> protocol_from_name(const std::string& s);

/// What the corrupt coalition does. Strategies control only corrupt parties'
/// own emissions and trigger timing; they cannot forge honest signatures.
struct Strategy {
    enum class Kind {
        Honest,
        AbortAtStep,        // stop at step 1/2/3 of execution exec_id (sfe)
        WithholdShare,      // alias: AbortAtStep(exec_id, 3)
        WithholdSignature,  // alias: AbortAtStep(exec_id, 2); cash: skip the
                            // parameter-agreement signature
        AbortAtRound,       // cash: go silent at reactive round `round`
        ReplayStale,        // at settlement, install execution stale_id
        PrematureExit,      // submit exit just before execution exec_id
        StaleDuplexSubmit,  // trigger, then install the state at round `round`
        SilentForever,      // never deposit
    };
    Kind kind = Kind::Honest;
    int64_t exec_id = 1;
    int step = 3;
    uint32_t round = 1;
    int64_t stale_id = 1;
    /// After withholding off-chain, continue the execution on-chain (the
    /// corner case where the coalition holds signatures the honest side
    /// lacks, or recovers its share on-chain to dodge the penalty).
    bool open_onchain = false;
};

const char* strategy_kind_name(Strategy::Kind k);
std::optional<Strategy::Kind> strategy_kind_from_name(const std::string& s);

struct Scenario {
    std::string name = "scenario";
    Protocol protocol = Protocol::Msfe;
    int n = 2;
    Coin q = 2;           // penalty/collateral unit (sfe, cash)
    Tick delta = 4;       // on-chain response window
    Tick delta_off = 2;   // off-chain per-round deadline
    Tick duplex_window = 8;
    std::vector<int> corrupt;
    Strategy strategy;
    uint64_t seed = 1;
    Tick max_ticks = 100000;
    int executions = 1;
    size_t output_len = 8;    // sfe output bytes
    uint32_t stages = 1;      // cash: commit-reveal stages per execution
    Coin start_balance = 0;   // cash: per-party top-up before execution 1
    int payments = 0;         // duplex: random payment count
    std::array<Coin, 2> duplex_deposits{0, 0};
    Coin initial_wallet = 1000;
    bool aggregate_sigs = false;

    bool is_corrupt(int j) const;
    bool valid(std::string* err = nullptr) const;
};

struct PartyOutcome {
    Coin initial = 0;
    Coin final_wallet = 0;
    bool honest = true;
};

struct RunResult {
    Trace trace;
    std::map<PartyId, PartyOutcome> parties;
    /// Per execution, the output honest parties learned (nullopt = never).
    std::vector<std::optional<Bytes>> honest_outputs;
    std::vector<bool> adversary_learned;
    bool terminated = false;       // instance reached escrow 0
    bool refunded = false;         // funding failed, deposits returned
    bool budget_exhausted = false;
    bool coins_conserved = true;
    uint64_t accepted_triggers = 0;
    uint64_t dispute_triggers = 0;  // accepted non-exit triggers
    std::string final_mode;
    PartyId aborter = 0;  // cash: blamed party when mode ended in abort
    std::vector<Coin> final_balances;   // cash: last agreed balances
    std::vector<size_t> stage_winners;  // cash: winners of completed stages
    int64_t duplex_final_net = 0;
    std::array<Coin, 2> duplex_withdrawn{0, 0};
    std::array<Coin, 2> duplex_expected{0, 0};
};

RunResult run_scenario(const Scenario& s);

struct InvariantReport {
    bool ok = true;
    std::vector<std::string> passed;
    std::vector<std::string> failed;

    void check(bool cond, const std::string& what) {
        (cond ? passed : failed).push_back(what);
        ok = ok && cond;
    }
};

/// Protocol-level security properties evaluated on a finished run: honest
/// no-loss, exact compensation, conservation and drain, single-aborter and
/// turn soundness, duplex final-split correctness.
InvariantReport check_invariants(const Scenario& s, const RunResult& r);

struct IdealOutcome {
    bool mappable = false;
    std::map<PartyId, Coin> honest_wallets;
    std::vector<std::optional<Bytes>> honest_outputs;
};

/// Expected honest outcomes computed directly from the ideal-functionality
/// rules, with no protocol machinery; nullopt mapping when the strategy has
/// no clean ideal counterpart.
IdealOutcome ideal_oracle(const Scenario& s);

/// The deterministic input party j uses in execution `exec`, stage `stage`;
/// shared by the runner and the ideal oracle.
Bytes party_input(const Scenario& s, int j, int64_t exec, uint32_t stage, size_t len);

/// All strategies exercised by sweeps for the given protocol/size.
std::vector<Strategy> strategy_grid(Protocol p, int n, int executions, uint32_t stages,
                                    int max_abort_points);
/// Corrupt set a given strategy needs (e.g. the round's sender).
std::vector<int> default_corrupt_for(const Strategy& st, int n);

}  // namespace statechan::sim
