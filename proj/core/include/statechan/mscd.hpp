#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "statechan/crypto.hpp"
#include "statechan/ledger.hpp"
#include "statechan/rng.hpp"

namespace statechan::mscd {

using ledger::Coin;
using ledger::PartyId;
using ledger::Tick;

struct MscdConfig {
    int n = 0;
    Coin q = 0;      // collateral unit; deposit (n-1)q per party
    Tick delta = 0;  // on-chain response window
    Tick delta_off = 1;
    std::vector<crypto::GroupElement> pks;

    Coin deposit() const { return static_cast<Coin>(n - 1) * q; }
    Coin pot() const { return static_cast<Coin>(n) * deposit(); }
    bool valid() const;
};

/// Canonical description of the agreed reactive function; signed at parameter
/// agreement and installed on-chain, where the contract rebuilds the
/// transcript validator from it.
struct TvDescriptor {
    std::string kind;       // "lottery" is the one built-in function
    uint32_t stages = 0;    // commit-reveal stages per execution
    uint32_t input_len = 8; // bytes per party input

    Bytes encode() const;
    static std::optional<TvDescriptor> decode(const Bytes& b);
    bool operator==(const TvDescriptor& o) const {
        return kind == o.kind && stages == o.stages && input_len == o.input_len;
    }
};

struct SignedMsg {
    Bytes msg;  // encode_msg(id, round, payload)
    Bytes sig;
    bool operator==(const SignedMsg& o) const { return msg == o.msg && sig == o.sig; }
};
using MscdTranscript = std::vector<SignedMsg>;

// --- Canonical encodings ----------------------------------------------------

Bytes encode_msg(int64_t id, uint32_t round, const Bytes& payload);
struct DecodedMsg {
    int64_t id = 0;
    uint32_t round = 0;
    Bytes payload;
};
std::optional<DecodedMsg> decode_msg(const Bytes& m);

Bytes encode_reveal_payload(const crypto::Opening& o);
std::optional<crypto::Opening> decode_reveal_payload(const Bytes& p, size_t input_len);

/// Signing payload for the per-execution agreement (id, tv, b).
Bytes encode_exec_sign_payload(int64_t id, const TvDescriptor& tv, const std::vector<Coin>& b);
/// Signing payload for a cash top-up agreement (j, b').
Bytes encode_update_sign_payload(PartyId j, const std::vector<Coin>& b_new);

Bytes encode_exit_witness();
Bytes encode_transcript_witness(int64_t id, const TvDescriptor& tv, const std::vector<Coin>& b,
                                const std::vector<Bytes>& sigs, const MscdTranscript& tt);
Bytes encode_message_witness(int64_t id, const SignedMsg& m);
Bytes encode_update_witness(const std::vector<Coin>& b_new, const std::vector<Bytes>& sigs);

// --- Transcript validation --------------------------------------------------

/// Deterministic product of the reactive function and the execution's
/// starting balances. A stage is n commit rounds then n reveal rounds, sender
/// of round r being party 1 + (r-1 mod n); reveals must open the commitment
/// the same sender made n rounds earlier.
class TranscriptValidator {
public:
    TranscriptValidator(TvDescriptor d, MscdConfig cfg);

    const TvDescriptor& descriptor() const { return d_; }
    size_t total_messages() const { return static_cast<size_t>(d_.stages) * 2 * cfg_.n; }
    PartyId sender(uint32_t round) const { return 1 + static_cast<int>((round - 1) % cfg_.n); }
    bool is_commit_round(uint32_t round) const {
        return (round - 1) % (2 * static_cast<uint32_t>(cfg_.n)) < static_cast<uint32_t>(cfg_.n);
    }

    /// Whole-prefix check: every message well-formed, in-turn, signed, and
    /// consistent with the stage guards given starting balances b0.
    bool validate(const MscdTranscript& tt, int64_t id, const std::vector<Coin>& b0) const;

    /// Balances after the completed stages of a valid transcript.
    std::optional<std::vector<Coin>> replay_balances(const MscdTranscript& tt,
                                                     const std::vector<Coin>& b0) const;
    /// 0-based winner of each completed stage (lottery).
    std::optional<std::vector<size_t>> stage_winners(const MscdTranscript& tt,
                                                     const std::vector<Coin>& b0) const;

private:
    bool walk(const MscdTranscript& tt, int64_t id, const std::vector<Coin>& b0,
              std::vector<Coin>* final_bal, std::vector<size_t>* winners) const;

    TvDescriptor d_;
    MscdConfig cfg_;
};

// --- Contract program -------------------------------------------------------

enum class Mode { Init, Exec, Exit, Payout, Abort, Inactive };
const char* mode_name(Mode m);

struct MscdState {
    Mode mode = Mode::Init;
    int64_t id = -1;
    MscdTranscript tt;
    int64_t t = -1;
    std::vector<bool> live;
    std::optional<TvDescriptor> tv;
    std::vector<Coin> b;  // execution-start balances installed with tv
    std::vector<Coin> B;  // cumulative per-party cash credits
};

class MscdProgram : public ledger::ContractProgram {
public:
    explicit MscdProgram(MscdConfig cfg);

    std::optional<ledger::StepResult> on_trigger(PartyId j, const Bytes& witness, Tick t,
                                                 Coin attached) override;
    bool supports_updates() const override { return true; }
    bool on_update(PartyId j, const Bytes& u, Coin amount, Tick t) override;
    Bytes state_snapshot() const override;
    std::string state_summary() const override;

    const MscdState& state() const { return st_; }
    const MscdConfig& config() const { return cfg_; }
    /// Who would be blamed for an abort claimed against the current state.
    PartyId next_sender() const { return 1 + static_cast<int>(st_.tt.size()) % cfg_.n; }
    Coin cash(PartyId j) const;

private:
    MscdConfig cfg_;
    MscdState st_;
};

// --- Party-side next-message function ---------------------------------------

/// Openings a party has committed to, keyed by commitment digest, so a reveal
/// can answer any of its own commitments whichever transcript they ended up
/// in.
struct PartySecrets {
    std::map<Bytes, crypto::Opening> openings;
};

/// Party j's next message extending tt. Commit rounds draw fresh randomness
/// and remember the opening; reveal rounds look up the opening of j's own
/// commitment n rounds back. nullopt if it is not j's turn, the transcript is
/// complete, or the opening is unknown.
std::optional<SignedMsg> next_message(const TranscriptValidator& tv, int64_t id,
                                      const MscdTranscript& tt, PartyId j, const Bytes& input,
                                      PartySecrets& secrets, Rng& rng,
                                      const crypto::SigKeyPair& key);

}  // namespace statechan::mscd
