#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "statechan/crypto.hpp"
#include "statechan/ledger.hpp"
#include "statechan/rng.hpp"

namespace statechan::msfe {

using ledger::Coin;
using ledger::PartyId;
using ledger::Tick;

struct MsfeConfig {
    int n = 0;
    Coin q = 0;               // penalty unit
    Tick delta = 0;           // on-chain response window
    Tick delta_off = 1;       // off-chain per-message window
    std::vector<crypto::GroupElement> pks;  // pks[j-1] is party j's key
    bool aggregate_sigs = false;
    crypto::GroupElement pk_master;  // set when aggregate_sigs

    Coin deposit() const { return static_cast<Coin>(n - 1) * q; }
    Coin pot() const { return static_cast<Coin>(n) * deposit(); }
    /// q must divide evenly under every possible abort denominator.
    bool valid() const;
};

/// lcm(1, ..., n); the divisibility requirement on q.
Coin lcm_up_to(int n);

struct MsfeTranscript {
    std::vector<std::optional<crypto::Opening>> openings;  // X, size n
    std::vector<Bytes> commitments;                        // h, n entries of 32 bytes
    std::vector<Bytes> sigs;  // n signatures on (id, h); one aggregate sig if enabled

    size_t open_count() const {
        return static_cast<size_t>(
            std::count_if(openings.begin(), openings.end(), [](auto& o) { return o.has_value(); }));
    }
};

enum class Mode { Init, Exec, Exit, Payout, Abort, Inactive };
const char* mode_name(Mode m);

struct MsfeState {
    Mode mode = Mode::Init;
    int64_t id = -1;
    std::optional<MsfeTranscript> tt;
    int64_t t = -1;
    std::vector<bool> live;  // L
};

// Canonical byte encodings (shared signing payload and ledger witnesses).
Bytes encode_sign_payload(int64_t id, const std::vector<Bytes>& commitments);
Bytes encode_exit_witness();
Bytes encode_transcript_witness(int64_t id, const MsfeTranscript& tt);

struct DecodedWitness {
    bool is_exit = false;
    int64_t id = 0;
    MsfeTranscript tt;
};
std::optional<DecodedWitness> decode_witness(const Bytes& w, int n);

/// The contract program: Fig-10-style pred + Prog + penalty accounting.
class MsfeProgram : public ledger::ContractProgram {
public:
    explicit MsfeProgram(MsfeConfig cfg);

    bool pred(PartyId j, int64_t id, const MsfeTranscript& tt, Tick t) const;

    std::optional<ledger::StepResult> on_trigger(PartyId j, const Bytes& witness, Tick t,
                                                 Coin attached) override;
    Bytes state_snapshot() const override;
    std::string state_summary() const override;

    const MsfeState& state() const { return st_; }
    const MsfeConfig& config() const { return cfg_; }

private:
    bool transcript_authentic(int64_t id, const MsfeTranscript& tt) const;

    MsfeConfig cfg_;
    MsfeState st_;
};

// ---------------------------------------------------------------------------
// Trusted dealer oracle standing in for the MPC step: evaluates g, XOR-shares
// the output, commits each share.

struct SfeFunction {
    size_t output_len = 0;
    std::function<Bytes(const std::vector<Bytes>&)> eval;
};

/// XOR of all inputs, padded to output_len.
SfeFunction xor_function(size_t output_len);

struct DealerOutput {
    Bytes output;                           // z
    std::vector<crypto::Opening> openings;  // x_j = (z_j; w_j), one per party
    std::vector<Bytes> commitments;         // h
};

DealerOutput dealer_execute(const SfeFunction& g, const std::vector<Bytes>& inputs, Rng& rng);

/// Recombine shares into the output; nullopt unless all n present.
std::optional<Bytes> reconstruct_output(const std::vector<std::optional<crypto::Opening>>& x);

}  // namespace statechan::msfe
