#include "statechan/mscd.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "statechan/codec.hpp"
#include "statechan/games.hpp"

namespace statechan::mscd {

bool MscdConfig::valid() const {
    return n >= 2 && q >= 1 && delta >= 2 && delta_off >= 1 &&
           static_cast<int>(pks.size()) == n;
}

Bytes TvDescriptor::encode() const {
    Encoder e;
    e.u8('V');
    e.bytes(to_bytes(kind));
    e.u32(stages);
    e.u32(input_len);
    return e.take();
}

std::optional<TvDescriptor> TvDescriptor::decode(const Bytes& b) {
    Decoder d(b);
    if (d.u8() != 'V') return std::nullopt;
    TvDescriptor out;
    Bytes k = d.bytes();
    out.kind = std::string(k.begin(), k.end());
    out.stages = d.u32();
    out.input_len = d.u32();
    if (!d.at_end()) return std::nullopt;
    if (out.kind != "lottery" || out.stages == 0 || out.input_len == 0 || out.input_len > 64)
        return std::nullopt;
    return out;
}

Bytes encode_msg(int64_t id, uint32_t round, const Bytes& payload) {
    Encoder e;
    e.u8('M');
    e.i64(id);
    e.u32(round);
    e.bytes(payload);
    return e.take();
}

std::optional<DecodedMsg> decode_msg(const Bytes& m) {
    Decoder d(m);
    if (d.u8() != 'M') return std::nullopt;
    DecodedMsg out;
    out.id = d.i64();
    out.round = d.u32();
    out.payload = d.bytes();
    if (!d.at_end()) return std::nullopt;
    return out;
}

Bytes encode_reveal_payload(const crypto::Opening& o) {
    Encoder e;
    e.bytes(o.message);
    e.raw(o.randomness);
    return e.take();
}

std::optional<crypto::Opening> decode_reveal_payload(const Bytes& p, size_t input_len) {
    Decoder d(p);
    crypto::Opening o;
    o.message = d.bytes();
    o.randomness = d.raw(crypto::kCommitRandLen);
    if (!d.at_end() || o.message.size() != input_len) return std::nullopt;
    return o;
}

static void encode_coin_vec(Encoder& e, const std::vector<Coin>& v) {
    e.u32(static_cast<uint32_t>(v.size()));
    for (Coin c : v) e.u64(c);
}

static std::optional<std::vector<Coin>> decode_coin_vec(Decoder& d, int n) {
    if (d.u32() != static_cast<uint32_t>(n)) return std::nullopt;
    std::vector<Coin> v;
    for (int i = 0; i < n; ++i) v.push_back(d.u64());
    if (!d.ok()) return std::nullopt;
    return v;
}

Bytes encode_exec_sign_payload(int64_t id, const TvDescriptor& tv, const std::vector<Coin>& b) {
    Encoder e;
    e.u8('T');
    e.i64(id);
    e.bytes(tv.encode());
    encode_coin_vec(e, b);
    return e.take();
}

Bytes encode_update_sign_payload(PartyId j, const std::vector<Coin>& b_new) {
    Encoder e;
    e.u8('U');
    e.u32(static_cast<uint32_t>(j));
    encode_coin_vec(e, b_new);
    return e.take();
}

Bytes encode_exit_witness() {
    Encoder e;
    e.u8(0);
    return e.take();
}

Bytes encode_transcript_witness(int64_t id, const TvDescriptor& tv, const std::vector<Coin>& b,
                                const std::vector<Bytes>& sigs, const MscdTranscript& tt) {
    Encoder e;
    e.u8(1);
    e.i64(id);
    e.bytes(tv.encode());
    encode_coin_vec(e, b);
    e.u32(static_cast<uint32_t>(sigs.size()));
    for (const Bytes& s : sigs) e.bytes(s);
    e.u32(static_cast<uint32_t>(tt.size()));
    for (const SignedMsg& m : tt) {
        e.bytes(m.msg);
        e.bytes(m.sig);
    }
    return e.take();
}

Bytes encode_message_witness(int64_t id, const SignedMsg& m) {
    Encoder e;
    e.u8(2);
    e.i64(id);
    e.bytes(m.msg);
    e.bytes(m.sig);
    return e.take();
}

Bytes encode_update_witness(const std::vector<Coin>& b_new, const std::vector<Bytes>& sigs) {
    Encoder e;
    e.u8(3);
    encode_coin_vec(e, b_new);
    e.u32(static_cast<uint32_t>(sigs.size()));
    for (const Bytes& s : sigs) e.bytes(s);
    return e.take();
}

// --- Validator --------------------------------------------------------------

TranscriptValidator::TranscriptValidator(TvDescriptor d, MscdConfig cfg)
    : d_(std::move(d)), cfg_(std::move(cfg)) {}

bool TranscriptValidator::walk(const MscdTranscript& tt, int64_t id, const std::vector<Coin>& b0,
                               std::vector<Coin>* final_bal, std::vector<size_t>* winners) const {
    size_t n = static_cast<size_t>(cfg_.n);
    if (b0.size() != n) return false;
    if (tt.size() > total_messages()) return false;
    std::vector<Coin> bal = b0;
    std::vector<Bytes> stage_inputs(n);
    for (size_t i = 0; i < tt.size(); ++i) {
        uint32_t r = static_cast<uint32_t>(i + 1);
        auto m = decode_msg(tt[i].msg);
        if (!m || m->id != id || m->round != r) return false;
        PartyId sj = sender(r);
        if (!crypto::sig_verify(cfg_.pks[sj - 1], tt[i].msg, tt[i].sig)) return false;
        // Stage guard: every party must have the 1-coin stake when the stage
        // opens.
        if ((r - 1) % (2 * n) == 0) {
            for (Coin c : bal)
                if (c < 1) return false;
        }
        if (is_commit_round(r)) {
            if (m->payload.size() != 32) return false;
        } else {
            auto o = decode_reveal_payload(m->payload, d_.input_len);
            if (!o) return false;
            auto cm = decode_msg(tt[i - n].msg);
            if (!cm || !crypto::verify_open(*o, cm->payload)) return false;
            stage_inputs[static_cast<size_t>(sj - 1)] = o->message;
        }
        if (r % (2 * n) == 0) {  // stage complete
            auto out = games::lottery_stage(stage_inputs, bal);
            if (!out) return false;
            bal = out->balances;
            if (winners) winners->push_back(out->winner);
        }
    }
    if (final_bal) *final_bal = bal;
    return true;
}

bool TranscriptValidator::validate(const MscdTranscript& tt, int64_t id,
                                   const std::vector<Coin>& b0) const {
    return walk(tt, id, b0, nullptr, nullptr);
}

std::optional<std::vector<Coin>> TranscriptValidator::replay_balances(
    const MscdTranscript& tt, const std::vector<Coin>& b0) const {
    std::vector<Coin> bal;
    auto m0 = tt.empty() ? std::nullopt : decode_msg(tt[0].msg);
    int64_t id = m0 ? m0->id : 0;
    if (!walk(tt, id, b0, &bal, nullptr)) return std::nullopt;
    return bal;
}

std::optional<std::vector<size_t>> TranscriptValidator::stage_winners(
    const MscdTranscript& tt, const std::vector<Coin>& b0) const {
    std::vector<size_t> w;
    auto m0 = tt.empty() ? std::nullopt : decode_msg(tt[0].msg);
    int64_t id = m0 ? m0->id : 0;
    if (!walk(tt, id, b0, nullptr, &w)) return std::nullopt;
    return w;
}

// --- Contract program -------------------------------------------------------

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Init: return "init";
        case Mode::Exec: return "exec";
        case Mode::Exit: return "exit";
        case Mode::Payout: return "payout";
        case Mode::Abort: return "abort";
        case Mode::Inactive: return "inactive";
    }
    return "?";
}

MscdProgram::MscdProgram(MscdConfig cfg) : cfg_(std::move(cfg)) {
    st_.live.assign(cfg_.n, true);
    st_.B.assign(cfg_.n, 0);
}

Coin MscdProgram::cash(PartyId j) const {
    if (st_.tv) {
        TranscriptValidator v(*st_.tv, cfg_);
        auto bal = v.replay_balances(st_.tt, st_.b);
        if (bal) return (*bal)[static_cast<size_t>(j - 1)];
        return 0;
    }
    return st_.B[static_cast<size_t>(j - 1)];
}

bool MscdProgram::on_update(PartyId j, const Bytes& u, Coin amount, Tick) {
    if (j < 1 || j > cfg_.n || amount == 0) return false;
    if (st_.mode == Mode::Exit || st_.mode == Mode::Abort || st_.mode == Mode::Payout ||
        st_.mode == Mode::Inactive)
        return false;
    Decoder d(u);
    if (d.u8() != 3) return false;
    auto b_new = decode_coin_vec(d, cfg_.n);
    if (!b_new) return false;
    if (d.u32() != static_cast<uint32_t>(cfg_.n)) return false;
    std::vector<Bytes> sigs;
    for (int k = 0; k < cfg_.n; ++k) sigs.push_back(d.bytes());
    if (!d.at_end()) return false;
    Bytes payload = encode_update_sign_payload(j, *b_new);
    for (int k = 0; k < cfg_.n; ++k)
        if (!crypto::sig_verify(cfg_.pks[k], payload, sigs[k])) return false;
    Coin sum_new = 0, sum_b = 0;
    for (Coin c : *b_new) sum_new = ledger::coin_add(sum_new, c);
    for (Coin c : st_.B) sum_b = ledger::coin_add(sum_b, c);
    if (sum_new != ledger::coin_add(amount, sum_b)) return false;
    st_.B[static_cast<size_t>(j - 1)] = ledger::coin_add(st_.B[j - 1], amount);
    return true;
}

std::optional<ledger::StepResult> MscdProgram::on_trigger(PartyId j, const Bytes& witness, Tick t,
                                                          Coin) {
    if (j < 1 || j > cfg_.n) return std::nullopt;
    if (st_.mode == Mode::Inactive) return std::nullopt;
    Decoder d(witness);
    uint8_t tag = d.u8();
    ledger::StepResult res;
    int64_t tnow = static_cast<int64_t>(t);

    if (tag == 1) {  // full-transcript witness
        int64_t id = d.i64();
        auto tv = TvDescriptor::decode(d.bytes());
        if (!tv) return std::nullopt;
        auto b = decode_coin_vec(d, cfg_.n);
        if (!b) return std::nullopt;
        if (d.u32() != static_cast<uint32_t>(cfg_.n)) return std::nullopt;
        std::vector<Bytes> sigs;
        for (int k = 0; k < cfg_.n; ++k) sigs.push_back(d.bytes());
        uint32_t len = d.u32();
        if (!d.ok()) return std::nullopt;
        MscdTranscript tt;
        for (uint32_t i = 0; i < len; ++i) {
            SignedMsg m;
            m.msg = d.bytes();
            m.sig = d.bytes();
            tt.push_back(std::move(m));
        }
        if (!d.at_end()) return std::nullopt;
        Bytes payload = encode_exec_sign_payload(id, *tv, *b);
        for (int k = 0; k < cfg_.n; ++k)
            if (!crypto::sig_verify(cfg_.pks[k], payload, sigs[k])) return std::nullopt;
        TranscriptValidator v(*tv, cfg_);
        if (!v.validate(tt, id, *b)) return std::nullopt;
        bool fresh = st_.mode == Mode::Init;
        bool renew = (st_.mode == Mode::Exec || st_.mode == Mode::Exit) &&
                     tnow < st_.t + static_cast<int64_t>(cfg_.delta) &&
                     (id > st_.id || (id == st_.id && tt.size() > st_.tt.size()));
        if (!fresh && !renew) return std::nullopt;
        st_.mode = Mode::Exec;
        st_.id = id;
        st_.tt = std::move(tt);
        st_.t = tnow;
        st_.tv = *tv;
        st_.b = *b;
        return res;
    }

    if (tag == 2) {  // single-message extension
        int64_t id = d.i64();
        SignedMsg m;
        m.msg = d.bytes();
        m.sig = d.bytes();
        if (!d.at_end()) return std::nullopt;
        // Extensions only make sense while the dispute is running; allowing
        // them later would move the abort blame after it was assigned.
        if (st_.mode != Mode::Exec || id != st_.id || !st_.tv) return std::nullopt;
        TranscriptValidator v(*st_.tv, cfg_);
        MscdTranscript ext = st_.tt;
        ext.push_back(m);
        if (!v.validate(ext, id, st_.b)) return std::nullopt;
        st_.tt = std::move(ext);
        st_.t = tnow;  // each accepted step restarts the response window
        return res;
    }

    if (tag != 0 || !d.at_end()) return std::nullopt;

    // w = exit
    bool complete = st_.tv && st_.tt.size() == TranscriptValidator(*st_.tv, cfg_).total_messages();
    bool past_deadline = tnow > st_.t + static_cast<int64_t>(cfg_.delta);
    size_t ji = static_cast<size_t>(j - 1);

    if (st_.mode == Mode::Init || (st_.mode == Mode::Exec && complete)) {
        st_.mode = Mode::Exit;
        st_.t = tnow;
    } else if ((st_.mode == Mode::Exec || st_.mode == Mode::Abort) && past_deadline &&
               st_.live[ji] && !complete) {
        PartyId ja = next_sender();
        if (j == ja) return std::nullopt;
        res.payout = ledger::coin_add(static_cast<Coin>(cfg_.n) * cfg_.q, st_.b[ji]);
        st_.live[ji] = false;
        if (st_.mode == Mode::Exec) {
            // First abort claim: the blamed party forfeits its collateral but
            // keeps its game balance.
            st_.live[static_cast<size_t>(ja - 1)] = false;
            Coin ja_bal = st_.b[static_cast<size_t>(ja - 1)];
            if (ja_bal > 0) res.extra_payouts.push_back({ja, ja_bal});
            st_.mode = Mode::Abort;
        }
    } else if ((st_.mode == Mode::Exit || st_.mode == Mode::Payout) && past_deadline &&
               st_.live[ji]) {
        res.payout = ledger::coin_add(cfg_.deposit(), cash(j));
        st_.mode = Mode::Payout;
        st_.live[ji] = false;
    } else {
        return std::nullopt;
    }

    if (std::none_of(st_.live.begin(), st_.live.end(), [](bool b) { return b; }))
        st_.mode = Mode::Inactive;
    return res;
}

Bytes MscdProgram::state_snapshot() const {
    Encoder e;
    e.u8(static_cast<uint8_t>(st_.mode));
    e.i64(st_.id);
    e.i64(st_.t);
    for (bool b : st_.live) e.u8(b ? 1 : 0);
    e.u8(st_.tv ? 1 : 0);
    if (st_.tv) e.bytes(st_.tv->encode());
    encode_coin_vec(e, st_.b);
    encode_coin_vec(e, st_.B);
    e.u32(static_cast<uint32_t>(st_.tt.size()));
    for (const SignedMsg& m : st_.tt) {
        e.bytes(m.msg);
        e.bytes(m.sig);
    }
    return e.take();
}

std::string MscdProgram::state_summary() const {
    std::ostringstream os;
    os << mode_name(st_.mode) << " id=" << st_.id << " t=" << st_.t << " |TT|=" << st_.tt.size()
       << " L=";
    for (bool b : st_.live) os << (b ? '1' : '0');
    os << " B=";
    for (size_t i = 0; i < st_.B.size(); ++i) os << (i ? "," : "") << st_.B[i];
    return os.str();
}

// --- Party-side next-message function ---------------------------------------

std::optional<SignedMsg> next_message(const TranscriptValidator& tv, int64_t id,
                                      const MscdTranscript& tt, PartyId j, const Bytes& input,
                                      PartySecrets& secrets, Rng& rng,
                                      const crypto::SigKeyPair& key) {
    uint32_t r = static_cast<uint32_t>(tt.size()) + 1;
    if (tt.size() >= tv.total_messages()) return std::nullopt;
    if (tv.sender(r) != j) return std::nullopt;
    Bytes payload;
    if (tv.is_commit_round(r)) {
        crypto::Opening o{input, rng.bytes(crypto::kCommitRandLen)};
        Bytes com = crypto::commit(o);
        secrets.openings[com] = o;
        payload = com;
    } else {
        size_t n = tv.total_messages() / (2 * tv.descriptor().stages);
        auto cm = decode_msg(tt[tt.size() - n].msg);
        if (!cm) return std::nullopt;
        auto it = secrets.openings.find(cm->payload);
        if (it == secrets.openings.end()) return std::nullopt;
        payload = encode_reveal_payload(it->second);
    }
    SignedMsg m;
    m.msg = encode_msg(id, r, payload);
    m.sig = crypto::sig_sign(key, m.msg);
    return m;
}

}  // namespace statechan::mscd
