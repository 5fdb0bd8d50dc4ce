#include "statechan/msfe.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "statechan/codec.hpp"

namespace statechan::msfe {

Coin lcm_up_to(int n) {
    Coin l = 1;
    for (int i = 2; i <= n; ++i) l = std::lcm<Coin>(l, static_cast<Coin>(i));
    return l;
}

bool MsfeConfig::valid() const {
    if (n < 2 || q == 0 || delta < 2 || delta_off < 1) return false;
    if (q % lcm_up_to(n) != 0) return false;
    if (static_cast<int>(pks.size()) != n) return false;
    if (aggregate_sigs && pk_master.is_identity()) return false;
    return true;
}

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

Bytes encode_sign_payload(int64_t id, const std::vector<Bytes>& commitments) {
    Encoder e;
    e.u8('S');
    e.i64(id);
    e.u32(static_cast<uint32_t>(commitments.size()));
    for (const Bytes& h : commitments) e.bytes(h);
    return e.take();
}

Bytes encode_exit_witness() {
    Encoder e;
    e.u8(0);
    return e.take();
}

Bytes encode_transcript_witness(int64_t id, const MsfeTranscript& tt) {
    Encoder e;
    e.u8(1);
    e.i64(id);
    e.u32(static_cast<uint32_t>(tt.openings.size()));
    for (const auto& o : tt.openings) {
        if (o) {
            e.u8(1);
            e.bytes(o->message);
            e.raw(o->randomness);
        } else {
            e.u8(0);
        }
    }
    e.u32(static_cast<uint32_t>(tt.commitments.size()));
    for (const Bytes& h : tt.commitments) e.bytes(h);
    e.u32(static_cast<uint32_t>(tt.sigs.size()));
    for (const Bytes& s : tt.sigs) e.bytes(s);
    return e.take();
}

std::optional<DecodedWitness> decode_witness(const Bytes& w, int n) {
    Decoder d(w);
    DecodedWitness out;
    uint8_t tag = d.u8();
    if (tag == 0) {
        if (!d.at_end()) return std::nullopt;
        out.is_exit = true;
        return out;
    }
    if (tag != 1) return std::nullopt;
    out.id = d.i64();
    uint32_t nx = d.u32();
    if (nx != static_cast<uint32_t>(n)) return std::nullopt;
    for (uint32_t i = 0; i < nx; ++i) {
        if (d.u8()) {
            crypto::Opening o;
            o.message = d.bytes();
            o.randomness = d.raw(crypto::kCommitRandLen);
            out.tt.openings.push_back(std::move(o));
        } else {
            out.tt.openings.push_back(std::nullopt);
        }
    }
    uint32_t nh = d.u32();
    if (nh != static_cast<uint32_t>(n)) return std::nullopt;
    for (uint32_t i = 0; i < nh; ++i) out.tt.commitments.push_back(d.bytes());
    uint32_t ns = d.u32();
    for (uint32_t i = 0; i < ns; ++i) out.tt.sigs.push_back(d.bytes());
    if (!d.at_end()) return std::nullopt;
    return out;
}

MsfeProgram::MsfeProgram(MsfeConfig cfg) : cfg_(std::move(cfg)) {
    st_.live.assign(cfg_.n, true);
}

bool MsfeProgram::transcript_authentic(int64_t id, const MsfeTranscript& tt) const {
    if (static_cast<int>(tt.openings.size()) != cfg_.n) return false;
    if (static_cast<int>(tt.commitments.size()) != cfg_.n) return false;
    for (const Bytes& h : tt.commitments)
        if (h.size() != 32) return false;
    Bytes payload = encode_sign_payload(id, tt.commitments);
    if (cfg_.aggregate_sigs) {
        if (tt.sigs.size() != 1) return false;
        if (!crypto::multi_verify(cfg_.pk_master, payload, tt.sigs[0])) return false;
    } else {
        if (static_cast<int>(tt.sigs.size()) != cfg_.n) return false;
        for (int k = 0; k < cfg_.n; ++k)
            if (!crypto::sig_verify(cfg_.pks[k], payload, tt.sigs[k])) return false;
    }
    for (int k = 0; k < cfg_.n; ++k)
        if (tt.openings[k] && !crypto::verify_open(*tt.openings[k], tt.commitments[k]))
            return false;
    return true;
}

bool MsfeProgram::pred(PartyId, int64_t id, const MsfeTranscript& tt, Tick t) const {
    if (!transcript_authentic(id, tt)) return false;
    if (st_.mode == Mode::Init) return true;
    if (st_.mode != Mode::Exec && st_.mode != Mode::Exit) return false;
    if (static_cast<int64_t>(t) > st_.t + static_cast<int64_t>(cfg_.delta)) return false;
    if (id > st_.id) return true;
    if (id != st_.id || !st_.tt) return false;
    // X must contain at least one opening absent from st.TT.X.
    for (int k = 0; k < cfg_.n; ++k)
        if (tt.openings[k] && !st_.tt->openings[k]) return true;
    return false;
}

std::optional<ledger::StepResult> MsfeProgram::on_trigger(PartyId j, const Bytes& witness, Tick t,
                                                          Coin) {
    if (j < 1 || j > cfg_.n) return std::nullopt;
    if (st_.mode == Mode::Inactive) return std::nullopt;
    auto w = decode_witness(witness, cfg_.n);
    if (!w) return std::nullopt;
    ledger::StepResult res;
    int64_t tt_signed = static_cast<int64_t>(t);

    if (!w->is_exit) {
        if (!pred(j, w->id, w->tt, t)) return std::nullopt;
        if (st_.id == w->id && st_.tt) {
            for (int k = 0; k < cfg_.n; ++k)
                if (!st_.tt->openings[k] && w->tt.openings[k])
                    st_.tt->openings[k] = w->tt.openings[k];
        } else {
            st_.tt = std::move(w->tt);
            st_.id = w->id;
        }
        st_.mode = Mode::Exec;
        st_.t = tt_signed;
        return res;
    }

    // w = exit
    size_t opened = st_.tt ? st_.tt->open_count() : 0;
    bool complete = st_.tt && opened == static_cast<size_t>(cfg_.n);
    bool past_deadline = tt_signed > st_.t + static_cast<int64_t>(cfg_.delta);

    if (st_.mode == Mode::Init || (st_.mode == Mode::Exec && complete)) {
        st_.mode = Mode::Exit;
        st_.t = tt_signed;
    } else if ((st_.mode == Mode::Exec || st_.mode == Mode::Abort) && past_deadline &&
               st_.live[j - 1] && !complete) {
        st_.live[j - 1] = false;
        st_.mode = Mode::Abort;
        for (int k = 0; k < cfg_.n; ++k)
            if (!st_.tt || !st_.tt->openings[k]) st_.live[k] = false;
        if (st_.tt && st_.tt->openings[j - 1]) {
            res.payout = static_cast<Coin>(cfg_.n) * cfg_.deposit() / static_cast<Coin>(opened);
        }
    } else if ((st_.mode == Mode::Exit || st_.mode == Mode::Payout) && past_deadline &&
               st_.live[j - 1]) {
        res.payout = cfg_.deposit();
        st_.mode = Mode::Payout;
        st_.live[j - 1] = false;
    } else {
        return std::nullopt;
    }

    if (std::none_of(st_.live.begin(), st_.live.end(), [](bool b) { return b; }))
        st_.mode = Mode::Inactive;
    return res;
}

Bytes MsfeProgram::state_snapshot() const {
    Encoder e;
    e.u8(static_cast<uint8_t>(st_.mode));
    e.i64(st_.id);
    e.i64(st_.t);
    for (bool b : st_.live) e.u8(b ? 1 : 0);
    if (st_.tt) {
        e.u8(1);
        e.raw(encode_transcript_witness(st_.id, *st_.tt));
    } else {
        e.u8(0);
    }
    return e.take();
}

std::string MsfeProgram::state_summary() const {
    std::ostringstream os;
    os << mode_name(st_.mode) << " id=" << st_.id << " t=" << st_.t
       << " |X|=" << (st_.tt ? st_.tt->open_count() : 0) << " L=";
    for (bool b : st_.live) os << (b ? '1' : '0');
    return os.str();
}

// --- Dealer oracle ---------------------------------------------------------

SfeFunction xor_function(size_t output_len) {
    SfeFunction g;
    g.output_len = output_len;
    g.eval = [output_len](const std::vector<Bytes>& inputs) {
        Bytes z(output_len, 0);
        for (const Bytes& in : inputs) z = xor_bytes(z, in);
        z.resize(output_len, 0);
        return z;
    };
    return g;
}

DealerOutput dealer_execute(const SfeFunction& g, const std::vector<Bytes>& inputs, Rng& rng) {
    DealerOutput out;
    out.output = g.eval(inputs);
    out.output.resize(g.output_len, 0);
    size_t n = inputs.size();
    Bytes acc(g.output_len, 0);
    for (size_t j = 0; j < n; ++j) {
        Bytes share = (j + 1 < n) ? rng.bytes(g.output_len) : xor_bytes(acc, out.output);
        acc = xor_bytes(acc, share);
        crypto::Opening o{share, rng.bytes(crypto::kCommitRandLen)};
        out.commitments.push_back(crypto::commit(o));
        out.openings.push_back(std::move(o));
    }
    return out;
}

std::optional<Bytes> reconstruct_output(const std::vector<std::optional<crypto::Opening>>& x) {
    Bytes z;
    for (const auto& o : x) {
        if (!o) return std::nullopt;
        z = xor_bytes(z, o->message);
    }
    return z;
}

}  // namespace statechan::msfe
