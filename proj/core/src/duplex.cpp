#include "statechan/duplex.hpp"

#include <sstream>

#include "statechan/codec.hpp"

namespace statechan::duplex {

Bytes encode_channel_state(const ChannelStateMsg& s) {
    Encoder e;
    e.u8('D');
    e.i64(s.r);
    e.i64(s.net);
    e.u64(s.withdrawals[0]);
    e.u64(s.withdrawals[1]);
    return e.take();
}

Bytes encode_deposit_witness() {
    Encoder e;
    e.u8(0);
    return e.take();
}

Bytes encode_update_witness(const ChannelStateMsg& s, const Bytes& sig0, const Bytes& sig1) {
    Encoder e;
    e.u8(1);
    e.i64(s.r);
    e.i64(s.net);
    e.u64(s.withdrawals[0]);
    e.u64(s.withdrawals[1]);
    e.bytes(sig0);
    e.bytes(sig1);
    return e.take();
}

Bytes encode_trigger_witness() {
    Encoder e;
    e.u8(2);
    return e.take();
}

Bytes encode_withdraw_witness() {
    Encoder e;
    e.u8(3);
    return e.take();
}

DuplexProgram::DuplexProgram(DuplexConfig cfg) : cfg_(std::move(cfg)) {}

Coin DuplexProgram::entitlement(int i) const {
    int64_t net2 = (i == 0) ? st_.net : -st_.net;
    int64_t ent = static_cast<int64_t>(st_.deposits[i]) + net2;
    if (ent < 0) throw std::runtime_error("co-signed channel state is insolvent");
    return static_cast<Coin>(ent);
}

std::optional<ledger::StepResult> DuplexProgram::on_trigger(PartyId j, const Bytes& witness,
                                                            Tick t, Coin attached) {
    if (j != 1 && j != 2) return std::nullopt;
    size_t i = static_cast<size_t>(j - 1);
    Decoder d(witness);
    uint8_t tag = d.u8();
    ledger::StepResult res;

    if (tag == 0) {  // deposit
        if (!d.at_end() || st_.t1) return std::nullopt;
        st_.deposits[i] = ledger::coin_add(st_.deposits[i], attached);
        res.absorb = attached;
        return res;
    }
    if (tag == 1) {  // update
        ChannelStateMsg s;
        s.r = d.i64();
        s.net = d.i64();
        s.withdrawals[0] = d.u64();
        s.withdrawals[1] = d.u64();
        Bytes sig0 = d.bytes();
        Bytes sig1 = d.bytes();
        if (!d.at_end()) return std::nullopt;
        if (st_.t1 && t >= *st_.t2) return std::nullopt;
        if (s.r <= st_.best_round) return std::nullopt;
        Bytes enc = encode_channel_state(s);
        if (!crypto::sig_verify(cfg_.pks[0], enc, sig0)) return std::nullopt;
        if (!crypto::sig_verify(cfg_.pks[1], enc, sig1)) return std::nullopt;
        st_.best_round = s.r;
        st_.net = s.net;
        st_.withdrawals = s.withdrawals;
        return res;
    }
    if (tag == 2) {  // trigger
        if (!d.at_end() || st_.t1) return std::nullopt;
        st_.t1 = t;
        st_.t2 = t + cfg_.window;
        return res;
    }
    if (tag == 3) {  // withdraw
        if (!d.at_end()) return std::nullopt;
        Coin pay = 0;
        if (!st_.t2 || t < *st_.t2) {
            if (st_.withdrawals[i] > st_.withdrawn[i]) pay = st_.withdrawals[i] - st_.withdrawn[i];
        } else {
            Coin ent = entitlement(static_cast<int>(i));
            if (ent < st_.withdrawn[i])
                throw std::runtime_error("withdrawn exceeds final entitlement");
            pay = ent - st_.withdrawn[i];
        }
        st_.withdrawn[i] = ledger::coin_add(st_.withdrawn[i], pay);
        res.payout = pay;
        return res;
    }
    return std::nullopt;
}

Bytes DuplexProgram::state_snapshot() const {
    Encoder e;
    e.u64(st_.deposits[0]);
    e.u64(st_.deposits[1]);
    e.i64(st_.net);
    e.i64(st_.best_round);
    e.u64(st_.withdrawals[0]);
    e.u64(st_.withdrawals[1]);
    e.u64(st_.withdrawn[0]);
    e.u64(st_.withdrawn[1]);
    e.u8(st_.t1 ? 1 : 0);
    if (st_.t1) e.u64(*st_.t1);
    e.u8(st_.t2 ? 1 : 0);
    if (st_.t2) e.u64(*st_.t2);
    return e.take();
}

std::string DuplexProgram::state_summary() const {
    std::ostringstream os;
    os << "dep=(" << st_.deposits[0] << "," << st_.deposits[1] << ") net=" << st_.net
       << " r=" << st_.best_round << " w=(" << st_.withdrawals[0] << "," << st_.withdrawals[1]
       << ") taken=(" << st_.withdrawn[0] << "," << st_.withdrawn[1] << ")";
    if (st_.t1) os << " T1=" << *st_.t1 << " T2=" << *st_.t2;
    return os.str();
}

// --- Party-side logic -------------------------------------------------------

ChannelParty::ChannelParty(int index, crypto::SigKeyPair key, crypto::GroupElement peer_pk)
    : index_(index), key_(std::move(key)), peer_pk_(std::move(peer_pk)) {}

bool ChannelParty::solvent(const ChannelStateMsg& s) const {
    for (int i = 0; i < 2; ++i) {
        int64_t ent = static_cast<int64_t>(deposits_[i]) + signed_net(i, s.net);
        if (ent < 0 || ent < static_cast<int64_t>(s.withdrawals[i])) return false;
    }
    return true;
}

std::optional<std::pair<ChannelStateMsg, Bytes>> ChannelParty::propose_pay(Coin amount) {
    ChannelStateMsg s = latest_;
    s.r = std::max(latest_.r, last_signed_r_) + 1;
    s.net = latest_.net + (index_ == 0 ? -static_cast<int64_t>(amount)
                                       : static_cast<int64_t>(amount));
    if (!solvent(s)) return std::nullopt;
    Bytes sig = crypto::sig_sign(key_, encode_channel_state(s));
    last_signed_r_ = s.r;
    pending_ = s;
    pending_sig_ = sig;
    return std::make_pair(s, sig);
}

std::optional<std::pair<ChannelStateMsg, Bytes>> ChannelParty::propose_withdrawal(Coin amount) {
    ChannelStateMsg s = latest_;
    s.r = std::max(latest_.r, last_signed_r_) + 1;
    s.withdrawals[index_] = ledger::coin_add(s.withdrawals[index_], amount);
    if (!solvent(s)) return std::nullopt;
    Bytes sig = crypto::sig_sign(key_, encode_channel_state(s));
    last_signed_r_ = s.r;
    pending_ = s;
    pending_sig_ = sig;
    return std::make_pair(s, sig);
}

std::optional<std::pair<ChannelStateMsg, Bytes>> ChannelParty::reissue(
    const ChannelStateMsg& intended) {
    ChannelStateMsg s = intended;
    s.r = std::max(latest_.r, last_signed_r_) + 1;
    if (!solvent(s)) return std::nullopt;
    Bytes sig = crypto::sig_sign(key_, encode_channel_state(s));
    last_signed_r_ = s.r;
    pending_ = s;
    pending_sig_ = sig;
    return std::make_pair(s, sig);
}

std::optional<Bytes> ChannelParty::on_proposal(const ChannelStateMsg& s, const Bytes& peer_sig) {
    Bytes enc = encode_channel_state(s);
    if (!crypto::sig_verify(peer_pk_, enc, peer_sig)) return std::nullopt;
    if (s.r <= latest_.r || s.r <= last_signed_r_) return std::nullopt;
    if (!solvent(s)) return std::nullopt;
    // Approvals only grow, and the peer cannot move net in its own favor.
    if (s.withdrawals[0] < latest_.withdrawals[0] || s.withdrawals[1] < latest_.withdrawals[1])
        return std::nullopt;
    if (signed_net(index_, s.net) < signed_net(index_, latest_.net)) return std::nullopt;
    Bytes sig = crypto::sig_sign(key_, enc);
    last_signed_r_ = s.r;
    latest_ = s;
    latest_sigs_[index_] = sig;
    latest_sigs_[1 - index_] = peer_sig;
    return sig;
}

bool ChannelParty::on_countersigned(const ChannelStateMsg& s, const Bytes& peer_sig) {
    if (!(s == pending_)) return false;
    if (!crypto::sig_verify(peer_pk_, encode_channel_state(s), peer_sig)) return false;
    latest_ = s;
    latest_sigs_[index_] = pending_sig_;
    latest_sigs_[1 - index_] = peer_sig;
    return true;
}

std::optional<Bytes> ChannelParty::update_witness() const {
    if (!has_cosigned()) return std::nullopt;
    return encode_update_witness(latest_, latest_sigs_[0], latest_sigs_[1]);
}

}  // namespace statechan::duplex
