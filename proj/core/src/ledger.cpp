#include "statechan/ledger.hpp"

namespace statechan::ledger {

Ledger::Ledger(int n_parties, Coin initial_wallet, Trace* trace) : n_(n_parties), trace_(trace) {
    for (PartyId j = 1; j <= n_; ++j) wallets_[j] = initial_wallet;
}

void Ledger::credit_wallet(PartyId j, Coin amount) {
    wallets_[j] = coin_add(wallets_[j], amount);
}

void Ledger::trace_record(nlohmann::ordered_json e) {
    if (trace_) trace_->record(std::move(e));
}

int Ledger::open_contract(std::unique_ptr<ContractProgram> program,
                          std::map<PartyId, Coin> required_deposits, Tick deadline) {
    Instance inst;
    inst.program = std::move(program);
    inst.required = std::move(required_deposits);
    inst.funding_deadline = deadline;
    inst.created_at = now_;
    instances_.push_back(std::move(inst));
    int id = static_cast<int>(instances_.size()) - 1;
    trace_record({{"ev", "open_contract"},
                  {"tick", now_},
                  {"instance", id},
                  {"deadline", deadline}});
    maybe_go_live(id);
    return id;
}

DepositError Ledger::fund(int instance, PartyId j, Coin amount) {
    Instance& inst = instances_.at(instance);
    if (inst.phase != Phase::Pending) return DepositError::NotPending;
    auto req = inst.required.find(j);
    if (req == inst.required.end() || amount != req->second)
        return DepositError::WrongDepositAmount;
    if (inst.received.count(j)) return DepositError::DuplicateDeposit;
    wallets_[j] = coin_sub(wallets_[j], amount);
    inst.received[j] = amount;
    trace_record({{"ev", "deposit"}, {"tick", now_}, {"instance", instance},
                  {"party", j}, {"amount", amount}});
    maybe_go_live(instance);
    return DepositError::None;
}

void Ledger::maybe_go_live(int id) {
    Instance& inst = instances_.at(id);
    if (inst.phase != Phase::Pending) return;
    for (const auto& [j, d] : inst.required)
        if (d != 0 && !inst.received.count(j)) return;
    Coin q = 0;
    for (const auto& [j, d] : inst.received) q = coin_add(q, d);
    inst.escrow = q;
    inst.received.clear();
    inst.phase = Phase::Live;
    trace_record({{"ev", "contract_live"}, {"tick", now_}, {"instance", id}, {"escrow", q}});
}

SubmitError Ledger::queue_trigger(int instance, PartyId j, Bytes witness, Coin attached) {
    if (instance < 0 || instance >= static_cast<int>(instances_.size()))
        return SubmitError::UnknownInstance;
    if (instances_[instance].phase == Phase::Terminated ||
        instances_[instance].phase == Phase::Refunded)
        return SubmitError::InstanceTerminated;
    queues_[j].push_back(QueueItem{instance, std::move(witness), attached, false, 0});
    return SubmitError::None;
}

SubmitError Ledger::queue_update(int instance, PartyId j, Bytes update_witness, Coin amount) {
    if (instance < 0 || instance >= static_cast<int>(instances_.size()))
        return SubmitError::UnknownInstance;
    Instance& inst = instances_[instance];
    if (inst.phase == Phase::Terminated || inst.phase == Phase::Refunded)
        return SubmitError::InstanceTerminated;
    if (!inst.program->supports_updates()) return SubmitError::UpdatesNotSupported;
    queues_[j].push_back(QueueItem{instance, std::move(update_witness), 0, true, amount});
    return SubmitError::None;
}

void Ledger::subscribe(int instance, PartyId j, std::function<void(const LedgerEvent&)> cb) {
    instances_.at(instance).subscribers[j] = std::move(cb);
}

void Ledger::process_item(PartyId j, const QueueItem& item, std::vector<LedgerEvent>& events) {
    Instance& inst = instances_.at(item.instance);
    if (inst.phase != Phase::Live) {
        trace_record({{"ev", "trigger_rejected"}, {"tick", now_}, {"instance", item.instance},
                      {"party", j}, {"reason", "instance_not_live"}});
        return;
    }
    if (item.is_update) {
        if (wallets_[j] < item.update_amount) {
            trace_record({{"ev", "update_rejected"}, {"tick", now_}, {"instance", item.instance},
                          {"party", j}, {"reason", "insufficient_wallet"}});
            return;
        }
        if (!inst.program->on_update(j, item.witness, item.update_amount, now_)) {
            trace_record({{"ev", "update_rejected"}, {"tick", now_}, {"instance", item.instance},
                          {"party", j}, {"reason", "update_returned_bot"}});
            return;
        }
        wallets_[j] = coin_sub(wallets_[j], item.update_amount);
        inst.escrow = coin_add(inst.escrow, item.update_amount);
        inst.version++;
        LedgerEvent ev;
        ev.seq = inst.version;
        ev.instance = item.instance;
        ev.origin = j;
        ev.witness = item.witness;
        ev.time = now_;
        ev.new_state = inst.program->state_snapshot();
        ev.is_update = true;
        ev.update_amount = item.update_amount;
        trace_record({{"ev", "update_accepted"}, {"tick", now_}, {"instance", item.instance},
                      {"party", j}, {"amount", item.update_amount},
                      {"state", inst.program->state_summary()}});
        events.push_back(std::move(ev));
        return;
    }
    if (item.attached > wallets_[j]) {
        trace_record({{"ev", "trigger_rejected"}, {"tick", now_}, {"instance", item.instance},
                      {"party", j}, {"reason", "insufficient_wallet"}});
        return;
    }
    auto res = inst.program->on_trigger(j, item.witness, now_, item.attached);
    if (!res) {
        trace_record({{"ev", "trigger_rejected"}, {"tick", now_}, {"instance", item.instance},
                      {"party", j}, {"reason", "prog_returned_bot"}});
        return;
    }
    // Absorb attached coins first, then pay out; Prog may never overdraw Q.
    if (res->absorb > item.attached) throw std::runtime_error("program absorbed unattached coins");
    wallets_[j] = coin_sub(wallets_[j], res->absorb);
    inst.escrow = coin_add(inst.escrow, res->absorb);
    Coin total_out = res->payout;
    for (const auto& [k, amt] : res->extra_payouts) {
        (void)k;
        total_out = coin_add(total_out, amt);
    }
    if (total_out > inst.escrow) throw std::runtime_error("payout exceeds escrow");
    inst.escrow -= total_out;
    wallets_[j] = coin_add(wallets_[j], res->payout);
    for (const auto& [k, amt] : res->extra_payouts) wallets_[k] = coin_add(wallets_[k], amt);
    inst.version++;

    LedgerEvent ev;
    ev.seq = inst.version;
    ev.instance = item.instance;
    ev.origin = j;
    ev.witness = item.witness;
    ev.time = now_;
    ev.new_state = inst.program->state_snapshot();
    ev.payout = res->payout;
    ev.extra_payouts = res->extra_payouts;
    trace_record({{"ev", "trigger_accepted"}, {"tick", now_}, {"instance", item.instance},
                  {"party", j}, {"payout", res->payout},
                  {"state", inst.program->state_summary()}});
    events.push_back(std::move(ev));

    if (inst.escrow == 0) {
        inst.phase = Phase::Terminated;
        trace_record({{"ev", "contract_terminated"}, {"tick", now_}, {"instance", item.instance}});
    }
}

Tick Ledger::advance_tick() {
    now_++;
    trace_record({{"ev", "tick"}, {"tick", now_}});

    // Funding deadlines: refund underfunded pending instances.
    for (size_t id = 0; id < instances_.size(); ++id) {
        Instance& inst = instances_[id];
        if (inst.phase == Phase::Pending && now_ > inst.funding_deadline) {
            for (const auto& [j, d] : inst.received) {
                wallets_[j] = coin_add(wallets_[j], d);
                trace_record({{"ev", "deposit_refunded"}, {"tick", now_}, {"instance", id},
                              {"party", j}, {"amount", d}});
            }
            inst.received.clear();
            inst.phase = Phase::Refunded;
        }
    }

    // Round-robin over parties, rotating start offset, FIFO within a party.
    std::vector<LedgerEvent> events;
    std::map<PartyId, std::deque<QueueItem>> batch;
    batch.swap(queues_);
    bool any = true;
    int start = static_cast<int>(now_ % n_);
    while (any) {
        any = false;
        for (int i = 0; i < n_; ++i) {
            PartyId j = 1 + (start + i) % n_;
            auto it = batch.find(j);
            if (it == batch.end() || it->second.empty()) continue;
            QueueItem item = std::move(it->second.front());
            it->second.pop_front();
            any = true;
            process_item(j, item, events);
        }
    }

    // Deliver accepted-trigger notifications to every subscriber, in event
    // order, parties ascending within an event.
    for (const LedgerEvent& ev : events) {
        Instance& inst = instances_.at(ev.instance);
        for (auto& [j, cb] : inst.subscribers) cb(ev);
    }
    return now_;
}

bool Ledger::is_live(int instance) const {
    return instances_.at(instance).phase == Phase::Live;
}

bool Ledger::is_terminated(int instance) const {
    return instances_.at(instance).phase == Phase::Terminated;
}

Coin Ledger::escrow(int instance) const { return instances_.at(instance).escrow; }

uint64_t Ledger::state_version(int instance) const { return instances_.at(instance).version; }

const ContractProgram* Ledger::program(int instance) const {
    return instances_.at(instance).program.get();
}

ContractProgram* Ledger::program(int instance) { return instances_.at(instance).program.get(); }

Coin Ledger::total_coins() const {
    Coin total = 0;
    for (const auto& [j, w] : wallets_) total = coin_add(total, w);
    for (const Instance& inst : instances_) {
        total = coin_add(total, inst.escrow);
        for (const auto& [j, d] : inst.received) total = coin_add(total, d);
    }
    return total;
}

}  // namespace statechan::ledger
