#include "statechan/scenario.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace statechan::sim {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { throw std::runtime_error("scenario: " + msg); }

void reject_unknown(const ordered_json& j, const std::set<std::string>& known,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) bad("unknown field \"" + it.key() + "\" in " + where);
}

template <typename T>
void get_if(const ordered_json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

Scenario scenario_from_json(const ordered_json& j) {
    if (!j.is_object()) bad("top level must be an object");
    reject_unknown(j,
                   {"format_version", "name", "protocol", "n", "q", "delta", "delta_off",
                    "duplex_window", "corrupt", "strategy", "seed", "max_ticks", "executions",
                    "output_len", "stages", "start_balance", "payments", "duplex_deposits",
                    "initial_wallet", "aggregate_sigs"},
                   "scenario");
    if (!j.contains("format_version") || !j.at("format_version").is_number_integer() ||
        j.at("format_version").get<int>() != kScenarioFormatVersion)
        bad("format_version must be " + std::to_string(kScenarioFormatVersion));
    if (!j.contains("protocol")) bad("missing protocol");

    Scenario s;
    get_if(j, "name", s.name);
    auto p = protocol_from_name(j.at("protocol").get<std::string>());
    if (!p) bad("unknown protocol \"" + j.at("protocol").get<std::string>() + "\"");
    s.protocol = *p;
    get_if(j, "n", s.n);
    get_if(j, "q", s.q);
    get_if(j, "delta", s.delta);
    get_if(j, "delta_off", s.delta_off);
    get_if(j, "duplex_window", s.duplex_window);
    get_if(j, "corrupt", s.corrupt);
    get_if(j, "seed", s.seed);
    get_if(j, "max_ticks", s.max_ticks);
    get_if(j, "executions", s.executions);
    get_if(j, "output_len", s.output_len);
    get_if(j, "stages", s.stages);
    get_if(j, "start_balance", s.start_balance);
    get_if(j, "payments", s.payments);
    get_if(j, "initial_wallet", s.initial_wallet);
    get_if(j, "aggregate_sigs", s.aggregate_sigs);
    if (j.contains("duplex_deposits")) {
        auto d = j.at("duplex_deposits");
        if (!d.is_array() || d.size() != 2) bad("duplex_deposits must have two entries");
        s.duplex_deposits = {d[0].get<Coin>(), d[1].get<Coin>()};
    }
    if (j.contains("strategy")) {
        const auto& st = j.at("strategy");
        if (!st.is_object()) bad("strategy must be an object");
        reject_unknown(st, {"kind", "exec_id", "step", "round", "stale_id", "open_onchain"},
                       "strategy");
        if (!st.contains("kind")) bad("strategy missing kind");
        auto k = strategy_kind_from_name(st.at("kind").get<std::string>());
        if (!k) bad("unknown strategy kind \"" + st.at("kind").get<std::string>() + "\"");
        s.strategy.kind = *k;
        get_if(st, "exec_id", s.strategy.exec_id);
        get_if(st, "step", s.strategy.step);
        get_if(st, "round", s.strategy.round);
        get_if(st, "stale_id", s.strategy.stale_id);
        get_if(st, "open_onchain", s.strategy.open_onchain);
    }
    std::string err;
    if (!s.valid(&err)) bad(err);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        bad(std::string("parse error in ") + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

ordered_json scenario_to_json(const Scenario& s) {
    ordered_json j;
    j["format_version"] = kScenarioFormatVersion;
    j["name"] = s.name;
    j["protocol"] = protocol_name(s.protocol);
    j["n"] = s.n;
    j["q"] = s.q;
    j["delta"] = s.delta;
    j["delta_off"] = s.delta_off;
    j["corrupt"] = s.corrupt;
    j["strategy"] = {{"kind", strategy_kind_name(s.strategy.kind)},
                     {"exec_id", s.strategy.exec_id},
                     {"step", s.strategy.step},
                     {"round", s.strategy.round},
                     {"stale_id", s.strategy.stale_id},
                     {"open_onchain", s.strategy.open_onchain}};
    j["seed"] = s.seed;
    j["max_ticks"] = s.max_ticks;
    j["executions"] = s.executions;
    j["initial_wallet"] = s.initial_wallet;
    switch (s.protocol) {
        case Protocol::Msfe:
            j["output_len"] = s.output_len;
            j["aggregate_sigs"] = s.aggregate_sigs;
            break;
        case Protocol::Mscd:
            j["stages"] = s.stages;
            j["start_balance"] = s.start_balance;
            break;
        case Protocol::Duplex:
            j["duplex_window"] = s.duplex_window;
            j["payments"] = s.payments;
            j["duplex_deposits"] = {s.duplex_deposits[0], s.duplex_deposits[1]};
            break;
    }
    return j;
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) bad("cannot write " + path);
    out << scenario_to_json(s).dump(2) << "\n";
}

}  // namespace statechan::sim
