#pragma once

#include <string>

#include <json.hpp>

namespace statechan {

/// Append-only run record. Every tick, broadcast, trigger (accepted or
/// rejected), payout and final wallet lands here; dumping with a fixed
/// indentation gives the byte-identical replay artifact.
class Trace {
public:
    void record(nlohmann::ordered_json entry) { entries_.push_back(std::move(entry)); }

    const nlohmann::ordered_json& entries() const { return entries_; }
    nlohmann::ordered_json& entries() { return entries_; }

    std::string dump() const { return entries_.dump(2) + "\n"; }

private:
    nlohmann::ordered_json entries_ = nlohmann::ordered_json::array();
};

}  // namespace statechan
