#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "statechan/scenario.hpp"

using namespace statechan;
using namespace statechan::sim;
using nlohmann::ordered_json;

#ifndef SCENARIO_DIR
#define SCENARIO_DIR "."
#endif

TEST_CASE("scenarios survive a json round-trip") {
    Scenario s;
    s.name = "rt";
    s.protocol = Protocol::Mscd;
    s.n = 4;
    s.q = 12;
    s.delta = 6;
    s.corrupt = {2, 3};
    s.strategy.kind = Strategy::Kind::AbortAtRound;
    s.strategy.exec_id = 2;
    s.strategy.round = 5;
    s.seed = 77;
    s.executions = 3;
    s.stages = 2;
    s.start_balance = 24;
    Scenario back = scenario_from_json(scenario_to_json(s));
    CHECK(back.name == s.name);
    CHECK(back.protocol == s.protocol);
    CHECK(back.n == s.n);
    CHECK(back.q == s.q);
    CHECK(back.delta == s.delta);
    CHECK(back.corrupt == s.corrupt);
    CHECK(back.strategy.kind == s.strategy.kind);
    CHECK(back.strategy.exec_id == s.strategy.exec_id);
    CHECK(back.strategy.round == s.strategy.round);
    CHECK(back.seed == s.seed);
    CHECK(back.executions == s.executions);
    CHECK(back.stages == s.stages);
    CHECK(back.start_balance == s.start_balance);
    CHECK(scenario_to_json(back) == scenario_to_json(s));
}

TEST_CASE("duplex fields round-trip") {
    Scenario s;
    s.protocol = Protocol::Duplex;
    s.n = 2;
    s.duplex_window = 12;
    s.duplex_deposits = {30, 50};
    s.payments = 9;
    s.corrupt = {2};
    s.strategy.kind = Strategy::Kind::StaleDuplexSubmit;
    s.strategy.round = 3;
    Scenario back = scenario_from_json(scenario_to_json(s));
    CHECK(back.duplex_window == 12);
    CHECK(back.duplex_deposits == s.duplex_deposits);
    CHECK(back.payments == 9);
    CHECK(back.strategy.round == 3);
}

TEST_CASE("unknown fields and version mismatches are rejected") {
    ordered_json j = scenario_to_json(Scenario{});
    j["surprise"] = 1;
    CHECK_THROWS_AS((void)scenario_from_json(j), std::runtime_error);
    j = scenario_to_json(Scenario{});
    j["format_version"] = 2;
    CHECK_THROWS_AS((void)scenario_from_json(j), std::runtime_error);
    j = scenario_to_json(Scenario{});
    j["strategy"]["typo"] = true;
    CHECK_THROWS_AS((void)scenario_from_json(j), std::runtime_error);
}

TEST_CASE("semantic validation runs on load") {
    ordered_json j = scenario_to_json(Scenario{});
    j["n"] = 1;
    CHECK_THROWS_AS((void)scenario_from_json(j), std::runtime_error);
    j = scenario_to_json(Scenario{});
    j["protocol"] = "nonsense";
    CHECK_THROWS_AS((void)scenario_from_json(j), std::runtime_error);
    j = scenario_to_json(Scenario{});
    j["q"] = 5;  // not a multiple of lcm(1..2)=2
    CHECK_THROWS_AS((void)scenario_from_json(j), std::runtime_error);
}

TEST_CASE("every bundled scenario file loads and validates") {
    size_t count = 0;
    for (auto& entry : std::filesystem::directory_iterator(SCENARIO_DIR)) {
        if (entry.path().extension() != ".json") continue;
        Scenario s = load_scenario(entry.path().string());
        CHECK(s.valid());
        ++count;
    }
    CHECK(count >= 10);
}

TEST_CASE("malformed files throw") {
    CHECK_THROWS((void)load_scenario("/nonexistent/file.json"));
}
