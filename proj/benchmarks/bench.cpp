#include <benchmark/benchmark.h>

#include "statechan/crypto.hpp"
#include "statechan/rng.hpp"
#include "statechan/scenario.hpp"
#include "statechan/sim.hpp"

using namespace statechan;

static void BM_Sha256(benchmark::State& state) {
    Rng rng(1);
    Bytes data = rng.bytes(static_cast<size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(crypto::sha256(data));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Sha256)->Arg(64)->Arg(4096);

static void BM_SchnorrSign(benchmark::State& state) {
    Rng rng(1);
    auto key = crypto::sig_keygen(rng);
    Bytes m = rng.bytes(64);
    for (auto _ : state) benchmark::DoNotOptimize(crypto::sig_sign(key, m));
}
BENCHMARK(BM_SchnorrSign);

static void BM_SchnorrVerify(benchmark::State& state) {
    Rng rng(1);
    auto key = crypto::sig_keygen(rng);
    Bytes m = rng.bytes(64);
    Bytes sig = crypto::sig_sign(key, m);
    for (auto _ : state) benchmark::DoNotOptimize(crypto::sig_verify(key.pk, m, sig));
}
BENCHMARK(BM_SchnorrVerify);

static void BM_NizkVerify(benchmark::State& state) {
    Rng rng(1);
    auto g = crypto::GroupElement::generator();
    auto h = crypto::hash_to_curve(to_bytes("bench-h"));
    auto x = crypto::Scalar::random(rng);
    auto proof = crypto::nizk_prove(x, g, h, rng);
    auto gx = g.mul(x);
    auto hx = h.mul(x);
    for (auto _ : state) benchmark::DoNotOptimize(crypto::nizk_verify(g, h, gx, hx, *proof));
}
BENCHMARK(BM_NizkVerify);

static void BM_MultiSign(benchmark::State& state) {
    Rng rng(1);
    auto mk = crypto::multi_keygen(static_cast<size_t>(state.range(0)), rng);
    std::vector<std::optional<crypto::Scalar>> shares(mk.shares.begin(), mk.shares.end());
    Bytes m = rng.bytes(64);
    for (auto _ : state) benchmark::DoNotOptimize(crypto::multi_sign(m, shares, mk.pk_master));
}
BENCHMARK(BM_MultiSign)->Arg(2)->Arg(4)->Arg(8);

static void BM_HonestRun(benchmark::State& state) {
    sim::Scenario s;
    s.protocol = static_cast<sim::Protocol>(state.range(0));
    s.n = s.protocol == sim::Protocol::Duplex ? 2 : 3;
    s.q = 6;
    s.executions = 2;
    if (s.protocol == sim::Protocol::Mscd) {
        s.stages = 1;
        s.start_balance = 2;
    }
    if (s.protocol == sim::Protocol::Duplex) {
        s.duplex_deposits = {50, 50};
        s.payments = 10;
    }
    for (auto _ : state) benchmark::DoNotOptimize(sim::run_scenario(s));
}
BENCHMARK(BM_HonestRun)->Arg(0)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
