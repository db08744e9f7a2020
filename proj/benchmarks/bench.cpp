#include "cucgarch/balls.hpp"
#include "cucgarch/cuc_estimation.hpp"
#include "cucgarch/garch.hpp"
#include "cucgarch/givens.hpp"
#include "cucgarch/psi.hpp"
#include "cucgarch/rng.hpp"
#include "cucgarch/simulator.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace cucgarch;

namespace {

Matrix sample(int n, int d, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> gauss;
    Matrix X(n, d);
    for (int t = 0; t < n; ++t)
        for (int j = 0; j < d; ++j) X(t, j) = gauss(rng);
    return X;
}

void BM_GivensCompose(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Matrix A = random_orthogonal(d, 1);
    Vector phi(angle_count(d));
    Rng rng(2);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int i = 0; i < phi.size(); ++i) phi(i) = uni(rng);
    for (auto _ : state) benchmark::DoNotOptimize(givens_compose(phi, d));
}
BENCHMARK(BM_GivensCompose)->Arg(3)->Arg(6)->Arg(10);

void BM_PsiEvaluate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Matrix X = sample(n, 3, 7);
    const BallFamily balls = build_ball_family(X, 1);
    const PsiEvaluator eval(X, balls);
    const Matrix A = random_orthogonal(3, 8);
    for (auto _ : state) benchmark::DoNotOptimize(eval(A));
}
BENCHMARK(BM_PsiEvaluate)->Arg(300)->Arg(1000)->Arg(3000);

void BM_PsiBuild(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Matrix X = sample(n, 3, 7);
    const BallFamily balls = build_ball_family(X, 1);
    for (auto _ : state) {
        PsiEvaluator eval(X, balls);
        benchmark::DoNotOptimize(eval);
    }
}
BENCHMARK(BM_PsiBuild)->Arg(300)->Arg(1000)->Arg(3000);

void BM_SigmaPath(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SimConfig sim = default_sim_config(n, 3);
    const Matrix Z = simulate_cuc_garch(sim) * sim.A;
    const auto p = make_targeted(3, 0, 0.08, 0.9);
    for (auto _ : state) benchmark::DoNotOptimize(sigma_path(Z, 0, p, 10));
}
BENCHMARK(BM_SigmaPath)->Arg(1000)->Arg(10000);

void BM_EstimateCuc(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SimConfig sim = default_sim_config(n, 5);
    const Matrix X = simulate_cuc_garch(sim);
    const BallFamily balls = build_ball_family(X, 1);
    CucOptConfig cfg;
    cfg.restarts = 3;
    for (auto _ : state) benchmark::DoNotOptimize(estimate_cuc(X, balls, cfg));
}
BENCHMARK(BM_EstimateCuc)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
