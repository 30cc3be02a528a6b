#include <benchmark/benchmark.h>

#include <blockip/certificate.hpp>
#include <blockip/cone.hpp>
#include <blockip/graver.hpp>
#include <blockip/mip.hpp>
#include <blockip/nfold.hpp>
#include <blockip/reductions.hpp>
#include <blockip/twostage.hpp>

using namespace blockip;

namespace {

IntMat row_matrix(std::vector<std::vector<Int>> rows, std::size_t ncols) {
    auto cols = make_vars("v", ncols);
    auto rws = make_vars("r", rows.size());
    return mat_from_rows(cols, rws, rows);
}

}  // namespace

static void BM_BaseSolutions(benchmark::State& state) {
    IntMat D = row_matrix({{3, 5, -2}}, 3);
    IntVec b = vec_of(make_vars("r", 1), {11});
    graver_basis(D);  // warm the completion cache; the DFS itself is timed
    for (auto _ : state) {
        auto bases = base_solutions(D, b, Int(200));
        benchmark::DoNotOptimize(bases);
    }
}
BENCHMARK(BM_BaseSolutions);

static void BM_WeylDual2D(benchmark::State& state) {
    auto x2 = make_vars("x", 2);
    std::vector<IntVec> gens = {vec_of(x2, {2, 1}), vec_of(x2, {1, 2}), vec_of(x2, {1, 1})};
    for (auto _ : state) {
        auto rep = weyl_dual(gens);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_WeylDual2D);

static void BM_ConeConstants(benchmark::State& state) {
    auto x1 = make_vars("x", 1);
    std::vector<IntVec> gens = {vec_of(x1, {3}), vec_of(x1, {5})};
    auto rep = weyl_dual(gens);
    for (auto _ : state) {
        auto cc = cone_constants(rep);
        benchmark::DoNotOptimize(cc);
    }
}
BENCHMARK(BM_ConeConstants);

static void BM_Simplex(benchmark::State& state) {
    MixedProgram p;
    std::vector<std::size_t> v;
    long n = state.range(0);
    for (long j = 0; j < n; ++j)
        v.push_back(p.add_var("x" + std::to_string(j), Int(0), Int(10), Int(j % 7 - 3), false));
    for (long i = 0; i + 1 < n; ++i)
        p.add_constraint({{v[i], 2}, {v[i + 1], 3}}, Rel::Ge, 5);
    for (auto _ : state) {
        auto out = lp_solve(p);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_Simplex)->Arg(8)->Arg(16)->Arg(32);

static void BM_SubsetSumSolve(benchmark::State& state) {
    std::vector<Int> a;
    for (long i = 0; i < state.range(0); ++i) a.push_back(3 + (i * 5) % 17);
    Int target = 0;
    for (std::size_t i = 0; i < a.size(); i += 2) target += a[i];
    NFoldProgram P = gen_subset_sum(a, target);
    for (auto _ : state) {
        auto res = solve_nfold(P);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_SubsetSumSolve)->Arg(4)->Arg(8);

static void BM_TwoStageDirect(benchmark::State& state) {
    CnfFormula phi;
    phi.nvars = 3;
    phi.clauses = {{{1, -2, 3}}, {{-1, 2, 2}}, {{-3, -2, 1}}};
    TwoStageProgram P = gen_3sat(phi);
    for (auto _ : state) {
        auto v = solve_twostage_direct(P, {});
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_TwoStageDirect);

BENCHMARK_MAIN();
