// Copyright 2026 The gqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <vector>

#include "gqc/algebra.hpp"
#include "gqc/compiler.hpp"
#include "gqc/operators.hpp"
#include "gqc/simulator.hpp"
#include "gqc/verify.hpp"

namespace {

using namespace gqc;

std::vector<cplx> random_state(std::size_t dim) {
    std::vector<cplx> v(dim);
    double x = 0.1;
    for (auto& c : v) {
        x = std::fmod(x * 997.0 + 0.3, 1.0);
        c = {x - 0.5, 0.25 - x * x};
    }
    return v;
}

void BM_ExponentialOffDiagonal(benchmark::State& state) {
    auto layout = std::make_shared<const Layout>(circle_sixth(state.range(0)));
    GlobalOperator h(layout, TwoQubitHermitian::imag_family(1).matrix(), GroupElement{6});
    auto support = SiteSupport::full(layout->size());
    auto psi = random_state(support.dimension());
    for (auto _ : state) {
        apply_exponential(h, 0.01, support, psi);
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetItemsProcessed(state.iterations() * support.dimension());
}
BENCHMARK(BM_ExponentialOffDiagonal)->Arg(12)->Arg(18);

void BM_ExponentialDiagonal(benchmark::State& state) {
    auto layout = std::make_shared<const Layout>(circle_sixth(state.range(0)));
    GlobalOperator h(layout, TwoQubitHermitian::projector11().matrix(), GroupElement{1});
    auto support = SiteSupport::full(layout->size());
    auto psi = random_state(support.dimension());
    for (auto _ : state) {
        apply_exponential(h, 0.3, support, psi);
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetItemsProcessed(state.iterations() * support.dimension());
}
BENCHMARK(BM_ExponentialDiagonal)->Arg(12)->Arg(18);

void BM_GlobalOneQubit(benchmark::State& state) {
    auto support = SiteSupport::full(state.range(0));
    auto psi = random_state(support.dimension());
    Matrix2 u;
    u << cplx(0.6, 0), cplx(0, 0.8), cplx(0, 0.8), cplx(0.6, 0);
    for (auto _ : state) {
        apply_global_one_qubit(u, support, psi);
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetItemsProcessed(state.iterations() * support.dimension());
}
BENCHMARK(BM_GlobalOneQubit)->Arg(12)->Arg(18);

void BM_CompiledGateBlock(benchmark::State& state) {
    auto layout = std::make_shared<const Layout>(grid_slab(1, 7));
    LogicalGate g{GateKind::imag_rot, 1, 0.3927, {5}, {6}};
    CompilationBudget b;
    b.mode = BudgetMode::fixed;
    b.n1 = static_cast<std::uint64_t>(state.range(0));
    b.n2 = 32;
    auto seq = compile_local_gate(layout, g, b).sequence;
    SequenceRunner runner(layout);
    for (auto _ : state) benchmark::DoNotOptimize(runner.admissible_block(seq).leakage);
}
BENCHMARK(BM_CompiledGateBlock)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ShiftSectorClosure(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(universality_check(n).closure_dimension);
}
BENCHMARK(BM_ShiftSectorClosure)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CommutatorScaling(benchmark::State& state) {
    const Matrix4 u = random_unit_hermitian(1), v = random_unit_hermitian(2);
    std::vector<std::uint64_t> ns{16, 64, 256, 1024, 4096};
    for (auto _ : state) benchmark::DoNotOptimize(commutator_scaling(u, v, ns).slope);
}
BENCHMARK(BM_CommutatorScaling)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
