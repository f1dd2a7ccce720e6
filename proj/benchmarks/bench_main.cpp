#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "tww/contraction.hpp"
#include "tww/exact.hpp"
#include "tww/fen.hpp"
#include "tww/generators.hpp"
#include "tww/graph.hpp"
#include "tww/io.hpp"
#include "tww/vi.hpp"

namespace {

tww::Trigraph random_graph(int n, double p, unsigned seed) {
    std::mt19937 rng(seed);
    std::bernoulli_distribution coin(p);
    tww::Trigraph g = tww::Trigraph::with_vertices(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v, tww::EdgeColor::Black);
    return g;
}

void BM_contract_chain(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    tww::Trigraph g = random_graph(n, 0.1, 7);
    for (auto _ : state) {
        tww::ReplayState st(g);
        for (int i = 0; i + 1 < n; ++i)
            st.apply({st.current().vertices()[0], st.current().vertices()[1], st.next_fresh()});
        benchmark::DoNotOptimize(st.width());
    }
}
BENCHMARK(BM_contract_chain)->Arg(64)->Arg(256);

void BM_bag_oracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    tww::Trigraph g = random_graph(n, 0.2, 11);
    tww::ReplayState st(g);
    for (int i = 0; i + 2 < n; ++i)
        st.apply({st.current().vertices()[0], st.current().vertices()[1], st.next_fresh()});
    for (auto _ : state)
        benchmark::DoNotOptimize(tww::trigraph_from_bags(g, st.bags()));
}
BENCHMARK(BM_bag_oracle)->Arg(64)->Arg(256);

void BM_exact_paley5(benchmark::State& state) {
    const tww::Trigraph g = tww::paley(5);
    for (auto _ : state) benchmark::DoNotOptimize(tww::optimal_sequence(g).width);
}
BENCHMARK(BM_exact_paley5);

void BM_exact_random10(benchmark::State& state) {
    const tww::Trigraph g = random_graph(10, 0.4, 3);
    for (auto _ : state) benchmark::DoNotOptimize(tww::optimal_sequence(g).width);
}
BENCHMARK(BM_exact_random10);

void BM_decide_cycle20(benchmark::State& state) {
    const tww::Trigraph g = tww::cycle_graph(20);
    for (auto _ : state)
        benchmark::DoNotOptimize(tww::decide_width_at_most(g, 2).has_value());
}
BENCHMARK(BM_decide_cycle20);

void BM_fen_tree_plus_2(benchmark::State& state) {
    const tww::Trigraph g = tww::tree_plus_k(13, 2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(tww::fen_approximate(g).width);
}
BENCHMARK(BM_fen_tree_plus_2);

void BM_sqrt_bound(benchmark::State& state) {
    const tww::Trigraph g =
        tww::tree_plus_k(static_cast<int>(state.range(0)), 8, 1);
    for (auto _ : state) benchmark::DoNotOptimize(tww::sqrt_bound_sequence(g).width);
}
BENCHMARK(BM_sqrt_bound)->Arg(100)->Arg(400);

void BM_kernelize_theta(benchmark::State& state) {
    tww::Trigraph g = tww::Trigraph::with_vertices(2);
    tww::Vertex next = 2;
    for (int p = 0; p < 3; ++p) {
        tww::Vertex prev = 0;
        for (int i = 0; i < 40; ++i) {
            g.add_vertex(next);
            g.add_edge(prev, next, tww::EdgeColor::Black);
            prev = next++;
        }
        g.add_edge(prev, 1, tww::EdgeColor::Black);
    }
    for (auto _ : state) {
        tww::TidyPreprocessResult pre = tww::tidy_preprocess(g, 2);
        benchmark::DoNotOptimize(tww::shorten_paths_kernel(*pre.tidy, 2).kernel_vertices);
    }
}
BENCHMARK(BM_kernelize_theta);

void BM_vi_replicated(benchmark::State& state) {
    const tww::Trigraph g = tww::replicated_components({2, 2, 6, 4});
    for (auto _ : state)
        benchmark::DoNotOptimize(tww::vi_approximate(g, std::uint64_t{4}).width);
}
BENCHMARK(BM_vi_replicated);

void BM_vertex_integrity(benchmark::State& state) {
    const tww::Trigraph g = tww::replicated_components({2, 3, 6, 5});
    for (auto _ : state) benchmark::DoNotOptimize(tww::vertex_integrity(g, 12).p);
}
BENCHMARK(BM_vertex_integrity);

void BM_io_roundtrip(benchmark::State& state) {
    const tww::Trigraph g = tww::tree_plus_k(500, 10, 2);
    for (auto _ : state) {
        std::stringstream buf;
        tww::write_graph(buf, g);
        benchmark::DoNotOptimize(tww::read_graph(buf).vertex_count());
    }
}
BENCHMARK(BM_io_roundtrip);

}  // namespace

BENCHMARK_MAIN();
