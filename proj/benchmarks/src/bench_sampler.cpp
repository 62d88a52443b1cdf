#include <benchmark/benchmark.h>

#include <random>
#include <set>
#include <vector>

#include "unigad/sampler.hpp"

using namespace unigad;

namespace {

Graph sparse_random_graph(int n, double avg_degree, std::mt19937_64& rng) {
    const long m = static_cast<long>(n * avg_degree / 2.0);
    std::set<Edge> edges;
    std::uniform_int_distribution<int> pick(0, n - 1);
    while (static_cast<long>(edges.size()) < m) {
        const int u = pick(rng), v = pick(rng);
        if (u != v) edges.insert({std::min(u, v), std::max(u, v)});
    }
    return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

Signal integer_signal(const Graph& g, std::mt19937_64& rng) {
    Eigen::VectorXd x(g.node_count());
    std::uniform_int_distribution<int> dist(-5, 5);
    for (int v = 0; v < g.node_count(); ++v) x[v] = dist(rng);
    return make_signal(std::move(x), g);
}

void bench_node_sampling(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int depth = static_cast<int>(state.range(1));
    std::mt19937_64 rng(42);
    const Graph g = sparse_random_graph(n, 6.0, rng);
    const Signal sig = integer_signal(g, rng);
    int v = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mrq_sample_node(g, sig, v, depth));
        v = (v + 1) % n;
    }
}
BENCHMARK(bench_node_sampling)
    ->ArgsProduct({{1000, 4000, 16000}, {1, 2}})
    ->Unit(benchmark::kMicrosecond);

void bench_edge_sampling(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(43);
    const Graph g = sparse_random_graph(n, 6.0, rng);
    const Signal sig = integer_signal(g, rng);
    std::size_t e = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mrq_sample_edge(g, sig, g.edges()[e], 2));
        e = (e + 1) % g.edges().size();
    }
}
BENCHMARK(bench_edge_sampling)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);

void bench_rooted_tree(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(44);
    const Graph g = sparse_random_graph(n, 6.0, rng);
    int v = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_rooted_tree(g, {v}, 2));
        v = (v + 1) % n;
    }
}
BENCHMARK(bench_rooted_tree)->Arg(4000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
