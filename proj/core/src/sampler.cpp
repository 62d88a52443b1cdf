#include "unigad/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace unigad {

namespace {

struct Candidate {
    int record;      // arena index
    int node_id;     // graph node id, for deterministic tie-breaks
};

// Largest delta first; equal fractions broken by lower node id.
struct CandidateOrder {
    const std::vector<DeltaRecord>* arena;
    bool operator()(const Candidate& a, const Candidate& b) const {
        const int c = compare((*arena)[a.record].delta, (*arena)[b.record].delta);
        if (c != 0) return c < 0;  // smaller delta = lower priority
        return a.node_id > b.node_id;
    }
};

using CandidateQueue = std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder>;

// Shared greedy loop of Stage 1 and Stage 2: merge the best candidate while
// it strictly raises the running quotient, re-activating the merged record's
// inferior candidates. Returns the surviving candidates as the inferior set.
std::vector<int> greedy_merge(const RootedTree& tree, std::vector<DeltaRecord>& arena,
                              double& a, double& b, std::vector<int>& selected,
                              CandidateQueue& queue,
                              std::vector<Fraction>* trace = nullptr) {
    while (!queue.empty()) {
        const Candidate cand = queue.top();
        const DeltaRecord& rec = arena[cand.record];
        const Fraction merged(a + rec.delta.num, b + rec.delta.den);
        if (!(merged > Fraction(a, b))) break;  // strict improvement only
        queue.pop();
        a = merged.num;
        b = merged.den;
        selected.insert(selected.end(), rec.selected.begin(), rec.selected.end());
        for (int inf : rec.inferior) {
            queue.push(Candidate{inf, tree.nodes[arena[inf].tree_index]});
        }
        if (trace) trace->push_back(Fraction(a, b));
    }
    std::vector<int> inferior;
    inferior.reserve(queue.size());
    while (!queue.empty()) {
        inferior.push_back(queue.top().record);
        queue.pop();
    }
    return inferior;
}

SampledSubgraph finalize(const RootedTree& tree, double a, double b,
                         std::vector<int> selected_tree_indices, double decay,
                         std::vector<Fraction> trace) {
    std::sort(selected_tree_indices.begin(), selected_tree_indices.end(),
              [&](int x, int y) { return tree.nodes[x] < tree.nodes[y]; });
    SampledSubgraph out;
    out.rq = Fraction(a, b);
    out.merge_trace = std::move(trace);
    out.nodes.reserve(selected_tree_indices.size());
    out.hops.reserve(selected_tree_indices.size());
    for (int ti : selected_tree_indices) {
        out.nodes.push_back(tree.nodes[ti]);
        out.hops.push_back(tree.hop[ti]);
    }
    out.pool_weights = pooling_weights(out.hops, decay);
    return out;
}

SampledSubgraph sample_from_tree(const RootedTree& tree, const Signal& signal,
                                 double init_num, double init_den, double decay) {
    std::vector<DeltaRecord> arena;
    CandidateQueue queue{CandidateOrder{&arena}};
    // Arena may reallocate during recursion; the comparator dereferences the
    // vector itself, so reserve up front to keep candidate pushes cheap.
    arena.reserve(tree.size());

    std::vector<int> selected;
    for (std::size_t ri = 0; ri < tree.roots.size(); ++ri) selected.push_back(static_cast<int>(ri));

    double a = init_num, b = init_den;
    for (std::size_t ri = 0; ri < tree.roots.size(); ++ri) {
        for (int c : tree.children[static_cast<int>(ri)]) {
            const int rec = get_max_deltas(tree, signal, c, static_cast<int>(ri), arena);
            queue.push(Candidate{rec, tree.nodes[c]});
        }
    }
    std::vector<Fraction> trace;
    greedy_merge(tree, arena, a, b, selected, queue, &trace);
    return finalize(tree, a, b, std::move(selected), decay, std::move(trace));
}

}  // namespace

namespace {
std::atomic<long> g_sampler_calls{0};
}

long sampler_call_count() { return g_sampler_calls.load(); }
void reset_sampler_call_count() { g_sampler_calls.store(0); }

int get_max_deltas(const RootedTree& tree, const Signal& signal, int v, int p,
                   std::vector<DeltaRecord>& arena) {
    if (tree.parent[v] != p) {
        throw std::invalid_argument("get_max_deltas: p must be the tree parent of v");
    }
    const double xv = signal[tree.nodes[v]];
    const double xp = signal[tree.nodes[p]];
    double a = (xv - xp) * (xv - xp);
    double b = xv * xv;
    std::vector<int> selected{v};

    CandidateQueue queue{CandidateOrder{&arena}};
    for (int c : tree.children[v]) {
        const int rec = get_max_deltas(tree, signal, c, v, arena);
        queue.push(Candidate{rec, tree.nodes[c]});
    }
    std::vector<int> inferior = greedy_merge(tree, arena, a, b, selected, queue);

    DeltaRecord record;
    record.delta = Fraction(a, b);
    record.selected = std::move(selected);
    record.inferior = std::move(inferior);
    record.tree_index = v;
    arena.push_back(std::move(record));
    return static_cast<int>(arena.size()) - 1;
}

SampledSubgraph mrq_sample_node(const Graph& graph, const Signal& signal, int target,
                                int depth, double decay) {
    ++g_sampler_calls;
    const RootedTree tree = build_rooted_tree(graph, {target}, depth);
    const double xr = signal[target];
    return sample_from_tree(tree, signal, 0.0, xr * xr, decay);
}

SampledSubgraph mrq_sample_edge(const Graph& graph, const Signal& signal, Edge edge,
                                int depth, double decay) {
    if (!graph.has_edge(edge.first, edge.second)) {
        throw std::invalid_argument("mrq_sample_edge: edge not present");
    }
    ++g_sampler_calls;
    const RootedTree tree = build_rooted_tree(graph, {edge.first, edge.second}, depth);
    const double xu = signal[edge.first];
    const double xv = signal[edge.second];
    return sample_from_tree(tree, signal, (xu - xv) * (xu - xv), xu * xu + xv * xv, decay);
}

std::pair<Fraction, std::vector<int>> brute_force_max_rq(const RootedTree& tree,
                                                         const Signal& signal) {
    const int n = tree.size();
    if (n > 20) throw std::invalid_argument("brute_force_max_rq: tree too large");
    const int num_roots = static_cast<int>(tree.roots.size());

    // Precompute per-node parent-edge energy and signal energy.
    std::vector<double> edge_energy(n, 0.0), node_energy(n, 0.0);
    for (int ti = 0; ti < n; ++ti) {
        const double x = signal[tree.nodes[ti]];
        node_energy[ti] = x * x;
        if (tree.parent[ti] >= 0) {
            const double d = x - signal[tree.nodes[tree.parent[ti]]];
            edge_energy[ti] = d * d;
        }
    }
    double root_edge = 0.0;
    if (num_roots == 2) {
        const double d = signal[tree.roots[0]] - signal[tree.roots[1]];
        root_edge = d * d;
    }

    Fraction best(0.0, 0.0);
    std::vector<int> best_nodes;
    bool have_best = false;

    // Enumerate down-closed sets: a node may be included only if its parent
    // is. Nodes are in BFS order, so parents precede children.
    const int free_count = n - num_roots;
    for (std::uint32_t mask = 0; mask < (1u << free_count); ++mask) {
        std::vector<char> in(n, 0);
        for (int r = 0; r < num_roots; ++r) in[r] = 1;
        bool valid = true;
        for (int i = 0; i < free_count && valid; ++i) {
            if (mask & (1u << i)) {
                const int ti = num_roots + i;
                if (!in[tree.parent[ti]]) valid = false;
                in[ti] = 1;
            }
        }
        if (!valid) continue;
        double num = root_edge, den = 0.0;
        for (int ti = 0; ti < n; ++ti) {
            if (!in[ti]) continue;
            den += node_energy[ti];
            if (tree.parent[ti] >= 0) num += edge_energy[ti];
        }
        const Fraction rq(num, den);
        std::vector<int> nodes;
        for (int ti = 0; ti < n; ++ti) {
            if (in[ti]) nodes.push_back(tree.nodes[ti]);
        }
        std::sort(nodes.begin(), nodes.end());
        const int c = have_best ? compare(rq, best) : 1;
        if (c > 0 || (c == 0 && nodes < best_nodes)) {
            best = rq;
            best_nodes = std::move(nodes);
            have_best = true;
        }
    }
    return {best, best_nodes};
}

std::vector<double> pooling_weights(const std::vector<int>& hops, double decay) {
    if (hops.empty()) throw std::invalid_argument("pooling_weights: empty subgraph");
    if (!(decay > 0.0) || decay > 1.0) {
        throw std::invalid_argument("pooling_weights: decay must lie in (0, 1]");
    }
    std::vector<double> w(hops.size());
    double total = 0.0;
    for (std::size_t i = 0; i < hops.size(); ++i) {
        w[i] = std::pow(decay, hops[i]);
        total += w[i];
    }
    for (double& x : w) x /= total;
    return w;
}

Fraction delta_gain(const std::vector<int>& candidate, const std::vector<int>& current,
                    const Graph& graph, const Signal& signal) {
    if (candidate.empty()) throw std::invalid_argument("delta_gain: empty candidate");
    std::unordered_set<int> cand(candidate.begin(), candidate.end());
    std::unordered_set<int> cur(current.begin(), current.end());
    for (int v : candidate) {
        if (cur.count(v)) throw std::invalid_argument("delta_gain: candidate overlaps current");
    }
    // Candidate must be internally connected and attached to the current set.
    std::vector<int> stack{candidate.front()};
    std::unordered_set<int> seen{candidate.front()};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : graph.neighbors(v)) {
            if (cand.count(u) && !seen.count(u)) {
                seen.insert(u);
                stack.push_back(u);
            }
        }
    }
    bool attached = false;
    for (int v : candidate) {
        for (int u : graph.neighbors(v)) {
            if (cur.count(u)) attached = true;
        }
    }
    if (seen.size() != cand.size() || !attached) {
        throw std::invalid_argument("delta_gain: candidate must be connected to current");
    }

    double num = 0.0, den = 0.0;
    for (int v : candidate) {
        const double xv = signal[v];
        den += xv * xv;
        for (int u : graph.neighbors(v)) {
            if (cur.count(u)) {
                const double d = xv - signal[u];
                num += d * d;
            } else if (cand.count(u) && u > v) {
                const double d = xv - signal[u];
                num += d * d;
            }
        }
    }
    return Fraction(num, den);
}

}  // namespace unigad
