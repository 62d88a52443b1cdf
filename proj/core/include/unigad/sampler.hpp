#pragma once

#include <vector>

#include "unigad/fraction.hpp"
#include "unigad/graph.hpp"

namespace unigad {

/// BFS spanning subtree of the <= depth-hop neighborhood of one target node
/// or the two endpoints of a target edge. Nodes are stored in BFS order;
/// indices below are positions into `nodes`. When two frontier nodes could
/// claim the same child, the lower-id parent wins, and child lists are kept
/// sorted by ascending graph node id.
struct RootedTree {
    std::vector<int> roots;                  // graph node ids, 1 or 2
    std::vector<int> nodes;                  // graph node ids in BFS order
    std::vector<int> parent;                 // tree index of parent, -1 for roots
    std::vector<int> hop;                    // hops from the nearest root
    std::vector<std::vector<int>> children;  // tree indices, sorted by node id
    int depth_cap = 0;

    int size() const { return static_cast<int>(nodes.size()); }
};

RootedTree build_rooted_tree(const Graph& graph, const std::vector<int>& roots, int depth);

/// Stage-1 DP record for one tree node: the best gain fraction achievable by
/// a connected subgraph containing the node within its rooted subtree, the
/// node set attaining it, and the inferior candidates not yet profitable.
struct DeltaRecord {
    Fraction delta;                 // (a_v, b_v)
    std::vector<int> selected;      // tree indices, always contains the own node
    std::vector<int> inferior;      // indices into the record arena
    int tree_index = -1;
};

/// Runs Stage 1 rooted at tree node `v` (a non-root node) with its tree
/// parent `p`. `arena` owns the records of the whole traversal; the return
/// value is the index of v's record in the arena.
int get_max_deltas(const RootedTree& tree, const Signal& signal, int v, int p,
                   std::vector<DeltaRecord>& arena);

/// Connected max-RQ node set around the target(s), with hop distances,
/// normalized pooling weights and the exact quotient as a fraction.
struct SampledSubgraph {
    std::vector<int> nodes;              // graph node ids, sorted, contain roots
    Fraction rq;                         // over tree edges
    std::vector<int> hops;               // parallel to nodes
    std::vector<double> pool_weights;    // parallel to nodes, sums to 1
    std::vector<Fraction> merge_trace;   // rq after each accepted merge
};

SampledSubgraph mrq_sample_node(const Graph& graph, const Signal& signal, int target,
                                int depth, double decay = 0.5);

SampledSubgraph mrq_sample_edge(const Graph& graph, const Signal& signal, Edge edge,
                                int depth, double decay = 0.5);

/// Exhaustive oracle: maximum RQ over every connected subtree of `tree`
/// containing all roots (tree edges only), with the lexicographically
/// smallest achieving node set. Refuses trees with more than 20 nodes.
std::pair<Fraction, std::vector<int>> brute_force_max_rq(const RootedTree& tree,
                                                         const Signal& signal);

/// Process-wide instrumentation of sampler invocations (used to verify the
/// sample-once caching contract).
long sampler_call_count();
void reset_sampler_call_count();

/// Hop-decay pooling: weight(v) proportional to decay^hop(v), normalized to
/// sum 1. decay must lie in (0, 1].
std::vector<double> pooling_weights(const std::vector<int>& hops, double decay);

/// Marginal gain fraction of attaching `candidate` to `current`:
/// (cross-edge energy + internal candidate edge energy, candidate signal
/// energy). Candidate must be disjoint from current, internally connected
/// and adjacent to current.
Fraction delta_gain(const std::vector<int>& candidate, const std::vector<int>& current,
                    const Graph& graph, const Signal& signal);

}  // namespace unigad
