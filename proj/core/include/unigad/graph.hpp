#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "unigad/fraction.hpp"

namespace unigad {

constexpr std::int8_t kUnlabeled = -1;

using Edge = std::pair<int, int>;  // stored with first < second

/// Immutable undirected graph in compressed-adjacency form with node
/// features and optional node/edge/graph anomaly labels.
class Graph {
public:
    Graph() : offsets_{0} {}

    /// Builds the graph from an undirected edge list. Rejects self-loops,
    /// duplicate edges and out-of-range endpoints.
    Graph(int node_count, const std::vector<Edge>& edges);

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    std::span<const int> neighbors(int v) const;
    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
    int max_degree() const;
    bool has_edge(int u, int v) const;

    /// Unique undirected edges, each with first < second, sorted.
    const std::vector<Edge>& edges() const { return edges_; }

    // Node features, row per node.
    const Eigen::MatrixXd& features() const { return features_; }
    void set_features(Eigen::MatrixXd f);
    int feat_dim() const { return static_cast<int>(features_.cols()); }

    // Labels: 0/1, kUnlabeled when absent.
    const std::vector<std::int8_t>& node_labels() const { return node_labels_; }
    void set_node_labels(std::vector<std::int8_t> labels);
    bool has_node_labels() const { return !node_labels_.empty(); }

    const std::map<Edge, std::int8_t>& edge_labels() const { return edge_labels_; }
    void set_edge_labels(std::map<Edge, std::int8_t> labels);
    bool has_edge_labels() const { return !edge_labels_.empty(); }

    std::optional<int> graph_label() const { return graph_label_; }
    void set_graph_label(int label);

private:
    int node_count_ = 0;
    std::vector<int> offsets_;
    std::vector<int> adjacency_;
    std::vector<Edge> edges_;
    Eigen::MatrixXd features_;
    std::vector<std::int8_t> node_labels_;
    std::map<Edge, std::int8_t> edge_labels_;
    std::optional<int> graph_label_;
};

/// Per-node scalar signal used in all Rayleigh-quotient formulas.
struct Signal {
    Eigen::VectorXd values;

    double operator[](int v) const { return values[v]; }
    int size() const { return static_cast<int>(values.size()); }
};

/// Validated signal constructor: length must match the graph, values finite.
Signal make_signal(Eigen::VectorXd values, const Graph& graph);

/// Edge-sum Rayleigh quotient of the subgraph induced on `nodes`:
/// (sum over induced edges of (x_i - x_j)^2, sum over nodes of x_i^2).
/// Each undirected edge is counted once. Throws on an empty node set.
Fraction rayleigh_quotient(const Signal& signal, const Graph& graph,
                           std::span<const int> nodes);

/// Dense Laplacian for oracle/test use (node_count capped at 10^4).
/// Regular form D - A; normalized form I - D^{-1/2} A D^{-1/2} with the
/// normalization term of isolated nodes treated as 0.
Eigen::MatrixXd laplacian_dense(const Graph& graph, bool normalized = false);

/// Composite scalar anomaly signal: min-max scale every feature dimension
/// to [0,1] over all nodes (constant dimensions map to 0), then take the
/// per-node 1-norm of the scaled features.
Signal composite_feature(const Eigen::MatrixXd& features);

}  // namespace unigad
