#include "unigad/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace unigad {

Graph::Graph(int node_count, const std::vector<Edge>& edges) : node_count_(node_count) {
    if (node_count < 0) throw std::invalid_argument("negative node count");
    std::set<Edge> unique;
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= node_count || v >= node_count) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (u == v) throw std::invalid_argument("self-loop rejected");
        unique.emplace(std::min(u, v), std::max(u, v));
    }
    edges_.assign(unique.begin(), unique.end());

    std::vector<int> degree(node_count, 0);
    for (const auto& [u, v] : edges_) {
        ++degree[u];
        ++degree[v];
    }
    offsets_.assign(node_count + 1, 0);
    for (int v = 0; v < node_count; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    adjacency_.resize(offsets_[node_count]);
    std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
        adjacency_[fill[u]++] = v;
        adjacency_[fill[v]++] = u;
    }
    for (int v = 0; v < node_count; ++v) {
        std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
    }
}

std::span<const int> Graph::neighbors(int v) const {
    return {adjacency_.data() + offsets_[v],
            static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
}

int Graph::max_degree() const {
    int best = 0;
    for (int v = 0; v < node_count_; ++v) best = std::max(best, degree(v));
    return best;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= node_count_ || v >= node_count_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::set_features(Eigen::MatrixXd f) {
    if (f.rows() != node_count_) throw std::invalid_argument("feature row count mismatch");
    features_ = std::move(f);
}

void Graph::set_node_labels(std::vector<std::int8_t> labels) {
    if (static_cast<int>(labels.size()) != node_count_) {
        throw std::invalid_argument("node label count mismatch");
    }
    node_labels_ = std::move(labels);
}

void Graph::set_edge_labels(std::map<Edge, std::int8_t> labels) {
    for (const auto& [e, lab] : labels) {
        if (!has_edge(e.first, e.second)) {
            throw std::invalid_argument("labeled edge not present in adjacency");
        }
        (void)lab;
    }
    edge_labels_ = std::move(labels);
}

void Graph::set_graph_label(int label) {
    if (label != 0 && label != 1) throw std::invalid_argument("graph label must be 0/1");
    graph_label_ = label;
}

Fraction rayleigh_quotient(const Signal& signal, const Graph& graph,
                           std::span<const int> nodes) {
    if (nodes.empty()) throw std::invalid_argument("rayleigh_quotient: empty node set");
    std::unordered_set<int> in_set(nodes.begin(), nodes.end());
    double num = 0.0, den = 0.0;
    for (int v : nodes) {
        const double xv = signal[v];
        den += xv * xv;
        for (int u : graph.neighbors(v)) {
            if (u > v && in_set.count(u)) {
                const double d = xv - signal[u];
                num += d * d;
            }
        }
    }
    return Fraction(num, den);
}

Eigen::MatrixXd laplacian_dense(const Graph& graph, bool normalized) {
    const int n = graph.node_count();
    if (n > 10000) throw std::invalid_argument("laplacian_dense: graph too large for dense form");
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    if (!normalized) {
        for (int v = 0; v < n; ++v) L(v, v) = graph.degree(v);
        for (const auto& [u, v] : graph.edges()) {
            L(u, v) = -1.0;
            L(v, u) = -1.0;
        }
        return L;
    }
    Eigen::VectorXd dinv(n);
    for (int v = 0; v < n; ++v) {
        const int d = graph.degree(v);
        dinv[v] = d > 0 ? 1.0 / std::sqrt(static_cast<double>(d)) : 0.0;
        L(v, v) = d > 0 ? 1.0 : 0.0;
    }
    for (const auto& [u, v] : graph.edges()) {
        const double w = dinv[u] * dinv[v];
        L(u, v) = -w;
        L(v, u) = -w;
    }
    return L;
}

Signal composite_feature(const Eigen::MatrixXd& features) {
    const int n = static_cast<int>(features.rows());
    const int d = static_cast<int>(features.cols());
    if (d < 1) throw std::invalid_argument("composite_feature: need at least one dimension");
    Signal s;
    s.values = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < d; ++j) {
        const double lo = features.col(j).minCoeff();
        const double hi = features.col(j).maxCoeff();
        if (hi == lo) continue;  // constant dimension maps to 0
        const double scale = 1.0 / (hi - lo);
        for (int i = 0; i < n; ++i) {
            s.values[i] += std::abs((features(i, j) - lo) * scale);
        }
    }
    return s;
}

}  // namespace unigad
