#include "unigad/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace unigad {

namespace {

constexpr int kSingleFeatDim = 8;
constexpr int kMultiFeatDim = 4;
constexpr double kAnomNodeProb = 0.9;
constexpr double kNormalNodeProb = 0.05;

// Preferential-attachment backbone: each new node attaches to two distinct
// existing nodes chosen proportionally to degree.
std::vector<Edge> preferential_attachment(int n, std::mt19937_64& rng) {
    std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 2}};
    std::vector<int> stubs{0, 1, 2, 0, 1, 2};  // endpoint multiset
    for (int v = 3; v < n; ++v) {
        std::set<int> targets;
        while (targets.size() < 2) {
            std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
            targets.insert(stubs[pick(rng)]);
        }
        for (int t : targets) {
            edges.emplace_back(std::min(v, t), std::max(v, t));
            stubs.push_back(v);
            stubs.push_back(t);
        }
    }
    return edges;
}

}  // namespace

bool Dataset::has_node_labels() const {
    return !graphs.empty() && graphs.front().has_node_labels();
}
bool Dataset::has_edge_labels() const {
    return !graphs.empty() && graphs.front().has_edge_labels();
}
bool Dataset::has_graph_labels() const {
    return !graphs.empty() && graphs.front().graph_label().has_value();
}

AnomalyMode anomaly_mode_from_name(const std::string& name) {
    if (name == "contextual") return AnomalyMode::contextual;
    if (name == "structural") return AnomalyMode::structural;
    if (name == "mixed") return AnomalyMode::mixed;
    throw std::invalid_argument("unknown anomaly mode: " + name);
}

std::map<Edge, std::int8_t> edge_labels_from_nodes(const Graph& graph,
                                                   const std::vector<double>& node_probs,
                                                   bool bernoulli, std::mt19937_64& rng) {
    if (static_cast<int>(node_probs.size()) != graph.node_count()) {
        throw std::invalid_argument("edge_labels_from_nodes: probability count mismatch");
    }
    for (double p : node_probs) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("node probability outside [0,1]");
    }
    std::map<Edge, std::int8_t> labels;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& e : graph.edges()) {
        const double p = 0.5 * (node_probs[e.first] + node_probs[e.second]);
        const bool anom = bernoulli ? (unit(rng) < p) : (p >= 0.5);
        labels[e] = anom ? 1 : 0;
    }
    return labels;
}

Dataset synth_single_graph(int n, double anomaly_rate, AnomalyMode mode, std::uint64_t seed) {
    if (n < 50) throw std::invalid_argument("synth_single_graph: n must be >= 50");
    if (!(anomaly_rate > 0.0) || anomaly_rate >= 0.5) {
        throw std::invalid_argument("synth_single_graph: anomaly_rate must lie in (0, 0.5)");
    }
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges = preferential_attachment(n, rng);

    const int num_anomalies = static_cast<int>(std::floor(anomaly_rate * n));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::int8_t> labels(n, 0);
    std::vector<int> anomalies(order.begin(), order.begin() + num_anomalies);
    for (int v : anomalies) labels[v] = 1;

    // Structural anomalies: dense cliques over groups of anomalous nodes.
    const bool structural = mode != AnomalyMode::contextual;
    const bool contextual = mode != AnomalyMode::structural;
    if (structural) {
        constexpr int kCliqueSize = 5;
        for (std::size_t i = 0; i + 1 < anomalies.size(); i += kCliqueSize) {
            const std::size_t hi = std::min(i + kCliqueSize, anomalies.size());
            for (std::size_t a = i; a < hi; ++a) {
                for (std::size_t b = a + 1; b < hi; ++b) {
                    edges.emplace_back(std::min(anomalies[a], anomalies[b]),
                                       std::max(anomalies[a], anomalies[b]));
                }
            }
        }
    }

    Graph graph(n, edges);

    std::normal_distribution<double> base(0.0, 1.0);
    std::normal_distribution<double> shifted(3.0, 2.0);
    Eigen::MatrixXd feats(n, kSingleFeatDim);
    for (int v = 0; v < n; ++v) {
        const bool outlier = contextual && labels[v] == 1;
        for (int j = 0; j < kSingleFeatDim; ++j) {
            feats(v, j) = outlier ? shifted(rng) : base(rng);
        }
    }
    graph.set_features(std::move(feats));
    graph.set_node_labels(labels);

    std::vector<double> node_probs(n);
    for (int v = 0; v < n; ++v) node_probs[v] = labels[v] ? kAnomNodeProb : kNormalNodeProb;
    graph.set_edge_labels(edge_labels_from_nodes(graph, node_probs, /*bernoulli=*/false, rng));

    Dataset ds;
    ds.multi = false;
    ds.seed = seed;
    ds.graphs.push_back(std::move(graph));
    return ds;
}

Dataset synth_multi_graph(int num_graphs, int min_nodes, int max_nodes,
                          double graph_anomaly_rate, std::uint64_t seed) {
    if (num_graphs < 20) throw std::invalid_argument("synth_multi_graph: need >= 20 graphs");
    if (min_nodes < 8 || max_nodes < min_nodes) {
        throw std::invalid_argument("synth_multi_graph: invalid node range");
    }
    if (!(graph_anomaly_rate > 0.0) || graph_anomaly_rate >= 1.0) {
        throw std::invalid_argument("synth_multi_graph: invalid anomaly rate");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size_dist(min_nodes, max_nodes);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> base(0.0, 1.0);
    std::normal_distribution<double> elevated(2.5, 1.0);
    constexpr int kMotifSize = 6;

    // Deterministic anomaly count so the rate -> 0 limit yields no labels.
    std::vector<char> is_anomalous(num_graphs, 0);
    {
        const int num_anom = static_cast<int>(std::llround(graph_anomaly_rate * num_graphs));
        std::vector<int> order(num_graphs);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (int i = 0; i < num_anom; ++i) is_anomalous[order[i]] = 1;
    }

    Dataset ds;
    ds.multi = true;
    ds.seed = seed;
    for (int g = 0; g < num_graphs; ++g) {
        const int n = size_dist(rng);
        const bool anomalous = is_anomalous[g] != 0;
        std::vector<Edge> edges;
        // Backbone: random tree, closed into a ring half the time.
        for (int v = 1; v < n; ++v) {
            std::uniform_int_distribution<int> pick(0, v - 1);
            const int u = pick(rng);
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        if (unit(rng) < 0.5) edges.emplace_back(0, n - 1);

        std::vector<std::int8_t> labels(n, 0);
        if (anomalous) {
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<int> motif(order.begin(), order.begin() + kMotifSize);
            for (std::size_t a = 0; a < motif.size(); ++a) {
                labels[motif[a]] = 1;
                for (std::size_t b = a + 1; b < motif.size(); ++b) {
                    edges.emplace_back(std::min(motif[a], motif[b]),
                                       std::max(motif[a], motif[b]));
                }
            }
        }

        Graph graph(n, edges);
        Eigen::MatrixXd feats(n, kMultiFeatDim);
        for (int v = 0; v < n; ++v) {
            for (int j = 0; j < kMultiFeatDim; ++j) {
                feats(v, j) = labels[v] ? elevated(rng) : base(rng);
            }
        }
        graph.set_features(std::move(feats));
        graph.set_node_labels(labels);
        graph.set_graph_label(anomalous ? 1 : 0);
        ds.graphs.push_back(std::move(graph));
    }
    return ds;
}

namespace {

// Stratified assignment of one target family. Targets with the same label
// are shuffled and dealt train_frac to train, remainder alternating val/test.
bool assign_stratified(const std::vector<int>& items, const std::vector<int>& labels,
                       double train_frac, std::mt19937_64& rng,
                       std::vector<std::int8_t>& out) {
    for (int cls = 0; cls <= 1; ++cls) {
        std::vector<int> members;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (labels[i] == cls) members.push_back(items[i]);
        }
        if (members.empty()) continue;
        std::shuffle(members.begin(), members.end(), rng);
        const int n_train = static_cast<int>(std::llround(train_frac * members.size()));
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (static_cast<int>(i) < n_train) {
                out[members[i]] = static_cast<std::int8_t>(SplitPart::train);
            } else {
                const bool to_val = ((i - n_train) % 2) == 0;
                out[members[i]] =
                    static_cast<std::int8_t>(to_val ? SplitPart::val : SplitPart::test);
            }
        }
        // Stratification must leave at least one member of each present
        // class in train.
        if (n_train == 0) return false;
    }
    return true;
}

}  // namespace

void split(Dataset& dataset, double train_frac, std::uint64_t seed) {
    if (!(train_frac > 0.0) || train_frac >= 1.0) {
        throw std::invalid_argument("split: train_frac must lie in (0, 1)");
    }
    for (int attempt = 0; attempt < 10; ++attempt) {
        std::mt19937_64 rng(seed + attempt);
        bool ok = true;

        dataset.node_split.assign(dataset.graphs.size(), {});
        dataset.edge_split.assign(dataset.graphs.size(), {});
        dataset.graph_split.assign(dataset.graphs.size(),
                                   static_cast<std::int8_t>(SplitPart::none));

        if (dataset.multi) {
            // Whole-graph split, stratified by graph label; nodes and edges
            // inherit their graph's partition.
            std::vector<int> items, labels;
            for (std::size_t g = 0; g < dataset.graphs.size(); ++g) {
                items.push_back(static_cast<int>(g));
                labels.push_back(dataset.graphs[g].graph_label().value_or(0));
            }
            std::vector<std::int8_t> parts(dataset.graphs.size(),
                                           static_cast<std::int8_t>(SplitPart::none));
            ok = assign_stratified(items, labels, train_frac, rng, parts);
            dataset.graph_split = parts;
            for (std::size_t g = 0; g < dataset.graphs.size(); ++g) {
                const Graph& graph = dataset.graphs[g];
                dataset.node_split[g].assign(graph.node_count(), parts[g]);
                for (const auto& [e, lab] : graph.edge_labels()) {
                    dataset.edge_split[g][e] = parts[g];
                }
            }
        } else {
            const Graph& graph = dataset.graphs.front();
            if (graph.has_node_labels()) {
                std::vector<int> items, labels;
                for (int v = 0; v < graph.node_count(); ++v) {
                    if (graph.node_labels()[v] != kUnlabeled) {
                        items.push_back(v);
                        labels.push_back(graph.node_labels()[v]);
                    }
                }
                std::vector<std::int8_t> parts(graph.node_count(),
                                               static_cast<std::int8_t>(SplitPart::none));
                ok = assign_stratified(items, labels, train_frac, rng, parts) && ok;
                dataset.node_split[0] = parts;
            }
            if (graph.has_edge_labels()) {
                std::vector<int> items, labels;
                std::vector<Edge> edge_at;
                for (const auto& [e, lab] : graph.edge_labels()) {
                    if (lab != kUnlabeled) {
                        items.push_back(static_cast<int>(edge_at.size()));
                        edge_at.push_back(e);
                        labels.push_back(lab);
                    }
                }
                std::vector<std::int8_t> parts(edge_at.size(),
                                               static_cast<std::int8_t>(SplitPart::none));
                ok = assign_stratified(items, labels, train_frac, rng, parts) && ok;
                for (std::size_t i = 0; i < edge_at.size(); ++i) {
                    dataset.edge_split[0][edge_at[i]] = parts[i];
                }
            }
        }
        if (ok) {
            dataset.has_split = true;
            return;
        }
    }
    throw std::runtime_error("split: stratification failed after 10 attempts");
}

Graph filtered_single_graph(const Dataset& dataset) {
    if (dataset.multi) throw std::invalid_argument("filtered_single_graph: multi-graph dataset");
    const Graph& g = dataset.graphs.front();
    if (!dataset.has_split) return g;
    const auto& parts = dataset.node_split.front();
    std::vector<Edge> kept;
    for (const auto& e : g.edges()) {
        const auto pu = parts[e.first], pv = parts[e.second];
        const bool cross =
            (pu == static_cast<std::int8_t>(SplitPart::train) &&
             pv == static_cast<std::int8_t>(SplitPart::test)) ||
            (pu == static_cast<std::int8_t>(SplitPart::test) &&
             pv == static_cast<std::int8_t>(SplitPart::train));
        if (!cross) kept.push_back(e);
    }
    Graph filtered(g.node_count(), kept);
    filtered.set_features(g.features());
    if (g.has_node_labels()) filtered.set_node_labels(g.node_labels());
    if (g.has_edge_labels()) {
        std::map<Edge, std::int8_t> labels;
        for (const auto& [e, lab] : g.edge_labels()) {
            if (filtered.has_edge(e.first, e.second)) labels[e] = lab;
        }
        filtered.set_edge_labels(std::move(labels));
    }
    return filtered;
}

}  // namespace unigad
