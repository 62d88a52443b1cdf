#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "unigad/graph.hpp"

namespace unigad {

enum class SplitPart : std::int8_t { none = -1, train = 0, val = 1, test = 2 };

/// One synthetic benchmark: a single attributed graph or a collection of
/// graphs, with per-level label availability and a per-target split.
struct Dataset {
    bool multi = false;
    std::vector<Graph> graphs;
    std::uint64_t seed = 0;

    bool has_split = false;
    std::vector<std::vector<std::int8_t>> node_split;   // per graph, per node
    std::vector<std::map<Edge, std::int8_t>> edge_split;  // per graph, labeled edges
    std::vector<std::int8_t> graph_split;               // per graph

    bool has_node_labels() const;
    bool has_edge_labels() const;
    bool has_graph_labels() const;
};

enum class AnomalyMode { contextual, structural, mixed };
AnomalyMode anomaly_mode_from_name(const std::string& name);

/// Single random graph (preferential-attachment backbone) with injected
/// node anomalies, derived edge labels, and no graph label.
Dataset synth_single_graph(int n, double anomaly_rate, AnomalyMode mode, std::uint64_t seed);

/// Multi-graph benchmark: normal graphs are random trees/rings; anomalous
/// graphs embed a dense motif whose nodes carry node-level anomaly labels,
/// giving correlated node- and graph-level labels.
Dataset synth_multi_graph(int num_graphs, int min_nodes, int max_nodes,
                          double graph_anomaly_rate, std::uint64_t seed);

/// Per-edge anomaly probability = mean of the endpoint probabilities.
/// Threshold mode labels an edge anomalous when its probability >= 0.5;
/// bernoulli mode draws from the seeded generator.
std::map<Edge, std::int8_t> edge_labels_from_nodes(const Graph& graph,
                                                   const std::vector<double>& node_probs,
                                                   bool bernoulli, std::mt19937_64& rng);

/// Stratified train/val/test split. Multi-graph datasets are split by whole
/// graphs; the non-train remainder is divided evenly between val and test.
/// Reshuffles with the next seed (up to 10 attempts) if stratification
/// leaves a class out of the training set.
void split(Dataset& dataset, double train_frac, std::uint64_t seed);

/// Single-graph leakage guard: returns the graph with all edges between the
/// train and test partitions removed. Multi-graph datasets are returned
/// unchanged per graph.
Graph filtered_single_graph(const Dataset& dataset);

}  // namespace unigad
