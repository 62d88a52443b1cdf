#pragma once

#include <filesystem>
#include <string>

#include "unigad/dataset.hpp"

namespace unigad {

/// Single-graph directory format: edges.tsv (u, v, optional 0/1 edge label),
/// features.tsv (node id then feature values), node_labels.tsv (node id,
/// 0/1). IDs are 0-based; out-of-range endpoints are rejected.
Dataset load_single_graph_dir(const std::filesystem::path& dir);
void save_single_graph_dir(const Dataset& dataset, const std::filesystem::path& dir);

/// Multi-graph format: one JSON object per line with fields `nodes` (list of
/// feature vectors), `edges` (list of [u, v]), optional `node_labels` and
/// `graph_label`.
Dataset load_multi_graph_jsonl(const std::filesystem::path& file);
void save_multi_graph_jsonl(const Dataset& dataset, const std::filesystem::path& file);

/// Loads either format: a directory is read as a single graph, a file as
/// multi-graph JSONL.
Dataset load_dataset(const std::filesystem::path& path);
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

/// Writes `content` to `path` atomically (temp file + rename).
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace unigad
