#include "unigad/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace unigad {

namespace fs = std::filesystem;
using nlohmann::json;

void atomic_write(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) fields.push_back(tok);
    return fields;
}

}  // namespace

Dataset load_single_graph_dir(const fs::path& dir) {
    const fs::path edges_path = dir / "edges.tsv";
    const fs::path feats_path = dir / "features.tsv";
    const fs::path labels_path = dir / "node_labels.tsv";
    std::ifstream feats_in(feats_path);
    if (!feats_in) throw std::runtime_error("missing " + feats_path.string());

    std::vector<std::vector<double>> feats;
    std::string line;
    while (std::getline(feats_in, line)) {
        const auto f = split_fields(line);
        if (f.empty()) continue;
        const int id = std::stoi(f[0]);
        if (id != static_cast<int>(feats.size())) {
            throw std::runtime_error("features.tsv: node ids must be 0-based and consecutive");
        }
        std::vector<double> row;
        for (std::size_t i = 1; i < f.size(); ++i) row.push_back(std::stod(f[i]));
        feats.push_back(std::move(row));
    }
    const int n = static_cast<int>(feats.size());

    std::ifstream edges_in(edges_path);
    if (!edges_in) throw std::runtime_error("missing " + edges_path.string());
    std::vector<Edge> edges;
    std::map<Edge, std::int8_t> edge_labels;
    while (std::getline(edges_in, line)) {
        const auto f = split_fields(line);
        if (f.empty()) continue;
        if (f.size() < 2) throw std::runtime_error("edges.tsv: need two endpoints");
        const int u = std::stoi(f[0]), v = std::stoi(f[1]);
        const Edge e{std::min(u, v), std::max(u, v)};
        edges.push_back(e);
        if (f.size() >= 3) edge_labels[e] = static_cast<std::int8_t>(std::stoi(f[2]));
    }

    Graph graph(n, edges);  // validates endpoints
    Eigen::MatrixXd fm(n, n > 0 ? static_cast<int>(feats[0].size()) : 0);
    for (int v = 0; v < n; ++v) {
        if (static_cast<int>(feats[v].size()) != fm.cols()) {
            throw std::runtime_error("features.tsv: inconsistent feature dimension");
        }
        for (int j = 0; j < fm.cols(); ++j) fm(v, j) = feats[v][j];
    }
    graph.set_features(std::move(fm));
    if (!edge_labels.empty()) graph.set_edge_labels(std::move(edge_labels));

    std::ifstream labels_in(labels_path);
    if (labels_in) {
        std::vector<std::int8_t> labels(n, kUnlabeled);
        while (std::getline(labels_in, line)) {
            const auto f = split_fields(line);
            if (f.empty()) continue;
            if (f.size() < 2) throw std::runtime_error("node_labels.tsv: need id and label");
            const int id = std::stoi(f[0]);
            if (id < 0 || id >= n) throw std::runtime_error("node_labels.tsv: id out of range");
            labels[id] = static_cast<std::int8_t>(std::stoi(f[1]));
        }
        graph.set_node_labels(std::move(labels));
    }

    Dataset ds;
    ds.multi = false;
    ds.graphs.push_back(std::move(graph));
    return ds;
}

void save_single_graph_dir(const Dataset& dataset, const fs::path& dir) {
    if (dataset.multi) throw std::invalid_argument("save_single_graph_dir: multi-graph dataset");
    fs::create_directories(dir);
    const Graph& g = dataset.graphs.front();

    std::ostringstream edges;
    for (const auto& e : g.edges()) {
        edges << e.first << "\t" << e.second;
        auto it = g.edge_labels().find(e);
        if (it != g.edge_labels().end() && it->second != kUnlabeled) {
            edges << "\t" << static_cast<int>(it->second);
        }
        edges << "\n";
    }
    atomic_write(dir / "edges.tsv", edges.str());

    std::ostringstream feats;
    feats.precision(17);
    for (int v = 0; v < g.node_count(); ++v) {
        feats << v;
        for (int j = 0; j < g.feat_dim(); ++j) feats << "\t" << g.features()(v, j);
        feats << "\n";
    }
    atomic_write(dir / "features.tsv", feats.str());

    if (g.has_node_labels()) {
        std::ostringstream labels;
        for (int v = 0; v < g.node_count(); ++v) {
            if (g.node_labels()[v] != kUnlabeled) {
                labels << v << "\t" << static_cast<int>(g.node_labels()[v]) << "\n";
            }
        }
        atomic_write(dir / "node_labels.tsv", labels.str());
    }
}

Dataset load_multi_graph_jsonl(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("missing " + file.string());
    Dataset ds;
    ds.multi = true;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        const auto& nodes = j.at("nodes");
        const int n = static_cast<int>(nodes.size());
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
        Graph graph(n, edges);
        const int dim = n > 0 ? static_cast<int>(nodes[0].size()) : 0;
        Eigen::MatrixXd fm(n, dim);
        for (int v = 0; v < n; ++v) {
            if (static_cast<int>(nodes[v].size()) != dim) {
                throw std::runtime_error("inconsistent feature dimension in jsonl");
            }
            for (int d = 0; d < dim; ++d) fm(v, d) = nodes[v][d].get<double>();
        }
        graph.set_features(std::move(fm));
        if (j.contains("node_labels")) {
            std::vector<std::int8_t> labels;
            for (const auto& l : j["node_labels"]) {
                labels.push_back(static_cast<std::int8_t>(l.get<int>()));
            }
            graph.set_node_labels(std::move(labels));
        }
        if (j.contains("graph_label")) graph.set_graph_label(j["graph_label"].get<int>());
        ds.graphs.push_back(std::move(graph));
    }
    return ds;
}

void save_multi_graph_jsonl(const Dataset& dataset, const fs::path& file) {
    std::ostringstream out;
    for (const Graph& g : dataset.graphs) {
        json j;
        json nodes = json::array();
        for (int v = 0; v < g.node_count(); ++v) {
            json row = json::array();
            for (int d = 0; d < g.feat_dim(); ++d) row.push_back(g.features()(v, d));
            nodes.push_back(std::move(row));
        }
        j["nodes"] = std::move(nodes);
        json edges = json::array();
        for (const auto& e : g.edges()) edges.push_back({e.first, e.second});
        j["edges"] = std::move(edges);
        if (g.has_node_labels()) {
            json labels = json::array();
            for (std::int8_t l : g.node_labels()) labels.push_back(static_cast<int>(l));
            j["node_labels"] = std::move(labels);
        }
        if (g.graph_label()) j["graph_label"] = *g.graph_label();
        out << j.dump() << "\n";
    }
    atomic_write(file, out.str());
}

Dataset load_dataset(const fs::path& path) {
    if (fs::is_directory(path)) return load_single_graph_dir(path);
    return load_multi_graph_jsonl(path);
}

void save_dataset(const Dataset& dataset, const fs::path& path) {
    if (dataset.multi) {
        save_multi_graph_jsonl(dataset, path);
    } else {
        save_single_graph_dir(dataset, path);
    }
}

}  // namespace unigad
