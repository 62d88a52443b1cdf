#include "unigad/nn.hpp"

#include <cmath>
#include <stdexcept>

namespace unigad {

Eigen::MatrixXd sgc_propagate(const Graph& graph, const Eigen::MatrixXd& features, int steps) {
    if (features.rows() != graph.node_count()) {
        throw std::invalid_argument("sgc_propagate: feature row count mismatch");
    }
    if (steps < 0) throw std::invalid_argument("sgc_propagate: negative steps");
    const int n = graph.node_count();
    Eigen::VectorXd dinv(n);
    for (int v = 0; v < n; ++v) {
        dinv[v] = 1.0 / std::sqrt(static_cast<double>(graph.degree(v) + 1));
    }
    Eigen::MatrixXd h = features;
    for (int s = 0; s < steps; ++s) {
        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(n, h.cols());
        for (int v = 0; v < n; ++v) {
            next.row(v) = dinv[v] * dinv[v] * h.row(v);  // self-loop
            for (int u : graph.neighbors(v)) {
                next.row(v) += dinv[v] * dinv[u] * h.row(u);
            }
        }
        h = std::move(next);
    }
    return h;
}

DenseLayer::DenseLayer(int in, int out, std::mt19937_64& rng)
    : weight(glorot_uniform(in, out, rng)),
      bias(Eigen::MatrixXd::Zero(1, out)) {}

Var mlp_forward(Tape& tape, std::vector<DenseLayer>& layers, Var input, double slope) {
    Var h = input;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        Var w = tape.param(layers[i].weight);
        Var b = tape.param(layers[i].bias);
        h = tape.add_row(tape.matmul(h, w), b);
        if (i + 1 < layers.size()) h = tape.leaky_relu(h, slope);
    }
    return h;
}

Encoder::Encoder(EncoderConfig cfg, int feat_dim, std::mt19937_64& rng) : config(cfg) {
    if (config.propagation_steps < 0 || config.hidden_dim < 1) {
        throw std::invalid_argument("invalid encoder config");
    }
    if (config.trainable) dense = DenseLayer(feat_dim, config.hidden_dim, rng);
}

Var Encoder::forward(Tape& tape, const Eigen::MatrixXd& propagated) {
    Var x = tape.constant(propagated);
    if (!config.trainable) return x;
    Var w = tape.param(dense.weight);
    Var b = tape.param(dense.bias);
    return tape.leaky_relu(tape.add_row(tape.matmul(x, w), b));
}

}  // namespace unigad
