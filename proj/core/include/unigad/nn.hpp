#pragma once

#include <random>
#include <vector>

#include "unigad/autodiff.hpp"
#include "unigad/graph.hpp"

namespace unigad {

struct EncoderConfig {
    int propagation_steps = 2;
    int hidden_dim = 32;
    bool trainable = true;
};

/// Symmetric-normalized graph propagation with self-loops:
/// H = (D~^{-1/2} (A + I) D~^{-1/2})^steps X. Parameterless and deterministic.
Eigen::MatrixXd sgc_propagate(const Graph& graph, const Eigen::MatrixXd& features, int steps);

/// One affine layer of a perceptron stack.
struct DenseLayer {
    Tensor weight;  // in x out
    Tensor bias;    // 1 x out

    DenseLayer() = default;
    DenseLayer(int in, int out, std::mt19937_64& rng);
};

/// Affine -> leaky rectifier per hidden layer, final layer affine only.
Var mlp_forward(Tape& tape, std::vector<DenseLayer>& layers, Var input,
                double slope = 0.01);

/// Trainable propagation encoder standing in for a pretrained backbone:
/// propagated features pass through one dense layer + leaky rectifier when
/// trainable, otherwise they are used as-is.
struct Encoder {
    EncoderConfig config;
    DenseLayer dense;  // used only when config.trainable

    Encoder() = default;
    Encoder(EncoderConfig cfg, int feat_dim, std::mt19937_64& rng);

    int output_dim(int feat_dim) const {
        return config.trainable ? config.hidden_dim : feat_dim;
    }

    /// Propagation is done outside the tape (it has no parameters); pass the
    /// propagated feature matrix here to get the encoded Var.
    Var forward(Tape& tape, const Eigen::MatrixXd& propagated);
};

}  // namespace unigad
