#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace unigad {

/// Dense 2-D value with an optional gradient of the same shape.
struct Tensor {
    Eigen::MatrixXd value;
    Eigen::MatrixXd grad;

    Tensor() = default;
    explicit Tensor(Eigen::MatrixXd v) : value(std::move(v)) {}

    int rows() const { return static_cast<int>(value.rows()); }
    int cols() const { return static_cast<int>(value.cols()); }
    void zero_grad() { grad = Eigen::MatrixXd::Zero(value.rows(), value.cols()); }
    bool has_grad() const { return grad.size() == value.size() && grad.size() > 0; }
};

/// Handle to a value recorded on a Tape.
struct Var {
    int id = -1;
    bool valid() const { return id >= 0; }
};

/// Reverse-mode differentiation over a recorded computation graph.
///
/// A tape is built fresh for every training step. Parameters are registered
/// with param(); after backward() their gradients are written back into the
/// owning Tensor's grad member (accumulated, so zero_grad first).
class Tape {
public:
    /// Registers a trainable parameter. Gradients accumulate into t.grad.
    Var param(Tensor& t);

    /// Records a constant; no gradient flows into it.
    Var constant(Eigen::MatrixXd v);

    const Eigen::MatrixXd& value(Var v) const { return values_.at(v.id); }
    const Eigen::MatrixXd& grad(Var v) const { return grads_.at(v.id); }

    Var matmul(Var a, Var b);
    Var add(Var a, Var b);
    /// Adds a 1 x cols row vector to every row of a.
    Var add_row(Var a, Var bias);
    Var scale(Var a, double c);
    /// Multiplies a matrix by a scalar held in a 1x1 Var (trainable mixing).
    Var scale_by(Var a, Var scalar);
    /// Extracts entry (r, c) as a 1x1 Var (gradient flows to that cell).
    Var cell(Var a, int r, int c);
    Var leaky_relu(Var a, double slope = 0.01);
    Var sigmoid(Var a);
    Var sum_squares(Var a);

    /// Builds a (rows.size() x cols) matrix whose i-th row is the weighted
    /// sum of the listed input rows: out_i = sum_k w_ik * a_row(idx_ik).
    Var gather_weighted(Var a, const std::vector<std::vector<std::pair<int, double>>>& rows);

    /// Weighted binary cross-entropy, summed over samples:
    /// -sum_i [gamma * y_i * log p_i + (1 - y_i) * log(1 - p_i)],
    /// probabilities clamped to [1e-7, 1 - 1e-7]. probs must be a column.
    Var weighted_ce(Var probs, const Eigen::VectorXd& labels, double gamma);

    /// Backpropagates from a scalar (1x1) loss. A second call without
    /// reset_gradients() is an error.
    void backward(Var loss);
    void reset_gradients();

private:
    struct Node {
        std::function<void()> backward_fn;  // empty for leaves
    };

    Var record(Eigen::MatrixXd value, std::function<void()> backward_fn);

    std::vector<Eigen::MatrixXd> values_;
    std::vector<Eigen::MatrixXd> grads_;
    std::vector<Node> nodes_;
    std::vector<std::pair<int, Tensor*>> params_;
    bool backward_done_ = false;
};

/// Seeded Glorot-uniform initialization: entries uniform in
/// +-sqrt(6 / (fan_in + fan_out)).
Eigen::MatrixXd glorot_uniform(int rows, int cols, std::mt19937_64& rng);

}  // namespace unigad
