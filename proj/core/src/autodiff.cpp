#include "unigad/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unigad {

Var Tape::record(Eigen::MatrixXd value, std::function<void()> backward_fn) {
    const int id = static_cast<int>(values_.size());
    grads_.emplace_back(Eigen::MatrixXd::Zero(value.rows(), value.cols()));
    values_.push_back(std::move(value));
    nodes_.push_back(Node{std::move(backward_fn)});
    return Var{id};
}

Var Tape::param(Tensor& t) {
    const Var v = record(t.value, {});
    params_.emplace_back(v.id, &t);
    return v;
}

Var Tape::constant(Eigen::MatrixXd v) { return record(std::move(v), {}); }

Var Tape::matmul(Var a, Var b) {
    if (values_[a.id].cols() != values_[b.id].rows()) {
        throw std::invalid_argument("matmul: inner dimensions disagree");
    }
    Var out = record(values_[a.id] * values_[b.id], {});
    nodes_[out.id].backward_fn = [this, a, b, out]() {
        grads_[a.id].noalias() += grads_[out.id] * values_[b.id].transpose();
        grads_[b.id].noalias() += values_[a.id].transpose() * grads_[out.id];
    };
    return out;
}

Var Tape::add(Var a, Var b) {
    if (values_[a.id].rows() != values_[b.id].rows() ||
        values_[a.id].cols() != values_[b.id].cols()) {
        throw std::invalid_argument("add: shape mismatch");
    }
    Var out = record(values_[a.id] + values_[b.id], {});
    nodes_[out.id].backward_fn = [this, a, b, out]() {
        grads_[a.id] += grads_[out.id];
        grads_[b.id] += grads_[out.id];
    };
    return out;
}

Var Tape::add_row(Var a, Var bias) {
    if (values_[bias.id].rows() != 1 || values_[bias.id].cols() != values_[a.id].cols()) {
        throw std::invalid_argument("add_row: bias must be 1 x cols");
    }
    Eigen::MatrixXd v = values_[a.id];
    v.rowwise() += values_[bias.id].row(0);
    Var out = record(std::move(v), {});
    nodes_[out.id].backward_fn = [this, a, bias, out]() {
        grads_[a.id] += grads_[out.id];
        grads_[bias.id].row(0) += grads_[out.id].colwise().sum();
    };
    return out;
}

Var Tape::scale(Var a, double c) {
    Var out = record(values_[a.id] * c, {});
    nodes_[out.id].backward_fn = [this, a, c, out]() { grads_[a.id] += grads_[out.id] * c; };
    return out;
}

Var Tape::scale_by(Var a, Var scalar) {
    if (values_[scalar.id].size() != 1) throw std::invalid_argument("scale_by: need 1x1 scalar");
    const double c = values_[scalar.id](0, 0);
    Var out = record(values_[a.id] * c, {});
    nodes_[out.id].backward_fn = [this, a, scalar, c, out]() {
        grads_[a.id] += grads_[out.id] * c;
        grads_[scalar.id](0, 0) += (grads_[out.id].array() * values_[a.id].array()).sum();
    };
    return out;
}

Var Tape::cell(Var a, int r, int c) {
    Eigen::MatrixXd v(1, 1);
    v(0, 0) = values_[a.id](r, c);
    Var out = record(std::move(v), {});
    nodes_[out.id].backward_fn = [this, a, r, c, out]() {
        grads_[a.id](r, c) += grads_[out.id](0, 0);
    };
    return out;
}

Var Tape::leaky_relu(Var a, double slope) {
    Eigen::MatrixXd v = values_[a.id].unaryExpr(
        [slope](double x) { return x > 0.0 ? x : slope * x; });
    Var out = record(std::move(v), {});
    nodes_[out.id].backward_fn = [this, a, slope, out]() {
        grads_[a.id].array() += grads_[out.id].array() *
            values_[a.id].unaryExpr([slope](double x) { return x > 0.0 ? 1.0 : slope; }).array();
    };
    return out;
}

Var Tape::sigmoid(Var a) {
    Eigen::MatrixXd v = values_[a.id].unaryExpr([](double x) {
        return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
    });
    Var out = record(std::move(v), {});
    nodes_[out.id].backward_fn = [this, a, out]() {
        grads_[a.id].array() += grads_[out.id].array() * values_[out.id].array() *
                                (1.0 - values_[out.id].array());
    };
    return out;
}

Var Tape::sum_squares(Var a) {
    Eigen::MatrixXd v(1, 1);
    v(0, 0) = values_[a.id].squaredNorm();
    Var out = record(std::move(v), {});
    nodes_[out.id].backward_fn = [this, a, out]() {
        grads_[a.id] += 2.0 * grads_[out.id](0, 0) * values_[a.id];
    };
    return out;
}

Var Tape::gather_weighted(Var a,
                          const std::vector<std::vector<std::pair<int, double>>>& rows) {
    const auto& src = values_[a.id];
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(static_cast<int>(rows.size()), src.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [idx, w] : rows[i]) v.row(static_cast<int>(i)) += w * src.row(idx);
    }
    Var out = record(std::move(v), {});
    nodes_[out.id].backward_fn = [this, a, rows, out]() {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (const auto& [idx, w] : rows[i]) {
                grads_[a.id].row(idx) += w * grads_[out.id].row(static_cast<int>(i));
            }
        }
    };
    return out;
}

Var Tape::weighted_ce(Var probs, const Eigen::VectorXd& labels, double gamma) {
    const auto& p = values_[probs.id];
    if (p.cols() != 1 || p.rows() != labels.size()) {
        throw std::invalid_argument("weighted_ce: probs/labels length mismatch");
    }
    constexpr double kEps = 1e-7;
    double loss = 0.0;
    Eigen::VectorXd dp = Eigen::VectorXd::Zero(labels.size());
    for (int i = 0; i < labels.size(); ++i) {
        const double raw = p(i, 0);
        const double pi = std::clamp(raw, kEps, 1.0 - kEps);
        const double y = labels[i];
        loss -= gamma * y * std::log(pi) + (1.0 - y) * std::log(1.0 - pi);
        // Clamped samples contribute no gradient.
        if (raw > kEps && raw < 1.0 - kEps) {
            dp[i] = -(gamma * y / pi - (1.0 - y) / (1.0 - pi));
        }
    }
    Eigen::MatrixXd v(1, 1);
    v(0, 0) = loss;
    Var out = record(std::move(v), {});
    nodes_[out.id].backward_fn = [this, probs, dp, out]() {
        grads_[probs.id].col(0) += grads_[out.id](0, 0) * dp;
    };
    return out;
}

void Tape::backward(Var loss) {
    if (backward_done_) {
        throw std::logic_error("backward called twice without reset_gradients");
    }
    if (values_[loss.id].size() != 1) throw std::invalid_argument("backward: loss must be scalar");
    backward_done_ = true;
    grads_[loss.id](0, 0) = 1.0;
    for (int id = loss.id; id >= 0; --id) {
        if (nodes_[id].backward_fn) nodes_[id].backward_fn();
    }
    for (auto& [id, tensor] : params_) {
        if (!tensor->has_grad()) tensor->zero_grad();
        tensor->grad += grads_[id];
    }
}

void Tape::reset_gradients() {
    for (auto& g : grads_) g.setZero();
    backward_done_ = false;
}

Eigen::MatrixXd glorot_uniform(int rows, int cols, std::mt19937_64& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> dist(-limit, limit);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
    }
    return m;
}

}  // namespace unigad
