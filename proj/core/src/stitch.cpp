#include "unigad/stitch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace unigad {

const char* level_name(Level l) {
    switch (l) {
        case Level::node: return "node";
        case Level::edge: return "edge";
        case Level::graph: return "graph";
    }
    return "?";
}

Level level_from_name(const std::string& name) {
    if (name == "node" || name == "n") return Level::node;
    if (name == "edge" || name == "e") return Level::edge;
    if (name == "graph" || name == "g") return Level::graph;
    throw std::invalid_argument("unknown level: " + name);
}

StitchUnit::StitchUnit() {
    Eigen::MatrixXd a = Eigen::MatrixXd::Constant(3, 3, 0.05);
    a.diagonal().setConstant(0.9);
    alpha = Tensor(std::move(a));
}

StitchUnit StitchUnit::identity() {
    StitchUnit u;
    u.alpha.value = Eigen::MatrixXd::Identity(3, 3);
    return u;
}

std::array<Eigen::MatrixXd, 3> stitch_apply(const StitchUnit& unit,
                                            const Eigen::MatrixXd& e_n,
                                            const Eigen::MatrixXd& e_e,
                                            const Eigen::MatrixXd& e_g) {
    const std::array<const Eigen::MatrixXd*, 3> in{&e_n, &e_e, &e_g};
    for (int j = 1; j < 3; ++j) {
        if (in[j]->rows() != in[0]->rows() || in[j]->cols() != in[0]->cols()) {
            throw std::invalid_argument("stitch_apply: inputs must share shape");
        }
    }
    std::array<Eigen::MatrixXd, 3> out;
    for (int i = 0; i < 3; ++i) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(in[0]->rows(), in[0]->cols());
        bool first = true;
        for (int j = 0; j < 3; ++j) {
            const double c = unit.alpha.value(i, j);
            if (c == 0.0) continue;
            if (first && c == 1.0) {
                acc = *in[j];
                first = false;
            } else {
                acc += c * (*in[j]);
                first = false;
            }
        }
        out[i] = std::move(acc);
    }
    return out;
}

GraphStitchModel::GraphStitchModel(EncoderConfig enc_cfg, int feat_dim, int hidden,
                                   int layers, std::uint64_t seed, bool train_alpha)
    : hidden_dim(hidden), num_layers(layers), alpha_trainable(train_alpha) {
    if (layers < 1) throw std::invalid_argument("need at least one hidden layer");
    std::mt19937_64 rng(seed);
    encoder = Encoder(enc_cfg, feat_dim, rng);
    input_dim = encoder.output_dim(feat_dim);

    // Separate but identical towers: one seeded draw, cloned across levels.
    std::vector<DenseLayer> proto;
    proto.emplace_back(input_dim, hidden_dim, rng);
    for (int l = 1; l < num_layers; ++l) proto.emplace_back(hidden_dim, hidden_dim, rng);
    DenseLayer proto_head(hidden_dim, 1, rng);
    for (int i = 0; i < 3; ++i) {
        towers[i] = proto;
        heads[i] = proto_head;
    }
    stitches.assign(num_layers, StitchUnit());
}

std::vector<Tensor*> GraphStitchModel::parameters() {
    std::vector<Tensor*> out;
    if (encoder.config.trainable) {
        out.push_back(&encoder.dense.weight);
        out.push_back(&encoder.dense.bias);
    }
    for (auto& tower : towers) {
        for (auto& layer : tower) {
            out.push_back(&layer.weight);
            out.push_back(&layer.bias);
        }
    }
    if (alpha_trainable) {
        for (auto& unit : stitches) out.push_back(&unit.alpha);
    }
    for (auto& head : heads) {
        out.push_back(&head.weight);
        out.push_back(&head.bias);
    }
    return out;
}

std::vector<std::pair<Tensor*, std::pair<int, int>>> GraphStitchModel::pinned_alpha() const {
    std::vector<std::pair<Tensor*, std::pair<int, int>>> out;
    for (const auto& unit : stitches) {
        for (int j = 0; j < 3; ++j) {
            if (!masked[j]) continue;
            for (int i = 0; i < 3; ++i) {
                if (i != j) {
                    out.emplace_back(const_cast<Tensor*>(&unit.alpha), std::make_pair(i, j));
                }
            }
        }
    }
    return out;
}

int GraphStitchModel::total_parameter_count() {
    int total = 0;
    for (Tensor* t : parameters()) total += static_cast<int>(t->value.size());
    return total;
}

void mask_levels(GraphStitchModel& model, const std::set<Level>& missing) {
    if (missing.size() >= 3) {
        throw std::invalid_argument("mask_levels: cannot mask all three levels");
    }
    model.masked = {false, false, false};
    for (Level l : missing) model.masked[level_index(l)] = true;
    for (auto& [tensor, idx] : model.pinned_alpha()) {
        tensor->value(idx.first, idx.second) = 0.0;
    }
}

namespace {

// Mix same-shape tower activations through one stitch unit. Terms whose
// source level is masked (into a different level) are skipped entirely, so
// no gradient path exists; an exact identity row is a bitwise no-op.
std::array<Var, 3> stitch_on_tape(GraphStitchModel& model, Tape& tape, StitchUnit& unit,
                                  const std::array<Var, 3>& h) {
    Var alpha_var;
    if (model.alpha_trainable) alpha_var = tape.param(unit.alpha);
    std::array<Var, 3> out;
    for (int i = 0; i < 3; ++i) {
        Var acc;
        for (int j = 0; j < 3; ++j) {
            if (model.masked[j] && i != j) continue;
            Var term;
            if (model.alpha_trainable) {
                term = tape.scale_by(h[j], tape.cell(alpha_var, i, j));
            } else {
                const double c = unit.alpha.value(i, j);
                if (c == 0.0) continue;
                term = (c == 1.0) ? h[j] : tape.scale(h[j], c);
            }
            acc = acc.valid() ? tape.add(acc, term) : term;
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace

std::array<Var, 3> forward_towers(GraphStitchModel& model, Tape& tape, Var pooled_inputs) {
    std::array<Var, 3> h{pooled_inputs, pooled_inputs, pooled_inputs};
    for (int l = 0; l < model.num_layers; ++l) {
        for (int i = 0; i < 3; ++i) {
            auto& layer = model.towers[i][l];
            Var w = tape.param(layer.weight);
            Var b = tape.param(layer.bias);
            h[i] = tape.leaky_relu(tape.add_row(tape.matmul(h[i], w), b));
        }
        h = stitch_on_tape(model, tape, model.stitches[l], h);
    }
    std::array<Var, 3> probs;
    for (int i = 0; i < 3; ++i) {
        Var w = tape.param(model.heads[i].weight);
        Var b = tape.param(model.heads[i].bias);
        probs[i] = tape.sigmoid(tape.add_row(tape.matmul(h[i], w), b));
    }
    return probs;
}

Eigen::VectorXd forward(GraphStitchModel& model, const Eigen::MatrixXd& pooled_inputs,
                        Level target_level) {
    Tape tape;
    Var input = tape.constant(pooled_inputs);
    auto probs = forward_towers(model, tape, input);
    return tape.value(probs[level_index(target_level)]).col(0);
}

double weighted_ce_loss(const Eigen::VectorXd& probs, const Eigen::VectorXd& labels,
                        double gamma) {
    if (probs.size() != labels.size()) {
        throw std::invalid_argument("weighted_ce_loss: length mismatch");
    }
    constexpr double kEps = 1e-7;
    double loss = 0.0;
    for (int i = 0; i < probs.size(); ++i) {
        const double p = std::clamp(probs[i], kEps, 1.0 - kEps);
        loss -= gamma * labels[i] * std::log(p) + (1.0 - labels[i]) * std::log(1.0 - p);
    }
    return loss;
}

double anomaly_ratio(const Eigen::VectorXd& labels, bool direct_ratio) {
    double anom = 0.0, normal = 0.0;
    for (int i = 0; i < labels.size(); ++i) {
        (labels[i] > 0.5 ? anom : normal) += 1.0;
    }
    if (anom == 0.0 || normal == 0.0) return 1.0;
    return direct_ratio ? anom / normal : normal / anom;
}

SurgeryResult gradient_surgery(const std::vector<Eigen::VectorXd>& task_grads,
                               std::mt19937_64& rng) {
    if (task_grads.size() < 2) {
        throw std::invalid_argument("gradient_surgery: need at least two task gradients");
    }
    const int t = static_cast<int>(task_grads.size());
    SurgeryResult res;
    res.projected.resize(t);
    res.last_projector.assign(t, -1);
    for (int i = 0; i < t; ++i) {
        Eigen::VectorXd g = task_grads[i];
        std::vector<int> order;
        for (int j = 0; j < t; ++j) {
            if (j != i) order.push_back(j);
        }
        std::shuffle(order.begin(), order.end(), rng);
        for (int j : order) {
            const Eigen::VectorXd& gj = task_grads[j];
            const double nj = gj.squaredNorm();
            if (nj == 0.0) continue;
            const double dot = g.dot(gj);
            if (dot < 0.0) {
                g -= (dot / nj) * gj;
                res.last_projector[i] = j;
            }
        }
        res.projected[i] = std::move(g);
    }
    res.combined = res.projected[0];
    for (int i = 1; i < t; ++i) res.combined += res.projected[i];
    return res;
}

void SgdMomentum::step(const std::vector<Tensor*>& params, const Eigen::VectorXd& flat_grad) {
    Eigen::VectorXd g = flat_grad;
    if (clip_norm_ > 0.0) {
        const double norm = g.norm();
        if (norm > clip_norm_) g *= clip_norm_ / norm;
    }
    if (velocity_.size() != g.size()) velocity_ = Eigen::VectorXd::Zero(g.size());
    velocity_ = momentum_ * velocity_ + g;
    int offset = 0;
    for (Tensor* t : params) {
        const int sz = static_cast<int>(t->value.size());
        Eigen::Map<Eigen::VectorXd> flat(t->value.data(), sz);
        flat -= lr_ * velocity_.segment(offset, sz);
        offset += sz;
    }
}

Eigen::VectorXd flatten_grads(const std::vector<Tensor*>& params) {
    int total = 0;
    for (Tensor* t : params) total += static_cast<int>(t->value.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(total);
    int offset = 0;
    for (Tensor* t : params) {
        const int sz = static_cast<int>(t->value.size());
        if (t->has_grad()) {
            out.segment(offset, sz) = Eigen::Map<const Eigen::VectorXd>(t->grad.data(), sz);
        }
        offset += sz;
    }
    return out;
}

void zero_grads(const std::vector<Tensor*>& params) {
    for (Tensor* t : params) t->zero_grad();
}

Eigen::VectorXd flatten_values(const std::vector<Tensor*>& params) {
    int total = 0;
    for (Tensor* t : params) total += static_cast<int>(t->value.size());
    Eigen::VectorXd out(total);
    int offset = 0;
    for (Tensor* t : params) {
        const int sz = static_cast<int>(t->value.size());
        out.segment(offset, sz) = Eigen::Map<const Eigen::VectorXd>(t->value.data(), sz);
        offset += sz;
    }
    return out;
}

void assign_values(const std::vector<Tensor*>& params, const Eigen::VectorXd& flat) {
    int offset = 0;
    for (Tensor* t : params) {
        const int sz = static_cast<int>(t->value.size());
        Eigen::Map<Eigen::VectorXd>(t->value.data(), sz) = flat.segment(offset, sz);
        offset += sz;
    }
}

}  // namespace unigad
