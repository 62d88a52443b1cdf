#pragma once

#include <array>
#include <random>
#include <set>
#include <vector>

#include "unigad/autodiff.hpp"
#include "unigad/nn.hpp"

namespace unigad {

enum class Level : int { node = 0, edge = 1, graph = 2 };

constexpr std::array<Level, 3> kAllLevels{Level::node, Level::edge, Level::graph};

inline int level_index(Level l) { return static_cast<int>(l); }
const char* level_name(Level l);
Level level_from_name(const std::string& name);

/// Learnable 3x3 mixing matrix; rows/cols indexed by (node, edge, graph).
/// Initialized identity-dominant: diagonal 0.9, off-diagonal 0.05.
struct StitchUnit {
    Tensor alpha;

    StitchUnit();
    static StitchUnit identity();
};

/// Plain (non-recorded) stitch operation on three same-shape tensors:
/// out_i = sum_j alpha_ij * e_j. Coefficients equal to 0 are skipped and
/// coefficients equal to 1 pass the input through unchanged, so an identity
/// unit is bitwise a no-op.
std::array<Eigen::MatrixXd, 3> stitch_apply(const StitchUnit& unit,
                                            const Eigen::MatrixXd& e_n,
                                            const Eigen::MatrixXd& e_e,
                                            const Eigen::MatrixXd& e_g);

/// Three parallel per-level towers over a shared pooled input batch, stitch
/// units after each hidden layer, and per-level logistic heads.
struct GraphStitchModel {
    Encoder encoder;
    int input_dim = 0;       // tower input width (encoder output)
    int hidden_dim = 32;
    int num_layers = 2;
    std::array<std::vector<DenseLayer>, 3> towers;
    std::array<DenseLayer, 3> heads;     // hidden_dim -> 1
    std::vector<StitchUnit> stitches;    // one per hidden layer
    std::array<bool, 3> masked{};        // masked source levels
    bool alpha_trainable = true;

    GraphStitchModel() = default;
    GraphStitchModel(EncoderConfig enc_cfg, int feat_dim, int hidden_dim, int num_layers,
                     std::uint64_t seed, bool alpha_trainable = true);

    /// All trainable tensors in a fixed order (encoder, towers, stitches,
    /// heads). Pinned stitch entries are handled by the optimizer mask.
    std::vector<Tensor*> parameters();

    /// Flat-vector offsets of pinned (masked source) alpha entries.
    std::vector<std::pair<Tensor*, std::pair<int, int>>> pinned_alpha() const;

    int total_parameter_count();
};

/// Pins the outgoing stitch coefficients of every missing level to zero and
/// flags them as excluded from gradient updates. Masking all three levels is
/// a configuration error.
void mask_levels(GraphStitchModel& model, const std::set<Level>& missing);

/// Runs the three towers over one pooled input batch; returns the per-level
/// probability columns (logistic outputs in (0,1)).
std::array<Var, 3> forward_towers(GraphStitchModel& model, Tape& tape, Var pooled_inputs);

/// Probabilities of the target level for one pooled batch.
Eigen::VectorXd forward(GraphStitchModel& model, const Eigen::MatrixXd& pooled_inputs,
                        Level target_level);

/// Weighted binary cross entropy, summed:
/// -sum_i [gamma y_i log p_i + (1-y_i) log(1-p_i)], probs clamped to
/// [1e-7, 1-1e-7].
double weighted_ce_loss(const Eigen::VectorXd& probs, const Eigen::VectorXd& labels,
                        double gamma);

/// Class-imbalance weight: n_normal / n_anomaly, falling back to 1 when a
/// class is absent. Set direct_ratio to use the paper-stated
/// anomaly/normal ratio instead.
double anomaly_ratio(const Eigen::VectorXd& labels, bool direct_ratio = false);

struct SurgeryResult {
    Eigen::VectorXd combined;
    std::vector<Eigen::VectorXd> projected;
    std::vector<int> last_projector;  // task index of the last conflicting projection, -1 if none
};

/// Gradient surgery: each task gradient is projected onto the normal plane
/// of every conflicting other-task gradient (seeded random order); returns
/// the sum of the projected gradients.
SurgeryResult gradient_surgery(const std::vector<Eigen::VectorXd>& task_grads,
                               std::mt19937_64& rng);

/// Momentum SGD over a parameter set with global-norm gradient clipping.
class SgdMomentum {
public:
    SgdMomentum(double lr, double momentum = 0.9, double clip_norm = 5.0)
        : lr_(lr), momentum_(momentum), clip_norm_(clip_norm) {}

    void step(const std::vector<Tensor*>& params, const Eigen::VectorXd& flat_grad);

private:
    double lr_;
    double momentum_;
    double clip_norm_;
    Eigen::VectorXd velocity_;
};

/// Concatenates parameter gradients into one flat vector (same order as
/// GraphStitchModel::parameters()).
Eigen::VectorXd flatten_grads(const std::vector<Tensor*>& params);
void zero_grads(const std::vector<Tensor*>& params);
Eigen::VectorXd flatten_values(const std::vector<Tensor*>& params);
void assign_values(const std::vector<Tensor*>& params, const Eigen::VectorXd& flat);

}  // namespace unigad
