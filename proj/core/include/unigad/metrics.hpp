#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace unigad {

/// Sentinel-free metric results: nullopt when the metric is undefined
/// (single-class inputs for the rank metrics).
struct LevelMetrics {
    std::optional<double> auroc;
    std::optional<double> auprc;
    double macro_f1 = 0.0;
    int positives = 0;
    int negatives = 0;
};

/// Rank-statistic AUROC with midrank tie handling. Undefined (nullopt) when
/// either class is absent.
std::optional<double> auroc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels);

/// Area under the precision-recall curve by interpolation-free summation
/// over distinct score thresholds (descending). Undefined when no positives.
std::optional<double> auprc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels);

/// Unweighted mean of the per-class F1 scores at the 0.5 threshold.
double macro_f1(const Eigen::VectorXd& probs, const Eigen::VectorXd& labels);

LevelMetrics compute_level_metrics(const Eigen::VectorXd& scores,
                                   const Eigen::VectorXd& labels);

}  // namespace unigad
