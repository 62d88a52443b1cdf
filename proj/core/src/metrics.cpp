#include "unigad/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace unigad {

namespace {

void check_lengths(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
    if (scores.size() != labels.size()) throw std::invalid_argument("scores/labels length mismatch");
    if (scores.size() == 0) throw std::invalid_argument("empty metric input");
}

}  // namespace

std::optional<double> auroc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
    check_lengths(scores, labels);
    const int n = static_cast<int>(scores.size());
    double pos = 0, neg = 0;
    for (int i = 0; i < n; ++i) (labels[i] > 0.5 ? pos : neg) += 1.0;
    if (pos == 0 || neg == 0) return std::nullopt;

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return scores[a] < scores[b]; });

    // Rank-sum with midranks for tied scores.
    double rank_sum_pos = 0.0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
        const double midrank = 0.5 * (i + 1 + j);  // ranks are 1-based
        for (int k = i; k < j; ++k) {
            if (labels[idx[k]] > 0.5) rank_sum_pos += midrank;
        }
        i = j;
    }
    return (rank_sum_pos - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

std::optional<double> auprc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
    check_lengths(scores, labels);
    const int n = static_cast<int>(scores.size());
    double pos = 0;
    for (int i = 0; i < n; ++i) {
        if (labels[i] > 0.5) pos += 1.0;
    }
    if (pos == 0 || pos == n) return std::nullopt;

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return scores[a] > scores[b]; });

    // Step-wise summation: at each distinct threshold, area += dRecall * precision.
    double tp = 0, fp = 0, area = 0.0, prev_recall = 0.0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
        for (int k = i; k < j; ++k) {
            if (labels[idx[k]] > 0.5) tp += 1.0; else fp += 1.0;
        }
        const double recall = tp / pos;
        const double precision = tp / (tp + fp);
        area += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    return area;
}

double macro_f1(const Eigen::VectorXd& probs, const Eigen::VectorXd& labels) {
    check_lengths(probs, labels);
    // Confusion counts at the 0.5 threshold.
    double tp = 0, fp = 0, fn = 0, tn = 0;
    for (int i = 0; i < probs.size(); ++i) {
        const bool pred = probs[i] >= 0.5;
        const bool truth = labels[i] > 0.5;
        if (pred && truth) ++tp;
        else if (pred && !truth) ++fp;
        else if (!pred && truth) ++fn;
        else ++tn;
    }
    const auto f1 = [](double tp_, double fp_, double fn_) {
        const double d = 2.0 * tp_ + fp_ + fn_;
        return d > 0.0 ? 2.0 * tp_ / d : 0.0;
    };
    return 0.5 * (f1(tp, fp, fn) + f1(tn, fn, fp));
}

LevelMetrics compute_level_metrics(const Eigen::VectorXd& scores,
                                   const Eigen::VectorXd& labels) {
    LevelMetrics m;
    m.auroc = auroc(scores, labels);
    m.auprc = auprc(scores, labels);
    m.macro_f1 = macro_f1(scores, labels);
    for (int i = 0; i < labels.size(); ++i) {
        (labels[i] > 0.5 ? m.positives : m.negatives) += 1;
    }
    return m;
}

}  // namespace unigad
