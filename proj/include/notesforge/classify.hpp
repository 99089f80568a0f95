#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "notesforge/features.hpp"

namespace notesforge {

struct LogisticParams {
    double l2 = 1e-3;
    int epochs = 500;
    double lr = 0.1;
    uint64_t seed = 0;
};

struct TreeParams {
    int max_depth = 6;
    int min_leaf = 20;
    uint64_t seed = 0;
};

struct GbtParams {
    int rounds = 200;
    double learning_rate = 0.1;
    int max_depth = 3;
    int min_leaf = 200;
    uint64_t seed = 0;
};

using ModelParams = std::variant<LogisticParams, TreeParams, GbtParams>;

struct LogisticModel {
    std::vector<double> weights;  // on standardized features
    double intercept = 0.0;
    std::vector<double> mean;    // standardization parameters
    std::vector<double> scale;
    std::vector<double> epoch_loss;  // regularized NLL per epoch
};

struct TreeNode {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;      // leaf probability (classification) or leaf value (regression)
    long long n_samples = 0;
    double impurity = 0.0;   // gini or variance at this node
};

struct TreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    double predict(const std::vector<double>& x) const;
};

struct GbtModel {
    std::vector<TreeModel> trees;
    double learning_rate = 0.1;
    double initial_logit = 0.0;
    std::vector<double> round_loss;  // training log-loss after each round
};

struct TrainedModel {
    std::variant<LogisticModel, TreeModel, GbtModel> model;
    std::vector<std::string> feature_names;

    double predict_proba(const std::vector<double>& x) const;
    const char* kind() const;
};

TrainedModel train_logistic(const Dataset& data, const LogisticParams& params);
TrainedModel train_tree(const Dataset& data, const TreeParams& params);
TrainedModel train_gbt(const Dataset& data, const GbtParams& params);
TrainedModel train_model(const Dataset& data, const ModelParams& params);

// Regularized logistic loss and gradient at (weights, intercept); exposed for
// finite-difference checks.
struct LogisticLossGrad {
    double loss = 0.0;
    std::vector<double> grad_weights;
    double grad_intercept = 0.0;
};
LogisticLossGrad logistic_loss_grad(const std::vector<std::vector<double>>& X,
                                    const std::vector<int>& y, const std::vector<double>& w,
                                    double intercept, double l2);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

struct EvalReport {
    double accuracy = 0.0;
    double weighted_f1 = 0.0;
    std::optional<double> auc;  // absent when labels are single-class
    std::vector<RocPoint> roc;
    long long tp = 0, tn = 0, fp = 0, fn = 0;
    double threshold = 0.5;
};

// Confusion at the threshold (score >= threshold predicts 1); weighted F1 by
// class support; ROC over distinct score thresholds with ties grouped; AUC by
// the trapezoidal rule.
EvalReport metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                   double threshold = 0.5);

// Per-class seeded shuffle, round-robin continuing across classes so fold
// sizes differ by at most one.
std::vector<int> stratified_kfold(const std::vector<int>& labels, int k, uint64_t seed);

struct FoldEval {
    EvalReport train;
    EvalReport test;
};

struct CvReport {
    std::vector<FoldEval> folds;
    double mean_train_accuracy = 0.0, mean_test_accuracy = 0.0;
    double mean_train_f1 = 0.0, mean_test_f1 = 0.0;
    double mean_train_auc = 0.0, mean_test_auc = 0.0;
    int representative_fold = 0;  // its ROC stands in for the model's curve
};

CvReport cross_validate(const Dataset& data, const ModelParams& params, int k, uint64_t seed);

// Logistic: |standardized coefficient|. Trees/GBT: total impurity decrease per
// feature over all splits. Descending, ties broken lexicographically.
std::vector<std::pair<std::string, double>> feature_importance(const TrainedModel& model);

// Fraction of the top-k ranked features whose name carries the "note." prefix.
double top_k_source_share(const std::vector<std::pair<std::string, double>>& ranking, int k);

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace notesforge
