#include "notesforge/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>

#include "notesforge/csv.hpp"
#include "notesforge/errors.hpp"
#include "notesforge/rng.hpp"

#include "json.hpp"

namespace notesforge {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double logit(double p) { return std::log(p / (1.0 - p)); }

void require_both_classes(const std::vector<int>& y, const char* what) {
    long long pos = 0;
    for (int v : y) pos += v;
    if (pos == 0 || pos == static_cast<long long>(y.size()))
        throw std::invalid_argument(std::string(what) + ": both classes must be present");
}

}  // namespace

// ---------------------------------------------------------------------------
// logistic regression
// ---------------------------------------------------------------------------

LogisticLossGrad logistic_loss_grad(const std::vector<std::vector<double>>& X,
                                    const std::vector<int>& y, const std::vector<double>& w,
                                    double intercept, double l2) {
    const size_t n = X.size();
    const size_t p = w.size();
    LogisticLossGrad out;
    out.grad_weights.assign(p, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double z = intercept;
        for (size_t j = 0; j < p; ++j) z += w[j] * X[i][j];
        const double pr = sigmoid(z);
        const double yi = static_cast<double>(y[i]);
        // clamped log-likelihood
        out.loss -= yi * std::log(std::max(pr, 1e-300)) +
                    (1.0 - yi) * std::log(std::max(1.0 - pr, 1e-300));
        const double g = pr - yi;
        for (size_t j = 0; j < p; ++j) out.grad_weights[j] += g * X[i][j];
        out.grad_intercept += g;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    out.loss *= inv_n;
    out.grad_intercept *= inv_n;
    for (size_t j = 0; j < p; ++j) {
        out.grad_weights[j] = out.grad_weights[j] * inv_n + l2 * w[j];
        out.loss += 0.5 * l2 * w[j] * w[j];
    }
    return out;
}

TrainedModel train_logistic(const Dataset& data, const LogisticParams& params) {
    data.validate();
    require_both_classes(data.labels, "train_logistic");
    if (params.epochs < 1) throw std::invalid_argument("train_logistic: epochs must be >= 1");

    const size_t n = static_cast<size_t>(data.rows());
    const size_t p = static_cast<size_t>(data.cols());

    LogisticModel m;
    m.mean.assign(p, 0.0);
    m.scale.assign(p, 1.0);
    for (size_t j = 0; j < p; ++j) {
        double mean = 0.0;
        for (size_t i = 0; i < n; ++i) mean += data.X[i][j];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (size_t i = 0; i < n; ++i) var += (data.X[i][j] - mean) * (data.X[i][j] - mean);
        var /= static_cast<double>(n);
        m.mean[j] = mean;
        m.scale[j] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    std::vector<std::vector<double>> Z(n, std::vector<double>(p, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < p; ++j) Z[i][j] = (data.X[i][j] - m.mean[j]) / m.scale[j];

    m.weights.assign(p, 0.0);
    m.intercept = 0.0;
    m.epoch_loss.reserve(static_cast<size_t>(params.epochs));
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        const auto lg = logistic_loss_grad(Z, data.labels, m.weights, m.intercept, params.l2);
        for (size_t j = 0; j < p; ++j) m.weights[j] -= params.lr * lg.grad_weights[j];
        m.intercept -= params.lr * lg.grad_intercept;
        m.epoch_loss.push_back(lg.loss);
    }

    TrainedModel out;
    out.model = std::move(m);
    out.feature_names = data.feature_names;
    return out;
}

// ---------------------------------------------------------------------------
// CART trees
// ---------------------------------------------------------------------------

namespace {

double gini(long long pos, long long total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(pos) / static_cast<double>(total);
    return 2.0 * p * (1.0 - p);
}

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double score = 0.0;  // weighted mean child impurity
};

// Gini target over 0/1 labels.
struct ClassificationTarget {
    const std::vector<int>* y;

    struct Stats {
        long long pos = 0;
        long long n = 0;
        void add(const ClassificationTarget& t, int i) {
            pos += (*t.y)[static_cast<size_t>(i)];
            ++n;
        }
        void remove_from(Stats& other) const {
            other.pos -= pos;
            other.n -= n;
        }
        double impurity() const { return gini(pos, n); }
    };

    Stats collect(const std::vector<int>& samples) const {
        Stats s;
        for (int i : samples) s.add(*this, i);
        return s;
    }
    static double value(const Stats& s) {
        return static_cast<double>(s.pos) / static_cast<double>(s.n);
    }
    static bool pure(const Stats& s) { return s.pos == 0 || s.pos == s.n; }
};

// Variance target over real residuals.
struct RegressionTarget {
    const std::vector<double>* r;

    struct Stats {
        double sum = 0.0;
        double sumsq = 0.0;
        long long n = 0;
        void add(const RegressionTarget& t, int i) {
            const double v = (*t.r)[static_cast<size_t>(i)];
            sum += v;
            sumsq += v * v;
            ++n;
        }
        void remove_from(Stats& other) const {
            other.sum -= sum;
            other.sumsq -= sumsq;
            other.n -= n;
        }
        double impurity() const {
            if (n == 0) return 0.0;
            const double mean = sum / static_cast<double>(n);
            return std::max(0.0, sumsq / static_cast<double>(n) - mean * mean);
        }
    };

    Stats collect(const std::vector<int>& samples) const {
        Stats s;
        for (int i : samples) s.add(*this, i);
        return s;
    }
    static double value(const Stats& s) { return s.sum / static_cast<double>(s.n); }
    static bool pure(const Stats& s) { return s.impurity() <= 0.0; }
};

// Best (feature, threshold) over midpoints of consecutive distinct values,
// with prefix statistics along each sorted feature. Ties resolve to the
// lowest feature index, then the lowest threshold.
template <typename Target>
SplitChoice best_split(const std::vector<std::vector<double>>& X, const Target& target,
                       const std::vector<int>& samples, int n_features, int min_leaf,
                       const typename Target::Stats& total) {
    SplitChoice best;
    std::vector<int> order(samples);
    const size_t n = order.size();
    for (int j = 0; j < n_features; ++j) {
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double va = X[static_cast<size_t>(a)][static_cast<size_t>(j)];
            const double vb = X[static_cast<size_t>(b)][static_cast<size_t>(j)];
            if (va != vb) return va < vb;
            return a < b;
        });
        typename Target::Stats left;
        for (size_t split = 1; split < n; ++split) {
            left.add(target, order[split - 1]);
            const double lo = X[static_cast<size_t>(order[split - 1])][static_cast<size_t>(j)];
            const double hi = X[static_cast<size_t>(order[split])][static_cast<size_t>(j)];
            if (!(hi > lo)) continue;
            if (split < static_cast<size_t>(min_leaf) || n - split < static_cast<size_t>(min_leaf))
                continue;
            typename Target::Stats right = total;
            left.remove_from(right);
            const double nl = static_cast<double>(left.n);
            const double nr = static_cast<double>(right.n);
            const double score = (nl * left.impurity() + nr * right.impurity()) / (nl + nr);
            const double threshold = lo + (hi - lo) / 2.0;
            if (!best.found || score < best.score - 1e-12 ||
                (std::abs(score - best.score) <= 1e-12 &&
                 (j < best.feature || (j == best.feature && threshold < best.threshold)))) {
                best.found = true;
                best.feature = j;
                best.threshold = threshold;
                best.score = score;
            }
        }
    }
    return best;
}

template <typename Target>
TreeModel grow_tree(const std::vector<std::vector<double>>& X, const Target& target,
                    int n_features, int max_depth, int min_leaf) {
    TreeModel tree;
    struct Work {
        std::vector<int> samples;
        int node;
        int depth;
    };
    std::vector<Work> stack;
    std::vector<int> all(X.size());
    std::iota(all.begin(), all.end(), 0);
    tree.nodes.push_back(TreeNode{});
    stack.push_back({std::move(all), 0, 0});

    while (!stack.empty()) {
        Work work = std::move(stack.back());
        stack.pop_back();
        const auto stats = target.collect(work.samples);
        TreeNode node;
        node.n_samples = stats.n;
        node.impurity = stats.impurity();
        node.value = Target::value(stats);

        const bool can_split = work.depth < max_depth &&
                               static_cast<int>(work.samples.size()) >= 2 * min_leaf &&
                               !Target::pure(stats);
        if (can_split) {
            const auto choice = best_split(X, target, work.samples, n_features, min_leaf, stats);
            if (choice.found && choice.score < node.impurity - 1e-12) {
                node.feature = choice.feature;
                node.threshold = choice.threshold;
                std::vector<int> left, right;
                for (int i : work.samples) {
                    if (X[static_cast<size_t>(i)][static_cast<size_t>(choice.feature)] <
                        choice.threshold)
                        left.push_back(i);
                    else
                        right.push_back(i);
                }
                node.left = static_cast<int>(tree.nodes.size());
                node.right = node.left + 1;
                tree.nodes[static_cast<size_t>(work.node)] = node;
                tree.nodes.push_back(TreeNode{});
                tree.nodes.push_back(TreeNode{});
                stack.push_back({std::move(right), node.right, work.depth + 1});
                stack.push_back({std::move(left), node.left, work.depth + 1});
                continue;
            }
        }
        tree.nodes[static_cast<size_t>(work.node)] = node;
    }
    return tree;
}

}  // namespace

double TreeModel::predict(const std::vector<double>& x) const {
    int node = 0;
    for (;;) {
        const TreeNode& n = nodes[static_cast<size_t>(node)];
        if (n.feature < 0) return n.value;
        node = x[static_cast<size_t>(n.feature)] < n.threshold ? n.left : n.right;
    }
}

TrainedModel train_tree(const Dataset& data, const TreeParams& params) {
    data.validate();
    if (params.max_depth < 1) throw std::invalid_argument("train_tree: max_depth must be >= 1");
    if (params.min_leaf < 1) throw std::invalid_argument("train_tree: min_leaf must be >= 1");
    if (data.rows() == 0) throw std::invalid_argument("train_tree: empty dataset");

    ClassificationTarget target{&data.labels};
    TreeModel tree = grow_tree(data.X, target, data.cols(), params.max_depth, params.min_leaf);
    TrainedModel out;
    out.model = std::move(tree);
    out.feature_names = data.feature_names;
    return out;
}

TrainedModel train_gbt(const Dataset& data, const GbtParams& params) {
    data.validate();
    if (params.rounds < 0) throw std::invalid_argument("train_gbt: rounds must be >= 0");
    if (params.max_depth < 1) throw std::invalid_argument("train_gbt: max_depth must be >= 1");
    if (data.rows() == 0) throw std::invalid_argument("train_gbt: empty dataset");

    const size_t n = static_cast<size_t>(data.rows());
    long long pos = 0;
    for (int v : data.labels) pos += v;
    // clamp the base rate away from 0/1 so the initial logit stays finite
    const double base =
        std::min(1.0 - 1e-9, std::max(1e-9, static_cast<double>(pos) / static_cast<double>(n)));

    GbtModel m;
    m.learning_rate = params.learning_rate;
    m.initial_logit = logit(base);

    std::vector<double> score(n, m.initial_logit);
    std::vector<double> residual(n, 0.0);
    constexpr double kMaxLeaf = 10.0;

    for (int round = 0; round < params.rounds; ++round) {
        for (size_t i = 0; i < n; ++i)
            residual[i] = static_cast<double>(data.labels[i]) - sigmoid(score[i]);

        RegressionTarget target{&residual};
        TreeModel tree = grow_tree(data.X, target, data.cols(), params.max_depth, params.min_leaf);

        // Newton leaf values: sum(residual) / sum(p(1-p)), shrunk by the
        // learning rate at prediction time.
        std::vector<std::vector<int>> leaf_samples(tree.nodes.size());
        for (size_t i = 0; i < n; ++i) {
            int node = 0;
            for (;;) {
                const TreeNode& t = tree.nodes[static_cast<size_t>(node)];
                if (t.feature < 0) break;
                node = data.X[i][static_cast<size_t>(t.feature)] < t.threshold ? t.left : t.right;
            }
            leaf_samples[static_cast<size_t>(node)].push_back(static_cast<int>(i));
        }
        for (size_t node = 0; node < tree.nodes.size(); ++node) {
            if (tree.nodes[node].feature >= 0) continue;
            const auto& samples = leaf_samples[node];
            if (samples.empty()) {
                tree.nodes[node].value = 0.0;
                continue;
            }
            double num = 0.0, den = 0.0;
            for (int i : samples) {
                const double p = sigmoid(score[static_cast<size_t>(i)]);
                num += residual[static_cast<size_t>(i)];
                den += p * (1.0 - p);
            }
            double value = num / std::max(den, 1e-12);
            value = std::clamp(value, -kMaxLeaf, kMaxLeaf);
            tree.nodes[node].value = value;
        }

        for (size_t i = 0; i < n; ++i)
            score[i] += params.learning_rate * tree.predict(data.X[i]);
        m.trees.push_back(std::move(tree));

        double loss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double p = sigmoid(score[i]);
            loss -= data.labels[i] == 1 ? std::log(std::max(p, 1e-300))
                                        : std::log(std::max(1.0 - p, 1e-300));
        }
        m.round_loss.push_back(loss / static_cast<double>(n));
    }

    TrainedModel out;
    out.model = std::move(m);
    out.feature_names = data.feature_names;
    return out;
}

TrainedModel train_model(const Dataset& data, const ModelParams& params) {
    return std::visit(
        [&](const auto& p) -> TrainedModel {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LogisticParams>) return train_logistic(data, p);
            else if constexpr (std::is_same_v<T, TreeParams>) return train_tree(data, p);
            else return train_gbt(data, p);
        },
        params);
}

double TrainedModel::predict_proba(const std::vector<double>& x) const {
    if (x.size() != feature_names.size())
        throw std::invalid_argument("predict_proba: expected " +
                                    std::to_string(feature_names.size()) + " features, got " +
                                    std::to_string(x.size()));
    if (const auto* lm = std::get_if<LogisticModel>(&model)) {
        double z = lm->intercept;
        for (size_t j = 0; j < lm->weights.size(); ++j)
            z += lm->weights[j] * (x[j] - lm->mean[j]) / lm->scale[j];
        return sigmoid(z);
    }
    if (const auto* tm = std::get_if<TreeModel>(&model)) return tm->predict(x);
    const auto& gm = std::get<GbtModel>(model);
    double z = gm.initial_logit;
    for (const auto& tree : gm.trees) z += gm.learning_rate * tree.predict(x);
    return sigmoid(z);
}

const char* TrainedModel::kind() const {
    if (std::holds_alternative<LogisticModel>(model)) return "logistic";
    if (std::holds_alternative<TreeModel>(model)) return "tree";
    return "gbt";
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

EvalReport metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                   double threshold) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("metrics: scores/labels length mismatch");
    if (scores.empty()) throw std::invalid_argument("metrics: empty input");
    for (int v : labels)
        if (v != 0 && v != 1) throw std::invalid_argument("metrics: labels must be 0/1");

    EvalReport r;
    r.threshold = threshold;
    for (size_t i = 0; i < scores.size(); ++i) {
        const bool pred = scores[i] >= threshold;
        if (pred && labels[i] == 1) ++r.tp;
        else if (pred && labels[i] == 0) ++r.fp;
        else if (!pred && labels[i] == 1) ++r.fn;
        else ++r.tn;
    }
    const double n = static_cast<double>(scores.size());
    r.accuracy = static_cast<double>(r.tp + r.tn) / n;

    // per-class F1, support-weighted
    const long long n1 = r.tp + r.fn;
    const long long n0 = r.tn + r.fp;
    const double f1_pos_den = static_cast<double>(r.tp) + static_cast<double>(r.fp + r.fn) / 2.0;
    const double f1_neg_den = static_cast<double>(r.tn) + static_cast<double>(r.fn + r.fp) / 2.0;
    const double f1_pos = f1_pos_den > 0.0 ? static_cast<double>(r.tp) / f1_pos_den : 0.0;
    const double f1_neg = f1_neg_den > 0.0 ? static_cast<double>(r.tn) / f1_neg_den : 0.0;
    r.weighted_f1 =
        (static_cast<double>(n1) * f1_pos + static_cast<double>(n0) * f1_neg) / n;

    if (n0 == 0 || n1 == 0) return r;  // AUC undefined for single-class labels

    // ROC over distinct thresholds, descending, ties grouped
    std::vector<size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return scores[a] > scores[b]; });
    r.roc.push_back(RocPoint{0.0, 0.0, std::numeric_limits<double>::infinity()});
    long long tp = 0, fp = 0;
    size_t i = 0;
    double auc = 0.0;
    double prev_fpr = 0.0, prev_tpr = 0.0;
    while (i < order.size()) {
        const double s = scores[order[i]];
        while (i < order.size() && scores[order[i]] == s) {
            if (labels[order[i]] == 1) ++tp;
            else ++fp;
            ++i;
        }
        const double tpr = static_cast<double>(tp) / static_cast<double>(n1);
        const double fpr = static_cast<double>(fp) / static_cast<double>(n0);
        auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
        r.roc.push_back(RocPoint{fpr, tpr, s});
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    r.auc = auc;
    return r;
}

// ---------------------------------------------------------------------------
// cross-validation
// ---------------------------------------------------------------------------

std::vector<int> stratified_kfold(const std::vector<int>& labels, int k, uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_kfold: k must be >= 2");
    std::vector<int> fold(labels.size(), -1);
    int offset = 0;
    for (int cls = 0; cls <= 1; ++cls) {
        std::vector<int> idx;
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == cls) idx.push_back(static_cast<int>(i));
        if (static_cast<int>(idx.size()) < k)
            throw std::invalid_argument("stratified_kfold: class " + std::to_string(cls) +
                                        " has fewer than k samples");
        Rng rng(mix_seed(seed, static_cast<uint64_t>(cls)));
        rng.shuffle(idx);
        for (size_t i = 0; i < idx.size(); ++i)
            fold[static_cast<size_t>(idx[i])] = (offset + static_cast<int>(i)) % k;
        offset = (offset + static_cast<int>(idx.size())) % k;
    }
    return fold;
}

namespace {

Dataset subset(const Dataset& data, const std::vector<int>& rows) {
    Dataset out;
    out.feature_names = data.feature_names;
    out.client_ids.reserve(rows.size());
    for (int i : rows) {
        out.client_ids.push_back(data.client_ids[static_cast<size_t>(i)]);
        out.labels.push_back(data.labels[static_cast<size_t>(i)]);
        out.X.push_back(data.X[static_cast<size_t>(i)]);
    }
    return out;
}

EvalReport evaluate_subset(const TrainedModel& model, const Dataset& data) {
    std::vector<double> scores;
    scores.reserve(data.X.size());
    for (const auto& x : data.X) scores.push_back(model.predict_proba(x));
    return metrics(scores, data.labels);
}

ModelParams reseed(const ModelParams& params, uint64_t seed) {
    ModelParams out = params;
    std::visit([&](auto& p) { p.seed = seed; }, out);
    return out;
}

}  // namespace

CvReport cross_validate(const Dataset& data, const ModelParams& params, int k, uint64_t seed) {
    data.validate();
    uint64_t base_seed = std::visit([](const auto& p) { return p.seed; }, params);
    const std::vector<int> fold = stratified_kfold(data.labels, k, seed);

    CvReport report;
    for (int f = 0; f < k; ++f) {
        std::vector<int> train_rows, test_rows;
        for (size_t i = 0; i < fold.size(); ++i)
            (fold[i] == f ? test_rows : train_rows).push_back(static_cast<int>(i));
        const Dataset train_set = subset(data, train_rows);
        const Dataset test_set = subset(data, test_rows);
        const TrainedModel model =
            train_model(train_set, reseed(params, mix_seed(base_seed, static_cast<uint64_t>(f))));
        FoldEval fe;
        fe.train = evaluate_subset(model, train_set);
        fe.test = evaluate_subset(model, test_set);
        report.folds.push_back(std::move(fe));
    }

    const double kf = static_cast<double>(k);
    for (const auto& fe : report.folds) {
        report.mean_train_accuracy += fe.train.accuracy / kf;
        report.mean_test_accuracy += fe.test.accuracy / kf;
        report.mean_train_f1 += fe.train.weighted_f1 / kf;
        report.mean_test_f1 += fe.test.weighted_f1 / kf;
        report.mean_train_auc += fe.train.auc.value_or(0.0) / kf;
        report.mean_test_auc += fe.test.auc.value_or(0.0) / kf;
    }
    return report;
}

// ---------------------------------------------------------------------------
// importance
// ---------------------------------------------------------------------------

namespace {

void add_tree_importance(const TreeModel& tree, std::vector<double>& importance,
                         double total_samples) {
    for (const auto& node : tree.nodes) {
        if (node.feature < 0) continue;
        const TreeNode& left = tree.nodes[static_cast<size_t>(node.left)];
        const TreeNode& right = tree.nodes[static_cast<size_t>(node.right)];
        const double n = static_cast<double>(node.n_samples);
        const double gain =
            (n / total_samples) *
            (node.impurity - (static_cast<double>(left.n_samples) * left.impurity +
                              static_cast<double>(right.n_samples) * right.impurity) /
                                 n);
        importance[static_cast<size_t>(node.feature)] += gain;
    }
}

}  // namespace

std::vector<std::pair<std::string, double>> feature_importance(const TrainedModel& model) {
    const size_t p = model.feature_names.size();
    std::vector<double> importance(p, 0.0);
    if (const auto* lm = std::get_if<LogisticModel>(&model.model)) {
        for (size_t j = 0; j < p; ++j) importance[j] = std::abs(lm->weights[j]);
    } else if (const auto* tm = std::get_if<TreeModel>(&model.model)) {
        if (!tm->nodes.empty())
            add_tree_importance(*tm, importance,
                                static_cast<double>(tm->nodes.front().n_samples));
    } else {
        const auto& gm = std::get<GbtModel>(model.model);
        for (const auto& tree : gm.trees)
            if (!tree.nodes.empty())
                add_tree_importance(tree, importance,
                                    static_cast<double>(tree.nodes.front().n_samples));
    }
    std::vector<std::pair<std::string, double>> ranked;
    ranked.reserve(p);
    for (size_t j = 0; j < p; ++j) ranked.emplace_back(model.feature_names[j], importance[j]);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return ranked;
}

double top_k_source_share(const std::vector<std::pair<std::string, double>>& ranking, int k) {
    if (k < 1 || static_cast<size_t>(k) > ranking.size())
        throw std::invalid_argument("top_k_source_share: k out of range");
    int note = 0;
    for (int i = 0; i < k; ++i)
        if (ranking[static_cast<size_t>(i)].first.rfind("note.", 0) == 0) ++note;
    return static_cast<double>(note) / static_cast<double>(k);
}

// ---------------------------------------------------------------------------
// persistence
// ---------------------------------------------------------------------------

namespace {

nlohmann::ordered_json tree_to_json(const TreeModel& tree) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& n : tree.nodes) {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"value", n.value},
                         {"n_samples", n.n_samples},
                         {"impurity", n.impurity}});
    }
    return nodes;
}

TreeModel tree_from_json(const nlohmann::json& nodes) {
    TreeModel tree;
    for (const auto& jn : nodes) {
        TreeNode n;
        n.feature = jn.at("feature").get<int>();
        n.threshold = jn.at("threshold").get<double>();
        n.left = jn.at("left").get<int>();
        n.right = jn.at("right").get<int>();
        n.value = jn.at("value").get<double>();
        n.n_samples = jn.at("n_samples").get<long long>();
        n.impurity = jn.at("impurity").get<double>();
        tree.nodes.push_back(n);
    }
    return tree;
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["kind"] = model.kind();
    j["feature_names"] = model.feature_names;
    if (const auto* lm = std::get_if<LogisticModel>(&model.model)) {
        j["weights"] = lm->weights;
        j["intercept"] = lm->intercept;
        j["mean"] = lm->mean;
        j["scale"] = lm->scale;
    } else if (const auto* tm = std::get_if<TreeModel>(&model.model)) {
        j["nodes"] = tree_to_json(*tm);
    } else {
        const auto& gm = std::get<GbtModel>(model.model);
        j["learning_rate"] = gm.learning_rate;
        j["initial_logit"] = gm.initial_logit;
        nlohmann::ordered_json trees = nlohmann::ordered_json::array();
        for (const auto& tree : gm.trees) trees.push_back(tree_to_json(tree));
        j["trees"] = std::move(trees);
    }
    write_text_file(path, j.dump(2) + "\n");
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("bad model file: " + std::string(e.what()));
    }
    TrainedModel model;
    try {
        model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "logistic") {
            LogisticModel lm;
            lm.weights = j.at("weights").get<std::vector<double>>();
            lm.intercept = j.at("intercept").get<double>();
            lm.mean = j.at("mean").get<std::vector<double>>();
            lm.scale = j.at("scale").get<std::vector<double>>();
            model.model = std::move(lm);
        } else if (kind == "tree") {
            model.model = tree_from_json(j.at("nodes"));
        } else if (kind == "gbt") {
            GbtModel gm;
            gm.learning_rate = j.at("learning_rate").get<double>();
            gm.initial_logit = j.at("initial_logit").get<double>();
            for (const auto& jt : j.at("trees")) gm.trees.push_back(tree_from_json(jt));
            model.model = std::move(gm);
        } else {
            throw SchemaError("unknown model kind '" + kind + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("bad model file: " + std::string(e.what()));
    }
    return model;
}

}  // namespace notesforge
