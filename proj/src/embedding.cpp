#include "notesforge/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "notesforge/csv.hpp"
#include "notesforge/errors.hpp"
#include "notesforge/numfmt.hpp"

namespace notesforge {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

int EmbeddingModel::index_of(const std::string& token) const {
    auto it = index.find(token);
    return it == index.end() ? -1 : it->second;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine: dimension mismatch");
    double dot_ab = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot_ab += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("cosine: zero vector");
    return dot_ab / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::pair<std::string, double>> EmbeddingModel::most_similar(const std::string& word,
                                                                         int k) const {
    const int q = index_of(word);
    if (q < 0) throw std::invalid_argument("most_similar: word '" + word + "' not in vocabulary");
    if (k < 0) throw std::invalid_argument("most_similar: k must be >= 0");
    std::vector<std::pair<std::string, double>> sims;
    sims.reserve(tokens.size());
    for (int w = 0; w < size(); ++w) {
        if (w == q) continue;
        sims.emplace_back(tokens[static_cast<size_t>(w)],
                          cosine(input_vectors[static_cast<size_t>(q)],
                                 input_vectors[static_cast<size_t>(w)]));
    }
    std::sort(sims.begin(), sims.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(sims.size()) > k) sims.resize(static_cast<size_t>(k));
    return sims;
}

NoiseSampler::NoiseSampler(const std::vector<long long>& counts, double power)
    : probs_(), table_([&] {
          std::vector<double> w;
          w.reserve(counts.size());
          for (long long c : counts) w.push_back(std::pow(static_cast<double>(c), power));
          return w;
      }()) {
    double total = 0.0;
    probs_.reserve(counts.size());
    for (long long c : counts) {
        probs_.push_back(std::pow(static_cast<double>(c), power));
        total += probs_.back();
    }
    for (auto& p : probs_) p /= total;
}

SgnsEval sgns_eval(const std::vector<double>& center, const std::vector<double>& context,
                   const std::vector<std::vector<double>>& negatives) {
    const size_t d = center.size();
    SgnsEval out;
    out.grad_center.assign(d, 0.0);
    out.grad_context.assign(d, 0.0);
    out.grad_negatives.assign(negatives.size(), std::vector<double>(d, 0.0));

    // L = -log s(u_o . v_c) - sum_i log s(-u_i . v_c)
    const double pos = sigmoid(dot(context, center));
    out.loss -= std::log(std::max(pos, 1e-300));
    const double g_pos = pos - 1.0;  // dL/d(u_o . v_c)
    for (size_t j = 0; j < d; ++j) {
        out.grad_center[j] += g_pos * context[j];
        out.grad_context[j] += g_pos * center[j];
    }
    for (size_t i = 0; i < negatives.size(); ++i) {
        const double neg = sigmoid(dot(negatives[i], center));
        out.loss -= std::log(std::max(1.0 - neg, 1e-300));
        for (size_t j = 0; j < d; ++j) {
            out.grad_center[j] += neg * negatives[i][j];
            out.grad_negatives[i][j] = neg * center[j];
        }
    }
    return out;
}

namespace {

// In-place SGD step for one (center, context) pair; same math as sgns_eval.
double sgns_update(std::vector<std::vector<double>>& input,
                   std::vector<std::vector<double>>& output, int center, int context,
                   const int* negs, int n_negs, double lr, std::vector<double>& grad_center) {
    auto& v_c = input[static_cast<size_t>(center)];
    const size_t d = v_c.size();
    std::fill(grad_center.begin(), grad_center.end(), 0.0);
    double loss = 0.0;

    auto& u_o = output[static_cast<size_t>(context)];
    const double pos = sigmoid(dot(u_o, v_c));
    loss -= std::log(std::max(pos, 1e-300));
    const double g_pos = pos - 1.0;
    for (size_t j = 0; j < d; ++j) {
        grad_center[j] += g_pos * u_o[j];
        u_o[j] -= lr * g_pos * v_c[j];
    }
    for (int i = 0; i < n_negs; ++i) {
        auto& u_n = output[static_cast<size_t>(negs[i])];
        const double neg = sigmoid(dot(u_n, v_c));
        loss -= std::log(std::max(1.0 - neg, 1e-300));
        for (size_t j = 0; j < d; ++j) {
            grad_center[j] += neg * u_n[j];
            u_n[j] -= lr * neg * v_c[j];
        }
    }
    for (size_t j = 0; j < d; ++j) v_c[j] -= lr * grad_center[j];
    return loss;
}

}  // namespace

EmbeddingModel train_embedding(const std::vector<TokenDoc>& corpus,
                               const EmbeddingConfig& config) {
    if (config.dim < 1) throw std::invalid_argument("train_embedding: dim must be >= 1");
    if (config.window < 1) throw std::invalid_argument("train_embedding: window must be >= 1");
    if (config.negatives < 1)
        throw std::invalid_argument("train_embedding: negatives must be >= 1");
    if (config.epochs < 1) throw std::invalid_argument("train_embedding: epochs must be >= 1");
    if (!(config.lr_final < config.lr_initial))
        throw std::invalid_argument("train_embedding: lr_final must be < lr_initial");

    std::unordered_map<std::string, long long> raw_counts;
    for (const auto& doc : corpus)
        for (const auto& tok : doc.tokens) ++raw_counts[tok];

    std::vector<std::pair<std::string, long long>> kept;
    for (const auto& [tok, c] : raw_counts)
        if (c >= config.min_count) kept.emplace_back(tok, c);
    if (kept.empty())
        throw std::invalid_argument("train_embedding: vocabulary empty after min_count pruning");
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    EmbeddingModel model;
    model.config = config;
    model.tokens.reserve(kept.size());
    model.counts.reserve(kept.size());
    for (auto& [tok, c] : kept) {
        model.index[tok] = static_cast<int>(model.tokens.size());
        model.tokens.push_back(tok);
        model.counts.push_back(c);
    }
    const int V = model.size();
    const size_t d = static_cast<size_t>(config.dim);

    // sentences as vocab indices; out-of-vocab tokens close up the gaps
    std::vector<std::vector<int>> sentences;
    sentences.reserve(corpus.size());
    long long corpus_tokens = 0;
    for (const auto& doc : corpus) {
        std::vector<int> ids;
        ids.reserve(doc.tokens.size());
        for (const auto& tok : doc.tokens) {
            auto it = model.index.find(tok);
            if (it != model.index.end()) ids.push_back(it->second);
        }
        corpus_tokens += static_cast<long long>(ids.size());
        if (!ids.empty()) sentences.push_back(std::move(ids));
    }

    Rng init_rng(mix_seed(config.seed, "embedding-init"));
    model.input_vectors.assign(static_cast<size_t>(V), std::vector<double>(d, 0.0));
    model.output_vectors.assign(static_cast<size_t>(V), std::vector<double>(d, 0.0));
    for (auto& row : model.input_vectors)
        for (auto& x : row) x = (init_rng.uniform() - 0.5) / static_cast<double>(config.dim);

    const NoiseSampler noise(model.counts);
    Rng rng(mix_seed(config.seed, "embedding-train"));

    // exact positive-pair total for the linear lr schedule
    long long total_pairs = 0;
    for (const auto& s : sentences) {
        const long long n = static_cast<long long>(s.size());
        for (long long i = 0; i < n; ++i)
            total_pairs += std::min<long long>(config.window, i) +
                           std::min<long long>(config.window, n - 1 - i);
    }
    total_pairs *= config.epochs;
    if (total_pairs == 0) throw std::invalid_argument("train_embedding: no training pairs");

    const double t_sub = config.subsample_t * static_cast<double>(corpus_tokens);
    std::vector<double> keep_prob(static_cast<size_t>(V), 1.0);
    if (config.subsample) {
        for (int w = 0; w < V; ++w) {
            const double f = static_cast<double>(model.counts[static_cast<size_t>(w)]);
            keep_prob[static_cast<size_t>(w)] =
                std::min(1.0, (std::sqrt(f / t_sub) + 1.0) * t_sub / f);
        }
    }

    std::vector<double> grad_center(d, 0.0);
    std::vector<int> negs(static_cast<size_t>(config.negatives), 0);
    std::vector<int> window_buf;
    long long pairs_done = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        for (const auto& sentence : sentences) {
            window_buf.clear();
            if (config.subsample) {
                for (int w : sentence)
                    if (rng.uniform() < keep_prob[static_cast<size_t>(w)]) window_buf.push_back(w);
            } else {
                window_buf.assign(sentence.begin(), sentence.end());
            }
            const int n = static_cast<int>(window_buf.size());
            for (int i = 0; i < n; ++i) {
                const int center = window_buf[static_cast<size_t>(i)];
                const int lo = std::max(0, i - config.window);
                const int hi = std::min(n - 1, i + config.window);
                for (int j = lo; j <= hi; ++j) {
                    if (j == i) continue;
                    const int context = window_buf[static_cast<size_t>(j)];
                    const double progress =
                        static_cast<double>(pairs_done) / static_cast<double>(total_pairs);
                    const double lr =
                        config.lr_initial + (config.lr_final - config.lr_initial) * progress;
                    int n_drawn = 0;
                    while (n_drawn < config.negatives) {
                        const int cand = noise.sample(rng);
                        if (cand == context) continue;  // skip the positive target
                        negs[static_cast<size_t>(n_drawn++)] = cand;
                    }
                    sgns_update(model.input_vectors, model.output_vectors, center, context,
                                negs.data(), config.negatives, lr, grad_center);
                    ++pairs_done;
                }
            }
        }
    }

    for (const auto& row : model.input_vectors)
        for (double x : row)
            if (!std::isfinite(x)) throw std::logic_error("train_embedding: non-finite vector");
    return model;
}

double sgns_pair_loss(const EmbeddingModel& model,
                      const std::vector<std::pair<int, int>>& pairs, int negatives,
                      uint64_t seed) {
    if (pairs.empty()) throw std::invalid_argument("sgns_pair_loss: no pairs");
    const NoiseSampler noise(model.counts);
    Rng rng(mix_seed(seed, "pair-loss"));
    double total = 0.0;
    std::vector<std::vector<double>> neg_vecs;
    for (const auto& [center, context] : pairs) {
        neg_vecs.clear();
        for (int i = 0; i < negatives; ++i) {
            int cand;
            do {
                cand = noise.sample(rng);
            } while (cand == context);
            neg_vecs.push_back(model.output_vectors[static_cast<size_t>(cand)]);
        }
        total += sgns_eval(model.input_vectors[static_cast<size_t>(center)],
                           model.output_vectors[static_cast<size_t>(context)], neg_vecs)
                     .loss;
    }
    return total / static_cast<double>(pairs.size());
}

void save_embedding(const EmbeddingModel& model, const std::string& path) {
    std::string out;
    out += std::to_string(model.size());
    out += ' ';
    out += std::to_string(model.dim());
    out += '\n';
    for (int w = 0; w < model.size(); ++w) {
        out += model.tokens[static_cast<size_t>(w)];
        for (double x : model.input_vectors[static_cast<size_t>(w)]) {
            out += ' ';
            out += fmt_double(x);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

EmbeddingModel load_embedding(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw SchemaError(path + ": empty vector file");
    std::istringstream header(lines[0]);
    long long v = 0, dim = 0;
    if (!(header >> v >> dim) || v <= 0 || dim <= 0 || !(header >> std::ws).eof())
        throw SchemaError(path + ": bad header '" + lines[0] + "', expected 'V dim'");
    if (static_cast<long long>(lines.size()) < v + 1)
        throw SchemaError(path + ": truncated vector file, expected " + std::to_string(v) +
                          " rows");

    EmbeddingModel model;
    model.config.dim = static_cast<int>(dim);
    model.config.min_count = 0;
    model.tokens.reserve(static_cast<size_t>(v));
    for (long long r = 0; r < v; ++r) {
        const std::string& line = lines[static_cast<size_t>(r) + 1];
        std::vector<double> vec;
        vec.reserve(static_cast<size_t>(dim));
        size_t pos = line.find(' ');
        if (pos == std::string::npos)
            throw SchemaError(path + ": malformed vector row " + std::to_string(r + 1));
        const std::string token = line.substr(0, pos);
        size_t start = pos + 1;
        while (start <= line.size()) {
            size_t end = line.find(' ', start);
            if (end == std::string::npos) end = line.size();
            vec.push_back(parse_double(std::string_view(line).substr(start, end - start)));
            start = end + 1;
        }
        if (static_cast<long long>(vec.size()) != dim)
            throw SchemaError(path + ": row " + std::to_string(r + 1) + " has " +
                              std::to_string(vec.size()) + " components, expected " +
                              std::to_string(dim));
        if (model.index.count(token))
            throw SchemaError(path + ": duplicate token '" + token + "'");
        model.index[token] = static_cast<int>(model.tokens.size());
        model.tokens.push_back(token);
        model.counts.push_back(0);
        model.input_vectors.push_back(std::move(vec));
    }
    return model;
}

}  // namespace notesforge
