#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "notesforge/corpus.hpp"
#include "notesforge/rng.hpp"

namespace notesforge {

struct EmbeddingConfig {
    int dim = 100;
    int window = 2;  // fixed context width, no dynamic shrinking
    long long min_count = 20;
    int negatives = 20;
    int epochs = 5;
    double lr_initial = 0.025;
    double lr_final = 1e-4;
    bool subsample = false;  // frequent-word subsampling, off by default
    double subsample_t = 1e-4;
    uint64_t seed = 0;
};

struct EmbeddingModel {
    EmbeddingConfig config;
    std::vector<std::string> tokens;                // sorted by (count desc, token)
    std::vector<long long> counts;                  // zero for models loaded from text files
    std::unordered_map<std::string, int> index;
    std::vector<std::vector<double>> input_vectors;   // V x dim; the embeddings
    std::vector<std::vector<double>> output_vectors;  // V x dim; training weights

    int size() const { return static_cast<int>(tokens.size()); }
    int dim() const { return config.dim; }
    int index_of(const std::string& token) const;

    // Top-k cosine neighbors over input vectors, excluding the query word;
    // descending similarity, ties broken lexicographically.
    std::vector<std::pair<std::string, double>> most_similar(const std::string& word,
                                                             int k) const;
};

double cosine(const std::vector<double>& a, const std::vector<double>& b);

EmbeddingModel train_embedding(const std::vector<TokenDoc>& corpus, const EmbeddingConfig& config);

// One SGNS sample: loss and analytic gradients (descent direction), exposed so
// the gradients can be checked against finite differences.
struct SgnsEval {
    double loss = 0.0;
    std::vector<double> grad_center;
    std::vector<double> grad_context;
    std::vector<std::vector<double>> grad_negatives;
};

SgnsEval sgns_eval(const std::vector<double>& center, const std::vector<double>& context,
                   const std::vector<std::vector<double>>& negatives);

// Mean SGNS loss of (center, context) pairs with negatives drawn from the
// model's noise distribution; used for held-out loss tracking.
double sgns_pair_loss(const EmbeddingModel& model,
                      const std::vector<std::pair<int, int>>& pairs, int negatives,
                      uint64_t seed);

// Noise distribution proportional to count^power (0.75 by default).
class NoiseSampler {
  public:
    NoiseSampler(const std::vector<long long>& counts, double power = 0.75);
    int sample(Rng& rng) const { return table_.sample(rng); }
    const std::vector<double>& probabilities() const { return probs_; }

  private:
    std::vector<double> probs_;
    AliasTable table_;
};

// word2vec text format: "V dim" header, then one "token x1 .. xdim" line per
// word (input vectors). Loaded models support queries only.
void save_embedding(const EmbeddingModel& model, const std::string& path);
EmbeddingModel load_embedding(const std::string& path);

}  // namespace notesforge
