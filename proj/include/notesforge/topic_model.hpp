#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "notesforge/corpus.hpp"

namespace notesforge {

struct LdaConfig {
    int k = 10;
    double alpha = -1.0;  // < 0 -> 50/k
    double beta = 0.01;
    int iterations = 1000;
    int burn_in = 200;
    int thin = 10;  // phi/theta averaged from every thin-th post-burn-in sweep
    uint64_t seed = 0;
};

// Collapsed-Gibbs LDA fit. Counts are the final sweep's exact assignment
// tallies; phi/theta come from thinned post-burn-in averages.
struct LdaModel {
    LdaConfig config;
    double alpha_used = 0.0;
    int k = 0;
    int V = 0;
    int D = 0;
    std::vector<std::string> tokens;  // vocabulary snapshot, index-aligned
    uint64_t vocab_hash = 0;
    std::vector<std::string> note_ids;
    std::vector<std::vector<int>> topic_word;    // k x V
    std::vector<long long> topic_total;          // k
    std::vector<std::vector<int>> doc_topic;     // D x k
    std::vector<std::vector<int>> assignments;   // D x doc length
    std::vector<std::vector<double>> phi;        // k x V, rows sum to 1
    std::vector<std::vector<double>> theta;      // D x k, rows sum to 1

    // n highest-phi tokens, ties broken lexicographically.
    std::vector<std::string> top_words(int topic, int n) const;
    // argmax over theta row; ties resolved to the lowest topic id.
    std::pair<int, double> dominant_topic(int doc) const;
};

LdaModel fit_lda(const std::vector<TokenDoc>& corpus, const Vocabulary& vocab,
                 const LdaConfig& config);

struct InferredTopics {
    std::vector<double> theta;
    bool all_oov = false;  // every token fell outside the model vocabulary
};

// Gibbs fold-in against fixed phi; returns the normalized topic distribution.
InferredTopics infer_doc(const LdaModel& model, const TokenDoc& doc, int sweeps, uint64_t seed);

// Directory container: model.json header plus phi.csv / theta.csv.
// Round-trips phi and theta bit-exactly.
void save_lda(const LdaModel& model, const std::string& dir);
LdaModel load_lda(const std::string& dir);

}  // namespace notesforge
