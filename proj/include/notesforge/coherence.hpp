#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "notesforge/corpus.hpp"
#include "notesforge/topic_model.hpp"

namespace notesforge {

struct CoherenceConfig {
    int window_size = 110;
    int top_n = 10;
    double epsilon = 1e-12;
    double gamma = 1.0;
};

// Boolean (set-membership) counts over sliding windows. Windows never cross
// document boundaries; a document shorter than the window contributes one
// window covering the whole document.
class WindowCounts {
  public:
    long long total() const { return total_; }
    long long count(const std::string& token) const;
    // Symmetric; the pair (w, w) counts windows containing w.
    long long pair_count(const std::string& a, const std::string& b) const;

    void add_window_tokens(const std::vector<std::string>& distinct_sorted);
    void note_empty_window() { ++total_; }

  private:
    long long total_ = 0;
    std::unordered_map<std::string, long long> token_windows_;
    std::unordered_map<std::string, long long> pair_windows_;
};

WindowCounts count_windows(const std::vector<TokenDoc>& corpus, int window_size);
WindowCounts count_windows(const std::vector<TokenDoc>& corpus, int window_size,
                           const std::unordered_set<std::string>& restrict_to);

// Normalized pointwise mutual information over window probabilities, in [-1, 1].
double npmi(const WindowCounts& counts, const std::string& w1, const std::string& w2,
            double epsilon);

// C_v: one-set segmentation, NPMI^gamma context vectors, indirect cosine
// similarity against the summed context vector, arithmetic mean over words.
double c_v(const std::vector<std::string>& topic_words, const WindowCounts& counts,
           const CoherenceConfig& config);

struct ScanPoint {
    int k = 0;
    double mean_cv = 0.0;
    std::vector<double> per_topic;
};

struct ScanResult {
    std::vector<ScanPoint> points;  // in input k order
    int best_k = 0;                 // argmax mean_cv, ties to the smallest k
};

ScanResult scan_topics(const std::vector<TokenDoc>& corpus, const Vocabulary& vocab,
                       const std::vector<int>& k_values, const LdaConfig& lda_template,
                       const CoherenceConfig& coh_config);

}  // namespace notesforge
