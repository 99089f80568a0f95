#include "notesforge/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "notesforge/errors.hpp"
#include "notesforge/rng.hpp"

namespace notesforge {

namespace {

std::string pair_key(const std::string& a, const std::string& b) {
    return a <= b ? a + '\x1f' + b : b + '\x1f' + a;
}

}  // namespace

long long WindowCounts::count(const std::string& token) const {
    auto it = token_windows_.find(token);
    return it == token_windows_.end() ? 0 : it->second;
}

long long WindowCounts::pair_count(const std::string& a, const std::string& b) const {
    if (a == b) return count(a);
    auto it = pair_windows_.find(pair_key(a, b));
    return it == pair_windows_.end() ? 0 : it->second;
}

void WindowCounts::add_window_tokens(const std::vector<std::string>& distinct_sorted) {
    ++total_;
    for (size_t i = 0; i < distinct_sorted.size(); ++i) {
        ++token_windows_[distinct_sorted[i]];
        for (size_t j = i + 1; j < distinct_sorted.size(); ++j)
            ++pair_windows_[pair_key(distinct_sorted[i], distinct_sorted[j])];
    }
}

namespace {

WindowCounts count_windows_impl(const std::vector<TokenDoc>& corpus, int window_size,
                                const std::unordered_set<std::string>* restrict_to) {
    if (window_size < 2) throw std::invalid_argument("count_windows: window_size must be >= 2");
    WindowCounts counts;
    std::vector<std::string> distinct;
    for (const auto& doc : corpus) {
        const auto& t = doc.tokens;
        const size_t w = static_cast<size_t>(window_size);
        const size_t n_windows = t.size() <= w ? 1 : t.size() - w + 1;
        for (size_t start = 0; start < n_windows; ++start) {
            const size_t stop = std::min(t.size(), start + w);
            distinct.assign(t.begin() + static_cast<long>(start),
                            t.begin() + static_cast<long>(stop));
            if (restrict_to) {
                distinct.erase(std::remove_if(distinct.begin(), distinct.end(),
                                              [&](const std::string& tok) {
                                                  return !restrict_to->count(tok);
                                              }),
                               distinct.end());
            }
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            counts.add_window_tokens(distinct);
        }
    }
    return counts;
}

}  // namespace

WindowCounts count_windows(const std::vector<TokenDoc>& corpus, int window_size) {
    return count_windows_impl(corpus, window_size, nullptr);
}

WindowCounts count_windows(const std::vector<TokenDoc>& corpus, int window_size,
                           const std::unordered_set<std::string>& restrict_to) {
    return count_windows_impl(corpus, window_size, &restrict_to);
}

double npmi(const WindowCounts& counts, const std::string& w1, const std::string& w2,
            double epsilon) {
    if (counts.total() <= 0) throw std::invalid_argument("npmi: no windows counted");
    const long long c1 = counts.count(w1);
    const long long c2 = counts.count(w2);
    if (c1 == 0) throw std::invalid_argument("npmi: word '" + w1 + "' has zero window count");
    if (c2 == 0) throw std::invalid_argument("npmi: word '" + w2 + "' has zero window count");
    const double total = static_cast<double>(counts.total());
    const double p1 = static_cast<double>(c1) / total;
    const double p2 = static_cast<double>(c2) / total;
    const double p12 = static_cast<double>(counts.pair_count(w1, w2)) / total + epsilon;
    return std::log(p12 / (p1 * p2)) / -std::log(p12);
}

double c_v(const std::vector<std::string>& topic_words, const WindowCounts& counts,
           const CoherenceConfig& config) {
    // set semantics: dedupe, order-independent
    std::set<std::string> distinct(topic_words.begin(), topic_words.end());
    std::vector<std::string> words;
    for (const auto& w : distinct)
        if (counts.count(w) > 0) words.push_back(w);
    if (words.size() < 2)
        throw std::invalid_argument("c_v: need at least 2 distinct scoreable words");

    const size_t n = words.size();
    std::vector<std::vector<double>> vecs(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const double v = npmi(counts, words[i], words[j], config.epsilon);
            vecs[i][j] = config.gamma == 1.0 ? v : std::pow(v, config.gamma);
        }

    std::vector<double> sum(n, 0.0);
    for (const auto& v : vecs)
        for (size_t j = 0; j < n; ++j) sum[j] += v[j];

    double score = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dot = 0.0, norm_v = 0.0, norm_s = 0.0;
        for (size_t j = 0; j < n; ++j) {
            dot += vecs[i][j] * sum[j];
            norm_v += vecs[i][j] * vecs[i][j];
            norm_s += sum[j] * sum[j];
        }
        const double denom = std::sqrt(norm_v) * std::sqrt(norm_s);
        score += denom > 0.0 ? dot / denom : 0.0;
    }
    return score / static_cast<double>(n);
}

ScanResult scan_topics(const std::vector<TokenDoc>& corpus, const Vocabulary& vocab,
                       const std::vector<int>& k_values, const LdaConfig& lda_template,
                       const CoherenceConfig& coh_config) {
    if (k_values.empty()) throw std::invalid_argument("scan_topics: k_values must be nonempty");

    struct Fitted {
        int k;
        std::vector<std::vector<std::string>> topic_words;
    };
    std::vector<Fitted> fits;
    fits.reserve(k_values.size());
    std::unordered_set<std::string> needed;
    for (int k : k_values) {
        LdaConfig cfg = lda_template;
        cfg.k = k;
        cfg.seed = mix_seed(lda_template.seed, static_cast<uint64_t>(k));
        LdaModel model;
        try {
            model = fit_lda(corpus, vocab, cfg);
        } catch (const std::exception& e) {
            throw std::invalid_argument("scan_topics: fit failed for k=" + std::to_string(k) +
                                        ": " + e.what());
        }
        Fitted f;
        f.k = k;
        for (int t = 0; t < k; ++t) {
            f.topic_words.push_back(model.top_words(t, coh_config.top_n));
            for (const auto& w : f.topic_words.back()) needed.insert(w);
        }
        fits.push_back(std::move(f));
    }

    const WindowCounts counts = count_windows(corpus, coh_config.window_size, needed);

    ScanResult result;
    for (const auto& f : fits) {
        ScanPoint point;
        point.k = f.k;
        for (const auto& words : f.topic_words) {
            double cv;
            try {
                cv = c_v(words, counts, coh_config);
            } catch (const std::exception& e) {
                throw std::invalid_argument("scan_topics: scoring failed for k=" +
                                            std::to_string(f.k) + ": " + e.what());
            }
            point.per_topic.push_back(cv);
        }
        double mean = 0.0;
        for (double v : point.per_topic) mean += v;
        point.mean_cv = mean / static_cast<double>(point.per_topic.size());
        result.points.push_back(std::move(point));
    }

    int best_k = result.points.front().k;
    double best_cv = result.points.front().mean_cv;
    for (const auto& p : result.points) {
        if (p.mean_cv > best_cv || (p.mean_cv == best_cv && p.k < best_k)) {
            best_cv = p.mean_cv;
            best_k = p.k;
        }
    }
    result.best_k = best_k;
    return result;
}

}  // namespace notesforge
