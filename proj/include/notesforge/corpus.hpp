#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "notesforge/dates.hpp"

namespace notesforge {

struct RawNote {
    std::string note_id;
    std::string advisor_id;
    std::string client_id;
    Date date;
    std::string text;  // may be empty
};

struct TokenDoc {
    std::string note_id;
    std::vector<std::string> tokens;
};

// Token <-> index bijection with corpus counts. Indices are assigned in
// lexicographic token order so identical corpora serialize identically.
class Vocabulary {
  public:
    Vocabulary() = default;
    static Vocabulary from_docs(const std::vector<TokenDoc>& docs, long long min_count = 1);
    static Vocabulary from_entries(std::vector<std::pair<std::string, long long>> entries);

    int index_of(const std::string& token) const;  // -1 if absent
    bool contains(const std::string& token) const { return index_of(token) >= 0; }
    const std::string& token_of(int index) const;
    long long count_of(const std::string& token) const;  // 0 if absent
    int size() const { return static_cast<int>(tokens_.size()); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    const std::vector<long long>& counts() const { return counts_; }
    uint64_t hash() const;

  private:
    std::vector<std::string> tokens_;
    std::vector<long long> counts_;
    std::unordered_map<std::string, int> index_;
};

struct PhraseEntry {
    std::vector<std::string> parts;  // 2 or 3 tokens
    double score = 0.0;
    std::string joined() const;
};

class PhraseTable {
  public:
    void add(PhraseEntry entry);
    bool has_pair(const std::string& a, const std::string& b) const;
    bool has_triple(const std::string& a, const std::string& b, const std::string& c) const;
    const std::vector<PhraseEntry>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }

  private:
    std::vector<PhraseEntry> entries_;
    std::unordered_set<std::string> pairs_;
    std::unordered_set<std::string> triples_;
};

struct PreprocessConfig {
    std::vector<std::string> stopwords;  // empty -> bundled default list
    bool mine_phrases_enabled = true;
    long long phrase_min_count = 5;
    double phrase_threshold = 0.3;
    long long vocab_min_count = 1;
    std::unordered_map<std::string, std::string> lemma_exceptions;  // extra, on top of bundled
};

// Strips bullets/control characters/URLs, collapses repeated punctuation and
// whitespace, lowercases. Total on any UTF-8 input.
std::string clean(std::string_view text);

// Splits on non-alphanumeric boundaries; intra-word apostrophes are elided
// ("don't" -> "dont"), intra-word hyphens kept. Drops tokens shorter than two
// characters and tokens with no alphabetic character (standalone numbers).
std::vector<std::string> tokenize(std::string_view cleaned);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::unordered_set<std::string>& stoplist);

// Adjacent-pair collocations scored by NPMI over token positions; a second
// pass over pair-merged docs promotes (bigram, token) pairs to trigrams.
PhraseTable mine_phrases(const std::vector<TokenDoc>& docs, long long min_count,
                         double threshold, double epsilon = 1e-12);

// Greedy left-to-right longest match; merged token joins parts with '-'.
TokenDoc apply_phrases(const TokenDoc& doc, const PhraseTable& table);

struct PreprocessResult {
    std::vector<TokenDoc> docs;  // same order as input notes; empty docs retained
    Vocabulary vocab;
    PhraseTable phrases;
};

PreprocessResult preprocess(const std::vector<RawNote>& notes, const PreprocessConfig& config);

struct HistBin {
    long long lo = 0;  // inclusive
    long long hi = 0;  // exclusive
    long long count = 0;
};

struct StatsReport {
    struct MonthRow {
        std::string month;  // "YYYY-MM"
        long long notes = 0;
        long long advisors = 0;
        double notes_per_advisor = 0.0;
    };
    static constexpr int kBinWidth = 50;
    std::vector<MonthRow> monthly;
    std::vector<HistBin> note_length_hist;         // chars excluding whitespace
    std::vector<HistBin> advisor_avg_length_hist;  // per-advisor mean length
};

StatsReport corpus_stats(const std::vector<RawNote>& notes);

long long text_length_no_ws(std::string_view text);

}  // namespace notesforge
