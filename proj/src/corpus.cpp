#include "notesforge/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <set>

#include "notesforge/errors.hpp"
#include "notesforge/lemmatizer.hpp"
#include "notesforge/rng.hpp"
#include "notesforge/stopwords.hpp"

namespace notesforge {

// ---------------------------------------------------------------------------
// Vocabulary
// ---------------------------------------------------------------------------

Vocabulary Vocabulary::from_docs(const std::vector<TokenDoc>& docs, long long min_count) {
    std::unordered_map<std::string, long long> counts;
    for (const auto& doc : docs)
        for (const auto& tok : doc.tokens) ++counts[tok];
    std::vector<std::pair<std::string, long long>> entries;
    entries.reserve(counts.size());
    for (auto& [tok, c] : counts)
        if (c >= min_count) entries.emplace_back(tok, c);
    return from_entries(std::move(entries));
}

Vocabulary Vocabulary::from_entries(std::vector<std::pair<std::string, long long>> entries) {
    std::sort(entries.begin(), entries.end());
    Vocabulary v;
    v.tokens_.reserve(entries.size());
    v.counts_.reserve(entries.size());
    for (auto& [tok, c] : entries) {
        if (v.index_.count(tok)) throw SchemaError("duplicate vocabulary token '" + tok + "'");
        v.index_[tok] = static_cast<int>(v.tokens_.size());
        v.tokens_.push_back(std::move(tok));
        v.counts_.push_back(c);
    }
    return v;
}

int Vocabulary::index_of(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? -1 : it->second;
}

const std::string& Vocabulary::token_of(int index) const {
    if (index < 0 || index >= size()) throw std::invalid_argument("vocabulary index out of range");
    return tokens_[static_cast<size_t>(index)];
}

long long Vocabulary::count_of(const std::string& token) const {
    const int i = index_of(token);
    return i < 0 ? 0 : counts_[static_cast<size_t>(i)];
}

uint64_t Vocabulary::hash() const {
    uint64_t h = 1469598103934665603ULL;
    for (size_t i = 0; i < tokens_.size(); ++i) {
        h = mix_seed(h, fnv1a64(tokens_[i]));
        h = mix_seed(h, static_cast<uint64_t>(counts_[i]));
    }
    return h;
}

// ---------------------------------------------------------------------------
// PhraseTable
// ---------------------------------------------------------------------------

namespace {

std::string join_parts(const std::vector<std::string>& parts) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '-';
        out += parts[i];
    }
    return out;
}

std::string pair_key(const std::string& a, const std::string& b) { return a + '\x1f' + b; }

}  // namespace

std::string PhraseEntry::joined() const { return join_parts(parts); }

void PhraseTable::add(PhraseEntry entry) {
    if (entry.parts.size() == 2) {
        pairs_.insert(pair_key(entry.parts[0], entry.parts[1]));
    } else if (entry.parts.size() == 3) {
        triples_.insert(pair_key(pair_key(entry.parts[0], entry.parts[1]), entry.parts[2]));
    } else {
        throw std::invalid_argument("phrase entries must have 2 or 3 parts");
    }
    entries_.push_back(std::move(entry));
}

bool PhraseTable::has_pair(const std::string& a, const std::string& b) const {
    return pairs_.count(pair_key(a, b)) > 0;
}

bool PhraseTable::has_triple(const std::string& a, const std::string& b,
                             const std::string& c) const {
    return triples_.count(pair_key(pair_key(a, b), c)) > 0;
}

// ---------------------------------------------------------------------------
// clean
// ---------------------------------------------------------------------------

namespace {

bool starts_url(std::string_view s, size_t i) {
    static const char* prefixes[] = {"http://", "https://", "www."};
    for (const char* p : prefixes) {
        const size_t n = std::strlen(p);
        if (i + n <= s.size()) {
            bool match = true;
            for (size_t j = 0; j < n; ++j)
                if (std::tolower(static_cast<unsigned char>(s[i + j])) != p[j]) {
                    match = false;
                    break;
                }
            if (match) return true;
        }
    }
    return false;
}

bool is_collapsible_punct(char c) {
    return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':' || c == '-';
}

// UTF-8 sequences normalized away before tokenization.
struct Utf8Rule {
    const char* seq;
    const char* replacement;
};

constexpr Utf8Rule kUtf8Rules[] = {
    {"\xE2\x80\xA2", " "},   // bullet
    {"\xE2\x97\xA6", " "},   // white bullet
    {"\xE2\x96\xAA", " "},   // black small square
    {"\xE2\x97\x8F", " "},   // black circle
    {"\xE2\x88\x99", " "},   // bullet operator
    {"\xC2\xB7", " "},       // middle dot
    {"\xC2\xA0", " "},       // no-break space
    {"\xE2\x80\x93", "-"},   // en dash
    {"\xE2\x80\x94", " "},   // em dash
    {"\xE2\x80\xA6", " "},   // ellipsis
    {"\xE2\x80\x98", "'"},   // left single quote
    {"\xE2\x80\x99", "'"},   // right single quote
    {"\xE2\x80\x9C", " "},   // left double quote
    {"\xE2\x80\x9D", " "},   // right double quote
};

}  // namespace

std::string clean(std::string_view text) {
    std::string buf;
    buf.reserve(text.size());
    for (size_t i = 0; i < text.size();) {
        if (starts_url(text, i)) {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            buf += ' ';
            continue;
        }
        bool replaced = false;
        for (const auto& rule : kUtf8Rules) {
            const size_t n = std::strlen(rule.seq);
            if (text.substr(i, n) == rule.seq) {
                buf += rule.replacement;
                i += n;
                replaced = true;
                break;
            }
        }
        if (replaced) continue;
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (c < 0x20) {
            buf += ' ';
        } else if (c == '*' || c == '#' || c == '=' || c == '_' || c == '~' || c == '+' ||
                   c == '|' || c == '<' || c == '>') {
            buf += ' ';
        } else {
            buf += static_cast<char>(std::tolower(c));
        }
        ++i;
    }

    std::string out;
    out.reserve(buf.size());
    for (size_t i = 0; i < buf.size(); ++i) {
        const char c = buf[i];
        if (is_collapsible_punct(c) && i + 1 < buf.size() && is_collapsible_punct(buf[i + 1])) {
            // keep first char of a punctuation run
            out += c;
            while (i + 1 < buf.size() && is_collapsible_punct(buf[i + 1])) ++i;
            continue;
        }
        out += c;
    }

    std::string collapsed;
    collapsed.reserve(out.size());
    bool in_space = false;
    for (char c : out) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
            continue;
        }
        if (in_space && !collapsed.empty()) collapsed += ' ';
        in_space = false;
        collapsed += c;
    }
    return collapsed;
}

// ---------------------------------------------------------------------------
// tokenize / stopwords
// ---------------------------------------------------------------------------

namespace {

bool word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }
bool alpha_char(unsigned char c) { return std::isalpha(c) || c >= 0x80; }

bool keepable_token(const std::string& t) {
    if (t.size() < 2) return false;
    for (unsigned char c : t)
        if (alpha_char(c)) return true;
    return false;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view cleaned) {
    std::vector<std::string> out;
    std::string cur;
    const auto flush = [&] {
        if (keepable_token(cur)) out.push_back(cur);
        cur.clear();
    };
    for (size_t i = 0; i < cleaned.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(cleaned[i]);
        if (word_char(c)) {
            cur += static_cast<char>(c);
        } else if ((c == '\'' || c == '-') && !cur.empty() && i + 1 < cleaned.size() &&
                   word_char(static_cast<unsigned char>(cleaned[i + 1]))) {
            // intra-word: apostrophes elided, hyphens kept
            if (c == '-') cur += '-';
        } else {
            flush();
        }
    }
    flush();
    return out;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::unordered_set<std::string>& stoplist) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
        if (!stoplist.count(t)) out.push_back(t);
    return out;
}

// ---------------------------------------------------------------------------
// phrase mining
// ---------------------------------------------------------------------------

namespace {

double adjacency_npmi(long long pair_count, long long count_a, long long count_b,
                      long long total_tokens, double epsilon) {
    const double n = static_cast<double>(total_tokens);
    const double pab = static_cast<double>(pair_count) / n + epsilon;
    const double pa = static_cast<double>(count_a) / n;
    const double pb = static_cast<double>(count_b) / n;
    return std::log(pab / (pa * pb)) / -std::log(pab);
}

struct AdjacencyCounts {
    std::unordered_map<std::string, long long> unigrams;
    std::unordered_map<std::string, long long> pairs;  // ordered adjacent pairs
    long long total_tokens = 0;
};

AdjacencyCounts count_adjacencies(const std::vector<TokenDoc>& docs) {
    AdjacencyCounts c;
    for (const auto& doc : docs) {
        c.total_tokens += static_cast<long long>(doc.tokens.size());
        for (size_t i = 0; i < doc.tokens.size(); ++i) {
            ++c.unigrams[doc.tokens[i]];
            if (i + 1 < doc.tokens.size()) ++c.pairs[pair_key(doc.tokens[i], doc.tokens[i + 1])];
        }
    }
    return c;
}

std::pair<std::string, std::string> split_pair_key(const std::string& key) {
    const size_t pos = key.find('\x1f');
    return {key.substr(0, pos), key.substr(pos + 1)};
}

}  // namespace

PhraseTable mine_phrases(const std::vector<TokenDoc>& docs, long long min_count, double threshold,
                         double epsilon) {
    if (min_count < 1) throw std::invalid_argument("mine_phrases: min_count must be >= 1");
    PhraseTable table;
    const AdjacencyCounts first = count_adjacencies(docs);
    if (first.total_tokens == 0) return table;

    std::vector<PhraseEntry> bigrams;
    for (const auto& [key, pcount] : first.pairs) {
        if (pcount < min_count) continue;
        auto [a, b] = split_pair_key(key);
        const double score =
            adjacency_npmi(pcount, first.unigrams.at(a), first.unigrams.at(b), first.total_tokens,
                           epsilon);
        if (score >= threshold) bigrams.push_back(PhraseEntry{{a, b}, score});
    }
    std::sort(bigrams.begin(), bigrams.end(),
              [](const PhraseEntry& x, const PhraseEntry& y) { return x.parts < y.parts; });
    PhraseTable bigram_table;
    for (auto& e : bigrams) bigram_table.add(e);

    // Second pass over pair-merged docs promotes (bigram, token) adjacencies
    // to trigrams.
    std::unordered_map<std::string, const PhraseEntry*> bigram_by_name;
    for (const auto& e : bigram_table.entries()) bigram_by_name[e.joined()] = &e;
    std::vector<TokenDoc> merged;
    merged.reserve(docs.size());
    for (const auto& doc : docs) merged.push_back(apply_phrases(doc, bigram_table));
    const AdjacencyCounts second = count_adjacencies(merged);

    std::vector<PhraseEntry> trigrams;
    for (const auto& [key, pcount] : second.pairs) {
        if (pcount < min_count) continue;
        auto [a, b] = split_pair_key(key);
        const auto ia = bigram_by_name.find(a);
        const auto ib = bigram_by_name.find(b);
        const bool a_is_bigram = ia != bigram_by_name.end();
        const bool b_is_bigram = ib != bigram_by_name.end();
        if (a_is_bigram == b_is_bigram) continue;  // want exactly one merged side
        const double score = adjacency_npmi(pcount, second.unigrams.at(a), second.unigrams.at(b),
                                            second.total_tokens, epsilon);
        if (score < threshold) continue;
        std::vector<std::string> parts;
        if (a_is_bigram) {
            parts = ia->second->parts;
            parts.push_back(b);
        } else {
            parts.push_back(a);
            parts.insert(parts.end(), ib->second->parts.begin(), ib->second->parts.end());
        }
        trigrams.push_back(PhraseEntry{std::move(parts), score});
    }
    std::sort(trigrams.begin(), trigrams.end(),
              [](const PhraseEntry& x, const PhraseEntry& y) { return x.parts < y.parts; });

    for (auto& e : bigram_table.entries()) table.add(e);
    for (auto& e : trigrams) table.add(e);
    return table;
}

TokenDoc apply_phrases(const TokenDoc& doc, const PhraseTable& table) {
    TokenDoc out;
    out.note_id = doc.note_id;
    const auto& t = doc.tokens;
    for (size_t i = 0; i < t.size();) {
        if (i + 2 < t.size() && table.has_triple(t[i], t[i + 1], t[i + 2])) {
            out.tokens.push_back(t[i] + '-' + t[i + 1] + '-' + t[i + 2]);
            i += 3;
        } else if (i + 1 < t.size() && table.has_pair(t[i], t[i + 1])) {
            out.tokens.push_back(t[i] + '-' + t[i + 1]);
            i += 2;
        } else {
            out.tokens.push_back(t[i]);
            ++i;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// preprocess
// ---------------------------------------------------------------------------

PreprocessResult preprocess(const std::vector<RawNote>& notes, const PreprocessConfig& config) {
    {
        std::unordered_set<std::string> seen;
        std::set<std::string> dups;
        for (const auto& n : notes)
            if (!seen.insert(n.note_id).second) dups.insert(n.note_id);
        if (!dups.empty()) {
            std::string msg = "duplicate note_id(s):";
            for (const auto& id : dups) msg += ' ' + id;
            throw SchemaError(msg);
        }
    }

    const auto stoplist =
        stopword_set(config.stopwords.empty() ? default_stopwords() : config.stopwords);

    PreprocessResult result;
    result.docs.reserve(notes.size());
    for (const auto& note : notes) {
        TokenDoc doc;
        doc.note_id = note.note_id;
        doc.tokens = remove_stopwords(tokenize(clean(note.text)), stoplist);
        result.docs.push_back(std::move(doc));
    }

    if (config.mine_phrases_enabled) {
        result.phrases =
            mine_phrases(result.docs, config.phrase_min_count, config.phrase_threshold);
        for (auto& doc : result.docs) doc = apply_phrases(doc, result.phrases);
    }

    for (auto& doc : result.docs)
        for (auto& tok : doc.tokens) tok = lemmatize(tok, config.lemma_exceptions);

    result.vocab = Vocabulary::from_docs(result.docs, config.vocab_min_count);
    if (config.vocab_min_count > 1) {
        for (auto& doc : result.docs) {
            std::vector<std::string> kept;
            kept.reserve(doc.tokens.size());
            for (auto& tok : doc.tokens)
                if (result.vocab.contains(tok)) kept.push_back(std::move(tok));
            doc.tokens = std::move(kept);
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// corpus stats
// ---------------------------------------------------------------------------

long long text_length_no_ws(std::string_view text) {
    long long n = 0;
    for (unsigned char c : text)
        if (!std::isspace(c)) ++n;
    return n;
}

namespace {

std::vector<HistBin> histogram(const std::vector<double>& values, int bin_width) {
    std::vector<HistBin> bins;
    if (values.empty()) return bins;
    double max_v = 0.0;
    for (double v : values) max_v = std::max(max_v, v);
    const long long n_bins = static_cast<long long>(max_v / bin_width) + 1;
    bins.resize(static_cast<size_t>(n_bins));
    for (long long i = 0; i < n_bins; ++i) {
        bins[static_cast<size_t>(i)].lo = i * bin_width;
        bins[static_cast<size_t>(i)].hi = (i + 1) * bin_width;
    }
    for (double v : values) {
        auto idx = static_cast<size_t>(static_cast<long long>(v / bin_width));
        if (idx >= bins.size()) idx = bins.size() - 1;
        ++bins[idx].count;
    }
    return bins;
}

}  // namespace

StatsReport corpus_stats(const std::vector<RawNote>& notes) {
    StatsReport report;

    std::map<std::string, std::pair<long long, std::set<std::string>>> monthly;
    std::map<std::string, std::pair<long long, long long>> advisor_totals;  // chars, notes
    std::vector<double> lengths;
    lengths.reserve(notes.size());

    for (const auto& note : notes) {
        auto& slot = monthly[format_month(note.date)];
        ++slot.first;
        slot.second.insert(note.advisor_id);
        const long long len = text_length_no_ws(note.text);
        lengths.push_back(static_cast<double>(len));
        auto& adv = advisor_totals[note.advisor_id];
        adv.first += len;
        ++adv.second;
    }

    for (const auto& [month, slot] : monthly) {
        StatsReport::MonthRow row;
        row.month = month;
        row.notes = slot.first;
        row.advisors = static_cast<long long>(slot.second.size());
        row.notes_per_advisor = static_cast<double>(slot.first) / static_cast<double>(row.advisors);
        report.monthly.push_back(std::move(row));
    }

    report.note_length_hist = histogram(lengths, StatsReport::kBinWidth);

    std::vector<double> advisor_means;
    advisor_means.reserve(advisor_totals.size());
    for (const auto& [advisor, totals] : advisor_totals)
        advisor_means.push_back(static_cast<double>(totals.first) /
                                static_cast<double>(totals.second));
    report.advisor_avg_length_hist = histogram(advisor_means, StatsReport::kBinWidth);
    return report;
}

}  // namespace notesforge
