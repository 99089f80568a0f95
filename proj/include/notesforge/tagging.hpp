#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "notesforge/corpus.hpp"
#include "notesforge/embedding.hpp"

namespace notesforge {

struct LexiconSpec {
    std::string topic;
    std::vector<std::string> seeds;
    double threshold = 0.7;
};

struct TopicLexicon {
    std::string topic_name;
    std::vector<std::string> seed_words;
    double threshold = 0.7;
    std::vector<std::pair<std::string, double>> expanded;  // sorted by token
    std::vector<std::string> oov_seeds;                    // seeds missing from the embedding vocab

    bool contains(const std::string& token) const { return lookup_.count(token) > 0; }
    double similarity_of(const std::string& token) const;
    void rebuild_lookup();

  private:
    std::unordered_map<std::string, double> lookup_;
};

// Built-ins: market-volatility {market, volatility} and peace-of-mind
// {sensitive, concern, panic}.
std::vector<LexiconSpec> default_lexicons();

// expanded = seeds at similarity 1.0 plus every vocab token whose best cosine
// against any in-vocab seed meets the threshold.
TopicLexicon expand_lexicon(const EmbeddingModel& model, const LexiconSpec& spec);

struct TagEvent {
    std::string note_id;
    std::string client_id;
    Date date;
    std::string topic_name;
    std::string matched_token;
    double similarity = 0.0;
    int position = 0;  // token index within the note
};

// One event per (token occurrence x matching lexicon), ordered by
// (note_id, position, topic_name).
std::vector<TagEvent> tag_corpus(const std::vector<TokenDoc>& docs,
                                 const std::unordered_map<std::string, RawNote>& notes_meta,
                                 const std::vector<TopicLexicon>& lexicons);

}  // namespace notesforge
