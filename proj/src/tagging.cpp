#include "notesforge/tagging.hpp"

#include <algorithm>
#include <map>

#include "notesforge/errors.hpp"

namespace notesforge {

std::vector<LexiconSpec> default_lexicons() {
    return {
        {"market-volatility", {"market", "volatility"}, 0.7},
        {"peace-of-mind", {"sensitive", "concern", "panic"}, 0.7},
    };
}

double TopicLexicon::similarity_of(const std::string& token) const {
    auto it = lookup_.find(token);
    if (it == lookup_.end())
        throw std::invalid_argument("lexicon '" + topic_name + "' does not contain '" + token +
                                    "'");
    return it->second;
}

void TopicLexicon::rebuild_lookup() {
    lookup_.clear();
    for (const auto& [tok, sim] : expanded) lookup_[tok] = sim;
}

TopicLexicon expand_lexicon(const EmbeddingModel& model, const LexiconSpec& spec) {
    if (spec.seeds.empty()) throw std::invalid_argument("expand_lexicon: no seed words");

    TopicLexicon lex;
    lex.topic_name = spec.topic;
    lex.seed_words = spec.seeds;
    lex.threshold = spec.threshold;

    std::vector<int> seed_ids;
    for (const auto& seed : spec.seeds) {
        const int i = model.index_of(seed);
        if (i >= 0)
            seed_ids.push_back(i);
        else
            lex.oov_seeds.push_back(seed);
    }
    if (seed_ids.empty())
        throw std::invalid_argument("expand_lexicon: no seed of topic '" + spec.topic +
                                    "' is in the embedding vocabulary");

    std::map<std::string, double> expanded;
    for (const auto& seed : spec.seeds) expanded[seed] = 1.0;
    for (int w = 0; w < model.size(); ++w) {
        const std::string& token = model.tokens[static_cast<size_t>(w)];
        if (expanded.count(token)) continue;
        double best = -1.0;
        for (int s : seed_ids)
            best = std::max(best, cosine(model.input_vectors[static_cast<size_t>(w)],
                                         model.input_vectors[static_cast<size_t>(s)]));
        if (best >= spec.threshold) expanded[token] = best;
    }
    lex.expanded.assign(expanded.begin(), expanded.end());
    lex.rebuild_lookup();
    return lex;
}

std::vector<TagEvent> tag_corpus(const std::vector<TokenDoc>& docs,
                                 const std::unordered_map<std::string, RawNote>& notes_meta,
                                 const std::vector<TopicLexicon>& lexicons) {
    std::vector<TagEvent> events;
    for (const auto& doc : docs) {
        const auto meta = notes_meta.find(doc.note_id);
        if (meta == notes_meta.end())
            throw SchemaError("tag_corpus: missing note metadata for '" + doc.note_id + "'");
        for (size_t pos = 0; pos < doc.tokens.size(); ++pos) {
            const auto& token = doc.tokens[pos];
            for (const auto& lex : lexicons) {
                if (!lex.contains(token)) continue;
                TagEvent ev;
                ev.note_id = doc.note_id;
                ev.client_id = meta->second.client_id;
                ev.date = meta->second.date;
                ev.topic_name = lex.topic_name;
                ev.matched_token = token;
                ev.similarity = lex.similarity_of(token);
                ev.position = static_cast<int>(pos);
                events.push_back(std::move(ev));
            }
        }
    }
    std::sort(events.begin(), events.end(), [](const TagEvent& a, const TagEvent& b) {
        if (a.note_id != b.note_id) return a.note_id < b.note_id;
        if (a.position != b.position) return a.position < b.position;
        return a.topic_name < b.topic_name;
    });
    return events;
}

}  // namespace notesforge
