#include "notesforge/stopwords.hpp"

namespace notesforge {

const std::vector<std::string>& default_stopwords() {
    static const std::vector<std::string> words = {
        "a",       "about",   "above",   "after",   "again",   "against", "am",
        "an",      "and",     "any",     "are",     "as",      "at",      "be",
        "because", "been",    "before",  "being",   "below",   "between", "both",
        "but",     "by",      "can",     "could",   "did",     "do",      "does",
        "doing",   "down",    "during",  "each",    "few",     "for",     "from",
        "further", "had",     "has",     "have",    "having",  "he",      "her",
        "here",    "hers",    "herself", "him",     "himself", "his",     "how",
        "i",       "if",      "in",      "into",    "is",      "it",      "its",
        "itself",  "just",    "may",     "me",      "might",   "more",    "most",
        "must",    "my",      "myself",  "no",      "nor",     "not",     "now",
        "of",      "off",     "on",      "once",    "or",      "other",   "our",
        "ours",    "ourselves", "out",   "over",    "shall",   "she",     "should",
        "so",      "some",    "such",    "than",    "that",    "the",     "then",
        "there",   "these",   "this",    "those",   "through", "to",      "too",
        "under",   "until",   "up",      "very",    "was",     "we",      "were",
        "what",    "when",    "where",   "which",   "while",   "who",     "whom",
        "why",     "would",   "you",     "your",    "yours",   "yourself",
    };
    return words;
}

std::unordered_set<std::string> stopword_set(const std::vector<std::string>& words) {
    return {words.begin(), words.end()};
}

}  // namespace notesforge
