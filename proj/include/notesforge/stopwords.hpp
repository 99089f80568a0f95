#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace notesforge {

// Bundled English function-word list. Deliberately keeps personal pronouns
// like "they"/"them"/"their" and modal "will", which carry signal in
// conversation summaries.
const std::vector<std::string>& default_stopwords();

std::unordered_set<std::string> stopword_set(const std::vector<std::string>& words);

}  // namespace notesforge
