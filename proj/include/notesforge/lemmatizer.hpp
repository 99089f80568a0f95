#pragma once

#include <string>
#include <string_view>
#include <unordered_map>

namespace notesforge {

// Rule-based English lemmatizer: exception lexicon first, then ordered suffix
// rules (-sses, -ies/-ied, -es, -eed, -ed, -ing, -s) with doubled-consonant
// undo and silent-e restoration. Idempotent; unknown forms pass through.
// Tokens containing '-' (merged phrases) are left untouched.
std::string lemmatize(std::string_view token);

std::string lemmatize(std::string_view token,
                      const std::unordered_map<std::string, std::string>& extra_exceptions);

const std::unordered_map<std::string, std::string>& default_lemma_exceptions();

}  // namespace notesforge
