#include "notesforge/lemmatizer.hpp"

namespace notesforge {

namespace {

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; }

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool has_vowel(std::string_view s) {
    for (char c : s)
        if (is_vowel(c)) return true;
    return false;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool has_alpha(std::string_view s) {
    for (char c : s)
        if (is_alpha(c)) return true;
    return false;
}

// Repairs a stem obtained by stripping -ed/-ing: undo consonant doubling
// (plann -> plan) or restore a silent e (reassur -> reassure).
std::string fix_stem(std::string stem) {
    const size_t n = stem.size();
    const char last = stem[n - 1];
    if (n >= 3 && last == stem[n - 2] && is_alpha(last) && !is_vowel(last) && last != 'l' &&
        last != 's' && last != 'z') {
        stem.pop_back();
        return stem;
    }
    if (n >= 3) {
        const std::string_view two = std::string_view(stem).substr(n - 2);
        const char before = stem[n - 3];
        if (two == "bl" || two == "iz" || two == "ag" ||
            ((two == "at" || two == "ur") && is_alpha(before) && !is_vowel(before))) {
            return stem + "e";
        }
    }
    if (last == 'v' || last == 'c' || last == 'u') return stem + "e";
    if (n >= 2 && last == 's' && is_vowel(stem[n - 2]) && stem[n - 2] != 'y') return stem + "e";
    return stem;
}

}  // namespace

const std::unordered_map<std::string, std::string>& default_lemma_exceptions() {
    static const std::unordered_map<std::string, std::string> exceptions = {
        {"used", "use"},         {"using", "use"},
        {"created", "create"},   {"creating", "create"},
        {"changed", "change"},   {"changing", "change"},
        {"exchanged", "exchange"}, {"exchanging", "exchange"},
        {"charged", "charge"},   {"charging", "charge"},
        {"panicked", "panic"},   {"panicking", "panic"},
        {"monies", "money"},     {"said", "say"},
        {"says", "say"},         {"made", "make"},
        {"went", "go"},          {"gone", "go"},
        {"done", "do"},          {"children", "child"},
        {"men", "man"},          {"women", "woman"},
        {"feet", "foot"},        {"news", "news"},
        {"nothing", "nothing"},  {"something", "something"},
        {"anything", "anything"}, {"everything", "everything"},
        {"morning", "morning"},  {"evening", "evening"},
        {"during", "during"},    {"being", "be"},
    };
    return exceptions;
}

std::string lemmatize(std::string_view token,
                      const std::unordered_map<std::string, std::string>& extra_exceptions) {
    const std::string key(token);
    if (auto it = extra_exceptions.find(key); it != extra_exceptions.end()) return it->second;
    const auto& builtin = default_lemma_exceptions();
    if (auto it = builtin.find(key); it != builtin.end()) return it->second;

    if (token.size() < 3 || token.find('-') != std::string_view::npos || !has_alpha(token))
        return key;

    const size_t n = token.size();
    const auto stem_of = [&](size_t cut) { return std::string(token.substr(0, n - cut)); };

    if (n >= 5 && ends_with(token, "sses")) return stem_of(2);
    if (n >= 5 && (ends_with(token, "ies") || ends_with(token, "ied"))) return stem_of(3) + "y";
    if (n >= 6 && (ends_with(token, "ches") || ends_with(token, "shes"))) return stem_of(2);
    if (n >= 4 && (ends_with(token, "xes") || ends_with(token, "zes") || ends_with(token, "oes")))
        return stem_of(2);
    if (n >= 5 && ends_with(token, "eed")) {
        if (has_vowel(token.substr(0, n - 3))) return stem_of(1);
        return key;
    }
    if (n >= 5 && ends_with(token, "ed")) {
        std::string stem = stem_of(2);
        if (stem.size() >= 3 && has_vowel(stem)) return fix_stem(std::move(stem));
        return key;
    }
    if (n >= 5 && ends_with(token, "ing")) {
        std::string stem = stem_of(3);
        if (stem.size() >= 2 && has_vowel(stem)) return fix_stem(std::move(stem));
        return key;
    }
    if (n >= 3 && token.back() == 's' && !ends_with(token, "ss") && !ends_with(token, "us") &&
        !ends_with(token, "is")) {
        std::string stem = stem_of(1);
        if (has_vowel(stem)) return stem;
        return key;
    }
    return key;
}

std::string lemmatize(std::string_view token) {
    static const std::unordered_map<std::string, std::string> empty;
    return lemmatize(token, empty);
}

}  // namespace notesforge
