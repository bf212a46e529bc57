#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace lincue {

struct LexiconError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Pos {
    NOUN, VERB, AUX, ADJ, ADV, PRON, DET, ADP, CONJ, NUM, PART, PUNCT, MODAL, OTHER
};

const char* pos_name(Pos p);
Pos parse_pos(const std::string& name);  // throws LexiconError on unknown tag

// Rule data for the analyzer, loaded from a lexicon directory:
//   pos_lexicon.txt     word<TAB>TAG per line
//   function_words.txt  one word per line
//   participles.txt     irregular past participles, one per line
//   abbreviations.txt   tokens a trailing '.' does not end a sentence after
// '#' starts a comment; files are UTF-8.
struct Lexicons {
    std::unordered_map<std::string, Pos> pos_lexicon;
    std::unordered_set<std::string> function_words;
    std::unordered_set<std::string> participles;
    std::unordered_set<std::string> abbreviations;
};

Lexicons load_lexicons(const std::string& dir);

// Wordlist for typo detection plus an allowlist of corpus-specific proper
// nouns. Lookups are on lowercased forms.
struct Dictionary {
    std::unordered_set<std::string> words;
    std::unordered_set<std::string> allowlist;

    bool contains(const std::string& lower) const {
        return words.count(lower) > 0 || allowlist.count(lower) > 0;
    }
};

Dictionary load_dictionary(const std::string& wordlist_path, const std::string& allowlist_path = "");

}  // namespace lincue
