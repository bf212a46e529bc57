#pragma once

#include <string>
#include <vector>

#include "lincue/lexicon.hpp"

namespace lincue {

struct Token {
    std::string surface;
    std::string lower;       // lowercased, quote-normalized
    Pos pos = Pos::OTHER;
    bool is_function_word = false;
    int char_len = 0;        // alphabetic characters only
};

// Half-open token-index span.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
    bool operator==(const Span&) const = default;
};

struct Sentence {
    std::vector<Token> tokens;
    std::vector<Span> np_chunks;
    int clause_count = 0;
    int passive_count = 0;
};

struct AnalyzedDoc {
    std::vector<Sentence> sentences;
    int word_count = 0;         // tokens with pos != PUNCT
    int punctuation_count = 0;  // tokens with pos == PUNCT
    int typo_count = 0;
};

// Tag patterns that need no lexicon state.
std::vector<Span> chunk_noun_phrases(const Sentence& sentence);  // DET? ADJ* NOUN+, maximal munch
int count_clauses(const Sentence& sentence);  // verb groups; 0 only for verbless sentences

// Deterministic rule/lexicon analyzer: tokenization, sentence segmentation,
// POS tagging, NP chunking, passive/clause detection, typo counting.
class Analyzer {
public:
    Analyzer(Lexicons lexicons, Dictionary dictionary);

    // Requires non-empty text (after trimming); throws std::invalid_argument.
    AnalyzedDoc analyze(const std::string& text) const;

    std::vector<Pos> tag_pos(const std::vector<std::string>& surfaces) const;

    // Occurrences of a be-auxiliary followed within 2 tokens by a past
    // participle (participle lexicon, or a VERB ending in -ed/-en).
    int detect_passive(const Sentence& sentence) const;

    int count_typos(const AnalyzedDoc& doc) const;

    const Lexicons& lexicons() const { return lexicons_; }
    const Dictionary& dictionary() const { return dictionary_; }

private:
    Pos tag_one(const std::string& surface, const std::string& lower) const;
    bool is_typo(const Token& token) const;

    Lexicons lexicons_;
    Dictionary dictionary_;
};

}  // namespace lincue
