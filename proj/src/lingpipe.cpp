#include "lincue/lingpipe.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

namespace lincue {

namespace {

// ---------------------------------------------------------------------------
// UTF-8 handling. Reviews are informal web text; we decode codepoints and
// classify them into letters / digits / whitespace / everything-else, where
// everything-else (symbols, emoji) is treated like punctuation.
// ---------------------------------------------------------------------------

struct Cp {
    char32_t value = 0;
    std::size_t byte_begin = 0;
    std::size_t byte_end = 0;
};

std::vector<Cp> decode_utf8(const std::string& s) {
    std::vector<Cp> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        char32_t cp = 0;
        std::size_t len = 1;
        if (c < 0x80) {
            cp = c;
        } else if ((c >> 5) == 0x6 && i + 1 < s.size()) {
            cp = static_cast<char32_t>((c & 0x1F) << 6 | (s[i + 1] & 0x3F));
            len = 2;
        } else if ((c >> 4) == 0xE && i + 2 < s.size()) {
            cp = static_cast<char32_t>((c & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F));
            len = 3;
        } else if ((c >> 3) == 0x1E && i + 3 < s.size()) {
            cp = static_cast<char32_t>((c & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 |
                                       (s[i + 2] & 0x3F) << 6 | (s[i + 3] & 0x3F));
            len = 4;
        } else {
            cp = 0xFFFD;  // stray byte
        }
        out.push_back(Cp{cp, i, i + len});
        i += len;
    }
    return out;
}

// Normalizes typographic characters so downstream rules only see ASCII
// apostrophes, quotes and dashes.
char32_t normalize_cp(char32_t cp) {
    switch (cp) {
        case 0x2018: case 0x2019: case 0x02BC: return '\'';
        case 0x201C: case 0x201D: return '"';
        case 0x2013: case 0x2014: case 0x2212: return '-';
        case 0x00A0: return ' ';
        default: return cp;
    }
}

bool is_space_cp(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v';
}

bool is_digit_cp(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter_cp(char32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp >= 0x00C0 && cp <= 0x024F && cp != 0x00D7 && cp != 0x00F7) return true;  // Latin-1/Extended
    if (cp >= 0x0370 && cp <= 0x1FFF) return true;  // Greek, Cyrillic, ...
    return false;
}

bool is_upper_cp(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return true;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return true;
    return false;
}

char32_t lower_cp(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

struct RawToken {
    std::string surface;
    std::string lower;
    bool has_letter = false;
    bool has_digit = false;
    int letter_count = 0;
    std::size_t cp_end = 0;  // index into the codepoint stream just past this token
};

const std::array<const char*, 6> kClitics = {"n't", "'re", "'ve", "'ll", "'s", "'d"};

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Splits trailing clitics ("don't" -> "do" + "n't"); at most one split is
// needed for review text.
std::vector<RawToken> split_clitics(RawToken tok) {
    std::vector<RawToken> out;
    for (const char* c : kClitics) {
        const std::string clitic(c);
        if (tok.lower.size() > clitic.size() && ends_with(tok.lower, clitic)) {
            const std::size_t cut = tok.surface.size() - clitic.size();
            RawToken stem = tok;
            stem.surface = tok.surface.substr(0, cut);
            stem.lower = tok.lower.substr(0, tok.lower.size() - clitic.size());
            stem.letter_count = tok.letter_count - (static_cast<int>(clitic.size()) - 1);
            RawToken tail = tok;
            tail.surface = tok.surface.substr(cut);
            tail.lower = clitic;
            tail.letter_count = static_cast<int>(clitic.size()) - 1;
            out.push_back(std::move(stem));
            out.push_back(std::move(tail));
            return out;
        }
    }
    out.push_back(std::move(tok));
    return out;
}

std::vector<RawToken> tokenize(const std::vector<Cp>& cps) {
    std::vector<RawToken> tokens;
    std::size_t i = 0;
    const std::size_t n = cps.size();
    auto norm = [&](std::size_t k) { return normalize_cp(cps[k].value); };

    while (i < n) {
        const char32_t c = norm(i);
        if (is_space_cp(c)) {
            ++i;
            continue;
        }
        if (is_letter_cp(c) || is_digit_cp(c)) {
            RawToken tok;
            std::size_t j = i;
            while (j < n) {
                const char32_t cj = norm(j);
                if (is_letter_cp(cj) || is_digit_cp(cj)) {
                    append_utf8(tok.surface, cps[j].value);
                    append_utf8(tok.lower, lower_cp(cj));
                    tok.has_letter = tok.has_letter || is_letter_cp(cj);
                    tok.has_digit = tok.has_digit || is_digit_cp(cj);
                    if (is_letter_cp(cj)) ++tok.letter_count;
                    ++j;
                    continue;
                }
                // apostrophe or hyphen stays inside a word when flanked by letters
                if ((cj == '\'' || cj == '-') && j + 1 < n && j > i &&
                    (is_letter_cp(norm(j + 1)) || is_digit_cp(norm(j + 1)))) {
                    append_utf8(tok.surface, cps[j].value);
                    append_utf8(tok.lower, cj);
                    ++j;
                    continue;
                }
                break;
            }
            tok.cp_end = j;
            for (auto& piece : split_clitics(std::move(tok))) {
                piece.cp_end = j;
                tokens.push_back(std::move(piece));
            }
            i = j;
            continue;
        }
        // punctuation / symbol run
        RawToken tok;
        std::size_t j = i;
        while (j < n) {
            const char32_t cj = norm(j);
            if (is_space_cp(cj) || is_letter_cp(cj) || is_digit_cp(cj)) break;
            append_utf8(tok.surface, cps[j].value);
            append_utf8(tok.lower, cj);
            ++j;
        }
        tok.cp_end = j;
        tokens.push_back(std::move(tok));
        i = j;
    }
    return tokens;
}

const std::unordered_set<std::string> kModalWords = {
    "can", "could", "may", "might", "must", "shall", "should", "will", "would",
};

const std::unordered_set<std::string> kBeForms = {
    "be", "am", "is", "are", "was", "were", "been", "being", "'s", "'re", "'m",
};

bool contains_any(const std::string& s, const char* chars) {
    return s.find_first_of(chars) != std::string::npos;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tag-pattern operations
// ---------------------------------------------------------------------------

std::vector<Span> chunk_noun_phrases(const Sentence& sentence) {
    std::vector<Span> spans;
    const auto& toks = sentence.tokens;
    std::size_t i = 0;
    while (i < toks.size()) {
        std::size_t j = i;
        if (j < toks.size() && toks[j].pos == Pos::DET) ++j;
        while (j < toks.size() && toks[j].pos == Pos::ADJ) ++j;
        std::size_t k = j;
        while (k < toks.size() && toks[k].pos == Pos::NOUN) ++k;
        if (k > j) {
            spans.push_back(Span{i, k});
            i = k;
        } else {
            ++i;
        }
    }
    return spans;
}

int count_clauses(const Sentence& sentence) {
    auto verbal = [](Pos p) { return p == Pos::VERB || p == Pos::AUX || p == Pos::MODAL; };
    int count = 0;
    const auto& toks = sentence.tokens;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (verbal(toks[i].pos) && (i == 0 || !verbal(toks[i - 1].pos))) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Analyzer
// ---------------------------------------------------------------------------

Analyzer::Analyzer(Lexicons lexicons, Dictionary dictionary)
    : lexicons_(std::move(lexicons)), dictionary_(std::move(dictionary)) {}

Pos Analyzer::tag_one(const std::string& surface, const std::string& lower) const {
    bool has_letter = false, has_digit = false;
    for (const Cp& cp : decode_utf8(lower)) {
        const char32_t c = normalize_cp(cp.value);
        if (is_digit_cp(c)) has_digit = true;
        else if (is_letter_cp(c)) has_letter = true;
    }
    if (!has_letter && !has_digit) return Pos::PUNCT;
    if (has_digit) return Pos::NUM;
    if (kModalWords.count(lower)) return Pos::MODAL;

    const auto hit = lexicons_.pos_lexicon.find(lower);
    if (hit != lexicons_.pos_lexicon.end()) return hit->second;

    // suffix fallbacks, most reliable first
    if (ends_with(lower, "ly") && lower.size() >= 4) return Pos::ADV;
    if (ends_with(lower, "ing") && lower.size() >= 5) return Pos::VERB;
    if (ends_with(lower, "ed") && lower.size() >= 4) return Pos::VERB;
    for (const char* suf : {"ness", "ment", "tion", "sion", "ship", "hood", "ance", "ence", "ity", "ism"})
        if (ends_with(lower, suf)) return Pos::NOUN;
    for (const char* suf : {"ous", "ful", "less", "able", "ible", "ish", "ive", "est"})
        if (ends_with(lower, suf)) return Pos::ADJ;
    for (const char* suf : {"ize", "ise", "ify"})
        if (ends_with(lower, suf)) return Pos::VERB;
    if (ends_with(lower, "s") && !ends_with(lower, "ss") && !ends_with(lower, "us") &&
        !ends_with(lower, "is") && lower.size() >= 4) {
        const auto stem = lexicons_.pos_lexicon.find(lower.substr(0, lower.size() - 1));
        if (stem != lexicons_.pos_lexicon.end() &&
            (stem->second == Pos::NOUN || stem->second == Pos::VERB))
            return stem->second;
        return Pos::NOUN;  // unknown plural-looking word
    }
    if (!surface.empty() && is_upper_cp(decode_utf8(surface).front().value)) return Pos::NOUN;
    return Pos::NOUN;  // open-class default for unknown alphabetic words
}

std::vector<Pos> Analyzer::tag_pos(const std::vector<std::string>& surfaces) const {
    if (surfaces.empty()) throw std::invalid_argument("tag_pos: empty token list");
    std::vector<Pos> tags;
    tags.reserve(surfaces.size());
    for (const auto& s : surfaces) {
        std::string lower;
        for (const Cp& cp : decode_utf8(s)) append_utf8(lower, lower_cp(normalize_cp(cp.value)));
        tags.push_back(tag_one(s, lower));
    }
    return tags;
}

int Analyzer::detect_passive(const Sentence& sentence) const {
    const auto& toks = sentence.tokens;
    int count = 0;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (!kBeForms.count(toks[i].lower)) continue;
        const std::size_t hi = std::min(toks.size(), i + 3);
        for (std::size_t j = i + 1; j < hi; ++j) {
            if (toks[j].pos != Pos::VERB) continue;
            const std::string& w = toks[j].lower;
            if (lexicons_.participles.count(w) || ends_with(w, "ed") || ends_with(w, "en")) {
                ++count;
                break;
            }
        }
    }
    return count;
}

bool Analyzer::is_typo(const Token& token) const {
    if (token.pos == Pos::PUNCT || token.pos == Pos::NUM) return false;
    if (token.char_len < 2) return false;
    if (token.is_function_word) return false;
    const std::string& key = token.lower;
    if (dictionary_.contains(key)) return false;
    if (key.find('-') != std::string::npos) {
        // hyphenated compounds pass when every part is a word
        std::size_t start = 0;
        bool all_ok = true;
        while (start <= key.size()) {
            const std::size_t dash = key.find('-', start);
            const std::string part = key.substr(start, dash == std::string::npos ? dash : dash - start);
            if (!part.empty() && !dictionary_.contains(part)) {
                all_ok = false;
                break;
            }
            if (dash == std::string::npos) break;
            start = dash + 1;
        }
        return !all_ok;
    }
    return true;
}

int Analyzer::count_typos(const AnalyzedDoc& doc) const {
    int count = 0;
    for (const auto& s : doc.sentences)
        for (const auto& t : s.tokens)
            if (is_typo(t)) ++count;
    return count;
}

AnalyzedDoc Analyzer::analyze(const std::string& text) const {
    const bool blank = std::all_of(text.begin(), text.end(),
                                   [](unsigned char c) { return std::isspace(c); });
    if (text.empty() || blank) throw std::invalid_argument("analyze: empty text");

    const std::vector<Cp> cps = decode_utf8(text);
    std::vector<RawToken> raw = tokenize(cps);

    // sentence boundary: a token carrying . ! or ? ends the sentence when at
    // end-of-text or followed by whitespace then (optional quote) a capital;
    // a bare '.' after an abbreviation never ends one.
    auto is_boundary = [&](std::size_t t) {
        if (!contains_any(raw[t].lower, ".!?")) return false;
        if (raw[t].has_letter || raw[t].has_digit) return false;
        if (raw[t].lower == "." && t > 0 && lexicons_.abbreviations.count(raw[t - 1].lower)) return false;
        std::size_t k = raw[t].cp_end;
        if (k >= cps.size()) return true;
        if (!is_space_cp(normalize_cp(cps[k].value))) return false;
        while (k < cps.size() && is_space_cp(normalize_cp(cps[k].value))) ++k;
        while (k < cps.size()) {
            const char32_t c = normalize_cp(cps[k].value);
            if (c == '"' || c == '\'' || c == '(') {
                ++k;
                continue;
            }
            return is_upper_cp(c);
        }
        return true;
    };

    AnalyzedDoc doc;
    Sentence cur;
    auto flush = [&] {
        if (cur.tokens.empty()) return;
        cur.np_chunks = chunk_noun_phrases(cur);
        cur.clause_count = count_clauses(cur);
        cur.passive_count = detect_passive(cur);
        doc.sentences.push_back(std::move(cur));
        cur = Sentence{};
    };

    for (std::size_t t = 0; t < raw.size(); ++t) {
        Token tok;
        tok.surface = raw[t].surface;
        tok.lower = raw[t].lower;
        tok.pos = tag_one(tok.surface, tok.lower);
        tok.is_function_word = lexicons_.function_words.count(tok.lower) > 0;
        tok.char_len = raw[t].letter_count;
        if (tok.pos == Pos::PUNCT) ++doc.punctuation_count;
        else ++doc.word_count;
        cur.tokens.push_back(std::move(tok));
        if (is_boundary(t)) flush();
    }
    flush();

    doc.typo_count = count_typos(doc);
    return doc;
}

}  // namespace lincue
