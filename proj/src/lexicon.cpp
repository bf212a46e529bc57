#include "lincue/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace lincue {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string ascii_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Yields stripped, non-comment lines.
std::vector<std::string> read_lexicon_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LexiconError("cannot open lexicon file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace

const char* pos_name(Pos p) {
    switch (p) {
        case Pos::NOUN: return "NOUN";
        case Pos::VERB: return "VERB";
        case Pos::AUX: return "AUX";
        case Pos::ADJ: return "ADJ";
        case Pos::ADV: return "ADV";
        case Pos::PRON: return "PRON";
        case Pos::DET: return "DET";
        case Pos::ADP: return "ADP";
        case Pos::CONJ: return "CONJ";
        case Pos::NUM: return "NUM";
        case Pos::PART: return "PART";
        case Pos::PUNCT: return "PUNCT";
        case Pos::MODAL: return "MODAL";
        case Pos::OTHER: return "OTHER";
    }
    return "OTHER";
}

Pos parse_pos(const std::string& name) {
    static const std::unordered_map<std::string, Pos> table = {
        {"NOUN", Pos::NOUN}, {"VERB", Pos::VERB}, {"AUX", Pos::AUX},   {"ADJ", Pos::ADJ},
        {"ADV", Pos::ADV},   {"PRON", Pos::PRON}, {"DET", Pos::DET},   {"ADP", Pos::ADP},
        {"CONJ", Pos::CONJ}, {"NUM", Pos::NUM},   {"PART", Pos::PART}, {"PUNCT", Pos::PUNCT},
        {"MODAL", Pos::MODAL}, {"OTHER", Pos::OTHER},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw LexiconError("unknown POS tag: " + name);
    return it->second;
}

Lexicons load_lexicons(const std::string& dir) {
    namespace fs = std::filesystem;
    Lexicons lex;

    for (const auto& line : read_lexicon_lines((fs::path(dir) / "pos_lexicon.txt").string())) {
        std::istringstream ss(line);
        std::string word, tag;
        if (!(ss >> word >> tag)) throw LexiconError("pos_lexicon.txt: bad line: " + line);
        lex.pos_lexicon[ascii_lower(word)] = parse_pos(tag);
    }
    for (const auto& w : read_lexicon_lines((fs::path(dir) / "function_words.txt").string()))
        lex.function_words.insert(ascii_lower(w));
    for (const auto& w : read_lexicon_lines((fs::path(dir) / "participles.txt").string()))
        lex.participles.insert(ascii_lower(w));
    for (const auto& w : read_lexicon_lines((fs::path(dir) / "abbreviations.txt").string()))
        lex.abbreviations.insert(ascii_lower(w));
    return lex;
}

Dictionary load_dictionary(const std::string& wordlist_path, const std::string& allowlist_path) {
    Dictionary dict;
    for (const auto& w : read_lexicon_lines(wordlist_path)) dict.words.insert(ascii_lower(w));
    if (!allowlist_path.empty()) {
        for (const auto& w : read_lexicon_lines(allowlist_path)) dict.allowlist.insert(ascii_lower(w));
    }
    return dict;
}

}  // namespace lincue
