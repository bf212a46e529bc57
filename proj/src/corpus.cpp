#include "lincue/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_set>

#include "lincue/csv.hpp"
#include "lincue/io_util.hpp"

namespace lincue {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::optional<Sentiment> parse_sentiment(const std::string& token, std::size_t line) {
    if (token.empty()) return std::nullopt;
    const std::string t = to_lower(token);
    if (t == "positive") return Sentiment::Positive;
    if (t == "negative") return Sentiment::Negative;
    throw CorpusError("line " + std::to_string(line) + ": unknown sentiment token '" + token + "'");
}

}  // namespace

const char* label_name(Label l) { return l == Label::Fake ? "fake" : "real"; }

Label parse_label(const std::string& token) {
    const std::string t = to_lower(token);
    if (t == "fake") return Label::Fake;
    if (t == "real") return Label::Real;
    throw CorpusError("unknown label token '" + token + "'");
}

Corpus load_corpus(const std::string& path) {
    std::vector<csv::Record> records;
    try {
        records = csv::parse_file(path);
    } catch (const CsvError& e) {
        throw CorpusError(std::string("malformed CSV: ") + e.what());
    }
    if (records.empty()) throw CorpusError("empty file: expected header id,text,label,sentiment,source");

    const std::vector<std::string> expected = {"id", "text", "label", "sentiment", "source"};
    if (records.front().fields != expected) {
        throw CorpusError("line " + std::to_string(records.front().line) +
                          ": bad header, expected id,text,label,sentiment,source");
    }

    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != 5) {
            throw CorpusError("line " + std::to_string(rec.line) + ": expected 5 fields, got " +
                              std::to_string(rec.fields.size()));
        }
        Review review;
        review.id = rec.fields[0];
        review.text = rec.fields[1];
        if (review.id.empty()) throw CorpusError("line " + std::to_string(rec.line) + ": empty id");
        if (is_blank(review.text)) throw CorpusError("line " + std::to_string(rec.line) + ": empty review text");
        try {
            review.label = parse_label(rec.fields[2]);
        } catch (const CorpusError& e) {
            throw CorpusError("line " + std::to_string(rec.line) + ": " + e.what());
        }
        review.sentiment = parse_sentiment(rec.fields[3], rec.line);
        review.source = rec.fields[4];
        if (!seen_ids.insert(review.id).second) {
            throw CorpusError("line " + std::to_string(rec.line) + ": duplicate id '" + review.id + "'");
        }
        corpus.reviews.push_back(std::move(review));
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::string out = "id,text,label,sentiment,source\n";
    for (const auto& r : corpus.reviews) {
        std::string sentiment;
        if (r.sentiment) sentiment = *r.sentiment == Sentiment::Positive ? "positive" : "negative";
        out += csv::join_row({r.id, r.text, label_name(r.label), sentiment, r.source});
    }
    write_file_atomic(path, out);
}

std::map<Label, std::size_t> class_balance(const Corpus& corpus) {
    std::map<Label, std::size_t> counts{{Label::Fake, 0}, {Label::Real, 0}};
    for (const auto& r : corpus.reviews) ++counts[r.label];
    return counts;
}

}  // namespace lincue
