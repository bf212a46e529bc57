#include "lincue/features.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "lincue/csv.hpp"
#include "lincue/io_util.hpp"
#include "lincue/log.hpp"

namespace lincue {

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = {
        "n_words",
        "n_verbs",
        "n_adjectives",
        "n_modal_verbs",
        "n_passive_voice",
        "n_clauses",
        "n_typos",
        "avg_sentence_length",
        "avg_word_length",
        "avg_np_length",
        "pausality",
        "emotiveness",
        "lexical_diversity",
        "content_diversity",
        "redundancy",
    };
    return names;
}

std::vector<double> FeatureMatrix::column(std::size_t feature) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.features[feature]);
    return out;
}

std::vector<double> FeatureMatrix::column_for_label(std::size_t feature, Label label) const {
    std::vector<double> out;
    for (const auto& r : rows)
        if (r.label == label) out.push_back(r.features[feature]);
    return out;
}

namespace {

struct TagCounts {
    int nouns = 0, verbs = 0, adjectives = 0, adverbs = 0, modals = 0;
    int function_words = 0;
    int letters = 0;
    int content_tokens = 0;
    std::unordered_set<std::string> unique_words;
    std::unordered_set<std::string> unique_content;
};

TagCounts count_tags(const AnalyzedDoc& doc) {
    TagCounts c;
    for (const auto& s : doc.sentences) {
        for (const auto& t : s.tokens) {
            if (t.pos == Pos::PUNCT) continue;
            switch (t.pos) {
                case Pos::NOUN: ++c.nouns; break;
                case Pos::VERB: ++c.verbs; break;
                case Pos::ADJ: ++c.adjectives; break;
                case Pos::ADV: ++c.adverbs; break;
                case Pos::MODAL: ++c.modals; break;
                default: break;
            }
            if (t.is_function_word) ++c.function_words;
            c.letters += t.char_len;
            c.unique_words.insert(t.lower);
            const bool content = !t.is_function_word &&
                                 (t.pos == Pos::NOUN || t.pos == Pos::VERB || t.pos == Pos::ADJ ||
                                  t.pos == Pos::ADV);
            if (content) {
                ++c.content_tokens;
                c.unique_content.insert(t.lower);
            }
        }
    }
    return c;
}

}  // namespace

double emotiveness(const AnalyzedDoc& doc) {
    const TagCounts c = count_tags(doc);
    const double denom = static_cast<double>(c.nouns + c.verbs);
    if (denom == 0.0) return 0.0;
    return static_cast<double>(c.adjectives + c.adverbs) / denom;
}

DiversityMeasures diversity_measures(const AnalyzedDoc& doc) {
    if (doc.word_count == 0) throw std::runtime_error("empty document");
    const TagCounts c = count_tags(doc);
    DiversityMeasures d;
    d.lexical = static_cast<double>(c.unique_words.size()) / static_cast<double>(doc.word_count);
    d.content = c.content_tokens == 0
                    ? 0.0
                    : static_cast<double>(c.unique_content.size()) / static_cast<double>(c.content_tokens);
    d.redundancy = static_cast<double>(c.function_words) / static_cast<double>(doc.word_count);
    return d;
}

double pausality(const AnalyzedDoc& doc) {
    if (doc.sentences.empty()) throw std::runtime_error("pausality: no sentences");
    return static_cast<double>(doc.punctuation_count) / static_cast<double>(doc.sentences.size());
}

FeatureVector extract(const AnalyzedDoc& doc) {
    const TagCounts c = count_tags(doc);
    const double n_sentences = static_cast<double>(doc.sentences.size());
    const double n_words = static_cast<double>(doc.word_count);

    int passive = 0, clauses = 0;
    double np_tokens = 0.0, np_count = 0.0;
    for (const auto& s : doc.sentences) {
        passive += s.passive_count;
        clauses += s.clause_count;
        for (const auto& span : s.np_chunks) {
            np_tokens += static_cast<double>(span.size());
            np_count += 1.0;
        }
    }

    FeatureVector f;
    f[kNWords] = n_words;
    f[kNVerbs] = c.verbs;
    f[kNAdjectives] = c.adjectives;
    f[kNModalVerbs] = c.modals;
    f[kNPassiveVoice] = passive;
    f[kNClauses] = clauses;
    f[kNTypos] = doc.typo_count;
    f[kAvgSentenceLength] = n_sentences > 0.0 ? n_words / n_sentences : 0.0;
    f[kAvgWordLength] = n_words > 0.0 ? static_cast<double>(c.letters) / n_words : 0.0;
    f[kAvgNpLength] = np_count > 0.0 ? np_tokens / np_count : 0.0;
    f[kPausality] = n_sentences > 0.0 ? static_cast<double>(doc.punctuation_count) / n_sentences : 0.0;
    f[kEmotiveness] = (c.nouns + c.verbs) > 0
                          ? static_cast<double>(c.adjectives + c.adverbs) /
                                static_cast<double>(c.nouns + c.verbs)
                          : 0.0;
    if (n_words > 0.0) {
        f[kLexicalDiversity] = static_cast<double>(c.unique_words.size()) / n_words;
        f[kContentDiversity] = c.content_tokens > 0
                                   ? static_cast<double>(c.unique_content.size()) /
                                         static_cast<double>(c.content_tokens)
                                   : 0.0;
        f[kRedundancy] = static_cast<double>(c.function_words) / n_words;
    } else {
        log_warning("extract: document has no words; diversity cues set to 0");
    }
    return f;
}

void save_feature_matrix(const FeatureMatrix& m, const std::string& path) {
    std::string out = "id,label";
    for (const auto& name : feature_names()) out += "," + name;
    out += '\n';
    char buf[32];
    for (const auto& row : m.rows) {
        out += csv::escape(row.id);
        out += ',';
        out += label_name(row.label);
        for (double v : row.features.values) {
            std::snprintf(buf, sizeof(buf), ",%.6f", v);
            out += buf;
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

FeatureMatrix load_feature_matrix(const std::string& path) {
    const auto records = csv::parse_file(path);
    if (records.empty()) throw CsvError("empty feature file: " + path);

    std::vector<std::string> expected = {"id", "label"};
    for (const auto& n : feature_names()) expected.push_back(n);
    if (records.front().fields != expected) {
        throw CsvError(path + ": unexpected feature header");
    }
    FeatureMatrix m;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != expected.size()) {
            throw CsvError(path + ": line " + std::to_string(rec.line) + ": wrong field count");
        }
        FeatureRow row;
        row.id = rec.fields[0];
        row.label = parse_label(rec.fields[1]);
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            try {
                row.features[i] = std::stod(rec.fields[2 + i]);
            } catch (const std::exception&) {
                throw CsvError(path + ": line " + std::to_string(rec.line) + ": bad float '" +
                               rec.fields[2 + i] + "'");
            }
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

FeatureMatrix extract_matrix(const Corpus& corpus, const Analyzer& analyzer) {
    FeatureMatrix m;
    m.rows.reserve(corpus.size());
    for (const auto& review : corpus.reviews) {
        FeatureRow row;
        row.id = review.id;
        row.label = review.label;
        row.features = extract(analyzer.analyze(review.text));
        m.rows.push_back(std::move(row));
    }
    return m;
}

}  // namespace lincue
