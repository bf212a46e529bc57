#pragma once

#include <array>
#include <string>
#include <vector>

#include "lincue/corpus.hpp"
#include "lincue/lingpipe.hpp"

namespace lincue {

// Fixed cue order; every feature column and report row follows it.
enum FeatureId : std::size_t {
    kNWords = 0,
    kNVerbs,
    kNAdjectives,
    kNModalVerbs,
    kNPassiveVoice,
    kNClauses,
    kNTypos,
    kAvgSentenceLength,
    kAvgWordLength,
    kAvgNpLength,
    kPausality,
    kEmotiveness,
    kLexicalDiversity,
    kContentDiversity,
    kRedundancy,
    kFeatureCount,
};

const std::array<std::string, kFeatureCount>& feature_names();

struct FeatureVector {
    std::array<double, kFeatureCount> values{};

    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
};

struct FeatureRow {
    std::string id;
    FeatureVector features;
    Label label = Label::Real;
};

struct FeatureMatrix {
    std::vector<FeatureRow> rows;

    std::size_t size() const { return rows.size(); }
    std::vector<double> column(std::size_t feature) const;
    std::vector<double> column_for_label(std::size_t feature, Label label) const;
};

// Cue extraction. All 15 values are finite and >= 0; degenerate denominators
// yield 0 with a warning.
FeatureVector extract(const AnalyzedDoc& doc);

double emotiveness(const AnalyzedDoc& doc);  // (#ADJ+#ADV)/(#NOUN+#VERB), 0 on empty denominator

struct DiversityMeasures {
    double lexical = 0.0;
    double content = 0.0;
    double redundancy = 0.0;
};
// Throws StatsError-style runtime_error("empty document") when word_count == 0.
DiversityMeasures diversity_measures(const AnalyzedDoc& doc);

double pausality(const AnalyzedDoc& doc);  // punctuation marks per sentence

// features.csv: header `id,label,<15 names>`, floats with 6 decimals.
void save_feature_matrix(const FeatureMatrix& m, const std::string& path);
FeatureMatrix load_feature_matrix(const std::string& path);

FeatureMatrix extract_matrix(const Corpus& corpus, const Analyzer& analyzer);

}  // namespace lincue
