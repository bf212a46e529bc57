#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lincue {

struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Label { Fake, Real };
enum class Sentiment { Positive, Negative };

const char* label_name(Label l);          // "fake" / "real"
Label parse_label(const std::string& token);  // case-insensitive; throws naming the token

struct Review {
    std::string id;
    std::string text;
    Label label = Label::Real;
    std::optional<Sentiment> sentiment;
    std::string source;  // empty when absent

    bool operator==(const Review&) const = default;
};

struct Corpus {
    std::vector<Review> reviews;

    std::size_t size() const { return reviews.size(); }
    bool operator==(const Corpus&) const = default;
};

// Canonical CSV: header `id,text,label,sentiment,source`. Row order is
// preserved; errors carry the offending line number or token.
Corpus load_corpus(const std::string& path);
void save_corpus(const Corpus& corpus, const std::string& path);

std::map<Label, std::size_t> class_balance(const Corpus& corpus);

}  // namespace lincue
