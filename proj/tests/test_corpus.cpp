#include <doctest.h>

#include <fstream>

#include "lincue/corpus.hpp"
#include "lincue/csv.hpp"

#include "test_util.hpp"

using namespace lincue;

namespace {

std::string write_temp_csv(const std::string& name, const std::string& content) {
    const std::string dir = test_util::temp_dir("corpus_" + name);
    const std::string path = dir + "/corpus.csv";
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("load_corpus basics") {
    SUBCASE("well-formed rows preserve order and parse labels case-insensitively") {
        const auto path = write_temp_csv("ok",
                                         "id,text,label,sentiment,source\n"
                                         "r1,Great food!,FAKE,positive,casa\n"
                                         "r2,\"Slow, rude service.\",real,negative,\n"
                                         "r3,Fine.,Real,,casa\n");
        const Corpus c = load_corpus(path);
        REQUIRE(c.size() == 3);
        CHECK(c.reviews[0].id == "r1");
        CHECK(c.reviews[0].label == Label::Fake);
        CHECK(c.reviews[0].sentiment == Sentiment::Positive);
        CHECK(c.reviews[1].text == "Slow, rude service.");
        CHECK(c.reviews[1].label == Label::Real);
        CHECK(c.reviews[2].sentiment == std::nullopt);
        CHECK(c.reviews[2].source == "casa");
    }
    SUBCASE("header-only file gives an empty corpus") {
        const auto path = write_temp_csv("empty", "id,text,label,sentiment,source\n");
        CHECK(load_corpus(path).size() == 0);
    }
    SUBCASE("unknown label names the token") {
        const auto path = write_temp_csv("badlabel",
                                         "id,text,label,sentiment,source\n"
                                         "r1,hello,bogus,,\n");
        CHECK_THROWS_WITH_AS(load_corpus(path),
                             "line 2: unknown label token 'bogus'", CorpusError);
    }
    SUBCASE("malformed row names the line") {
        const auto path = write_temp_csv("short",
                                         "id,text,label,sentiment,source\n"
                                         "r1,hello,fake,,\n"
                                         "r2,only-two-fields\n");
        try {
            load_corpus(path);
            FAIL("expected CorpusError");
        } catch (const CorpusError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("duplicate id rejected") {
        const auto path = write_temp_csv("dup",
                                         "id,text,label,sentiment,source\n"
                                         "r1,a,fake,,\n"
                                         "r1,b,real,,\n");
        try {
            load_corpus(path);
            FAIL("expected CorpusError");
        } catch (const CorpusError& e) {
            CHECK(std::string(e.what()).find("duplicate id 'r1'") != std::string::npos);
        }
    }
    SUBCASE("blank text rejected") {
        const auto path = write_temp_csv("blank",
                                         "id,text,label,sentiment,source\n"
                                         "r1,   ,fake,,\n");
        CHECK_THROWS_AS(load_corpus(path), CorpusError);
    }
}

TEST_CASE("class_balance") {
    Corpus c;
    CHECK(class_balance(c)[Label::Fake] == 0);
    CHECK(class_balance(c)[Label::Real] == 0);
    for (int i = 0; i < 3; ++i)
        c.reviews.push_back(Review{"f" + std::to_string(i), "x", Label::Fake, {}, ""});
    const auto counts = class_balance(c);
    CHECK(counts.at(Label::Fake) == 3);
    CHECK(counts.at(Label::Real) == 0);
}

TEST_CASE("save/load round trip") {
    Corpus c;
    c.reviews.push_back(Review{"a1", "Line with \"quotes\", commas,\nand a newline.",
                               Label::Fake, Sentiment::Negative, "casa-verde"});
    c.reviews.push_back(Review{"a2", "Plain text", Label::Real, std::nullopt, ""});
    const std::string dir = test_util::temp_dir("corpus_roundtrip");
    const std::string path = dir + "/out.csv";
    save_corpus(c, path);
    CHECK(load_corpus(path) == c);
}

TEST_CASE("bundled dataset is balanced 55/55") {
    const Corpus c = load_corpus(test_util::bundled_corpus_path());
    CHECK(c.size() == 110);
    const auto counts = class_balance(c);
    CHECK(counts.at(Label::Fake) == 55);
    CHECK(counts.at(Label::Real) == 55);
    // balanced sentiment as well
    std::size_t pos = 0, neg = 0;
    for (const auto& r : c.reviews) {
        REQUIRE(r.sentiment.has_value());
        (*r.sentiment == Sentiment::Positive ? pos : neg) += 1;
    }
    CHECK(pos == 55);
    CHECK(neg == 55);
}
