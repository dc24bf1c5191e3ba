#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "maskmds/corpus.hpp"
#include "maskmds/errors.hpp"

#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace maskmds;

namespace {

Document doc_of_tokens(const std::string& id, const std::vector<std::string>& tokens) {
    return synth::token_document(id, tokens);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("maskmds_corpus_" + name);
}

}  // namespace

TEST_CASE("tokenize splits punctuation and lowercases") {
    CHECK(tokenize("The cat sat.") == std::vector<std::string>{"the", "cat", "sat", "."});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("A a A") == std::vector<std::string>{"a", "a", "a"});
    CHECK(tokenize("well-known") == std::vector<std::string>{"well", "-", "known"});
    CHECK(tokenize("don't") == std::vector<std::string>{"don", "'", "t"});
}

TEST_CASE("tokenize honors config switches") {
    TokenizerConfig keep_case;
    keep_case.lowercase = false;
    CHECK(tokenize("The cat", keep_case) == std::vector<std::string>{"The", "cat"});

    TokenizerConfig keep_punct;
    keep_punct.punctuation_split = false;
    CHECK(tokenize("sat.", keep_punct) == std::vector<std::string>{"sat."});
}

TEST_CASE("separator token cannot come from natural text") {
    auto tokens = tokenize("story_separator_special_tag");
    TokenizerConfig config;
    for (const auto& t : tokens) CHECK(t != config.separator_token);
}

TEST_CASE("tokenize agrees with the reference tokenizer") {
    std::mt19937_64 rng(7);
    const std::vector<std::string> snippets = {
        "The cat sat.",
        "Hello, world! It's 2020-era text (with brackets).",
        "A a A",
        "  spaced\tout\ntext  ",
        "U.S. economy grew 3.2% in Q4; analysts cheered.",
    };
    for (const auto& s : snippets) {
        CHECK(tokenize(s) == oracle::reference_tokenize(s));
    }
    // random word/punctuation soup
    const std::string alphabet = "abcXYZ019 .,!?-'\"\t";
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        std::size_t len = rng() % 40;
        for (std::size_t i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
        CAPTURE(text);
        CHECK(tokenize(text) == oracle::reference_tokenize(text));
    }
}

TEST_CASE("tokenize is idempotent on its own joined output") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::string text = synth::random_text(rng, 1 + rng() % 4, 3 + rng() % 8, 40);
        auto once = tokenize(text);
        auto twice = tokenize(join_tokens(once));
        CHECK(once == twice);
    }
}

TEST_CASE("split_sentences basics") {
    CHECK(split_sentences("It rained. We left.") ==
          std::vector<std::string>{"It rained.", "We left."});
    CHECK(split_sentences("Dr. Smith arrived.") == std::vector<std::string>{"Dr. Smith arrived."});
    CHECK(split_sentences("No terminator here") == std::vector<std::string>{"No terminator here"});
    CHECK(split_sentences("") == std::vector<std::string>{});
    CHECK(split_sentences("What?! Really? Yes.") ==
          std::vector<std::string>{"What?!", "Really?", "Yes."});
    CHECK(split_sentences("He lives in the U.S. Next door.") ==
          std::vector<std::string>{"He lives in the U.S. Next door."});
    CHECK(split_sentences("It ended Jan. 5. We left.") ==
          std::vector<std::string>{"It ended Jan. 5.", "We left."});
}

TEST_CASE("split_sentences requires whitespace plus capital") {
    CHECK(split_sentences("pi is 3.14 exactly. Nobody argues.") ==
          std::vector<std::string>{"pi is 3.14 exactly.", "Nobody argues."});
    CHECK(split_sentences("version 2. then lowercase") ==
          std::vector<std::string>{"version 2. then lowercase"});
}

TEST_CASE("split_sentences concatenation reproduces input modulo whitespace") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::string text = synth::random_text(rng, 1 + rng() % 5, 2 + rng() % 7, 30);
        auto sentences = split_sentences(text);
        std::string joined;
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            if (i) joined += ' ';
            joined += sentences[i];
        }
        CHECK(tokenize(joined) == tokenize(text));
    }
}

TEST_CASE("make_document sentence spans cover all tokens in order") {
    Document doc = make_document("d", "It rained hard. We left early. Dr. Smith stayed.");
    REQUIRE(doc.sentences.size() == 3);
    std::size_t cursor = 0;
    for (const auto& s : doc.sentences) {
        CHECK(s.token_begin == cursor);
        CHECK(s.token_end > s.token_begin);
        cursor = s.token_end;
    }
    CHECK(cursor == doc.tokens.size());
    CHECK(tokenize(doc.raw_text) == doc.tokens);

    auto first = sentence_tokens(doc, 0);
    CHECK(std::vector<std::string>(first.begin(), first.end()) ==
          std::vector<std::string>{"it", "rained", "hard", "."});
}

TEST_CASE("build_mega_document splits the budget evenly when documents are long") {
    std::mt19937_64 rng(5);
    std::vector<Document> docs;
    for (int d = 0; d < 5; ++d) {
        docs.push_back(doc_of_tokens("d" + std::to_string(d), synth::random_tokens(rng, 120, 50)));
    }
    MegaDocument mega = build_mega_document(docs, 500);
    CHECK(mega.content_token_count == 500);
    REQUIRE(mega.provenance.size() == 5);
    for (const auto& span : mega.provenance) {
        CHECK(span.token_end - span.token_begin == 100);
    }
    // exactly one separator between consecutive segments, none at the ends
    TokenizerConfig config;
    CHECK(mega.tokens.size() == 504);
    CHECK(mega.tokens.front() != config.separator_token);
    CHECK(mega.tokens.back() != config.separator_token);
    std::size_t separators = 0;
    for (const auto& t : mega.tokens) separators += t == config.separator_token;
    CHECK(separators == 4);
}

TEST_CASE("build_mega_document redistributes leftover budget to longer documents") {
    std::mt19937_64 rng(6);
    std::vector<Document> docs;
    docs.push_back(doc_of_tokens("short", synth::random_tokens(rng, 100, 50)));
    docs.push_back(doc_of_tokens("long", synth::random_tokens(rng, 600, 50)));
    MegaDocument mega = build_mega_document(docs, 500);
    CHECK(mega.content_token_count == 500);
    REQUIRE(mega.provenance.size() == 2);
    CHECK(mega.provenance[0].doc_id == "short");
    CHECK(mega.provenance[0].token_end - mega.provenance[0].token_begin == 100);
    CHECK(mega.provenance[1].token_end - mega.provenance[1].token_begin == 400);
}

TEST_CASE("build_mega_document with a single short document") {
    std::mt19937_64 rng(8);
    std::vector<Document> docs{doc_of_tokens("only", synth::random_tokens(rng, 40, 20))};
    MegaDocument mega = build_mega_document(docs, 500);
    CHECK(mega.content_token_count == 40);
    CHECK(mega.tokens.size() == 40);  // no separators
    CHECK(mega.tokens == docs[0].tokens);
}

TEST_CASE("build_mega_document rejects an empty document list") {
    CHECK_THROWS_AS(build_mega_document({}, 500), DataError);
}

TEST_CASE("mega-document content equals min(budget, total) on random clusters") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t m = 1 + rng() % 6;
        std::vector<Document> docs;
        std::size_t total = 0;
        for (std::size_t d = 0; d < m; ++d) {
            std::size_t len = rng() % 250;
            total += len;
            docs.push_back(doc_of_tokens("d" + std::to_string(d),
                                         synth::random_tokens(rng, len, 30)));
        }
        std::size_t budget = 1 + rng() % 600;
        MegaDocument mega = build_mega_document(docs, budget);
        CHECK(mega.content_token_count == std::min(budget, total));

        // provenance partitions the non-separator tokens
        std::size_t covered = 0;
        for (const auto& span : mega.provenance) covered += span.token_end - span.token_begin;
        CHECK(covered == mega.content_token_count);
    }
}

TEST_CASE("mega-document quota bounds hold when every document is long") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t m = 1 + rng() % 8;
        std::vector<Document> docs;
        for (std::size_t d = 0; d < m; ++d) {
            docs.push_back(doc_of_tokens("d" + std::to_string(d),
                                         synth::random_tokens(rng, 520 + rng() % 100, 30)));
        }
        MegaDocument mega = build_mega_document(docs, 500);
        CHECK(mega.content_token_count == 500);
        std::size_t quota = 500 / m;
        for (const auto& span : mega.provenance) {
            std::size_t took = span.token_end - span.token_begin;
            CHECK(took >= quota);
            CHECK(took <= quota + 1);
        }
    }
}

TEST_CASE("truncate_words basics") {
    std::mt19937_64 rng(12);
    auto words300 = synth::random_tokens(rng, 300, 40);
    auto first100 = truncate_words(words300, 100);
    CHECK(first100.size() == 100);
    CHECK(std::equal(first100.begin(), first100.end(), words300.begin()));

    CHECK(truncate_words(words300, 0).empty());

    auto words50 = synth::random_tokens(rng, 50, 40);
    CHECK(truncate_words(words50, 100) == words50);
}

TEST_CASE("truncate_words keeps interior punctuation and drops trailing punctuation") {
    std::vector<std::string> tokens{"a", ",", "b", ".", "c", "."};
    CHECK(truncate_words(tokens, 2) == std::vector<std::string>{"a", ",", "b"});
    CHECK(truncate_words(tokens, 3) == std::vector<std::string>{"a", ",", "b", ".", "c"});
}

TEST_CASE("truncate_words composes as a min of limits") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> tokens;
        std::size_t len = rng() % 60;
        for (std::size_t i = 0; i < len; ++i) {
            if (rng() % 4 == 0) {
                tokens.emplace_back(1, ".,;!"[rng() % 4]);
            } else {
                tokens.push_back(synth::vocab_word(rng() % 10));
            }
        }
        std::size_t a = rng() % 30;
        std::size_t b = rng() % 30;
        auto composed = truncate_words(truncate_words(tokens, a), b);
        auto direct = truncate_words(tokens, std::min(a, b));
        CHECK(composed == direct);
    }
}

TEST_CASE("load_corpus round-trips a well-formed line") {
    auto path = temp_file("roundtrip.jsonl");
    {
        std::ofstream out(path);
        out << R"({"cluster_id": "c1", "documents": [{"doc_id": "a", "text": "One doc. Here."}, )"
            << R"({"doc_id": "b", "text": "Two docs."}], "summary": "Short summary."})" << "\n";
    }
    Corpus corpus = load_corpus(path.string(), "train");
    CHECK(corpus.split_name == "train");
    REQUIRE(corpus.clusters.size() == 1);
    const Cluster& c = corpus.clusters[0];
    CHECK(c.cluster_id == "c1");
    REQUIRE(c.documents.size() == 2);
    CHECK(c.documents[0].doc_id == "a");
    CHECK(c.documents[0].tokens == tokenize("One doc. Here."));
    CHECK(c.documents[0].sentences.size() == 2);
    REQUIRE(c.gold_summary.has_value());
    CHECK(*c.gold_summary == "Short summary.");
    std::filesystem::remove(path);
}

TEST_CASE("load_corpus on an empty file yields an empty corpus") {
    auto path = temp_file("empty.jsonl");
    std::ofstream(path).close();
    Corpus corpus = load_corpus(path.string(), "test");
    CHECK(corpus.clusters.empty());
    std::filesystem::remove(path);
}

TEST_CASE("load_corpus names the line of a schema violation") {
    auto path = temp_file("bad.jsonl");
    {
        std::ofstream out(path);
        out << R"({"cluster_id": "c1"})" << "\n";
    }
    CHECK_THROWS_WITH_AS(load_corpus(path.string(), "train"),
                         "line 1: missing or non-array field 'documents'", DataError);
    std::filesystem::remove(path);
}

TEST_CASE("load_corpus rejects duplicate cluster ids") {
    auto path = temp_file("dup.jsonl");
    {
        std::ofstream out(path);
        out << R"({"cluster_id": "c1", "documents": [{"doc_id": "a", "text": "x"}], "summary": null})"
            << "\n"
            << R"({"cluster_id": "c1", "documents": [{"doc_id": "b", "text": "y"}], "summary": null})"
            << "\n";
    }
    CHECK_THROWS_AS(load_corpus(path.string(), "train"), DataError);
    std::filesystem::remove(path);
}

TEST_CASE("save_corpus then load_corpus preserves content") {
    std::mt19937_64 rng(21);
    Corpus corpus = synth::random_text_corpus(rng, 8, 2, 4, 3, 40);
    auto path = temp_file("save.jsonl");
    save_corpus(corpus, path.string());
    Corpus loaded = load_corpus(path.string(), corpus.split_name);
    REQUIRE(loaded.clusters.size() == corpus.clusters.size());
    for (std::size_t i = 0; i < corpus.clusters.size(); ++i) {
        CHECK(loaded.clusters[i].cluster_id == corpus.clusters[i].cluster_id);
        CHECK(loaded.clusters[i].gold_summary == corpus.clusters[i].gold_summary);
        REQUIRE(loaded.clusters[i].documents.size() == corpus.clusters[i].documents.size());
        for (std::size_t d = 0; d < corpus.clusters[i].documents.size(); ++d) {
            CHECK(loaded.clusters[i].documents[d].raw_text ==
                  corpus.clusters[i].documents[d].raw_text);
            CHECK(loaded.clusters[i].documents[d].tokens ==
                  corpus.clusters[i].documents[d].tokens);
        }
    }
    std::filesystem::remove(path);
}
