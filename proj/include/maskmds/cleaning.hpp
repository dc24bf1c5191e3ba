#pragma once

#include <cstddef>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "maskmds/corpus.hpp"

namespace maskmds {

struct CleaningConfig {
    std::size_t min_chars = 100;
    std::vector<std::string> tweet_url_patterns;  // empty = use defaults
    std::size_t dedup_ngram_order = 4;
    double dedup_jaccard_threshold = 0.5;
    std::size_t repeat_ngram_order = 4;
    double repeat_overlap_threshold = 0.8;
    std::vector<std::string> metadata_patterns;  // empty = use defaults
    std::size_t min_cluster_size_after = 2;
    TokenizerConfig tokenizer;
};

/// Default patterns, identical to the shipped data/cleaning_patterns.json.
const std::vector<std::string>& default_tweet_url_patterns();
const std::vector<std::string>& default_metadata_patterns();

/// Patterns compiled once per run; regex matching against a const pattern set
/// is safe across threads.
struct CompiledPatterns {
    std::vector<std::regex> tweet;
    std::vector<std::regex> metadata;
};

CompiledPatterns compile_patterns(const CleaningConfig& config);

struct CleaningReport {
    std::string split_name;
    std::size_t clusters_before = 0;
    std::size_t clusters_after = 0;
    std::size_t docs_removed_length = 0;
    std::size_t docs_removed_tweet = 0;
    std::size_t docs_removed_dedup = 0;
    std::size_t sentences_removed_repeats = 0;
    std::size_t metadata_segments_removed = 0;
    std::size_t clusters_dropped_min_size = 0;
};

/// True when the document should be dropped: raw_text shorter than min_chars
/// (counted in Unicode code points; "less than" is strict).
bool length_filter(const Document& doc, std::size_t min_chars);

/// True when the document should be dropped: raw_text matches a tweet-link
/// pattern.
bool tweet_filter(const Document& doc, const std::vector<std::regex>& patterns);

/// Removes matched metadata spans line by line (datelines, bylines,
/// copyright lines, photo credits, share boilerplate); lines left blank are
/// dropped. Returns the rebuilt document.
Document strip_metadata(const Document& doc, const std::vector<std::regex>& patterns,
                        const TokenizerConfig& tokenizer = {},
                        std::size_t* removed_segments = nullptr);

/// Scans sentences in order and deletes one when the fraction of its n-grams
/// already seen in retained earlier sentences reaches the threshold.
/// Sentences too short for an n-gram are deleted only on an exact token
/// match with a retained sentence.
Document remove_repeated_phrases(const Document& doc, const CleaningConfig& config,
                                 std::size_t* removed_sentences = nullptr);

/// Drops the later of any document pair whose n-gram-set Jaccard similarity
/// reaches the threshold. Original order is preserved.
Cluster dedup_syndicated(const Cluster& cluster, const CleaningConfig& config,
                         std::size_t* removed_docs = nullptr);

/// Full pipeline per document/cluster: strip_metadata, remove_repeated_phrases,
/// length_filter, tweet_filter, dedup_syndicated; clusters falling under
/// min_cluster_size_after are dropped. The report is exact and identical for
/// any thread count.
std::pair<Corpus, CleaningReport> clean_corpus(const Corpus& corpus, const CleaningConfig& config,
                                               unsigned threads = 1);

}  // namespace maskmds
