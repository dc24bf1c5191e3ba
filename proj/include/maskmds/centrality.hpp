#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "maskmds/corpus.hpp"

namespace maskmds {

/// Contiguous n-token windows with multiplicity. Keys are tokens joined with
/// an unprintable separator; a sequence shorter than n yields an empty set.
struct NgramMultiset {
    std::unordered_map<std::string, int> counts;
    std::size_t total = 0;
};

NgramMultiset extract_ngrams(std::span<const std::string> tokens, std::size_t n);

struct OverlapConfig {
    std::size_t ngram_order = 2;  // 1 = unigram, 2 = bigram
    // Clipped counting (per type, min of the two sides) mirrors ROUGE and
    // keeps repeated boilerplate from inflating scores. The unclipped
    // variant counts every candidate n-gram whose type occurs in the rest.
    bool clipped = true;
    // candidate: score = matched / |candidate n-grams| (fraction of the
    // candidate covered by the rest). rest: divide by |rest n-grams| instead.
    enum class Normalization { candidate, rest };
    Normalization normalization = Normalization::candidate;
};

struct RecallResult {
    double score = 0.0;
    // Set when the candidate yields no n-grams; such documents score 0 and
    // are never picked as masks.
    bool degenerate = false;
};

/// N-gram recall of `candidate` against `rest` (both plain token sequences;
/// `rest` is typically the concatenation of the cluster's other documents).
RecallResult ngram_recall(std::span<const std::string> candidate,
                          std::span<const std::string> rest, const OverlapConfig& config);

enum class MaskStrategy { unigram, bigram, random };

std::string to_string(MaskStrategy strategy);
MaskStrategy mask_strategy_from_string(const std::string& name);

struct MaskSelection {
    std::string cluster_id;
    std::string masked_doc_id;
    std::size_t masked_doc_index = 0;
    std::optional<double> score;  // absent for the random strategy
    MaskStrategy strategy = MaskStrategy::bigram;
};

/// Scores every document against the in-order concatenation of the others
/// (full, untruncated token sequences) and returns the argmax. Ties break to
/// the lowest document index. Throws DataError when M < 2 or when every
/// candidate is degenerate.
MaskSelection select_mask(const Cluster& cluster, const OverlapConfig& config);

/// Uniform choice derived deterministically from (seed, cluster_id), so the
/// result does not depend on processing order or thread count.
MaskSelection select_random_mask(const Cluster& cluster, std::uint64_t seed);

/// Retains exactly the clusters with at least min_size documents.
Corpus filter_min_cluster_size(const Corpus& corpus, std::size_t min_size);

struct TrainingPair {
    std::string cluster_id;
    std::string masked_doc_id;
    MegaDocument input;               // mega-document over the unmasked documents
    std::vector<std::string> target;  // masked document tokens, length-capped
    std::optional<double> score;
};

struct PairExportConfig {
    MaskStrategy strategy = MaskStrategy::bigram;
    std::uint64_t seed = 0;
    std::size_t budget = 500;
    std::size_t target_limit = 300;
    TokenizerConfig tokenizer;
};

/// One pair per cluster: input mega-document from the M-1 unmasked documents,
/// target = masked document truncated to target_limit tokens. Gold summaries
/// are never consulted. Selection errors carry the cluster_id.
std::vector<TrainingPair> build_training_pairs(const Corpus& corpus,
                                               const PairExportConfig& config,
                                               unsigned threads = 1);

}  // namespace maskmds
