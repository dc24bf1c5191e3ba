#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maskmds/corpus.hpp"

namespace maskmds {

/// One sentence of a cluster, indexed within the cluster's concatenated
/// sentence list (documents in order, sentences in document order).
struct SentenceCandidate {
    std::size_t global_index = 0;
    std::string doc_id;
    std::vector<std::string> tokens;
    std::size_t word_count = 0;  // non-punctuation tokens
};

std::vector<SentenceCandidate> collect_sentences(const Cluster& cluster);

/// Sparse tf-idf vector; entries sorted by term id, L2 norm cached.
struct SparseVector {
    std::vector<std::pair<std::uint32_t, double>> entries;
    double norm = 0.0;
};

/// tf = raw term count within the sentence; idf = ln(N / (1 + df)) + 1 over
/// the cluster's sentences.
std::vector<SparseVector> tfidf_vectors(const std::vector<SentenceCandidate>& sentences);

double cosine_similarity(const SparseVector& a, const SparseVector& b);

/// Dense nonnegative weight matrix over sentences plus the row-stochastic
/// transition derived from it (dangling rows become uniform).
struct SimilarityGraph {
    std::size_t node_count = 0;
    std::vector<double> weights;     // row-major N x N
    std::vector<double> transition;  // row-major N x N, rows sum to 1

    double weight(std::size_t i, std::size_t j) const { return weights[i * node_count + j]; }
};

SimilarityGraph make_similarity_graph(std::size_t node_count, std::vector<double> weights);

struct ExtractiveConfig {
    std::size_t word_budget = 250;
    double lexrank_cosine_threshold = 0.1;
    double damping = 0.15;  // teleport fraction
    double power_iter_tol = 1e-8;
    std::size_t power_iter_max = 1000;
    double mmr_lambda = 0.5;
    std::size_t lede_k = 3;
    std::size_t source_doc_token_limit = 300;
    std::uint64_t seed = 0;
};

/// Fixed point of p = damping * uniform + (1 - damping) * T^t p, iterated
/// from uniform. The returned vector satisfies the stationarity residual
/// bound in the L-inf norm and sums to 1. Throws ConvergenceError (carrying
/// the last residual) when max_iter passes are not enough.
std::vector<double> power_iteration(const SimilarityGraph& graph, double damping, double tol,
                                    std::size_t max_iter);

struct RankedSentence {
    std::size_t global_index = 0;
    double score = 0.0;
};

/// Unit edges where tf-idf cosine reaches the threshold (no self-edges),
/// then eigenvector centrality. Rank descending, ties by global_index.
std::vector<RankedSentence> lexrank(const Cluster& cluster, const ExtractiveConfig& config);

/// Weighted graph: |shared unique word tokens| / (ln|Si| + ln|Sj|), with the
/// denominator floored at 1 when it is not positive.
std::vector<RankedSentence> textrank(const Cluster& cluster, const ExtractiveConfig& config);

/// Greedy maximal-marginal-relevance selection against the cluster tf-idf
/// centroid; sentences are appended until the word budget is reached and
/// emitted in document-position order.
std::vector<std::string> mmr(const Cluster& cluster, const ExtractiveConfig& config);

/// Takes ranked sentences until adding the next would exceed the budget (the
/// first ranked sentence is always taken) and emits them re-sorted by
/// global_index.
std::vector<std::string> assemble_summary(const std::vector<SentenceCandidate>& sentences,
                                          const std::vector<RankedSentence>& ranked,
                                          std::size_t word_budget);

/// First min(k, #sentences) sentences of each document, in document order.
std::vector<std::string> lede_k(const Cluster& cluster, std::size_t k);

/// The document the bigram strategy would mask out, truncated to the
/// source-doc token limit.
std::vector<std::string> best_overlap_source_doc(const Cluster& cluster,
                                                 std::size_t token_limit = 300);

/// Seeded per-cluster uniform document choice, truncated the same way.
std::vector<std::string> random_source_doc(const Cluster& cluster, std::uint64_t seed,
                                           std::size_t token_limit = 300);

enum class SummaryMethod { lede, lexrank, textrank, mmr, best_overlap, random_doc };

std::string to_string(SummaryMethod method);
SummaryMethod summary_method_from_string(const std::string& name);

std::vector<std::string> summarize(const Cluster& cluster, SummaryMethod method,
                                   const ExtractiveConfig& config);

}  // namespace maskmds
