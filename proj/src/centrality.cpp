#include "maskmds/centrality.hpp"

#include <algorithm>

#include "maskmds/errors.hpp"
#include "maskmds/hashing.hpp"
#include "maskmds/parallel.hpp"

namespace maskmds {

namespace {

constexpr char kNgramSep = '\x1f';

std::string make_key(const std::string* const* window, std::size_t n) {
    std::string key;
    std::size_t len = n - 1;
    for (std::size_t i = 0; i < n; ++i) len += window[i]->size();
    key.reserve(len);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) key.push_back(kNgramSep);
        key += *window[i];
    }
    return key;
}

/// Calls fn(key) for every n-gram of the virtual concatenation of parts, in
/// order, including windows that span part boundaries.
template <typename Fn>
void for_each_concat_ngram(const std::vector<std::span<const std::string>>& parts, std::size_t n,
                           Fn&& fn) {
    std::vector<const std::string*> flat;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    if (total < n) return;
    flat.reserve(total);
    for (const auto& p : parts) {
        for (const auto& tok : p) flat.push_back(&tok);
    }
    for (std::size_t i = 0; i + n <= flat.size(); ++i) {
        fn(make_key(flat.data() + i, n));
    }
}

RecallResult recall_against_parts(std::span<const std::string> candidate,
                                  const std::vector<std::span<const std::string>>& rest_parts,
                                  const OverlapConfig& config) {
    const std::size_t n = config.ngram_order;
    if (n == 0) throw std::invalid_argument("ngram_order must be >= 1");

    NgramMultiset cand = extract_ngrams(candidate, n);
    if (cand.total == 0) {
        return {0.0, true};
    }

    std::size_t rest_total = 0;
    double matched = 0.0;
    if (config.clipped) {
        // Walk the rest once, consuming candidate counts; the sum of consumed
        // instances equals sum over types of min(count_cand, count_rest).
        auto remaining = cand.counts;
        std::size_t consumed = 0;
        for_each_concat_ngram(rest_parts, n, [&](std::string key) {
            ++rest_total;
            auto it = remaining.find(key);
            if (it != remaining.end() && it->second > 0) {
                --it->second;
                ++consumed;
            }
        });
        matched = static_cast<double>(consumed);
    } else {
        std::unordered_map<std::string, int> seen;
        for_each_concat_ngram(rest_parts, n, [&](std::string key) {
            ++rest_total;
            auto it = cand.counts.find(key);
            if (it != cand.counts.end()) seen.emplace(std::move(key), 1);
        });
        double m = 0.0;
        for (const auto& [key, present] : seen) {
            (void)present;
            m += cand.counts.at(key);
        }
        matched = m;
    }

    double denom = config.normalization == OverlapConfig::Normalization::candidate
                       ? static_cast<double>(cand.total)
                       : static_cast<double>(rest_total);
    if (denom == 0.0) {
        return {0.0, false};
    }
    return {matched / denom, false};
}

}  // namespace

NgramMultiset extract_ngrams(std::span<const std::string> tokens, std::size_t n) {
    if (n == 0) throw std::invalid_argument("ngram_order must be >= 1");
    NgramMultiset out;
    if (tokens.size() < n) return out;
    std::vector<const std::string*> window(n);
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        for (std::size_t k = 0; k < n; ++k) window[k] = &tokens[i + k];
        ++out.counts[make_key(window.data(), n)];
        ++out.total;
    }
    return out;
}

RecallResult ngram_recall(std::span<const std::string> candidate,
                          std::span<const std::string> rest, const OverlapConfig& config) {
    return recall_against_parts(candidate, {rest}, config);
}

std::string to_string(MaskStrategy strategy) {
    switch (strategy) {
        case MaskStrategy::unigram: return "unigram";
        case MaskStrategy::bigram: return "bigram";
        case MaskStrategy::random: return "random";
    }
    return "bigram";
}

MaskStrategy mask_strategy_from_string(const std::string& name) {
    if (name == "unigram") return MaskStrategy::unigram;
    if (name == "bigram") return MaskStrategy::bigram;
    if (name == "random") return MaskStrategy::random;
    throw std::invalid_argument("unknown mask strategy: " + name);
}

MaskSelection select_mask(const Cluster& cluster, const OverlapConfig& config) {
    const std::size_t m = cluster.documents.size();
    if (m < 2) {
        throw DataError("cluster '" + cluster.cluster_id + "': mask selection needs at least 2 documents, got " +
                        std::to_string(m));
    }

    std::optional<std::size_t> best;
    double best_score = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::span<const std::string>> rest;
        rest.reserve(m - 1);
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i) rest.emplace_back(cluster.documents[j].tokens);
        }
        RecallResult r = recall_against_parts(cluster.documents[i].tokens, rest, config);
        if (r.degenerate) continue;
        if (r.score > best_score) {
            best_score = r.score;
            best = i;
        }
    }
    if (!best) {
        throw DataError("cluster '" + cluster.cluster_id +
                        "': every document is degenerate (no n-grams of order " +
                        std::to_string(config.ngram_order) + ")");
    }

    MaskSelection sel;
    sel.cluster_id = cluster.cluster_id;
    sel.masked_doc_index = *best;
    sel.masked_doc_id = cluster.documents[*best].doc_id;
    sel.score = best_score;
    sel.strategy = config.ngram_order == 1 ? MaskStrategy::unigram : MaskStrategy::bigram;
    return sel;
}

MaskSelection select_random_mask(const Cluster& cluster, std::uint64_t seed) {
    const std::size_t m = cluster.documents.size();
    if (m < 2) {
        throw DataError("cluster '" + cluster.cluster_id + "': mask selection needs at least 2 documents, got " +
                        std::to_string(m));
    }
    std::size_t index = static_cast<std::size_t>(seeded_hash(seed, cluster.cluster_id) % m);

    MaskSelection sel;
    sel.cluster_id = cluster.cluster_id;
    sel.masked_doc_index = index;
    sel.masked_doc_id = cluster.documents[index].doc_id;
    sel.strategy = MaskStrategy::random;
    return sel;
}

Corpus filter_min_cluster_size(const Corpus& corpus, std::size_t min_size) {
    if (min_size < 2) throw std::invalid_argument("min_size must be >= 2");
    Corpus out;
    out.split_name = corpus.split_name;
    for (const Cluster& c : corpus.clusters) {
        if (c.documents.size() >= min_size) out.clusters.push_back(c);
    }
    return out;
}

std::vector<TrainingPair> build_training_pairs(const Corpus& corpus,
                                               const PairExportConfig& config, unsigned threads) {
    std::vector<TrainingPair> pairs(corpus.clusters.size());
    OverlapConfig overlap;
    overlap.ngram_order = config.strategy == MaskStrategy::unigram ? 1 : 2;

    parallel_for(corpus.clusters.size(), threads, [&](std::size_t ci) {
        const Cluster& cluster = corpus.clusters[ci];
        MaskSelection sel = config.strategy == MaskStrategy::random
                                ? select_random_mask(cluster, config.seed)
                                : select_mask(cluster, overlap);

        std::vector<Document> unmasked;
        unmasked.reserve(cluster.documents.size() - 1);
        for (std::size_t i = 0; i < cluster.documents.size(); ++i) {
            if (i != sel.masked_doc_index) unmasked.push_back(cluster.documents[i]);
        }

        TrainingPair pair;
        pair.cluster_id = cluster.cluster_id;
        pair.masked_doc_id = sel.masked_doc_id;
        pair.input = build_mega_document(unmasked, config.budget, config.tokenizer);
        pair.target =
            truncate_tokens(cluster.documents[sel.masked_doc_index].tokens, config.target_limit);
        pair.score = sel.score;
        pairs[ci] = std::move(pair);
    });
    return pairs;
}

}  // namespace maskmds
