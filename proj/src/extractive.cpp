#include "maskmds/extractive.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "maskmds/centrality.hpp"
#include "maskmds/errors.hpp"

namespace maskmds {

namespace {

std::vector<RankedSentence> rank_by_score(const std::vector<double>& scores) {
    std::vector<RankedSentence> ranked(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) ranked[i] = {i, scores[i]};
    std::sort(ranked.begin(), ranked.end(), [](const RankedSentence& a, const RankedSentence& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.global_index < b.global_index;
    });
    return ranked;
}

std::vector<double> stationary_scores(const std::vector<SentenceCandidate>& sentences,
                                      std::vector<double> weights,
                                      const ExtractiveConfig& config) {
    SimilarityGraph graph = make_similarity_graph(sentences.size(), std::move(weights));
    return power_iteration(graph, config.damping, config.power_iter_tol, config.power_iter_max);
}

void require_sentences(const Cluster& cluster, const std::vector<SentenceCandidate>& sentences) {
    if (sentences.empty()) {
        throw DataError("cluster '" + cluster.cluster_id + "' has no sentences");
    }
}

}  // namespace

std::vector<SentenceCandidate> collect_sentences(const Cluster& cluster) {
    std::vector<SentenceCandidate> out;
    std::size_t index = 0;
    for (const Document& doc : cluster.documents) {
        for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
            auto tokens = sentence_tokens(doc, si);
            SentenceCandidate cand;
            cand.global_index = index++;
            cand.doc_id = doc.doc_id;
            cand.tokens.assign(tokens.begin(), tokens.end());
            cand.word_count = count_words(tokens);
            out.push_back(std::move(cand));
        }
    }
    return out;
}

std::vector<SparseVector> tfidf_vectors(const std::vector<SentenceCandidate>& sentences) {
    const std::size_t n_sent = sentences.size();
    std::unordered_map<std::string, std::uint32_t> vocab;
    std::vector<std::uint32_t> df;

    std::vector<std::unordered_map<std::uint32_t, int>> tf(n_sent);
    for (std::size_t si = 0; si < n_sent; ++si) {
        for (const std::string& tok : sentences[si].tokens) {
            auto [it, inserted] = vocab.emplace(tok, static_cast<std::uint32_t>(vocab.size()));
            if (inserted) df.push_back(0);
            auto [tf_it, first_in_sentence] = tf[si].emplace(it->second, 0);
            if (first_in_sentence) ++df[it->second];
            ++tf_it->second;
        }
    }

    std::vector<double> idf(df.size());
    for (std::size_t t = 0; t < df.size(); ++t) {
        idf[t] = std::log(static_cast<double>(n_sent) / (1.0 + static_cast<double>(df[t]))) + 1.0;
    }

    std::vector<SparseVector> vectors(n_sent);
    for (std::size_t si = 0; si < n_sent; ++si) {
        SparseVector& v = vectors[si];
        v.entries.reserve(tf[si].size());
        for (const auto& [term, count] : tf[si]) {
            v.entries.emplace_back(term, static_cast<double>(count) * idf[term]);
        }
        std::sort(v.entries.begin(), v.entries.end());
        double sq = 0.0;
        for (const auto& [term, w] : v.entries) {
            (void)term;
            sq += w * w;
        }
        v.norm = std::sqrt(sq);
    }
    return vectors;
}

double cosine_similarity(const SparseVector& a, const SparseVector& b) {
    if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        if (a.entries[i].first < b.entries[j].first) {
            ++i;
        } else if (a.entries[i].first > b.entries[j].first) {
            ++j;
        } else {
            dot += a.entries[i].second * b.entries[j].second;
            ++i;
            ++j;
        }
    }
    return dot / (a.norm * b.norm);
}

SimilarityGraph make_similarity_graph(std::size_t node_count, std::vector<double> weights) {
    if (weights.size() != node_count * node_count) {
        throw std::invalid_argument("weight matrix size does not match node count");
    }
    SimilarityGraph graph;
    graph.node_count = node_count;
    graph.weights = std::move(weights);
    graph.transition.assign(node_count * node_count, 0.0);
    for (std::size_t i = 0; i < node_count; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < node_count; ++j) row_sum += graph.weights[i * node_count + j];
        if (row_sum > 0.0) {
            for (std::size_t j = 0; j < node_count; ++j) {
                graph.transition[i * node_count + j] = graph.weights[i * node_count + j] / row_sum;
            }
        } else {
            double uniform = 1.0 / static_cast<double>(node_count);
            for (std::size_t j = 0; j < node_count; ++j) {
                graph.transition[i * node_count + j] = uniform;
            }
        }
    }
    return graph;
}

std::vector<double> power_iteration(const SimilarityGraph& graph, double damping, double tol,
                                    std::size_t max_iter) {
    const std::size_t n = graph.node_count;
    if (n == 0) throw std::invalid_argument("power_iteration on empty graph");
    if (damping <= 0.0 || damping >= 1.0) {
        throw std::invalid_argument("damping must lie in (0, 1)");
    }

    std::vector<double> p(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    const double teleport = damping / static_cast<double>(n);

    double residual = 0.0;
    for (std::size_t iter = 0; iter <= max_iter; ++iter) {
        std::fill(next.begin(), next.end(), teleport);
        for (std::size_t j = 0; j < n; ++j) {
            const double pj = (1.0 - damping) * p[j];
            if (pj == 0.0) continue;
            const double* row = graph.transition.data() + j * n;
            for (std::size_t i = 0; i < n; ++i) next[i] += pj * row[i];
        }
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(next[i] - p[i]));
        if (residual < tol) {
            // p itself satisfies ||p - F(p)||_inf = residual < tol.
            double sum = 0.0;
            for (double x : p) sum += x;
            for (double& x : p) x /= sum;
            return p;
        }
        std::swap(p, next);
    }
    throw ConvergenceError("power iteration did not converge within " + std::to_string(max_iter) +
                               " iterations (last residual " + std::to_string(residual) + ")",
                           residual, max_iter);
}

std::vector<RankedSentence> lexrank(const Cluster& cluster, const ExtractiveConfig& config) {
    std::vector<SentenceCandidate> sentences = collect_sentences(cluster);
    require_sentences(cluster, sentences);
    const std::size_t n = sentences.size();
    std::vector<SparseVector> vectors = tfidf_vectors(sentences);

    std::vector<double> weights(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (cosine_similarity(vectors[i], vectors[j]) >= config.lexrank_cosine_threshold) {
                weights[i * n + j] = 1.0;
                weights[j * n + i] = 1.0;
            }
        }
    }
    return rank_by_score(stationary_scores(sentences, std::move(weights), config));
}

std::vector<RankedSentence> textrank(const Cluster& cluster, const ExtractiveConfig& config) {
    std::vector<SentenceCandidate> sentences = collect_sentences(cluster);
    require_sentences(cluster, sentences);
    const std::size_t n = sentences.size();

    std::vector<std::unordered_set<std::string>> word_sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const std::string& tok : sentences[i].tokens) {
            if (is_word_token(tok)) word_sets[i].insert(tok);
        }
    }

    std::vector<double> weights(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& small = word_sets[i].size() <= word_sets[j].size() ? word_sets[i] : word_sets[j];
            const auto& large = word_sets[i].size() <= word_sets[j].size() ? word_sets[j] : word_sets[i];
            std::size_t shared = 0;
            for (const auto& w : small) {
                if (large.count(w)) ++shared;
            }
            if (shared == 0) continue;
            double li = static_cast<double>(std::max<std::size_t>(1, sentences[i].word_count));
            double lj = static_cast<double>(std::max<std::size_t>(1, sentences[j].word_count));
            double denom = std::log(li) + std::log(lj);
            if (denom <= 0.0) denom = 1.0;
            double w = static_cast<double>(shared) / denom;
            weights[i * n + j] = w;
            weights[j * n + i] = w;
        }
    }
    return rank_by_score(stationary_scores(sentences, std::move(weights), config));
}

std::vector<std::string> assemble_summary(const std::vector<SentenceCandidate>& sentences,
                                          const std::vector<RankedSentence>& ranked,
                                          std::size_t word_budget) {
    std::vector<std::size_t> taken;
    std::size_t words = 0;
    for (std::size_t r = 0; r < ranked.size(); ++r) {
        const SentenceCandidate& cand = sentences[ranked[r].global_index];
        if (r > 0 && words + cand.word_count > word_budget) break;
        taken.push_back(cand.global_index);
        words += cand.word_count;
    }
    std::sort(taken.begin(), taken.end());

    std::vector<std::string> summary;
    for (std::size_t gi : taken) {
        const auto& toks = sentences[gi].tokens;
        summary.insert(summary.end(), toks.begin(), toks.end());
    }
    return summary;
}

std::vector<std::string> mmr(const Cluster& cluster, const ExtractiveConfig& config) {
    std::vector<SentenceCandidate> sentences = collect_sentences(cluster);
    require_sentences(cluster, sentences);
    const std::size_t n = sentences.size();
    std::vector<SparseVector> vectors = tfidf_vectors(sentences);

    // Query = tf-idf centroid of all sentences.
    SparseVector query;
    {
        std::unordered_map<std::uint32_t, double> acc;
        for (const auto& v : vectors) {
            for (const auto& [term, w] : v.entries) acc[term] += w;
        }
        query.entries.reserve(acc.size());
        for (const auto& [term, w] : acc) {
            query.entries.emplace_back(term, w / static_cast<double>(n));
        }
        std::sort(query.entries.begin(), query.entries.end());
        double sq = 0.0;
        for (const auto& [term, w] : query.entries) {
            (void)term;
            sq += w * w;
        }
        query.norm = std::sqrt(sq);
    }

    std::vector<double> relevance(n);
    for (std::size_t i = 0; i < n; ++i) relevance[i] = cosine_similarity(vectors[i], query);

    std::vector<bool> selected(n, false);
    std::vector<double> max_sim_to_selected(n, 0.0);
    std::vector<std::size_t> picks;
    std::size_t words = 0;
    const double lambda = config.mmr_lambda;

    while (words < config.word_budget && picks.size() < n) {
        std::size_t best = n;
        double best_score = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (selected[i]) continue;
            double score = picks.empty()
                               ? relevance[i]  // first pick is pure relevance
                               : lambda * relevance[i] - (1.0 - lambda) * max_sim_to_selected[i];
            if (best == n || score > best_score) {
                best = i;
                best_score = score;
            }
        }
        if (best == n) break;
        selected[best] = true;
        picks.push_back(best);
        words += sentences[best].word_count;
        for (std::size_t i = 0; i < n; ++i) {
            if (!selected[i]) {
                max_sim_to_selected[i] =
                    std::max(max_sim_to_selected[i], cosine_similarity(vectors[i], vectors[best]));
            }
        }
    }

    std::sort(picks.begin(), picks.end());
    std::vector<std::string> summary;
    for (std::size_t gi : picks) {
        const auto& toks = sentences[gi].tokens;
        summary.insert(summary.end(), toks.begin(), toks.end());
    }
    return summary;
}

std::vector<std::string> lede_k(const Cluster& cluster, std::size_t k) {
    if (k == 0) throw std::invalid_argument("lede_k requires k >= 1");
    std::vector<std::string> summary;
    for (const Document& doc : cluster.documents) {
        std::size_t limit = std::min(k, doc.sentences.size());
        for (std::size_t si = 0; si < limit; ++si) {
            auto toks = sentence_tokens(doc, si);
            summary.insert(summary.end(), toks.begin(), toks.end());
        }
    }
    return summary;
}

std::vector<std::string> best_overlap_source_doc(const Cluster& cluster, std::size_t token_limit) {
    OverlapConfig config;
    config.ngram_order = 2;
    MaskSelection sel = select_mask(cluster, config);
    return truncate_tokens(cluster.documents[sel.masked_doc_index].tokens, token_limit);
}

std::vector<std::string> random_source_doc(const Cluster& cluster, std::uint64_t seed,
                                           std::size_t token_limit) {
    MaskSelection sel = select_random_mask(cluster, seed);
    return truncate_tokens(cluster.documents[sel.masked_doc_index].tokens, token_limit);
}

std::string to_string(SummaryMethod method) {
    switch (method) {
        case SummaryMethod::lede: return "lede";
        case SummaryMethod::lexrank: return "lexrank";
        case SummaryMethod::textrank: return "textrank";
        case SummaryMethod::mmr: return "mmr";
        case SummaryMethod::best_overlap: return "best-overlap";
        case SummaryMethod::random_doc: return "random-doc";
    }
    return "lede";
}

SummaryMethod summary_method_from_string(const std::string& name) {
    if (name == "lede") return SummaryMethod::lede;
    if (name == "lexrank") return SummaryMethod::lexrank;
    if (name == "textrank") return SummaryMethod::textrank;
    if (name == "mmr") return SummaryMethod::mmr;
    if (name == "best-overlap") return SummaryMethod::best_overlap;
    if (name == "random-doc") return SummaryMethod::random_doc;
    throw std::invalid_argument("unknown summarize method: " + name);
}

std::vector<std::string> summarize(const Cluster& cluster, SummaryMethod method,
                                   const ExtractiveConfig& config) {
    switch (method) {
        case SummaryMethod::lede:
            return lede_k(cluster, config.lede_k);
        case SummaryMethod::lexrank:
            return assemble_summary(collect_sentences(cluster), lexrank(cluster, config),
                                    config.word_budget);
        case SummaryMethod::textrank:
            return assemble_summary(collect_sentences(cluster), textrank(cluster, config),
                                    config.word_budget);
        case SummaryMethod::mmr:
            return mmr(cluster, config);
        case SummaryMethod::best_overlap:
            return best_overlap_source_doc(cluster, config.source_doc_token_limit);
        case SummaryMethod::random_doc:
            return random_source_doc(cluster, config.seed, config.source_doc_token_limit);
    }
    throw std::invalid_argument("unknown summarize method");
}

}  // namespace maskmds
