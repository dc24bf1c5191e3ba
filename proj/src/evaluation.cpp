#include "maskmds/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "maskmds/centrality.hpp"
#include "maskmds/corpus.hpp"
#include "maskmds/errors.hpp"
#include "maskmds/parallel.hpp"

namespace maskmds {

namespace {

double f_measure(double precision, double recall) {
    double denom = precision + recall;
    return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

std::string format_id_list(const std::vector<std::string>& ids) {
    std::string out;
    const std::size_t cap = 10;
    for (std::size_t i = 0; i < ids.size() && i < cap; ++i) {
        if (i > 0) out += ", ";
        out += ids[i];
    }
    if (ids.size() > cap) out += ", ... (" + std::to_string(ids.size()) + " total)";
    return out;
}

}  // namespace

RougeScore rouge_n(std::span<const std::string> hypothesis,
                   std::span<const std::string> reference, std::size_t n) {
    NgramMultiset hyp = extract_ngrams(hypothesis, n);
    NgramMultiset ref = extract_ngrams(reference, n);

    std::size_t matches = 0;
    const auto& small = hyp.counts.size() <= ref.counts.size() ? hyp.counts : ref.counts;
    const auto& large = hyp.counts.size() <= ref.counts.size() ? ref.counts : hyp.counts;
    for (const auto& [key, count] : small) {
        auto it = large.find(key);
        if (it != large.end()) matches += static_cast<std::size_t>(std::min(count, it->second));
    }

    RougeScore score;
    score.n = n;
    score.precision = hyp.total > 0 ? static_cast<double>(matches) / static_cast<double>(hyp.total) : 0.0;
    score.recall = ref.total > 0 ? static_cast<double>(matches) / static_cast<double>(ref.total) : 0.0;
    score.f1 = f_measure(score.precision, score.recall);
    return score;
}

RougeScore limited_length_rouge(std::span<const std::string> hypothesis,
                                std::span<const std::string> reference, std::size_t n,
                                std::size_t limit) {
    std::vector<std::string> truncated = truncate_words(hypothesis, limit);
    RougeScore score = rouge_n(truncated, reference, n);
    score.truncation = limit;
    return score;
}

const ScoreCell* SystemReport::find_cell(std::size_t n, std::size_t limit) const {
    for (const ScoreCell& cell : cells) {
        if (cell.n == n && cell.limit == limit) return &cell;
    }
    return nullptr;
}

SystemReport evaluate_system(const std::map<std::string, std::vector<std::string>>& summaries,
                             const std::map<std::string, std::vector<std::string>>& references,
                             const std::vector<std::size_t>& limits, std::string system_name,
                             unsigned threads) {
    if (summaries.empty()) {
        throw DataError("evaluate_system: no clusters to score");
    }
    std::vector<std::string> missing_refs;
    for (const auto& [id, hyp] : summaries) {
        (void)hyp;
        if (!references.count(id)) missing_refs.push_back(id);
    }
    std::vector<std::string> missing_hyps;
    for (const auto& [id, ref] : references) {
        (void)ref;
        if (!summaries.count(id)) missing_hyps.push_back(id);
    }
    if (!missing_refs.empty() || !missing_hyps.empty()) {
        std::string msg = "cluster id mismatch between summaries and references";
        if (!missing_refs.empty()) msg += "; missing references: " + format_id_list(missing_refs);
        if (!missing_hyps.empty()) msg += "; missing summaries: " + format_id_list(missing_hyps);
        throw DataError(msg);
    }

    SystemReport report;
    report.system_name = std::move(system_name);
    report.cluster_ids.reserve(summaries.size());
    for (const auto& [id, hyp] : summaries) {
        (void)hyp;
        report.cluster_ids.push_back(id);  // std::map iterates in sorted order
    }
    const std::size_t n_clusters = report.cluster_ids.size();

    for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
        for (std::size_t limit : limits) {
            ScoreCell cell;
            cell.n = n;
            cell.limit = limit;
            cell.per_cluster_f.assign(n_clusters, 0.0);
            report.cells.push_back(std::move(cell));
        }
    }
    std::vector<double> lengths(n_clusters, 0.0);

    parallel_for(n_clusters, threads, [&](std::size_t ci) {
        const std::string& id = report.cluster_ids[ci];
        const auto& hyp = summaries.at(id);
        const auto& ref = references.at(id);
        lengths[ci] = static_cast<double>(count_words(hyp));
        for (ScoreCell& cell : report.cells) {
            cell.per_cluster_f[ci] = limited_length_rouge(hyp, ref, cell.n, cell.limit).f1;
        }
    });

    for (ScoreCell& cell : report.cells) {
        double sum = 0.0;
        for (double f : cell.per_cluster_f) sum += f;
        cell.mean_f = sum / static_cast<double>(n_clusters);
    }

    double len_sum = 0.0;
    for (double l : lengths) len_sum += l;
    report.length_mean = len_sum / static_cast<double>(n_clusters);
    double var = 0.0;
    for (double l : lengths) var += (l - report.length_mean) * (l - report.length_mean);
    report.length_std = std::sqrt(var / static_cast<double>(n_clusters));
    return report;
}

double paired_bootstrap(std::span<const double> scores_a, std::span<const double> scores_b,
                        std::size_t resamples, std::uint64_t seed) {
    if (scores_a.size() != scores_b.size()) {
        throw DataError("paired_bootstrap: score vectors differ in length (" +
                        std::to_string(scores_a.size()) + " vs " +
                        std::to_string(scores_b.size()) + ")");
    }
    if (scores_a.empty()) {
        throw DataError("paired_bootstrap: empty score vectors");
    }
    if (resamples == 0) throw std::invalid_argument("resamples must be >= 1");

    const std::size_t n = scores_a.size();
    std::mt19937_64 rng(seed);
    std::size_t not_better = 0;
    for (std::size_t r = 0; r < resamples; ++r) {
        double sum_a = 0.0;
        double sum_b = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t idx = static_cast<std::size_t>(rng() % n);
            sum_a += scores_a[idx];
            sum_b += scores_b[idx];
        }
        if (sum_a - sum_b <= 0.0) ++not_better;
    }
    return static_cast<double>(not_better) / static_cast<double>(resamples);
}

}  // namespace maskmds
