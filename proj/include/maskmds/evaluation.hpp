#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace maskmds {

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t n = 1;
    std::optional<std::size_t> truncation;
};

/// Clipped n-gram matching: per type, min(count_hyp, count_ref). Empty n-gram
/// sets yield 0 for the affected component. No stemming, no stopword removal.
RougeScore rouge_n(std::span<const std::string> hypothesis,
                   std::span<const std::string> reference, std::size_t n);

/// rouge_n after truncating the hypothesis to `limit` words; the reference is
/// never truncated.
RougeScore limited_length_rouge(std::span<const std::string> hypothesis,
                                std::span<const std::string> reference, std::size_t n,
                                std::size_t limit);

/// Mean F-scores for one (n, truncation limit) cell plus the per-cluster
/// values retained for significance testing (cluster order = sorted ids).
struct ScoreCell {
    std::size_t n = 1;
    std::size_t limit = 100;
    double mean_f = 0.0;
    std::vector<double> per_cluster_f;
};

struct SystemReport {
    std::string system_name;
    std::vector<std::string> cluster_ids;  // sorted
    double length_mean = 0.0;              // untruncated words per summary
    double length_std = 0.0;               // population standard deviation
    std::vector<ScoreCell> cells;          // n in {1,2} x each limit

    const ScoreCell* find_cell(std::size_t n, std::size_t limit) const;
};

/// Scores every cluster at every (n in {1,2}, limit) combination. Both maps
/// must cover exactly the same cluster ids; mismatches raise DataError
/// listing the offending ids.
SystemReport evaluate_system(const std::map<std::string, std::vector<std::string>>& summaries,
                             const std::map<std::string, std::vector<std::string>>& references,
                             const std::vector<std::size_t>& limits, std::string system_name = {},
                             unsigned threads = 1);

/// One-sided paired bootstrap for "A better than B": resample clusters with
/// replacement and report the fraction of resamples where mean(a) - mean(b)
/// <= 0 (ties count against A). Deterministic given the seed.
double paired_bootstrap(std::span<const double> scores_a, std::span<const double> scores_b,
                        std::size_t resamples, std::uint64_t seed);

}  // namespace maskmds
