#pragma once

// Brute-force reference implementations used to check the library. These
// deliberately avoid the library's counting structures: matching is raw
// nested-loop enumeration over token windows, and stationary vectors come
// from a dense linear solve.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maskmds/corpus.hpp"

namespace oracle {

/// Sum over n-gram types of min(count_a, count_b), computed by greedily
/// matching each window of `a` against an unused equal window of `b`.
inline std::size_t clipped_matches(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b, std::size_t n) {
    if (a.size() < n || b.size() < n) return 0;
    std::vector<bool> used(b.size() - n + 1, false);
    std::size_t matches = 0;
    for (std::size_t i = 0; i + n <= a.size(); ++i) {
        for (std::size_t j = 0; j + n <= b.size(); ++j) {
            if (used[j]) continue;
            bool equal = true;
            for (std::size_t k = 0; k < n; ++k) {
                if (a[i + k] != b[j + k]) {
                    equal = false;
                    break;
                }
            }
            if (equal) {
                used[j] = true;
                ++matches;
                break;
            }
        }
    }
    return matches;
}

inline std::size_t ngram_instances(const std::vector<std::string>& tokens, std::size_t n) {
    return tokens.size() >= n ? tokens.size() - n + 1 : 0;
}

struct Rouge {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

inline Rouge rouge(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                   std::size_t n) {
    std::size_t matches = clipped_matches(hyp, ref, n);
    std::size_t hyp_total = ngram_instances(hyp, n);
    std::size_t ref_total = ngram_instances(ref, n);
    Rouge r;
    r.precision = hyp_total > 0 ? static_cast<double>(matches) / static_cast<double>(hyp_total) : 0.0;
    r.recall = ref_total > 0 ? static_cast<double>(matches) / static_cast<double>(ref_total) : 0.0;
    double denom = r.precision + r.recall;
    r.f1 = denom > 0.0 ? 2.0 * r.precision * r.recall / denom : 0.0;
    return r;
}

/// Clipped recall of candidate against rest, normalized by the candidate's
/// n-gram count. Returns nullopt when the candidate has no n-grams.
inline std::optional<double> recall(const std::vector<std::string>& candidate,
                                    const std::vector<std::string>& rest, std::size_t n) {
    std::size_t total = ngram_instances(candidate, n);
    if (total == 0) return std::nullopt;
    return static_cast<double>(clipped_matches(candidate, rest, n)) / static_cast<double>(total);
}

/// Argmax over candidate documents of clipped recall against the in-order
/// concatenation of the others; ties break to the lowest index, degenerate
/// candidates are skipped.
inline std::size_t select_mask_index(const maskmds::Cluster& cluster, std::size_t n) {
    std::size_t best = cluster.documents.size();
    double best_score = -1.0;
    for (std::size_t i = 0; i < cluster.documents.size(); ++i) {
        std::vector<std::string> rest;
        for (std::size_t j = 0; j < cluster.documents.size(); ++j) {
            if (j == i) continue;
            rest.insert(rest.end(), cluster.documents[j].tokens.begin(),
                        cluster.documents[j].tokens.end());
        }
        auto score = recall(cluster.documents[i].tokens, rest, n);
        if (!score) continue;
        if (*score > best_score) {
            best_score = *score;
            best = i;
        }
    }
    if (best == cluster.documents.size()) {
        throw std::runtime_error("oracle: every candidate degenerate");
    }
    return best;
}

/// Stationary vector of p = damping/n + (1 - damping) * T^t p via a dense
/// linear solve with partial pivoting.
inline std::vector<double> stationary(const std::vector<double>& transition, std::size_t n,
                                      double damping) {
    // A = I - (1 - damping) * T^t, b = damping / n.
    std::vector<double> a(n * n, 0.0);
    std::vector<double> b(n, damping / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = (i == j ? 1.0 : 0.0) - (1.0 - damping) * transition[j * n + i];
        }
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
            std::swap(b[col], b[pivot]);
        }
        double diag = a[col * n + col];
        if (std::abs(diag) < 1e-14) throw std::runtime_error("oracle: singular system");
        for (std::size_t row = col + 1; row < n; ++row) {
            double factor = a[row * n + col] / diag;
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[row * n + j] -= factor * a[col * n + j];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t row = n; row-- > 0;) {
        double sum = b[row];
        for (std::size_t j = row + 1; j < n; ++j) sum -= a[row * n + j] * x[j];
        x[row] = sum / a[row * n + row];
    }
    double total = 0.0;
    for (double v : x) total += v;
    for (double& v : x) v /= total;
    return x;
}

/// Reference tokenizer taking a different route than the library: words are
/// pulled with a stream, then punctuation runs are peeled per character.
inline std::vector<std::string> reference_tokenize(const std::string& text) {
    const std::string punct = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";
    std::vector<std::string> tokens;
    std::string chunk;
    std::string word;
    auto flush_word = [&]() {
        if (!word.empty()) {
            tokens.push_back(word);
            word.clear();
        }
    };
    for (std::size_t pos = 0; pos <= text.size(); ++pos) {
        bool at_end = pos == text.size();
        char c = at_end ? ' ' : text[pos];
        if (at_end || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            // chunk complete; peel punctuation characters into single tokens
            for (char wc : chunk) {
                if (punct.find(wc) != std::string::npos) {
                    flush_word();
                    tokens.push_back(std::string(1, wc));
                } else {
                    word.push_back((wc >= 'A' && wc <= 'Z') ? static_cast<char>(wc - 'A' + 'a') : wc);
                }
            }
            flush_word();
            chunk.clear();
        } else {
            chunk.push_back(c);
        }
    }
    return tokens;
}

}  // namespace oracle
