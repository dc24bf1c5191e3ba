#include "maskmds/cleaning.hpp"

#include <unordered_set>

#include "maskmds/centrality.hpp"
#include "maskmds/errors.hpp"
#include "maskmds/parallel.hpp"

namespace maskmds {

namespace {

std::size_t codepoint_count(std::string_view text) {
    std::size_t n = 0;
    for (unsigned char c : text) {
        // Count every byte that is not a UTF-8 continuation byte.
        if ((c & 0xc0) != 0x80) ++n;
    }
    return n;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            lines.emplace_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return lines;
}

bool is_blank(const std::string& s) {
    for (char c : s) {
        if (!is_ascii_space(c)) return false;
    }
    return true;
}

std::unordered_set<std::string> ngram_type_set(std::span<const std::string> tokens,
                                               std::size_t n) {
    std::unordered_set<std::string> set;
    NgramMultiset grams = extract_ngrams(tokens, n);
    set.reserve(grams.counts.size());
    for (auto& [key, count] : grams.counts) {
        (void)count;
        set.insert(key);
    }
    return set;
}

/// Jaccard over n-gram type sets. Two documents too short to produce any
/// n-gram compare as 1.0 only when their token sequences are identical.
double ngram_jaccard(const Document& a, const Document& b, std::size_t n) {
    auto sa = ngram_type_set(a.tokens, n);
    auto sb = ngram_type_set(b.tokens, n);
    if (sa.empty() && sb.empty()) {
        return a.tokens == b.tokens ? 1.0 : 0.0;
    }
    const auto& small = sa.size() <= sb.size() ? sa : sb;
    const auto& large = sa.size() <= sb.size() ? sb : sa;
    std::size_t inter = 0;
    for (const auto& g : small) {
        if (large.count(g)) ++inter;
    }
    std::size_t uni = sa.size() + sb.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

struct DocCleanStats {
    std::size_t metadata_segments = 0;
    std::size_t repeated_sentences = 0;
};

struct ClusterCleanResult {
    Cluster cluster;
    bool dropped = false;
    std::size_t docs_removed_length = 0;
    std::size_t docs_removed_tweet = 0;
    std::size_t docs_removed_dedup = 0;
    std::size_t sentences_removed = 0;
    std::size_t metadata_segments = 0;
};

}  // namespace

const std::vector<std::string>& default_tweet_url_patterns() {
    static const std::vector<std::string> patterns = {
        R"(twitter\.com/[A-Za-z0-9_]+/status/)",
        R"(pic\.twitter\.com/)",
        R"(\bt\.co/)",
    };
    return patterns;
}

const std::vector<std::string>& default_metadata_patterns() {
    static const std::vector<std::string> patterns = {
        // Byline lines: "By John Doe", optionally with a trailing affiliation.
        R"(^\s*[Bb]y [A-Z][A-Za-z.'-]+(?: [A-Z][A-Za-z.'-]+){0,5}(?:,[A-Za-z0-9 .'-]{0,60})?\s*$)",
        // Copyright lines.
        R"(^\s*(?:©|\([Cc]\)\s|[Cc]opyright\b).*$)",
        // Photo credits embedded in captions.
        R"(\(AP Photo[^)]*\))",
        // Share boilerplate.
        R"(^\s*Share this:?.*$)",
        // Leading datelines: "WASHINGTON — ", "NEW YORK, N.Y. -- ".
        R"(^[A-Z][A-Z0-9.,' -]{0,28}[A-Z][.,']?\s*(?:—|–|--)\s*)",
    };
    return patterns;
}

CompiledPatterns compile_patterns(const CleaningConfig& config) {
    CompiledPatterns out;
    const auto& tweet =
        config.tweet_url_patterns.empty() ? default_tweet_url_patterns() : config.tweet_url_patterns;
    const auto& meta =
        config.metadata_patterns.empty() ? default_metadata_patterns() : config.metadata_patterns;
    for (const auto& p : tweet) out.tweet.emplace_back(p, std::regex::ECMAScript);
    for (const auto& p : meta) out.metadata.emplace_back(p, std::regex::ECMAScript);
    return out;
}

bool length_filter(const Document& doc, std::size_t min_chars) {
    return codepoint_count(doc.raw_text) < min_chars;
}

bool tweet_filter(const Document& doc, const std::vector<std::regex>& patterns) {
    for (const auto& re : patterns) {
        if (std::regex_search(doc.raw_text, re)) return true;
    }
    return false;
}

Document strip_metadata(const Document& doc, const std::vector<std::regex>& patterns,
                        const TokenizerConfig& tokenizer, std::size_t* removed_segments) {
    std::size_t removed = 0;
    std::vector<std::string> kept;
    for (std::string& line : split_lines(doc.raw_text)) {
        bool changed = true;
        // Repeat until a fixed point so stacked matches (double datelines)
        // cannot survive a single pass.
        while (changed && !line.empty()) {
            changed = false;
            for (const auto& re : patterns) {
                std::string replaced = std::regex_replace(line, re, "");
                if (replaced != line) {
                    line = std::move(replaced);
                    changed = true;
                    ++removed;
                }
            }
        }
        if (!is_blank(line)) kept.push_back(std::move(line));
    }
    if (removed_segments) *removed_segments += removed;

    std::string text;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (i > 0) text += '\n';
        text += kept[i];
    }
    return make_document(doc.doc_id, std::move(text), tokenizer);
}

Document remove_repeated_phrases(const Document& doc, const CleaningConfig& config,
                                 std::size_t* removed_sentences) {
    const std::size_t n = config.repeat_ngram_order;
    std::unordered_set<std::string> seen_ngrams;
    std::unordered_set<std::string> seen_exact;
    std::vector<std::string> kept;
    std::size_t removed = 0;

    for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
        auto tokens = sentence_tokens(doc, si);
        bool drop = false;
        if (tokens.size() < n) {
            drop = seen_exact.count(join_tokens(tokens, "\x1f")) > 0;
        } else {
            std::size_t instances = tokens.size() - n + 1;
            std::size_t matched = 0;
            NgramMultiset grams = extract_ngrams(tokens, n);
            for (const auto& [key, count] : grams.counts) {
                if (seen_ngrams.count(key)) matched += static_cast<std::size_t>(count);
            }
            drop = static_cast<double>(matched) >=
                   config.repeat_overlap_threshold * static_cast<double>(instances);
        }

        if (drop) {
            ++removed;
            continue;
        }
        const SentenceSpan& span = doc.sentences[si];
        kept.push_back(doc.raw_text.substr(span.char_begin, span.char_end - span.char_begin));
        seen_exact.insert(join_tokens(tokens, "\x1f"));
        if (tokens.size() >= n) {
            NgramMultiset grams = extract_ngrams(tokens, n);
            for (auto& [key, count] : grams.counts) {
                (void)count;
                seen_ngrams.insert(key);
            }
        }
    }
    if (removed_sentences) *removed_sentences += removed;

    std::string text;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (i > 0) text += ' ';
        text += kept[i];
    }
    return make_document(doc.doc_id, std::move(text), config.tokenizer);
}

Cluster dedup_syndicated(const Cluster& cluster, const CleaningConfig& config,
                         std::size_t* removed_docs) {
    Cluster out;
    out.cluster_id = cluster.cluster_id;
    out.gold_summary = cluster.gold_summary;
    std::size_t removed = 0;
    for (const Document& doc : cluster.documents) {
        bool duplicate = false;
        for (const Document& kept : out.documents) {
            if (ngram_jaccard(kept, doc, config.dedup_ngram_order) >=
                config.dedup_jaccard_threshold) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) {
            ++removed;
        } else {
            out.documents.push_back(doc);
        }
    }
    if (removed_docs) *removed_docs += removed;
    return out;
}

std::pair<Corpus, CleaningReport> clean_corpus(const Corpus& corpus, const CleaningConfig& config,
                                               unsigned threads) {
    CompiledPatterns patterns = compile_patterns(config);

    std::vector<ClusterCleanResult> results(corpus.clusters.size());
    parallel_for(corpus.clusters.size(), threads, [&](std::size_t ci) {
        const Cluster& cluster = corpus.clusters[ci];
        ClusterCleanResult res;

        Cluster working;
        working.cluster_id = cluster.cluster_id;
        working.gold_summary = cluster.gold_summary;
        for (const Document& doc : cluster.documents) {
            Document d = strip_metadata(doc, patterns.metadata, config.tokenizer,
                                        &res.metadata_segments);
            d = remove_repeated_phrases(d, config, &res.sentences_removed);
            if (length_filter(d, config.min_chars)) {
                ++res.docs_removed_length;
                continue;
            }
            if (tweet_filter(d, patterns.tweet)) {
                ++res.docs_removed_tweet;
                continue;
            }
            working.documents.push_back(std::move(d));
        }
        working = dedup_syndicated(working, config, &res.docs_removed_dedup);

        res.dropped = working.documents.size() < config.min_cluster_size_after;
        res.cluster = std::move(working);
        results[ci] = std::move(res);
    });

    Corpus cleaned;
    cleaned.split_name = corpus.split_name;
    CleaningReport report;
    report.split_name = corpus.split_name;
    report.clusters_before = corpus.clusters.size();
    for (auto& res : results) {
        report.docs_removed_length += res.docs_removed_length;
        report.docs_removed_tweet += res.docs_removed_tweet;
        report.docs_removed_dedup += res.docs_removed_dedup;
        report.sentences_removed_repeats += res.sentences_removed;
        report.metadata_segments_removed += res.metadata_segments;
        if (res.dropped) {
            ++report.clusters_dropped_min_size;
        } else {
            cleaned.clusters.push_back(std::move(res.cluster));
        }
    }
    report.clusters_after = cleaned.clusters.size();
    return {std::move(cleaned), std::move(report)};
}

}  // namespace maskmds
