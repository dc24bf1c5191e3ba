#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maskmds {

struct TokenizerConfig {
    bool lowercase = true;
    bool punctuation_split = true;
    // Reserved marker inserted between document segments in a mega-document.
    // The tokenizer splits '_' into its own token, so natural text can never
    // produce this as a single token.
    std::string separator_token = "story_separator_special_tag";
};

/// Half-open token range plus the character range it came from in raw_text.
struct SentenceSpan {
    std::size_t token_begin = 0;
    std::size_t token_end = 0;
    std::size_t char_begin = 0;
    std::size_t char_end = 0;
};

struct Document {
    std::string doc_id;
    std::string raw_text;
    std::vector<std::string> tokens;   // tokenize(raw_text)
    std::vector<SentenceSpan> sentences;  // in order, non-overlapping, union covers all tokens
};

struct Cluster {
    std::string cluster_id;
    std::vector<Document> documents;
    // Gold summary text; evaluation-side only, never read by training-side
    // operations. Tokenize on use.
    std::optional<std::string> gold_summary;
};

struct Corpus {
    std::string split_name;  // train / valid / test
    std::vector<Cluster> clusters;
};

struct ProvenanceSpan {
    std::string doc_id;
    std::size_t token_begin = 0;  // half-open range into MegaDocument::tokens
    std::size_t token_end = 0;
};

/// Budget-limited concatenation of a cluster's documents. Separator tokens
/// sit between consecutive segments and do not count against the budget.
struct MegaDocument {
    std::vector<std::string> tokens;
    std::size_t content_token_count = 0;
    std::vector<ProvenanceSpan> provenance;
    std::size_t budget = 500;
};

// --- character classes (ASCII; bytes >= 0x80 are treated as word characters) ---

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }

inline bool is_word_char(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u >= 0x80) return true;
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_punct_char(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u > 0x20 && u < 0x80 && !is_word_char(c);
}

/// A token counts as a word if it has at least one non-punctuation character.
bool is_word_token(std::string_view token);

std::size_t count_words(std::span<const std::string> tokens);

// --- operations ---

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config = {});

/// Splits at {. ! ?} followed by whitespace and a capital letter, guarded by
/// a fixed English abbreviation list. Concatenating the returned sentences
/// (modulo collapsed whitespace) reproduces the input.
std::vector<std::string> split_sentences(std::string_view text);

/// Character spans (trimmed) of the sentences within text.
std::vector<std::pair<std::size_t, std::size_t>> split_sentence_spans(std::string_view text);

/// Tokenizes and sentence-splits raw_text.
Document make_document(std::string doc_id, std::string raw_text,
                       const TokenizerConfig& config = {});

std::span<const std::string> sentence_tokens(const Document& doc, std::size_t index);

/// Fills floor(budget/M) tokens from each document, then distributes leftover
/// budget one token per document per round-robin pass over documents that
/// still have unconsumed tokens. Segments keep input order; separators are
/// excluded from the budget.
MegaDocument build_mega_document(const std::vector<Document>& documents, std::size_t budget,
                                 const TokenizerConfig& config = {});

/// Shortest prefix containing min(limit, total) words, where a word is any
/// non-punctuation token. Punctuation inside the prefix is retained.
std::vector<std::string> truncate_words(std::span<const std::string> tokens, std::size_t limit);

/// Plain token prefix (used for the 300-token masked-target truncation).
std::vector<std::string> truncate_tokens(std::span<const std::string> tokens, std::size_t limit);

std::string join_tokens(std::span<const std::string> tokens, std::string_view sep = " ");

/// Reads the cluster JSONL schema:
///   {"cluster_id": str, "documents": [{"doc_id": str, "text": str}], "summary": str|null}
/// Documents are tokenized and sentence-split on load; line order is kept.
/// Throws DataError naming the line and field on malformed input, duplicate
/// cluster ids, duplicate doc ids, or reserved separator tokens in text.
Corpus load_corpus(const std::string& path, std::string split_name,
                   const TokenizerConfig& config = {});

void save_corpus(const Corpus& corpus, const std::string& path);

}  // namespace maskmds
