#include "maskmds/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <unordered_set>

#include "maskmds/errors.hpp"

#include "json.hpp"

namespace maskmds {

namespace {

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

// Fixed abbreviation guard for the sentence splitter, lowercased, trailing
// period included. Months follow common abbreviation practice ("May" is
// never written with a period, so it is absent).
const std::array<std::string_view, 20> kAbbreviations = {
    "mr.",  "mrs.", "dr.",  "st.",  "u.s.", "inc.", "vs.",  "etc.", "jan.", "feb.",
    "mar.", "apr.", "jun.", "jul.", "aug.", "sep.", "sept.", "oct.", "nov.", "dec.",
};

bool is_abbreviation(std::string_view text, std::size_t period_pos) {
    // Word containing the period: maximal run of non-space characters ending
    // at the period, with leading quotes/brackets trimmed.
    std::size_t begin = period_pos;
    while (begin > 0 && !is_ascii_space(text[begin - 1])) --begin;
    while (begin < period_pos) {
        char c = text[begin];
        if (c == '"' || c == '\'' || c == '(' || c == '[' || c == '`') {
            ++begin;
        } else {
            break;
        }
    }
    std::string word;
    word.reserve(period_pos - begin + 1);
    for (std::size_t i = begin; i <= period_pos; ++i) word.push_back(ascii_lower(text[i]));
    for (std::string_view abbr : kAbbreviations) {
        if (word == abbr) return true;
    }
    return false;
}

}  // namespace

bool is_word_token(std::string_view token) {
    for (char c : token) {
        if (!is_punct_char(c)) return true;
    }
    return false;
}

std::size_t count_words(std::span<const std::string> tokens) {
    std::size_t n = 0;
    for (const auto& t : tokens) {
        if (is_word_token(t)) ++n;
    }
    return n;
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&]() {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (char c : text) {
        if (is_ascii_space(c)) {
            flush();
        } else if (config.punctuation_split && is_punct_char(c)) {
            flush();
            tokens.emplace_back(1, c);
        } else {
            current.push_back(config.lowercase ? ascii_lower(c) : c);
        }
    }
    flush();
    return tokens;
}

std::vector<std::pair<std::size_t, std::size_t>> split_sentence_spans(std::string_view text) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    auto emit = [&](std::size_t begin, std::size_t end) {
        while (begin < end && is_ascii_space(text[begin])) ++begin;
        while (end > begin && is_ascii_space(text[end - 1])) --end;
        if (begin < end) spans.emplace_back(begin, end);
    };

    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        if (c == '.' && is_abbreviation(text, i)) continue;
        std::size_t j = i + 1;
        if (j >= text.size() || !is_ascii_space(text[j])) continue;
        while (j < text.size() && is_ascii_space(text[j])) ++j;
        if (j >= text.size() || !is_ascii_upper(text[j])) continue;
        emit(start, i + 1);
        start = j;
        i = j - 1;
    }
    emit(start, text.size());
    return spans;
}

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    for (auto [begin, end] : split_sentence_spans(text)) {
        sentences.emplace_back(text.substr(begin, end - begin));
    }
    return sentences;
}

Document make_document(std::string doc_id, std::string raw_text, const TokenizerConfig& config) {
    Document doc;
    doc.doc_id = std::move(doc_id);
    doc.raw_text = std::move(raw_text);
    doc.tokens = tokenize(doc.raw_text, config);

    std::size_t token_cursor = 0;
    for (auto [char_begin, char_end] : split_sentence_spans(doc.raw_text)) {
        std::string_view piece(doc.raw_text);
        piece = piece.substr(char_begin, char_end - char_begin);
        std::size_t n = tokenize(piece, config).size();
        if (n == 0) continue;
        doc.sentences.push_back({token_cursor, token_cursor + n, char_begin, char_end});
        token_cursor += n;
    }
    // Sentence boundaries fall on whitespace, so per-sentence token counts
    // always add up to the full tokenization.
    if (token_cursor != doc.tokens.size()) {
        doc.sentences.clear();
        if (!doc.tokens.empty()) {
            doc.sentences.push_back({0, doc.tokens.size(), 0, doc.raw_text.size()});
        }
    }
    return doc;
}

std::span<const std::string> sentence_tokens(const Document& doc, std::size_t index) {
    const SentenceSpan& s = doc.sentences.at(index);
    return std::span<const std::string>(doc.tokens).subspan(s.token_begin,
                                                            s.token_end - s.token_begin);
}

MegaDocument build_mega_document(const std::vector<Document>& documents, std::size_t budget,
                                 const TokenizerConfig& config) {
    if (documents.empty()) {
        throw DataError("build_mega_document: empty document list");
    }
    const std::size_t m = documents.size();
    std::vector<std::size_t> take(m, 0);

    std::size_t quota = budget / m;
    std::size_t used = 0;
    for (std::size_t i = 0; i < m; ++i) {
        take[i] = std::min(documents[i].tokens.size(), quota);
        used += take[i];
    }
    // Round-robin over documents with unconsumed tokens, one token per pass.
    bool progress = true;
    while (used < budget && progress) {
        progress = false;
        for (std::size_t i = 0; i < m && used < budget; ++i) {
            if (take[i] < documents[i].tokens.size()) {
                ++take[i];
                ++used;
                progress = true;
            }
        }
    }

    MegaDocument mega;
    mega.budget = budget;
    mega.content_token_count = used;
    mega.tokens.reserve(used + m);
    for (std::size_t i = 0; i < m; ++i) {
        if (take[i] == 0) continue;
        if (!mega.provenance.empty()) {
            mega.tokens.push_back(config.separator_token);
        }
        std::size_t begin = mega.tokens.size();
        mega.tokens.insert(mega.tokens.end(), documents[i].tokens.begin(),
                           documents[i].tokens.begin() + static_cast<std::ptrdiff_t>(take[i]));
        mega.provenance.push_back({documents[i].doc_id, begin, mega.tokens.size()});
    }
    return mega;
}

std::vector<std::string> truncate_words(std::span<const std::string> tokens, std::size_t limit) {
    std::vector<std::string> out;
    if (limit == 0) return out;
    std::size_t words = 0;
    std::size_t end = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (is_word_token(tokens[i])) {
            ++words;
            end = i + 1;
            if (words == limit) break;
        }
    }
    out.assign(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(end));
    return out;
}

std::vector<std::string> truncate_tokens(std::span<const std::string> tokens, std::size_t limit) {
    std::size_t n = std::min(tokens.size(), limit);
    return std::vector<std::string>(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(n));
}

std::string join_tokens(std::span<const std::string> tokens, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out += sep;
        out += tokens[i];
    }
    return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void line_error(std::size_t line_no, const std::string& what) {
    throw DataError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Corpus load_corpus(const std::string& path, std::string split_name,
                   const TokenizerConfig& config) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open corpus file: " + path);
    }
    Corpus corpus;
    corpus.split_name = std::move(split_name);

    std::unordered_set<std::string> seen_cluster_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            line_error(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) line_error(line_no, "expected a JSON object");
        if (!j.contains("cluster_id") || !j["cluster_id"].is_string()) {
            line_error(line_no, "missing or non-string field 'cluster_id'");
        }
        if (!j.contains("documents") || !j["documents"].is_array()) {
            line_error(line_no, "missing or non-array field 'documents'");
        }

        Cluster cluster;
        cluster.cluster_id = j["cluster_id"].get<std::string>();
        if (!seen_cluster_ids.insert(cluster.cluster_id).second) {
            line_error(line_no, "duplicate cluster_id '" + cluster.cluster_id + "'");
        }

        std::unordered_set<std::string> seen_doc_ids;
        for (const auto& dj : j["documents"]) {
            if (!dj.is_object() || !dj.contains("doc_id") || !dj["doc_id"].is_string() ||
                !dj.contains("text") || !dj["text"].is_string()) {
                line_error(line_no, "each document needs string fields 'doc_id' and 'text'");
            }
            Document doc = make_document(dj["doc_id"].get<std::string>(),
                                         dj["text"].get<std::string>(), config);
            if (!seen_doc_ids.insert(doc.doc_id).second) {
                line_error(line_no, "duplicate doc_id '" + doc.doc_id + "' in cluster '" +
                                        cluster.cluster_id + "'");
            }
            for (const auto& tok : doc.tokens) {
                if (tok == config.separator_token) {
                    line_error(line_no, "document '" + doc.doc_id +
                                            "' contains the reserved separator token");
                }
            }
            cluster.documents.push_back(std::move(doc));
        }

        if (j.contains("summary") && !j["summary"].is_null()) {
            if (!j["summary"].is_string()) line_error(line_no, "field 'summary' must be string or null");
            cluster.gold_summary = j["summary"].get<std::string>();
        }
        corpus.clusters.push_back(std::move(cluster));
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot open output file: " + path);
    }
    for (const Cluster& cluster : corpus.clusters) {
        json docs = json::array();
        for (const Document& doc : cluster.documents) {
            docs.push_back({{"doc_id", doc.doc_id}, {"text", doc.raw_text}});
        }
        json j{{"cluster_id", cluster.cluster_id}, {"documents", std::move(docs)}};
        if (cluster.gold_summary) {
            j["summary"] = *cluster.gold_summary;
        } else {
            j["summary"] = nullptr;
        }
        out << j.dump() << '\n';
    }
    if (!out) {
        throw DataError("failed writing corpus to " + path);
    }
}

}  // namespace maskmds
