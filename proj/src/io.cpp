#include "maskmds/io.hpp"

#include <fstream>

#include "maskmds/errors.hpp"

namespace maskmds {

using nlohmann::json;

nlohmann::json to_json(const MaskSelection& selection) {
    json j{{"cluster_id", selection.cluster_id},
           {"masked_doc_id", selection.masked_doc_id},
           {"strategy", to_string(selection.strategy)}};
    if (selection.score) {
        j["score"] = *selection.score;
    } else {
        j["score"] = nullptr;
    }
    return j;
}

nlohmann::json to_json(const TrainingPair& pair) {
    json j{{"cluster_id", pair.cluster_id},
           {"masked_doc_id", pair.masked_doc_id},
           {"src", join_tokens(pair.input.tokens)},
           {"tgt", join_tokens(pair.target)}};
    if (pair.score) {
        j["score"] = *pair.score;
    } else {
        j["score"] = nullptr;
    }
    return j;
}

nlohmann::json to_json(const SummaryRecord& record) {
    return json{{"cluster_id", record.cluster_id},
                {"method", record.method},
                {"summary", record.summary}};
}

nlohmann::json to_json(const CleaningReport& report) {
    return json{{"split", report.split_name},
                {"clusters_before", report.clusters_before},
                {"clusters_after", report.clusters_after},
                {"documents_removed",
                 {{"length", report.docs_removed_length},
                  {"tweet_link", report.docs_removed_tweet},
                  {"near_duplicate", report.docs_removed_dedup}}},
                {"sentences_removed_repeated", report.sentences_removed_repeats},
                {"metadata_segments_removed", report.metadata_segments_removed},
                {"clusters_dropped_min_size", report.clusters_dropped_min_size}};
}

nlohmann::json to_json(const SystemReport& report) {
    json cells = json::array();
    for (const ScoreCell& cell : report.cells) {
        cells.push_back({{"n", cell.n},
                         {"limit", cell.limit},
                         {"mean_f", cell.mean_f},
                         {"per_cluster_f", cell.per_cluster_f}});
    }
    return json{{"system", report.system_name},
                {"num_clusters", report.cluster_ids.size()},
                {"cluster_ids", report.cluster_ids},
                {"length_mean", report.length_mean},
                {"length_std", report.length_std},
                {"cells", std::move(cells)}};
}

SystemReport system_report_from_json(const nlohmann::json& j) {
    SystemReport report;
    try {
        report.system_name = j.at("system").get<std::string>();
        report.cluster_ids = j.at("cluster_ids").get<std::vector<std::string>>();
        report.length_mean = j.at("length_mean").get<double>();
        report.length_std = j.at("length_std").get<double>();
        for (const auto& cj : j.at("cells")) {
            ScoreCell cell;
            cell.n = cj.at("n").get<std::size_t>();
            cell.limit = cj.at("limit").get<std::size_t>();
            cell.mean_f = cj.at("mean_f").get<double>();
            cell.per_cluster_f = cj.at("per_cluster_f").get<std::vector<double>>();
            if (cell.per_cluster_f.size() != report.cluster_ids.size()) {
                throw DataError("score file cell (n=" + std::to_string(cell.n) + ", limit=" +
                                std::to_string(cell.limit) + ") does not cover every cluster");
            }
            report.cells.push_back(std::move(cell));
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed score file: ") + e.what());
    }
    return report;
}

void apply_config_json(const nlohmann::json& j, CleaningConfig& config) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "min_chars") {
                config.min_chars = value.get<std::size_t>();
            } else if (key == "tweet_url_patterns") {
                config.tweet_url_patterns = value.get<std::vector<std::string>>();
            } else if (key == "dedup_ngram_order") {
                config.dedup_ngram_order = value.get<std::size_t>();
            } else if (key == "dedup_jaccard_threshold") {
                config.dedup_jaccard_threshold = value.get<double>();
            } else if (key == "repeat_ngram_order") {
                config.repeat_ngram_order = value.get<std::size_t>();
            } else if (key == "repeat_overlap_threshold") {
                config.repeat_overlap_threshold = value.get<double>();
            } else if (key == "metadata_patterns") {
                config.metadata_patterns = value.get<std::vector<std::string>>();
            } else if (key == "min_cluster_size_after") {
                config.min_cluster_size_after = value.get<std::size_t>();
            } else {
                throw std::invalid_argument("unknown cleaning config key: " + key);
            }
        } catch (const json::exception& e) {
            throw std::invalid_argument("bad value for cleaning config key '" + key + "': " +
                                        e.what());
        }
    }
    if (config.dedup_jaccard_threshold < 0.0 || config.dedup_jaccard_threshold > 1.0 ||
        config.repeat_overlap_threshold < 0.0 || config.repeat_overlap_threshold > 1.0) {
        throw std::invalid_argument("cleaning thresholds must lie in [0, 1]");
    }
    if (config.dedup_ngram_order == 0 || config.repeat_ngram_order == 0) {
        throw std::invalid_argument("n-gram orders must be >= 1");
    }
}

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open output file: " + path);
    return out;
}

template <typename T>
void write_jsonl(const std::vector<T>& items, const std::string& path) {
    std::ofstream out = open_output(path);
    for (const T& item : items) out << to_json(item).dump() << '\n';
    if (!out) throw DataError("failed writing " + path);
}

}  // namespace

void write_mask_selections(const std::vector<MaskSelection>& selections, const std::string& path) {
    write_jsonl(selections, path);
}

void write_training_pairs(const std::vector<TrainingPair>& pairs, const std::string& path) {
    write_jsonl(pairs, path);
}

void write_summaries(const std::vector<SummaryRecord>& records, const std::string& path) {
    write_jsonl(records, path);
}

std::vector<SummaryRecord> read_summaries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open summary file: " + path);
    std::vector<SummaryRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
            SummaryRecord rec;
            rec.cluster_id = j.at("cluster_id").get<std::string>();
            rec.method = j.value("method", std::string{});
            rec.summary = j.at("summary").get<std::string>();
            records.push_back(std::move(rec));
        } catch (const json::exception& e) {
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out = open_output(path);
    out << j.dump(2) << '\n';
    if (!out) throw DataError("failed writing " + path);
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

}  // namespace maskmds
