#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "maskmds/centrality.hpp"
#include "maskmds/cleaning.hpp"
#include "maskmds/evaluation.hpp"

namespace maskmds {

// JSONL / JSON serialization for the pipeline's interchange formats.

struct SummaryRecord {
    std::string cluster_id;
    std::string method;
    std::string summary;
};

nlohmann::json to_json(const MaskSelection& selection);
nlohmann::json to_json(const TrainingPair& pair);
nlohmann::json to_json(const SummaryRecord& record);
nlohmann::json to_json(const CleaningReport& report);
nlohmann::json to_json(const SystemReport& report);

SystemReport system_report_from_json(const nlohmann::json& j);

/// Applies a JSON object's fields onto a CleaningConfig; unknown keys raise
/// std::invalid_argument.
void apply_config_json(const nlohmann::json& j, CleaningConfig& config);

void write_mask_selections(const std::vector<MaskSelection>& selections, const std::string& path);
void write_training_pairs(const std::vector<TrainingPair>& pairs, const std::string& path);
void write_summaries(const std::vector<SummaryRecord>& records, const std::string& path);
std::vector<SummaryRecord> read_summaries(const std::string& path);

void write_json_file(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

}  // namespace maskmds
