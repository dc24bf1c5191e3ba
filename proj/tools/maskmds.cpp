// maskmds: turns clustered document corpora into unsupervised summarization
// training data and evaluates summarizer outputs.
//
// Subcommands: clean, mask, export-pairs, summarize, evaluate, compare, report.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "maskmds/centrality.hpp"
#include "maskmds/cleaning.hpp"
#include "maskmds/corpus.hpp"
#include "maskmds/errors.hpp"
#include "maskmds/evaluation.hpp"
#include "maskmds/extractive.hpp"
#include "maskmds/io.hpp"
#include "maskmds/parallel.hpp"

namespace {

using maskmds::DataError;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct CommonOptions {
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 = available parallelism
    std::string config_path;
    std::string manifest_path;
};

void add_common_options(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--seed", common.seed, "Seed for any randomized choice")->capture_default_str();
    cmd->add_option("--threads", common.threads,
                    "Worker threads over clusters (0 = available parallelism)")
        ->envname("MASKMDS_THREADS");
    cmd->add_option("--config", common.config_path, "JSON file overriding config fields");
    cmd->add_option("--manifest", common.manifest_path,
                    "Manifest path (default: <out>.manifest.json)");
}

json load_config_json(const std::string& path) {
    if (path.empty()) return json::object();
    return maskmds::read_json_file(path);
}

/// Emits the run manifest. Lands next to the primary output, or on the error
/// stream when the run produced no file output.
void write_manifest(const CommonOptions& common, const std::string& subcommand,
                    const json& resolved_config, const json& inputs, const json& outputs,
                    double duration_seconds) {
    json manifest{{"tool", "maskmds"},
                  {"version", kVersion},
                  {"subcommand", subcommand},
                  {"seed", common.seed},
                  {"threads", common.threads},
                  {"config", resolved_config},
                  {"inputs", inputs},
                  {"outputs", outputs},
                  {"duration_seconds", duration_seconds}};
    std::string path = common.manifest_path;
    if (path.empty() && outputs.is_object()) {
        for (const auto& [key, value] : outputs.items()) {
            (void)key;
            if (value.is_string() && !value.get<std::string>().empty()) {
                path = value.get<std::string>() + ".manifest.json";
                break;
            }
        }
    }
    if (path.empty()) {
        std::cerr << manifest.dump() << '\n';
    } else {
        maskmds::write_json_file(manifest, path);
    }
}

std::string split_name_from_path(const std::string& path) {
    std::string stem = std::filesystem::path(path).stem().string();
    for (const char* split : {"train", "valid", "test"}) {
        if (stem.find(split) != std::string::npos) return split;
    }
    return stem.empty() ? "train" : stem;
}

/// The default pattern file ships next to the binary; fall back to the
/// identical built-in copy when it is not there.
void load_default_patterns(const char* argv0, maskmds::CleaningConfig& config) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::path exe = fs::canonical(fs::path(argv0), ec);
    if (!ec) {
        fs::path candidate = exe.parent_path() / "cleaning_patterns.json";
        if (fs::exists(candidate, ec) && !ec) {
            json j = maskmds::read_json_file(candidate.string());
            maskmds::apply_config_json(j, config);
            return;
        }
    }
    config.tweet_url_patterns = maskmds::default_tweet_url_patterns();
    config.metadata_patterns = maskmds::default_metadata_patterns();
}

void apply_extractive_config_json(const json& j, maskmds::ExtractiveConfig& config) {
    if (j.is_null()) return;
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "word_budget") {
            config.word_budget = value.get<std::size_t>();
        } else if (key == "lexrank_cosine_threshold") {
            config.lexrank_cosine_threshold = value.get<double>();
        } else if (key == "damping") {
            config.damping = value.get<double>();
        } else if (key == "power_iter_tol") {
            config.power_iter_tol = value.get<double>();
        } else if (key == "power_iter_max") {
            config.power_iter_max = value.get<std::size_t>();
        } else if (key == "mmr_lambda") {
            config.mmr_lambda = value.get<double>();
        } else if (key == "lede_k") {
            config.lede_k = value.get<std::size_t>();
        } else if (key == "source_doc_token_limit") {
            config.source_doc_token_limit = value.get<std::size_t>();
        } else {
            throw std::invalid_argument("unknown summarize config key: " + key);
        }
    }
    if (config.damping <= 0.0 || config.damping >= 1.0) {
        throw std::invalid_argument("damping must lie in (0, 1)");
    }
    if (config.word_budget == 0) throw std::invalid_argument("word_budget must be >= 1");
}

void apply_overlap_config_json(const json& j, maskmds::OverlapConfig& config) {
    if (j.is_null()) return;
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "clipped") {
            config.clipped = value.get<bool>();
        } else if (key == "normalization") {
            std::string mode = value.get<std::string>();
            if (mode == "candidate") {
                config.normalization = maskmds::OverlapConfig::Normalization::candidate;
            } else if (mode == "rest") {
                config.normalization = maskmds::OverlapConfig::Normalization::rest;
            } else {
                throw std::invalid_argument("normalization must be 'candidate' or 'rest'");
            }
        } else {
            throw std::invalid_argument("unknown overlap config key: " + key);
        }
    }
}

json overlap_config_to_json(const maskmds::OverlapConfig& config) {
    return json{{"ngram_order", config.ngram_order},
                {"clipped", config.clipped},
                {"normalization",
                 config.normalization == maskmds::OverlapConfig::Normalization::candidate
                     ? "candidate"
                     : "rest"}};
}

json extractive_config_to_json(const maskmds::ExtractiveConfig& config) {
    return json{{"word_budget", config.word_budget},
                {"lexrank_cosine_threshold", config.lexrank_cosine_threshold},
                {"damping", config.damping},
                {"power_iter_tol", config.power_iter_tol},
                {"power_iter_max", config.power_iter_max},
                {"mmr_lambda", config.mmr_lambda},
                {"lede_k", config.lede_k},
                {"source_doc_token_limit", config.source_doc_token_limit}};
}

json cleaning_config_to_json(const maskmds::CleaningConfig& config) {
    return json{{"min_chars", config.min_chars},
                {"tweet_url_patterns", config.tweet_url_patterns},
                {"dedup_ngram_order", config.dedup_ngram_order},
                {"dedup_jaccard_threshold", config.dedup_jaccard_threshold},
                {"repeat_ngram_order", config.repeat_ngram_order},
                {"repeat_overlap_threshold", config.repeat_overlap_threshold},
                {"metadata_patterns", config.metadata_patterns},
                {"min_cluster_size_after", config.min_cluster_size_after}};
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// --- subcommand runners ---

int run_clean(const CommonOptions& common, const char* argv0, const std::string& in_path,
              const std::string& out_path, std::string report_path, const std::string& split) {
    Stopwatch watch;
    maskmds::CleaningConfig config;
    load_default_patterns(argv0, config);
    maskmds::apply_config_json(load_config_json(common.config_path), config);

    std::string split_name = split.empty() ? split_name_from_path(in_path) : split;
    maskmds::Corpus corpus = maskmds::load_corpus(in_path, split_name);
    auto [cleaned, report] = maskmds::clean_corpus(corpus, config, common.threads);
    maskmds::save_corpus(cleaned, out_path);

    if (report_path.empty()) report_path = out_path + ".report.json";
    maskmds::write_json_file(maskmds::to_json(report), report_path);
    std::cerr << "clean: " << report.clusters_before << " -> " << report.clusters_after
              << " clusters\n";

    write_manifest(common, "clean", cleaning_config_to_json(config), json{{"in", in_path}},
                   json{{"out", out_path}, {"report", report_path}}, watch.seconds());
    return 0;
}

int run_mask(const CommonOptions& common, const std::string& in_path, const std::string& out_path,
             const std::string& strategy_name, std::size_t min_cluster_size) {
    Stopwatch watch;
    maskmds::MaskStrategy strategy = maskmds::mask_strategy_from_string(strategy_name);
    maskmds::OverlapConfig overlap;
    overlap.ngram_order = strategy == maskmds::MaskStrategy::unigram ? 1 : 2;
    apply_overlap_config_json(load_config_json(common.config_path), overlap);

    maskmds::Corpus corpus = maskmds::load_corpus(in_path, split_name_from_path(in_path));
    corpus = maskmds::filter_min_cluster_size(corpus, min_cluster_size);
    if (corpus.clusters.empty()) {
        std::cerr << "warning: no clusters remain after --min-cluster-size "
                  << min_cluster_size << "\n";
    }

    std::vector<maskmds::MaskSelection> selections(corpus.clusters.size());
    maskmds::parallel_for(corpus.clusters.size(), common.threads, [&](std::size_t i) {
        selections[i] = strategy == maskmds::MaskStrategy::random
                            ? maskmds::select_random_mask(corpus.clusters[i], common.seed)
                            : maskmds::select_mask(corpus.clusters[i], overlap);
    });
    maskmds::write_mask_selections(selections, out_path);

    json config = overlap_config_to_json(overlap);
    config["strategy"] = strategy_name;
    config["min_cluster_size"] = min_cluster_size;
    write_manifest(common, "mask", config, json{{"in", in_path}}, json{{"out", out_path}},
                   watch.seconds());
    return 0;
}

int run_export_pairs(const CommonOptions& common, const std::string& in_path,
                     const std::string& out_path, const std::string& strategy_name,
                     std::size_t min_cluster_size, std::size_t budget, std::size_t target_limit) {
    Stopwatch watch;
    maskmds::PairExportConfig config;
    config.strategy = maskmds::mask_strategy_from_string(strategy_name);
    config.seed = common.seed;
    config.budget = budget;
    config.target_limit = target_limit;

    maskmds::Corpus corpus = maskmds::load_corpus(in_path, split_name_from_path(in_path));
    corpus = maskmds::filter_min_cluster_size(corpus, min_cluster_size);
    if (corpus.clusters.empty()) {
        std::cerr << "warning: no clusters remain after --min-cluster-size "
                  << min_cluster_size << "\n";
    }

    std::vector<maskmds::TrainingPair> pairs =
        maskmds::build_training_pairs(corpus, config, common.threads);
    maskmds::write_training_pairs(pairs, out_path);

    write_manifest(common, "export-pairs",
                   json{{"strategy", strategy_name},
                        {"budget", budget},
                        {"target_limit", target_limit},
                        {"min_cluster_size", min_cluster_size}},
                   json{{"in", in_path}}, json{{"out", out_path}}, watch.seconds());
    return 0;
}

int run_summarize(const CommonOptions& common, const std::string& in_path,
                  const std::string& out_path, const std::string& method_name,
                  std::size_t word_budget, std::size_t k) {
    Stopwatch watch;
    maskmds::SummaryMethod method = maskmds::summary_method_from_string(method_name);
    maskmds::ExtractiveConfig config;
    config.word_budget = word_budget;
    config.lede_k = k;
    config.seed = common.seed;
    apply_extractive_config_json(load_config_json(common.config_path), config);

    maskmds::Corpus corpus = maskmds::load_corpus(in_path, split_name_from_path(in_path));
    std::vector<maskmds::SummaryRecord> records(corpus.clusters.size());
    maskmds::parallel_for(corpus.clusters.size(), common.threads, [&](std::size_t i) {
        std::vector<std::string> tokens = maskmds::summarize(corpus.clusters[i], method, config);
        records[i] = {corpus.clusters[i].cluster_id, method_name, maskmds::join_tokens(tokens)};
    });
    maskmds::write_summaries(records, out_path);

    write_manifest(common, "summarize", extractive_config_to_json(config), json{{"in", in_path}},
                   json{{"out", out_path}}, watch.seconds());
    return 0;
}

int run_evaluate(const CommonOptions& common, const std::string& hyp_path,
                 const std::string& ref_path, std::vector<std::size_t> limits,
                 std::string scores_out, std::string system_name) {
    Stopwatch watch;
    if (limits.empty()) limits = {100, 150, 200};
    if (!common.config_path.empty()) {
        json j = load_config_json(common.config_path);
        if (j.contains("limits")) limits = j["limits"].get<std::vector<std::size_t>>();
    }

    std::vector<maskmds::SummaryRecord> records = maskmds::read_summaries(hyp_path);
    if (records.empty()) throw DataError("no summaries in " + hyp_path);
    if (system_name.empty()) system_name = records.front().method;

    maskmds::TokenizerConfig tokenizer;
    std::map<std::string, std::vector<std::string>> summaries;
    for (const auto& rec : records) {
        if (!summaries.emplace(rec.cluster_id, maskmds::tokenize(rec.summary, tokenizer)).second) {
            throw DataError("duplicate summary for cluster '" + rec.cluster_id + "'");
        }
    }

    maskmds::Corpus corpus = maskmds::load_corpus(ref_path, split_name_from_path(ref_path));
    std::map<std::string, std::vector<std::string>> references;
    for (const auto& cluster : corpus.clusters) {
        if (cluster.gold_summary) {
            references.emplace(cluster.cluster_id, maskmds::tokenize(*cluster.gold_summary, tokenizer));
        }
    }

    maskmds::SystemReport report =
        maskmds::evaluate_system(summaries, references, limits, system_name, common.threads);

    if (scores_out.empty()) scores_out = hyp_path + ".scores.json";
    maskmds::write_json_file(maskmds::to_json(report), scores_out);

    for (const auto& cell : report.cells) {
        std::cerr << system_name << " R-" << cell.n << "@" << cell.limit << " F = "
                  << 100.0 * cell.mean_f << "\n";
    }
    std::cerr << system_name << " length " << report.length_mean << " +/- " << report.length_std
              << "\n";

    write_manifest(common, "evaluate", json{{"limits", limits}, {"system", system_name}},
                   json{{"hyp", hyp_path}, {"ref", ref_path}}, json{{"scores", scores_out}},
                   watch.seconds());
    return 0;
}

int run_compare(const CommonOptions& common, const std::string& a_path, const std::string& b_path,
                std::size_t resamples, const std::string& out_path) {
    Stopwatch watch;
    if (!common.config_path.empty()) {
        json j = load_config_json(common.config_path);
        if (j.contains("resamples")) resamples = j["resamples"].get<std::size_t>();
    }

    maskmds::SystemReport a = maskmds::system_report_from_json(maskmds::read_json_file(a_path));
    maskmds::SystemReport b = maskmds::system_report_from_json(maskmds::read_json_file(b_path));
    if (a.cluster_ids != b.cluster_ids) {
        throw DataError("score files cover different cluster sets (" + a_path + " vs " + b_path +
                        ")");
    }

    json comparisons = json::array();
    for (const maskmds::ScoreCell& cell_a : a.cells) {
        const maskmds::ScoreCell* cell_b = b.find_cell(cell_a.n, cell_a.limit);
        if (!cell_b) continue;
        double p = maskmds::paired_bootstrap(cell_a.per_cluster_f, cell_b->per_cluster_f,
                                             resamples, common.seed);
        comparisons.push_back({{"n", cell_a.n},
                               {"limit", cell_a.limit},
                               {"mean_a", cell_a.mean_f},
                               {"mean_b", cell_b->mean_f},
                               {"p_value", p}});
    }
    json result{{"a", a.system_name},
                {"b", b.system_name},
                {"resamples", resamples},
                {"hypothesis", "a better than b"},
                {"comparisons", std::move(comparisons)}};

    if (out_path.empty()) {
        std::cout << result.dump(2) << '\n';
    } else {
        maskmds::write_json_file(result, out_path);
    }

    write_manifest(common, "compare", json{{"resamples", resamples}},
                   json{{"a", a_path}, {"b", b_path}}, json{{"out", out_path}}, watch.seconds());
    return 0;
}

std::string format_score(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * fraction);
    return buf;
}

int run_report(const CommonOptions& common, const std::vector<std::string>& eval_paths,
               const std::string& md_path, const std::string& csv_path) {
    Stopwatch watch;
    std::vector<maskmds::SystemReport> reports;
    for (const auto& path : eval_paths) {
        reports.push_back(maskmds::system_report_from_json(maskmds::read_json_file(path)));
    }
    if (reports.empty()) throw DataError("report: no evaluation files given");

    std::vector<std::size_t> limits;
    for (const auto& cell : reports.front().cells) {
        if (std::find(limits.begin(), limits.end(), cell.limit) == limits.end()) {
            limits.push_back(cell.limit);
        }
    }
    std::sort(limits.begin(), limits.end());

    std::string md = "| Method |";
    std::string csv = "method";
    for (std::size_t limit : limits) {
        for (std::size_t n : {1, 2}) {
            md += " R-" + std::to_string(n) + "@" + std::to_string(limit) + " |";
            csv += ",r" + std::to_string(n) + "_" + std::to_string(limit);
        }
    }
    md += " len |\n|---|";
    csv += ",len_mean,len_std\n";
    for (std::size_t i = 0; i < limits.size() * 2; ++i) md += "---|";
    md += "---|\n";

    for (const auto& report : reports) {
        md += "| " + report.system_name + " |";
        csv += report.system_name;
        for (std::size_t limit : limits) {
            for (std::size_t n : {1, 2}) {
                const maskmds::ScoreCell* cell = report.find_cell(n, limit);
                std::string value = cell ? format_score(cell->mean_f) : "-";
                md += " " + value + " |";
                csv += "," + value;
            }
        }
        char len_buf[64];
        std::snprintf(len_buf, sizeof(len_buf), "%.0f ± %.0f", report.length_mean,
                      report.length_std);
        md += " " + std::string(len_buf) + " |\n";
        char csv_len[64];
        std::snprintf(csv_len, sizeof(csv_len), ",%.1f,%.1f\n", report.length_mean,
                      report.length_std);
        csv += csv_len;
    }

    if (md_path.empty() && csv_path.empty()) {
        std::cout << md;
    }
    if (!md_path.empty()) {
        std::ofstream out(md_path);
        if (!out) throw DataError("cannot open output file: " + md_path);
        out << md;
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw DataError("cannot open output file: " + csv_path);
        out << csv;
    }

    write_manifest(common, "report", json::object(), json{{"eval", eval_paths}},
                   json{{"md", md_path}, {"csv", csv_path}}, watch.seconds());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maskmds: lexical-centrality masking, extractive baselines, and limited-length "
                 "ROUGE evaluation for clustered document corpora"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // clean
    auto* clean_cmd = app.add_subcommand("clean", "Run the cleaning pipeline over a corpus");
    CommonOptions clean_common;
    std::string clean_in, clean_out, clean_report, clean_split;
    clean_cmd->add_option("--in", clean_in, "Input corpus JSONL")->required();
    clean_cmd->add_option("--out", clean_out, "Cleaned corpus JSONL")->required();
    clean_cmd->add_option("--report", clean_report, "Cleaning report JSON");
    clean_cmd->add_option("--split", clean_split, "Split label (default: from filename)");
    add_common_options(clean_cmd, clean_common);

    // mask
    auto* mask_cmd = app.add_subcommand("mask", "Select the mask candidate for each cluster");
    CommonOptions mask_common;
    std::string mask_in, mask_out, mask_strategy = "bigram";
    std::size_t mask_min_size = 2;
    mask_cmd->add_option("--in", mask_in, "Input corpus JSONL")->required();
    mask_cmd->add_option("--out", mask_out, "Mask selection JSONL")->required();
    mask_cmd->add_option("--strategy", mask_strategy, "unigram | bigram | random")
        ->check(CLI::IsMember({"unigram", "bigram", "random"}))
        ->capture_default_str();
    mask_cmd->add_option("--min-cluster-size", mask_min_size, "Drop smaller clusters first")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}))
        ->capture_default_str();
    add_common_options(mask_cmd, mask_common);

    // export-pairs
    auto* pairs_cmd = app.add_subcommand("export-pairs", "Emit training pairs (src/tgt JSONL)");
    CommonOptions pairs_common;
    std::string pairs_in, pairs_out, pairs_strategy = "bigram";
    std::size_t pairs_min_size = 2, pairs_budget = 500, pairs_target_limit = 300;
    pairs_cmd->add_option("--in", pairs_in, "Input corpus JSONL")->required();
    pairs_cmd->add_option("--out", pairs_out, "Training pair JSONL")->required();
    pairs_cmd->add_option("--strategy", pairs_strategy, "unigram | bigram | random")
        ->check(CLI::IsMember({"unigram", "bigram", "random"}))
        ->capture_default_str();
    pairs_cmd->add_option("--min-cluster-size", pairs_min_size, "Drop smaller clusters first")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}))
        ->capture_default_str();
    pairs_cmd->add_option("--budget", pairs_budget, "Mega-document token budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    pairs_cmd->add_option("--target-limit", pairs_target_limit, "Masked-target token cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common_options(pairs_cmd, pairs_common);

    // summarize
    auto* summ_cmd = app.add_subcommand("summarize", "Run an unsupervised baseline summarizer");
    CommonOptions summ_common;
    std::string summ_in, summ_out, summ_method = "lede";
    std::size_t summ_budget = 250, summ_k = 3;
    summ_cmd->add_option("--in", summ_in, "Input corpus JSONL")->required();
    summ_cmd->add_option("--out", summ_out, "Summary JSONL")->required();
    summ_cmd
        ->add_option("--method", summ_method,
                     "lede | lexrank | textrank | mmr | best-overlap | random-doc")
        ->check(CLI::IsMember({"lede", "lexrank", "textrank", "mmr", "best-overlap", "random-doc"}))
        ->capture_default_str();
    summ_cmd->add_option("--budget", summ_budget, "Word budget for sentence selection")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    summ_cmd->add_option("--k", summ_k, "Sentences per document for lede")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common_options(summ_cmd, summ_common);

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Limited-length ROUGE against gold summaries");
    CommonOptions eval_common;
    std::string eval_hyp, eval_ref, eval_scores, eval_name;
    std::vector<std::size_t> eval_limits;
    eval_cmd->add_option("--hyp", eval_hyp, "Summary JSONL to score")->required();
    eval_cmd->add_option("--ref", eval_ref, "Corpus JSONL holding gold summaries")->required();
    eval_cmd->add_option("--limits", eval_limits, "Word-truncation lengths (default 100 150 200)")
        ->delimiter(',');
    eval_cmd->add_option("--scores-out", eval_scores, "Retained per-cluster score JSON");
    eval_cmd->add_option("--name", eval_name, "System name (default: method field)");
    add_common_options(eval_cmd, eval_common);

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "Paired bootstrap test between two score files");
    CommonOptions cmp_common;
    std::string cmp_a, cmp_b, cmp_out;
    std::size_t cmp_resamples = 1000;
    cmp_cmd->add_option("--a", cmp_a, "Score JSON for system A")->required();
    cmp_cmd->add_option("--b", cmp_b, "Score JSON for system B")->required();
    cmp_cmd->add_option("--resamples", cmp_resamples, "Bootstrap resamples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmp_cmd->add_option("--out", cmp_out, "Output JSON (default: stdout)");
    add_common_options(cmp_cmd, cmp_common);

    // report
    auto* report_cmd = app.add_subcommand("report", "Render evaluation tables (Markdown/CSV)");
    CommonOptions report_common;
    std::vector<std::string> report_evals;
    std::string report_md, report_csv;
    report_cmd->add_option("--eval", report_evals, "Evaluation score JSON files")->required();
    report_cmd->add_option("--md", report_md, "Markdown output path (default: stdout)");
    report_cmd->add_option("--csv", report_csv, "CSV output path");
    add_common_options(report_cmd, report_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (clean_cmd->parsed()) {
            return run_clean(clean_common, argv[0], clean_in, clean_out, clean_report, clean_split);
        }
        if (mask_cmd->parsed()) {
            return run_mask(mask_common, mask_in, mask_out, mask_strategy, mask_min_size);
        }
        if (pairs_cmd->parsed()) {
            return run_export_pairs(pairs_common, pairs_in, pairs_out, pairs_strategy,
                                    pairs_min_size, pairs_budget, pairs_target_limit);
        }
        if (summ_cmd->parsed()) {
            return run_summarize(summ_common, summ_in, summ_out, summ_method, summ_budget, summ_k);
        }
        if (eval_cmd->parsed()) {
            return run_evaluate(eval_common, eval_hyp, eval_ref, eval_limits, eval_scores,
                                eval_name);
        }
        if (cmp_cmd->parsed()) {
            return run_compare(cmp_common, cmp_a, cmp_b, cmp_resamples, cmp_out);
        }
        if (report_cmd->parsed()) {
            return run_report(report_common, report_evals, report_md, report_csv);
        }
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
