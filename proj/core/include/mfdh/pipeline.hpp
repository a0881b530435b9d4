#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mfdh/config.hpp"
#include "mfdh/evaluation.hpp"
#include "mfdh/formats.hpp"
#include "mfdh/model.hpp"

namespace mfdh {

struct TrainReport {
    std::vector<double> objective_trace;
    int iterations = 0;
    double wall_seconds = 0.0;
};

/// Full training stage: ingest descriptors and labels, learn dictionaries,
/// build multi-view features, select anchors, assemble the kernel matrices
/// and run the optimizer.
TrainState run_train(const RunConfig& cfg, TrainReport* report = nullptr);

/// Writes the model, the two dictionary CSVs and training_report.json into
/// cfg.output_dir; returns the model path.
std::filesystem::path write_train_outputs(const RunConfig& cfg, const TrainState& state,
                                          const TrainReport& report,
                                          const std::filesystem::path& model_out = {});

/// Encodes every sample of a descriptor file with the model's projections.
CodesFile encode_descriptor_file(const TrainState& state,
                                 const std::filesystem::path& descriptor_path, Modality modality);

struct EvalRequest {
    std::filesystem::path query_codes;
    std::filesystem::path db_codes;
    std::vector<std::filesystem::path> label_files;
    std::string task = "I2T";
    std::size_t top_r = 0;  // 0 = full database
    std::string config_echo;
};

struct EvalOutput {
    std::string task;
    Index code_length = 0;
    std::size_t top_r = 0;
    RelevanceMode mode = RelevanceMode::single_label;
    double map = 0.0;
    PrCurve curve;
    std::string config_echo;
};

EvalOutput run_eval(const EvalRequest& request);

/// Metrics as a JSON document and the curve as flat TSV.
std::string metrics_to_json(const EvalOutput& out);
std::string curve_to_tsv(const PrCurve& curve);

struct SearchRequest {
    std::filesystem::path query_codes;
    std::filesystem::path db_codes;
    std::size_t top_r = 0;  // ranked mode when > 0
    int radius = -1;        // radius mode when >= 0
};

/// TSV lines <query_id>\t<db_id>\t<distance>; ranked order per query in
/// ranked mode, insertion order in radius mode.
std::string run_search(const SearchRequest& request);

}  // namespace mfdh
