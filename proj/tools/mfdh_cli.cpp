// mfdh: train / encode / search / eval / synth pipeline driver.
// Exit codes: 0 success, 2 usage or config error, 3 numerical error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfdh/config.hpp"
#include "mfdh/errors.hpp"
#include "mfdh/formats.hpp"
#include "mfdh/model.hpp"
#include "mfdh/pipeline.hpp"
#include "mfdh/synth.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw mfdh::io_error("cannot open output file: " + out_path);
    out << text;
}

mfdh::Modality parse_modality(const std::string& name) {
    if (name == "image") return mfdh::Modality::image;
    if (name == "text") return mfdh::Modality::text;
    throw mfdh::invalid_argument("modality must be 'image' or 'text'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-view feature discrete hashing for cross-modal retrieval"};
    app.require_subcommand(1);

    // train
    auto* train_cmd = app.add_subcommand("train", "Learn a model from a run config");
    std::string train_config;
    std::string train_out;
    std::uint64_t seed_override = 0;
    bool has_seed_override = false;
    train_cmd->add_option("--config", train_config, "Run config JSON")->required();
    train_cmd->add_option("--out", train_out, "Model output path (default <output_dir>/model.mfdh)");
    train_cmd->add_option("--seed", seed_override, "Override the config seed")
        ->each([&](const std::string&) { has_seed_override = true; });

    // encode
    auto* encode_cmd = app.add_subcommand("encode", "Encode a descriptor file to binary codes");
    std::string encode_model, encode_desc, encode_modality = "image", encode_out;
    encode_cmd->add_option("--model", encode_model, "Model file")->required();
    encode_cmd->add_option("--descriptors", encode_desc, "Descriptor file")->required();
    encode_cmd->add_option("--modality", encode_modality, "image|text")->required();
    encode_cmd->add_option("--out", encode_out, "Codes output path")->required();

    // search
    auto* search_cmd = app.add_subcommand("search", "Hamming search over a code database");
    std::string search_queries, search_db, search_out;
    std::size_t search_top_r = 0;
    int search_radius = -1;
    search_cmd->add_option("--queries", search_queries, "Query codes file")->required();
    search_cmd->add_option("--database", search_db, "Database codes file")->required();
    search_cmd->add_option("--top-r", search_top_r, "Ranked mode: results per query");
    search_cmd->add_option("--radius", search_radius, "Radius mode: maximum Hamming distance");
    search_cmd->add_option("--out", search_out, "Output TSV (stdout when omitted)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Retrieval metrics for a task");
    std::string eval_query, eval_db, eval_task = "I2T", eval_out, eval_model;
    std::vector<std::string> eval_labels;
    std::size_t eval_top_r = 0;
    eval_cmd->add_option("--query-codes", eval_query, "Query codes file")->required();
    eval_cmd->add_option("--db-codes", eval_db, "Database codes file")->required();
    eval_cmd->add_option("--labels", eval_labels, "Label file (repeatable)")->required();
    eval_cmd->add_option("--task", eval_task, "I2T|T2I|I2I|T2T");
    eval_cmd->add_option("--top-r", eval_top_r, "MAP cutoff R (0 = full database)");
    eval_cmd->add_option("--model", eval_model, "Model file; embeds its config echo");
    eval_cmd->add_option("--out", eval_out, "Metrics JSON path (curve TSV written next to it)");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic bimodal dataset");
    mfdh::SynthOptions synth_opt;
    std::string synth_out_dir;
    synth_cmd->add_option("--out", synth_out_dir, "Output directory")->required();
    synth_cmd->add_option("--seed", synth_opt.seed, "Generator seed");
    synth_cmd->add_option("--classes", synth_opt.classes, "Number of classes");
    synth_cmd->add_option("--train-pairs", synth_opt.train_pairs, "Training pairs");
    synth_cmd->add_option("--query-pairs", synth_opt.query_pairs, "Query pairs");
    synth_cmd->add_option("--image-dim", synth_opt.image_dim, "Image descriptor dimension");
    synth_cmd->add_option("--text-dim", synth_opt.text_dim, "Text descriptor dimension");
    synth_cmd->add_option("--code-length", synth_opt.code_length, "Code length in the emitted config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*train_cmd) {
            mfdh::RunConfig cfg = mfdh::load_run_config(train_config);
            if (has_seed_override) {
                cfg.seed = seed_override;
                cfg.train.seed = seed_override;
            }
            mfdh::TrainReport report;
            const mfdh::TrainState state = mfdh::run_train(cfg, &report);
            const auto model_path =
                mfdh::write_train_outputs(cfg, state, report, std::filesystem::path(train_out));
            std::cout << "model: " << model_path.string() << "\n"
                      << "iterations: " << report.iterations << "\n"
                      << "final objective: "
                      << mfdh::format_double(report.objective_trace.back()) << "\n";
        } else if (*encode_cmd) {
            const mfdh::TrainState state = mfdh::load_model(encode_model);
            const mfdh::CodesFile codes = mfdh::encode_descriptor_file(
                state, encode_desc, parse_modality(encode_modality));
            mfdh::write_codes_file(encode_out, codes);
            std::cout << "encoded " << codes.ids.size() << " samples\n";
        } else if (*search_cmd) {
            mfdh::SearchRequest request;
            request.query_codes = search_queries;
            request.db_codes = search_db;
            request.top_r = search_top_r;
            request.radius = search_radius;
            write_or_print(mfdh::run_search(request), search_out);
        } else if (*eval_cmd) {
            mfdh::EvalRequest request;
            request.query_codes = eval_query;
            request.db_codes = eval_db;
            for (const auto& p : eval_labels) request.label_files.emplace_back(p);
            request.task = eval_task;
            request.top_r = eval_top_r;
            if (!eval_model.empty()) request.config_echo = mfdh::load_model(eval_model).config_echo;
            const mfdh::EvalOutput out = mfdh::run_eval(request);
            write_or_print(mfdh::metrics_to_json(out), eval_out);
            if (!eval_out.empty()) {
                const std::filesystem::path json_path(eval_out);
                auto tsv_path = json_path;
                tsv_path.replace_extension(".pr.tsv");
                write_or_print(mfdh::curve_to_tsv(out.curve), tsv_path.string());
            }
            std::cerr << "map: " << mfdh::format_double(out.map) << "\n";
        } else if (*synth_cmd) {
            const auto paths = mfdh::generate_synth_dataset(synth_opt, synth_out_dir);
            std::cout << "config: " << paths.config.string() << "\n";
        }
    } catch (const mfdh::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const mfdh::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const mfdh::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const mfdh::error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
