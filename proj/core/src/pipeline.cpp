#include "mfdh/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <unordered_map>

#include <json.hpp>

#include "mfdh/errors.hpp"
#include "mfdh/rng.hpp"

namespace mfdh {

namespace {

// fixed sub-seed streams so stages stay independent of each other's draw counts
enum SeedStream : std::uint64_t {
    kDictImage = 0,
    kDictText = 1,
    kAnchorsImage = 2,
    kAnchorsText = 3,
};

std::array<Index, 3> resolve_anchor_counts(const AnchorConfig& cfg, Index n) {
    std::array<Index, 3> counts{};
    for (std::size_t r = 0; r < 3; ++r) {
        const Index want = cfg.counts[r];
        counts[r] = want == 0 ? std::min<Index>(n, 500) : want;
    }
    return counts;
}

std::vector<MultiViewDescriptor> build_views(const std::vector<DescriptorSet>& sets,
                                             const Dictionary& dict, double eps_spd) {
    std::vector<MultiViewDescriptor> views;
    views.reserve(sets.size());
    for (const auto& set : sets) views.push_back(build_multiview(set, dict, eps_spd));
    return views;
}

/// Pairs the text sets with the image file's sample order.
std::vector<DescriptorSet> align_to(const std::vector<std::string>& order,
                                    std::vector<DescriptorSet> sets, const char* modality) {
    std::unordered_map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < sets.size(); ++i) by_id.emplace(sets[i].sample_id, i);
    if (by_id.size() != sets.size())
        throw io_error(std::string(modality) + " descriptors: duplicate sample ids");
    if (sets.size() != order.size())
        throw io_error(std::string(modality) +
                       " descriptors: sample count differs from image modality");
    std::vector<DescriptorSet> aligned;
    aligned.reserve(order.size());
    for (const auto& id : order) {
        const auto it = by_id.find(id);
        if (it == by_id.end())
            throw io_error(std::string(modality) + " descriptors: missing sample '" + id + "'");
        aligned.push_back(std::move(sets[it->second]));
    }
    return aligned;
}

Matrix build_label_matrix(const std::vector<std::string>& order, const LabelTable& table) {
    std::map<std::string, Index> classes;  // sorted for a deterministic row order
    for (const auto& id : order) {
        const auto* labels = table.find(id);
        if (!labels) throw io_error("labels: missing sample '" + id + "'");
        for (const auto& label : *labels) classes.emplace(label, 0);
    }
    Index row = 0;
    for (auto& [label, index] : classes) index = row++;

    Matrix y = Matrix::Zero(static_cast<Index>(classes.size()), static_cast<Index>(order.size()));
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& label : *table.find(order[i]))
            y(classes.at(label), static_cast<Index>(i)) = 1.0;
    return y;
}

struct LabeledCodes {
    CodesFile codes;
    std::vector<std::vector<int>> label_ids;
};

/// Maps label tokens of both collections to shared integer ids (sorted token
/// order) and reports whether every set is a singleton.
std::pair<LabeledCodes, LabeledCodes> attach_labels(CodesFile query, CodesFile db,
                                                    const LabelTable& table, bool* all_single) {
    std::map<std::string, int> token_ids;
    const auto collect = [&](const CodesFile& file) {
        for (const auto& id : file.ids) {
            const auto* labels = table.find(id);
            if (!labels) throw io_error("labels: missing sample '" + id + "'");
            for (const auto& label : *labels) token_ids.emplace(label, 0);
        }
    };
    collect(query);
    collect(db);
    int next = 0;
    for (auto& [token, id] : token_ids) id = next++;

    *all_single = true;
    const auto convert = [&](CodesFile file) {
        LabeledCodes out;
        out.label_ids.reserve(file.ids.size());
        for (const auto& id : file.ids) {
            const auto& labels = *table.find(id);
            if (labels.size() != 1) *all_single = false;
            std::vector<int> ids;
            ids.reserve(labels.size());
            for (const auto& label : labels) ids.push_back(token_ids.at(label));
            out.label_ids.push_back(std::move(ids));
        }
        out.codes = std::move(file);
        return out;
    };
    auto q = convert(std::move(query));
    auto d = convert(std::move(db));
    return {std::move(q), std::move(d)};
}

}  // namespace

TrainState run_train(const RunConfig& cfg, TrainReport* report) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate_ranges();

    DescriptorFile img = read_descriptor_file(cfg.image_descriptors);
    DescriptorFile txt = read_descriptor_file(cfg.text_descriptors);
    if (img.sets.empty()) throw invalid_argument("train: image descriptor file has no samples");

    std::vector<std::string> order;
    order.reserve(img.sets.size());
    for (const auto& set : img.sets) order.push_back(set.sample_id);
    {
        std::unordered_map<std::string, std::size_t> seen;
        for (std::size_t i = 0; i < order.size(); ++i)
            if (!seen.emplace(order[i], i).second)
                throw io_error("image descriptors: duplicate sample ids");
    }
    txt.sets = align_to(order, std::move(txt.sets), "text");

    const LabelTable labels = read_labels_file(cfg.labels);
    const Matrix y = build_label_matrix(order, labels);

    TrainState state;
    state.cfg = cfg.train;
    state.combo = cfg.combo;
    state.eta_img = cfg.eta_image;
    state.eta_txt = cfg.eta_text;
    state.eps_spd = cfg.eps_spd;
    state.config_echo = cfg.raw_text;

    state.dict_img = learn_dictionary(img.sets, cfg.k_image, mix_seed(cfg.seed, kDictImage));
    state.dict_txt = learn_dictionary(txt.sets, cfg.k_text, mix_seed(cfg.seed, kDictText));

    const auto img_views = build_views(img.sets, state.dict_img, cfg.eps_spd);
    const auto txt_views = build_views(txt.sets, state.dict_txt, cfg.eps_spd);

    const auto n = static_cast<Index>(order.size());
    const auto counts = resolve_anchor_counts(cfg.anchors, n);
    state.anchors_img =
        select_anchors(img_views, counts, mix_seed(cfg.seed, kAnchorsImage), cfg.anchors.method);
    state.anchors_txt =
        select_anchors(txt_views, counts, mix_seed(cfg.seed, kAnchorsText), cfg.anchors.method);

    const Matrix psi = build_kernel_matrix(img_views, state.anchors_img, cfg.combo.image,
                                           cfg.eta_image);
    const Matrix phi = build_kernel_matrix(txt_views, state.anchors_txt, cfg.combo.text,
                                           cfg.eta_text);

    TrainResult result = train(psi, phi, y, cfg.train);
    state.b = std::move(result.b);
    state.p_img = std::move(result.p_img);
    state.p_txt = std::move(result.p_txt);
    state.w = std::move(result.w);
    state.objective_trace = std::move(result.objective_trace);

    if (report) {
        report->objective_trace = state.objective_trace;
        report->iterations = result.iterations;
        report->wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return state;
}

std::filesystem::path write_train_outputs(const RunConfig& cfg, const TrainState& state,
                                          const TrainReport& report,
                                          const std::filesystem::path& model_out) {
    std::filesystem::create_directories(cfg.output_dir);
    const auto model_path = model_out.empty() ? cfg.output_dir / "model.mfdh" : model_out;
    save_model(state, model_path);
    write_dictionary_csv(cfg.output_dir / "dictionary_image.csv", state.dict_img);
    write_dictionary_csv(cfg.output_dir / "dictionary_text.csv", state.dict_txt);

    nlohmann::json j;
    j["objective_trace"] = report.objective_trace;
    j["iterations"] = report.iterations;
    j["wall_seconds"] = report.wall_seconds;
    j["model"] = model_path.string();
    try {
        j["config_echo"] = nlohmann::json::parse(cfg.raw_text);
    } catch (const nlohmann::json::exception&) {
        j["config_echo"] = cfg.raw_text;
    }
    std::ofstream out(cfg.output_dir / "training_report.json", std::ios::binary);
    if (!out) throw io_error("cannot write training report");
    out << j.dump(2) << "\n";
    return model_path;
}

CodesFile encode_descriptor_file(const TrainState& state,
                                 const std::filesystem::path& descriptor_path, Modality modality) {
    const DescriptorFile file = read_descriptor_file(descriptor_path);
    const Dictionary& dict = state.dictionary(modality);
    if (file.dim != dict.dim())
        throw invalid_argument("encode: descriptor dimension " + std::to_string(file.dim) +
                               " does not match the model's " + std::to_string(dict.dim()));
    CodesFile codes;
    codes.code_length = state.code_length();
    codes.ids.reserve(file.sets.size());
    codes.codes.reserve(file.sets.size());
    for (const auto& set : file.sets) {
        codes.ids.push_back(set.sample_id);
        codes.codes.push_back(
            encode(build_multiview(set, dict, state.eps_spd), state, modality));
    }
    return codes;
}

EvalOutput run_eval(const EvalRequest& request) {
    CodesFile query = read_codes_file(request.query_codes);
    CodesFile db = read_codes_file(request.db_codes);
    if (query.code_length != db.code_length)
        throw invalid_argument("eval: query and database code lengths differ");
    if (request.label_files.empty()) throw invalid_argument("eval: no label files");

    LabelTable table;
    for (const auto& path : request.label_files) table.merge(read_labels_file(path));

    bool all_single = true;
    auto [q, d] = attach_labels(std::move(query), std::move(db), table, &all_single);
    const RelevanceMode mode =
        all_single ? RelevanceMode::single_label : RelevanceMode::multi_label;
    const RelevanceJudge judge(mode, std::move(q.label_ids), std::move(d.label_ids));

    HammingIndex index;
    index.code_length = d.codes.code_length;
    for (std::size_t i = 0; i < d.codes.ids.size(); ++i)
        index.add(d.codes.ids[i], std::move(d.codes.codes[i]));

    EvalOutput out;
    out.task = request.task;
    out.code_length = index.code_length;
    out.top_r = request.top_r == 0 ? index.size() : request.top_r;
    out.mode = mode;
    out.config_echo = request.config_echo;
    out.map = mean_average_precision(q.codes.codes, index, judge, out.top_r);
    out.curve = pr_curve(q.codes.codes, index, judge);
    return out;
}

std::string metrics_to_json(const EvalOutput& out) {
    nlohmann::json j;
    j["task"] = out.task;
    j["L"] = out.code_length;
    j["R"] = out.top_r;
    j["map"] = out.map;
    j["relevance_mode"] =
        out.mode == RelevanceMode::single_label ? "single_label" : "multi_label";
    j["precision_pooling"] = "micro";  // empty per-query retrievals pool out
    j["pr_curve"] = nlohmann::json::array();
    for (const auto& p : out.curve.points)
        j["pr_curve"].push_back({{"r", p.radius}, {"precision", p.precision}, {"recall", p.recall}});
    j["omitted_radii"] = out.curve.omitted_radii;
    if (!out.config_echo.empty()) {
        try {
            j["config_echo"] = nlohmann::json::parse(out.config_echo);
        } catch (const nlohmann::json::exception&) {
            j["config_echo"] = out.config_echo;
        }
    }
    return j.dump(2) + "\n";
}

std::string curve_to_tsv(const PrCurve& curve) {
    std::string out = "radius\tprecision\trecall\n";
    for (const auto& p : curve.points) {
        out += std::to_string(p.radius);
        out.push_back('\t');
        out += format_double(p.precision);
        out.push_back('\t');
        out += format_double(p.recall);
        out.push_back('\n');
    }
    return out;
}

std::string run_search(const SearchRequest& request) {
    if ((request.top_r > 0) == (request.radius >= 0))
        throw invalid_argument("search: exactly one of top_r or radius must be set");
    const CodesFile query = read_codes_file(request.query_codes);
    const CodesFile db = read_codes_file(request.db_codes);
    if (query.code_length != db.code_length)
        throw invalid_argument("search: query and database code lengths differ");

    HammingIndex index;
    index.code_length = db.code_length;
    for (std::size_t i = 0; i < db.ids.size(); ++i) index.add(db.ids[i], db.codes[i]);

    std::string out;
    for (std::size_t qi = 0; qi < query.ids.size(); ++qi) {
        if (request.top_r > 0) {
            for (const auto& hit : search_ranked(query.codes[qi], index, request.top_r)) {
                out += query.ids[qi];
                out.push_back('\t');
                out += index.ids[hit.item];
                out.push_back('\t');
                out += std::to_string(hit.distance);
                out.push_back('\n');
            }
        } else {
            for (const std::size_t item : search_radius(query.codes[qi], index, request.radius)) {
                out += query.ids[qi];
                out.push_back('\t');
                out += index.ids[item];
                out.push_back('\t');
                out += std::to_string(hamming_distance(query.codes[qi], index.codes[item]));
                out.push_back('\n');
            }
        }
    }
    return out;
}

}  // namespace mfdh
