#include "mfdh/config.hpp"

#include <fstream>

#include <json.hpp>

#include "mfdh/errors.hpp"

namespace mfdh {

namespace {

using nlohmann::json;

KernelFunctionSpec parse_spec(const json& j) {
    KernelFunctionSpec spec;
    const std::string kind = j.value("kind", "rbf");
    if (kind == "rbf")
        spec.kind = KernelKind::rbf;
    else if (kind == "polynomial")
        spec.kind = KernelKind::polynomial;
    else
        throw config_error("kernels: unknown kind '" + kind + "'");
    spec.sigma = j.value("sigma", 1.0);
    spec.a = j.value("a", 1.0);
    spec.s = j.value("s", 5);
    return spec;
}

std::array<KernelFunctionSpec, 3> parse_spec_array(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 3)
        throw config_error(std::string(where) + ": expected an array of three kernel specs");
    return {parse_spec(j[0]), parse_spec(j[1]), parse_spec(j[2])};
}

ViewWeights parse_weights(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 3)
        throw config_error(std::string(where) + ": expected an array of three weights");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

}  // namespace

void RunConfig::validate_ranges() const {
    if (k_image < 1 || k_text < 1)
        throw config_error("dictionary sizes k_image and k_text must be >= 1");
    if (eps_spd < 0.0) throw config_error("eps_spd must be >= 0");
    for (const Index c : anchors.counts)
        if (c < 0) throw config_error("anchor counts must be >= 0 (0 = auto)");
    for (const double e : eta_image)
        if (!(e > 0.0)) throw config_error("eta weights must be > 0");
    for (const double e : eta_text)
        if (!(e > 0.0)) throw config_error("eta weights must be > 0");
    try {
        combo.validate();
        train.validate();
    } catch (const invalid_argument& e) {
        throw config_error(e.what());
    }
    for (const auto& task : eval.tasks)
        if (task != "I2T" && task != "T2I" && task != "I2I" && task != "T2T")
            throw config_error("eval.tasks entries must be one of I2T, T2I, I2I, T2T");
}

void RunConfig::validate_paths_exist() const {
    for (const auto* p : {&image_descriptors, &text_descriptors, &labels}) {
        if (!std::filesystem::exists(*p))
            throw config_error("referenced path does not exist: " + p->string());
    }
}

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    cfg.raw_text = text;
    try {
        if (!j.contains("paths")) throw config_error("missing 'paths' section");
        const auto& paths = j.at("paths");
        cfg.image_descriptors = resolve(base_dir, paths.at("image_descriptors").get<std::string>());
        cfg.text_descriptors = resolve(base_dir, paths.at("text_descriptors").get<std::string>());
        cfg.labels = resolve(base_dir, paths.at("labels").get<std::string>());
        cfg.output_dir = resolve(base_dir, paths.value("output_dir", std::string("out")));

        if (!j.contains("dictionary")) throw config_error("missing 'dictionary' section");
        cfg.k_image = j.at("dictionary").at("k_image").get<Index>();
        cfg.k_text = j.at("dictionary").at("k_text").get<Index>();

        cfg.eps_spd = j.value("eps_spd", 1e-6);
        cfg.seed = j.value("seed", std::uint64_t{0});

        if (j.contains("anchors")) {
            const auto& a = j.at("anchors");
            if (a.contains("counts")) {
                const auto& counts = a.at("counts");
                if (!counts.is_array() || counts.size() != 3)
                    throw config_error("anchors.counts must be an array of three integers");
                for (int r = 0; r < 3; ++r)
                    cfg.anchors.counts[static_cast<std::size_t>(r)] = counts[r].get<Index>();
            }
            const std::string method = a.value("method", "random");
            if (method == "random")
                cfg.anchors.method = AnchorMethod::random;
            else if (method == "kmeans")
                cfg.anchors.method = AnchorMethod::kmeans;
            else
                throw config_error("anchors.method must be 'random' or 'kmeans'");
        }

        if (j.contains("kernels")) {
            const auto& k = j.at("kernels");
            cfg.combo.shared_across_modalities = k.value("shared", true);
            if (k.contains("views")) {
                cfg.combo.image = parse_spec_array(k.at("views"), "kernels.views");
                cfg.combo.text = cfg.combo.image;
            } else {
                if (k.contains("image")) cfg.combo.image = parse_spec_array(k.at("image"), "kernels.image");
                if (k.contains("text")) cfg.combo.text = parse_spec_array(k.at("text"), "kernels.text");
            }
        }

        if (j.contains("eta")) {
            const auto& e = j.at("eta");
            if (e.contains("image")) cfg.eta_image = parse_weights(e.at("image"), "eta.image");
            if (e.contains("text")) cfg.eta_text = parse_weights(e.at("text"), "eta.text");
        }

        if (j.contains("train")) {
            const auto& t = j.at("train");
            cfg.train.code_length = t.value("code_length", cfg.train.code_length);
            cfg.train.alpha = t.value("alpha", cfg.train.alpha);
            cfg.train.beta = t.value("beta", cfg.train.beta);
            cfg.train.lambda = t.value("lambda", cfg.train.lambda);
            cfg.train.max_outer_iters = t.value("max_outer_iters", cfg.train.max_outer_iters);
            cfg.train.dcc_sweeps = t.value("dcc_sweeps", cfg.train.dcc_sweeps);
            cfg.train.tol_rel = t.value("tol_rel", cfg.train.tol_rel);
        }
        cfg.train.seed = cfg.seed;

        if (j.contains("eval")) {
            const auto& e = j.at("eval");
            if (e.contains("tasks")) cfg.eval.tasks = e.at("tasks").get<std::vector<std::string>>();
            cfg.eval.top_r = e.value("top_r", cfg.eval.top_r);
        }
    } catch (const json::exception& e) {
        throw config_error(std::string("config schema error: ") + e.what());
    }

    cfg.validate_ranges();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    RunConfig cfg = parse_run_config(text, path.parent_path());
    cfg.validate_paths_exist();
    return cfg;
}

}  // namespace mfdh
