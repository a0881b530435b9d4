#include "mfdh/synth.hpp"

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfdh/errors.hpp"
#include "mfdh/formats.hpp"
#include "mfdh/rng.hpp"

namespace mfdh {

namespace {

struct ClassModel {
    Vector center;  // class mean in descriptor space
    Vector scale;   // per-dimension descriptor spread
};

// Scales tuned so the within-class structure sits inside an rbf bandwidth of
// 1 while classes stay essentially disjoint in every view: class centers
// spread 0.8 per dimension, per-sample jitter 0.12, descriptor noise 0.35
// with a per-class per-dimension scale profile (this is what separates the
// covariance view).
std::vector<ClassModel> make_classes(Rng& rng, int classes, Index dim) {
    std::vector<ClassModel> models;
    models.reserve(static_cast<std::size_t>(classes));
    for (int c = 0; c < classes; ++c) {
        ClassModel m;
        m.center.resize(dim);
        for (Index r = 0; r < dim; ++r) m.center(r) = 0.8 * rng.normal();
        m.scale.resize(dim);
        for (Index r = 0; r < dim; ++r) m.scale(r) = 0.6 + rng.next_unit();
        models.push_back(std::move(m));
    }
    return models;
}

DescriptorSet make_sample(Rng& rng, const SynthOptions& opt, const ClassModel& model,
                          std::string id) {
    const Index dim = model.center.size();
    Vector sample_center(dim);
    for (Index r = 0; r < dim; ++r) sample_center(r) = model.center(r) + 0.12 * rng.normal();

    const int count =
        opt.min_descriptors +
        static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.max_descriptors -
                                                              opt.min_descriptors + 1)));
    DescriptorSet set;
    set.sample_id = std::move(id);
    set.vectors.resize(dim, count);
    for (Index j = 0; j < count; ++j)
        for (Index r = 0; r < dim; ++r)
            set.vectors(r, j) = sample_center(r) + 0.35 * model.scale(r) * rng.normal();
    return set;
}

std::string padded_id(const char* prefix, int i) {
    std::string num = std::to_string(i);
    return std::string(prefix) + std::string(num.size() >= 5 ? 0 : 5 - num.size(), '0') + num;
}

}  // namespace

SynthDataset generate_synth_dataset(const SynthOptions& opt,
                                    const std::filesystem::path& out_dir) {
    if (opt.classes < 2) throw invalid_argument("synth: need at least 2 classes");
    if (opt.train_pairs < opt.classes || opt.query_pairs < 1)
        throw invalid_argument("synth: too few pairs");
    if (opt.min_descriptors < 2 || opt.max_descriptors < opt.min_descriptors)
        throw invalid_argument("synth: descriptor count range invalid");

    std::filesystem::create_directories(out_dir);
    Rng rng(opt.seed);

    const auto image_classes = make_classes(rng, opt.classes, opt.image_dim);
    const auto text_classes = make_classes(rng, opt.classes, opt.text_dim);

    const auto emit = [&](const char* prefix, int pairs, DescriptorFile& img, DescriptorFile& txt,
                          LabelTable& labels) {
        img.dim = opt.image_dim;
        txt.dim = opt.text_dim;
        for (int i = 0; i < pairs; ++i) {
            const int cls = i % opt.classes;
            std::string id = padded_id(prefix, i);
            img.sets.push_back(make_sample(rng, opt, image_classes[static_cast<std::size_t>(cls)], id));
            txt.sets.push_back(make_sample(rng, opt, text_classes[static_cast<std::size_t>(cls)], id));
            labels.add(std::move(id), {"class" + std::to_string(cls)});
        }
    };

    DescriptorFile img_train, txt_train, img_query, txt_query;
    LabelTable labels_train, labels_query;
    emit("trn", opt.train_pairs, img_train, txt_train, labels_train);
    emit("qry", opt.query_pairs, img_query, txt_query, labels_query);

    SynthDataset paths;
    paths.image_train = out_dir / "image_train.desc";
    paths.text_train = out_dir / "text_train.desc";
    paths.image_query = out_dir / "image_query.desc";
    paths.text_query = out_dir / "text_query.desc";
    paths.labels_train = out_dir / "labels_train.tsv";
    paths.labels_query = out_dir / "labels_query.tsv";
    paths.config = out_dir / "config.json";

    write_descriptor_file(paths.image_train, img_train);
    write_descriptor_file(paths.text_train, txt_train);
    write_descriptor_file(paths.image_query, img_query);
    write_descriptor_file(paths.text_query, txt_query);
    write_labels_file(paths.labels_train, labels_train);
    write_labels_file(paths.labels_query, labels_query);

    // Anchor counts stay well below the sample count. The kernel map is an
    // approximation over d_r anchor samples; once the stacked feature
    // dimension reaches n, the projection step can reproduce any code matrix
    // exactly and the code update degenerates into keeping its own
    // initialization.
    const Index anchors_per_view =
        std::min<Index>(16, std::max<Index>(4, opt.train_pairs / 8));

    nlohmann::json j;
    j["seed"] = opt.seed;
    j["paths"] = {{"image_descriptors", "image_train.desc"},
                  {"text_descriptors", "text_train.desc"},
                  {"labels", "labels_train.tsv"},
                  {"output_dir", "out"}};
    j["dictionary"] = {{"k_image", opt.k_image}, {"k_text", opt.k_text}};
    j["eps_spd"] = 1e-6;
    j["anchors"] = {{"counts", {anchors_per_view, anchors_per_view, anchors_per_view}},
                    {"method", "random"}};
    j["kernels"] = {{"shared", true},
                    {"views",
                     {{{"kind", "rbf"}, {"sigma", 1.0}, {"a", 1.0}, {"s", 5}},
                      {{"kind", "rbf"}, {"sigma", 1.0}, {"a", 1.0}, {"s", 5}},
                      {{"kind", "rbf"}, {"sigma", 1.0}, {"a", 1.0}, {"s", 5}}}}};
    j["eta"] = {{"image", {1.0, 1.0, 1.0}}, {"text", {1.0, 1.0, 1.0}}};
    j["train"] = {{"code_length", opt.code_length}, {"alpha", 0.1},    {"beta", 0.1},
                  {"lambda", 0.01},                 {"max_outer_iters", 50},
                  {"dcc_sweeps", 3},                {"tol_rel", 1e-5}};
    j["eval"] = {{"tasks", {"I2T", "T2I"}}, {"top_r", 0}};

    std::ofstream out(paths.config, std::ios::binary);
    if (!out) throw io_error("synth: cannot write config file");
    out << j.dump(2) << "\n";
    return paths;
}

}  // namespace mfdh
