#pragma once

#include <cstdint>
#include <filesystem>

#include "mfdh/types.hpp"

namespace mfdh {

/// Synthetic bimodal retrieval instance: well-separated Gaussian classes with
/// per-class descriptor scales, so all three views carry class signal.
struct SynthOptions {
    int classes = 3;
    int train_pairs = 300;
    int query_pairs = 90;
    Index image_dim = 16;
    Index text_dim = 12;
    int min_descriptors = 40;
    int max_descriptors = 80;
    Index k_image = 8;
    Index k_text = 8;
    Index code_length = 16;
    std::uint64_t seed = 7;
};

struct SynthDataset {
    std::filesystem::path image_train;
    std::filesystem::path text_train;
    std::filesystem::path image_query;
    std::filesystem::path text_query;
    std::filesystem::path labels_train;
    std::filesystem::path labels_query;
    std::filesystem::path config;  // ready-to-run training config
};

SynthDataset generate_synth_dataset(const SynthOptions& opt,
                                    const std::filesystem::path& out_dir);

}  // namespace mfdh
