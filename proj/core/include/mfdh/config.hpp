#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mfdh/kernelization.hpp"
#include "mfdh/optimizer.hpp"
#include "mfdh/types.hpp"

namespace mfdh {

struct AnchorConfig {
    std::array<Index, 3> counts{0, 0, 0};  // 0 = auto: min(n, 500)
    AnchorMethod method = AnchorMethod::random;
};

struct EvalSettings {
    std::vector<std::string> tasks{"I2T", "T2I"};
    std::size_t top_r = 0;  // 0 = full database
};

/// Declarative run configuration (JSON file). Only the paths and dictionary
/// sizes are required; everything else carries the library defaults.
struct RunConfig {
    std::filesystem::path image_descriptors;
    std::filesystem::path text_descriptors;
    std::filesystem::path labels;
    std::filesystem::path output_dir;

    Index k_image = 0;
    Index k_text = 0;
    double eps_spd = 1e-6;
    AnchorConfig anchors;
    KernelCombination combo;
    ViewWeights eta_image{1.0, 1.0, 1.0};
    ViewWeights eta_text{1.0, 1.0, 1.0};
    TrainConfig train;
    EvalSettings eval;
    std::uint64_t seed = 0;

    std::string raw_text;  // the config file bytes, echoed into outputs

    void validate_ranges() const;
    void validate_paths_exist() const;
};

/// Parses the JSON text; relative paths are resolved against `base_dir`.
/// Throws config_error on schema violations.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);

/// Reads, parses and validates (including path existence).
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace mfdh
