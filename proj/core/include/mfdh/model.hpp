#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mfdh/descriptors.hpp"
#include "mfdh/kernelization.hpp"
#include "mfdh/optimizer.hpp"
#include "mfdh/types.hpp"

namespace mfdh {

/// Everything needed to encode and search after training: the learned
/// quantities plus the frozen anchor sets, dictionaries and kernel config.
struct TrainState {
    // learned
    Matrix b;      // L x n
    Matrix p_img;  // L x D
    Matrix p_txt;  // L x D
    Matrix w;      // L x c
    std::vector<double> objective_trace;

    // frozen feature machinery
    AnchorSet anchors_img;
    AnchorSet anchors_txt;
    KernelCombination combo;
    ViewWeights eta_img{1.0, 1.0, 1.0};
    ViewWeights eta_txt{1.0, 1.0, 1.0};
    Dictionary dict_img;
    Dictionary dict_txt;
    double eps_spd = 1e-6;

    TrainConfig cfg;
    std::string config_echo;  // raw run-config text, may be empty

    Index code_length() const { return b.rows(); }
    Index sample_count() const { return b.cols(); }
    Index feature_dim() const { return p_img.cols(); }
    Index class_count() const { return w.cols(); }

    const AnchorSet& anchors(Modality m) const {
        return m == Modality::image ? anchors_img : anchors_txt;
    }
    const Matrix& projection(Modality m) const { return m == Modality::image ? p_img : p_txt; }
    const ViewWeights& eta(Modality m) const { return m == Modality::image ? eta_img : eta_txt; }
    const Dictionary& dictionary(Modality m) const {
        return m == Modality::image ? dict_img : dict_txt;
    }
};

/// Versioned binary model format ("MFDH-MODEL v1"): header line, dimension
/// block, row-major little-endian f64 payloads for the projections and
/// classifier, packed bitset for B, both anchor sets, then the kernel config,
/// dictionaries and config echo. Byte-exact round trip.
std::string serialize_model(const TrainState& state);
TrainState parse_model(std::string_view bytes);

void save_model(const TrainState& state, const std::filesystem::path& path);
TrainState load_model(const std::filesystem::path& path);

}  // namespace mfdh
