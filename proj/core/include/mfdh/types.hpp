#pragma once

#include <Eigen/Dense>

namespace mfdh {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Modality { image, text };

inline const char* to_string(Modality m) {
    return m == Modality::image ? "image" : "text";
}

}  // namespace mfdh
