#pragma once

#include <stdexcept>
#include <string>

namespace mfdh {

/// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad sizes, out-of-range parameters, malformed values.
struct invalid_argument : error {
    using error::error;
};

/// Covariance with zero scatter and no regularization floor.
struct degenerate_covariance : error {
    using error::error;
};

/// Matrix expected to be SPD has an eigenvalue <= 0.
struct manifold_domain_error : error {
    using error::error;
};

/// Normal equations numerically singular at ridge 0.
struct singular_system_error : error {
    using error::error;
};

/// File parsing or serialization failure.
struct io_error : error {
    using error::error;
};

/// Run configuration schema violation.
struct config_error : error {
    using error::error;
};

}  // namespace mfdh
