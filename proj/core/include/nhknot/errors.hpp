#ifndef NHKNOT_ERRORS_HPP
#define NHKNOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nhknot {

/// Base class for every library error.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument or configuration outside the stated domain (maps to CLI exit 2).
struct domain_error : error {
    using error::error;
};

/// Non-finite or structurally invalid numeric input.
struct invalid_input_error : error {
    using error::error;
};

/// H(k) is exactly degenerate at the requested point; carries the nearest
/// offset in k at which the factorization is well defined again.
struct degenerate_point_error : error {
    double k, safe_k;
    degenerate_point_error(const std::string& msg, double k_, double safe_k_)
        : error(msg), k(k_), safe_k(safe_k_) {}
};

/// |det(A - tr A / 2)| vanished at a sample: eigenvalue collided with the
/// spectral center, the winding is undefined there.
struct singularity_error : error {
    double k;
    singularity_error(const std::string& msg, double k_) : error(msg), k(k_) {}
};

/// Hermitian gap closes somewhere on the ring: nu_H undefined.
struct gapless_error : error {
    using error::error;
};

/// Winding refinement hit the sample cap without taming phase increments.
struct precision_error : error {
    using error::error;
};

/// Braid tracks touched (EP or NDP on the sampled ring).
struct track_collision_error : error {
    double k;
    track_collision_error(const std::string& msg, double k_) : error(msg), k(k_) {}
};

/// Transition evidence inconsistent (both EP and jump, or neither).
struct unclassified_error : error {
    using error::error;
};

/// File could not be created or written.
struct io_error : error {
    using error::error;
};

}  // namespace nhknot

#endif
