#ifndef NHKNOT_TRANSITION_HPP
#define NHKNOT_TRANSITION_HPP

#include "nhknot/bloch.hpp"
#include "nhknot/knot.hpp"
#include "nhknot/svd_gauge.hpp"

#include <array>
#include <utility>
#include <vector>

namespace nhknot {

/// A polished eigenvalue-degeneracy candidate of A(omega, k).
struct EPCandidate {
    double omega = 0.0;
    double k = 0.0;
    double discriminant_abs = 0.0;  //!< |tr^2/4 - det| at the polished point
    double defectiveness = 0.0;     //!< sigma_min(A - (tr A /2) I)
    double normality = 0.0;         //!< ||[A, A^dag]||_F

    /// Defective (EP) as opposed to a non-defective degeneracy (NDP).
    bool is_ep() const {
        return discriminant_abs < 1e-10 && defectiveness < 1e-6 && normality > 1e-6;
    }
};

/// One-sided eigenvalue limits and jump magnitudes at (omega*, k*),
/// estimated from the ladder delta, delta/2, delta/4 with Aitken
/// extrapolation (exact for a geometric error decay, so both a finite jump
/// and the sqrt-type EP approach extrapolate cleanly).
struct JumpRecord {
    double omega_star = 0.0;
    double k_star = 0.0;
    std::array<double, 3> deltas{};
    std::array<std::array<double, 2>, 3> jumps{};  //!< |lambda(+d) - lambda(-d)| per delta, per eigenvalue
    std::array<double, 2> extrapolated_jump{};
    std::array<cx, 2> limit_below{}, limit_above{};
    std::array<cx, 2> jump_delta{};  //!< limit_above - limit_below, per eigenvalue
    bool declared = false;           //!< max extrapolated jump > 0.1
    bool k_shifted = false;          //!< k* sat on a degeneracy and was nudged
};

enum class TransitionKind { first_order, ep_mediated };

struct TransitionReport {
    double omega_star = 0.0;
    TransitionKind kind = TransitionKind::first_order;
    int nu_below = 0, nu_above = 0;
    double critical_k = 0.0;
    std::array<cx, 2> jump{};  //!< per-eigenvalue complex jump at the critical k
    std::vector<EPCandidate> ep_points;
    bool herm_coincident = false;
};

/// Per-omega knot phase over a strictly increasing grid of omega > 0.
/// Adjacent entries with different nu bracket a transition.
std::vector<std::pair<double, KnotPhase>> scan_omega(ModelName family,
                                                     const GaugeChoice& g,
                                                     const std::vector<double>& omega_grid,
                                                     int nk);

/// Exceptional points of A(omega, k) inside the given window: grid seeding
/// of |disc| minima, 2D Newton polish (gradient fallback) to |disc| < 1e-13,
/// duplicates within 1e-6 merged, NDPs filtered out.
std::vector<EPCandidate> find_ep(ModelName family, const GaugeChoice& g,
                                 double omega_lo, double omega_hi,
                                 double k_lo = 0.0, double k_hi = two_pi,
                                 int grid_omega = 64, int grid_k = 64);

/// One-sided spectral limits of A at (omega* +- delta ladder, k*).
JumpRecord discontinuity(ModelName family, const GaugeChoice& g, double omega_star,
                         double k_star, double delta);

/// Localizes the topology change inside (omega_lo, omega_hi) and classifies
/// it as a first-order jump or an EP-mediated transition.
TransitionReport classify_transition(ModelName family, const GaugeChoice& g,
                                     double omega_lo, double omega_hi, int nk);

}  // namespace nhknot

#endif
