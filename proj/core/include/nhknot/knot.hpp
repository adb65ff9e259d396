#ifndef NHKNOT_KNOT_HPP
#define NHKNOT_KNOT_HPP

#include "nhknot/bloch.hpp"
#include "nhknot/mat2.hpp"
#include "nhknot/svd_gauge.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace nhknot {

enum class KnotClass { unlink, unknot, hopf_link, other };

/// |nu| = 0 -> unlink, 1 -> unknot, 2 -> Hopf link, else other.
KnotClass knot_class(int nu);
/// "unlink" | "unknot" | "hopf-link" | "other-<|nu|>"
std::string knot_label(int nu);

/// Winding number of det(A(k) - tr A(k)/2) around the origin over one
/// Brillouin-zone period, with the integer-rounding residual and the grid
/// size the refinement settled on.
struct KnotPhase {
    int nu = 0;
    KnotClass knot = KnotClass::unlink;
    double residual = 0.0;
    int nk_used = 0;
};

/// Hermitian winding of the chiral off-diagonal element h21 = dx + i dy.
struct HermitianPhase {
    int nu_h = 0;
    double residual = 0.0;
    int nk_used = 0;
};

enum class BraidPermutation { identity, swap };

/// Continuity-matched eigenvalue tracks lambda(k) over one period.
struct BraidData {
    std::vector<double> k_samples;
    std::array<std::vector<cx>, 2> tracks;
    BraidPermutation permutation = BraidPermutation::identity;
    double min_track_separation = 0.0;
};

inline constexpr int winding_nk_cap = 1 << 20;

/// Non-Hermitian winding number of the sampled family A(k). Samples sit on
/// the midpoint grid k_j = 2pi (j+1/2)/nk; nk doubles (up to the cap) until
/// every per-step phase increment is below pi/2.
KnotPhase nh_winding(const std::function<Mat2(double)>& a_of_k, int nk);

/// Hermitian winding number; requires the model gapped on the whole ring.
HermitianPhase hermitian_winding(const BlochModel& m, int nk);

/// Eigenvalue braid over one period with the end-of-period permutation.
BraidData extract_braid(const std::function<Mat2(double)>& a_of_k, int nk);

/// Winding of the gauge matrix V(k) itself.
KnotPhase gauge_knot(const GaugeChoice& g, int nk);

/// Discrete Berry phase of the chosen band (0 = lower, 1 = upper) in
/// (-pi, pi]. Diagnostic secondary route: Berry/pi == nu_H (mod 2).
double hermitian_berry_phase(const BlochModel& m, int nk, int band = 0);

}  // namespace nhknot

#endif
