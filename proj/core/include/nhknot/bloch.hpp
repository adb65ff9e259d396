#ifndef NHKNOT_BLOCH_HPP
#define NHKNOT_BLOCH_HPP

#include "nhknot/mat2.hpp"

#include <string>
#include <vector>

namespace nhknot {

enum class ModelName { model_i, model_ii };

/// SSH-family hopping parameters. t1/t2 are the intracell/intercell
/// hoppings, t3/t4 the chiral-symmetry-preserving longer-range ones, and mu
/// the identity shift that keeps the whole spectrum non-negative.
struct BlochModel {
    double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;
    double mu = 0.0;
    std::string label;
};

/// Bloch vector (dz = 0 throughout: chiral symmetry).
struct DVector {
    double dx = 0.0, dy = 0.0, dz = 0.0;
};

/// Model I: t = (1, omega, 0, 0), mu = 1 + omega.
/// Model II: t = (1, 1, 1, omega), mu = 3 + omega.
BlochModel preset(ModelName name, double omega);

/// Custom model; validates spectrum positivity on a 4096-point grid.
BlochModel make_model(double t1, double t2, double t3, double t4, double mu,
                      std::string label = "custom");

DVector d_vector(const BlochModel& m, double k);

/// H(k) = dx sigma_x + dy sigma_y + mu I (Hermitian by construction).
Mat2 bloch_h(const BlochModel& m, double k);

/// Band gap E_+ - E_- = 2 sqrt(dx^2 + dy^2) >= 0.
double gap(const BlochModel& m, double k);

/// Minimum of gap(k) over one period, golden-section refined.
double min_gap(const BlochModel& m, int nk = 1024);

/// All k in [0, 2pi) where the gap closes (below 1e-8 after refinement),
/// sorted ascending. Empty if the model is gapped.
std::vector<double> find_gap_closings(const BlochModel& m, int nk = 1024);

}  // namespace nhknot

#endif
