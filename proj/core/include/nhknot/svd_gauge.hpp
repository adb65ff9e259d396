#ifndef NHKNOT_SVD_GAUGE_HPP
#define NHKNOT_SVD_GAUGE_HPP

#include "nhknot/bloch.hpp"
#include "nhknot/linalg2.hpp"
#include "nhknot/mat2.hpp"

#include <functional>
#include <string>

namespace nhknot {

/// Selection of the arbitrary unitary V in A = U Sigma V^dag.
///
/// The `general` kind is the parametrized unitary
///   e^{i phi/2} [[e^{i alpha} cos th, e^{i beta} sin th],
///                [-e^{-i beta} sin th, e^{-i alpha} cos th]]
/// with th(k) = theta0 + theta1 k; integer theta1 keeps it 2pi-periodic.
struct GaugeChoice {
    enum class Kind { pauli_x, pauli_y, i_pauli_z, k_dependent, general };
    Kind kind = Kind::pauli_x;
    double phi = 0.0, alpha = 0.0, beta = 0.0, theta0 = 0.0;
    int theta1 = 0;

    static GaugeChoice pauli_x() { return {}; }
    static GaugeChoice pauli_y() { return {Kind::pauli_y}; }
    static GaugeChoice i_pauli_z() { return {Kind::i_pauli_z}; }
    static GaugeChoice k_dependent() { return {Kind::k_dependent}; }
    static GaugeChoice general(double phi, double alpha, double beta,
                               double theta0, int theta1) {
        return {Kind::general, phi, alpha, beta, theta0, theta1};
    }
};

/// Parses "sigma-x" | "sigma-y" | "i-sigma-z" | "k-dependent" |
/// "general:phi,alpha,beta,theta0,theta1". Throws domain_error otherwise.
GaugeChoice parse_gauge(const std::string& name);
std::string gauge_name(const GaugeChoice& g);

/// The catalog matrix V(k) for the chosen gauge (always unitary).
Mat2 v_matrix(const GaugeChoice& g, double k);

/// Factors of H(k) = U diag(E1,E2) U^dag with singular values sigma = sqrt(E)
/// stored ascending alongside the gauge matrix used.
struct SvdFactors {
    Mat2 u;           //!< eigenvector columns, ascending order
    double sigma1 = 0.0, sigma2 = 0.0;
    Mat2 v;
    bool degenerate = false;
};

SvdFactors svd_factors(const BlochModel& m, const GaugeChoice& g, double k);

/// The non-Hermitian factor A(k) with A A^dag = H(k).
///
/// Columns are arranged [sqrt(E2) u2 | sqrt(E1) u1] before V^dag is applied,
/// which reproduces the catalog's closed forms (sqrt(E-) ends up in the
/// first column for V = sigma_x). Throws degenerate_point_error when H(k)
/// is degenerate at exactly this k.
Mat2 build_a(const BlochModel& m, const GaugeChoice& g, double k);

/// A' = A * V_g(k); preserves A' A'^dag = A A^dag.
Mat2 apply_gauge(const Mat2& a, const GaugeChoice& g, double k);

/// The A(k) family a scan actually walks. For the `general` kind this is
/// the gauge-related family A'(k) = A_{sigma_x}(k) * U(k); for every other
/// kind it is build_a with that V.
std::function<Mat2(double)> make_a_family(const BlochModel& m, const GaugeChoice& g);

}  // namespace nhknot

#endif
