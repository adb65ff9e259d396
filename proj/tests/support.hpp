#ifndef NHKNOT_TESTS_SUPPORT_HPP
#define NHKNOT_TESTS_SUPPORT_HPP

#include "nhknot/bloch.hpp"
#include "nhknot/mat2.hpp"
#include "nhknot/svd_gauge.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace nhknot::test {

inline std::mt19937_64 make_rng(std::uint64_t seed = 42) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Mat2 random_mat2(std::mt19937_64& rng, double scale = 2.0) {
    auto e = [&] { return cx(uniform(rng, -scale, scale), uniform(rng, -scale, scale)); };
    return {e(), e(), e(), e()};
}

inline Mat2 random_hermitian(std::mt19937_64& rng, double scale = 2.0) {
    const Mat2 m = random_mat2(rng, scale);
    return 0.5 * (m + m.adjoint());
}

inline GaugeChoice random_general_gauge(std::mt19937_64& rng) {
    return GaugeChoice::general(uniform(rng, 0.0, two_pi), uniform(rng, 0.0, two_pi),
                                uniform(rng, 0.0, two_pi), uniform(rng, 0.0, two_pi),
                                std::uniform_int_distribution<int>(-2, 2)(rng));
}

inline Mat2 random_unitary(std::mt19937_64& rng) {
    return v_matrix(random_general_gauge(rng), 0.0);
}

// Closed-form factor for Model I with V = sigma_x. Regression oracle written
// directly from the printed form, with the off-diagonal element carried as
// h12 = 1 + omega e^{-ik} so that A A^dag reproduces H rather than H^T.
inline Mat2 closed_form_model_i_sigma_x(double omega, double k) {
    const cx i(0.0, 1.0);
    const double a = std::sqrt(1.0 + omega * omega + 2.0 * omega * std::cos(k));
    const cx h12 = 1.0 + omega * std::exp(-i * k);
    const double lo = std::sqrt(std::max(0.0, 1.0 + omega - a));
    const double hi = std::sqrt(1.0 + omega + a);
    const double r2 = std::sqrt(2.0);
    return {-h12 / a * lo / r2, h12 / a * hi / r2, lo / r2, hi / r2};
}

// Same for Model II (Eq-form with a' and the longer-range cosines).
inline Mat2 closed_form_model_ii_sigma_x(double omega, double k) {
    const cx i(0.0, 1.0);
    const double ap = std::sqrt(3.0 + omega * omega +
                                2.0 * ((2.0 + omega) * std::cos(k) +
                                       (1.0 + omega) * std::cos(2.0 * k) +
                                       omega * std::cos(3.0 * k)));
    const cx h12 = 1.0 + 2.0 * std::cos(k) + omega * std::exp(-2.0 * i * k);
    const double lo = std::sqrt(std::max(0.0, 3.0 + omega - ap));
    const double hi = std::sqrt(3.0 + omega + ap);
    const double r2 = std::sqrt(2.0);
    return {-h12 / ap * lo / r2, h12 / ap * hi / r2, lo / r2, hi / r2};
}

// Independent winding accumulator: fixed grid, explicit unwrapping of the
// sampled phase (no ratio trick, no refinement). Oracle counterpart of
// nh_winding for cross-checks.
inline double brute_force_winding(const std::function<Mat2(double)>& a_of_k, int nk) {
    double prev_phase = 0.0;
    double total = 0.0;
    for (int j = 0; j <= nk; ++j) {
        const double k = two_pi * (j % nk + 0.5) / nk;
        const Mat2 a = a_of_k(k);
        const cx c = 0.5 * a.trace();
        const cx f = (a - Mat2::diag(c, c)).det();
        const double phase = std::atan2(f.imag(), f.real());
        if (j > 0) {
            double d = phase - prev_phase;
            while (d > pi) d -= two_pi;
            while (d < -pi) d += two_pi;
            total += d;
        }
        prev_phase = phase;
    }
    return total / two_pi;
}

}  // namespace nhknot::test

#endif
