#include "nhknot/bloch.hpp"

#include "nhknot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace nhknot {

namespace {

// golden-section minimization of f on [a, b]
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, double xtol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

void check_positivity(const BlochModel& m) {
    constexpr int nk = 4096;
    double worst = 0.0;
    double worst_k = 0.0;
    for (int j = 0; j < nk; ++j) {
        const double k = two_pi * (j + 0.5) / nk;
        const DVector d = d_vector(m, k);
        const double lower = m.mu - std::hypot(d.dx, d.dy);
        if (lower < worst) { worst = lower; worst_k = k; }
    }
    if (worst < 0.0) {
        // refine around the grid minimum before rejecting
        const double h = two_pi / nk;
        auto lower_band = [&](double k) {
            const DVector d = d_vector(m, k);
            return m.mu - std::hypot(d.dx, d.dy);
        };
        worst = golden_min(lower_band, worst_k - h, worst_k + h, 1e-12).second;
    }
    if (worst < -1e-10)
        throw domain_error("bloch model '" + m.label + "': lower band dips below zero (min E- = " +
                           std::to_string(worst) + "); increase mu");
}

}  // namespace

BlochModel preset(ModelName name, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw domain_error("model preset requires omega > 0");
    BlochModel m;
    if (name == ModelName::model_i) {
        m = {1.0, omega, 0.0, 0.0, 1.0 + omega, "model-i"};
    } else {
        m = {1.0, 1.0, 1.0, omega, 3.0 + omega, "model-ii"};
    }
    check_positivity(m);
    return m;
}

BlochModel make_model(double t1, double t2, double t3, double t4, double mu,
                      std::string label) {
    for (double v : {t1, t2, t3, t4, mu})
        if (!std::isfinite(v)) throw domain_error("bloch model: non-finite parameter");
    BlochModel m{t1, t2, t3, t4, mu, std::move(label)};
    check_positivity(m);
    return m;
}

DVector d_vector(const BlochModel& m, double k) {
    if (!std::isfinite(k)) throw invalid_input_error("d_vector: non-finite k");
    DVector d;
    d.dx = m.t1 + (m.t2 + m.t3) * std::cos(k) + m.t4 * std::cos(2.0 * k);
    d.dy = (m.t2 - m.t3) * std::sin(k) + m.t4 * std::sin(2.0 * k);
    d.dz = 0.0;
    return d;
}

Mat2 bloch_h(const BlochModel& m, double k) {
    const DVector d = d_vector(m, k);
    return {cx(m.mu, 0.0), cx(d.dx, -d.dy), cx(d.dx, d.dy), cx(m.mu, 0.0)};
}

double gap(const BlochModel& m, double k) {
    const DVector d = d_vector(m, k);
    return 2.0 * std::hypot(d.dx, d.dy);
}

double min_gap(const BlochModel& m, int nk) {
    if (nk < 64) throw domain_error("min_gap: nk must be >= 64");
    double best = gap(m, pi);
    double best_k = pi;
    for (int j = 0; j < nk; ++j) {
        const double k = two_pi * (j + 0.5) / nk;
        const double g = gap(m, k);
        if (g < best) { best = g; best_k = k; }
    }
    const double h = two_pi / nk;
    auto g = [&](double k) { return gap(m, k); };
    return golden_min(g, best_k - h, best_k + h, 1e-13).second;
}

std::vector<double> find_gap_closings(const BlochModel& m, int nk) {
    if (nk < 64) throw domain_error("find_gap_closings: nk must be >= 64");

    std::vector<double> gs(nk);
    for (int j = 0; j < nk; ++j) gs[j] = gap(m, two_pi * (j + 0.5) / nk);

    const double h = two_pi / nk;
    auto g = [&](double k) { return gap(m, k); };

    std::vector<double> closings;
    for (int j = 0; j < nk; ++j) {
        const double prev = gs[(j + nk - 1) % nk];
        const double next = gs[(j + 1) % nk];
        if (gs[j] > prev || gs[j] > next) continue;  // not a local minimum
        const double k0 = two_pi * (j + 0.5) / nk;
        auto [k_min, g_min] = golden_min(g, k0 - h, k0 + h, 1e-12);
        if (g_min >= 1e-8) continue;
        double k_wrapped = std::fmod(k_min, two_pi);
        if (k_wrapped < 0.0) k_wrapped += two_pi;
        closings.push_back(k_wrapped);
    }

    std::sort(closings.begin(), closings.end());
    // merge refinements of the same closing found from adjacent seeds
    std::vector<double> unique;
    for (double k : closings) {
        if (unique.empty() || std::abs(k - unique.back()) > 1e-6) unique.push_back(k);
    }
    if (unique.size() > 1 && (unique.back() - unique.front()) > two_pi - 1e-6)
        unique.pop_back();  // same point seen across the wrap
    return unique;
}

}  // namespace nhknot
