#include "nhknot/transition.hpp"

#include "nhknot/errors.hpp"
#include "nhknot/linalg2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

namespace nhknot {

namespace {

Mat2 a_at(ModelName family, const GaugeChoice& g, double omega, double k) {
    return make_a_family(preset(family, omega), g)(k);
}

cx disc_at(ModelName family, const GaugeChoice& g, double omega, double k) {
    const Mat2 a = a_at(family, g, omega, k);
    const cx half_tr = 0.5 * a.trace();
    return half_tr * half_tr - a.det();
}

double wrap_k(double k) {
    k = std::fmod(k, two_pi);
    if (k < 0.0) k += two_pi;
    return k;
}

double circular_dist(double a, double b) {
    const double d = std::abs(std::remainder(a - b, two_pi));
    return d;
}

// Aitken delta-squared on x0, x1, x2 (exact when x_n = L + c r^n).
double aitken(double x0, double x1, double x2) {
    const double den = (x2 - x1) - (x1 - x0);
    if (std::abs(den) < 1e-300) return x2;
    return x2 - (x2 - x1) * (x2 - x1) / den;
}

cx aitken(cx x0, cx x1, cx x2) {
    return {aitken(x0.real(), x1.real(), x2.real()),
            aitken(x0.imag(), x1.imag(), x2.imag())};
}

struct PolishResult {
    double omega, k, disc_abs;
    bool converged;
};

// Newton on (Re disc, Im disc) with finite-difference Jacobian; falls back
// to a damped Gauss-Newton step on |disc|^2 when the Jacobian degenerates.
// Iterates escaping [omega_min, omega_max] abandon the candidate: they are
// grid-edge artifacts walking toward a zero outside the window.
PolishResult polish_candidate(ModelName family, const GaugeChoice& g, double omega,
                              double k, double step_cap, double omega_min,
                              double omega_max) {
    double x0 = omega, x1 = k;
    cx f = disc_at(family, g, x0, x1);
    for (int it = 0; it < 80 && std::abs(f) > 1e-14; ++it) {
        if (x0 < omega_min || x0 > omega_max) return {x0, wrap_k(x1), std::abs(f), false};
        const double ho = std::min(1e-7 * (1.0 + std::abs(x0)), 0.5 * x0);
        const double hk = 1e-7;
        const cx dfo = (disc_at(family, g, x0 + ho, x1) - disc_at(family, g, x0 - ho, x1)) / (2.0 * ho);
        const cx dfk = (disc_at(family, g, x0, x1 + hk) - disc_at(family, g, x0, x1 - hk)) / (2.0 * hk);

        const double j11 = dfo.real(), j12 = dfk.real();
        const double j21 = dfo.imag(), j22 = dfk.imag();
        const double detj = j11 * j22 - j12 * j21;
        double d0, d1;
        if (std::abs(detj) > 1e-14 * (1.0 + std::norm(dfo) + std::norm(dfk))) {
            d0 = (-f.real() * j22 + f.imag() * j12) / detj;
            d1 = (-j11 * f.imag() + j21 * f.real()) / detj;
        } else {
            // Levenberg step on |disc|^2
            const double a11 = j11 * j11 + j21 * j21;
            const double a12 = j11 * j12 + j21 * j22;
            const double a22 = j12 * j12 + j22 * j22;
            const double lam = 1e-3 * (a11 + a22) + 1e-30;
            const double g0 = j11 * f.real() + j21 * f.imag();
            const double g1 = j12 * f.real() + j22 * f.imag();
            const double det2 = (a11 + lam) * (a22 + lam) - a12 * a12;
            d0 = (-g0 * (a22 + lam) + g1 * a12) / det2;
            d1 = (-(a11 + lam) * g1 + a12 * g0) / det2;
        }
        const double len = std::hypot(d0, d1);
        if (len > step_cap) {
            d0 *= step_cap / len;
            d1 *= step_cap / len;
        }
        // backtrack until |disc| decreases
        double scale = 1.0;
        cx f_new = f;
        double n0 = x0, n1 = x1;
        for (int bt = 0; bt < 12; ++bt, scale *= 0.5) {
            n0 = x0 + scale * d0;
            n1 = x1 + scale * d1;
            if (n0 <= 1e-9) { n0 = 0.5 * x0; }
            f_new = disc_at(family, g, n0, n1);
            if (std::abs(f_new) < std::abs(f)) break;
        }
        if (!(std::abs(f_new) < std::abs(f))) break;  // stalled
        x0 = n0;
        x1 = n1;
        f = f_new;
    }
    return {x0, wrap_k(x1), std::abs(f), std::abs(f) < 1e-13};
}

EPCandidate certify(ModelName family, const GaugeChoice& g, double omega, double k,
                    double disc_abs) {
    const Mat2 a = a_at(family, g, omega, k);
    const cx c = 0.5 * a.trace();
    EPCandidate cand;
    cand.omega = omega;
    cand.k = k;
    cand.discriminant_abs = disc_abs;
    cand.defectiveness = singular_values(a - Mat2::diag(c, c)).first;
    cand.normality = commutator_norm(a);
    return cand;
}

}  // namespace

std::vector<std::pair<double, KnotPhase>> scan_omega(ModelName family,
                                                     const GaugeChoice& g,
                                                     const std::vector<double>& omega_grid,
                                                     int nk) {
    if (omega_grid.empty()) throw domain_error("scan_omega: empty omega grid");
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        if (!(omega_grid[i] > 0.0))
            throw domain_error("scan_omega: omega values must be > 0");
        if (i > 0 && !(omega_grid[i] > omega_grid[i - 1]))
            throw domain_error("scan_omega: omega grid must be strictly increasing");
    }
    std::vector<std::pair<double, KnotPhase>> out;
    out.reserve(omega_grid.size());
    for (double omega : omega_grid) {
        try {
            out.emplace_back(omega, nh_winding(make_a_family(preset(family, omega), g), nk));
        } catch (const singularity_error& e) {
            throw singularity_error("scan_omega at omega=" + std::to_string(omega) + ": " + e.what(),
                                    e.k);
        } catch (const precision_error& e) {
            throw precision_error("scan_omega at omega=" + std::to_string(omega) + ": " + e.what());
        }
    }
    return out;
}

std::vector<EPCandidate> find_ep(ModelName family, const GaugeChoice& g,
                                 double omega_lo, double omega_hi, double k_lo,
                                 double k_hi, int grid_omega, int grid_k) {
    if (!(omega_lo > 0.0) || !(omega_hi > omega_lo) || !std::isfinite(omega_hi))
        throw domain_error("find_ep: need finite 0 < omega_lo < omega_hi");
    if (!(k_hi > k_lo)) throw domain_error("find_ep: need k_lo < k_hi");
    if (grid_omega < 64 || grid_k < 64)
        throw domain_error("find_ep: coarse grid must be at least 64x64");

    // |disc| on the coarse grid, row per omega
    std::vector<std::vector<double>> vals(grid_omega, std::vector<double>(grid_k));
    std::vector<double> omegas(grid_omega), ks(grid_k);
    for (int i = 0; i < grid_omega; ++i)
        omegas[i] = omega_lo + (omega_hi - omega_lo) * i / (grid_omega - 1.0);
    const bool full_ring = (k_hi - k_lo) >= two_pi - 1e-12;
    for (int j = 0; j < grid_k; ++j)
        ks[j] = full_ring ? k_lo + (k_hi - k_lo) * (j + 0.5) / grid_k
                          : k_lo + (k_hi - k_lo) * j / (grid_k - 1.0);
    for (int i = 0; i < grid_omega; ++i) {
        const auto fam = make_a_family(preset(family, omegas[i]), g);
        for (int j = 0; j < grid_k; ++j) {
            const Mat2 a = fam(ks[j]);
            const cx half_tr = 0.5 * a.trace();
            vals[i][j] = std::abs(half_tr * half_tr - a.det());
        }
    }

    const double cell = std::max((omega_hi - omega_lo) / (grid_omega - 1.0),
                                 (k_hi - k_lo) / grid_k);

    std::vector<EPCandidate> found;
    for (int i = 0; i < grid_omega; ++i) {
        for (int j = 0; j < grid_k; ++j) {
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di) {
                const int ii = i + di;
                if (ii < 0 || ii >= grid_omega) continue;
                for (int dj = -1; dj <= 1; ++dj) {
                    int jj = j + dj;
                    if (full_ring) jj = (jj + grid_k) % grid_k;
                    else if (jj < 0 || jj >= grid_k) continue;
                    if ((di || dj) && vals[ii][jj] < vals[i][j]) { is_min = false; break; }
                }
            }
            if (!is_min) continue;

            // generous wander room for the iteration; acceptance below stays
            // tied to the requested window
            const double wander = std::max(0.5, 4.0 * cell);
            const PolishResult p =
                polish_candidate(family, g, omegas[i], ks[j], 4.0 * cell,
                                 std::max(1e-9, omega_lo - wander), omega_hi + wander);
            if (!p.converged) continue;
            if (p.omega < omega_lo - cell || p.omega > omega_hi + cell) continue;
            if (!full_ring && (p.k < k_lo - cell || p.k > k_hi + cell)) continue;

            bool dup = false;
            for (auto& c : found) {
                if (std::abs(c.omega - p.omega) < 1e-6 && circular_dist(c.k, p.k) < 1e-6) {
                    dup = true;
                    if (p.disc_abs < c.discriminant_abs)
                        c = certify(family, g, p.omega, p.k, p.disc_abs);
                    break;
                }
            }
            if (!dup) found.push_back(certify(family, g, p.omega, p.k, p.disc_abs));
        }
    }

    std::vector<EPCandidate> eps;
    for (const auto& c : found)
        if (c.is_ep()) eps.push_back(c);
    std::sort(eps.begin(), eps.end(), [](const EPCandidate& a, const EPCandidate& b) {
        return a.omega != b.omega ? a.omega < b.omega : a.k < b.k;
    });
    return eps;
}

JumpRecord discontinuity(ModelName family, const GaugeChoice& g, double omega_star,
                         double k_star, double delta) {
    if (!(delta > 0.0) || delta > 0.1)
        throw domain_error("discontinuity: delta must lie in (0, 0.1]");

    JumpRecord rec;
    rec.omega_star = omega_star;
    rec.k_star = k_star;

    auto eig_side = [&](double omega, double& k_used) {
        for (double k : {k_used, k_star + 1e-9, k_star - 1e-9}) {
            try {
                const EigPair2 e = eig2(a_at(family, g, omega, k));
                if (k != k_used) rec.k_shifted = true;
                k_used = k;
                return std::array<cx, 2>{e.lambda_plus, e.lambda_minus};
            } catch (const degenerate_point_error&) {
                continue;
            }
        }
        throw degenerate_point_error("discontinuity: H degenerate at k* and both nudges",
                                     k_star, k_star);
    };

    std::array<std::array<cx, 2>, 3> above{}, below{};
    for (int i = 0; i < 3; ++i) {
        const double d = delta / (1 << i);
        rec.deltas[i] = d;
        double k_used = k_star;
        above[i] = eig_side(omega_star + d, k_used);
        k_used = k_star;
        below[i] = eig_side(omega_star - d, k_used);
        // pair the two sides; equal costs keep the eig2 order
        const double cost_id =
            std::abs(above[i][0] - below[i][0]) + std::abs(above[i][1] - below[i][1]);
        const double cost_sw =
            std::abs(above[i][0] - below[i][1]) + std::abs(above[i][1] - below[i][0]);
        if (cost_sw < cost_id - 1e-14) std::swap(below[i][0], below[i][1]);
        rec.jumps[i] = {std::abs(above[i][0] - below[i][0]),
                        std::abs(above[i][1] - below[i][1])};
    }

    for (int e = 0; e < 2; ++e) {
        rec.extrapolated_jump[e] = aitken(rec.jumps[0][e], rec.jumps[1][e], rec.jumps[2][e]);
        rec.limit_above[e] = aitken(above[0][e], above[1][e], above[2][e]);
        rec.limit_below[e] = aitken(below[0][e], below[1][e], below[2][e]);
        rec.jump_delta[e] = rec.limit_above[e] - rec.limit_below[e];
    }
    rec.declared = std::max(std::abs(rec.extrapolated_jump[0]),
                            std::abs(rec.extrapolated_jump[1])) > 0.1;
    return rec;
}

namespace {

std::optional<int> try_nu(ModelName family, const GaugeChoice& g, double omega, int nk) {
    try {
        return nh_winding(make_a_family(preset(family, omega), g), nk).nu;
    } catch (const error&) {
        return std::nullopt;  // unresolvable this close to a transition
    }
}

}  // namespace

TransitionReport classify_transition(ModelName family, const GaugeChoice& g,
                                     double omega_lo, double omega_hi, int nk) {
    if (!(omega_lo > 0.0) || !(omega_hi > omega_lo))
        throw domain_error("classify_transition: need 0 < omega_lo < omega_hi");

    const auto nu_lo0 = try_nu(family, g, omega_lo, nk);
    const auto nu_hi0 = try_nu(family, g, omega_hi, nk);
    if (!nu_lo0 || !nu_hi0)
        throw domain_error("classify_transition: winding undefined at a bracket endpoint");
    if (*nu_lo0 == *nu_hi0)
        throw domain_error("classify_transition: nu(lo) == nu(hi), no transition bracketed");

    // Phase 1: bisect on nu down to a width where the winding is still
    // resolvable under the sample cap. Probes that land unresolvably close
    // to the transition are retried at golden offsets inside the bracket.
    double lo = omega_lo, hi = omega_hi;
    int nu_lo = *nu_lo0, nu_hi = *nu_hi0;
    while (hi - lo > 1e-2) {
        const double w = hi - lo;
        bool stepped = false;
        for (double frac : {0.5, 0.381966, 0.618034}) {
            const double m = lo + frac * w;
            const auto nu_m = try_nu(family, g, m, nk);
            if (!nu_m) continue;
            if (*nu_m == nu_lo) lo = m;
            else hi = m;  // any third value still brackets a change in (lo, m)
            if (*nu_m != nu_lo && *nu_m != nu_hi) { nu_hi = *nu_m; }
            stepped = true;
            break;
        }
        if (!stepped) break;  // everything inside is unresolvable: refine structurally
    }

    // Phase 2: pin omega* by structure. A first-order point coincides with a
    // Hermitian gap closing; an EP-mediated one with a discriminant zero.
    // Either pin is independent of nk, which keeps omega* bisection-stable.
    const double pad = hi - lo;
    const double win_lo = std::max(0.5 * omega_lo, lo - pad);
    const double win_hi = hi + pad;

    std::optional<double> omega_gap;
    {
        constexpr double inv_phi = 0.6180339887498949;
        double a = win_lo, b = win_hi;
        auto f = [&](double om) { return min_gap(preset(family, om)); };
        double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
        double f1 = f(x1), f2 = f(x2);
        while (b - a > 1e-9) {
            if (f1 < f2) { b = x2; x2 = x1; f2 = f1; x1 = b - inv_phi * (b - a); f1 = f(x1); }
            else { a = x1; x1 = x2; f1 = f2; x2 = a + inv_phi * (b - a); f2 = f(x2); }
        }
        const double om = 0.5 * (a + b);
        if (f(om) < 1e-8) omega_gap = om;
    }

    std::vector<EPCandidate> eps = find_ep(family, g, win_lo, win_hi);
    std::optional<double> omega_ep;
    if (!eps.empty()) {
        omega_ep = eps.front().omega;
        for (const auto& c : eps) {
            if (std::abs(c.omega - *omega_ep) > 1e-6)
                throw unclassified_error(
                    "classify_transition: EPs at distinct omega inside one bracket "
                    "(multiple transitions?)");
        }
    }

    if (omega_gap && omega_ep)
        throw unclassified_error(
            "classify_transition: both a gap closing and an EP inside the bracket");

    TransitionReport rep;
    if (omega_gap) rep.omega_star = *omega_gap;
    else if (omega_ep) rep.omega_star = *omega_ep;
    else
        throw unclassified_error(
            "classify_transition: no gap closing and no EP near the bracketed change "
            "(bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "])");

    // nu on both sides, probed at a resolvable distance from omega*
    double dv = std::max(1e-2, 1e-2 * rep.omega_star);
    dv = std::min(dv, 0.9 * std::min(rep.omega_star - omega_lo, omega_hi - rep.omega_star));
    std::optional<int> nb, na;
    for (int tries = 0; tries < 4 && (!nb || !na); ++tries) {
        nb = try_nu(family, g, rep.omega_star - dv, nk);
        na = try_nu(family, g, rep.omega_star + dv, nk);
        if (!nb || !na) dv *= 2.0;
    }
    if (!nb || !na)
        throw unclassified_error("classify_transition: winding unresolvable on both sides");
    rep.nu_below = *nb;
    rep.nu_above = *na;
    if (rep.nu_below == rep.nu_above)
        throw unclassified_error(
            "classify_transition: nu does not change across the located point");

    // jump at the critical k: gap-closing momenta for a coincident Hermitian
    // transition, else the EP momenta
    std::vector<double> critical_ks;
    const std::vector<double> closings = find_gap_closings(preset(family, rep.omega_star));
    rep.herm_coincident = !closings.empty();
    if (omega_gap) critical_ks = closings;
    else
        for (const auto& c : eps) critical_ks.push_back(c.k);
    if (critical_ks.empty())
        throw unclassified_error("classify_transition: no critical momentum to probe");

    double max_jump = -1.0;
    for (double kc : critical_ks) {
        const JumpRecord rec = discontinuity(family, g, rep.omega_star, kc, 1e-5);
        const double mj =
            std::max(std::abs(rec.extrapolated_jump[0]), std::abs(rec.extrapolated_jump[1]));
        if (mj > max_jump) {
            max_jump = mj;
            rep.critical_k = kc;
            rep.jump = rec.jump_delta;
        }
    }
    rep.ep_points = eps;

    const bool jumpy = max_jump > 0.1;
    const bool smooth = max_jump < 1e-3;
    if (eps.empty() && jumpy) rep.kind = TransitionKind::first_order;
    else if (!eps.empty() && smooth) rep.kind = TransitionKind::ep_mediated;
    else {
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "classify_transition: inconsistent evidence (|eps|=%zu, max jump=%.3e)",
                      eps.size(), max_jump);
        throw unclassified_error(buf);
    }
    return rep;
}

}  // namespace nhknot
