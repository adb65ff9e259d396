#include "nhknot/knot.hpp"

#include "nhknot/errors.hpp"
#include "nhknot/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace nhknot {

KnotClass knot_class(int nu) {
    switch (std::abs(nu)) {
        case 0: return KnotClass::unlink;
        case 1: return KnotClass::unknot;
        case 2: return KnotClass::hopf_link;
        default: return KnotClass::other;
    }
}

std::string knot_label(int nu) {
    switch (knot_class(nu)) {
        case KnotClass::unlink: return "unlink";
        case KnotClass::unknot: return "unknot";
        case KnotClass::hopf_link: return "hopf-link";
        default: return "other-" + std::to_string(std::abs(nu));
    }
}

namespace {

struct WindingRaw {
    double raw = 0.0;
    int nk_used = 0;
};

// Accumulated principal-branch phase of f around the midpoint ring, in units
// of 2pi. Doubles nk until every increment is < pi/2.
WindingRaw phase_winding(const std::function<cx(double)>& f, int nk, int cap) {
    std::vector<cx> samples;
    for (; nk <= cap; nk *= 2) {
        samples.assign(nk, cx{});
        const double step = two_pi / nk;
        parallel_for_index(static_cast<std::size_t>(nk), [&](std::size_t j) {
            samples[j] = f(step * (static_cast<double>(j) + 0.5));
        });

        for (int j = 0; j < nk; ++j) {
            if (std::abs(samples[j]) < 1e-12)
                throw singularity_error(
                    "winding: |f| < 1e-12 at k=" + std::to_string(step * (j + 0.5)) +
                        " (eigenvalue collided with the spectral center)",
                    step * (j + 0.5));
        }

        double total = 0.0;
        bool ok = true;
        for (int j = 0; j < nk; ++j) {
            const cx ratio = samples[(j + 1) % nk] * std::conj(samples[j]);
            const double inc = std::arg(ratio);
            if (std::abs(inc) >= pi / 2.0) {
                ok = false;
                break;
            }
            total += inc;
        }
        if (ok) return {total / two_pi, nk};
    }
    throw precision_error(
        "winding: phase increments did not settle below pi/2 by nk=" +
        std::to_string(cap) + " (sampling an (omega,k) too close to a transition?)");
}

KnotPhase phase_to_knot(const WindingRaw& w) {
    KnotPhase out;
    out.nu = static_cast<int>(std::llround(w.raw));
    out.residual = std::abs(w.raw - out.nu);
    out.knot = knot_class(out.nu);
    out.nk_used = w.nk_used;
    return out;
}

}  // namespace

KnotPhase nh_winding(const std::function<Mat2(double)>& a_of_k, int nk) {
    if (nk < 128) throw domain_error("nh_winding: nk must be >= 128");
    auto f = [&](double k) {
        const Mat2 a = a_of_k(k);
        const cx c = 0.5 * a.trace();
        return (a - Mat2::diag(c, c)).det();
    };
    return phase_to_knot(phase_winding(f, nk, winding_nk_cap));
}

HermitianPhase hermitian_winding(const BlochModel& m, int nk) {
    if (nk < 128) throw domain_error("hermitian_winding: nk must be >= 128");
    if (min_gap(m) <= 1e-8)
        throw gapless_error("hermitian_winding: gap closes on the ring (model " + m.label +
                            "), nu_H undefined at the transition");
    auto h21 = [&](double k) {
        const DVector d = d_vector(m, k);
        return cx(d.dx, d.dy);
    };
    const WindingRaw w = phase_winding(h21, nk, winding_nk_cap);
    HermitianPhase out;
    out.nu_h = static_cast<int>(std::llround(w.raw));
    out.residual = std::abs(w.raw - out.nu_h);
    out.nk_used = w.nk_used;
    return out;
}

BraidData extract_braid(const std::function<Mat2(double)>& a_of_k, int nk) {
    if (nk < 256) throw domain_error("extract_braid: nk must be >= 256");

    std::vector<std::pair<cx, cx>> eigs(nk);
    const double step = two_pi / nk;
    parallel_for_index(static_cast<std::size_t>(nk), [&](std::size_t j) {
        const EigPair2 e = eig2(a_of_k(step * (static_cast<double>(j) + 0.5)));
        eigs[j] = {e.lambda_plus, e.lambda_minus};
    });

    BraidData braid;
    braid.k_samples.resize(nk);
    braid.tracks[0].resize(nk);
    braid.tracks[1].resize(nk);
    braid.min_track_separation = std::abs(eigs[0].first - eigs[0].second);

    braid.tracks[0][0] = eigs[0].first;
    braid.tracks[1][0] = eigs[0].second;
    braid.k_samples[0] = step * 0.5;
    for (int j = 1; j < nk; ++j) {
        braid.k_samples[j] = step * (j + 0.5);
        const cx prev0 = braid.tracks[0][j - 1];
        const cx prev1 = braid.tracks[1][j - 1];
        auto [ea, eb] = eigs[j];
        const double cost_id = std::abs(ea - prev0) + std::abs(eb - prev1);
        const double cost_sw = std::abs(eb - prev0) + std::abs(ea - prev1);
        // ties keep the identity pairing
        if (cost_sw < cost_id - 1e-14) std::swap(ea, eb);
        braid.tracks[0][j] = ea;
        braid.tracks[1][j] = eb;
        const double sep = std::abs(ea - eb);
        if (sep < braid.min_track_separation) braid.min_track_separation = sep;
        if (sep < 1e-10)
            throw track_collision_error(
                "extract_braid: tracks touched at k=" + std::to_string(braid.k_samples[j]) +
                    " (EP or NDP on the sampled ring)",
                braid.k_samples[j]);
    }

    const cx end0 = braid.tracks[0][nk - 1];
    const cx end1 = braid.tracks[1][nk - 1];
    const double close_id = std::abs(end0 - braid.tracks[0][0]) + std::abs(end1 - braid.tracks[1][0]);
    const double close_sw = std::abs(end0 - braid.tracks[1][0]) + std::abs(end1 - braid.tracks[0][0]);
    braid.permutation =
        close_sw < close_id - 1e-14 ? BraidPermutation::swap : BraidPermutation::identity;
    return braid;
}

KnotPhase gauge_knot(const GaugeChoice& g, int nk) {
    return nh_winding([g](double k) { return v_matrix(g, k); }, nk);
}

double hermitian_berry_phase(const BlochModel& m, int nk, int band) {
    if (nk < 128) throw domain_error("hermitian_berry_phase: nk must be >= 128");
    if (band != 0 && band != 1) throw domain_error("hermitian_berry_phase: band must be 0 or 1");

    std::vector<std::pair<cx, cx>> vecs(nk);
    const double step = two_pi / nk;
    parallel_for_index(static_cast<std::size_t>(nk), [&](std::size_t j) {
        const HermEig e = herm_eig(bloch_h(m, step * (static_cast<double>(j) + 0.5)));
        vecs[j] = band == 0 ? std::pair<cx, cx>{e.u.a11, e.u.a21}
                            : std::pair<cx, cx>{e.u.a12, e.u.a22};
    });

    double phase = 0.0;
    for (int j = 0; j < nk; ++j) {
        const auto& a = vecs[j];
        const auto& b = vecs[(j + 1) % nk];
        const cx overlap = std::conj(a.first) * b.first + std::conj(a.second) * b.second;
        phase -= std::arg(overlap);
    }
    // fold into (-pi, pi]
    phase = std::remainder(phase, two_pi);
    if (phase <= -pi) phase += two_pi;
    return phase;
}

}  // namespace nhknot
