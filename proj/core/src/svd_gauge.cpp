#include "nhknot/svd_gauge.hpp"

#include "nhknot/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace nhknot {

GaugeChoice parse_gauge(const std::string& name) {
    if (name == "sigma-x") return GaugeChoice::pauli_x();
    if (name == "sigma-y") return GaugeChoice::pauli_y();
    if (name == "i-sigma-z") return GaugeChoice::i_pauli_z();
    if (name == "k-dependent") return GaugeChoice::k_dependent();
    if (name.rfind("general:", 0) == 0) {
        std::vector<double> p;
        std::stringstream ss(name.substr(8));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                p.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw domain_error("gauge: bad parameter '" + tok + "' in '" + name + "'");
            }
        }
        if (p.size() != 5)
            throw domain_error("gauge: general needs 5 parameters phi,alpha,beta,theta0,theta1");
        if (p[4] != std::floor(p[4]))
            throw domain_error("gauge: theta1 must be an integer to keep V 2pi-periodic");
        return GaugeChoice::general(p[0], p[1], p[2], p[3], static_cast<int>(p[4]));
    }
    throw domain_error("unknown gauge '" + name +
                       "' (expected sigma-x, sigma-y, i-sigma-z, k-dependent, general:...)");
}

std::string gauge_name(const GaugeChoice& g) {
    switch (g.kind) {
        case GaugeChoice::Kind::pauli_x: return "sigma-x";
        case GaugeChoice::Kind::pauli_y: return "sigma-y";
        case GaugeChoice::Kind::i_pauli_z: return "i-sigma-z";
        case GaugeChoice::Kind::k_dependent: return "k-dependent";
        case GaugeChoice::Kind::general: {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "general:%g,%g,%g,%g,%d", g.phi, g.alpha,
                          g.beta, g.theta0, g.theta1);
            return buf;
        }
    }
    return "?";
}

Mat2 v_matrix(const GaugeChoice& g, double k) {
    if (!std::isfinite(k)) throw invalid_input_error("v_matrix: non-finite k");
    const cx i(0.0, 1.0);
    switch (g.kind) {
        case GaugeChoice::Kind::pauli_x: return pauli_x();
        case GaugeChoice::Kind::pauli_y: return pauli_y();
        case GaugeChoice::Kind::i_pauli_z: return i * pauli_z();
        case GaugeChoice::Kind::k_dependent: {
            const double s = std::sin(k), c = std::cos(k);
            const cx emik = std::exp(-i * k);
            return {-i * s, -i * emik * c, -i * c, i * emik * s};
        }
        case GaugeChoice::Kind::general: {
            const double th = g.theta0 + g.theta1 * k;
            const double s = std::sin(th), c = std::cos(th);
            const cx pre = std::exp(i * (g.phi / 2.0));
            return pre * Mat2{std::exp(i * g.alpha) * c, std::exp(i * g.beta) * s,
                              -std::exp(-i * g.beta) * s, std::exp(-i * g.alpha) * c};
        }
    }
    throw invalid_input_error("v_matrix: bad gauge kind");
}

namespace {

// nearest k offset at which H is non-degenerate again
double nearest_safe_k(const BlochModel& m, double k) {
    for (double step = 1e-9; step < 1.0; step *= 2.0) {
        for (double cand : {k + step, k - step}) {
            if (!herm_eig(bloch_h(m, cand)).degenerate) return cand;
        }
    }
    return k;  // unreachable for finite models
}

}  // namespace

SvdFactors svd_factors(const BlochModel& m, const GaugeChoice& g, double k) {
    const HermEig eig = herm_eig(bloch_h(m, k));
    SvdFactors f;
    f.u = eig.u;
    f.sigma1 = std::sqrt(std::max(0.0, eig.e1));
    f.sigma2 = std::sqrt(std::max(0.0, eig.e2));
    f.v = v_matrix(g, k);
    f.degenerate = eig.degenerate;
    return f;
}

Mat2 build_a(const BlochModel& m, const GaugeChoice& g, double k) {
    const SvdFactors f = svd_factors(m, g, k);
    if (f.degenerate) {
        const double safe = nearest_safe_k(m, k);
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "build_a: H degenerate at k=%.17g (model %s); nearest safe k=%.17g",
                      k, m.label.c_str(), safe);
        throw degenerate_point_error(buf, k, safe);
    }
    // descending column arrangement [s2*u2 | s1*u1], then V^dag
    const Mat2 us{f.u.a12 * f.sigma2, f.u.a11 * f.sigma1,
                  f.u.a22 * f.sigma2, f.u.a21 * f.sigma1};
    return us * f.v.adjoint();
}

Mat2 apply_gauge(const Mat2& a, const GaugeChoice& g, double k) {
    return a * v_matrix(g, k);
}

std::function<Mat2(double)> make_a_family(const BlochModel& m, const GaugeChoice& g) {
    if (g.kind == GaugeChoice::Kind::general) {
        return [m, g](double k) {
            return apply_gauge(build_a(m, GaugeChoice::pauli_x(), k), g, k);
        };
    }
    return [m, g](double k) { return build_a(m, g, k); };
}

}  // namespace nhknot
