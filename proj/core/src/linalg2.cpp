#include "nhknot/linalg2.hpp"

#include "nhknot/errors.hpp"

#include <algorithm>
#include <cmath>

namespace nhknot {

EigPair2 eig2(const Mat2& m, double eps_deg) {
    if (!m.finite()) throw invalid_input_error("eig2: non-finite matrix entry");

    const cx half_tr = 0.5 * m.trace();
    const cx disc = half_tr * half_tr - m.det();
    const cx s = std::sqrt(disc);  // principal branch, cut on the negative reals

    EigPair2 out;
    out.lambda_plus = half_tr + s;
    out.lambda_minus = half_tr - s;
    out.discriminant = disc;

    const double scale = eps_deg * (1.0 + m.frobenius_norm());
    out.degenerate = std::abs(s) < scale;
    if (out.degenerate) {
        const Mat2 shifted = m - Mat2::diag(half_tr, half_tr);
        out.defective = shifted.frobenius_norm() > scale;
    }
    return out;
}

HermEig herm_eig(const Mat2& h, double eps_deg) {
    if (!h.finite()) throw invalid_input_error("herm_eig: non-finite matrix entry");
    const double hnorm = h.frobenius_norm();
    if ((h - h.adjoint()).frobenius_norm() >= 1e-10 * (1.0 + hnorm))
        throw invalid_input_error("herm_eig: matrix is not Hermitian");

    const double d11 = h.a11.real();
    const double d22 = h.a22.real();
    const double mid = 0.5 * (d11 + d22);
    const double r = std::hypot(0.5 * (d11 - d22), std::abs(h.a12));

    HermEig out;
    out.e1 = mid - r;
    out.e2 = mid + r;

    if (2.0 * r < eps_deg * (1.0 + hnorm)) {
        out.u = Mat2::identity();
        out.degenerate = true;
        return out;
    }

    auto column = [&](double e) {
        cx v1, v2;
        if (std::abs(h.a12) > 1e-14 * (1.0 + hnorm)) {
            v1 = h.a12;
            v2 = cx(e - d11, 0.0);
        } else {
            // numerically diagonal: pick the matching basis vector
            if (std::abs(d11 - e) <= std::abs(d22 - e)) { v1 = 1.0; v2 = 0.0; }
            else { v1 = 0.0; v2 = 1.0; }
        }
        const double n = std::sqrt(std::norm(v1) + std::norm(v2));
        v1 /= n;
        v2 /= n;
        // phase gauge: sublattice-B component real non-negative
        if (std::abs(v2) > 1e-12) {
            const cx phase = std::abs(v2) / v2;
            v1 *= phase;
            v2 = std::abs(v2);
        } else if (std::abs(v1) > 0.0) {
            const cx phase = std::abs(v1) / v1;
            v1 = std::abs(v1);
            v2 *= phase;
        }
        return std::pair<cx, cx>(v1, v2);
    };

    auto [u11, u21] = column(out.e1);
    auto [u12, u22] = column(out.e2);
    out.u = Mat2{u11, u12, u21, u22};
    return out;
}

double commutator_norm(const Mat2& m) {
    if (!m.finite()) throw invalid_input_error("commutator_norm: non-finite matrix entry");
    const Mat2 ad = m.adjoint();
    return (m * ad - ad * m).frobenius_norm();
}

double unitary_error(const Mat2& m) {
    if (!m.finite()) throw invalid_input_error("unitary_error: non-finite matrix entry");
    return (m.adjoint() * m - Mat2::identity()).frobenius_norm();
}

std::pair<double, double> singular_values(const Mat2& a) {
    if (!a.finite()) throw invalid_input_error("singular_values: non-finite matrix entry");
    // eigenvalues of the Hermitian PSD matrix A A^dag, closed form
    const Mat2 g = a * a.adjoint();
    const double d11 = g.a11.real();
    const double d22 = g.a22.real();
    const double mid = 0.5 * (d11 + d22);
    const double r = std::hypot(0.5 * (d11 - d22), std::abs(g.a12));
    const double lo = std::max(0.0, mid - r);
    const double hi = std::max(0.0, mid + r);
    return {std::sqrt(lo), std::sqrt(hi)};
}

}  // namespace nhknot
