#include "nhknot/effective.hpp"

#include "nhknot/bloch.hpp"
#include "nhknot/errors.hpp"
#include "nhknot/svd_gauge.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace nhknot {

EffectiveModel effective_model(Branch side) {
    // One-sided linear expansions of A(k, omega=1) about k = pi, written as
    // M sin k + C. Derived from the closed-form factor; the quadratic
    // remainder is checked by the halving-ratio tests.
    const cx i(0.0, 1.0);
    EffectiveModel e;
    e.side = side;
    if (side == Branch::plus) {
        e.c = {-i, i, 1.0, 1.0};
        e.m = {cx(0.5, -0.25), cx(-0.5, -0.25), 0.25, -0.25};
    } else {
        e.c = {i, -i, 1.0, 1.0};
        e.m = {cx(-0.5, -0.25), cx(0.5, -0.25), -0.25, 0.25};
    }
    return e;
}

Mat2 eff_bloch(const EffectiveModel& e, double k) {
    if (!std::isfinite(k)) throw invalid_input_error("eff_bloch: non-finite k");
    return e.m * std::sin(k) + e.c;
}

ChainOperator realspace_chain(const EffectiveModel& e, int length, Boundary boundary) {
    if (length < 2) throw domain_error("realspace_chain: length must be >= 2");
    if (2 * length > 512) throw domain_error("realspace_chain: dimension capped at 512");
    ChainOperator chain;
    chain.length = length;
    chain.boundary = boundary;
    chain.onsite = e.c;
    const cx inv_2i = cx(0.0, -0.5);  // 1/(2i)
    chain.hop_forward = e.m * inv_2i;
    chain.hop_backward = e.m * (-inv_2i);
    return chain;
}

std::vector<cx> chain_matrix(const ChainOperator& chain) {
    const int L = chain.length;
    const int n = 2 * L;
    std::vector<cx> mat(static_cast<std::size_t>(n) * n, cx{});
    // accumulate: on a two-cell ring the wrap-around block lands on top of
    // the nearest-neighbor one
    auto put = [&](int row_cell, int col_cell, const Mat2& block) {
        const int r = 2 * row_cell, c = 2 * col_cell;
        mat[static_cast<std::size_t>(r) * n + c] += block.a11;
        mat[static_cast<std::size_t>(r) * n + c + 1] += block.a12;
        mat[static_cast<std::size_t>(r + 1) * n + c] += block.a21;
        mat[static_cast<std::size_t>(r + 1) * n + c + 1] += block.a22;
    };
    for (int cell = 0; cell < L; ++cell) {
        put(cell, cell, chain.onsite);
        if (cell + 1 < L) {
            put(cell + 1, cell, chain.hop_forward);
            put(cell, cell + 1, chain.hop_backward);
        }
    }
    if (chain.boundary == Boundary::periodic) {
        put(0, L - 1, chain.hop_forward);
        put(L - 1, 0, chain.hop_backward);
    }
    return mat;
}

std::vector<cx> chain_spectrum(const ChainOperator& chain) {
    const int n = 2 * chain.length;
    const std::vector<cx> mat = chain_matrix(chain);
    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = mat[static_cast<std::size_t>(r) * n + c];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw precision_error("chain_spectrum: eigensolver did not converge");
    std::vector<cx> ev(n);
    for (int j = 0; j < n; ++j) ev[j] = solver.eigenvalues()(j);
    std::sort(ev.begin(), ev.end(), [](cx a, cx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return ev;
}

double linearization_error(double k) {
    if (!(std::abs(k - pi) <= 0.2))
        throw domain_error("linearization_error: need |k - pi| <= 0.2");
    // k == pi falls through to build_a, which reports the degeneracy itself
    const Branch side = k > pi ? Branch::plus : Branch::minus;
    const Mat2 a = build_a(preset(ModelName::model_i, 1.0), GaugeChoice::pauli_x(), k);
    return (a - eff_bloch(effective_model(side), k)).frobenius_norm();
}

}  // namespace nhknot
