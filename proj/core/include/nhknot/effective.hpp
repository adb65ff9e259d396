#ifndef NHKNOT_EFFECTIVE_HPP
#define NHKNOT_EFFECTIVE_HPP

#include "nhknot/mat2.hpp"

#include <complex>
#include <vector>

namespace nhknot {

enum class Branch { plus, minus };
enum class Boundary { open, periodic };

/// Linearized factor A_eff(k) = M sin k + C around (k = pi, omega = 1) of
/// Model I with V = sigma_x. The two branches carry the one-sided limits of
/// A at k -> pi+- ; their C blocks differ by a finite amount, which is the
/// source of the first-order jump.
struct EffectiveModel {
    Branch side = Branch::plus;
    Mat2 m;  //!< sin k coefficient
    Mat2 c;  //!< constant (on-site) block
};

EffectiveModel effective_model(Branch side);

/// M sin k + C.
Mat2 eff_bloch(const EffectiveModel& e, double k);

/// Nearest-neighbor chain: on-site block C, forward hop M/(2i), backward
/// hop -M/(2i); periodic boundaries add the wrap-around blocks.
struct ChainOperator {
    int length = 0;
    Boundary boundary = Boundary::open;
    Mat2 onsite;
    Mat2 hop_forward;
    Mat2 hop_backward;
};

ChainOperator realspace_chain(const EffectiveModel& e, int length, Boundary boundary);

/// Dense row-major complex matrix of dimension 2*length.
std::vector<cx> chain_matrix(const ChainOperator& chain);

/// Full spectrum of the chain operator (general complex eigensolver),
/// sorted by (re, im). Chain dimension is capped at 512.
std::vector<cx> chain_spectrum(const ChainOperator& chain);

/// || A(k, omega=1, sigma_x) - eff_bloch(side(k), k) ||_F with the branch
/// chosen by the side of pi that k lies on.
double linearization_error(double k);

}  // namespace nhknot

#endif
