#ifndef NHKNOT_LINALG2_HPP
#define NHKNOT_LINALG2_HPP

#include "nhknot/mat2.hpp"

#include <utility>

namespace nhknot {

/// Degeneracy tolerance, applied after scaling by 1 + ||M||_F.
inline constexpr double eps_degenerate = 1e-9;

/// Closed-form eigenvalues of a general complex 2x2 matrix.
///
/// lambda_pm = tr/2 +- sqrt(disc), disc = tr^2/4 - det, principal branch.
struct EigPair2 {
    cx lambda_plus{};
    cx lambda_minus{};
    cx discriminant{};
    bool degenerate = false;  //!< eigenvalues coincide within tolerance
    bool defective = false;   //!< degenerate and not a scalar multiple of I
};

EigPair2 eig2(const Mat2& m, double eps_deg = eps_degenerate);

/// Eigendecomposition of a Hermitian 2x2 matrix.
///
/// Eigenvalues ascending (e1 <= e2); the columns of u are the corresponding
/// orthonormal eigenvectors with the phase fixed so the second (sublattice-B)
/// component is real and non-negative, falling back to the first component
/// when the second one vanishes. At a degeneracy the eigenbasis is not
/// unique: u = I is returned and `degenerate` is set.
struct HermEig {
    double e1 = 0.0;
    double e2 = 0.0;
    Mat2 u;
    bool degenerate = false;
};

HermEig herm_eig(const Mat2& h, double eps_deg = eps_degenerate);

/// ||M M^dag - M^dag M||_F; zero iff M is normal.
double commutator_norm(const Mat2& m);

/// ||M^dag M - I||_F; zero iff M is unitary.
double unitary_error(const Mat2& m);

/// Singular values of a 2x2 complex matrix, ascending (s1 <= s2).
std::pair<double, double> singular_values(const Mat2& a);

}  // namespace nhknot

#endif
