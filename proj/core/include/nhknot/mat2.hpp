#ifndef NHKNOT_MAT2_HPP
#define NHKNOT_MAT2_HPP

#include <cmath>
#include <complex>

namespace nhknot {

using cx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Dense 2x2 complex matrix, value type for H(k), A(k) and all gauges.
struct Mat2 {
    cx a11{}, a12{}, a21{}, a22{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }
    static Mat2 diag(cx d1, cx d2) { return {d1, 0.0, 0.0, d2}; }

    cx trace() const { return a11 + a22; }
    cx det() const { return a11 * a22 - a12 * a21; }

    Mat2 adjoint() const {
        return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
    }
    Mat2 transpose() const { return {a11, a21, a12, a22}; }
    Mat2 conj() const {
        return {std::conj(a11), std::conj(a12), std::conj(a21), std::conj(a22)};
    }

    double frobenius_norm() const {
        return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) +
                         std::norm(a22));
    }

    bool finite() const {
        auto ok = [](cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
        return ok(a11) && ok(a12) && ok(a21) && ok(a22);
    }

    Mat2& operator+=(const Mat2& o) {
        a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
        return *this;
    }
    Mat2& operator-=(const Mat2& o) {
        a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
        return *this;
    }
    Mat2& operator*=(cx s) {
        a11 *= s; a12 *= s; a21 *= s; a22 *= s;
        return *this;
    }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator*(Mat2 a, cx s) { return a *= s; }
inline Mat2 operator*(cx s, Mat2 a) { return a *= s; }
inline Mat2 operator*(Mat2 a, double s) { return a *= cx(s, 0.0); }
inline Mat2 operator*(double s, Mat2 a) { return a *= cx(s, 0.0); }

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

inline Mat2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 pauli_y() { return {0.0, cx(0.0, -1.0), cx(0.0, 1.0), 0.0}; }
inline Mat2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

}  // namespace nhknot

#endif
