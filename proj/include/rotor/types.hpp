#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace rotor {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using MatrixXc = CMatrix<double>;
using VectorXc = CVector<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest element-wise magnitude of M - M^dagger.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Largest element-wise magnitude of U^dagger U - 1.
template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& u)
{
    using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Matrix product = u.adjoint() * u;
    return (product - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

/// Fold an angle into (-pi, pi].
inline double fold_phase(double phi)
{
    double r = std::remainder(phi, kTwoPi);
    if (r <= -kPi)
        r += kTwoPi;
    return r;
}

/// Distance between two angles on the circle, in [0, pi].
inline double circular_distance(double a, double b)
{
    return std::abs(std::remainder(a - b, kTwoPi));
}

/// e^{-2 pi i turns}, exact when `turns` is a multiple of 1/4.
template <typename Real>
std::complex<Real> unit_phase_turns(Real turns)
{
    const Real frac = turns - std::floor(turns);
    const Real quarters = frac * 4;
    if (quarters == std::floor(quarters)) {
        switch (static_cast<int>(quarters)) {
        case 0: return {1, 0};
        case 1: return {0, -1};
        case 2: return {-1, 0};
        case 3: return {0, 1};
        }
    }
    const Real angle = -2 * std::numbers::pi_v<Real> * frac;
    return {std::cos(angle), std::sin(angle)};
}

} // namespace rotor
