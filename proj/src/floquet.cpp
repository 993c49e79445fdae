#include "rotor/floquet.hpp"

namespace rotor {

namespace {

void check_frame(int frame)
{
    if (frame != 1 && frame != 2)
        throw Error(ErrorKind::InvalidArgument, "frame must be 1 or 2");
}

} // namespace

UnitaryOperator qkr_floquet(const QkrParams& p, const MomentumBasis& basis)
{
    detail::require_spinless(basis);
    const UnitaryOperator kinetic = build_kinetic_phase(basis, p.tau);
    const HermitianEigenbasis<double> cos_theta(build_cos_theta(basis));
    // The kinetic factor is diagonal.
    MatrixXc u = kinetic.matrix().diagonal().asDiagonal() * cos_theta.exp_matrix(p.k);
    return UnitaryOperator(std::move(u));
}

DkqrKicks::DkqrKicks(const MomentumBasis& basis)
    : basis_(basis.with_spin(2)),
      cos_kick_(build_cos_theta(basis.with_spin(1)), PauliAxis::X),
      sin_kick_(build_sin_theta(basis.with_spin(1)), PauliAxis::Y)
{
}

UnitaryOperator DkqrKicks::frame1(const DkqrParams& p) const
{
    p.validate();
    const MatrixXc half = cos_kick(0.5 * p.k1);
    MatrixXc u = half * (sin_kick(p.k2) * half);
    return UnitaryOperator(std::move(u));
}

UnitaryOperator DkqrKicks::frame2(const DkqrParams& p) const
{
    p.validate();
    const MatrixXc half = sin_kick(0.5 * p.k2);
    MatrixXc u = half * (cos_kick(p.k1) * half);
    return UnitaryOperator(std::move(u));
}

UnitaryOperator DkqrKicks::frame(const DkqrParams& p, int frame) const
{
    check_frame(frame);
    return frame == 1 ? frame1(p) : frame2(p);
}

UnitaryOperator dkqr_floquet_frame1(const DkqrParams& p, const MomentumBasis& basis)
{
    return DkqrKicks(basis).frame1(p);
}

UnitaryOperator dkqr_floquet_frame2(const DkqrParams& p, const MomentumBasis& basis)
{
    return DkqrKicks(basis).frame2(p);
}

Eigen::Matrix2cd pauli_rotation(PauliAxis axis, double angle)
{
    return std::cos(angle) * Eigen::Matrix2cd::Identity()
           + std::complex<double>(0, -std::sin(angle)) * pauli<double>(axis);
}

Eigen::Matrix2cd bloch_floquet_2x2(const DkqrParams& p, double theta, int frame)
{
    check_frame(frame);
    p.validate();
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if (frame == 1) {
        const Eigen::Matrix2cd half = pauli_rotation(PauliAxis::X, 0.5 * p.k1 * c);
        return half * pauli_rotation(PauliAxis::Y, p.k2 * s) * half;
    }
    const Eigen::Matrix2cd half = pauli_rotation(PauliAxis::Y, 0.5 * p.k2 * s);
    return half * pauli_rotation(PauliAxis::X, p.k1 * c) * half;
}

} // namespace rotor
