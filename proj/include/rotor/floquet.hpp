#pragma once

#include <optional>

#include "rotor/basis.hpp"

namespace rotor {

enum class QkrRegime { Generic, Antiresonant, Resonant };

struct QkrParams {
    double k = 0.0;            ///< kick strength
    double tau = 4.0 * kPi;    ///< free-evolution interval

    /// tau = 4 pi is the quantum resonance, tau = 2 pi the antiresonance.
    QkrRegime regime() const noexcept
    {
        if (tau == 4.0 * kPi)
            return QkrRegime::Resonant;
        if (tau == 2.0 * kPi)
            return QkrRegime::Antiresonant;
        return QkrRegime::Generic;
    }
};

/// Kick strengths of the on-resonance (tau_1 = tau_2 = 4 pi) double-kicked rotor.
struct DkqrParams {
    double k1 = 0.0;
    double k2 = 0.0;
    bool resonant = true;

    void validate() const
    {
        if (!resonant)
            throw Error(ErrorKind::InvalidArgument, "only the on-resonance double-kicked rotor is supported");
    }
};

/// U = e^{-i n^2 tau / 2} e^{-i k cos(theta)} on a spin-free window.
UnitaryOperator qkr_floquet(const QkrParams& p, const MomentumBasis& basis);

/// The two kick generators cos(theta) (x) sigma_x and sin(theta) (x) sigma_y of
/// one momentum window, eigendecomposed once and reused for any (k1, k2).
class DkqrKicks {
public:
    explicit DkqrKicks(const MomentumBasis& basis);

    /// Spinful basis of the operators produced.
    const MomentumBasis& basis() const noexcept { return basis_; }

    /// e^{-i a cos(theta) sigma_x}
    MatrixXc cos_kick(double a) const { return cos_kick_.exp_matrix(a); }
    /// e^{-i a sin(theta) sigma_y}
    MatrixXc sin_kick(double a) const { return sin_kick_.exp_matrix(a); }

    /// U_1 = e^{-i (k1/2) cos sx} e^{-i k2 sin sy} e^{-i (k1/2) cos sx}
    UnitaryOperator frame1(const DkqrParams& p) const;
    /// U_2 = e^{-i (k2/2) sin sy} e^{-i k1 cos sx} e^{-i (k2/2) sin sy}
    UnitaryOperator frame2(const DkqrParams& p) const;
    UnitaryOperator frame(const DkqrParams& p, int frame) const;

private:
    MomentumBasis basis_;
    PauliKick<double> cos_kick_;
    PauliKick<double> sin_kick_;
};

/// Frame-1 chiral-symmetric Floquet operator; `basis` is the spin-free window.
UnitaryOperator dkqr_floquet_frame1(const DkqrParams& p, const MomentumBasis& basis);
/// Frame-2 chiral-symmetric Floquet operator (k2 kick split around k1).
UnitaryOperator dkqr_floquet_frame2(const DkqrParams& p, const MomentumBasis& basis);

/// Bulk 2x2 Floquet operator at angle theta: cos(theta_hat), sin(theta_hat)
/// replaced by the scalars cos(theta), sin(theta).
Eigen::Matrix2cd bloch_floquet_2x2(const DkqrParams& p, double theta, int frame);

/// e^{-i angle sigma_axis} = cos(angle) 1 - i sin(angle) sigma_axis
Eigen::Matrix2cd pauli_rotation(PauliAxis axis, double angle);

} // namespace rotor
