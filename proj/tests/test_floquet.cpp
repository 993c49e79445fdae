#include <doctest.h>

#include <algorithm>
#include <vector>

#include "rotor/floquet.hpp"
#include "rotor/spectral.hpp"
#include "support.hpp"

using namespace rotor;

namespace {

std::vector<double> phases_of(const MatrixXc& u)
{
    Eigen::ComplexEigenSolver<MatrixXc> es(u, false);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        out.push_back(-std::arg(es.eigenvalues()(i)));
    return out;
}

MatrixXc dense_frame1(const DkqrParams& p, const MomentumBasis& b)
{
    const auto cx = tensor_with_pauli(build_cos_theta(b), PauliAxis::X);
    const auto sy = tensor_with_pauli(build_sin_theta(b), PauliAxis::Y);
    const MatrixXc half = unitary_exp(cx, p.k1 / 2).matrix();
    return half * unitary_exp(sy, p.k2).matrix() * half;
}

} // namespace

TEST_SUITE("floquet") {

TEST_CASE("resonant QKR on a ring has the circulant spectrum")
{
    const MomentumBasis b(-50, 50, BoundaryCondition::periodic());
    const double k = 2.0;
    const UnitaryOperator u = qkr_floquet({k, 4 * kPi}, b);
    CHECK(u.defect() < 1e-10);
    std::vector<double> oracle;
    for (int j = 0; j < 101; ++j)
        oracle.push_back(fold_phase(k * std::cos(kTwoPi * j / 101)));
    CHECK(testing::multiset_distance(phases_of(u.matrix()), oracle) < 1e-10);
}

TEST_CASE("antiresonant QKR squares to the identity on an open window")
{
    const MomentumBasis b(-27, 27, BoundaryCondition::open());
    const MatrixXc u = qkr_floquet({2.0, 2 * kPi}, b).matrix();
    CHECK((u * u - MatrixXc::Identity(55, 55)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("QKR regime classification")
{
    CHECK(QkrParams{1.0, 4 * kPi}.regime() == QkrRegime::Resonant);
    CHECK(QkrParams{1.0, 2 * kPi}.regime() == QkrRegime::Antiresonant);
    CHECK(QkrParams{1.0, 1.0}.regime() == QkrRegime::Generic);
}

TEST_CASE("zero kicks give the identity")
{
    const MomentumBasis b = MomentumBasis::symmetric(5);
    CHECK((dkqr_floquet_frame1({0, 0}, b).matrix() - MatrixXc::Identity(22, 22)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((qkr_floquet({0, 4 * kPi}, b).matrix() - MatrixXc::Identity(11, 11)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("kick factorization agrees with dense exponentials")
{
    for (BoundaryCondition bc : {BoundaryCondition::open(), BoundaryCondition::periodic()}) {
        const MomentumBasis b = MomentumBasis::symmetric(8, bc);
        const DkqrParams p{1.3 * kPi, 0.7 * kPi};
        CHECK((dkqr_floquet_frame1(p, b).matrix() - dense_frame1(p, b)).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("chiral symmetry sigma_z U sigma_z = U^dagger in both frames")
{
    const MomentumBasis b = MomentumBasis::symmetric(10);
    MatrixXc gamma = MatrixXc::Zero(42, 42);
    for (int j = 0; j < 21; ++j) {
        gamma(2 * j, 2 * j) = 1.0;
        gamma(2 * j + 1, 2 * j + 1) = -1.0;
    }
    const DkqrParams p{1.5 * kPi, 2.1 * kPi};
    for (int frame : {1, 2}) {
        const MatrixXc u = DkqrKicks(b).frame(p, frame).matrix();
        CHECK((gamma * u * gamma - u.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("the two frames share one spectrum")
{
    const MomentumBasis b = MomentumBasis::symmetric(30);
    const DkqrParams p{1.5 * kPi, 1.5 * kPi};
    const auto s1 = diagonalize(dkqr_floquet_frame1(p, b), b.with_spin(2));
    const auto s2 = diagonalize(dkqr_floquet_frame2(p, b), b.with_spin(2));
    CHECK((s1.phases - s2.phases).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("unitarity over a parameter scan")
{
    const DkqrKicks kicks(MomentumBasis::symmetric(12, BoundaryCondition::periodic()));
    for (double k1 = 0; k1 < 3 * kPi; k1 += 0.37 * kPi)
        for (double k2 = 0; k2 < 3 * kPi; k2 += 0.41 * kPi)
            CHECK(kicks.frame1({k1, k2}).defect() < 1e-12);
}

TEST_CASE("off-resonance double kick is rejected")
{
    DkqrParams p{1.0, 1.0};
    p.resonant = false;
    CHECK_THROWS_AS(dkqr_floquet_frame1(p, MomentumBasis::symmetric(3)), Error);
    CHECK_THROWS_AS(bloch_floquet_2x2({1.0, 1.0}, 0.0, 3), Error);
}

TEST_CASE("Bloch operator is the plane-wave block of the ring operator")
{
    // On a ring of N classes every plane wave is an eigenvector of cos and sin,
    // so the ring spectrum is the union of the 2x2 Bloch spectra.
    const MomentumBasis b(-10, 10, BoundaryCondition::periodic());
    const DkqrParams p{1.2 * kPi, 0.8 * kPi};
    std::vector<double> bloch;
    for (int j = 0; j < 21; ++j) {
        const auto ph = phases_of(bloch_floquet_2x2(p, kTwoPi * j / 21, 1));
        bloch.insert(bloch.end(), ph.begin(), ph.end());
    }
    CHECK(testing::multiset_distance(phases_of(dkqr_floquet_frame1(p, b).matrix()), bloch) < 1e-10);
}

TEST_CASE("explicit Pauli rotations")
{
    const double a = 0.37;
    const Eigen::Matrix2cd rx = pauli_rotation(PauliAxis::X, a);
    CHECK(std::abs(rx(0, 0) - std::cos(a)) < 1e-15);
    CHECK(std::abs(rx(0, 1) - std::complex<double>(0, -std::sin(a))) < 1e-15);
    const Eigen::Matrix2cd ry = pauli_rotation(PauliAxis::Y, a);
    CHECK(std::abs(ry(0, 1) + std::sin(a)) < 1e-15);
    CHECK(std::abs(ry(1, 0) - std::sin(a)) < 1e-15);
    // at theta = pi/2 the frame-1 operator is a pure sigma_y rotation by k2
    const DkqrParams p{0.9, 1.7};
    CHECK((bloch_floquet_2x2(p, kPi / 2, 1) - pauli_rotation(PauliAxis::Y, 1.7)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("antiresonance on a symmetric ring does not square to one")
{
    const MomentumBasis b(-27, 27, BoundaryCondition::periodic());
    const MatrixXc u = qkr_floquet({2.0, 2 * kPi}, b).matrix();
    const MatrixXc d = u * u - MatrixXc::Identity(55, 55);
    CHECK(d.cwiseAbs().maxCoeff() > 1e-3);
    // the defect lives next to the seam
    double interior = 0;
    for (int i = 20; i < 35; ++i)
        interior = std::max(interior, d.row(i).cwiseAbs().maxCoeff());
    CHECK(interior < 1e-3 * d.cwiseAbs().maxCoeff());
}

TEST_CASE("resonant QKR is the bare kick")
{
    const MomentumBasis b = MomentumBasis::symmetric(9);
    const MatrixXc kick = unitary_exp(build_cos_theta(b), 1.7).matrix();
    CHECK((qkr_floquet({1.7, 4 * kPi}, b).matrix() - kick).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("half kicks merge when the other kick vanishes")
{
    const MomentumBasis b = MomentumBasis::symmetric(6);
    const MatrixXc u1 = dkqr_floquet_frame1({1.1, 0.0}, b).matrix();
    const MatrixXc ref1 = unitary_exp(tensor_with_pauli(build_cos_theta(b), PauliAxis::X), 1.1).matrix();
    CHECK((u1 - ref1).cwiseAbs().maxCoeff() < 1e-12);
    const MatrixXc u2 = dkqr_floquet_frame2({0.0, 2.3}, b).matrix();
    const MatrixXc ref2 = unitary_exp(tensor_with_pauli(build_sin_theta(b), PauliAxis::Y), 2.3).matrix();
    CHECK((u2 - ref2).cwiseAbs().maxCoeff() < 1e-12);
}

}
