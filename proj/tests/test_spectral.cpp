#include <doctest.h>

#include <random>

#include "rotor/floquet.hpp"
#include "rotor/spectral.hpp"
#include "support.hpp"

using namespace rotor;

TEST_SUITE("spectral") {

TEST_CASE("random unitaries diagonalize to sorted orthonormal eigenpairs")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5 + 3 * trial;
        const MatrixXc u = testing::random_unitary(n, rng);
        const MomentumBasis b(0, n - 1, BoundaryCondition::open());
        const auto spec = diagonalize(UnitaryOperator(u), b);
        CHECK(spec.max_residual < 1e-10);
        CHECK(!spec.ill_conditioned);
        const MatrixXc gram = spec.vectors.adjoint() * spec.vectors;
        CHECK((gram - MatrixXc::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
        for (Eigen::Index j = 0; j < n; ++j) {
            CHECK(spec.phases(j) > -kPi);
            CHECK(spec.phases(j) <= kPi);
            if (j)
                CHECK(spec.phases(j - 1) <= spec.phases(j));
        }
    }
}

TEST_CASE("known diagonal spectrum")
{
    const MomentumBasis b = MomentumBasis::symmetric(2);
    Eigen::VectorXd phi(5);
    phi << 0.3, -2.0, kPi, 1.0, -0.1;
    MatrixXc u = MatrixXc::Zero(5, 5);
    for (int j = 0; j < 5; ++j)
        u(j, j) = std::polar(1.0, -phi(j));
    const auto spec = diagonalize(UnitaryOperator(u), b);
    Eigen::VectorXd want(5);
    want << -2.0, -0.1, 0.3, 1.0, kPi;
    CHECK((spec.phases - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("degenerate eigenspace stays orthonormal and edge-ordered")
{
    // the identity is one cluster; columns come back as an orthonormal basis
    const MomentumBasis b = MomentumBasis::symmetric(10);
    const auto spec = diagonalize(UnitaryOperator(MatrixXc::Identity(21, 21)), b);
    const MatrixXc gram = spec.vectors.adjoint() * spec.vectors;
    CHECK((gram - MatrixXc::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-12);
    const int w = default_edge_width(b);
    CHECK(edge_weight(spec.vectors.col(0), b, w) == doctest::Approx(1.0));
    for (int j = 1; j < 21; ++j)
        CHECK(edge_weight(spec.vectors.col(j - 1), b, w) >= edge_weight(spec.vectors.col(j), b, w) - 1e-12);
}

TEST_CASE("dimension mismatch")
{
    CHECK_THROWS_AS(diagonalize(UnitaryOperator(MatrixXc::Identity(4, 4)), MomentumBasis::symmetric(3)), Error);
}

TEST_CASE("edge weight of localized vectors")
{
    const MomentumBasis b = MomentumBasis::symmetric(30).with_spin(2);
    CHECK(default_edge_width(b) == 7);
    CHECK(default_edge_width(MomentumBasis::symmetric(10)) == 4);
    VectorXc v = VectorXc::Zero(b.dimension());
    v(b.class_index(-30) * 2 + 1) = 1.0;
    CHECK(edge_weight(v, b, 4) == doctest::Approx(1.0));
    v.setZero();
    v(b.class_index(0) * 2) = 1.0;
    CHECK(edge_weight(v, b, 4) == 0.0);
    v.setZero();
    v(b.class_index(26) * 2) = 1.0;
    CHECK(edge_weight(v, b, 5) == doctest::Approx(1.0));
    CHECK(edge_weight(v, b, 4) == 0.0);
    CHECK(class_occupation(v, b)(b.class_index(26)) == doctest::Approx(1.0));
}

TEST_CASE("pairing prefers opposite sides and respects targets")
{
    std::vector<EdgeStateRecord> r{
        {0, -kPi + 1e-9, EdgeTarget::Pi, 0.9, EdgeSide::Low},
        {1, kPi, EdgeTarget::Pi, 0.9, EdgeSide::High},
        {5, 0.0, EdgeTarget::Zero, 0.8, EdgeSide::Low},
        {6, 1e-8, EdgeTarget::Zero, 0.8, EdgeSide::Low},
        {7, 2e-8, EdgeTarget::Zero, 0.8, EdgeSide::High},
    };
    const auto rep = pair_edge_states(r);
    CHECK(rep.pairs_pi == 1);
    CHECK(rep.pairs_zero == 1);
    REQUIRE(rep.unpaired.size() == 1);
    CHECK(rep.unpaired[0] == 6);
}

TEST_CASE("antiresonant open window is flat at 0 and pi")
{
    const MomentumBasis b(-27, 27, BoundaryCondition::open());
    const auto spec = diagonalize(qkr_floquet({2.0, 2 * kPi}, b), b);
    for (Eigen::Index j = 0; j < spec.size(); ++j)
        CHECK(std::min(std::abs(spec.phases(j)), kPi - std::abs(spec.phases(j))) < 1e-10);
}

TEST_CASE("edge states on open and periodic windows")
{
    const DkqrParams p{0.5 * kPi, 1.5 * kPi};
    const MomentumBasis open = MomentumBasis::symmetric(30);
    const auto spec = diagonalize(dkqr_floquet_frame1(p, open), open.with_spin(2));
    const auto rec = detect_edge_states(spec);
    std::vector<int> idx;
    for (const auto& r : rec)
        idx.push_back(r.index);
    CHECK(idx == std::vector<int>{0, 1, 60, 61, 120, 121});
    const auto pairs = pair_edge_states(rec);
    CHECK(pairs.pairs_zero == 1);
    CHECK(pairs.pairs_pi == 2);

    const MomentumBasis ring = MomentumBasis::symmetric(30, BoundaryCondition::periodic());
    const auto ring_spec = diagonalize(dkqr_floquet_frame1(p, ring), ring.with_spin(2));
    CHECK(detect_edge_states(ring_spec).empty());
}

}
