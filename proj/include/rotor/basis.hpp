#pragma once

// Finite momentum-space representations of the angle operators.
//
// Conventions used throughout the library:
//   <theta|n> = e^{-i n theta} / sqrt(2 pi), so e^{i theta} lowers n by one
//   and |theta> = sum_n e^{i n theta} |n> is the Bloch state at lattice
//   momentum theta. cos(theta) is real symmetric; sin(theta) has
//   <n-1|sin|n> = 1/(2i) and <n+1|sin|n> = -1/(2i).
//   Spinful operators are ordered (momentum (x) spin) with spin-z order
//   {up, down}; state index = 2 * (n - n_lo) + s.

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "rotor/error.hpp"
#include "rotor/types.hpp"

namespace rotor {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

enum class BoundaryKind { Open, Periodic, Ideal };

constexpr std::string_view boundary_name(BoundaryKind kind)
{
    switch (kind) {
    case BoundaryKind::Open: return "open";
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Ideal: return "ideal";
    }
    return "unknown";
}

struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::Open;
    int pad_nmax = 0; ///< enlarged half-width, Ideal only

    static BoundaryCondition open() { return {BoundaryKind::Open, 0}; }
    static BoundaryCondition periodic() { return {BoundaryKind::Periodic, 0}; }
    static BoundaryCondition ideal(int pad_nmax) { return {BoundaryKind::Ideal, pad_nmax}; }

    bool wraps() const noexcept { return kind == BoundaryKind::Periodic; }
    friend bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;
};

/// Integer momentum window [n_lo, n_hi] with a boundary condition and an
/// optional spin-1/2 factor. Ideal windows are open windows of half-width
/// pad_nmax.
class MomentumBasis {
public:
    MomentumBasis(int n_lo, int n_hi, BoundaryCondition bc = BoundaryCondition::open(), int spin_dim = 1)
        : n_lo_(n_lo), n_hi_(n_hi), bc_(bc), spin_dim_(spin_dim)
    {
        if (n_lo > 0 || n_hi < 0)
            throw Error(ErrorKind::InvalidArgument, "momentum window must contain n = 0");
        if (n_hi - n_lo + 1 < 3)
            throw Error(ErrorKind::BasisTooSmall,
                        "window [" + std::to_string(n_lo) + ", " + std::to_string(n_hi) + "] has fewer than 3 classes");
        if (spin_dim != 1 && spin_dim != 2)
            throw Error(ErrorKind::InvalidArgument, "spin_dim must be 1 or 2");
        if (bc.kind == BoundaryKind::Ideal && (bc.pad_nmax <= 0 || n_lo != -bc.pad_nmax || n_hi != bc.pad_nmax))
            throw Error(ErrorKind::InvalidArgument, "ideal window must be [-pad_nmax, pad_nmax]");
    }

    static MomentumBasis symmetric(int n_max, BoundaryCondition bc = BoundaryCondition::open(), int spin_dim = 1)
    {
        if (bc.kind == BoundaryKind::Ideal)
            return ideal(n_max, bc.pad_nmax, spin_dim);
        return MomentumBasis(-n_max, n_max, bc, spin_dim);
    }

    /// Padded stand-in for an unbounded momentum lattice, for a caller that
    /// needs the physical window [-physical_nmax, physical_nmax].
    static MomentumBasis ideal(int physical_nmax, int pad_nmax, int spin_dim = 1)
    {
        if (pad_nmax < 2 * physical_nmax)
            throw Error(ErrorKind::InvalidArgument, "ideal padding must be at least twice the physical window");
        return MomentumBasis(-pad_nmax, pad_nmax, BoundaryCondition::ideal(pad_nmax), spin_dim);
    }

    int n_lo() const noexcept { return n_lo_; }
    int n_hi() const noexcept { return n_hi_; }
    const BoundaryCondition& bc() const noexcept { return bc_; }
    int spin_dim() const noexcept { return spin_dim_; }

    /// Number of momentum classes N.
    int classes() const noexcept { return n_hi_ - n_lo_ + 1; }
    /// Matrix dimension N * spin_dim.
    int dimension() const noexcept { return classes() * spin_dim_; }

    bool contains(int n) const noexcept { return n >= n_lo_ && n <= n_hi_; }
    int class_index(int n) const noexcept { return n - n_lo_; }
    int momentum(int class_index) const noexcept { return n_lo_ + class_index; }

    MomentumBasis with_spin(int spin_dim) const { return MomentumBasis(n_lo_, n_hi_, bc_, spin_dim); }

    friend bool operator==(const MomentumBasis&, const MomentumBasis&) = default;

private:
    int n_lo_;
    int n_hi_;
    BoundaryCondition bc_;
    int spin_dim_;
};

template <typename Real>
class BasicHermitianOperator {
public:
    using Matrix = CMatrix<Real>;

    explicit BasicHermitianOperator(Matrix m) : matrix_(std::move(m))
    {
        if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
            throw Error(ErrorKind::DimensionMismatch, "operator must be square and non-empty");
        const Real defect = hermiticity_defect(matrix_);
        if (!(defect <= Real(kHermitianTolerance)))
            throw Error(ErrorKind::NotHermitian, "max |M - M^dagger| = " + std::to_string(double(defect)));
    }

    const Matrix& matrix() const noexcept { return matrix_; }
    Eigen::Index dimension() const noexcept { return matrix_.rows(); }

private:
    Matrix matrix_;
};

/// Dense unitary matrix carrying its measured unitarity defect.
template <typename Real>
class BasicUnitaryOperator {
public:
    using Matrix = CMatrix<Real>;

    explicit BasicUnitaryOperator(Matrix m) : matrix_(std::move(m))
    {
        if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
            throw Error(ErrorKind::DimensionMismatch, "operator must be square and non-empty");
        defect_ = unitarity_defect(matrix_);
        if (!(defect_ <= Real(kUnitaryTolerance)))
            throw Error(ErrorKind::NotUnitary, "max |U^dagger U - 1| = " + std::to_string(double(defect_)));
    }

    const Matrix& matrix() const noexcept { return matrix_; }
    Eigen::Index dimension() const noexcept { return matrix_.rows(); }
    Real defect() const noexcept { return defect_; }

private:
    Matrix matrix_;
    Real defect_{};
};

using HermitianOperator = BasicHermitianOperator<double>;
using UnitaryOperator = BasicUnitaryOperator<double>;

enum class PauliAxis { X, Y, Z };

template <typename Real = double>
Eigen::Matrix<std::complex<Real>, 2, 2> pauli(PauliAxis axis)
{
    using C = std::complex<Real>;
    Eigen::Matrix<C, 2, 2> s;
    switch (axis) {
    case PauliAxis::X: s << C(0), C(1), C(1), C(0); break;
    case PauliAxis::Y: s << C(0), C(0, -1), C(0, 1), C(0); break;
    case PauliAxis::Z: s << C(1), C(0), C(0), C(-1); break;
    }
    return s;
}

namespace detail {

inline void require_spinless(const MomentumBasis& basis)
{
    if (basis.spin_dim() != 1)
        throw Error(ErrorKind::InvalidArgument, "angle operators are built on the spin-free window");
}

// Matrix of e^{i theta} on the window: <n-1|L|n> = 1, plus the seam
// <n_hi|L|n_lo> = 1 under periodic identification.
template <typename Real>
CMatrix<Real> lowering(const MomentumBasis& basis)
{
    const int n = basis.classes();
    CMatrix<Real> l = CMatrix<Real>::Zero(n, n);
    for (int j = 1; j < n; ++j)
        l(j - 1, j) = Real(1);
    if (basis.bc().wraps())
        l(n - 1, 0) = Real(1);
    return l;
}

} // namespace detail

/// cos(theta) = (e^{i theta} + e^{-i theta}) / 2 on the window.
template <typename Real = double>
BasicHermitianOperator<Real> build_cos_theta(const MomentumBasis& basis)
{
    detail::require_spinless(basis);
    const CMatrix<Real> l = detail::lowering<Real>(basis);
    return BasicHermitianOperator<Real>((l + l.adjoint()) * Real(0.5));
}

/// sin(theta) = (e^{i theta} - e^{-i theta}) / (2i) on the window.
template <typename Real = double>
BasicHermitianOperator<Real> build_sin_theta(const MomentumBasis& basis)
{
    detail::require_spinless(basis);
    const CMatrix<Real> l = detail::lowering<Real>(basis);
    const std::complex<Real> inv_2i(0, Real(-0.5));
    return BasicHermitianOperator<Real>((l - l.adjoint()) * inv_2i);
}

/// Free evolution over an interval tau: diag(e^{-i n^2 tau / 2}).
template <typename Real = double>
BasicUnitaryOperator<Real> build_kinetic_phase(const MomentumBasis& basis, Real tau)
{
    const Real turns_per_n2 = tau / (4 * std::numbers::pi_v<Real>);
    CMatrix<Real> u = CMatrix<Real>::Zero(basis.dimension(), basis.dimension());
    for (int c = 0; c < basis.classes(); ++c) {
        const Real n = basis.momentum(c);
        const std::complex<Real> phase = unit_phase_turns<Real>(n * n * turns_per_n2);
        for (int s = 0; s < basis.spin_dim(); ++s)
            u(c * basis.spin_dim() + s, c * basis.spin_dim() + s) = phase;
    }
    return BasicUnitaryOperator<Real>(std::move(u));
}

/// Kronecker product A (x) sigma_axis in (momentum (x) spin) order.
template <typename Real>
CMatrix<Real> kron_pauli(const CMatrix<Real>& a, PauliAxis axis)
{
    const auto s = pauli<Real>(axis);
    const Eigen::Index n = a.rows();
    CMatrix<Real> out(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * s;
    return out;
}

template <typename Real>
BasicHermitianOperator<Real> tensor_with_pauli(const BasicHermitianOperator<Real>& a, PauliAxis axis)
{
    return BasicHermitianOperator<Real>(kron_pauli(a.matrix(), axis));
}

/// Cached eigendecomposition H = V D V^dagger of a Hermitian generator;
/// exponentials for any prefactor reuse the same eigenbasis.
template <typename Real = double>
class HermitianEigenbasis {
public:
    explicit HermitianEigenbasis(const BasicHermitianOperator<Real>& h)
    {
        Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(h.matrix());
        if (solver.info() != Eigen::Success)
            throw Error(ErrorKind::DiagonalizationFailed, "Hermitian eigensolver did not converge");
        values_ = solver.eigenvalues();
        vectors_ = solver.eigenvectors();
    }

    const RVector<Real>& eigenvalues() const noexcept { return values_; }
    const CMatrix<Real>& eigenvectors() const noexcept { return vectors_; }

    /// f(H) = V diag(f(d)) V^dagger for a scalar function f.
    template <typename F>
    CMatrix<Real> apply(F&& f) const
    {
        const CVector<Real> diag = values_.unaryExpr([&](Real d) { return std::complex<Real>(f(d)); });
        return vectors_ * diag.asDiagonal() * vectors_.adjoint();
    }

    /// exp(-i prefactor H), without the unitarity certificate.
    CMatrix<Real> exp_matrix(Real prefactor) const
    {
        if (prefactor == Real(0))
            return CMatrix<Real>::Identity(vectors_.rows(), vectors_.cols());
        return apply([prefactor](Real d) { return std::polar(Real(1), -prefactor * d); });
    }

    BasicUnitaryOperator<Real> exp(Real prefactor) const { return BasicUnitaryOperator<Real>(exp_matrix(prefactor)); }

private:
    RVector<Real> values_;
    CMatrix<Real> vectors_;
};

/// exp(-i prefactor H) through the eigendecomposition of H.
template <typename Real>
BasicUnitaryOperator<Real> unitary_exp(const BasicHermitianOperator<Real>& h, Real prefactor)
{
    return HermitianEigenbasis<Real>(h).exp(prefactor);
}

/// Exponentials of a spin kick A (x) sigma_axis, with A spin-free.
///
/// Since sigma^2 = 1, exp(-i a A (x) sigma) = cos(aA) (x) 1 - i sin(aA) (x) sigma,
/// which is the spectral formula for the eigenbasis V (x) W of A (x) sigma.
/// Only the N x N eigenbasis of A is stored.
template <typename Real = double>
class PauliKick {
public:
    PauliKick(const BasicHermitianOperator<Real>& spin_free, PauliAxis axis) : eigen_(spin_free), axis_(axis) {}

    CMatrix<Real> exp_matrix(Real prefactor) const
    {
        if (prefactor == Real(0))
            return CMatrix<Real>::Identity(2 * eigen_.eigenvectors().rows(), 2 * eigen_.eigenvectors().rows());
        const CMatrix<Real> c = eigen_.apply([prefactor](Real d) { return std::cos(prefactor * d); });
        const CMatrix<Real> s = eigen_.apply([prefactor](Real d) { return std::sin(prefactor * d); });
        const auto sigma = pauli<Real>(axis_);
        const std::complex<Real> minus_i(0, -1);
        const Eigen::Index n = c.rows();
        CMatrix<Real> out(2 * n, 2 * n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                out.template block<2, 2>(2 * i, 2 * j) =
                    c(i, j) * Eigen::Matrix<std::complex<Real>, 2, 2>::Identity() + (minus_i * s(i, j)) * sigma;
        return out;
    }

    BasicUnitaryOperator<Real> exp(Real prefactor) const { return BasicUnitaryOperator<Real>(exp_matrix(prefactor)); }

    PauliAxis axis() const noexcept { return axis_; }

private:
    HermitianEigenbasis<Real> eigen_;
    PauliAxis axis_;
};

/// Momentum reflection n -> -n on a symmetric window.
template <typename Real = double>
CMatrix<Real> reflection_operator(const MomentumBasis& basis)
{
    if (basis.n_lo() != -basis.n_hi())
        throw Error(ErrorKind::InvalidArgument, "reflection needs a symmetric window");
    const int n = basis.classes();
    CMatrix<Real> p = CMatrix<Real>::Zero(n, n);
    for (int j = 0; j < n; ++j)
        p(n - 1 - j, j) = Real(1);
    return p;
}

/// diag((-1)^n), the Z2 grading that flips the sign of cos(theta) on open windows.
template <typename Real = double>
CMatrix<Real> momentum_parity_operator(const MomentumBasis& basis)
{
    const int n = basis.classes();
    CMatrix<Real> p = CMatrix<Real>::Zero(n, n);
    for (int j = 0; j < n; ++j)
        p(j, j) = (basis.momentum(j) % 2 == 0) ? Real(1) : Real(-1);
    return p;
}

} // namespace rotor
