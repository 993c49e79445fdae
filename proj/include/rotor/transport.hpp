#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rotor/floquet.hpp"

namespace rotor {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kContactThreshold = 1e-12;

struct SpinorState {
    VectorXc amplitudes;
    MomentumBasis basis;

    /// delta_{n,n0} (x) |spin>, spin 0 = up. On a spin-free basis `spin` must be 0.
    static SpinorState localized(const MomentumBasis& basis, int n0 = 0, int spin = 0);

    double norm() const { return amplitudes.norm(); }
};

struct TransportTrace {
    MomentumBasis basis = MomentumBasis::symmetric(1);
    std::vector<SpinorState> states; ///< index T = 0..periods
    std::vector<double> c_of_t;
    std::vector<double> mcd;         ///< index T: average of C(1..T); mcd[0] = C(0)
    std::vector<double> c_up;        ///< sum n |psi_up|^2
    std::vector<double> c_down;      ///< -sum n |psi_down|^2
    std::vector<double> mean_n;      ///< sum n |psi|^2
    std::vector<double> mean_n_up;   ///< sum n |psi_up|^2, population weighted
    std::vector<double> mean_n_down; ///< sum n |psi_down|^2, population weighted
    std::vector<Eigen::VectorXd> dist_up;
    std::vector<Eigen::VectorXd> dist_down;
    std::vector<double> energy;      ///< <n^2 / 2>

    int periods() const noexcept { return static_cast<int>(states.size()) - 1; }
    /// Largest |n| holding more than `threshold` probability at any recorded period.
    int max_occupied_momentum(double threshold = 1e-8) const;
};

TransportTrace evolve(const UnitaryOperator& u, const SpinorState& psi0, int periods);

double chiral_displacement(const TransportTrace& trace, int t);

/// Running average (1/t) sum_{t'=1..t} C(t'); entry 0 holds C(0).
std::vector<double> running_average(std::span<const double> series);
std::vector<double> mcd(const TransportTrace& trace);

struct McdRow {
    double k2 = 0.0;
    BoundaryCondition bc;
    double mcd = 0.0;
    double mcd_up = 0.0;
    double mcd_down = 0.0;
    int periods = 0;
    TransportTrace trace;
};

struct SweepOptions {
    int n_max = 30;
    int periods = 15;
    int pad_nmax = 200; ///< window of the ideal run
    int frame = 1;
};

/// Evolves delta_{n,0} (x) up under U_frame(k1, k2) for every k2, in grid order.
std::vector<McdRow> mcd_sweep(double k1, std::span<const double> k2_grid, const BoundaryCondition& bc,
                              const SweepOptions& options = {});
/// Same on an explicit spin-free window; options.n_max and pad_nmax are ignored.
std::vector<McdRow> mcd_sweep(double k1, std::span<const double> k2_grid, const MomentumBasis& basis,
                              const SweepOptions& options = {});

/// Basis for a run with boundary kind `bc` and physical window n_max.
MomentumBasis transport_basis(const BoundaryCondition& bc, int n_max, int pad_nmax, int spin_dim = 2);

struct DistributionDelta {
    int n_max = 0;
    TransportTrace periodic;
    TransportTrace ideal;
    /// delta[T][n + n_max]: spin-down |psi_PBC|^2 - |psi_Ideal|^2, each
    /// normalized to unit mass on [-n_max, n_max] (zero where that mass vanishes).
    std::vector<Eigen::VectorXd> delta;
    std::vector<double> mean_n_periodic; ///< spin-down <n>, normalized
    std::vector<double> mean_n_ideal;
};

DistributionDelta distribution_delta(double k1, double k2, int n_max, int periods, int pad_nmax = 200);

/// E(T) = <psi_T| n^2 / 2 |psi_T> under the resonant single-kick rotor from delta_{n,0}.
/// Throws BoundaryContact if the outermost classes pick up probability.
std::vector<double> energy_growth(double k, const MomentumBasis& basis, int periods);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

} // namespace rotor
