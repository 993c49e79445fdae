#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rotor/basis.hpp"

namespace rotor {

inline constexpr double kResidualTolerance = 1e-8;
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Sorted eigenphases of a Floquet operator, lambda = e^{-i phi}, phi in (-pi, pi].
struct QuasienergySpectrum {
    Eigen::VectorXd phases;   ///< ascending
    MatrixXc vectors;         ///< column j belongs to phases[j]
    MomentumBasis basis;
    double max_residual = 0.0;
    bool ill_conditioned = false; ///< some |U v - e^{-i phi} v| exceeded kResidualTolerance

    Eigen::Index size() const noexcept { return phases.size(); }
};

/// Full eigendecomposition of a unitary through its complex Schur form.
/// Nearly degenerate clusters are re-orthonormalized; equal phases are
/// ordered by descending edge weight.
QuasienergySpectrum diagonalize(const UnitaryOperator& u, const MomentumBasis& basis);

/// max(4, ceil(0.05 * dimension)), dimension counting spin components.
int default_edge_width(const MomentumBasis& basis);

/// Probability on the `width` outermost momentum classes at each end of the
/// window, summed over spin.
double edge_weight(const Eigen::Ref<const VectorXc>& v, const MomentumBasis& basis, int width);

enum class EdgeTarget { Zero, Pi };
enum class EdgeSide { Low, High, Both };

constexpr std::string_view target_name(EdgeTarget t) { return t == EdgeTarget::Zero ? "zero" : "pi"; }
constexpr std::string_view side_name(EdgeSide s)
{
    return s == EdgeSide::Low ? "low" : (s == EdgeSide::High ? "high" : "both");
}

struct EdgeStateRecord {
    int index = 0;
    double phase = 0.0;
    EdgeTarget target = EdgeTarget::Zero;
    double edge_weight = 0.0;
    EdgeSide side = EdgeSide::Both;
};

struct EdgeDetectionOptions {
    double phase_tol = 0.05;
    double weight_threshold = 0.5;
    int width = 0; ///< 0 selects default_edge_width
};

std::vector<EdgeStateRecord> detect_edge_states(const QuasienergySpectrum& spec,
                                                const EdgeDetectionOptions& options = {});

struct EdgePairingReport {
    int pairs_zero = 0;
    int pairs_pi = 0;
    std::vector<std::pair<int, int>> members; ///< spectrum indices
    std::vector<int> unpaired;
};

/// Greedy pairing of same-target records whose phases agree within split_tol,
/// preferring partners on opposite sides of the window.
EdgePairingReport pair_edge_states(std::span<const EdgeStateRecord> records, double split_tol = 1e-6);

/// Momentum-class occupation sum_s |v(n, s)|^2 of an eigenvector.
Eigen::VectorXd class_occupation(const Eigen::Ref<const VectorXc>& v, const MomentumBasis& basis);

} // namespace rotor
