#include "rotor/spectral.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace rotor {

Eigen::VectorXd class_occupation(const Eigen::Ref<const VectorXc>& v, const MomentumBasis& basis)
{
    if (v.size() != basis.dimension())
        throw Error(ErrorKind::DimensionMismatch, "vector does not match basis dimension");
    Eigen::VectorXd occ = Eigen::VectorXd::Zero(basis.classes());
    for (int c = 0; c < basis.classes(); ++c)
        for (int s = 0; s < basis.spin_dim(); ++s)
            occ(c) += std::norm(v(c * basis.spin_dim() + s));
    return occ;
}

int default_edge_width(const MomentumBasis& basis)
{
    return std::max(4, static_cast<int>(std::ceil(0.05 * basis.dimension())));
}

double edge_weight(const Eigen::Ref<const VectorXc>& v, const MomentumBasis& basis, int width)
{
    if (width < 1)
        throw Error(ErrorKind::InvalidArgument, "edge width must be positive");
    const Eigen::VectorXd occ = class_occupation(v, basis);
    const int n = basis.classes();
    const int w = std::min(width, n / 2);
    return occ.head(w).sum() + occ.tail(w).sum();
}

namespace {

// Modified Gram-Schmidt over the given columns, twice for stability.
void reorthonormalize(MatrixXc& vectors, int first, int count)
{
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = first; j < first + count; ++j) {
            for (int i = first; i < j; ++i)
                vectors.col(j) -= vectors.col(i).dot(vectors.col(j)) * vectors.col(i);
            vectors.col(j).normalize();
        }
    }
}

} // namespace

QuasienergySpectrum diagonalize(const UnitaryOperator& u, const MomentumBasis& basis)
{
    if (u.dimension() != basis.dimension())
        throw Error(ErrorKind::DimensionMismatch, "operator does not match basis dimension");

    // For a normal matrix the Schur form is diagonal and the Schur vectors are
    // an orthonormal eigenbasis, including inside degenerate clusters.
    Eigen::ComplexSchur<MatrixXc> schur(u.matrix());
    if (schur.info() != Eigen::Success)
        throw Error(ErrorKind::DiagonalizationFailed, "complex Schur decomposition did not converge");
    const MatrixXc& t = schur.matrixT();
    const MatrixXc& q = schur.matrixU();
    const Eigen::Index dim = t.rows();

    Eigen::VectorXd raw(dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        raw(j) = fold_phase(-std::arg(t(j, j)));

    const int width = default_edge_width(basis);
    std::vector<Eigen::Index> order(dim);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return raw(a) < raw(b); });

    QuasienergySpectrum spec{Eigen::VectorXd(dim), MatrixXc(dim, dim), basis};
    for (Eigen::Index j = 0; j < dim; ++j) {
        spec.phases(j) = raw(order[j]);
        spec.vectors.col(j) = q.col(order[j]);
    }

    // Clusters of equal phases: clean up, then order by descending edge weight.
    for (Eigen::Index start = 0; start < dim;) {
        Eigen::Index end = start + 1;
        while (end < dim && spec.phases(end) - spec.phases(end - 1) <= kDegeneracyTolerance)
            ++end;
        const int count = static_cast<int>(end - start);
        if (count > 1) {
            reorthonormalize(spec.vectors, static_cast<int>(start), count);
            std::vector<std::pair<double, Eigen::Index>> keyed;
            for (Eigen::Index j = start; j < end; ++j)
                keyed.emplace_back(edge_weight(spec.vectors.col(j), basis, width), j);
            std::stable_sort(keyed.begin(), keyed.end(),
                             [](const auto& a, const auto& b) { return a.first > b.first; });
            const MatrixXc cols = spec.vectors.middleCols(start, count);
            const Eigen::VectorXd ph = spec.phases.segment(start, count);
            for (int k = 0; k < count; ++k) {
                spec.vectors.col(start + k) = cols.col(keyed[k].second - start);
                spec.phases(start + k) = ph(keyed[k].second - start);
            }
        }
        start = end;
    }

    for (Eigen::Index j = 0; j < dim; ++j) {
        const std::complex<double> lambda = std::polar(1.0, -spec.phases(j));
        const double r = (u.matrix() * spec.vectors.col(j) - lambda * spec.vectors.col(j)).norm();
        spec.max_residual = std::max(spec.max_residual, r);
    }
    spec.ill_conditioned = spec.max_residual > kResidualTolerance;
    return spec;
}

std::vector<EdgeStateRecord> detect_edge_states(const QuasienergySpectrum& spec, const EdgeDetectionOptions& options)
{
    const int width = options.width > 0 ? options.width : default_edge_width(spec.basis);
    const int n = spec.basis.classes();
    const int w = std::min(width, n / 2);
    std::vector<EdgeStateRecord> out;
    for (Eigen::Index j = 0; j < spec.size(); ++j) {
        const double phi = spec.phases(j);
        EdgeTarget target;
        if (std::abs(phi) <= options.phase_tol)
            target = EdgeTarget::Zero;
        else if (std::abs(std::abs(phi) - kPi) <= options.phase_tol)
            target = EdgeTarget::Pi;
        else
            continue;

        const Eigen::VectorXd occ = class_occupation(spec.vectors.col(j), spec.basis);
        const double low = occ.head(w).sum();
        const double high = occ.tail(w).sum();
        const double weight = low + high;
        if (weight < options.weight_threshold)
            continue;

        EdgeSide side = EdgeSide::Both;
        if (low > 0.6 * weight)
            side = EdgeSide::Low;
        else if (high > 0.6 * weight)
            side = EdgeSide::High;
        out.push_back({static_cast<int>(j), phi, target, weight, side});
    }
    return out;
}

EdgePairingReport pair_edge_states(std::span<const EdgeStateRecord> records, double split_tol)
{
    EdgePairingReport report;
    std::vector<bool> used(records.size(), false);
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (used[i])
            continue;
        std::size_t best = records.size();
        int best_score = -1;
        for (std::size_t j = i + 1; j < records.size(); ++j) {
            if (used[j] || records[j].target != records[i].target)
                continue;
            if (circular_distance(records[i].phase, records[j].phase) > split_tol)
                continue;
            const bool opposite = records[i].side != EdgeSide::Both && records[j].side != EdgeSide::Both
                                  && records[i].side != records[j].side;
            const int score = opposite ? 1 : 0;
            if (score > best_score) {
                best_score = score;
                best = j;
            }
        }
        if (best == records.size())
            continue;
        used[i] = used[best] = true;
        report.members.emplace_back(records[i].index, records[best].index);
        (records[i].target == EdgeTarget::Zero ? report.pairs_zero : report.pairs_pi) += 1;
    }
    for (std::size_t i = 0; i < records.size(); ++i)
        if (!used[i])
            report.unpaired.push_back(records[i].index);
    return report;
}

} // namespace rotor
