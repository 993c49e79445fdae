#include "rotor/transport.hpp"

#include <cmath>

#include "rotor/parallel.hpp"

namespace rotor {

SpinorState SpinorState::localized(const MomentumBasis& basis, int n0, int spin)
{
    if (!basis.contains(n0))
        throw Error(ErrorKind::InvalidArgument, "initial class n = " + std::to_string(n0) + " outside the window");
    if (spin < 0 || spin >= basis.spin_dim())
        throw Error(ErrorKind::InvalidArgument, "spin index out of range");
    SpinorState s{VectorXc::Zero(basis.dimension()), basis};
    s.amplitudes(basis.class_index(n0) * basis.spin_dim() + spin) = 1.0;
    return s;
}

int TransportTrace::max_occupied_momentum(double threshold) const
{
    int reach = 0;
    for (std::size_t t = 0; t < dist_up.size(); ++t)
        for (Eigen::Index i = 0; i < dist_up[t].size(); ++i)
            if (dist_up[t](i) + dist_down[t](i) > threshold)
                reach = std::max(reach, std::abs(basis.momentum(static_cast<int>(i))));
    return reach;
}

namespace {

void record(TransportTrace& trace, const VectorXc& psi)
{
    const MomentumBasis& b = trace.basis;
    const int spin = b.spin_dim();
    Eigen::VectorXd up = Eigen::VectorXd::Zero(b.classes());
    Eigen::VectorXd down = Eigen::VectorXd::Zero(b.classes());
    double n_up = 0, n_down = 0, energy = 0;
    for (int i = 0; i < b.classes(); ++i) {
        const double n = b.momentum(i);
        up(i) = std::norm(psi(i * spin));
        if (spin == 2)
            down(i) = std::norm(psi(i * spin + 1));
        n_up += n * up(i);
        n_down += n * down(i);
        energy += 0.5 * n * n * (up(i) + down(i));
    }
    trace.states.push_back({psi, b});
    trace.c_up.push_back(n_up);
    trace.c_down.push_back(-n_down);
    trace.c_of_t.push_back(n_up - n_down);
    trace.mean_n.push_back(n_up + n_down);
    trace.mean_n_up.push_back(n_up);
    trace.mean_n_down.push_back(n_down);
    trace.dist_up.push_back(std::move(up));
    trace.dist_down.push_back(std::move(down));
    trace.energy.push_back(energy);
}

} // namespace

TransportTrace evolve(const UnitaryOperator& u, const SpinorState& psi0, int periods)
{
    if (u.dimension() != psi0.basis.dimension() || psi0.amplitudes.size() != psi0.basis.dimension())
        throw Error(ErrorKind::DimensionMismatch, "state and operator dimensions differ");
    if (periods < 1)
        throw Error(ErrorKind::InvalidArgument, "periods must be at least 1");
    if (std::abs(psi0.norm() - 1.0) > kNormTolerance)
        throw Error(ErrorKind::InvalidArgument, "initial state is not normalized");

    TransportTrace trace;
    trace.basis = psi0.basis;
    VectorXc psi = psi0.amplitudes;
    record(trace, psi);
    for (int t = 1; t <= periods; ++t) {
        psi = u.matrix() * psi;
        record(trace, psi);
    }
    trace.mcd = running_average(trace.c_of_t);
    return trace;
}

double chiral_displacement(const TransportTrace& trace, int t)
{
    if (t < 0 || t > trace.periods())
        throw Error(ErrorKind::InvalidArgument, "period index out of range");
    return trace.c_of_t[static_cast<std::size_t>(t)];
}

std::vector<double> running_average(std::span<const double> series)
{
    std::vector<double> out(series.size());
    if (series.empty())
        return out;
    out[0] = series[0];
    double sum = 0;
    for (std::size_t t = 1; t < series.size(); ++t) {
        sum += series[t];
        out[t] = sum / static_cast<double>(t);
    }
    return out;
}

std::vector<double> mcd(const TransportTrace& trace) { return running_average(trace.c_of_t); }

MomentumBasis transport_basis(const BoundaryCondition& bc, int n_max, int pad_nmax, int spin_dim)
{
    if (bc.kind == BoundaryKind::Ideal)
        return MomentumBasis::ideal(n_max, bc.pad_nmax > 0 ? bc.pad_nmax : pad_nmax, spin_dim);
    return MomentumBasis::symmetric(n_max, bc, spin_dim);
}

std::vector<McdRow> mcd_sweep(double k1, std::span<const double> k2_grid, const BoundaryCondition& bc,
                              const SweepOptions& options)
{
    return mcd_sweep(k1, k2_grid, transport_basis(bc, options.n_max, options.pad_nmax, 1), options);
}

std::vector<McdRow> mcd_sweep(double k1, std::span<const double> k2_grid, const MomentumBasis& basis,
                              const SweepOptions& options)
{
    const DkqrKicks kicks(basis);
    const BoundaryCondition bc = basis.bc();
    const SpinorState psi0 = SpinorState::localized(kicks.basis());
    return parallel_map<McdRow>(k2_grid.size(), [&](std::size_t i) {
        McdRow row;
        row.k2 = k2_grid[i];
        row.bc = bc;
        row.periods = options.periods;
        row.trace = evolve(kicks.frame({k1, row.k2}, options.frame), psi0, options.periods);
        const auto up = running_average(row.trace.c_up);
        const auto down = running_average(row.trace.c_down);
        row.mcd = row.trace.mcd.back();
        row.mcd_up = up.back();
        row.mcd_down = down.back();
        return row;
    });
}

namespace {

// Spin-down occupation restricted to [-n_max, n_max] and normalized there.
Eigen::VectorXd aligned_down(const TransportTrace& trace, int t, int n_max)
{
    Eigen::VectorXd out(2 * n_max + 1);
    for (int n = -n_max; n <= n_max; ++n)
        out(n + n_max) = trace.dist_down[static_cast<std::size_t>(t)](trace.basis.class_index(n));
    const double mass = out.sum();
    return mass > 0 ? Eigen::VectorXd(out / mass) : Eigen::VectorXd(Eigen::VectorXd::Zero(out.size()));
}

double normalized_mean(const Eigen::VectorXd& dist, int n_lo)
{
    const double mass = dist.sum();
    if (mass <= 0)
        return 0.0;
    double m = 0;
    for (Eigen::Index i = 0; i < dist.size(); ++i)
        m += (n_lo + static_cast<double>(i)) * dist(i);
    return m / mass;
}

} // namespace

DistributionDelta distribution_delta(double k1, double k2, int n_max, int periods, int pad_nmax)
{
    const DkqrParams p{k1, k2};
    const DkqrKicks pbc(MomentumBasis::symmetric(n_max, BoundaryCondition::periodic()));
    const DkqrKicks ideal(MomentumBasis::ideal(n_max, pad_nmax));

    DistributionDelta out;
    out.n_max = n_max;
    out.periodic = evolve(pbc.frame1(p), SpinorState::localized(pbc.basis()), periods);
    out.ideal = evolve(ideal.frame1(p), SpinorState::localized(ideal.basis()), periods);
    for (int t = 0; t <= periods; ++t) {
        out.delta.push_back(aligned_down(out.periodic, t, n_max) - aligned_down(out.ideal, t, n_max));
        out.mean_n_periodic.push_back(
            normalized_mean(out.periodic.dist_down[static_cast<std::size_t>(t)], out.periodic.basis.n_lo()));
        out.mean_n_ideal.push_back(
            normalized_mean(out.ideal.dist_down[static_cast<std::size_t>(t)], out.ideal.basis.n_lo()));
    }
    return out;
}

std::vector<double> energy_growth(double k, const MomentumBasis& basis, int periods)
{
    const UnitaryOperator u = qkr_floquet({k, 4.0 * kPi}, basis);
    const TransportTrace trace = evolve(u, SpinorState::localized(basis), periods);
    for (int t = 0; t <= periods; ++t) {
        const auto& d = trace.dist_up[static_cast<std::size_t>(t)];
        const double edge = d(0) + d(d.size() - 1);
        if (edge > kContactThreshold)
            throw Error(ErrorKind::BoundaryContact, "outermost classes reach probability " + std::to_string(edge)
                                                        + " at period " + std::to_string(t));
    }
    return trace.energy;
}

double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorKind::InvalidArgument, "need at least two matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0 && y[i] > 0))
            throw Error(ErrorKind::InvalidArgument, "log-log fit needs positive data");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace rotor
