#include "rotor/topology.hpp"

#include <algorithm>
#include <limits>

#include "rotor/parallel.hpp"

namespace rotor {

BlochSample bloch_vector(const DkqrParams& p, double theta, int frame, double gap_floor)
{
    const Eigen::Matrix2cd u = bloch_floquet_2x2(p, theta, frame);
    // U = d0 - i d . sigma  =>  tr(U sigma_a) = -2i d_a
    Eigen::Vector3d d;
    d.x() = -(u * pauli<double>(PauliAxis::X)).trace().imag() / 2.0;
    d.y() = -(u * pauli<double>(PauliAxis::Y)).trace().imag() / 2.0;
    d.z() = -(u * pauli<double>(PauliAxis::Z)).trace().imag() / 2.0;
    const double margin = d.norm();
    if (margin < gap_floor)
        throw GapClosed(theta, margin);
    return {theta, d / margin, margin};
}

AngleAccumulation accumulate_winding(const std::vector<double>& angles)
{
    AngleAccumulation acc;
    if (angles.empty()) {
        acc.resolved = true;
        return acc;
    }
    double total = 0.0;
    for (std::size_t j = 0; j < angles.size(); ++j) {
        const double next = angles[(j + 1) % angles.size()];
        const double step = std::remainder(next - angles[j], kTwoPi);
        total += step;
        acc.max_increment = std::max(acc.max_increment, std::abs(step));
    }
    acc.resolved = acc.max_increment < kPi / 2;
    acc.winding = static_cast<int>(std::lround(total / kTwoPi));
    return acc;
}

FrameWinding frame_winding(const DkqrParams& p, int frame, const WindingOptions& options)
{
    if (options.grid < 64)
        throw Error(ErrorKind::InvalidArgument, "winding grid must have at least 64 points");
    double min_margin = std::numeric_limits<double>::infinity();
    int used_grid = options.grid;
    auto angle_at = [&](double theta) {
        const BlochSample s = bloch_vector(p, theta, frame, options.gap_floor);
        min_margin = std::min(min_margin, s.gap_margin);
        return std::atan2(s.n_vec.y(), s.n_vec.x());
    };
    AngleAccumulation acc;
    for (int m = options.grid;; m *= 2) {
        std::vector<double> angles(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            angles[static_cast<std::size_t>(j)] = angle_at(-kPi + kTwoPi * j / m);
        acc = accumulate_winding(angles);
        used_grid = m;
        if (acc.resolved)
            break;
        if (2 * m > options.grid_cap)
            throw Error(ErrorKind::RefinementExhausted,
                        "winding increments stay >= pi/2 at " + std::to_string(m) + " points");
    }
    return {acc.winding, min_margin, used_grid};
}

int winding_number(const DkqrParams& p, int frame, int grid)
{
    WindingOptions options;
    options.grid = grid;
    return frame_winding(p, frame, options).winding;
}

WindingReport winding_pair(const DkqrParams& p, const WindingOptions& options)
{
    const FrameWinding f1 = frame_winding(p, 1, options);
    const FrameWinding f2 = frame_winding(p, 2, options);
    WindingReport r;
    r.w1 = f1.winding;
    r.w2 = f2.winding;
    r.w0 = Rational::of(r.w1 + r.w2, 2);
    r.wpi = Rational::of(r.w1 - r.w2, 2);
    r.min_gap_margin = std::min(f1.min_gap_margin, f2.min_gap_margin);
    r.grid_size = std::max(f1.grid_size, f2.grid_size);
    return r;
}

std::vector<PhaseDiagramCell> phase_diagram(const std::vector<double>& k1_grid, const std::vector<double>& k2_grid,
                                            const WindingOptions& options)
{
    const std::size_t cols = k2_grid.size();
    return parallel_map<PhaseDiagramCell>(k1_grid.size() * cols, [&](std::size_t idx) {
        return evaluate_cell(k1_grid[idx / cols], k2_grid[idx % cols], options);
    });
}

PhaseDiagramCell evaluate_cell(double k1, double k2, const WindingOptions& options)
{
    PhaseDiagramCell cell;
    cell.k1 = k1;
    cell.k2 = k2;
    try {
        cell.report = winding_pair({k1, k2}, options);
    } catch (const GapClosed&) {
        cell.status = WindingStatus::GapClosed;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::RefinementExhausted)
            throw;
        // A closing between grid points shows up as an unresolved jump.
        cell.status = min_gap_margin({k1, k2}, 2048) < options.gap_floor ? WindingStatus::GapClosed
                                                                          : WindingStatus::RefinementExhausted;
    }
    return cell;
}

std::vector<PhaseDiagramCell> insert_transitions(const std::vector<PhaseDiagramCell>& cells,
                                                 const WindingOptions& options)
{
    std::vector<std::size_t> gaps;
    for (std::size_t i = 1; i < cells.size(); ++i) {
        const auto& a = cells[i - 1];
        const auto& b = cells[i];
        if (a.k1 == b.k1 && a.status == WindingStatus::Ok && b.status == WindingStatus::Ok
            && (a.report.w0 != b.report.w0 || a.report.wpi != b.report.wpi))
            gaps.push_back(i);
    }
    const auto located = parallel_map<PhaseDiagramCell>(gaps.size(), [&](std::size_t j) {
        const auto& a = cells[gaps[j] - 1];
        const auto& b = cells[gaps[j]];
        return evaluate_cell(a.k1, find_gap_closing(a.k1, a.k2, b.k2).k2, options);
    });
    std::vector<PhaseDiagramCell> out;
    out.reserve(cells.size() + gaps.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (next < gaps.size() && gaps[next] == i) {
            if (located[next].status != WindingStatus::Ok)
                out.push_back(located[next]);
            ++next;
        }
        out.push_back(cells[i]);
    }
    return out;
}

namespace {

// |sin E| = |d|, read off the Pauli components so it stays accurate near zero.
double bulk_margin(const DkqrParams& p, double theta)
{
    const Eigen::Matrix2cd u = bloch_floquet_2x2(p, theta, 1);
    const double dx = (u * pauli<double>(PauliAxis::X)).trace().imag();
    const double dy = (u * pauli<double>(PauliAxis::Y)).trace().imag();
    const double dz = (u * pauli<double>(PauliAxis::Z)).trace().imag();
    return 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz);
}

template <typename F>
double golden_minimize(F&& f, double lo, double hi, double tol)
{
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - r * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + r * (b - a); fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Best theta on the grid, polished by golden section between its neighbours.
std::pair<double, double> min_over_theta(const DkqrParams& p, int grid)
{
    double best_theta = -kPi;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid; ++j) {
        const double theta = -kPi + kTwoPi * j / grid;
        const double m = bulk_margin(p, theta);
        if (m < best) {
            best = m;
            best_theta = theta;
        }
    }
    const double h = kTwoPi / grid;
    const double theta = golden_minimize([&](double t) { return bulk_margin(p, t); }, best_theta - h,
                                         best_theta + h, 1e-14);
    const double polished = bulk_margin(p, theta);
    return polished < best ? std::pair{theta, polished} : std::pair{best_theta, best};
}

} // namespace

double min_gap_margin(const DkqrParams& p, int grid)
{
    return min_over_theta(p, grid).second;
}

GapClosing find_gap_closing(double k1, double k2_lo, double k2_hi, int grid)
{
    // Coarse scan first so the golden section starts in the right valley.
    const int coarse = 64;
    double best_k2 = k2_lo;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= coarse; ++j) {
        const double k2 = k2_lo + (k2_hi - k2_lo) * j / coarse;
        const double m = min_gap_margin({k1, k2}, grid);
        if (m < best) {
            best = m;
            best_k2 = k2;
        }
    }
    const double h = (k2_hi - k2_lo) / coarse;
    const double k2 = golden_minimize([&](double x) { return min_over_theta({k1, x}, grid).second; },
                                      std::max(k2_lo, best_k2 - h), std::min(k2_hi, best_k2 + h), 1e-13);
    const auto [theta, margin] = min_over_theta({k1, k2}, grid);
    return {k2, theta, margin};
}

} // namespace rotor
