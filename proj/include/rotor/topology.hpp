#pragma once

#include <cmath>
#include <numeric>
#include <string_view>
#include <vector>

#include "rotor/floquet.hpp"

namespace rotor {

inline constexpr double kGapFloor = 1e-8;
inline constexpr int kWindingGridCap = 1 << 16;

struct BlochSample {
    double theta = 0.0;
    Eigen::Vector3d n_vec = Eigen::Vector3d::Zero();
    double gap_margin = 0.0; ///< |sin E(theta)|
};

/// Writes U_l(theta) = cos E - i sin E (n . sigma) with E in [0, pi] and
/// returns n together with |sin E|. Throws GapClosed below `gap_floor`.
BlochSample bloch_vector(const DkqrParams& p, double theta, int frame, double gap_floor = kGapFloor);

/// Exact fraction num/den in lowest terms, den > 0.
struct Rational {
    long num = 0;
    long den = 1;

    static Rational of(long num, long den)
    {
        const long g = std::gcd(num, den);
        const long sign = den < 0 ? -1 : 1;
        return {sign * num / (g == 0 ? 1 : g), sign * den / (g == 0 ? 1 : g)};
    }
    bool is_integer() const noexcept { return den == 1; }
    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Total signed turn of a closed sequence of planar angles. Valid (an exact
/// integer) only when every wrapped increment stays below pi/2 in magnitude.
struct AngleAccumulation {
    int winding = 0;
    double max_increment = 0.0;
    bool resolved = false;
};

AngleAccumulation accumulate_winding(const std::vector<double>& angles);

struct WindingOptions {
    int grid = 1024;
    int grid_cap = kWindingGridCap;
    double gap_floor = kGapFloor;
};

struct FrameWinding {
    int winding = 0;
    double min_gap_margin = 0.0;
    int grid_size = 0;
};

/// W_l for frame l in {1, 2}. Throws GapClosed or RefinementExhausted.
FrameWinding frame_winding(const DkqrParams& p, int frame, const WindingOptions& options = {});

int winding_number(const DkqrParams& p, int frame, int grid = 1024);

struct WindingReport {
    int w1 = 0;
    int w2 = 0;
    Rational w0;  ///< (w1 + w2) / 2
    Rational wpi; ///< (w1 - w2) / 2
    double min_gap_margin = 0.0;
    int grid_size = 0;

    bool integer_invariants() const noexcept { return w0.is_integer() && wpi.is_integer(); }
};

WindingReport winding_pair(const DkqrParams& p, const WindingOptions& options = {});

enum class WindingStatus { Ok, GapClosed, RefinementExhausted };

constexpr std::string_view status_name(WindingStatus s)
{
    switch (s) {
    case WindingStatus::Ok: return "ok";
    case WindingStatus::GapClosed: return "gap_closed";
    case WindingStatus::RefinementExhausted: return "refinement_exhausted";
    }
    return "unknown";
}

struct PhaseDiagramCell {
    double k1 = 0.0;
    double k2 = 0.0;
    WindingStatus status = WindingStatus::Ok;
    WindingReport report; ///< meaningful when status == Ok
};

/// winding_pair over the Cartesian grid k1_grid x k2_grid, row-major in
/// (k1, k2); transition points become status markers.
std::vector<PhaseDiagramCell> phase_diagram(const std::vector<double>& k1_grid, const std::vector<double>& k2_grid,
                                            const WindingOptions& options = {});

/// winding_pair at one point, with transition failures turned into a status.
PhaseDiagramCell evaluate_cell(double k1, double k2, const WindingOptions& options = {});

/// Wherever two neighbouring Ok cells of one k1 row disagree in (w0, wpi),
/// locates the gap closing between them and inserts it as a marker cell.
std::vector<PhaseDiagramCell> insert_transitions(const std::vector<PhaseDiagramCell>& cells,
                                                 const WindingOptions& options = {});

/// Smallest |sin E(theta)| over theta: best grid point, then golden-polished
/// (frame-independent, both frames share the bulk quasienergy E).
double min_gap_margin(const DkqrParams& p, int grid = 2048);

struct GapClosing {
    double k2 = 0.0;
    double theta = 0.0;
    double margin = 0.0;
};

/// Minimizes the bulk gap over k2 in [k2_lo, k2_hi] at fixed k1, locating
/// the topological transition inside a bracket where the invariants change.
GapClosing find_gap_closing(double k1, double k2_lo, double k2_hi, int grid = 2048);

} // namespace rotor
