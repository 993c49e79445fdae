#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotor/basis.hpp"

namespace rotor::cli {

/// Malformed or inconsistent experiment configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inclusive arithmetic range start, start + step, ..., stop.
struct Sweep {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    std::vector<double> values() const;
};

/// Either a single value or a sweep, in radians.
struct ParamSpec {
    std::optional<double> point;
    std::optional<Sweep> sweep;

    bool empty() const noexcept { return !point && !sweep; }
    std::vector<double> values() const;
};

/// "1.5pi" -> 1.5 pi, "0.3rad" -> 0.3. A bare number is rejected.
double parse_angle(const std::string& text);
/// A single angle or "start:stop:step" with every part unit tagged.
ParamSpec parse_param(const std::string& text);

enum class Model { Qkr, Dkqr };

struct ExperimentConfig {
    Model model = Model::Dkqr;
    ParamSpec k;  ///< qkr kick strength
    ParamSpec k1;
    ParamSpec k2;
    double tau = 4.0 * kPi;
    std::vector<BoundaryKind> bcs{BoundaryKind::Open};
    std::optional<int> n_max;
    std::optional<int> n_lo;
    std::optional<int> n_hi;
    int pad = 200;
    int periods = 15;
    int grid = 1024;
    int frame = 1;
    std::string output = "out";
    std::string format = "csv";
    bool per_period = false;
    bool phase_fig1 = false;
    double phase_tol = 0.05;
    double weight_threshold = 0.5;
    int edge_width = 0;

    /// Spin-free window for boundary kind `bc`.
    MomentumBasis basis(BoundaryKind bc) const;

private:
    MomentumBasis make_basis(BoundaryKind bc) const;
};

/// Flat `key = value` lines; `#` starts a comment; strings may be quoted;
/// `bc` also takes a bracketed list.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Applies key/value pairs on top of `cfg`, rejecting unknown keys and a
/// parameter given both as a point and as a sweep.
void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& values);

std::map<std::string, std::string> load_key_values(const std::string& path);

BoundaryKind parse_boundary(const std::string& name);
std::vector<BoundaryKind> parse_boundary_list(const std::string& text);

} // namespace rotor::cli
