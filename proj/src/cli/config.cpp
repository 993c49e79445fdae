#include "rotor/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace rotor::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s)
{
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        return s.substr(1, s.size() - 2);
    return s;
}

double parse_number(const std::string& text, const std::string& what)
{
    double v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(v))
        throw ConfigError("invalid number '" + text + "' for " + what);
    return v;
}

int parse_int(const std::string& text, const std::string& what)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("invalid integer '" + text + "' for " + what);
    return v;
}

bool parse_bool(const std::string& text, const std::string& what)
{
    if (text == "true")
        return true;
    if (text == "false")
        return false;
    throw ConfigError("expected true or false for " + what + ", got '" + text + "'");
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

std::vector<double> Sweep::values() const
{
    if (!(step > 0) || stop < start)
        throw ConfigError("sweep needs step > 0 and stop >= start");
    const double span = (stop - start) / step;
    const long count = std::lround(std::floor(span + 1e-9)) + 1;
    if (count > 1000000)
        throw ConfigError("sweep has too many points");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
        out.push_back(start + static_cast<double>(i) * step);
    return out;
}

std::vector<double> ParamSpec::values() const
{
    if (point)
        return {*point};
    if (sweep)
        return sweep->values();
    return {};
}

double parse_angle(const std::string& raw)
{
    const std::string text = trim(raw);
    if (ends_with(text, "pi"))
        return kPi * parse_number(trim(text.substr(0, text.size() - 2)), "angle '" + text + "'");
    if (ends_with(text, "rad"))
        return parse_number(trim(text.substr(0, text.size() - 3)), "angle '" + text + "'");
    throw ConfigError("angle '" + text + "' needs a unit tag (pi or rad)");
}

ParamSpec parse_param(const std::string& raw)
{
    const std::string text = trim(unquote(trim(raw)));
    ParamSpec spec;
    if (text.find(':') == std::string::npos) {
        spec.point = parse_angle(text);
        return spec;
    }
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');)
        parts.push_back(part);
    if (parts.size() != 3)
        throw ConfigError("sweep '" + text + "' must be start:stop:step");
    spec.sweep = Sweep{parse_angle(parts[0]), parse_angle(parts[1]), parse_angle(parts[2])};
    spec.sweep->values(); // validate
    return spec;
}

BoundaryKind parse_boundary(const std::string& raw)
{
    const std::string name = trim(unquote(trim(raw)));
    if (name == "open")
        return BoundaryKind::Open;
    if (name == "periodic")
        return BoundaryKind::Periodic;
    if (name == "ideal")
        return BoundaryKind::Ideal;
    throw ConfigError("unknown boundary condition '" + name + "'");
}

std::vector<BoundaryKind> parse_boundary_list(const std::string& raw)
{
    std::string text = trim(raw);
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']')
            throw ConfigError("unterminated bc list");
        text = text.substr(1, text.size() - 2);
    }
    std::vector<BoundaryKind> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!trim(item).empty()) {
            const BoundaryKind kind = parse_boundary(item);
            for (BoundaryKind seen : out)
                if (seen == kind)
                    throw ConfigError("bc '" + std::string(boundary_name(kind)) + "' listed twice");
            out.push_back(kind);
        }
    if (out.empty())
        throw ConfigError("empty bc list");
    return out;
}

std::map<std::string, std::string> parse_key_values(const std::string& text)
{
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    int line_no = 0;
    for (std::string line; std::getline(ss, line);) {
        ++line_no;
        // strip comments outside quotes
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"')
                quoted = !quoted;
            else if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        if (!out.emplace(key, value).second)
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    return out;
}

void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& values)
{
    for (const char* name : {"k", "k1", "k2"})
        if (values.count(name) && values.count(std::string(name) + "_sweep"))
            throw ConfigError(std::string("both ") + name + " and " + name + "_sweep given");

    for (const auto& [key, raw] : values) {
        const std::string value = unquote(raw);
        if (key == "model") {
            if (value == "qkr")
                cfg.model = Model::Qkr;
            else if (value == "dkqr")
                cfg.model = Model::Dkqr;
            else
                throw ConfigError("unknown model '" + value + "'");
        } else if (key == "k" || key == "k_sweep") {
            cfg.k = parse_param(value);
        } else if (key == "k1" || key == "k1_sweep") {
            cfg.k1 = parse_param(value);
        } else if (key == "k2" || key == "k2_sweep") {
            cfg.k2 = parse_param(value);
        } else if (key == "tau") {
            cfg.tau = parse_angle(value);
        } else if (key == "bc") {
            cfg.bcs = parse_boundary_list(raw);
        } else if (key == "n_max") {
            cfg.n_max = parse_int(value, key);
        } else if (key == "n_lo") {
            cfg.n_lo = parse_int(value, key);
        } else if (key == "n_hi") {
            cfg.n_hi = parse_int(value, key);
        } else if (key == "pad") {
            cfg.pad = parse_int(value, key);
        } else if (key == "periods") {
            cfg.periods = parse_int(value, key);
        } else if (key == "grid") {
            cfg.grid = parse_int(value, key);
        } else if (key == "frame") {
            cfg.frame = parse_int(value, key);
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "format") {
            cfg.format = value;
        } else if (key == "per_period") {
            cfg.per_period = parse_bool(value, key);
        } else if (key == "phase_fig1") {
            cfg.phase_fig1 = parse_bool(value, key);
        } else if (key == "phase_tol") {
            cfg.phase_tol = parse_number(value, key);
        } else if (key == "weight_threshold") {
            cfg.weight_threshold = parse_number(value, key);
        } else if (key == "edge_width") {
            cfg.edge_width = parse_int(value, key);
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }

    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format must be csv or json");
    if (cfg.periods < 1)
        throw ConfigError("periods must be at least 1");
    if (cfg.grid < 64)
        throw ConfigError("grid must be at least 64");
    if (cfg.frame != 1 && cfg.frame != 2)
        throw ConfigError("frame must be 1 or 2");
    if (cfg.n_max && (cfg.n_lo || cfg.n_hi))
        throw ConfigError("give either n_max or n_lo/n_hi");
    if (cfg.n_lo.has_value() != cfg.n_hi.has_value())
        throw ConfigError("n_lo and n_hi go together");
    if (cfg.n_max && *cfg.n_max < 1)
        throw ConfigError("n_max must be positive");
    if (cfg.output.empty())
        throw ConfigError("output directory is empty");
}

MomentumBasis ExperimentConfig::basis(BoundaryKind bc) const
{
    try {
        return make_basis(bc);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

MomentumBasis ExperimentConfig::make_basis(BoundaryKind bc) const
{
    const int nm = n_max.value_or(30);
    switch (bc) {
    case BoundaryKind::Ideal:
        if (n_lo)
            throw ConfigError("the ideal boundary takes n_max, not n_lo/n_hi");
        if (pad < 2 * nm)
            throw ConfigError("pad must be at least twice n_max");
        return MomentumBasis::ideal(nm, pad);
    case BoundaryKind::Open:
    case BoundaryKind::Periodic: {
        const BoundaryCondition b = bc == BoundaryKind::Open ? BoundaryCondition::open() : BoundaryCondition::periodic();
        if (n_lo)
            return MomentumBasis(*n_lo, *n_hi, b);
        return MomentumBasis::symmetric(nm, b);
    }
    }
    throw ConfigError("unknown boundary");
}

std::map<std::string, std::string> load_key_values(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_key_values(buffer.str());
}

} // namespace rotor::cli
