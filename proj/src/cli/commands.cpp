#include "rotor/cli/commands.hpp"

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "rotor/parallel.hpp"
#include "rotor/spectral.hpp"
#include "rotor/topology.hpp"
#include "rotor/transport.hpp"

#ifndef ROTOR_VERSION
#define ROTOR_VERSION "unknown"
#endif

namespace rotor::cli {

namespace {

std::string bc_text(BoundaryKind k) { return std::string(boundary_name(k)); }

double single(const ParamSpec& p, const char* name)
{
    if (!p.point)
        throw ConfigError(std::string(name) + " must be a single value for this command");
    return *p.point;
}

BoundaryKind single_bc(const ExperimentConfig& cfg)
{
    if (cfg.bcs.size() != 1)
        throw ConfigError("this command takes exactly one bc");
    return cfg.bcs.front();
}

EdgeDetectionOptions edge_options(const ExperimentConfig& cfg)
{
    return {cfg.phase_tol, cfg.weight_threshold, cfg.edge_width};
}

int edge_width(const ExperimentConfig& cfg, const MomentumBasis& basis)
{
    return cfg.edge_width > 0 ? cfg.edge_width : default_edge_width(basis);
}

struct SpectrumPoint {
    double k1 = 0.0;
    double k2 = 0.0;
};

struct SpectrumJob {
    QuasienergySpectrum spec;
    std::vector<double> weights;
};

// One diagonalization per (k1, k2); qkr stores k in k1.
std::vector<SpectrumJob> spectra(const ExperimentConfig& cfg, BoundaryKind bc, const std::vector<SpectrumPoint>& pts)
{
    const MomentumBasis basis = cfg.basis(bc);
    if (cfg.model == Model::Qkr) {
        return parallel_map<SpectrumJob>(pts.size(), [&](std::size_t i) {
            SpectrumJob job{diagonalize(qkr_floquet({pts[i].k1, cfg.tau}, basis), basis), {}};
            const int w = edge_width(cfg, basis);
            for (int j = 0; j < job.spec.size(); ++j)
                job.weights.push_back(edge_weight(job.spec.vectors.col(j), basis, w));
            return job;
        });
    }
    const DkqrKicks kicks(basis);
    return parallel_map<SpectrumJob>(pts.size(), [&](std::size_t i) {
        SpectrumJob job{diagonalize(kicks.frame({pts[i].k1, pts[i].k2}, cfg.frame), kicks.basis()), {}};
        const int w = edge_width(cfg, kicks.basis());
        for (int j = 0; j < job.spec.size(); ++j)
            job.weights.push_back(edge_weight(job.spec.vectors.col(j), kicks.basis(), w));
        return job;
    });
}

std::vector<SpectrumPoint> spectrum_points(const ExperimentConfig& cfg)
{
    std::vector<SpectrumPoint> pts;
    if (cfg.model == Model::Qkr) {
        for (double k : cfg.k.values())
            pts.push_back({k, 0.0});
        return pts;
    }
    for (double k1 : cfg.k1.values())
        for (double k2 : cfg.k2.values())
            pts.push_back({k1, k2});
    // rows are ordered by k2 first
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.k2 != b.k2 ? a.k2 < b.k2 : a.k1 < b.k1;
    });
    return pts;
}

std::string spin_label(const MomentumBasis& basis, int s)
{
    if (basis.spin_dim() == 1)
        return "none";
    return s == 0 ? "up" : "down";
}

} // namespace

std::string_view command_name(Command c)
{
    switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Edges: return "edges";
    case Command::Winding: return "winding";
    case Command::Mcd: return "mcd";
    case Command::Distribution: return "distribution";
    }
    return "unknown";
}

void resolve_defaults(ExperimentConfig& cfg, Command c)
{
    const double pi = kPi;
    if (cfg.model == Model::Qkr) {
        if (!cfg.k1.empty() || !cfg.k2.empty())
            throw ConfigError("the qkr model takes k, not k1/k2");
        if (c != Command::Spectrum && c != Command::Edges)
            throw ConfigError(std::string(command_name(c)) + " needs the dkqr model");
        if (cfg.k.empty())
            cfg.k.point = 2.0;
        return;
    }
    if (!cfg.k.empty())
        throw ConfigError("the dkqr model takes k1/k2, not k");
    if (cfg.tau != 4.0 * pi)
        throw ConfigError("the double-kicked rotor is only supported at tau = 4pi");
    if (cfg.k1.empty())
        cfg.k1.point = 1.5 * pi;
    if (cfg.k2.empty()) {
        if (c == Command::Edges)
            cfg.k2.point = 1.5 * pi;
        else if (c == Command::Distribution)
            cfg.k2.point = 2.5 * pi;
        else
            cfg.k2.sweep = Sweep{0.0, 3.0 * pi, 0.02 * pi};
    }
    if (c == Command::Mcd || c == Command::Distribution)
        single(cfg.k1, "k1");
    if (c == Command::Edges) {
        single(cfg.k1, "k1");
        single(cfg.k2, "k2");
        single_bc(cfg);
    }
    if (c == Command::Distribution) {
        single(cfg.k2, "k2");
        if (cfg.n_lo)
            throw ConfigError("distribution compares symmetric windows; use n_max");
    }
}

void cmd_spectrum(const ExperimentConfig& cfg, OutputDirectory& out)
{
    Table table{{"index", "phase", "edge_weight", "k1", "k2", "bc"}};
    if (cfg.phase_fig1)
        table.columns.push_back("phase_fig1");
    const auto pts = spectrum_points(cfg);
    for (BoundaryKind bc : cfg.bcs) {
        const auto jobs = spectra(cfg, bc, pts);
        for (std::size_t p = 0; p < pts.size(); ++p) {
            const auto& job = jobs[p];
            for (int j = 0; j < job.spec.size(); ++j) {
                std::vector<Cell> row{long{j}, job.spec.phases(j), job.weights[static_cast<std::size_t>(j)],
                                      pts[p].k1, pts[p].k2, bc_text(bc)};
                if (cfg.phase_fig1)
                    row.emplace_back(job.spec.phases(j) / 2.0);
                table.add(std::move(row));
            }
        }
    }
    out.write_table("spectrum", table, cfg.format);
}

void cmd_edges(const ExperimentConfig& cfg, OutputDirectory& out)
{
    const BoundaryKind bc = single_bc(cfg);
    const SpectrumPoint pt = cfg.model == Model::Qkr ? SpectrumPoint{single(cfg.k, "k"), 0.0}
                                                      : SpectrumPoint{single(cfg.k1, "k1"), single(cfg.k2, "k2")};
    const SpectrumJob job = spectra(cfg, bc, {pt}).front();
    const auto records = detect_edge_states(job.spec, edge_options(cfg));
    const auto pairing = pair_edge_states(records);

    Table edges{{"index", "phase", "target", "edge_weight", "side"}};
    Table vectors{{"index", "n", "spin", "prob"}};
    const MomentumBasis& basis = job.spec.basis;
    for (const auto& r : records) {
        edges.add({long{r.index}, r.phase, std::string(target_name(r.target)), r.edge_weight,
                   std::string(side_name(r.side))});
        const auto v = job.spec.vectors.col(r.index);
        for (int i = 0; i < basis.classes(); ++i)
            for (int s = 0; s < basis.spin_dim(); ++s)
                vectors.add({long{r.index}, long{basis.momentum(i)}, spin_label(basis, s),
                             std::norm(v(i * basis.spin_dim() + s))});
    }
    out.write_table("edges", edges, cfg.format);
    out.write_table("edge_vectors", vectors, cfg.format);

    nlohmann::ordered_json j;
    j["k1"] = pt.k1;
    j["k2"] = pt.k2;
    j["bc"] = bc_text(bc);
    j["pairs_zero"] = pairing.pairs_zero;
    j["pairs_pi"] = pairing.pairs_pi;
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : pairing.members)
        j["pairs"].push_back({a, b});
    j["unpaired"] = pairing.unpaired;
    out.write("pairing.json", j.dump(2) + "\n");
}

void cmd_winding(const ExperimentConfig& cfg, OutputDirectory& out)
{
    WindingOptions options;
    options.grid = cfg.grid;
    const auto cells = insert_transitions(phase_diagram(cfg.k1.values(), cfg.k2.values(), options), options);
    Table table{{"k1", "k2", "w1", "w2", "w0_num", "w0_den", "wpi_num", "wpi_den", "min_gap_margin", "status"}};
    for (const auto& c : cells) {
        const std::string status(status_name(c.status));
        if (c.status == WindingStatus::Ok) {
            const auto& r = c.report;
            table.add({c.k1, c.k2, long{r.w1}, long{r.w2}, r.w0.num, r.w0.den, r.wpi.num, r.wpi.den,
                       r.min_gap_margin, status});
        } else {
            const std::string none;
            table.add({c.k1, c.k2, none, none, none, none, none, none, min_gap_margin({c.k1, c.k2}, cfg.grid),
                       status});
        }
    }
    out.write_table("winding", table, cfg.format);
}

void cmd_mcd(const ExperimentConfig& cfg, OutputDirectory& out)
{
    const double k1 = single(cfg.k1, "k1");
    const auto k2 = cfg.k2.values();
    SweepOptions options;
    options.periods = cfg.periods;
    options.frame = cfg.frame;
    Table table{{"k2", "bc", "mcd", "mcd_up", "mcd_down", "periods"}};
    Table series{{"k2", "bc", "t", "c", "c_up", "c_down", "mean_n", "mean_n_up", "mean_n_down"}};
    for (BoundaryKind bc : cfg.bcs) {
        const auto rows = mcd_sweep(k1, k2, cfg.basis(bc), options);
        for (const auto& r : rows) {
            table.add({r.k2, bc_text(bc), r.mcd, r.mcd_up, r.mcd_down, long{r.periods}});
            if (!cfg.per_period)
                continue;
            const auto& tr = r.trace;
            for (int t = 0; t <= tr.periods(); ++t) {
                const auto i = static_cast<std::size_t>(t);
                series.add({r.k2, bc_text(bc), long{t}, tr.c_of_t[i], tr.c_up[i], tr.c_down[i], tr.mean_n[i],
                            tr.mean_n_up[i], tr.mean_n_down[i]});
            }
        }
    }
    out.write_table("mcd", table, cfg.format);
    if (cfg.per_period)
        out.write_table("c_of_t", series, cfg.format);
}

void cmd_distribution(const ExperimentConfig& cfg, OutputDirectory& out)
{
    const int n_max = cfg.n_max.value_or(30);
    if (cfg.pad < 2 * n_max)
        throw ConfigError("pad must be at least twice n_max");
    const DistributionDelta d =
        distribution_delta(single(cfg.k1, "k1"), single(cfg.k2, "k2"), n_max, cfg.periods, cfg.pad);

    Table dist{{"t", "n", "prob_up", "prob_down", "bc"}};
    for (const auto* tr : {&d.periodic, &d.ideal}) {
        const std::string bc = bc_text(tr->basis.bc().kind);
        for (int t = 0; t <= tr->periods(); ++t)
            for (int i = 0; i < tr->basis.classes(); ++i) {
                const auto ti = static_cast<std::size_t>(t);
                dist.add({long{t}, long{tr->basis.momentum(i)}, tr->dist_up[ti](i), tr->dist_down[ti](i), bc});
            }
    }
    Table delta{{"t", "n", "delta_down", "mean_n_pbc", "mean_n_ideal"}};
    for (std::size_t t = 0; t < d.delta.size(); ++t)
        for (int n = -n_max; n <= n_max; ++n)
            delta.add({static_cast<long>(t), long{n}, d.delta[t](n + n_max), d.mean_n_periodic[t], d.mean_n_ideal[t]});
    out.write_table("dist", dist, cfg.format);
    out.write_table("delta", delta, cfg.format);
}

nlohmann::ordered_json config_echo(const ExperimentConfig& cfg)
{
    auto param = [](const ParamSpec& p) -> nlohmann::ordered_json {
        if (p.point)
            return *p.point;
        if (p.sweep)
            return {{"start", p.sweep->start}, {"stop", p.sweep->stop}, {"step", p.sweep->step}};
        return nullptr;
    };
    nlohmann::ordered_json j;
    j["model"] = cfg.model == Model::Qkr ? "qkr" : "dkqr";
    if (cfg.model == Model::Qkr) {
        j["k"] = param(cfg.k);
        j["tau"] = cfg.tau;
    } else {
        j["k1"] = param(cfg.k1);
        j["k2"] = param(cfg.k2);
        j["frame"] = cfg.frame;
    }
    j["bc"] = nlohmann::ordered_json::array();
    for (BoundaryKind b : cfg.bcs)
        j["bc"].push_back(bc_text(b));
    if (cfg.n_lo) {
        j["n_lo"] = *cfg.n_lo;
        j["n_hi"] = *cfg.n_hi;
    } else {
        j["n_max"] = cfg.n_max.value_or(30);
    }
    j["pad"] = cfg.pad;
    j["periods"] = cfg.periods;
    j["grid"] = cfg.grid;
    j["format"] = cfg.format;
    j["per_period"] = cfg.per_period;
    j["phase_fig1"] = cfg.phase_fig1;
    j["phase_tol"] = cfg.phase_tol;
    j["weight_threshold"] = cfg.weight_threshold;
    j["edge_width"] = cfg.edge_width;
    j["output"] = cfg.output;
    return j;
}

namespace {

struct Overrides {
    std::string config;
    std::string bc, k, k1, k2, out, format;
    std::optional<int> n_max, periods, grid;
};

void overlay(std::map<std::string, std::string>& kv, const Overrides& o)
{
    auto set_param = [&](const std::string& key, const std::string& v) {
        if (v.empty())
            return;
        kv.erase(key + "_sweep");
        kv[key] = v;
    };
    set_param("k", o.k);
    set_param("k1", o.k1);
    set_param("k2", o.k2);
    if (!o.bc.empty())
        kv["bc"] = o.bc;
    if (o.n_max) {
        kv.erase("n_lo");
        kv.erase("n_hi");
        kv["n_max"] = std::to_string(*o.n_max);
    }
    if (o.periods)
        kv["periods"] = std::to_string(*o.periods);
    if (o.grid)
        kv["grid"] = std::to_string(*o.grid);
    if (!o.out.empty())
        kv["output"] = o.out;
    if (!o.format.empty())
        kv["format"] = o.format;
}

int execute(Command c, const Overrides& o)
{
    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    try {
        auto kv = o.config.empty() ? std::map<std::string, std::string>{} : load_key_values(o.config);
        overlay(kv, o);
        apply_config(cfg, kv);
        resolve_defaults(cfg, c);
        for (BoundaryKind bc : cfg.bcs)
            cfg.basis(bc); // window errors are configuration errors
    } catch (const ConfigError& e) {
        std::cerr << "rotorlab: config error: " << e.what() << "\n";
        return 2;
    }

    try {
        OutputDirectory out(cfg.output);
        switch (c) {
        case Command::Spectrum: cmd_spectrum(cfg, out); break;
        case Command::Edges: cmd_edges(cfg, out); break;
        case Command::Winding: cmd_winding(cfg, out); break;
        case Command::Mcd: cmd_mcd(cfg, out); break;
        case Command::Distribution: cmd_distribution(cfg, out); break;
        }
        nlohmann::ordered_json m;
        m["tool"] = "rotorlab";
        m["version"] = ROTOR_VERSION;
        m["command"] = command_name(c);
        m["config"] = config_echo(cfg);
        m["jobs"] = {{{"name", command_name(c)}, {"status", "ok"}}};
        m["files"] = nlohmann::ordered_json::array();
        for (const auto& f : out.files())
            m["files"].push_back({{"path", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
        m["wall_time_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.write("manifest.json", m.dump(2) + "\n");
    } catch (const ConfigError& e) {
        std::cerr << "rotorlab: config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "rotorlab: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "rotorlab: IoError: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Kicked-rotor spectra, winding numbers and chiral displacement", "rotorlab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ROTOR_VERSION);

    Overrides o;
    std::optional<Command> chosen;
    const std::pair<Command, const char*> commands[] = {
        {Command::Spectrum, "Sorted quasienergies with edge weights"},
        {Command::Edges, "Zero and pi edge states, their occupations and pairing"},
        {Command::Winding, "Winding numbers over a (k1, k2) grid"},
        {Command::Mcd, "Mean chiral displacement per k2 and boundary condition"},
        {Command::Distribution, "Spin-resolved momentum distributions, periodic vs ideal"},
    };
    for (const auto& [cmd, help] : commands) {
        CLI::App* sub = app.add_subcommand(std::string(command_name(cmd)), help);
        sub->add_option("--config", o.config, "Config file (key = value lines)");
        sub->add_option("--bc", o.bc, "Boundary list, e.g. open,periodic,ideal");
        sub->add_option("--nmax", o.n_max, "Half-width of the momentum window");
        sub->add_option("--k", o.k, "Single-kick strength, e.g. 2rad");
        sub->add_option("--k1", o.k1, "k1 value or start:stop:step, e.g. 1.5pi");
        sub->add_option("--k2", o.k2, "k2 value or start:stop:step");
        sub->add_option("--periods", o.periods, "Number of driving periods");
        sub->add_option("--grid", o.grid, "Theta grid size for winding numbers");
        sub->add_option("--out", o.out, "Output directory");
        sub->add_option("--format", o.format, "csv or json");
        sub->callback([&chosen, cmd = cmd] { chosen = cmd; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "rotorlab: config error: " << e.what() << "\n";
        return 2;
    }
    return execute(*chosen, o);
}

} // namespace rotor::cli
