#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rotor/cli/commands.hpp"

using namespace rotor;
using namespace rotor::cli;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_args(std::vector<std::string> args)
{
    args.insert(args.begin(), "rotorlab");
    std::vector<char*> argv;
    for (auto& a : args)
        argv.push_back(a.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path scratch(const std::string& name)
{
    const auto p = std::filesystem::temp_directory_path() / ("rotorlab_unit_" + name);
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("angles need a unit tag")
{
    CHECK(parse_angle("1.5pi") == 1.5 * kPi);
    CHECK(parse_angle(" 0.3rad ") == 0.3);
    CHECK(parse_angle("-2 pi") == -2 * kPi);
    CHECK_THROWS_AS(parse_angle("1.5"), ConfigError);
    CHECK_THROWS_AS(parse_angle("pi"), ConfigError);
    CHECK_THROWS_AS(parse_angle("1.5deg"), ConfigError);
}

TEST_CASE("sweeps are inclusive")
{
    const ParamSpec s = parse_param("\"0pi:3pi:0.02pi\"");
    REQUIRE(s.sweep);
    const auto v = s.values();
    CHECK(v.size() == 151);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == doctest::Approx(3 * kPi));
    CHECK(parse_param("1pi:1pi:0.1pi").values().size() == 1);
    CHECK_THROWS_AS(parse_param("0pi:1pi"), ConfigError);
    CHECK_THROWS_AS(parse_param("1pi:0pi:0.1pi"), ConfigError);
    CHECK_THROWS_AS(parse_param("0pi:1pi:0pi"), ConfigError);
}

TEST_CASE("config text")
{
    const auto kv = parse_key_values("# experiment\nmodel = \"dkqr\"\nk1 = 1.5pi  # strong\nbc = [\"open\", \"ideal\"]\n\n");
    ExperimentConfig cfg;
    apply_config(cfg, kv);
    CHECK(cfg.model == Model::Dkqr);
    CHECK(cfg.k1.point == 1.5 * kPi);
    CHECK(cfg.bcs == std::vector<BoundaryKind>{BoundaryKind::Open, BoundaryKind::Ideal});

    ExperimentConfig c2;
    CHECK_THROWS_AS(apply_config(c2, parse_key_values("k2 = 1pi\nk2_sweep = 0pi:1pi:0.5pi\n")), ConfigError);
    CHECK_THROWS_AS(apply_config(c2, parse_key_values("colour = red\n")), ConfigError);
    CHECK_THROWS_AS(apply_config(c2, parse_key_values("n_max = 10\nn_lo = -3\nn_hi = 3\n")), ConfigError);
    CHECK_THROWS_AS(parse_key_values("k1 = 1pi\nk1 = 2pi\n"), ConfigError);
    CHECK_THROWS_AS(parse_key_values("just words\n"), ConfigError);
    CHECK_THROWS_AS(parse_boundary_list("open, open"), ConfigError);
}

TEST_CASE("command defaults")
{
    ExperimentConfig cfg;
    resolve_defaults(cfg, Command::Mcd);
    CHECK(cfg.k1.point == 1.5 * kPi);
    CHECK(cfg.k2.values().size() == 151);
    ExperimentConfig e;
    resolve_defaults(e, Command::Distribution);
    CHECK(e.k2.point == 2.5 * kPi);
    ExperimentConfig q;
    q.model = Model::Qkr;
    CHECK_THROWS_AS(resolve_defaults(q, Command::Winding), ConfigError);
}

TEST_CASE("float formatting round-trips")
{
    for (double v : {0.1, -1.0 / 3.0, kPi, 1e-300, 6.02214076e23, 2.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("tables and digests")
{
    Table t{{"a", "b", "c"}};
    t.add({long{1}, 0.5, std::string("x")});
    CHECK(t.to_csv() == "a,b,c\n1,0.5,x\n");
    CHECK(t.to_json().dump() == R"([{"a":1,"b":0.5,"c":"x"}])");
    CHECK_THROWS(t.add({long{1}}));
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("exit codes")
{
    const auto dir = scratch("codes");
    CHECK(run_args({"spectrum", "--k2", "1.5", "--out", dir.string()}) == 2);
    CHECK(run_args({"spectrum", "--config", (dir / "missing.toml").string()}) == 2);
    CHECK(run_args({"spectrum", "--nmax", "0", "--out", dir.string()}) == 2);
    CHECK(run_args({"nonsense"}) == 2);
    CHECK(!std::filesystem::exists(dir / "spectrum.csv"));
}

TEST_CASE("spectrum rows and manifest")
{
    const auto dir = scratch("spectrum");
    REQUIRE(run_args({"spectrum", "--k1", "1.5pi", "--k2", "0pi:1pi:0.5pi", "--out", dir.string()}) == 0);
    const std::string csv = slurp(dir / "spectrum.csv");
    CHECK(csv.rfind("index,phase,edge_weight,k1,k2,bc\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 122);
    CHECK(csv.find('\r') == std::string::npos);
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    REQUIRE(manifest["files"].size() == 1);
    CHECK(manifest["files"][0]["sha256"] == sha256_hex(csv));
}

TEST_CASE("antiresonant spectrum through the config file")
{
    const auto dir = scratch("anti");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "run.toml") << "model = \"qkr\"\nk = 2rad\ntau = 2pi\nn_lo = -27\nn_hi = 27\n"
                                       "bc = [\"open\", \"periodic\"]\nphase_fig1 = true\noutput = \""
                                    << (dir / "out").string() << "\"\n";
    REQUIRE(run_args({"spectrum", "--config", (dir / "run.toml").string()}) == 0);
    std::ifstream in(dir / "out" / "spectrum.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,phase,edge_weight,k1,k2,bc,phase_fig1");
    int deviating_periodic = 0, deviating_open = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string f[7];
        for (auto& x : f)
            std::getline(ss, x, ',');
        const double phase = std::stod(f[1]);
        const bool flat = std::min(std::abs(phase), kPi - std::abs(phase)) <= 1e-10;
        if (!flat)
            ++(f[5] == "open" ? deviating_open : deviating_periodic);
        CHECK(std::stod(f[6]) == phase / 2);
    }
    CHECK(deviating_open == 0);
    CHECK(deviating_periodic > 0);
}

TEST_CASE("edges, winding, mcd and distribution outputs")
{
    const auto dir = scratch("all");
    REQUIRE(run_args({"edges", "--k1", "0.5pi", "--k2", "1.5pi", "--out", dir.string()}) == 0);
    const auto pairing = nlohmann::json::parse(slurp(dir / "pairing.json"));
    CHECK(pairing["pairs_zero"] == 1);
    CHECK(pairing["pairs_pi"] == 2);
    REQUIRE(run_args({"edges", "--bc", "periodic", "--out", (dir / "pbc").string()}) == 0);
    CHECK(slurp(dir / "pbc" / "edges.csv") == "index,phase,target,edge_weight,side\n");

    REQUIRE(run_args({"winding", "--k2", "0.9pi:1.1pi:0.1pi", "--out", dir.string()}) == 0);
    const std::string w = slurp(dir / "winding.csv");
    CHECK(w.find(",gap_closed\n") != std::string::npos);

    REQUIRE(run_args({"mcd", "--k2", "0pi:0.2pi:0.1pi", "--bc", "open,ideal", "--periods", "3", "--out",
                      dir.string()}) == 0);
    std::ifstream in(dir / "mcd.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "k2,bc,mcd,mcd_up,mcd_down,periods");
    int rows = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string f[6];
        for (auto& x : f)
            std::getline(ss, x, ',');
        CHECK(std::abs(std::stod(f[2]) - std::stod(f[3]) - std::stod(f[4])) < 1e-12);
        ++rows;
    }
    CHECK(rows == 6);

    REQUIRE(run_args({"distribution", "--periods", "3", "--format", "json", "--out", dir.string()}) == 0);
    const auto delta = nlohmann::json::parse(slurp(dir / "delta.json"));
    CHECK(delta.size() == 4 * 61);
    CHECK(delta[0].contains("mean_n_ideal"));
}

}
