#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "decaylab/experiment.hpp"

using namespace decaylab;
namespace fs = std::filesystem;

TEST_CASE("fit_power_law") {
    SECTION("exact power law is recovered to machine precision") {
        std::vector<double> t, y;
        for (int i = 0; i < 40; ++i) {
            t.push_back(10.0 + i * (90.0 / 39.0));
            y.push_back(std::pow(1.0 + t.back(), -2.0));
        }
        const FitResult f = fit_power_law(t, y, 10.0, 100.0);
        CHECK(f.beta == Catch::Approx(2.0).margin(1e-6));
        CHECK(f.r_squared > 0.999999);
    }
    SECTION("prefactor invariance") {
        std::vector<double> t, y;
        for (int i = 0; i < 20; ++i) {
            t.push_back(1.0 + i);
            y.push_back(5.0 * std::pow(1.0 + t.back(), -1.0));
        }
        CHECK(fit_power_law(t, y, 0.0, 100.0).beta == Catch::Approx(1.0).margin(1e-6));
    }
    SECTION("invariant under y-scaling and window re-sampling") {
        auto law = [](double t) { return 3.0 * std::pow(1.0 + t, -1.3); };
        std::vector<double> t1, y1, t2, y2;
        for (int i = 0; i < 24; ++i) {
            t1.push_back(5.0 + 4.0 * i);
            y1.push_back(law(t1.back()));
        }
        for (int i = 0; i < 57; ++i) {
            t2.push_back(5.0 + 1.7 * i);
            y2.push_back(7.7 * law(t2.back()));
        }
        const double b1 = fit_power_law(t1, y1, 5.0, 100.0).beta;
        const double b2 = fit_power_law(t2, y2, 5.0, 100.0).beta;
        CHECK(b1 == Catch::Approx(b2).margin(1e-6));
    }
    SECTION("error paths") {
        std::vector<double> t(10), y(10, 1.0);
        for (int i = 0; i < 10; ++i) t[i] = i;
        y[3] = 0.0;
        CHECK_THROWS_AS(fit_power_law(t, y, 0.0, 9.0), std::domain_error);
        y[3] = 1.0;
        CHECK_THROWS_AS(fit_power_law(t, y, 0.0, 4.0), std::invalid_argument);  // < 8 samples
    }
    SECTION("verdict classification") {
        CHECK(classify(1.0, 1.0, 0.15) == Verdict::matches);
        CHECK(classify(1.5, 1.0, 0.15) == Verdict::faster_than_bound);
        CHECK(classify(0.5, 1.0, 0.15) == Verdict::violates_bound);
    }
}

TEST_CASE("experiment config parsing") {
    const std::string text = R"({
        "kind": "ns_decay",
        "label": "smoke",
        "data": {"type": "synthetic", "q_star": -1.0, "seed": 3, "amplitude": 0.05},
        "grid": {"n": 16, "box_length_over_pi": 16.0},
        "solver": {"dt": 0.002, "t_final": 0.2, "record_interval": 0.02,
                   "epsilon_budget": 0.05},
        "fit": {"window": [0.0, 0.2], "tolerance": 0.5},
        "output_dir": "/tmp/decaylab_test_cfg"
    })";

    SECTION("round trip: parse then serialize then parse is the identity") {
        const ExperimentConfig c1 = ExperimentConfig::from_json(json::parse(text));
        const json j1 = c1.to_json();
        const ExperimentConfig c2 = ExperimentConfig::from_json(j1);
        CHECK(j1 == c2.to_json());
        CHECK(c2.grid.n == 16);
        CHECK(c2.grid.box_length == Catch::Approx(16.0 * pi));
        CHECK(c2.data.via_q_star);
        CHECK(c2.data.nominal_r_star() == Catch::Approx(-1.5));
    }
    SECTION("unknown keys are rejected with the offending name") {
        json j = json::parse(text);
        j["surprise"] = 1;
        CHECK_THROWS_WITH(ExperimentConfig::from_json(j),
                          Catch::Matchers::ContainsSubstring("surprise"));
        j.erase("surprise");
        j["solver"]["viscosity"] = 2.0;
        CHECK_THROWS_WITH(ExperimentConfig::from_json(j),
                          Catch::Matchers::ContainsSubstring("viscosity"));
    }
    SECTION("field-level validation") {
        json j = json::parse(text);
        j["data"] = {{"type", "synthetic"}, {"seed", 1}};
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);  // no r_star/q_star
        j = json::parse(text);
        j["kind"] = "nsc_omega_sweep";
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);  // missing omega_list
        j = json::parse(text);
        j["fit"]["window"] = {0.0, 5.0};
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);  // outside horizon
    }
}

TEST_CASE("linear continuum experiment") {
    fs::path dir = fs::temp_directory_path() / "decaylab_lincont";
    fs::remove_all(dir);
    for (double r : {-1.0, 0.0, 1.0}) {
        ExperimentConfig cfg;
        cfg.kind = ExperimentKind::linear_continuum;
        cfg.label = "linear continuum";
        cfg.data.is_profile = true;
        cfg.data.family = "power_gauss";
        cfg.data.r_star = r;
        cfg.s_values = {0.5};
        cfg.output_dir = (dir / ("r" + std::to_string(r))).string();
        const ExperimentReport rep = run_experiment(cfg);
        REQUIRE(rep.fits.size() == 1);
        CHECK(rep.fits[0].predicted == Catch::Approx(2.0 + r));
        CHECK(rep.fits[0].verdict == Verdict::matches);
        CHECK(fs::exists(rep.artifacts[0]));
    }
}

TEST_CASE("solver experiment smoke test with report") {
    fs::path dir = fs::temp_directory_path() / "decaylab_smoke";
    fs::remove_all(dir);
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::linear_lattice;
    cfg.label = "lattice linear";
    cfg.data.via_q_star = false;
    cfg.data.r_star = 0.0;
    cfg.data.seed = 17;
    cfg.data.amplitude = 0.05;
    cfg.grid = Grid(32, 16.0 * pi);
    cfg.solver.grid = cfg.grid;
    cfg.solver.dt = 0.04;
    cfg.solver.t_final = 6.4;
    cfg.solver.record_interval = 0.08;
    cfg.solver.epsilon_budget = 0.05;
    cfg.output_dir = dir.string();

    const ExperimentReport rep = run_experiment(cfg);
    REQUIRE(rep.fits.size() == 2);
    // hhalf_sq decays at 2 + r* = 2, l2_sq at 3/2 + r* = 3/2 on the lattice window
    CHECK(rep.fits[0].norm == "hhalf_sq");
    CHECK(rep.fits[0].beta == Catch::Approx(2.0).margin(0.15));
    CHECK(rep.fits[1].beta == Catch::Approx(1.5).margin(0.15));

    SECTION("emit_report is deterministic up to the timestamp") {
        const std::string path = emit_report(rep, cfg.output_dir);
        std::ifstream is(path);
        json j1 = json::parse(is);
        ExperimentReport rep2 = rep;
        rep2.timestamp = "2000-01-01T00:00:00Z";
        json j2 = report_to_json(rep2);
        j1.erase("timestamp");
        j2.erase("timestamp");
        CHECK(j1 == j2);
    }
    SECTION("CSV artifact round trip") {
        REQUIRE_FALSE(rep.artifacts.empty());
        const TimeSeries s = read_timeseries_csv(rep.artifacts[0]);
        CHECK(s.records.size() == 81);
        CHECK(s.records[1].t == Catch::Approx(0.08));
        CHECK_FALSE(s.smallness_violated);
    }
}

TEST_CASE("character estimation experiment") {
    fs::path dir = fs::temp_directory_path() / "decaylab_charexp";
    fs::remove_all(dir);
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::character_estimation;
    cfg.label = "round trip";
    cfg.data.seed = 9;
    cfg.data.amplitude = 0.05;
    cfg.grid = Grid(64, 16.0 * pi);
    cfg.r_star_values = {0.0};
    cfg.output_dir = dir.string();
    const ExperimentReport rep = run_experiment(cfg);
    REQUIRE(rep.fits.size() == 2);  // estimate + shift check
    CHECK(rep.fits[0].verdict == Verdict::matches);
    CHECK(rep.fits[1].predicted == Catch::Approx(0.5));
    CHECK(rep.fits[1].verdict == Verdict::matches);
}

TEST_CASE("omega sweep: per-omega fits and L2 neutrality diagnostic") {
    fs::path dir = fs::temp_directory_path() / "decaylab_sweep";
    fs::remove_all(dir);
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::nsc_omega_sweep;
    cfg.label = "sweep smoke";
    cfg.data.r_star = 0.0;
    cfg.data.seed = 5;
    cfg.data.amplitude = 0.05;
    cfg.grid = Grid(16, 8.0 * pi);
    cfg.solver.grid = cfg.grid;
    cfg.solver.dt = 3e-3;
    cfg.solver.t_final = 0.3;
    cfg.solver.record_interval = 0.03;
    cfg.solver.epsilon_budget = 0.05;
    cfg.omega_list = {0.0, 100.0};
    cfg.fit_t0 = 0.0;
    cfg.fit_t1 = 0.3;
    cfg.output_dir = dir.string();

    const ExperimentReport rep = run_experiment(cfg);
    REQUIRE(rep.fits.size() == 4);  // two norms per omega
    CHECK(rep.extra.at("sweep_l2_max_rel_spread").get<double>() < 0.01);
    CHECK(fs::exists(dir / "timeseries_omega0.000000.csv"));
    CHECK(fs::exists(dir / "timeseries_omega100.000000.csv"));
    CHECK(fs::exists(dir / "run_meta.json"));

    // report rebuild from the run directory reproduces the fits
    const ExperimentReport rebuilt = rebuild_report_from_dir(dir.string());
    REQUIRE(rebuilt.fits.size() == rep.fits.size());
    for (std::size_t i = 0; i < rep.fits.size(); ++i)
        CHECK(rebuilt.fits[i].beta == Catch::Approx(rep.fits[i].beta).epsilon(1e-12));
}

TEST_CASE("empty report and exit-code mapping") {
    ExperimentReport rep;
    rep.experiment = "empty";
    rep.config_echo = json::object();
    rep.timestamp = "2000-01-01T00:00:00Z";
    CHECK(worst_verdict(rep) == Verdict::matches);
    fs::path dir = fs::temp_directory_path() / "decaylab_empty";
    const std::string path = emit_report(rep, dir.string());
    std::ifstream is(path);
    const json j = json::parse(is);
    CHECK(j.at("fits").empty());

    FitResult bad;
    bad.verdict = Verdict::violates_bound;
    rep.fits.push_back(bad);
    CHECK(worst_verdict(rep) == Verdict::violates_bound);
}

TEST_CASE("field file round trip") {
    Grid g(8, 2.0 * pi);
    SpectralVectorField u(g);
    u.comp[0][g.flat(1, 2, 3)] = complexd(0.5, -0.25);
    u.comp[2][g.flat(7, 0, 1)] = complexd(-1.5, 2.0);
    fs::path p = fs::temp_directory_path() / "decaylab_field.dlsf";
    write_field(p.string(), u);
    const SpectralVectorField v = read_field(p.string());
    CHECK(v.grid.n == 8);
    CHECK(v.grid.box_length == Catch::Approx(2.0 * pi));
    double diff = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < u.comp[c].size(); ++i)
            diff = std::max(diff, std::abs(u.comp[c][i] - v.comp[c][i]));
    CHECK(diff == 0.0);
}
