// decaylab command line: run experiments from JSON configs, estimate decay
// characters of stored fields or named profiles, evaluate continuum linear
// decay curves, and rebuild reports from finished run directories.
//
// Exit status encodes the worst fit verdict: 0 = matches / faster than the
// bound, 1 = a bound was violated, 2 = usage or runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "decaylab/decaylab.hpp"

namespace fs = std::filesystem;
using namespace decaylab;

namespace {

int verdict_exit_code(const ExperimentReport& rep) {
    return worst_verdict(rep) == Verdict::violates_bound ? 1 : 0;
}

void print_fits(const ExperimentReport& rep) {
    for (const auto& f : rep.fits) {
        std::cout << f.norm << ": beta=" << f.beta << " predicted=" << f.predicted
                  << " r2=" << f.r_squared << " verdict=" << to_string(f.verdict) << "\n";
    }
}

json estimate_to_json(const DecayEstimate& est) {
    json j;
    j["r_star"] = est.r_star;
    j["slope"] = est.slope;
    j["residual"] = est.residual;
    j["indicator_value"] = est.indicator_value;
    j["capped"] = est.capped;
    j["radii"] = est.radii;
    return j;
}

RadialProfile profile_from_spec(const json& spec) {
    DataSpec d = DataSpec::from_json(spec);
    if (!d.is_profile) throw ConfigError("character: spec must name a profile family");
    return d.profile();
}

int cmd_run(const std::string& config_path, const std::string& output_override) {
    std::ifstream is(config_path);
    if (!is) {
        std::cerr << "cannot open config: " << config_path << "\n";
        return 2;
    }
    ExperimentConfig cfg = ExperimentConfig::from_json(json::parse(is));
    if (!output_override.empty()) cfg.output_dir = output_override;
    const ExperimentReport rep = run_experiment(cfg);
    const std::string path = emit_report(rep, cfg.output_dir);
    print_fits(rep);
    std::cout << "report: " << path << "\n";
    return verdict_exit_code(rep);
}

int cmd_character(const std::string& input, int n_radii, double ratio, double rho_max) {
    DecayEstimate est;
    if (input.size() > 5 && input.substr(input.size() - 5) == ".dlsf") {
        const SpectralVectorField u = read_field(input);
        const double rm = rho_max > 0.0 ? rho_max
                                        : std::min(1.0, u.grid.n * u.grid.delta_xi() / 8.0);
        est = estimate_decay_character(u, default_radii(rm, n_radii, ratio));
    } else {
        json spec;
        if (fs::exists(input)) {
            std::ifstream is(input);
            spec = json::parse(is);
        } else {
            spec = json::parse(input);  // inline JSON
        }
        const RadialProfile p = profile_from_spec(spec);
        const double rm = rho_max > 0.0 ? rho_max : 1.0;
        est = estimate_decay_character(p, default_radii(rm, n_radii, ratio));
    }
    std::cout << estimate_to_json(est).dump(2) << "\n";
    return 0;
}

int cmd_linear(const std::string& family, double r_star, double exponent, double cutoff,
               double s, double t0, double t1, int samples, const std::string& out) {
    json spec;
    spec["type"] = "profile";
    spec["family"] = family;
    if (family == "power_gauss") spec["r_star"] = r_star;
    if (family == "indicator") spec["cutoff"] = cutoff;
    if (family == "power_cut") {
        spec["exponent"] = exponent;
        spec["cutoff"] = cutoff;
    }
    DataSpec d = DataSpec::from_json(spec);
    const RadialProfile p = d.profile();

    std::vector<double> ts(samples), ys(samples);
    for (int i = 0; i < samples; ++i) {
        ts[i] = t0 * std::pow(t1 / t0, i / (samples - 1.0));
        ys[i] = continuum_linear_norm(p, s, ts[i]);
    }
    FitResult f = fit_power_law(ts, ys, t0, t1);
    f.predicted = 1.5 + d.nominal_r_star() + s;
    f.verdict = classify(f.beta, f.predicted, 0.05);
    if (!out.empty()) write_xy(out, ts, ys);

    json j;
    j["family"] = family;
    j["s"] = s;
    j["beta"] = f.beta;
    j["r_squared"] = f.r_squared;
    j["predicted"] = f.predicted;
    j["verdict"] = to_string(f.verdict);
    std::cout << j.dump(2) << "\n";
    return f.verdict == Verdict::violates_bound ? 1 : 0;
}

int cmd_report(const std::string& dir) {
    const ExperimentReport rep = rebuild_report_from_dir(dir);
    const std::string path = emit_report(rep, dir);
    print_fits(rep);
    std::cout << "report: " << path << "\n";
    return verdict_exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decaylab: algebraic decay rates of Navier-Stokes(-Coriolis) at desk scale"};
    app.require_subcommand(1);

    std::string config_path, output_override;
    auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
    run->add_option("config", config_path, "experiment config JSON")->required();
    run->add_option("--output-dir", output_override, "override the configured output dir");

    std::string character_input;
    int n_radii = 12;
    double ratio = 0.75, rho_max = -1.0;
    auto* character =
        app.add_subcommand("character", "estimate the decay character of a field or profile");
    character->add_option("input", character_input, ".dlsf field file or profile spec JSON")
        ->required();
    character->add_option("--n-radii", n_radii, "number of radii in the schedule");
    character->add_option("--ratio", ratio, "geometric ratio of the radius schedule");
    character->add_option("--rho-max", rho_max, "largest radius (default: lattice rule)");

    std::string family = "power_gauss", linear_out;
    double r_star = 0.0, exponent = 0.0, cutoff = 1.0, s_order = 0.5;
    double t0 = 10.0, t1 = 1e4;
    int samples = 48;
    auto* linear = app.add_subcommand("linear", "continuum heat-flow decay curve and fit");
    linear->add_option("--family", family, "power_gauss | indicator | power_cut");
    linear->add_option("--r-star", r_star, "decay character (power_gauss)");
    linear->add_option("--exponent", exponent, "power exponent (power_cut)");
    linear->add_option("--cutoff", cutoff, "support cutoff (indicator, power_cut)");
    linear->add_option("--s", s_order, "Sobolev order of the fitted norm");
    linear->add_option("--t0", t0, "fit window start");
    linear->add_option("--t1", t1, "fit window end");
    linear->add_option("--samples", samples, "number of log-spaced samples");
    linear->add_option("-o,--out", linear_out, "write the (t, norm^2) curve to this file");

    std::string report_dir;
    auto* report = app.add_subcommand("report", "rebuild report.json from a run directory");
    report->add_option("run_dir", report_dir, "directory of a finished run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, output_override);
        if (character->parsed()) return cmd_character(character_input, n_radii, ratio, rho_max);
        if (linear->parsed())
            return cmd_linear(family, r_star, exponent, cutoff, s_order, t0, t1, samples,
                              linear_out);
        if (report->parsed()) return cmd_report(report_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
