#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "validate.hpp"

using namespace sloc::cli;

namespace {

void add_seed_options(CLI::App* app, SeedOptions& s) {
    app->add_option("--kind", s.kind, "seed family: tri2 or gaussian")->check(CLI::IsMember({"tri2", "gaussian"}));
    app->add_option("--r0", s.r0, "support radius");
    app->add_option("--k0", s.k0, "carrier wavenumber (default 4 pi / r0)");
    app->add_option("--sigma", s.sigma, "Gaussian width (default r0 / 8)");
    app->add_option("--amplitude", s.amplitude, "overall factor");
    app->add_option("--intervals", s.intervals, "sampling intervals on [0, r0]")->check(CLI::PositiveNumber);
}

CLI::Option* add_range(CLI::App* app, const std::string& name, Range& r, const std::string& help) {
    return app
        ->add_option_function<std::string>(
            name, [&r](const std::string& v) { r = parse_range(v); }, help + " as start:stop:count")
        ->default_str(r.str());
}

// Writes to a file, or stdout for "-".
template <class F>
int with_output(const std::string& path, F&& f) {
    if (path == "-") return f(std::cout);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return kExitFailure;
    }
    return f(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strictly localized photon states: seeds, fields, fidelities and bounds"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--config", "key=value file applied before the flags (flags win)");

    const int threads0 = env_threads();

    SeedShowOptions seed_o;
    auto* seed = app.add_subcommand("seed-show", "tabulate a seed function");
    add_seed_options(seed, seed_o.seed);
    seed->add_option("--points", seed_o.points, "radial samples");
    seed->add_option("--r-max", seed_o.r_max, "outer radius (default 1.25 r0)");
    seed->add_option("--out", seed_o.out, "output CSV, - for stdout");

    FieldOptions field_o;
    auto* field = app.add_subcommand("field-profile", "<:E^2:> profiles at several times");
    add_seed_options(field, field_o.seed);
    field->add_option("--n", field_o.n, "photon number of the state");
    field->add_option("--points", field_o.points, "radial samples");
    field->add_option("--r-max", field_o.r_max, "outer radius (default 2 r0)");
    field->add_option_function<std::string>(
        "--times", [&](const std::string& v) { field_o.times = parse_list(v); }, "times in units of r0/c, comma separated");
    field->add_option("--prefix", field_o.prefix, "output file prefix");

    FidelityOptions fid_o;
    fid_o.threads = threads0;
    auto* fid = app.add_subcommand("fidelity-curve", "1 - F against effective carrier");
    fid->add_option("--r0", fid_o.r0, "support radius");
    add_range(fid, "--k0r0", fid_o.k0r0, "carrier sweep k0 r0");
    fid->add_option("--sigma-over-r0", fid_o.sigma_over_r0, "truncated Gaussian width");
    fid->add_flag("--analytic", fid_o.analytic, "also emit the untruncated Gaussian curve");
    fid->add_option("--threads", fid_o.threads, "worker threads")->check(CLI::PositiveNumber);
    fid->add_option("--out", fid_o.out, "output CSV, - for stdout");

    BoundsOptions bnd_o;
    bnd_o.threads = threads0;
    auto* bnd = app.add_subcommand("bounds-sweep", "upper and lower fidelity bounds against r0/sigma");
    bnd->add_option("--k0sigma", bnd_o.k0sigma, "carrier times width");
    bnd->add_option("--sigma", bnd_o.sigma, "photon width");
    add_range(bnd, "--r0-over-sigma", bnd_o.r0_over_sigma, "sphere radius sweep");
    bnd->add_option("--threads", bnd_o.threads, "worker threads")->check(CLI::PositiveNumber);
    bnd->add_option("--out", bnd_o.out, "output CSV, - for stdout");

    OracleOptions orc_o;
    orc_o.threads = threads0;
    auto* orc = app.add_subcommand("oracle-check", "closed forms against the Fock-space oracle");
    orc->add_option_function<std::string>(
        "--gamma", [&](const std::string& v) { orc_o.gammas = parse_list(v); }, "squeeze parameters, comma separated");
    orc->add_option_function<std::string>(
        "--n", [&](const std::string& v) { orc_o.ns = parse_list(v); }, "photon numbers, comma separated");
    orc->add_option("--tol", orc_o.tol, "agreement tolerance");
    orc->add_option("--threads", orc_o.threads, "worker threads")->check(CLI::PositiveNumber);

    ValidateOptions val_o;
    val_o.threads = threads0;
    auto* val = app.add_subcommand("validate", "run the invariant suite");
    val->add_flag("--inject-hn-zero", val_o.inject_hn_zero, "negative control: drop the series in <N>");
    val->add_flag("--coarse-grid", val_o.coarse_grid, "run the wave-residual study on a coarse grid");
    val->add_option("--threads", val_o.threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = expand_config(args);
        std::vector<std::string> rev(args.rbegin(), args.rend() - 1);  // CLI11 takes reversed args without argv[0]
        app.name(args.empty() ? "sloc" : args[0]);
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*seed) return with_output(seed_o.out, [&](std::ostream& os) { return cmd_seed_show(seed_o, os); });
        if (*field) return cmd_field_profile(field_o, std::cout);
        if (*fid) return with_output(fid_o.out, [&](std::ostream& os) { return cmd_fidelity_curve(fid_o, os); });
        if (*bnd) return with_output(bnd_o.out, [&](std::ostream& os) { return cmd_bounds_sweep(bnd_o, os, std::cerr); });
        if (*orc) return cmd_oracle_check(orc_o, std::cout);
        if (*val) return report_validation(run_validation(val_o), std::cout);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
