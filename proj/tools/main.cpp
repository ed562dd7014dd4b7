#include <iostream>

#include "CLI11.hpp"

#include "gibbs/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Translation-invariant Gibbs measures of a continuum-spin "
                 "nearest-neighbor model on a Cayley tree: classification, "
                 "theta sweeps and oracle verification"};
    app.require_subcommand(1);

    gibbs::cli::RunConfig rc;
    int k = 0, n = 0;
    double theta = 0, tmin = 0, tmax = 0;
    std::string only;

    auto add_kn = [&](CLI::App* cmd, bool required) {
        auto* ok = cmd->add_option("--k", k, "tree order (k >= 2)");
        auto* on = cmd->add_option("--n", n, "root exponent parameter (n >= 1)");
        if (required) {
            ok->required();
            on->required();
        }
    };
    auto add_numerics = [&](CLI::App* cmd) {
        cmd->add_option("--quad-order", rc.numerics.quad_order,
                        "Gauss-Legendre points per half-interval");
        cmd->add_option("--residual-tol", rc.numerics.residual_tol,
                        "fixed-point residual tolerance");
    };

    CLI::App* classify = app.add_subcommand(
        "classify", "count the measures and report all thresholds at one theta");
    add_kn(classify, true);
    classify->add_option("--theta", theta, "coupling")->required();
    classify->add_flag("--verify", rc.verify,
                       "check each fixed point against the quadrature oracle");
    add_numerics(classify);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "classify along a theta grid and emit bifurcation data");
    add_kn(sweep, true);
    sweep->add_option("--theta-min", tmin, "grid lower end")->required();
    sweep->add_option("--theta-max", tmax, "grid upper end")->required();
    sweep->add_option("--steps", rc.steps, "grid size (>= 2)")->required();
    sweep->add_option("--format", rc.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("-o,--output", rc.output, "output path (stdout if absent)");
    sweep->add_flag("--verify", rc.verify,
                    "validate every branch against the quadrature oracle");
    add_numerics(sweep);

    CLI::App* verify = app.add_subcommand(
        "verify", "run the cross-module verification suites");
    add_kn(verify, false);
    verify->add_option("--only", only, "run a single suite by name");
    add_numerics(verify);

    CLI::App* thresholds = app.add_subcommand(
        "thresholds", "print the threshold table for (k, n)");
    add_kn(thresholds, true);
    thresholds->add_option("--format", rc.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    rc.command = sub->get_name();
    if (sub->count("--k")) rc.k = k;
    if (sub->count("--n")) rc.n = n;
    if (sub->count("--theta")) rc.theta = theta;
    if (sub->count("--theta-min")) rc.theta_min = tmin;
    if (sub->count("--theta-max")) rc.theta_max = tmax;
    if (!only.empty()) rc.only = only;

    return gibbs::cli::dispatch(rc, std::cout, std::cerr);
}
