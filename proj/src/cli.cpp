#include "gibbs/cli.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gibbs/diagnostics.hpp"
#include "gibbs/io.hpp"
#include "gibbs/phase.hpp"
#include "gibbs/quadrature.hpp"

namespace gibbs::cli {

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailure = 1;
constexpr int kBadArguments = 2;
constexpr int kIoFailure = 3;

int require_kn(const RunConfig& rc, std::ostream& err, int& k, int& n) {
    if (!rc.k || !rc.n) {
        err << "error: --k and --n are required\n";
        return kBadArguments;
    }
    k = *rc.k;
    n = *rc.n;
    return kOk;
}

void emit_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
}

std::string regions_path(const std::string& output) {
    const std::string suffix = ".csv";
    if (output.size() > suffix.size() &&
        output.compare(output.size() - suffix.size(), suffix.size(), suffix) == 0)
        return output.substr(0, output.size() - suffix.size()) + ".regions.csv";
    return output + ".regions.csv";
}

} // namespace

int run_classify(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    int k = 0, n = 0;
    if (int rcode = require_kn(rc, err, k, n); rcode != kOk) return rcode;
    if (!rc.theta) {
        err << "error: --theta is required for classify\n";
        return kBadArguments;
    }
    ModelParams p;
    try {
        p = ModelParams::make(k, n, *rc.theta);
        rc.numerics.validate();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }

    const PhaseResult res = classify(p);
    std::vector<double> residuals;
    if (rc.verify) {
        const QuadratureRule rule = build_rule(n, rc.numerics.quad_order);
        for (const auto& fp : res.fixed_points)
            residuals.push_back(
                residual_norm(p, rule, sample_affine(rule, fp.c, fp.lambda)));
    }
    io::print_classify_report(out, p, res, rc.verify ? &residuals : nullptr);
    emit_warnings(res.warnings, err);
    return kOk;
}

int run_sweep(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    int k = 0, n = 0;
    if (int rcode = require_kn(rc, err, k, n); rcode != kOk) return rcode;
    if (!rc.theta_min || !rc.theta_max || rc.steps < 2) {
        err << "error: sweep requires --theta-min, --theta-max and --steps >= 2\n";
        return kBadArguments;
    }
    if (!(*rc.theta_min < *rc.theta_max)) {
        err << "error: --theta-min must be below --theta-max\n";
        return kBadArguments;
    }

    std::vector<double> grid;
    for (int i = 0; i < rc.steps; ++i)
        grid.push_back(*rc.theta_min +
                       (*rc.theta_max - *rc.theta_min) * i / (rc.steps - 1));

    SweepResult sr;
    ModelParams base;
    try {
        rc.numerics.validate();
        sr = sweep(k, n, grid, rc.numerics, rc.verify);
        base = ModelParams::make(k, n, grid.front());
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }

    if (rc.format == "json") {
        const auto doc = io::sweep_json(base, rc.numerics, sr);
        if (rc.output.empty()) {
            out << doc.dump(2) << '\n';
        } else {
            std::ofstream f(rc.output);
            if (!f) {
                err << "error: cannot write " << rc.output << '\n';
                return kIoFailure;
            }
            f << doc.dump(2) << '\n';
        }
    } else {
        if (rc.output.empty()) {
            io::write_sweep_csv(out, sr);
            out << "# regions\n";
            io::write_regions_csv(out, sr.regions);
        } else {
            std::ofstream f(rc.output);
            if (!f) {
                err << "error: cannot write " << rc.output << '\n';
                return kIoFailure;
            }
            io::write_sweep_csv(f, sr);
            const std::string rpath = regions_path(rc.output);
            std::ofstream rf(rpath);
            if (!rf) {
                err << "error: cannot write " << rpath << '\n';
                return kIoFailure;
            }
            io::write_regions_csv(rf, sr.regions);
        }
    }
    emit_warnings(sr.warnings, err);
    return kOk;
}

int run_verify(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    diag::VerifyOptions opt;
    if (rc.k) opt.ks = {*rc.k};
    if (rc.n) opt.ns = {*rc.n};
    opt.numerics = rc.numerics;
    opt.only = rc.only;

    std::vector<diag::SuiteResult> results;
    try {
        results = diag::run_verification(opt);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }

    bool all_passed = true;
    for (const auto& s : results) {
        out << (s.passed ? "[PASS] " : "[FAIL] ") << s.name << ": worst error "
            << s.worst_error << " (tol " << s.tolerance << ", " << s.checks
            << " checks)";
        if (!s.passed) out << "  " << s.detail;
        out << '\n';
        all_passed = all_passed && s.passed;
    }
    if (!rc.only) diag::print_formula_diagnostic(out, opt.ks, opt.ns);
    out << (all_passed ? "verification passed" : "verification FAILED") << '\n';
    return all_passed ? kOk : kVerifyFailure;
}

int run_thresholds(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    int k = 0, n = 0;
    if (int rcode = require_kn(rc, err, k, n); rcode != kOk) return rcode;
    ModelParams p;
    try {
        p = ModelParams::make(k, n, 0.0); // thresholds do not depend on theta
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }
    const PhaseResult res = classify(p);
    if (rc.format == "json")
        out << io::thresholds_json(p, res).dump(2) << '\n';
    else
        io::print_thresholds_report(out, p, res);
    emit_warnings(res.warnings, err);
    return kOk;
}

int dispatch(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    if (rc.command == "classify") return run_classify(rc, out, err);
    if (rc.command == "sweep") return run_sweep(rc, out, err);
    if (rc.command == "verify") return run_verify(rc, out, err);
    if (rc.command == "thresholds") return run_thresholds(rc, out, err);
    err << "error: unknown command '" << rc.command << "'\n";
    return kBadArguments;
}

} // namespace gibbs::cli
