#include "gibbs/io.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace gibbs::io {

using nlohmann::json;

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void append_branch_fields(std::string& line, const SweepRow& row, std::size_t i) {
    if (i < row.branches.size()) {
        line += ',';
        line += fmt_real(row.branches[i].c);
        line += ',';
        line += fmt_real(row.branches[i].lambda);
    } else {
        line += ",,";
    }
}

json branch_json(const ParametricFixedPoint& fp) {
    return json{{"c", fp.c}, {"lambda", fp.lambda}};
}

json region_json(const PhaseRegion& r) {
    return json{{"theta_lo", r.lo},
                {"theta_hi", r.hi},
                {"classification", phase_name(r.phase)}};
}

} // namespace

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
    os << "theta,classification,lambda_star,c1,lambda1,c2,lambda2,c3,lambda3,residual\n";
    for (const SweepRow& row : r.rows) {
        std::string line = fmt_real(row.theta);
        line += ',';
        line += phase_name(row.classification);
        line += ',';
        if (row.lambda_star) line += fmt_real(*row.lambda_star);
        for (std::size_t i = 0; i < 3; ++i) append_branch_fields(line, row, i);
        line += ',';
        if (row.residual) line += fmt_real(*row.residual);
        os << line << '\n';
    }
}

void write_regions_csv(std::ostream& os, const std::vector<PhaseRegion>& regions) {
    os << "theta_lo,theta_hi,classification\n";
    for (const PhaseRegion& r : regions)
        os << fmt_real(r.lo) << ',' << fmt_real(r.hi) << ',' << phase_name(r.phase)
           << '\n';
}

json sweep_json(const ModelParams& base, const NumericsConfig& cfg,
                const SweepResult& r) {
    json rows = json::array();
    for (const SweepRow& row : r.rows) {
        json branches = json::array();
        for (const auto& fp : row.branches) branches.push_back(branch_json(fp));
        json jr{{"theta", row.theta},
                {"classification", phase_name(row.classification)},
                {"lambda_star", row.lambda_star ? json(*row.lambda_star) : json()},
                {"branches", branches},
                {"residual", row.residual ? json(*row.residual) : json()},
                {"near_threshold", row.near_threshold}};
        rows.push_back(std::move(jr));
    }

    json regions = json::array();
    for (const PhaseRegion& reg : r.regions) regions.push_back(region_json(reg));

    const ReducedCoefficients rc = reduced_coefficients(base);
    json thresholds{{"theta1", rc.theta1()},
                    {"theta_chain", rc.thetas},
                    {"ratio_threshold", ratio_threshold(base)},
                    {"theta_top", rc.even_k ? json() : json(rc.theta_top())},
                    {"domain_bound", base.domain_bound}};

    return json{{"params",
                 {{"k", base.k},
                  {"n", base.n},
                  {"quad_order", cfg.quad_order},
                  {"residual_tol", cfg.residual_tol}}},
                {"rows", rows},
                {"regions", regions},
                {"thresholds", thresholds},
                {"warnings", r.warnings}};
}

void print_classify_report(std::ostream& os, const ModelParams& p,
                           const PhaseResult& res,
                           const std::vector<double>* residuals) {
    os << "classification: " << phase_name(res.classification) << '\n';
    os << "k: " << p.k << "  n: " << p.n << "  theta: " << fmt_real(p.theta) << '\n';
    print_thresholds_report(os, p, res);
    os << "fixed points (" << res.count() << "):\n";
    for (std::size_t i = 0; i < res.fixed_points.size(); ++i) {
        const auto& fp = res.fixed_points[i];
        os << "  f" << i + 1 << ": c = " << fmt_real(fp.c)
           << "  lambda = " << fmt_real(fp.lambda);
        if (residuals && i < residuals->size())
            os << "  oracle residual = " << fmt_real((*residuals)[i]);
        os << '\n';
    }
}

void print_thresholds_report(std::ostream& os, const ModelParams& p,
                             const PhaseResult& res) {
    os << "theta domain: (-" << fmt_real(res.domain_bound) << ", "
       << fmt_real(res.domain_bound) << ")\n";
    os << "theta1: " << fmt_real(res.theta1) << '\n';
    const ReducedCoefficients rc = reduced_coefficients(p);
    os << "theta chain:";
    for (double t : rc.thetas) os << ' ' << fmt_real(t);
    os << '\n';
    os << "ratio threshold: " << fmt_real(res.theta_ratio);
    if (res.theta_ratio >= res.domain_bound) os << " (outside domain)";
    os << '\n';
    if (res.theta_top) {
        os << "theta_top: " << fmt_real(*res.theta_top);
        if (*res.theta_top >= res.domain_bound) os << " (outside domain)";
        os << '\n';
    }
    if (res.lambda_star)
        os << "lambda_star: " << fmt_real(*res.lambda_star) << '\n';
}

json thresholds_json(const ModelParams& p, const PhaseResult& res) {
    const ReducedCoefficients rc = reduced_coefficients(p);
    return json{{"params", {{"k", p.k}, {"n", p.n}, {"theta", p.theta}}},
                {"rows", json::array()},
                {"regions", json::array()},
                {"thresholds",
                 {{"theta1", res.theta1},
                  {"theta_chain", rc.thetas},
                  {"ratio_threshold", res.theta_ratio},
                  {"theta_top", res.theta_top ? json(*res.theta_top) : json()},
                  {"domain_bound", res.domain_bound}}},
                {"warnings", res.warnings}};
}

} // namespace gibbs::io
