#include "gibbs/phase.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gibbs/quadrature.hpp"

namespace gibbs {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::UniqueMeasure: return "UniqueMeasure";
        case Phase::TwoMeasures: return "TwoMeasures";
        case Phase::ThreeMeasures: return "ThreeMeasures";
    }
    return "?";
}

int phase_count(Phase p) {
    switch (p) {
        case Phase::UniqueMeasure: return 1;
        case Phase::TwoMeasures: return 2;
        case Phase::ThreeMeasures: return 3;
    }
    return 0;
}

double ratio_threshold(int k, int n) {
    const ReducedCoefficients rc = reduced_coefficients(k, n);
    const double mu2 = std::pow(2.0, 2.0 / (2 * n + 1));
    double num = 0.0, den = 0.0, zp = 1.0;
    for (int i = 0; i <= rc.s; ++i, zp *= mu2) {
        num += binomial(k, 2 * i) * rc.alphas[i] * zp;
        den += binomial(k, 2 * i + 1) * rc.alphas[i + 1] * zp;
    }
    return num / den;
}

double ratio_threshold(const ModelParams& p) { return ratio_threshold(p.k, p.n); }

bool PhaseRegion::contains(double theta) const {
    if (theta < lo || theta > hi) return false;
    if (theta == lo && !lo_closed) return false;
    if (theta == hi && !hi_closed) return false;
    return true;
}

namespace {

struct Windows {
    double bound, theta1, ratio;
    std::optional<double> theta_top; // odd k
    double three_hi;                 // upper edge of the three-measure window
};

Windows compute_windows(int k, int n, const ReducedCoefficients& rc) {
    Windows w;
    w.bound = theta_domain_bound(n);
    w.theta1 = rc.theta1();
    w.ratio = ratio_threshold(k, n);
    if (!rc.even_k) w.theta_top = rc.theta_top();
    w.three_hi = std::min(w.ratio, w.bound);
    if (w.theta_top) w.three_hi = std::min(w.three_hi, *w.theta_top);
    return w;
}

} // namespace

std::vector<PhaseRegion> phase_regions(int k, int n) {
    const ReducedCoefficients rc = reduced_coefficients(k, n);
    const Windows w = compute_windows(k, n, rc);

    std::vector<PhaseRegion> regions;
    regions.push_back({-w.bound, w.theta1, false, true, Phase::UniqueMeasure});
    if (w.three_hi > w.theta1)
        regions.push_back({w.theta1, w.three_hi, false, false, Phase::ThreeMeasures});
    const double two_hi = std::min(w.theta_top.value_or(w.bound), w.bound);
    if (w.ratio < two_hi)
        regions.push_back({w.ratio, two_hi, true, false, Phase::TwoMeasures});
    if (w.theta_top && *w.theta_top < w.bound)
        regions.push_back({*w.theta_top, w.bound, true, false, Phase::UniqueMeasure});
    return regions;
}

PhaseResult classify(const ModelParams& p) {
    const ReducedCoefficients rc = reduced_coefficients(p);
    const Windows w = compute_windows(p.k, p.n, rc);

    PhaseResult res;
    res.theta1 = w.theta1;
    res.theta_top = w.theta_top;
    res.theta_ratio = w.ratio;
    res.domain_bound = w.bound;

    if (p.theta <= w.theta1) {
        res.classification = Phase::UniqueMeasure;
    } else if (p.theta < w.three_hi) {
        res.classification = Phase::ThreeMeasures;
    } else if (w.theta_top && p.theta >= *w.theta_top) {
        res.classification = Phase::UniqueMeasure;
    } else {
        res.classification = Phase::TwoMeasures;
    }

    res.lambda_star =
        positive_root(build_polynomial(rc, p.theta), NumericsConfig{}.root_tol);
    res.fixed_points = reconstruct_fixed_points(rc, res.lambda_star);

    if (!validate_kernel_positivity(p)) {
        std::ostringstream msg;
        msg << "interaction logarithm ln(1 + theta*r), |r| <= 1, undefined for |theta| = "
            << std::fabs(p.theta) << " >= 1; fixed-point analysis unaffected";
        res.warnings.push_back(msg.str());
    }
    if (w.ratio >= std::min(w.theta_top.value_or(w.bound), w.bound)) {
        std::ostringstream msg;
        msg << "two-measure window empty: ratio threshold " << w.ratio
            << " >= " << std::min(w.theta_top.value_or(w.bound), w.bound);
        res.warnings.push_back(msg.str());
    }
    if (w.theta_top && *w.theta_top >= w.bound) {
        std::ostringstream msg;
        msg << "upper unique window empty: theta_" << (2 * p.s + 1) << " = "
            << *w.theta_top << " >= domain bound " << w.bound;
        res.warnings.push_back(msg.str());
    }

    if (phase_count(res.classification) != res.count())
        throw std::logic_error("phase tag disagrees with reconstructed fixed-point count");
    return res;
}

SweepResult sweep(int k, int n, const std::vector<double>& theta_grid,
                  const NumericsConfig& cfg, bool verify) {
    cfg.validate();
    const ReducedCoefficients rc = reduced_coefficients(k, n);
    const Windows w = compute_windows(k, n, rc);

    for (double th : theta_grid) {
        if (!(std::fabs(th) < w.bound)) {
            std::ostringstream msg;
            msg << "sweep grid value theta = " << th << " outside validity domain (-"
                << w.bound << ", " << w.bound << ")";
            throw std::invalid_argument(msg.str());
        }
    }

    std::vector<double> grid = theta_grid;
    std::stable_sort(grid.begin(), grid.end());

    std::vector<double> thresholds = {w.theta1};
    if (w.ratio < w.bound) thresholds.push_back(w.ratio);
    if (w.theta_top && *w.theta_top < w.bound) thresholds.push_back(*w.theta_top);

    QuadratureRule rule;
    if (verify) rule = build_rule(n, cfg.quad_order);

    SweepResult out;
    out.regions = phase_regions(k, n);

    std::optional<double> prev_lambda;
    for (double th : grid) {
        const ModelParams p = ModelParams::make(k, n, th);
        const PhaseResult c = classify(p);

        SweepRow row;
        row.theta = th;
        row.classification = c.classification;
        row.lambda_star = c.lambda_star;
        row.branches = c.fixed_points;
        row.near_threshold =
            std::any_of(thresholds.begin(), thresholds.end(),
                        [&](double t) { return std::fabs(th - t) < 1e-3; });

        if (verify && !row.near_threshold) {
            double worst = 0.0;
            for (const auto& fp : row.branches) {
                const GridFunction f = sample_affine(rule, fp.c, fp.lambda);
                worst = std::max(worst, residual_norm(p, rule, f));
            }
            row.residual = worst;
        }

        if (row.lambda_star && prev_lambda && *row.lambda_star < *prev_lambda) {
            std::ostringstream msg;
            msg << "lambda* not monotone at theta = " << th;
            out.warnings.push_back(msg.str());
        }
        if (row.lambda_star) prev_lambda = row.lambda_star;

        out.rows.push_back(std::move(row));
        for (const auto& warning : c.warnings) {
            if (std::find(out.warnings.begin(), out.warnings.end(), warning) ==
                out.warnings.end())
                out.warnings.push_back(warning);
        }
    }
    return out;
}

} // namespace gibbs
