#include "gibbs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gibbs {

namespace {

// x^p for integer p >= 0 by repeated multiplication (keeps the sign of
// negative bases exact).
double ipow(double x, int p) {
    double r = 1.0;
    for (double b = x; p > 0; p >>= 1, b *= b)
        if (p & 1) r *= b;
    return r;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
// Legendre recurrence.
void gauss_legendre(int npts, std::vector<double>& x, std::vector<double>& w) {
    x.assign(npts, 0.0);
    w.assign(npts, 0.0);
    const int m = (npts + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (npts + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < npts; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = npts * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[npts - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[npts - 1 - i] = w[i];
    }
}

void check_sizes(const QuadratureRule& rule, const GridFunction& f) {
    if (f.values.size() != rule.size())
        throw std::invalid_argument("grid function does not match rule size");
}

} // namespace

QuadratureRule build_rule(int n, int quad_order) {
    if (n < 1) throw std::invalid_argument("build_rule: n must be >= 1");
    if (quad_order < 8)
        throw std::invalid_argument("build_rule: quad_order must be >= 8");

    const int m = 2 * n + 1;
    const double a = std::pow(0.5, 1.0 / m); // z ranges over [-a, a]

    std::vector<double> gx, gw;
    gauss_legendre(quad_order, gx, gw);

    QuadratureRule rule;
    rule.n_param = n;
    rule.order = quad_order;
    rule.nodes.reserve(2 * quad_order);
    rule.weights.reserve(2 * quad_order);
    rule.phi.reserve(2 * quad_order);

    // halves [-a, 0] and [0, a] in z; u = 1/2 + z^m, du = m z^{2n} dz
    for (const auto& [lo, hi] : {std::pair{-a, 0.0}, std::pair{0.0, a}}) {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < quad_order; ++i) {
            const double z = mid + half * gx[i];
            rule.phi.push_back(z);
            rule.nodes.push_back(0.5 + ipow(z, m));
            rule.weights.push_back(gw[i] * half * m * ipow(z, 2 * n));
        }
    }
    return rule;
}

double GridFunction::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

double GridFunction::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

GridFunction make_grid(const QuadratureRule& rule,
                       const std::function<double(double, double)>& g) {
    GridFunction f;
    f.nodes = rule.nodes;
    f.weights = rule.weights;
    f.values.reserve(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
        f.values.push_back(g(rule.nodes[i], rule.phi[i]));
    return f;
}

GridFunction sample_affine(const QuadratureRule& rule, double c, double lambda) {
    return make_grid(rule, [&](double, double z) { return c * (1.0 + lambda * z); });
}

double integrate(const QuadratureRule& rule, const std::vector<double>& values) {
    if (values.size() != rule.size())
        throw std::invalid_argument("integrate: value count does not match rule");
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        sum += rule.weights[i] * values[i];
    return sum;
}

GridFunction apply_hammerstein(const ModelParams& p, const QuadratureRule& rule,
                               const GridFunction& f) {
    check_sizes(rule, f);
    double i0 = 0.0, i1 = 0.0; // int f^k du and int phi f^k du
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const double fk = ipow(f.values[j], p.k);
        i0 += rule.weights[j] * fk;
        i1 += rule.weights[j] * rule.phi[j] * fk;
    }
    GridFunction g;
    g.nodes = f.nodes;
    g.weights = f.weights;
    g.values.resize(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
        g.values[i] = i0 + p.theta * rule.phi[i] * i1;
    return g;
}

double residual_norm(const ModelParams& p, const QuadratureRule& rule,
                     const GridFunction& f) {
    const GridFunction g = apply_hammerstein(p, rule, f);
    double r = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        r = std::max(r, std::fabs(g.values[i] - f.values[i]));
    return r;
}

std::pair<double, double> project_affine(const QuadratureRule& rule,
                                         const std::vector<double>& values) {
    if (values.size() != rule.size())
        throw std::invalid_argument("project_affine: value count does not match rule");
    // 1 and phi are orthogonal under the rule; <phi, phi> = m_2.
    double x = 0.0, y = 0.0, phi2 = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        x += rule.weights[i] * values[i];
        y += rule.weights[i] * rule.phi[i] * values[i];
        phi2 += rule.weights[i] * rule.phi[i] * rule.phi[i];
    }
    return {x, y / phi2};
}

PicardResult picard_solve(const ModelParams& p, const QuadratureRule& rule,
                          const GridFunction& f0, const NumericsConfig& cfg) {
    check_sizes(rule, f0);
    cfg.validate();
    if (f0.min_value() < 0.0)
        throw std::invalid_argument("picard_solve: start must be nonnegative");

    constexpr double kOverflow = 1e10;

    PicardResult res;
    res.f = f0;

    // Already a fixed point (covers f = 0 and f = 1 starts exactly).
    res.residual = residual_norm(p, rule, f0);
    if (res.residual < cfg.residual_tol) {
        res.status = PicardResult::Status::Converged;
        return res;
    }

    const double mean0 = integrate(rule, f0.values);
    if (!(mean0 > 0.0)) return res; // nonnegative, nonzero residual, zero mean

    GridFunction fhat = f0;
    for (auto& v : fhat.values) v /= mean0;

    double gamma = 1.0;
    double prev_res = std::numeric_limits<double>::infinity();
    const double inv_km1 = -1.0 / (p.k - 1);

    for (int iter = 1; iter <= cfg.max_picard_iters; ++iter) {
        const GridFunction g = apply_hammerstein(p, rule, fhat);

        double mu = 0.0, gmax = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < g.values.size(); ++i) {
            if (!std::isfinite(g.values[i])) { finite = false; break; }
            mu += rule.weights[i] * g.values[i];
            gmax = std::max(gmax, std::fabs(g.values[i]));
        }
        if (!finite || gmax > kOverflow || !(mu > 1e-300)) {
            res.f = fhat;
            res.iterations = iter;
            return res; // Diverged
        }

        // Rescaled candidate c*fhat is fixed iff c^{k-1} mu = 1; its residual
        // max|c^k g - c fhat| comes free from the same application.
        const double c = std::pow(mu, inv_km1);
        const double ck = std::pow(mu, inv_km1 * p.k);
        double r = 0.0;
        for (std::size_t i = 0; i < g.values.size(); ++i)
            r = std::max(r, std::fabs(ck * g.values[i] - c * fhat.values[i]));

        if (r < cfg.residual_tol) {
            res.status = PicardResult::Status::Converged;
            res.f = fhat;
            for (auto& v : res.f.values) v *= c;
            res.iterations = iter;
            res.residual = r;
            return res;
        }
        if (r > prev_res) gamma = std::max(gamma * 0.5, 1.0 / 1048576.0);
        prev_res = r;

        for (std::size_t i = 0; i < fhat.values.size(); ++i)
            fhat.values[i] = (1.0 - gamma) * fhat.values[i] + gamma * g.values[i] / mu;
    }

    res.f = fhat;
    res.iterations = cfg.max_picard_iters;
    res.residual = prev_res;
    return res; // Diverged
}

std::vector<GridFunction> multi_start_fixed_points(
    const ModelParams& p, const QuadratureRule& rule, const NumericsConfig& cfg,
    const std::vector<GridFunction>& extra_starts) {
    const double q = std::pow(2.0, 1.0 / (2 * p.n + 1));

    std::vector<GridFunction> starts;
    starts.push_back(make_grid(rule, [](double, double) { return 1.0; }));
    for (double a : {0.25, 0.5, 0.75, 0.95}) {
        for (double sign : {1.0, -1.0}) {
            starts.push_back(make_grid(
                rule, [&](double, double z) { return 1.0 + sign * a * q * z; }));
        }
    }
    starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());

    std::vector<GridFunction> found;
    for (const auto& f0 : starts) {
        PicardResult r = picard_solve(p, rule, f0, cfg);
        if (!r.converged()) continue;
        if (!(r.f.min_value() > 0.0)) continue; // positive fixed points only
        const bool dup = std::any_of(found.begin(), found.end(), [&](const GridFunction& h) {
            double d = 0.0;
            for (std::size_t i = 0; i < h.values.size(); ++i)
                d = std::max(d, std::fabs(h.values[i] - r.f.values[i]));
            return d < cfg.cluster_tol;
        });
        if (!dup) found.push_back(std::move(r.f));
    }

    // Sort by value at t = 1 (endpoint value of the affine representative).
    const double phi_end = std::pow(0.5, 1.0 / (2 * p.n + 1));
    auto value_at_one = [&](const GridFunction& f) {
        auto [x, y] = project_affine(rule, f.values);
        return x + y * phi_end;
    };
    std::stable_sort(found.begin(), found.end(),
                     [&](const GridFunction& a, const GridFunction& b) {
                         return value_at_one(a) < value_at_one(b);
                     });
    return found;
}

} // namespace gibbs
