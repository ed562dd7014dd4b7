#include "gibbs/reduction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gibbs {

double binomial(int k, int j) {
    if (j < 0 || j > k) return 0.0;
    if (j > k - j) j = k - j;
    double r = 1.0;
    for (int i = 1; i <= j; ++i) r = r * (k - j + i) / i;
    return r;
}

double ParametricFixedPoint::value(double t) const {
    return c * (1.0 + lambda * phi_basis(t, n));
}

double ParametricFixedPoint::positivity_bound() const {
    return std::pow(2.0, 1.0 / (2 * n + 1));
}

double ParametricFixedPoint::min_value() const {
    // phi attains -+2^{-1/(2n+1)} at the endpoints of [0,1].
    return c * (1.0 - std::fabs(lambda) / positivity_bound());
}

ReducedCoefficients reduced_coefficients(int k, int n) {
    if (k < 2) throw std::invalid_argument("reduced_coefficients: k must be >= 2");
    if (n < 1) throw std::invalid_argument("reduced_coefficients: n must be >= 1");

    ReducedCoefficients rc;
    rc.k = k;
    rc.n = n;
    rc.s = k / 2;
    rc.even_k = (k % 2 == 0);

    for (int i = 0; i <= rc.s + 1; ++i)
        rc.alphas.push_back(basis_moment(n, 2 * i));

    const int top = rc.even_k ? rc.s - 1 : rc.s;
    for (int i = 0; i <= top; ++i) {
        rc.betas.push_back(binomial(k, 2 * i + 1) * rc.alphas[i + 1]);
        rc.thetas.push_back(binomial(k, 2 * i) * rc.alphas[i] / rc.betas[i]);
    }
    for (std::size_t i = 1; i < rc.thetas.size(); ++i) {
        if (!(rc.thetas[i] > rc.thetas[i - 1]))
            throw std::logic_error("threshold chain failed to increase");
    }
    return rc;
}

ReducedCoefficients reduced_coefficients(const ModelParams& p) {
    return reduced_coefficients(p.k, p.n);
}

std::pair<double, double> reduced_map(const ModelParams& p, double x, double y) {
    double xp = 0.0, yp = 0.0;
    for (int j = 0; j <= p.k; ++j) {
        const double term = binomial(p.k, j) * std::pow(x, p.k - j) * std::pow(y, j);
        if (j % 2 == 0)
            xp += term * basis_moment(p.n, j);
        else
            yp += term * basis_moment(p.n, j + 1);
    }
    return {xp, p.theta * yp};
}

double EvenPolynomial::eval(double lambda) const {
    const double z = lambda * lambda;
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * z + coeffs[i];
    return v;
}

int EvenPolynomial::sign_changes() const {
    int changes = 0, prev = 0;
    for (double c : coeffs) {
        const int sgn = (c > 0) - (c < 0);
        if (sgn == 0) continue;
        if (prev != 0 && sgn != prev) ++changes;
        prev = sgn;
    }
    return changes;
}

EvenPolynomial build_polynomial(const ReducedCoefficients& rc, double theta) {
    EvenPolynomial poly;
    poly.k = rc.k;
    poly.n = rc.n;
    poly.s = rc.s;
    poly.theta = theta;
    // Scale elimination: at a fixed point with y = lambda x the two map
    // components give lambda * D(lambda) = theta * N(lambda); dividing by
    // lambda and clearing denominators leaves only even powers.
    for (int i = 0; i <= rc.s; ++i) {
        poly.coeffs.push_back(binomial(rc.k, 2 * i) * rc.alphas[i] -
                              theta * binomial(rc.k, 2 * i + 1) * rc.alphas[i + 1]);
    }
    return poly;
}

EvenPolynomial build_polynomial(const ModelParams& p) {
    return build_polynomial(reduced_coefficients(p), p.theta);
}

std::optional<double> positive_root(const EvenPolynomial& poly, double root_tol) {
    if (!(root_tol > 0)) throw std::invalid_argument("root_tol must be positive");
    const int changes = poly.sign_changes();
    if (changes == 0) return std::nullopt;
    if (changes > 1) {
        std::ostringstream msg;
        msg << "phase polynomial has " << changes
            << " coefficient sign changes (single-bifurcation structure violated)"
            << " at k=" << poly.k << " n=" << poly.n << " theta=" << poly.theta;
        throw std::logic_error(msg.str());
    }

    // Exactly one sign change: constant term < 0, leading nonzero term > 0.
    std::size_t d = poly.coeffs.size();
    while (d > 0 && poly.coeffs[d - 1] == 0.0) --d;
    double cmax = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i)
        cmax = std::max(cmax, std::fabs(poly.coeffs[i]));
    // Cauchy bound in the lambda^2 variable, square-rooted.
    double hi = std::sqrt(1.0 + cmax / std::fabs(poly.coeffs[d - 1]));
    while (poly.eval(hi) <= 0.0) hi *= 2.0;

    double lo = 0.0;
    for (int it = 0; it < 200 && (hi - lo) > root_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        (poly.eval(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double scale_sum(const ReducedCoefficients& rc, double lambda) {
    const double z = lambda * lambda;
    double v = 0.0, zp = 1.0;
    for (int i = 0; i <= rc.s; ++i, zp *= z)
        v += binomial(rc.k, 2 * i) * rc.alphas[i] * zp;
    return v;
}

std::vector<ParametricFixedPoint> reconstruct_fixed_points(
    const ReducedCoefficients& rc, std::optional<double> lambda_star) {
    std::vector<ParametricFixedPoint> out;
    out.push_back({1.0, 0.0, rc.n}); // constant solution, always fixed

    if (!lambda_star) return out;
    const double bound = std::pow(2.0, 1.0 / (2 * rc.n + 1));
    for (double sign : {1.0, -1.0}) {
        const double lambda = sign * *lambda_star;
        if (std::fabs(lambda) > bound) continue; // dips below zero on [0,1]
        const double S = scale_sum(rc, lambda);
        if (!(S > 0.0))
            throw std::logic_error("scale sum not positive in reconstruction");
        out.push_back({std::pow(S, -1.0 / (rc.k - 1)), lambda, rc.n});
    }
    return out;
}

std::vector<ParametricFixedPoint> reconstruct_fixed_points(
    const ModelParams& p, std::optional<double> lambda_star) {
    return reconstruct_fixed_points(reduced_coefficients(p), lambda_star);
}

} // namespace gibbs
