#ifndef GIBBS_REDUCTION_HPP
#define GIBBS_REDUCTION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "gibbs/model.hpp"

// Exact finite-dimensional analysis. The kernel has rank 2, so H_k maps
// everything into span{1, phi}; writing f = x + y*phi the operator becomes a
// polynomial map on (x, y). Eliminating the scale turns the fixed-point
// condition into an even polynomial in the ratio lambda = y/x whose positive
// roots are the nonconstant branches.

namespace gibbs {

// C(k, j) as a double; 0 outside 0 <= j <= k.
double binomial(int k, int j);

// A fixed point in the closed form f(t) = c * (1 + lambda * phi(t)).
// Strictly positive on [0,1] iff |lambda| < 2^{1/(2n+1)}, nonnegative iff
// |lambda| <= 2^{1/(2n+1)} (phi attains -+2^{-1/(2n+1)} at the endpoints).
// lambda = 0 is the constant solution.
struct ParametricFixedPoint {
    double c = 1;
    double lambda = 0;
    int n = 1;

    double value(double t) const;
    double min_value() const;         // c * (1 - |lambda| * 2^{-1/(2n+1)})
    double positivity_bound() const;  // 2^{1/(2n+1)}
};

// Moment tables entering the reduced map and the ratio polynomial:
//   alphas[i] = m_{2i}
//   betas[i]  = C(k, 2i+1) * m_{2i+2}
//   thetas[i] = C(k, 2i) * m_{2i} / betas[i]   (theta_{2i+1}, strictly increasing)
// For even k = 2s the theta chain ends at theta_{2s-1} (the top coefficient of
// the polynomial is the constant m_{2s}); for odd k = 2s+1 it ends at
// theta_{2s+1}, the upper uniqueness threshold.
struct ReducedCoefficients {
    int k = 2;
    int n = 1;
    int s = 1;
    bool even_k = true;
    std::vector<double> alphas; // i = 0 .. s+1
    std::vector<double> betas;  // i = 0 .. s-1 (even k) or 0 .. s (odd k)
    std::vector<double> thetas; // same indexing as betas

    double theta1() const { return thetas.front(); }
    // Odd k only: theta_{2s+1}.
    double theta_top() const { return thetas.back(); }
};

ReducedCoefficients reduced_coefficients(int k, int n);
ReducedCoefficients reduced_coefficients(const ModelParams& p);

// Image of (x, y) under the reduced operator: with f = x + y*phi,
//   x' = sum_{j even} C(k,j) x^{k-j} y^j m_j
//   y' = theta * sum_{j odd} C(k,j) x^{k-j} y^j m_{j+1}
// (odd moments vanish). Exact in real arithmetic.
std::pair<double, double> reduced_map(const ModelParams& p, double x, double y);

// Even polynomial P(lambda) = sum_i coeffs[i] * lambda^{2i} obtained by
// eliminating the scale from the reduced map (divide the y-component by the
// x-component at a fixed point and clear denominators):
//   coeffs[i] = C(k,2i) m_{2i} - theta * C(k,2i+1) m_{2i+2},  i = 0..s.
// Positive roots are exactly the ratios lambda = y/x of nontrivial fixed
// points. coeffs[i] = betas[i] * (theta_{2i+1} - theta) where defined.
struct EvenPolynomial {
    int k = 2;
    int n = 1;
    int s = 1;
    double theta = 0;
    std::vector<double> coeffs; // coefficient of lambda^{2i}

    double eval(double lambda) const;
    // Sign changes of the coefficient sequence, zeros skipped.
    int sign_changes() const;
};

// theta may lie outside the validity domain; the polynomial itself is defined
// for every real theta (used to locate thresholds formally).
EvenPolynomial build_polynomial(const ReducedCoefficients& rc, double theta);
EvenPolynomial build_polynomial(const ModelParams& p);

// Unique positive root of the phase polynomial, or absent when the
// coefficient sequence has no sign change. The monotone threshold chain
// forces at most one sign change; more than one is reported as an internal
// inconsistency (std::logic_error), never ignored. Root isolated by
// bracketing [0, R] (Cauchy bound in the lambda^2 variable, square-rooted)
// and bisection to root_tol.
std::optional<double> positive_root(const EvenPolynomial& poly, double root_tol);

// S(lambda) = sum_i C(k,2i) m_{2i} lambda^{2i}, the x-component of the
// reduced map divided by x^k at y = lambda x. Strictly positive.
double scale_sum(const ReducedCoefficients& rc, double lambda);

// All positive fixed points in closed form. Always contains (c=1, lambda=0).
// For a present lambda*, each branch lambda = +-lambda* with scale
// c = S(lambda)^{-1/(k-1)} is included iff the function is nonnegative on
// [0,1], i.e. |lambda| <= 2^{1/(2n+1)}. S <= 0 cannot occur for real inputs
// and is reported as std::logic_error if numerics ever produce it.
std::vector<ParametricFixedPoint> reconstruct_fixed_points(
    const ReducedCoefficients& rc, std::optional<double> lambda_star);
std::vector<ParametricFixedPoint> reconstruct_fixed_points(
    const ModelParams& p, std::optional<double> lambda_star);

} // namespace gibbs

#endif
