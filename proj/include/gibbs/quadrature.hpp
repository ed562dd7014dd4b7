#ifndef GIBBS_QUADRATURE_HPP
#define GIBBS_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "gibbs/model.hpp"

// Discretization of the Hammerstein operator and direct fixed-point search.
// This is the ground-truth oracle: it never uses the finite-dimensional
// reduction, only quadrature and iteration.

namespace gibbs {

// Rule for int_0^1 g(u) du specialized to integrands carrying powers of
// phi(u) = (u-1/2)^{1/(2n+1)}. Change of variables u = 1/2 + z^{2n+1} maps
// phi(u) to z and du to (2n+1) z^{2n} dz; a Gauss-Legendre rule of
// `order` points is placed on each half z in [-2^{-1/(2n+1)}, 0] and
// [0, 2^{-1/(2n+1)}]. The transformed integrand is polynomial in z for
// polynomial-in-phi integrands, so moments are reproduced to rounding.
struct QuadratureRule {
    int n_param = 1;
    int order = 0;               // points per half-interval
    std::vector<double> nodes;   // u_i in (0,1), non-decreasing
    std::vector<double> weights; // positive, sum to 1
    std::vector<double> phi;     // z_i = phi_basis(u_i), strictly increasing

    std::size_t size() const { return nodes.size(); }
};

QuadratureRule build_rule(int n, int quad_order);

// Function values on the rule's nodes, together with the nodes and weights
// they belong to.
struct GridFunction {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double min_value() const;
    double max_value() const;
};

// Samples g(u, phi(u)) on the rule's nodes.
GridFunction make_grid(const QuadratureRule& rule,
                       const std::function<double(double u, double z)>& g);

// Samples c * (1 + lambda * phi(u)).
GridFunction sample_affine(const QuadratureRule& rule, double c, double lambda);

// Sum of w_i * values_i (the integral of the grid function).
double integrate(const QuadratureRule& rule, const std::vector<double>& values);

// g(t_i) = sum_j w_j K(t_i, u_j) f(u_j)^k. The rank-2 kernel reduces this to
// two inner products: g = I0 + theta * phi(t) * I1 with I0 = int f^k,
// I1 = int phi f^k.
GridFunction apply_hammerstein(const ModelParams& p, const QuadratureRule& rule,
                               const GridFunction& f);

// max_i |(H_k f)(u_i) - f(u_i)|.
double residual_norm(const ModelParams& p, const QuadratureRule& rule,
                     const GridFunction& f);

struct PicardResult {
    enum class Status { Converged, Diverged };
    Status status = Status::Diverged;
    GridFunction f;     // converged fixed point (rescaled), or last iterate
    int iterations = 0;
    double residual = 0;

    bool converged() const { return status == Status::Converged; }
};

// Damped fixed-point iteration. H_k scales as H_k(c f) = c^k H_k(f), so every
// fixed point repels along its own ray under plain iteration; the iteration
// therefore runs on the mean-normalized operator,
//   fhat <- (1-gamma) fhat + gamma * H(fhat)/m,   m = int H(fhat) du,
// and the scale is recovered as c = m^{-1/(k-1)}. gamma starts at 1 and is
// halved whenever the residual of the rescaled candidate c*fhat increases.
// Returns Diverged after max_picard_iters, or when iterates leave [0, 1e10]
// or the mean degenerates. Divergence is an outcome, not an error.
PicardResult picard_solve(const ModelParams& p, const QuadratureRule& rule,
                          const GridFunction& f0, const NumericsConfig& cfg);

// Runs picard_solve from the deterministic start family
//   f = 1;  f = 1 +- a * 2^{1/(2n+1)} * phi(t),  a in {0.25, 0.5, 0.75, 0.95}
// plus any extra candidate functions supplied by the caller, discards
// divergent and non-positive results, merges duplicates closer than
// cluster_tol in sup norm, and returns the survivors sorted by value at t=1.
std::vector<GridFunction> multi_start_fixed_points(
    const ModelParams& p, const QuadratureRule& rule, const NumericsConfig& cfg,
    const std::vector<GridFunction>& extra_starts = {});

// Coefficients (x, y) of the best approximation x + y*phi to the grid values
// in the rule's inner product (1 and phi are orthogonal under the rule).
std::pair<double, double> project_affine(const QuadratureRule& rule,
                                         const std::vector<double>& values);

} // namespace gibbs

#endif
