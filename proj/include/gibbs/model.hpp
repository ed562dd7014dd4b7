#ifndef GIBBS_MODEL_HPP
#define GIBBS_MODEL_HPP

#include <string>

// Continuum-spin nearest-neighbor model on a Cayley tree of order k.
// Translation-invariant Gibbs measures correspond to positive fixed points of
// the Hammerstein operator
//
//              / 1
//   (H_k f)(t) = |   K(t,u) f(u)^k du,     K(t,u) = 1 + theta * phi(t) * phi(u),
//              / 0
//
// with phi(t) = (t - 1/2)^{1/(2n+1)} taken as the real odd root. K stays
// strictly positive on [0,1]^2 exactly for |theta| < 4^{1/(2n+1)}, which is the
// validity domain of the model.

namespace gibbs {

// Real m-th root of x for odd m: sign(x) * |x|^{1/m}. Total on the reals,
// odd as a function of x.
double odd_root(double x, int m);

// phi(t) = (t - 1/2)^{1/(2n+1)}. Odd about t = 1/2, ranges over
// [-2^{-1/(2n+1)}, 2^{-1/(2n+1)}] on [0,1].
double phi_basis(double t, int n);

// m_j = int_0^1 (u - 1/2)^{j/(2n+1)} du. Zero for odd j; for even j
// m_j = (2n+1)/(2n+j+1) * (1/2)^{j/(2n+1)}. m_0 = 1.
double basis_moment(int n, int j);

// 4^{1/(2n+1)}, the half-width of the theta validity interval.
double theta_domain_bound(int n);

struct ModelParams {
    int k = 2;        // tree order, k >= 2
    int n = 1;        // root exponent parameter (root degree 2n+1)
    double theta = 0; // coupling, |theta| < 4^{1/(2n+1)}
    int s = 1;        // k = 2s (even k) or k = 2s+1 (odd k)
    bool even_k = true;
    double domain_bound = 0; // 4^{1/(2n+1)}

    // Validates k >= 2, n >= 1, |theta| < 4^{1/(2n+1)}; throws
    // std::invalid_argument with a one-line reason otherwise.
    static ModelParams make(int k, int n, double theta);
};

// K(t,u) = 1 + theta * phi(t) * phi(u). Symmetric; equals 1 whenever t = 1/2.
double kernel_eval(const ModelParams& p, double t, double u);

// True iff |theta| < 1, the condition for ln(1 + theta*r) to be defined for
// every r in [-1, 1] (the interaction written with a unit-normalized root
// factor). Callers emit a warning when false, never an error: the fixed-point
// analysis is valid on the full theta domain.
bool validate_kernel_positivity(const ModelParams& p);

struct NumericsConfig {
    int quad_order = 48;        // Gauss-Legendre points per half-interval
    double residual_tol = 1e-9; // fixed-point residual in sup norm
    double root_tol = 1e-12;    // bisection width for lambda*
    double cluster_tol = 1e-6;  // sup-distance below which fixed points merge
    int max_picard_iters = 10000;

    // All entries positive, quad_order >= 8; throws std::invalid_argument.
    void validate() const;
};

} // namespace gibbs

#endif
