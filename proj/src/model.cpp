#include "gibbs/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gibbs {

double odd_root(double x, int m) {
    if (m < 1 || m % 2 == 0) {
        throw std::invalid_argument("odd_root: m must be odd and positive");
    }
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::fabs(x), 1.0 / m), x);
}

double phi_basis(double t, int n) { return odd_root(t - 0.5, 2 * n + 1); }

double basis_moment(int n, int j) {
    if (n < 1) throw std::invalid_argument("basis_moment: n must be >= 1");
    if (j < 0) throw std::invalid_argument("basis_moment: j must be >= 0");
    if (j % 2 == 1) return 0.0; // odd integrand about u = 1/2
    const double m = 2 * n + 1;
    return m / (m + j) * std::pow(0.5, j / m);
}

double theta_domain_bound(int n) { return std::pow(4.0, 1.0 / (2 * n + 1)); }

ModelParams ModelParams::make(int k, int n, double theta) {
    std::ostringstream msg;
    if (k < 2) {
        msg << "tree order k must be >= 2 (got " << k << ")";
        throw std::invalid_argument(msg.str());
    }
    if (n < 1) {
        msg << "exponent parameter n must be >= 1 (got " << n << ")";
        throw std::invalid_argument(msg.str());
    }
    const double bound = theta_domain_bound(n);
    if (!(std::fabs(theta) < bound)) {
        msg << "theta = " << theta << " outside validity domain (-" << bound
            << ", " << bound << ") for n = " << n;
        throw std::invalid_argument(msg.str());
    }
    ModelParams p;
    p.k = k;
    p.n = n;
    p.theta = theta;
    p.s = k / 2;
    p.even_k = (k % 2 == 0);
    p.domain_bound = bound;
    return p;
}

double kernel_eval(const ModelParams& p, double t, double u) {
    return 1.0 + p.theta * phi_basis(t, p.n) * phi_basis(u, p.n);
}

bool validate_kernel_positivity(const ModelParams& p) {
    return std::fabs(p.theta) < 1.0;
}

void NumericsConfig::validate() const {
    if (quad_order < 8)
        throw std::invalid_argument("quad_order must be >= 8");
    if (!(residual_tol > 0) || !(root_tol > 0) || !(cluster_tol > 0))
        throw std::invalid_argument("tolerances must be positive");
    if (max_picard_iters < 1)
        throw std::invalid_argument("max_picard_iters must be positive");
}

} // namespace gibbs
