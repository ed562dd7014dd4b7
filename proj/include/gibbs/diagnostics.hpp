#ifndef GIBBS_DIAGNOSTICS_HPP
#define GIBBS_DIAGNOSTICS_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gibbs/model.hpp"

// Cross-module verification suites. Each suite checks one invariant family
// over a (k, n, theta) grid and reports its worst observed error. The same
// suites back the `verify` CLI command and the acceptance runner.

namespace gibbs::diag {

struct SuiteResult {
    std::string name;
    bool passed = false;
    double worst_error = 0;
    double tolerance = 0;
    int checks = 0;
    std::string detail; // first failure, or empty
};

struct VerifyOptions {
    std::vector<int> ks = {2, 3, 4, 5, 6, 7};
    std::vector<int> ns = {1, 2, 3};
    NumericsConfig numerics;
    int theta_samples = 25;
    std::optional<std::string> only; // run a single suite by name
};

// Deterministic theta grid spanning the validity domain for (k, n), nudged
// away from thresholds by at least 1e-3.
std::vector<double> theta_grid(int k, int n, int count);

// Suites, in the order they run:
//   moments             basis_moment closed form vs quadrature, 1e-12
//   constant-fixed-point residual of f = 1, 1e-12
//   oracle-equivalence  reduced_map vs quadrature projection of H_k, 1e-10
//   root-count          positive-root count 0/1 split at theta1
//   threshold-chain     theta_1 < theta_3 < ... strictly
//   partition           every theta claimed by exactly one phase region
//   oracle-count        classify() count == multi-start fixed-point count
//   branch-residuals    reconstructed branches: residual < 1e-8 at order 48,
//                       and <= max(that, 1e-9) at order 96
//   specific-values     theta1(2,1), ratio(2,1), empty two-measure window
//   positivity-boundary lambda*(ratio_threshold) = 2^{1/(2n+1)} and the
//                       excluded branch touches zero (formal evaluation; the
//                       ratio threshold lies outside the domain)
std::vector<SuiteResult> run_verification(const VerifyOptions& opt);

// Closed-form cross-checks of the coefficient tables against the
// elimination-derived values: reports, for each parity, which variant of the
// threshold/beta closed forms reproduces the derived tables, the
// endpoint-antiderivative route for the reduced map, and the alternative
// theta1 normalization. Informational, no pass/fail.
void print_formula_diagnostic(std::ostream& os, const std::vector<int>& ks,
                              const std::vector<int>& ns);

} // namespace gibbs::diag

#endif
