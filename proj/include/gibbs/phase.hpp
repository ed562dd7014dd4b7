#ifndef GIBBS_PHASE_HPP
#define GIBBS_PHASE_HPP

#include <optional>
#include <string>
#include <vector>

#include "gibbs/model.hpp"
#include "gibbs/reduction.hpp"

// Phase diagram: counts translation-invariant Gibbs measures per (k, n, theta)
// and sweeps theta for bifurcation data.

namespace gibbs {

enum class Phase { UniqueMeasure, TwoMeasures, ThreeMeasures };

const char* phase_name(Phase p);
int phase_count(Phase p); // 1, 2 or 3

// theta at which lambda*(theta) reaches the positivity bound 2^{1/(2n+1)}:
// the polynomial is affine in theta, so P(2^{1/(2n+1)}) = 0 solves to
//   theta = sum_i C(k,2i) m_{2i} mu^{2i} / sum_i C(k,2i+1) m_{2i+2} mu^{2i},
// mu = 2^{1/(2n+1)}. Always exceeds theta1; for this kernel it also always
// exceeds the domain bound, so the two-measure window is empty (reported as a
// warning, and checked formally in the verification suites).
double ratio_threshold(int k, int n);
double ratio_threshold(const ModelParams& p);

// One interval of the theta axis with its measure count. lo_closed/hi_closed
// record which endpoints belong to the region.
struct PhaseRegion {
    double lo = 0;
    double hi = 0;
    bool lo_closed = false;
    bool hi_closed = false;
    Phase phase = Phase::UniqueMeasure;

    bool contains(double theta) const;
};

// Partition of the validity domain (-4^{1/(2n+1)}, 4^{1/(2n+1)}) into phase
// regions. Empty windows are omitted from the list (and show up in
// classify()'s warnings instead).
std::vector<PhaseRegion> phase_regions(int k, int n);

struct PhaseResult {
    Phase classification = Phase::UniqueMeasure;
    double theta1 = 0;
    std::optional<double> theta_top; // theta_{2s+1}, odd k only
    double theta_ratio = 0;
    std::optional<double> lambda_star;
    std::vector<ParametricFixedPoint> fixed_points;
    double domain_bound = 0;
    std::vector<std::string> warnings;

    int count() const { return static_cast<int>(fixed_points.size()); }
};

// Even k:  theta <= theta1 -> Unique; theta1 < theta < min(ratio, bound) ->
// Three; [ratio, bound) -> Two (when nonempty). Odd k adds the upper Unique
// region theta >= theta_{2s+1} and the Two window [ratio, theta_{2s+1}),
// both clamped to the domain. theta = theta1 classifies as Unique (closed
// interval). The tag always agrees with the number of reconstructed fixed
// points.
PhaseResult classify(const ModelParams& p);

struct SweepRow {
    double theta = 0;
    Phase classification = Phase::UniqueMeasure;
    std::optional<double> lambda_star;
    std::vector<ParametricFixedPoint> branches;
    std::optional<double> residual; // worst branch residual under the oracle
    bool near_threshold = false;    // within 1e-3 of an in-domain threshold
};

struct SweepResult {
    std::vector<SweepRow> rows;           // in grid order
    std::vector<PhaseRegion> regions;
    std::vector<std::string> warnings;
};

// One row per grid theta. All grid values must lie inside the validity
// domain (std::invalid_argument names the offender). With verify set, each
// row's branches are sampled on a quadrature rule and checked against the
// oracle - except rows within 1e-3 of a threshold, where iteration
// degenerates; those are flagged instead. lambda*(theta) is checked for
// monotone growth along the sweep and a violation is reported as a warning
// (empirical property, not assumed).
SweepResult sweep(int k, int n, const std::vector<double>& theta_grid,
                  const NumericsConfig& cfg, bool verify);

} // namespace gibbs

#endif
