#ifndef GIBBS_IO_HPP
#define GIBBS_IO_HPP

#include <ostream>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "gibbs/phase.hpp"

namespace gibbs::io {

// Up to 17 significant digits, round-trip safe, locale-independent.
std::string fmt_real(double v);

// Header: theta,classification,lambda_star,c1,lambda1,c2,lambda2,c3,lambda3,residual
// Absent branches and unverified residuals serialize as empty fields.
void write_sweep_csv(std::ostream& os, const SweepResult& r);

// Companion summary: theta_lo,theta_hi,classification.
void write_regions_csv(std::ostream& os, const std::vector<PhaseRegion>& regions);

// Object with top-level keys params, rows, regions, thresholds, warnings.
nlohmann::json sweep_json(const ModelParams& base, const NumericsConfig& cfg,
                          const SweepResult& r);

void print_classify_report(std::ostream& os, const ModelParams& p,
                           const PhaseResult& res,
                           const std::vector<double>* residuals);

void print_thresholds_report(std::ostream& os, const ModelParams& p,
                             const PhaseResult& res);

nlohmann::json thresholds_json(const ModelParams& p, const PhaseResult& res);

} // namespace gibbs::io

#endif
