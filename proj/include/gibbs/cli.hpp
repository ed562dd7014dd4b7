#ifndef GIBBS_CLI_HPP
#define GIBBS_CLI_HPP

#include <optional>
#include <ostream>
#include <string>

#include "gibbs/model.hpp"

// Command implementations behind the CLI front end, separated so tests can
// drive them in-process. Exit codes: 0 success, 1 verification failure,
// 2 invalid arguments, 3 I/O failure.

namespace gibbs::cli {

struct RunConfig {
    std::string command; // classify | sweep | verify | thresholds
    std::optional<int> k;
    std::optional<int> n;
    std::optional<double> theta;
    std::optional<double> theta_min;
    std::optional<double> theta_max;
    int steps = 0;
    std::string output;          // empty -> stdout
    std::string format = "csv";  // csv | json
    bool verify = false;
    std::optional<std::string> only; // verify: run one suite
    NumericsConfig numerics;
};

int run_classify(const RunConfig& rc, std::ostream& out, std::ostream& err);
int run_sweep(const RunConfig& rc, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& rc, std::ostream& out, std::ostream& err);
int run_thresholds(const RunConfig& rc, std::ostream& out, std::ostream& err);

// Routes to the command named in rc.command.
int dispatch(const RunConfig& rc, std::ostream& out, std::ostream& err);

} // namespace gibbs::cli

#endif
