#pragma once

#include "linkopt/config.hpp"

namespace linkopt {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kCsvSchemaVersion = "linkopt.v1";
inline constexpr const char* kNaToken = "NA"; // infeasible/unavailable sentinel

// Exit codes: 0 success, 1 validation failure, 2 config error, 3 numeric-oracle failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitOracle = 3;

int cmd_describe();
int cmd_per_error_report(const RunConfig& config);
int cmd_sweep(const RunConfig& config);
int cmd_joint(const RunConfig& config);
int cmd_validate(const RunConfig& config);

// Log-linear baseline for the error report: least-squares fit of
// log f(gamma) ~ icpt + slope*gamma between the f=0.5 and f=1e-3 crossings;
// the fitted two-piece model integrates to gamma_p + 1/|slope|.
double loglinear_baseline_omega(const ModulationScheme& scheme, int n_bits);

} // namespace linkopt
