#pragma once

#include "linkopt/energy.hpp"

#include <string>
#include <vector>

namespace linkopt {

struct SnrSolution {
    double unconstrained = 0.0; // gamma*
    double min_required = 0.0;  // gamma_min
    double max_allowed = 0.0;   // gamma_max
    double required = 0.0;      // gamma_req; valid only when feasible
    bool feasible = false;      // gamma_min <= gamma_max
};

struct TraceEntry {
    std::string scheme;
    int tau = 0;
    int iteration = 0;
    double mean_snr = 0.0;
    double n_payload = 0.0;
    double energy_per_bit = 0.0;
};

struct ComboDiag {
    std::string scheme;
    int tau = 0;
    double min_required = 0.0;
    double max_allowed = 0.0;
};

struct JointResult {
    bool feasible = false;
    OperatingPoint best;
    int best_tau = 0;
    int iterations_used = 0; // iterations of the winning combo
    bool converged = true;   // false if any feasible combo hit the cap
    std::vector<TraceEntry> trace;
    std::vector<ComboDiag> infeasible_combos;
};

struct JointOptions {
    double delta = 1e-3;      // convergence threshold on gamma_req, linear SNR
    int iteration_cap = 50;
    double init_payload = -1; // < 0 means "initialize n_p to n_header"
};

// gamma* = omega0/2 + sqrt(omega0*(omega0/4 + (B/A)*n_p/N)).
double optimal_snr_unconstrained(const CostCoefficients& coeffs, const PacketShape& shape,
                                 const ModulationScheme& scheme, const RefitConstants& refit);

// gamma_min = -(gamma_e + log(c'(n_h+n_p))) / (k' log(1-eps_req)).
double min_snr(const ModulationScheme& scheme, const PacketShape& shape,
               const ReliabilityTarget& reliability, const RefitConstants& refit);

// Clamp gamma* onto [gamma_min, gamma_max]; infeasible when gamma_min > gamma_max.
SnrSolution required_snr(const CostCoefficients& coeffs, const ModulationScheme& scheme,
                         const PacketShape& shape, const ReliabilityTarget& reliability,
                         const LinkBudget& link, const RefitConstants& refit);

// Stationary point of E over real n_p at fixed gamma:
// n_p* = n_h*g*((k'g - 1) + sqrt(k'^2 g^2 + 2 k' g + 4 B k'/A + 1)) / (2(g + B/A)).
double optimal_payload(const CostCoefficients& coeffs, int n_header,
                       const ModulationScheme& scheme, double mean_snr,
                       const RefitConstants& refit);

// n_p,max = -n_h + exp(-(gamma_e + g_min * k' * log(1-eps_req))) / c'
// (natural-exponential inversion; +infinity if the exponent overflows).
double max_payload(const ModulationScheme& scheme, int n_header, double min_snr_value,
                   const ReliabilityTarget& reliability, const RefitConstants& refit);

// Alternating joint search over (gamma, n_p) for each (scheme, tau) combo,
// tau = 1..reliability.max_retx; returns the minimum-energy feasible point.
// Ties broken by lowest tau, then lowest M, then lowest gamma.
JointResult joint_optimize(const std::vector<ModulationScheme>& schemes, const LinkBudget& link,
                           const EnergyParams& energy, const ReliabilityTarget& reliability,
                           int n_header, const JointOptions& options = {});

} // namespace linkopt
