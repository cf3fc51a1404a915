#pragma once

#include "linkopt/per.hpp"

namespace linkopt {

struct LinkBudget {
    double g1_db = 30.0;            // gain factor at unit distance, dB
    double kappa = 3.5;             // path-loss exponent
    double distance_m = 1.0;        // d, meters
    double link_margin_db = 40.0;   // M_l, dB
    double noise_psd_dbm_hz = -174; // one-sided N0/2 in dBm/Hz
    double bandwidth_hz = 1e4;      // W
    double max_tx_power_w = 0.01;   // P0

    // Total N0 in W/Hz: twice the one-sided density, dBm -> W.
    double n0_w_hz() const;
};

struct EnergyParams {
    double pa_drain_efficiency = 0.35; // eta, (0,1]
    double circuit_power = -1.0;       // P_c watts; < 0 means "use the scheme's value"
    double symbol_rate = 1e4;          // R_s = W under the Nyquist convention
};

struct CostCoefficients {
    double a_coeff = 0.0; // A = xi*N0*G_d/eta, joules per unit SNR per bit
    double b_coeff = 0.0; // B = P_c/R_b, joules per bit
};

struct ReliabilityTarget {
    double epsilon = 1e-3; // end-to-end residual PER target
    int max_retx = 0;      // tau_r^max retransmissions (attempts = max_retx + 1)

    // Per-attempt PER budget epsilon^(1/(tau+1)).
    double eps_req() const;
};

struct OperatingPoint {
    double mean_snr = 0.0;
    PacketShape shape;
    ModulationScheme scheme;
    ReliabilityTarget reliability;
    double predicted_per = 0.0;
    double energy_per_bit = 0.0;
};

// G_d = G1 * d^kappa * M_l, linear.
double pathloss_gain(const LinkBudget& link);

CostCoefficients cost_coefficients(const ModulationScheme& scheme, const LinkBudget& link,
                                   const EnergyParams& energy);

// E0 = ((n_p+n_h)/n_p) * A * g + B. Throws std::domain_error for n_p <= 0.
double energy_per_bit_attempt(const CostCoefficients& coeffs, const PacketShape& shape,
                              double mean_snr);

// E = E0 / (1 - PER); +infinity when PER reaches 1 numerically (unreachable sentinel).
double expected_energy(const CostCoefficients& coeffs, const PacketShape& shape,
                       const ModulationScheme& scheme, double mean_snr,
                       const RefitConstants& refit);

// E_trunc = (1 - PER^(tau+1)) / (1 - PER) * E0.
double truncated_energy(const CostCoefficients& coeffs, const PacketShape& shape,
                        const ModulationScheme& scheme, double mean_snr,
                        const ReliabilityTarget& reliability, const RefitConstants& refit);

// gamma_max = P0 / (W * N0 * G_d * log2 M).
double snr_max(const ModulationScheme& scheme, const LinkBudget& link);

// Residual PER after tau+1 attempts: per_attempt^(tau+1).
double residual_per(double per_attempt, const ReliabilityTarget& reliability);

} // namespace linkopt
