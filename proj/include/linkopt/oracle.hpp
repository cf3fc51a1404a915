#pragma once

#include "linkopt/energy.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>

namespace linkopt {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct McSpec {
    std::uint64_t seed = 0;
    long n_packets = 100000;
    int m = 1;            // fading figure
    bool per_bit = false; // slow cross-validation mode: simulate every bit
};

struct McResult {
    double per_hat = 0.0;               // per-attempt PER estimate
    double ci95_halfwidth = 0.0;        // binomial normal approximation
    double mean_attempts = 0.0;         // <= tau+1
    double attempts_ci95_halfwidth = 0.0;
    double mean_energy_per_bit = 0.0;   // estimates the truncated-ARQ energy
};

struct QuadratureFailure : std::runtime_error {
    double achieved_error;
    explicit QuadratureFailure(const std::string& what, double err)
        : std::runtime_error(what), achieved_error(err) {}
};

// Adaptive Simpson on [lo, hi]; throws QuadratureFailure if the subdivision
// budget is exhausted before meeting the tolerance.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

// Composite 15-point Gauss-Legendre (independent method for cross-checks).
double integrate_gauss(const std::function<double(double)>& f, double lo, double hi,
                       int panels);

// Average PER over Nakagami-m fading: integral of per_awgn_exact against the
// Gamma SNR density, truncated at gamma_cut = mean_snr*(m + 40/sqrt(m)) with a
// verified analytic tail bound.
double avg_per_numeric(const ModulationScheme& scheme, int n_bits, double mean_snr, int m,
                       const QuadratureSpec& spec = {});

// omega_m = integral of gamma^(m-1) * per_awgn_exact(gamma) d gamma.
double threshold_numeric(const ModulationScheme& scheme, int n_bits, int m,
                         const QuadratureSpec& spec = {});

// Seeded Monte Carlo of the fading link with truncated ARQ. Per-packet
// substreams are derived from (seed, packet index), so results do not depend
// on evaluation order. Fading is redrawn per attempt (uncorrelated
// retransmissions).
McResult simulate_link(const ModulationScheme& scheme, const PacketShape& shape,
                       double mean_snr, const LinkBudget& link, const EnergyParams& energy,
                       const ReliabilityTarget& reliability, const McSpec& spec);

// Dense log-spaced scan plus golden-section refinement; returns (argmin, min)
// to ~1e-6 relative. Throws std::runtime_error on non-finite objective values.
std::pair<double, double> argmin_scan(const std::function<double(double)>& objective,
                                      double lo, double hi, int points);

} // namespace linkopt
