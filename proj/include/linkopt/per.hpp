#pragma once

#include "linkopt/modulation.hpp"

#include <optional>

namespace linkopt {

inline constexpr double kEulerGamma = 0.5772156649015329;

// Gumbel location/scale locating the PER waterfall for a scheme at packet length N.
struct GumbelConstants {
    double a_n = 0.0; // location, SNR units
    double b_n = 1.0; // scale, > 0
};

// Fitted constants mapping Q-function schemes onto exponential-form constants.
struct RefitConstants {
    double k1 = 0.2114;
    double k2 = 0.5598;
};

// Nakagami-m fading figure; m=1 is Rayleigh. Closed forms cover m in {1,2,3}.
struct FadingModel {
    int m = 1;
};

struct PacketShape {
    int n_payload = 1; // n_p, > 0
    int n_header = 0;  // n_h, >= 0
    int total() const { return n_payload + n_header; }
};

// Exact AWGN PER: 1 - (1 - b_e(gamma))^N, computed via log1p/expm1.
double per_awgn_exact(const ModulationScheme& scheme, int n_bits, double snr);

// Normalizing constants (a_N, b_N). Exponential law: a=log(N c)/k, b=1/k (refit ignored).
// QFunction without refit: erfinv-based form (requires N*c > 2).
// QFunction with refit: a=log(k1 N c)/(k2 k), b=1/(k2 k).
GumbelConstants gumbel_constants(const ModulationScheme& scheme, int n_bits,
                                 const std::optional<RefitConstants>& refit = std::nullopt);

// Gumbel PER approximation: 1 - exp(-exp(-(gamma - a)/b)).
double per_awgn_gumbel(const GumbelConstants& constants, double snr);

// Waterfall threshold omega_m ~= E[gamma^m]/m under the Gumbel law, m in {1,2,3}.
double waterfall_threshold(const GumbelConstants& constants, const FadingModel& fading);

// Effective (c, k): (k1*c, k2*k) for QFunction law, (c, k) for Exponential law.
struct EffectiveConstants {
    double c_eff, k_eff;
};
EffectiveConstants effective_constants(const ModulationScheme& scheme, const RefitConstants& refit);

// Closed-form Rayleigh-averaged PER: 1 - (N c')^(-1/(k' g)) exp(-gamma_e/(k' g)),
// identical to 1 - exp(-omega_0/g); evaluated via expm1 on the omega_0 form.
double avg_per_rayleigh(const ModulationScheme& scheme, const PacketShape& shape,
                        double mean_snr, const RefitConstants& refit);

// Upper-bound evaluator: m^(m-1) * B / (g^(m-1) Gamma(m)) * (1 - exp(-m*omega_m/(g*B))),
// clamped to [0,1]. Shared by the closed-form bound and oracle-threshold evaluations.
double nakagami_bound_eval(double omega_m, double bound_b, int m, double mean_snr);

// Bound with closed-form omega_m (waterfall_threshold) and B from bound_constant.
// m=1 with B=1 reduces exactly to avg_per_rayleigh.
double avg_per_nakagami_bound(const ModulationScheme& scheme, const PacketShape& shape,
                              double mean_snr, const FadingModel& fading,
                              const RefitConstants& refit);

// B = sup over gamma >= 0 of gamma^(m-1) * f(gamma); 1 for m=1. Golden-section
// maximization on [0, a_N + 40 b_N] plus a 1000-point verification grid.
double bound_constant(const ModulationScheme& scheme, int n_bits, const FadingModel& fading);

// Fit (k1, k2) by minimizing summed squared relative error of the closed-form
// omega_0 against quadrature omega_0 over 16 log-spaced N in [n_lo, n_hi].
RefitConstants refit_constants(const ModulationScheme& scheme, int n_lo, int n_hi);

} // namespace linkopt
