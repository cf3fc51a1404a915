#include "linkopt/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace linkopt {

double LinkBudget::n0_w_hz() const {
    // noise_psd_dbm_hz holds the one-sided density N0/2; total N0 is twice that.
    return 2.0 * std::pow(10.0, noise_psd_dbm_hz / 10.0) * 1e-3;
}

double ReliabilityTarget::eps_req() const {
    return std::pow(epsilon, 1.0 / (max_retx + 1));
}

double pathloss_gain(const LinkBudget& link) {
    double g1 = std::pow(10.0, link.g1_db / 10.0);
    double ml = std::pow(10.0, link.link_margin_db / 10.0);
    return g1 * std::pow(link.distance_m, link.kappa) * ml;
}

CostCoefficients cost_coefficients(const ModulationScheme& scheme, const LinkBudget& link,
                                   const EnergyParams& energy) {
    double pc = energy.circuit_power < 0.0 ? scheme.circuit_power : energy.circuit_power;
    double gd = pathloss_gain(link);
    CostCoefficients c;
    c.a_coeff = scheme.papr * link.n0_w_hz() * gd / energy.pa_drain_efficiency;
    c.b_coeff = pc / (link.bandwidth_hz * scheme.bits_per_symbol);
    return c;
}

double energy_per_bit_attempt(const CostCoefficients& coeffs, const PacketShape& shape,
                              double mean_snr) {
    if (shape.n_payload <= 0)
        throw std::domain_error("energy_per_bit_attempt: n_payload must be positive");
    double n = shape.total();
    return (n / shape.n_payload) * coeffs.a_coeff * mean_snr + coeffs.b_coeff;
}

double expected_energy(const CostCoefficients& coeffs, const PacketShape& shape,
                       const ModulationScheme& scheme, double mean_snr,
                       const RefitConstants& refit) {
    double per = avg_per_rayleigh(scheme, shape, mean_snr, refit);
    double e0 = energy_per_bit_attempt(coeffs, shape, mean_snr);
    if (per >= 1.0) return std::numeric_limits<double>::infinity();
    return e0 / (1.0 - per);
}

double truncated_energy(const CostCoefficients& coeffs, const PacketShape& shape,
                        const ModulationScheme& scheme, double mean_snr,
                        const ReliabilityTarget& reliability, const RefitConstants& refit) {
    double per = avg_per_rayleigh(scheme, shape, mean_snr, refit);
    double e0 = energy_per_bit_attempt(coeffs, shape, mean_snr);
    if (per >= 1.0) return (reliability.max_retx + 1) * e0; // all attempts spent
    double factor = (1.0 - std::pow(per, reliability.max_retx + 1)) / (1.0 - per);
    return factor * e0;
}

double snr_max(const ModulationScheme& scheme, const LinkBudget& link) {
    return link.max_tx_power_w /
           (link.bandwidth_hz * link.n0_w_hz() * pathloss_gain(link) * scheme.bits_per_symbol);
}

double residual_per(double per_attempt, const ReliabilityTarget& reliability) {
    if (per_attempt < 0.0 || per_attempt > 1.0)
        throw std::domain_error("residual_per: per_attempt must be a probability");
    return std::pow(per_attempt, reliability.max_retx + 1);
}

} // namespace linkopt
