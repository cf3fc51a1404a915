#include "linkopt/energy.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace linkopt;

TEST_CASE("pathloss and noise conversions") {
    LinkBudget link; // G1 = 30 dB, kappa = 3.5, M_l = 40 dB
    link.distance_m = 10.0;
    // G_d = 10^3 * 10^3.5 * 10^4
    CHECK(pathloss_gain(link) == doctest::Approx(1e3 * std::pow(10.0, 3.5) * 1e4).epsilon(1e-12));
    // N0 = 2 * 10^(-174/10) mW/Hz = 7.962e-21 W/Hz
    CHECK(link.n0_w_hz() == doctest::Approx(2.0 * std::pow(10.0, -17.4) * 1e-3).epsilon(1e-12));
    CHECK(link.n0_w_hz() == doctest::Approx(7.962e-21).epsilon(1e-3));
}

TEST_CASE("cost_coefficients composes A and B") {
    LinkBudget link;
    link.distance_m = 5.0;
    EnergyParams energy; // eta = 0.35, circuit_power < 0 -> scheme's value
    const auto& qam16 = scheme_by_name("16QAM");
    auto c = cost_coefficients(qam16, link, energy);
    double gd = pathloss_gain(link);
    CHECK(c.a_coeff ==
          doctest::Approx(1.8 * link.n0_w_hz() * gd / 0.35).epsilon(1e-12));
    // B = P_c / (W log2 M) with the scheme's 310 mW circuit power
    CHECK(c.b_coeff == doctest::Approx(0.310 / (1e4 * 4.0)).epsilon(1e-12));
    // explicit circuit power overrides the scheme default
    energy.circuit_power = 0.5;
    auto c2 = cost_coefficients(qam16, link, energy);
    CHECK(c2.b_coeff == doctest::Approx(0.5 / (1e4 * 4.0)).epsilon(1e-12));
    CHECK(c2.a_coeff == doctest::Approx(c.a_coeff).epsilon(1e-14));
}

TEST_CASE("energy_per_bit_attempt hand example") {
    // A = 10, B = 1, n_p = 48, n_h = 40, g = 1: (88/48)*10 + 1 = 19.333...
    CostCoefficients c{10.0, 1.0};
    PacketShape shape{48, 40};
    CHECK(energy_per_bit_attempt(c, shape, 1.0) ==
          doctest::Approx(88.0 / 48.0 * 10.0 + 1.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)energy_per_bit_attempt(c, PacketShape{0, 40}, 1.0),
                    std::domain_error);
}

TEST_CASE("expected_energy divides by the success probability") {
    RefitConstants r;
    const auto& s = scheme_by_name("DPSK");
    PacketShape shape{48, 40};
    CostCoefficients c{1e-9, 1e-8};
    double gbar = 60.0;
    double per = avg_per_rayleigh(s, shape, gbar, r);
    double e0 = energy_per_bit_attempt(c, shape, gbar);
    CHECK(expected_energy(c, shape, s, gbar, r) ==
          doctest::Approx(e0 / (1.0 - per)).epsilon(1e-12));
    // PER -> 1 at vanishing SNR yields the +inf sentinel
    CHECK(expected_energy(c, shape, s, 1e-12, r) ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("truncated_energy geometric-series factor") {
    // With PER = 0.5, tau = 3: (1 - 0.5^4)/(1 - 0.5) = 1.875
    RefitConstants r;
    const auto& s = scheme_by_name("DPSK");
    PacketShape shape{48, 40};
    CostCoefficients c{1.0, 0.0};
    ReliabilityTarget rel{1e-3, 3};
    // find gbar where closed-form PER = 0.5: omega0/gbar = ln 2
    auto g = gumbel_constants(s, shape.total());
    double w0 = waterfall_threshold(g, FadingModel{1});
    double gbar = w0 / std::log(2.0);
    double e0 = energy_per_bit_attempt(c, shape, gbar);
    CHECK(truncated_energy(c, shape, s, gbar, rel, r) ==
          doctest::Approx(1.875 * e0).epsilon(1e-9));
    // tau = 0 reduces to a single attempt
    ReliabilityTarget rel0{1e-3, 0};
    CHECK(truncated_energy(c, shape, s, gbar, rel0, r) == doctest::Approx(e0).epsilon(1e-12));
    // truncated <= untruncated expected energy
    CHECK(truncated_energy(c, shape, s, gbar, rel, r) <=
          expected_energy(c, shape, s, gbar, r));
}

TEST_CASE("eps_req and residual_per are inverse views") {
    ReliabilityTarget rel{1e-3, 3};
    CHECK(rel.eps_req() == doctest::Approx(std::pow(1e-3, 0.25)).epsilon(1e-14));
    CHECK(rel.eps_req() == doctest::Approx(0.17782794100389228).epsilon(1e-12));
    // residual at the per-attempt budget hits the end-to-end target
    CHECK(residual_per(rel.eps_req(), rel) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(residual_per(0.1778, rel) == doctest::Approx(0.000999).epsilon(1e-3));
}

TEST_CASE("snr_max scales with power budget, bandwidth, gain, and bits per symbol") {
    LinkBudget link;
    link.distance_m = 10.0;
    const auto& bpsk = scheme_by_name("BPSK");
    const auto& qam4 = scheme_by_name("4QAM");
    const auto& qam16 = scheme_by_name("16QAM");
    double gexp = link.max_tx_power_w /
                  (link.bandwidth_hz * link.n0_w_hz() * pathloss_gain(link) * 1.0);
    CHECK(snr_max(bpsk, link) == doctest::Approx(gexp).epsilon(1e-12));
    CHECK(snr_max(qam4, link) == doctest::Approx(snr_max(bpsk, link) / 2.0).epsilon(1e-12));
    CHECK(snr_max(qam16, link) == doctest::Approx(snr_max(bpsk, link) / 4.0).epsilon(1e-12));
    // distance halves the budget by 2^kappa
    LinkBudget far = link;
    far.distance_m = 20.0;
    CHECK(snr_max(bpsk, far) ==
          doctest::Approx(snr_max(bpsk, link) / std::pow(2.0, 3.5)).epsilon(1e-12));
}
