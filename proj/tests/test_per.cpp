#include "linkopt/per.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace linkopt;

namespace {
constexpr double kZeta3 = 1.2020569031595942854;
}

TEST_CASE("per_awgn_exact basic identities") {
    const auto& dpsk = scheme_by_name("DPSK");
    // N = 1 reduces to the BER itself
    CHECK(per_awgn_exact(dpsk, 1, 3.0) ==
          doctest::Approx(ber_awgn(dpsk, 3.0)).epsilon(1e-14));
    // hand value: N = 10, b = 0.5 e^-3
    double b = 0.5 * std::exp(-3.0);
    CHECK(per_awgn_exact(dpsk, 10, 3.0) ==
          doctest::Approx(1.0 - std::pow(1.0 - b, 10)).epsilon(1e-13));
    // monotone in N and in gamma
    CHECK(per_awgn_exact(dpsk, 100, 3.0) > per_awgn_exact(dpsk, 10, 3.0));
    CHECK(per_awgn_exact(dpsk, 100, 5.0) < per_awgn_exact(dpsk, 100, 3.0));
    // tiny-b regime keeps precision (expm1/log1p path): PER ~= N*b
    const auto& bpsk = scheme_by_name("BPSK");
    double tiny = ber_awgn(bpsk, 40.0);
    CHECK(per_awgn_exact(bpsk, 1000, 40.0) ==
          doctest::Approx(1000.0 * tiny).epsilon(1e-6));
}

TEST_CASE("gumbel_constants: exponential law closed form") {
    // c = 0.5, k = 1, N = 100: a = log(50), b = 1
    auto g = gumbel_constants(scheme_by_name("DPSK"), 100);
    CHECK(g.a_n == doctest::Approx(std::log(50.0)).epsilon(1e-14));
    CHECK(g.b_n == doctest::Approx(1.0).epsilon(1e-14));
    // NCFSK: c = 0.5, k = 0.5, N = 200: a = log(100)/0.5, b = 2
    auto g2 = gumbel_constants(scheme_by_name("NCFSK"), 200);
    CHECK(g2.a_n == doctest::Approx(2.0 * std::log(100.0)).epsilon(1e-14));
    CHECK(g2.b_n == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gumbel_constants: Q-law erfinv form and refit form") {
    const auto& bpsk = scheme_by_name("BPSK"); // c = 1, k = 2
    // no refit: a = (2/k)*erfinv(1 - 2/(N c))^2
    auto g = gumbel_constants(bpsk, 1000);
    double ea = erfinv(1.0 - 2.0 / 1000.0);
    double eb = erfinv(1.0 - 2.0 / (1000.0 * std::exp(1.0)));
    CHECK(g.a_n == doctest::Approx(ea * ea).epsilon(1e-13));
    CHECK(g.b_n == doctest::Approx(eb * eb - ea * ea).epsilon(1e-13));
    // N c <= 2 is out of the erfinv form's domain
    CHECK_THROWS_AS((void)gumbel_constants(bpsk, 2), std::domain_error);
    // refit: a = log(k1 N c)/(k2 k), b = 1/(k2 k)
    RefitConstants r;
    auto gr = gumbel_constants(bpsk, 1000, r);
    CHECK(gr.a_n == doctest::Approx(std::log(r.k1 * 1000.0) / (r.k2 * 2.0)).epsilon(1e-14));
    CHECK(gr.b_n == doctest::Approx(1.0 / (r.k2 * 2.0)).epsilon(1e-14));
    CHECK(gr.a_n == doctest::Approx(4.782).epsilon(1e-3));
    CHECK(gr.b_n == doctest::Approx(0.8932).epsilon(1e-3));
    // refit on an exponential-law scheme is a no-op
    auto ge = gumbel_constants(scheme_by_name("DPSK"), 100, r);
    CHECK(ge.a_n == doctest::Approx(std::log(50.0)).epsilon(1e-14));
}

TEST_CASE("per_awgn_gumbel at the location parameter") {
    GumbelConstants g{std::log(50.0), 1.0};
    // at gamma = a: 1 - exp(-1)
    CHECK(per_awgn_gumbel(g, g.a_n) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    // at gamma = a + 3b: 1 - exp(-e^-3)
    CHECK(per_awgn_gumbel(g, g.a_n + 3.0) ==
          doctest::Approx(1.0 - std::exp(-std::exp(-3.0))).epsilon(1e-13));
    CHECK(per_awgn_gumbel(g, g.a_n + 3.0) == doctest::Approx(0.048568).epsilon(1e-4));
}

TEST_CASE("waterfall_threshold closed forms for m = 1, 2, 3") {
    GumbelConstants g{std::log(50.0), 1.0};
    double a = g.a_n, b = g.b_n;
    double pi2_6 = M_PI * M_PI / 6.0;
    double w1 = a + kEulerGamma * b;
    double w2 = 0.5 * (a * a + pi2_6 * b * b + kEulerGamma * kEulerGamma * b * b +
                       2.0 * kEulerGamma * a * b);
    double w3 = (a * a * a + 3.0 * a * a * b * kEulerGamma +
                 3.0 * a * b * b * (kEulerGamma * kEulerGamma + pi2_6) +
                 b * b * b * (std::pow(kEulerGamma, 3) + kEulerGamma * M_PI * M_PI / 2.0 +
                              2.0 * kZeta3)) / 3.0;
    CHECK(waterfall_threshold(g, FadingModel{1}) == doctest::Approx(w1).epsilon(1e-14));
    CHECK(waterfall_threshold(g, FadingModel{2}) == doctest::Approx(w2).epsilon(1e-14));
    CHECK(waterfall_threshold(g, FadingModel{3}) == doctest::Approx(w3).epsilon(1e-14));
    CHECK(w1 == doctest::Approx(4.4892).epsilon(1e-4));
    CHECK(w2 == doctest::Approx(10.89).epsilon(1e-3));
    // degenerate scale b -> 0: omega_2 -> a^2/2
    GumbelConstants gd{a, 1e-300};
    CHECK(waterfall_threshold(gd, FadingModel{2}) == doctest::Approx(a * a / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)waterfall_threshold(g, FadingModel{4}), std::domain_error);
}

TEST_CASE("effective_constants") {
    RefitConstants r;
    auto eb = effective_constants(scheme_by_name("BPSK"), r);
    CHECK(eb.c_eff == doctest::Approx(r.k1 * 1.0).epsilon(1e-14));
    CHECK(eb.k_eff == doctest::Approx(r.k2 * 2.0).epsilon(1e-14));
    auto ed = effective_constants(scheme_by_name("DPSK"), r);
    CHECK(ed.c_eff == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ed.k_eff == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("avg_per_rayleigh equals 1 - exp(-omega0/g) and the product closed form") {
    RefitConstants r;
    for (const char* name : {"DPSK", "NCFSK", "BPSK", "16QAM"}) {
        const auto& s = scheme_by_name(name);
        PacketShape shape{88, 40};
        auto g = gumbel_constants(s, shape.total(),
                                  s.law == BerLaw::QFunction
                                      ? std::optional<RefitConstants>(r)
                                      : std::nullopt);
        double w0 = waterfall_threshold(g, FadingModel{1});
        for (double gbar : {5.0, 30.0, 200.0}) {
            CAPTURE(name);
            CAPTURE(gbar);
            double lhs = avg_per_rayleigh(s, shape, gbar, r);
            CHECK(lhs == doctest::Approx(1.0 - std::exp(-w0 / gbar)).epsilon(1e-12));
            // product form: 1 - (N c')^(-1/(k' g)) exp(-gamma_e/(k' g))
            auto e = effective_constants(s, r);
            double prod = 1.0 - std::pow(shape.total() * e.c_eff, -1.0 / (e.k_eff * gbar)) *
                                    std::exp(-kEulerGamma / (e.k_eff * gbar));
            CHECK(lhs == doctest::Approx(prod).epsilon(1e-12));
        }
    }
}

TEST_CASE("nakagami bound reduces to Rayleigh at m = 1 and tightens with m") {
    RefitConstants r;
    const auto& s = scheme_by_name("4QAM");
    PacketShape shape{48, 40};
    for (double gbar : {10.0, 50.0, 300.0}) {
        CHECK(avg_per_nakagami_bound(s, shape, gbar, FadingModel{1}, r) ==
              doctest::Approx(avg_per_rayleigh(s, shape, gbar, r)).epsilon(1e-12));
    }
    // at high mean SNR, higher m (less fading) gives lower PER bound
    double p1 = avg_per_nakagami_bound(s, shape, 300.0, FadingModel{1}, r);
    double p2 = avg_per_nakagami_bound(s, shape, 300.0, FadingModel{2}, r);
    double p3 = avg_per_nakagami_bound(s, shape, 300.0, FadingModel{3}, r);
    CHECK(p2 < p1);
    CHECK(p3 < p2);
    // bound stays in [0, 1]
    CHECK(avg_per_nakagami_bound(s, shape, 1e-3, FadingModel{3}, r) <= 1.0);
    CHECK(avg_per_nakagami_bound(s, shape, 1e9, FadingModel{3}, r) >= 0.0);
}

TEST_CASE("bound_constant: 1 for m = 1, supremum property for m > 1") {
    const auto& s = scheme_by_name("DPSK");
    CHECK(bound_constant(s, 128, FadingModel{1}) == doctest::Approx(1.0));
    for (int m : {2, 3}) {
        CAPTURE(m);
        double bsup = bound_constant(s, 128, FadingModel{m});
        auto g = gumbel_constants(s, 128);
        // B must dominate gamma^(m-1) f(gamma) on a check grid
        double worst = 0.0;
        for (int i = 0; i <= 400; ++i) {
            double gamma = (g.a_n + 40.0 * g.b_n) * i / 400.0;
            worst = std::max(worst, std::pow(gamma, m - 1) * per_awgn_exact(s, 128, gamma));
        }
        CHECK(bsup >= worst * (1.0 - 1e-9));
        CHECK(bsup <= worst * (1.0 + 1e-3)); // and is close to the supremum
    }
}

TEST_CASE("nakagami_bound_eval matches its formula") {
    // m = 2: 2 * B / (g * Gamma(2)) * (1 - exp(-2 w / (g B)))
    double w = 10.0, B = 5.0, g = 40.0;
    double expect = 2.0 * B / g * (1.0 - std::exp(-2.0 * w / (g * B)));
    CHECK(nakagami_bound_eval(w, B, 2, g) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(nakagami_bound_eval(1e9, 1.0, 1, 1.0) == doctest::Approx(1.0)); // clamped
}
