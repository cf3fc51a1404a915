#include "linkopt/per.hpp"
#include "linkopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace linkopt {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kZeta3 = 1.2020569031595942854; // Apery's constant
} // namespace

double per_awgn_exact(const ModulationScheme& scheme, int n_bits, double snr) {
    if (n_bits < 1) throw std::domain_error("per_awgn_exact: n_bits must be >= 1");
    double be = ber_awgn(scheme, snr);
    if (be >= 1.0) return 1.0;
    // 1 - (1-b)^N without cancellation at small b*N
    return -std::expm1(static_cast<double>(n_bits) * std::log1p(-be));
}

GumbelConstants gumbel_constants(const ModulationScheme& scheme, int n_bits,
                                 const std::optional<RefitConstants>& refit) {
    if (n_bits < 1) throw std::domain_error("gumbel_constants: n_bits must be >= 1");
    double n = static_cast<double>(n_bits);
    if (scheme.law == BerLaw::Exponential)
        return {std::log(n * scheme.c_m) / scheme.k_m, 1.0 / scheme.k_m};
    if (refit) {
        double arg = refit->k1 * n * scheme.c_m;
        if (arg <= 1.0)
            std::fprintf(stderr,
                         "linkopt: warning: k1*N*c = %g <= 1 for %s, N=%d; "
                         "refit location parameter is nonpositive\n",
                         arg, scheme.name.c_str(), n_bits);
        double kk = refit->k2 * scheme.k_m;
        return {std::log(arg) / kk, 1.0 / kk};
    }
    if (n * scheme.c_m <= 2.0)
        throw std::domain_error(
            "gumbel_constants: N*c_m must exceed 2 so the erfinv argument 1-2/(N*c_m) "
            "lies in (-1,1)");
    double t1 = erfinv(1.0 - 2.0 / (n * scheme.c_m));
    double t2 = erfinv(1.0 - 2.0 / (n * scheme.c_m * std::exp(1.0)));
    double a = (2.0 / scheme.k_m) * t1 * t1;
    double b = (2.0 / scheme.k_m) * t2 * t2 - a;
    return {a, b};
}

double per_awgn_gumbel(const GumbelConstants& constants, double snr) {
    if (snr < 0.0) throw std::domain_error("per_awgn_gumbel: snr must be nonnegative");
    double z = (snr - constants.a_n) / constants.b_n;
    return -std::expm1(-std::exp(-z));
}

double waterfall_threshold(const GumbelConstants& constants, const FadingModel& fading) {
    double a = constants.a_n, b = constants.b_n;
    double ge = kEulerGamma;
    double pi2_6 = kPi * kPi / 6.0;
    switch (fading.m) {
    case 1:
        return a + ge * b;
    case 2:
        return 0.5 * (a * a + pi2_6 * b * b + ge * ge * b * b + 2.0 * ge * a * b);
    case 3: {
        // E[gamma^3]/3 for gamma = a + b*Z, Z standard Gumbel:
        // E[Z]=ge, E[Z^2]=ge^2+pi^2/6, E[Z^3]=ge^3+ge*pi^2/2+2*zeta(3)
        double ez3 = ge * ge * ge + ge * kPi * kPi / 2.0 + 2.0 * kZeta3;
        double ez2 = ge * ge + pi2_6;
        return (a * a * a + 3.0 * a * a * b * ge + 3.0 * a * b * b * ez2 + b * b * b * ez3) / 3.0;
    }
    default:
        throw std::domain_error(
            "waterfall_threshold: closed forms cover m in {1,2,3}; use the numeric "
            "oracle (threshold_numeric) for other fading figures");
    }
}

EffectiveConstants effective_constants(const ModulationScheme& scheme,
                                       const RefitConstants& refit) {
    if (scheme.law == BerLaw::QFunction)
        return {refit.k1 * scheme.c_m, refit.k2 * scheme.k_m};
    return {scheme.c_m, scheme.k_m};
}

double avg_per_rayleigh(const ModulationScheme& scheme, const PacketShape& shape,
                        double mean_snr, const RefitConstants& refit) {
    if (mean_snr <= 0.0) throw std::domain_error("avg_per_rayleigh: mean_snr must be positive");
    auto [ce, ke] = effective_constants(scheme, refit);
    double omega0 = (std::log(shape.total() * ce) + kEulerGamma) / ke;
    return -std::expm1(-omega0 / mean_snr);
}

double nakagami_bound_eval(double omega_m, double bound_b, int m, double mean_snr) {
    if (mean_snr <= 0.0) throw std::domain_error("nakagami_bound_eval: mean_snr must be positive");
    double md = static_cast<double>(m);
    double pre = std::pow(md, md - 1.0) * bound_b /
                 (std::pow(mean_snr, md - 1.0) * std::tgamma(md));
    double v = pre * (-std::expm1(-md * omega_m / (mean_snr * bound_b)));
    return std::clamp(v, 0.0, 1.0);
}

double avg_per_nakagami_bound(const ModulationScheme& scheme, const PacketShape& shape,
                              double mean_snr, const FadingModel& fading,
                              const RefitConstants& refit) {
    std::optional<RefitConstants> r;
    if (scheme.law == BerLaw::QFunction) r = refit;
    GumbelConstants gc = gumbel_constants(scheme, shape.total(), r);
    double omega = waterfall_threshold(gc, fading);
    double b = bound_constant(scheme, shape.total(), fading);
    return nakagami_bound_eval(omega, b, fading.m, mean_snr);
}

double bound_constant(const ModulationScheme& scheme, int n_bits, const FadingModel& fading) {
    if (fading.m < 1 || fading.m > 3)
        throw std::domain_error("bound_constant: m must be in {1,2,3}");
    if (fading.m == 1) return 1.0; // f is a probability
    GumbelConstants gc;
    if (scheme.law == BerLaw::QFunction && n_bits * scheme.c_m <= 2.0)
        gc = gumbel_constants(scheme, n_bits, RefitConstants{});
    else
        gc = gumbel_constants(scheme, n_bits);
    double hi = gc.a_n + 40.0 * gc.b_n;
    double p = static_cast<double>(fading.m - 1);
    auto h = [&](double g) { return std::pow(g, p) * per_awgn_exact(scheme, n_bits, g); };

    // golden-section maximization
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = h(x1), f2 = h(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-10 * hi; ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = h(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = h(x1);
        }
    }
    double best = std::max(f1, f2);
    // dense verification grid; keep whichever is larger
    for (int i = 0; i <= 1000; ++i) {
        double g = hi * i / 1000.0;
        best = std::max(best, h(g));
    }
    if (!std::isfinite(best) || best <= 0.0)
        throw std::runtime_error("bound_constant: maximization failed");
    return best;
}

RefitConstants refit_constants(const ModulationScheme& scheme, int n_lo, int n_hi) {
    if (scheme.law != BerLaw::QFunction)
        throw std::domain_error("refit_constants: scheme must have a Q-function BER law");
    if (n_lo < 1 || n_hi < n_lo)
        throw std::domain_error("refit_constants: invalid N range");

    // 16 log-spaced packet lengths and their quadrature thresholds
    std::vector<double> ns, omega_q;
    int npts = (n_lo == n_hi) ? 1 : 16;
    for (int i = 0; i < npts; ++i) {
        double t = (npts == 1) ? 0.0 : static_cast<double>(i) / (npts - 1);
        int n = static_cast<int>(std::lround(n_lo * std::pow(double(n_hi) / n_lo, t)));
        if (!ns.empty() && n == ns.back()) continue;
        ns.push_back(n);
        omega_q.push_back(threshold_numeric(scheme, n, 1));
    }

    auto objective = [&](double k1, double k2) {
        if (k1 <= 0.0 || k2 <= 0.0) return 1e300;
        double sum = 0.0;
        for (size_t i = 0; i < ns.size(); ++i) {
            double arg = k1 * ns[i] * scheme.c_m;
            if (arg <= 0.0) return 1e300;
            double w = (std::log(arg) + kEulerGamma) / (k2 * scheme.k_m);
            if (w <= 0.0) return 1e300;
            double r = (w - omega_q[i]) / omega_q[i];
            sum += r * r;
        }
        return sum;
    };

    // coarse grid then compass-pattern refinement
    double bk1 = 0.2, bk2 = 0.6, bv = objective(bk1, bk2);
    for (int i = 1; i <= 40; ++i) {
        double k1 = 0.02 * i;
        for (int j = 1; j <= 40; ++j) {
            double k2 = 0.03 * j;
            double v = objective(k1, k2);
            if (v < bv) { bv = v; bk1 = k1; bk2 = k2; }
        }
    }
    for (double step = 0.02; step > 1e-8; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            const double dk1[4] = {step, -step, 0, 0};
            const double dk2[4] = {0, 0, step, -step};
            for (int d = 0; d < 4; ++d) {
                double v = objective(bk1 + dk1[d], bk2 + dk2[d]);
                if (v < bv) {
                    bv = v; bk1 += dk1[d]; bk2 += dk2[d];
                    improved = true;
                }
            }
        }
    }
    return {bk1, bk2};
}

} // namespace linkopt
