#include "linkopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace linkopt {

namespace {

struct SimpsonState {
    const std::function<double(double)>* f;
    int subdivisions_left;
    double worst_err;
};

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(SimpsonState& st, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = (*st.f)(lm), frm = (*st.f)(rm);
    double left = simpson(fa, flm, fm, a, m);
    double right = simpson(fm, frm, fb, m, b);
    double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol || depth > 60) {
        st.worst_err = std::max(st.worst_err, std::abs(err) / 15.0);
        return left + right + err / 15.0;
    }
    if (st.subdivisions_left <= 0) {
        st.worst_err = std::max(st.worst_err, std::abs(err) / 15.0);
        return left + right + err / 15.0;
    }
    st.subdivisions_left -= 1;
    return adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec) {
    if (!(lo < hi)) throw std::invalid_argument("integrate: need lo < hi");
    SimpsonState st{&f, spec.max_subdivisions, 0.0};
    double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    double whole = simpson(fa, fm, fb, lo, hi);
    // Scale estimate for the relative part of the tolerance. The three-point
    // Simpson seed can land near zero for narrow-transition integrands on long
    // intervals, so back it up with a coarse composite Gauss pass.
    double scale = std::max(std::abs(whole), std::abs(integrate_gauss(f, lo, hi, 32)));
    double tol = std::max(spec.abs_tol, spec.rel_tol * std::max(scale, 1e-300));
    double result = adapt(st, lo, hi, fa, fm, fb, whole, tol, 0);
    double needed = std::max(spec.abs_tol, spec.rel_tol * std::abs(result));
    if (st.subdivisions_left <= 0 && st.worst_err > needed)
        throw QuadratureFailure("integrate: subdivision budget exhausted before tolerance",
                                st.worst_err);
    return result;
}

double integrate_gauss(const std::function<double(double)>& f, double lo, double hi,
                       int panels) {
    // 15-point Gauss-Legendre nodes/weights on [-1, 1]
    static const double x[8] = {0.0,
                                0.2011940939974345,
                                0.3941513470775634,
                                0.5709721726085388,
                                0.7244177313601701,
                                0.8482065834104272,
                                0.9372733924007060,
                                0.9879925180204854};
    static const double w[8] = {0.2025782419255613,
                                0.1984314853271116,
                                0.1861610000155622,
                                0.1662692058169939,
                                0.1395706779261543,
                                0.1071592204671719,
                                0.0703660474881081,
                                0.0307532419961173};
    double total = 0.0;
    double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = lo + p * h, c = a + 0.5 * h, r = 0.5 * h;
        double s = w[0] * f(c);
        for (int i = 1; i < 8; ++i)
            s += w[i] * (f(c - r * x[i]) + f(c + r * x[i]));
        total += s * r;
    }
    return total;
}

double avg_per_numeric(const ModulationScheme& scheme, int n_bits, double mean_snr, int m,
                       const QuadratureSpec& spec) {
    if (mean_snr <= 0.0) throw std::domain_error("avg_per_numeric: mean_snr must be positive");
    if (m < 1) throw std::domain_error("avg_per_numeric: m must be >= 1");
    double md = m;
    double norm = std::pow(md / mean_snr, md) / std::tgamma(md);
    auto density = [&](double g) {
        return norm * std::pow(g, md - 1.0) * std::exp(-md * g / mean_snr);
    };
    auto integrand = [&](double g) {
        return per_awgn_exact(scheme, n_bits, g) * density(g);
    };
    double cut = mean_snr * (md + 40.0 / std::sqrt(md));
    // tail of the Gamma density (f <= 1), bounded by exponential domination:
    // for g > cut, g^(m-1) <= cut^(m-1) exp((m-1)(g-cut)/cut)
    for (int i = 0; i < 60; ++i) {
        double rate = md / mean_snr - (md - 1.0) / cut;
        double tail = density(cut) / rate;
        if (tail < spec.abs_tol) break;
        cut *= 2.0;
    }
    double v = integrate(integrand, 0.0, cut, spec);
    return std::clamp(v, 0.0, 1.0);
}

double threshold_numeric(const ModulationScheme& scheme, int n_bits, int m,
                         const QuadratureSpec& spec) {
    if (m < 1) throw std::domain_error("threshold_numeric: m must be >= 1");
    double md = m;
    auto integrand = [&](double g) {
        return std::pow(g, md - 1.0) * per_awgn_exact(scheme, n_bits, g);
    };
    GumbelConstants gc;
    if (scheme.law == BerLaw::QFunction && n_bits * scheme.c_m <= 2.0)
        gc = gumbel_constants(scheme, n_bits, RefitConstants{});
    else
        gc = gumbel_constants(scheme, n_bits);
    double cut = gc.a_n + 40.0 * gc.b_n;
    // union-bound tail: f(g) <= N c exp(-r g) with r = k (Exponential) or k/2 (Q),
    // plus the same polynomial-domination trick as above.
    double r = scheme.law == BerLaw::Exponential ? scheme.k_m : 0.5 * scheme.k_m;
    for (int i = 0; i < 200; ++i) {
        double rate = r - (md - 1.0) / cut;
        if (rate > 0.0) {
            double tail = n_bits * scheme.c_m * std::pow(cut, md - 1.0) * std::exp(-r * cut) / rate;
            if (tail < spec.abs_tol) break;
        }
        cut *= 1.5;
    }
    return integrate(integrand, 0.0, cut, spec);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

McResult simulate_link(const ModulationScheme& scheme, const PacketShape& shape,
                       double mean_snr, const LinkBudget& link, const EnergyParams& energy,
                       const ReliabilityTarget& reliability, const McSpec& spec) {
    if (spec.n_packets < 1) throw std::domain_error("simulate_link: n_packets must be >= 1");
    if (spec.m < 1) throw std::domain_error("simulate_link: m must be >= 1");
    CostCoefficients coeffs = cost_coefficients(scheme, link, energy);
    double e0 = energy_per_bit_attempt(coeffs, shape, mean_snr);
    int n_bits = shape.total();
    long attempts_total = 0, failures_total = 0;
    double sum_att = 0.0, sum_att2 = 0.0;

    for (long i = 0; i < spec.n_packets; ++i) {
        // per-packet substream: mix (seed, index) so evaluation order is irrelevant
        std::mt19937_64 rng(splitmix64(spec.seed ^ splitmix64(static_cast<std::uint64_t>(i))));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        int attempts = 0;
        for (int a = 0; a <= reliability.max_retx; ++a) {
            double g = 0.0;
            for (int j = 0; j < spec.m; ++j)
                g += -std::log1p(-uni(rng)); // Exp(1)
            g *= mean_snr / spec.m;
            ++attempts;
            bool failed;
            if (spec.per_bit) {
                double be = ber_awgn(scheme, g);
                failed = false;
                for (int bit = 0; bit < n_bits; ++bit)
                    if (uni(rng) < be) { failed = true; break; }
            } else {
                failed = uni(rng) < per_awgn_exact(scheme, n_bits, g);
            }
            if (failed) ++failures_total;
            else break;
        }
        attempts_total += attempts;
        sum_att += attempts;
        sum_att2 += static_cast<double>(attempts) * attempts;
    }

    McResult r;
    double n = static_cast<double>(spec.n_packets);
    r.per_hat = static_cast<double>(failures_total) / attempts_total;
    r.ci95_halfwidth = 1.96 * std::sqrt(std::max(r.per_hat * (1.0 - r.per_hat), 0.0) /
                                        attempts_total);
    r.mean_attempts = sum_att / n;
    double var_att = std::max(sum_att2 / n - r.mean_attempts * r.mean_attempts, 0.0);
    r.attempts_ci95_halfwidth = 1.96 * std::sqrt(var_att / n);
    r.mean_energy_per_bit = e0 * r.mean_attempts;
    return r;
}

std::pair<double, double> argmin_scan(const std::function<double(double)>& objective,
                                      double lo, double hi, int points) {
    if (!(lo < hi) || points < 3)
        throw std::invalid_argument("argmin_scan: need lo < hi and points >= 3");
    bool logspace = lo > 0.0;
    auto at = [&](int i) {
        double t = static_cast<double>(i) / (points - 1);
        return logspace ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    };
    auto eval = [&](double x) {
        double v = objective(x);
        if (!std::isfinite(v))
            throw std::runtime_error("argmin_scan: objective non-finite at x=" +
                                     std::to_string(x));
        return v;
    };
    int best = 0;
    double bestv = eval(at(0));
    for (int i = 1; i < points; ++i) {
        double v = eval(at(i));
        if (v < bestv) { bestv = v; best = i; }
    }
    double a = at(std::max(best - 1, 0));
    double b = at(std::min(best + 1, points - 1));
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 300 && (b - a) > 1e-7 * std::max(std::abs(a), std::abs(b)); ++it) {
        if (f1 > f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = eval(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = eval(x1);
        }
    }
    return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

} // namespace linkopt
