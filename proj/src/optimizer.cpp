#include "linkopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace linkopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double omega0_of(double n_total, double c_eff, double k_eff) {
    return (std::log(n_total * c_eff) + kEulerGamma) / k_eff;
}

} // namespace

double optimal_snr_unconstrained(const CostCoefficients& coeffs, const PacketShape& shape,
                                 const ModulationScheme& scheme, const RefitConstants& refit) {
    auto [ce, ke] = effective_constants(scheme, refit);
    double n = shape.total();
    double w0 = omega0_of(n, ce, ke);
    if (w0 <= 0.0) throw std::domain_error("optimal_snr_unconstrained: omega0 must be positive");
    double ba = coeffs.b_coeff / coeffs.a_coeff;
    return w0 / 2.0 + std::sqrt(w0 * (w0 / 4.0 + ba * shape.n_payload / n));
}

double min_snr(const ModulationScheme& scheme, const PacketShape& shape,
               const ReliabilityTarget& reliability, const RefitConstants& refit) {
    auto [ce, ke] = effective_constants(scheme, refit);
    double er = reliability.eps_req();
    return -(kEulerGamma + std::log(ce * shape.total())) / (ke * std::log1p(-er));
}

SnrSolution required_snr(const CostCoefficients& coeffs, const ModulationScheme& scheme,
                         const PacketShape& shape, const ReliabilityTarget& reliability,
                         const LinkBudget& link, const RefitConstants& refit) {
    SnrSolution s;
    s.unconstrained = optimal_snr_unconstrained(coeffs, shape, scheme, refit);
    s.min_required = min_snr(scheme, shape, reliability, refit);
    s.max_allowed = snr_max(scheme, link);
    s.feasible = s.min_required <= s.max_allowed;
    if (s.feasible)
        s.required = std::clamp(s.unconstrained, s.min_required, s.max_allowed);
    else
        s.required = std::numeric_limits<double>::quiet_NaN();
    return s;
}

double optimal_payload(const CostCoefficients& coeffs, int n_header,
                       const ModulationScheme& scheme, double mean_snr,
                       const RefitConstants& refit) {
    if (mean_snr <= 0.0) throw std::domain_error("optimal_payload: mean_snr must be positive");
    if (n_header < 1) throw std::domain_error("optimal_payload: n_header must be >= 1");
    auto [ce, ke] = effective_constants(scheme, refit);
    (void)ce;
    double g = mean_snr;
    double ba = coeffs.b_coeff / coeffs.a_coeff;
    double rad = ke * ke * g * g + 2.0 * ke * g + 4.0 * ba * ke + 1.0;
    return n_header * g * ((ke * g - 1.0) + std::sqrt(rad)) / (2.0 * (g + ba));
}

double max_payload(const ModulationScheme& scheme, int n_header, double min_snr_value,
                   const ReliabilityTarget& reliability, const RefitConstants& refit) {
    if (min_snr_value <= 0.0) throw std::domain_error("max_payload: min_snr must be positive");
    auto [ce, ke] = effective_constants(scheme, refit);
    double er = reliability.eps_req();
    double expo = -(kEulerGamma + min_snr_value * ke * std::log1p(-er));
    if (expo > 690.0) return kInf; // exp would overflow; cap is unbounded in practice
    return -n_header + std::exp(expo) / ce;
}

namespace {

// Minimizer of E along the reliability boundary gamma = gamma_min(n_p + n_h):
// fixed point of x = n_h * (gamma_e + log(c_eff * (x + n_h))).
double boundary_payload(double start, int n_header, double c_eff, double cap) {
    double x = std::max(start, 1.0);
    for (int i = 0; i < 200; ++i) {
        double xn = n_header * (kEulerGamma + std::log(c_eff * (x + n_header)));
        if (std::abs(xn - x) <= 1e-12 * std::max(1.0, std::abs(x))) { x = xn; break; }
        x = xn;
    }
    return std::min(std::max(x, 1.0), cap);
}

struct ComboRun {
    bool feasible = false;
    bool converged = false;
    int iterations = 0;
    double gamma = 0.0;
    double n_payload = 0.0; // real-valued fixed point
};

// One (scheme, tau) alternation: gamma step is the closed-form clamp, payload
// step jumps to the consistent optimum of the active regime (interior pair,
// reliability boundary, or power cap) so the alternation settles in a few
// iterations regardless of initialization.
ComboRun run_combo(const ModulationScheme& scheme, const CostCoefficients& coeffs,
                   const LinkBudget& link, const ReliabilityTarget& rel, int n_header,
                   const JointOptions& opt, std::vector<TraceEntry>* trace) {
    auto refit = RefitConstants{};
    auto [ce, ke] = effective_constants(scheme, refit);
    double ba = coeffs.b_coeff / coeffs.a_coeff;
    double gmax = snr_max(scheme, link);
    double er = rel.eps_req();
    double lg = std::log1p(-er);

    auto gmin_of = [&](double n_total) {
        return -(kEulerGamma + std::log(ce * n_total)) / (ke * lg);
    };
    auto npmax_at = [&](double g) {
        double expo = -(kEulerGamma + g * ke * lg);
        if (expo > 690.0) return kInf;
        return -static_cast<double>(n_header) + std::exp(expo) / ce;
    };
    auto eq_payload = [&](double g) {
        double rad = ke * ke * g * g + 2.0 * ke * g + 4.0 * ba * ke + 1.0;
        return n_header * g * ((ke * g - 1.0) + std::sqrt(rad)) / (2.0 * (g + ba));
    };
    auto eq_snr = [&](double np) {
        double n = np + n_header;
        double w0 = omega0_of(n, ce, ke);
        return w0 / 2.0 + std::sqrt(w0 * (w0 / 4.0 + ba * np / n));
    };
    auto energy_at = [&](double np, double g) {
        double n = np + n_header;
        double w0 = omega0_of(n, ce, ke);
        double per = -std::expm1(-w0 / g);
        double e0 = (n / np) * coeffs.a_coeff * g + coeffs.b_coeff;
        return (1.0 - std::pow(per, rel.max_retx + 1)) / (1.0 - per) * e0;
    };

    ComboRun out;
    if (gmin_of(n_header + 1.0) > gmax) return out; // infeasible even at minimum payload
    out.feasible = true;
    double np_feas = std::max(npmax_at(gmax), 1.0);

    auto interior_pair = [&](double g0, double& g_out, double& np_out) {
        double g = std::max(g0, 1e-6);
        double np = 1.0;
        for (int i = 0; i < 80; ++i) {
            np = std::max(eq_payload(g), 1.0);
            double gn = eq_snr(np);
            if (std::abs(gn - g) <= 1e-12 * std::max(1.0, g)) { g = gn; break; }
            g = gn;
        }
        g_out = g;
        np_out = std::max(eq_payload(g), 1.0);
    };

    double np = opt.init_payload < 0.0 ? static_cast<double>(n_header) : opt.init_payload;
    np = std::min(std::max(np, 1.0), np_feas);
    double gprev = 0.0;
    for (int it = 1; it <= opt.iteration_cap; ++it) {
        double n = np + n_header;
        double gstar = eq_snr(np);
        double gmin = gmin_of(n);
        double greq = std::clamp(gstar, gmin, gmax);

        double cand;
        if (gstar < gmin) {
            cand = boundary_payload(np, n_header, ce, np_feas);
        } else if (greq >= gmax) {
            cand = std::min({eq_payload(gmax), npmax_at(gmax), np_feas});
        } else {
            double gi, ni;
            interior_pair(greq, gi, ni);
            if (gi <= gmax && ni <= npmax_at(gi) && gi >= gmin_of(ni + n_header) - 1e-9)
                cand = std::min(ni, np_feas);
            else if (gi > gmax)
                cand = std::min({eq_payload(gmax), npmax_at(gmax), np_feas});
            else
                cand = boundary_payload(np, n_header, ce, np_feas);
        }
        double np_new = std::max(cand, 1.0);

        if (trace)
            trace->push_back({scheme.name, rel.max_retx, it, greq, np, energy_at(np, greq)});

        out.iterations = it;
        if (std::abs(greq - gprev) <= opt.delta &&
            std::abs(np_new - np) <= 1e-6 * std::max(1.0, np)) {
            out.converged = true;
            out.gamma = greq;
            out.n_payload = np;
            return out;
        }
        np = np_new;
        gprev = greq;
    }
    out.converged = false;
    out.gamma = gprev;
    out.n_payload = np;
    return out;
}

} // namespace

JointResult joint_optimize(const std::vector<ModulationScheme>& schemes, const LinkBudget& link,
                           const EnergyParams& energy, const ReliabilityTarget& reliability,
                           int n_header, const JointOptions& options) {
    if (schemes.empty()) throw std::invalid_argument("joint_optimize: empty scheme list");
    if (reliability.max_retx < 1)
        throw std::invalid_argument("joint_optimize: retransmission limit must be >= 1");
    if (!(options.delta > 0.0)) throw std::invalid_argument("joint_optimize: delta must be > 0");

    JointResult result;
    RefitConstants refit;
    double best_e = kInf;
    std::tuple<int, int, double> best_key{0, 0, 0.0}; // (tau, M, gamma) tie-break

    for (const auto& scheme : schemes) {
        CostCoefficients coeffs = cost_coefficients(scheme, link, energy);
        for (int tau = 1; tau <= reliability.max_retx; ++tau) {
            ReliabilityTarget rel{reliability.epsilon, tau};
            ComboRun run = run_combo(scheme, coeffs, link, rel, n_header, options, &result.trace);
            if (!run.feasible) {
                result.infeasible_combos.push_back(
                    {scheme.name, tau, min_snr(scheme, {1, n_header}, rel, refit),
                     snr_max(scheme, link)});
                continue;
            }
            if (!run.converged) {
                result.converged = false;
                continue;
            }
            // report an integer payload: floor, then re-evaluate the energy once
            int np_int = std::max(static_cast<int>(std::floor(run.n_payload)), 1);
            PacketShape shape{np_int, n_header};
            double e = truncated_energy(coeffs, shape, scheme, run.gamma, rel, refit);
            std::tuple<int, int, double> key{tau, scheme.constellation_size, run.gamma};
            if (e < best_e || (e == best_e && key < best_key)) {
                best_e = e;
                best_key = key;
                result.feasible = true;
                result.best_tau = tau;
                result.iterations_used = run.iterations;
                result.best.mean_snr = run.gamma;
                result.best.shape = shape;
                result.best.scheme = scheme;
                result.best.reliability = rel;
                result.best.predicted_per = avg_per_rayleigh(scheme, shape, run.gamma, refit);
                result.best.energy_per_bit = e;
            }
        }
    }
    return result;
}

} // namespace linkopt
