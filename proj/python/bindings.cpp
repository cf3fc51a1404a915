#include "linkopt/commands.hpp"
#include "linkopt/oracle.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace linkopt;

PYBIND11_MODULE(_linkopt, m) {
    m.doc() = "Closed-form PER approximations and cross-layer energy optimization "
              "for block-fading links";

    py::enum_<BerLaw>(m, "BerLaw")
        .value("Exponential", BerLaw::Exponential)
        .value("QFunction", BerLaw::QFunction);

    py::class_<ModulationScheme>(m, "ModulationScheme")
        .def(py::init<>())
        .def_readwrite("name", &ModulationScheme::name)
        .def_readwrite("law", &ModulationScheme::law)
        .def_readwrite("constellation_size", &ModulationScheme::constellation_size)
        .def_readwrite("bits_per_symbol", &ModulationScheme::bits_per_symbol)
        .def_readwrite("c_m", &ModulationScheme::c_m)
        .def_readwrite("k_m", &ModulationScheme::k_m)
        .def_readwrite("papr", &ModulationScheme::papr)
        .def_readwrite("circuit_power", &ModulationScheme::circuit_power)
        .def("__repr__", [](const ModulationScheme& s) {
            return "<ModulationScheme " + s.name + ">";
        });

    py::class_<GumbelConstants>(m, "GumbelConstants")
        .def(py::init<>())
        .def_readwrite("a_n", &GumbelConstants::a_n)
        .def_readwrite("b_n", &GumbelConstants::b_n);

    py::class_<RefitConstants>(m, "RefitConstants")
        .def(py::init<>())
        .def(py::init([](double k1, double k2) { return RefitConstants{k1, k2}; }),
             py::arg("k1"), py::arg("k2"))
        .def_readwrite("k1", &RefitConstants::k1)
        .def_readwrite("k2", &RefitConstants::k2);

    py::class_<FadingModel>(m, "FadingModel")
        .def(py::init<>())
        .def(py::init([](int m_) { return FadingModel{m_}; }), py::arg("m"))
        .def_readwrite("m", &FadingModel::m);

    py::class_<PacketShape>(m, "PacketShape")
        .def(py::init<>())
        .def(py::init([](int np, int nh) { return PacketShape{np, nh}; }),
             py::arg("n_payload"), py::arg("n_header") = 0)
        .def_readwrite("n_payload", &PacketShape::n_payload)
        .def_readwrite("n_header", &PacketShape::n_header)
        .def("total", &PacketShape::total);

    py::class_<LinkBudget>(m, "LinkBudget")
        .def(py::init<>())
        .def_readwrite("g1_db", &LinkBudget::g1_db)
        .def_readwrite("kappa", &LinkBudget::kappa)
        .def_readwrite("distance_m", &LinkBudget::distance_m)
        .def_readwrite("link_margin_db", &LinkBudget::link_margin_db)
        .def_readwrite("noise_psd_dbm_hz", &LinkBudget::noise_psd_dbm_hz)
        .def_readwrite("bandwidth_hz", &LinkBudget::bandwidth_hz)
        .def_readwrite("max_tx_power_w", &LinkBudget::max_tx_power_w)
        .def("n0_w_hz", &LinkBudget::n0_w_hz);

    py::class_<EnergyParams>(m, "EnergyParams")
        .def(py::init<>())
        .def_readwrite("pa_drain_efficiency", &EnergyParams::pa_drain_efficiency)
        .def_readwrite("circuit_power", &EnergyParams::circuit_power)
        .def_readwrite("symbol_rate", &EnergyParams::symbol_rate);

    py::class_<CostCoefficients>(m, "CostCoefficients")
        .def(py::init<>())
        .def_readwrite("a_coeff", &CostCoefficients::a_coeff)
        .def_readwrite("b_coeff", &CostCoefficients::b_coeff);

    py::class_<ReliabilityTarget>(m, "ReliabilityTarget")
        .def(py::init<>())
        .def(py::init([](double eps, int tau) { return ReliabilityTarget{eps, tau}; }),
             py::arg("epsilon"), py::arg("max_retx"))
        .def_readwrite("epsilon", &ReliabilityTarget::epsilon)
        .def_readwrite("max_retx", &ReliabilityTarget::max_retx)
        .def("eps_req", &ReliabilityTarget::eps_req);

    py::class_<OperatingPoint>(m, "OperatingPoint")
        .def(py::init<>())
        .def_readwrite("mean_snr", &OperatingPoint::mean_snr)
        .def_readwrite("shape", &OperatingPoint::shape)
        .def_readwrite("scheme", &OperatingPoint::scheme)
        .def_readwrite("reliability", &OperatingPoint::reliability)
        .def_readwrite("predicted_per", &OperatingPoint::predicted_per)
        .def_readwrite("energy_per_bit", &OperatingPoint::energy_per_bit);

    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init<>())
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
        .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
        .def_readwrite("max_subdivisions", &QuadratureSpec::max_subdivisions);

    py::class_<McSpec>(m, "McSpec")
        .def(py::init<>())
        .def_readwrite("seed", &McSpec::seed)
        .def_readwrite("n_packets", &McSpec::n_packets)
        .def_readwrite("m", &McSpec::m)
        .def_readwrite("per_bit", &McSpec::per_bit);

    py::class_<McResult>(m, "McResult")
        .def_readonly("per_hat", &McResult::per_hat)
        .def_readonly("ci95_halfwidth", &McResult::ci95_halfwidth)
        .def_readonly("mean_attempts", &McResult::mean_attempts)
        .def_readonly("attempts_ci95_halfwidth", &McResult::attempts_ci95_halfwidth)
        .def_readonly("mean_energy_per_bit", &McResult::mean_energy_per_bit);

    py::class_<SnrSolution>(m, "SnrSolution")
        .def_readonly("unconstrained", &SnrSolution::unconstrained)
        .def_readonly("min_required", &SnrSolution::min_required)
        .def_readonly("max_allowed", &SnrSolution::max_allowed)
        .def_readonly("required", &SnrSolution::required)
        .def_readonly("feasible", &SnrSolution::feasible);

    py::class_<TraceEntry>(m, "TraceEntry")
        .def_readonly("scheme", &TraceEntry::scheme)
        .def_readonly("tau", &TraceEntry::tau)
        .def_readonly("iteration", &TraceEntry::iteration)
        .def_readonly("mean_snr", &TraceEntry::mean_snr)
        .def_readonly("n_payload", &TraceEntry::n_payload)
        .def_readonly("energy_per_bit", &TraceEntry::energy_per_bit);

    py::class_<ComboDiag>(m, "ComboDiag")
        .def_readonly("scheme", &ComboDiag::scheme)
        .def_readonly("tau", &ComboDiag::tau)
        .def_readonly("min_required", &ComboDiag::min_required)
        .def_readonly("max_allowed", &ComboDiag::max_allowed);

    py::class_<JointResult>(m, "JointResult")
        .def_readonly("feasible", &JointResult::feasible)
        .def_readonly("best", &JointResult::best)
        .def_readonly("best_tau", &JointResult::best_tau)
        .def_readonly("iterations_used", &JointResult::iterations_used)
        .def_readonly("converged", &JointResult::converged)
        .def_readonly("trace", &JointResult::trace)
        .def_readonly("infeasible_combos", &JointResult::infeasible_combos);

    py::class_<JointOptions>(m, "JointOptions")
        .def(py::init<>())
        .def_readwrite("delta", &JointOptions::delta)
        .def_readwrite("iteration_cap", &JointOptions::iteration_cap)
        .def_readwrite("init_payload", &JointOptions::init_payload);

    m.def("qfunc", &qfunc, py::arg("x"));
    m.def("erfinv", &erfinv, py::arg("x"));
    m.def("ber_awgn", &ber_awgn, py::arg("scheme"), py::arg("snr"));
    m.def("papr", &papr, py::arg("scheme"));
    m.def("mqam_papr", &mqam_papr, py::arg("m"));
    m.def("catalog", &catalog, py::return_value_policy::copy);
    m.def("scheme_by_name", &scheme_by_name, py::arg("name"),
          py::return_value_policy::copy);

    m.def("per_awgn_exact", &per_awgn_exact, py::arg("scheme"), py::arg("n_bits"),
          py::arg("snr"));
    m.def("gumbel_constants", &gumbel_constants, py::arg("scheme"), py::arg("n_bits"),
          py::arg("refit") = std::nullopt);
    m.def("per_awgn_gumbel", &per_awgn_gumbel, py::arg("constants"), py::arg("snr"));
    m.def("waterfall_threshold", &waterfall_threshold, py::arg("constants"),
          py::arg("fading"));
    m.def("avg_per_rayleigh", &avg_per_rayleigh, py::arg("scheme"), py::arg("shape"),
          py::arg("mean_snr"), py::arg("refit") = RefitConstants{});
    m.def("avg_per_nakagami_bound", &avg_per_nakagami_bound, py::arg("scheme"),
          py::arg("shape"), py::arg("mean_snr"), py::arg("fading"),
          py::arg("refit") = RefitConstants{});
    m.def("nakagami_bound_eval", &nakagami_bound_eval, py::arg("omega_m"),
          py::arg("bound_b"), py::arg("m"), py::arg("mean_snr"));
    m.def("bound_constant", &bound_constant, py::arg("scheme"), py::arg("n_bits"),
          py::arg("fading"));
    m.def("refit_constants", &refit_constants, py::arg("scheme"), py::arg("n_lo"),
          py::arg("n_hi"));

    m.def("avg_per_numeric", &avg_per_numeric, py::arg("scheme"), py::arg("n_bits"),
          py::arg("mean_snr"), py::arg("m"), py::arg("spec") = QuadratureSpec{});
    m.def("threshold_numeric", &threshold_numeric, py::arg("scheme"), py::arg("n_bits"),
          py::arg("m"), py::arg("spec") = QuadratureSpec{});
    m.def("simulate_link", &simulate_link, py::arg("scheme"), py::arg("shape"),
          py::arg("mean_snr"), py::arg("link"), py::arg("energy"), py::arg("reliability"),
          py::arg("spec"));
    m.def("argmin_scan", &argmin_scan, py::arg("objective"), py::arg("lo"), py::arg("hi"),
          py::arg("points"));

    m.def("pathloss_gain", &pathloss_gain, py::arg("link"));
    m.def("cost_coefficients", &cost_coefficients, py::arg("scheme"), py::arg("link"),
          py::arg("energy"));
    m.def("energy_per_bit_attempt", &energy_per_bit_attempt, py::arg("coeffs"),
          py::arg("shape"), py::arg("mean_snr"));
    m.def("expected_energy", &expected_energy, py::arg("coeffs"), py::arg("shape"),
          py::arg("scheme"), py::arg("mean_snr"), py::arg("refit") = RefitConstants{});
    m.def("truncated_energy", &truncated_energy, py::arg("coeffs"), py::arg("shape"),
          py::arg("scheme"), py::arg("mean_snr"), py::arg("reliability"),
          py::arg("refit") = RefitConstants{});
    m.def("snr_max", &snr_max, py::arg("scheme"), py::arg("link"));
    m.def("residual_per", &residual_per, py::arg("per_attempt"), py::arg("reliability"));

    m.def("optimal_snr_unconstrained", &optimal_snr_unconstrained, py::arg("coeffs"),
          py::arg("shape"), py::arg("scheme"), py::arg("refit") = RefitConstants{});
    m.def("min_snr", &min_snr, py::arg("scheme"), py::arg("shape"), py::arg("reliability"),
          py::arg("refit") = RefitConstants{});
    m.def("required_snr", &required_snr, py::arg("coeffs"), py::arg("scheme"),
          py::arg("shape"), py::arg("reliability"), py::arg("link"),
          py::arg("refit") = RefitConstants{});
    m.def("optimal_payload", &optimal_payload, py::arg("coeffs"), py::arg("n_header"),
          py::arg("scheme"), py::arg("mean_snr"), py::arg("refit") = RefitConstants{});
    m.def("max_payload", &max_payload, py::arg("scheme"), py::arg("n_header"),
          py::arg("min_snr_value"), py::arg("reliability"),
          py::arg("refit") = RefitConstants{});
    m.def("joint_optimize", &joint_optimize, py::arg("schemes"), py::arg("link"),
          py::arg("energy"), py::arg("reliability"), py::arg("n_header"),
          py::arg("options") = JointOptions{});

    m.attr("EULER_GAMMA") = kEulerGamma;
    m.attr("__version__") = kToolVersion;
}
