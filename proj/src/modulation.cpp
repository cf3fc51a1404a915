#include "linkopt/modulation.hpp"

#include <cmath>
#include <stdexcept>

namespace linkopt {

double qfunc(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double erfinv(double x) {
    if (!(x > -1.0 && x < 1.0))
        throw std::domain_error("erfinv: argument must lie in (-1, 1)");
    if (x == 0.0) return 0.0;

    // Rational seed (Giles-style), then Newton polish on erf to machine precision.
    double w = -std::log((1.0 - x) * (1.0 + x));
    double p;
    if (w < 6.25) {
        w -= 3.125;
        p = -3.6444120640178196996e-21;
        p = -1.685059138182016589e-19 + p * w;
        p = 1.2858480715256400167e-18 + p * w;
        p = 1.115787767802518096e-17 + p * w;
        p = -1.333171662854620906e-16 + p * w;
        p = 2.0972767875968561637e-17 + p * w;
        p = 6.6376381343583238325e-15 + p * w;
        p = -4.0545662729752068639e-14 + p * w;
        p = -8.1519341976054721522e-14 + p * w;
        p = 2.6335093153082322977e-12 + p * w;
        p = -1.2975133253453532498e-11 + p * w;
        p = -5.4154120542946279317e-11 + p * w;
        p = 1.051212273321532285e-09 + p * w;
        p = -4.1126339803469836976e-09 + p * w;
        p = -2.9070369957882005086e-08 + p * w;
        p = 4.2347877827932403518e-07 + p * w;
        p = -1.3654692000834678645e-06 + p * w;
        p = -1.3882523362786468719e-05 + p * w;
        p = 0.0001867342080340571352 + p * w;
        p = -0.00074070253416626697512 + p * w;
        p = -0.0060336708714301490533 + p * w;
        p = 0.24015818242558961693 + p * w;
        p = 1.6536545626831027356 + p * w;
    } else if (w < 16.0) {
        w = std::sqrt(w) - 3.25;
        p = 2.2137376921775787049e-09;
        p = 9.0756561938885390979e-08 + p * w;
        p = -2.7517406297064545428e-07 + p * w;
        p = 1.8239629214389227755e-08 + p * w;
        p = 1.5027403968909827627e-06 + p * w;
        p = -4.013867526981545969e-06 + p * w;
        p = 2.9234449089955446044e-06 + p * w;
        p = 1.2475304481671778723e-05 + p * w;
        p = -4.7318229009055733981e-05 + p * w;
        p = 6.8284851459573175448e-05 + p * w;
        p = 2.4031110387097893999e-05 + p * w;
        p = -0.0003550375203628474796 + p * w;
        p = 0.00095328937973738049703 + p * w;
        p = -0.0016882755560235047313 + p * w;
        p = 0.0024914420961078508066 + p * w;
        p = -0.0037512085075692412107 + p * w;
        p = 0.005370914553590063617 + p * w;
        p = 1.0052589676941592334 + p * w;
        p = 3.0838856104922207635 + p * w;
    } else {
        w = std::sqrt(w) - 5.0;
        p = -2.7109920616438573243e-11;
        p = -2.5556418169965252055e-10 + p * w;
        p = 1.5076572693500548083e-09 + p * w;
        p = -3.7894654401267369937e-09 + p * w;
        p = 7.6157012080783393804e-09 + p * w;
        p = -1.4960026627149240478e-08 + p * w;
        p = 2.9147953450901080826e-08 + p * w;
        p = -6.7711997758452339498e-08 + p * w;
        p = 2.2900482228026654717e-07 + p * w;
        p = -9.9298272942317002539e-07 + p * w;
        p = 4.5260625972231537039e-06 + p * w;
        p = -1.9681778105531670567e-05 + p * w;
        p = 7.5995277030017761139e-05 + p * w;
        p = -0.00021503011930044477347 + p * w;
        p = -0.00013871931833623122026 + p * w;
        p = 1.0103004648645343977 + p * w;
        p = 4.8499064014085844221 + p * w;
    }
    double y = p * x;
    // Two Newton steps: y -= (erf(y) - x) / (2/sqrt(pi) * exp(-y^2))
    const double two_over_sqrt_pi = 1.1283791670955125739;
    for (int i = 0; i < 2; ++i) {
        double err = std::erf(y) - x;
        y -= err / (two_over_sqrt_pi * std::exp(-y * y));
    }
    return y;
}

double ber_awgn(const ModulationScheme& scheme, double snr) {
    if (snr < 0.0) throw std::domain_error("ber_awgn: snr must be nonnegative");
    if (scheme.law == BerLaw::Exponential)
        return scheme.c_m * std::exp(-scheme.k_m * snr);
    return scheme.c_m * qfunc(std::sqrt(scheme.k_m * snr));
}

double papr(const ModulationScheme& scheme) { return scheme.papr; }

double mqam_papr(int m) {
    double r = std::sqrt(static_cast<double>(m));
    return 3.0 * (r - 1.0) / (r + 1.0);
}

namespace {

ModulationScheme make_qam(int m, double pc) {
    double bps = std::log2(static_cast<double>(m));
    ModulationScheme s;
    s.name = std::to_string(m) + "QAM";
    s.law = BerLaw::QFunction;
    s.constellation_size = m;
    s.bits_per_symbol = bps;
    s.c_m = 4.0 * (1.0 - 1.0 / std::sqrt(static_cast<double>(m))) / bps;
    s.k_m = 3.0 * bps / (m - 1);
    s.papr = (m == 4) ? 1.0 : mqam_papr(m); // 4-QAM treated as QPSK (xi = 1)
    s.circuit_power = pc;
    return s;
}

std::vector<ModulationScheme> build_catalog() {
    std::vector<ModulationScheme> cat;
    // Circuit power: 265 mW for the FSK family, 310 mW for the PSK/QAM family.
    cat.push_back({"NCFSK", BerLaw::Exponential, 2, 1.0, 0.5, 0.5, 1.0, 0.265});
    cat.push_back({"DPSK", BerLaw::Exponential, 2, 1.0, 0.5, 1.0, 1.0, 0.310});
    cat.push_back({"BPSK", BerLaw::QFunction, 2, 1.0, 1.0, 2.0, 1.0, 0.310});
    cat.push_back(make_qam(4, 0.310));
    cat.push_back(make_qam(16, 0.310));
    cat.push_back(make_qam(64, 0.310));
    return cat;
}

} // namespace

const std::vector<ModulationScheme>& catalog() {
    static const std::vector<ModulationScheme> cat = build_catalog();
    return cat;
}

const ModulationScheme& scheme_by_name(const std::string& name) {
    for (const auto& s : catalog())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown modulation scheme: " + name);
}

} // namespace linkopt
