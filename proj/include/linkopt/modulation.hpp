#pragma once

#include <string>
#include <vector>

namespace linkopt {

// Two BER-law families for uncoded schemes:
//   Exponential: b_e(g) = c * exp(-k*g)
//   QFunction:   b_e(g) = c * Q(sqrt(k*g)),  Q(x) = erfc(x/sqrt(2))/2
enum class BerLaw { Exponential, QFunction };

struct ModulationScheme {
    std::string name;
    BerLaw law = BerLaw::QFunction;
    int constellation_size = 2;   // M
    double bits_per_symbol = 1.0; // log2(M)
    double c_m = 1.0;             // 0 < c_m <= 1
    double k_m = 1.0;             // k_m > 0
    double papr = 1.0;            // xi >= 1
    double circuit_power = 0.0;   // P_c, watts
};

// Gaussian tail Q(x), evaluated via erfc for tail accuracy.
double qfunc(double x);

// Inverse error function, |x| < 1. Accurate to ~1e-15 (rational seed + Newton).
double erfinv(double x);

// BER on AWGN at per-bit SNR gamma (linear). Throws std::domain_error for gamma < 0.
double ber_awgn(const ModulationScheme& scheme, double snr);

// Peak-to-average power ratio of the scheme.
double papr(const ModulationScheme& scheme);

// PAPR of square M-QAM: 3*(sqrt(M)-1)/(sqrt(M)+1). Gives 1 at M=4 (QPSK-equivalent).
double mqam_papr(int m);

// Built-in scheme table: NCFSK, DPSK (Exponential), BPSK, 4/16/64-QAM (QFunction).
const std::vector<ModulationScheme>& catalog();

// Lookup by name; throws std::invalid_argument if absent.
const ModulationScheme& scheme_by_name(const std::string& name);

} // namespace linkopt
