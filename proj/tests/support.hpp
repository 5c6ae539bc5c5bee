#pragma once

#include <complex>
#include <string>

#include "ftdiag/faultlib.hpp"
#include "ftdiag/netlist.hpp"

namespace ftdiag::test {

inline std::string source_path(const std::string& relative) {
    return std::string(FTDIAG_SOURCE_DIR) + "/" + relative;
}

inline const Circuit& biquad() {
    static const Circuit c = load_netlist(source_path("circuits/biquad.cir"));
    return c;
}

inline FaultConfig default_faults(const Circuit& c = biquad()) {
    FaultConfig f;
    f.targets = c.passive_ids();
    return f;
}

inline const FaultSimulator& biquad_simulator() {
    static const FaultSimulator sim(biquad(), default_faults());
    return sim;
}

// Shipped biquad with op-amp gain A, solved symbolically from the MNA
// equations of circuits/biquad.cir.
struct BiquadValues {
    double r1 = 0.8, r2 = 2.0, r3 = 1.0, r4 = 1.25, r5 = 2.5, c1 = 1.0, c2 = 1.0, a = 1e6;
};

inline std::complex<double> biquad_analytic(double w, const BiquadValues& v = {}) {
    const std::complex<double> s(0.0, w);
    const double R1 = v.r1, R2 = v.r2, R3 = v.r3, R4 = v.r4, R5 = v.r5, C1 = v.c1, C2 = v.c2,
                 A = v.a;
    const double num = A * A * R2 * R3 * R5;
    const double d2 = C1 * C2 * R1 * R2 * R3 * R4 * R5 * (A + 1) * (A + 1);
    const double d1 = (A + 1) * (A * C1 * R1 * R2 * R3 * R4 + A * C2 * R1 * R3 * R4 * R5 +
                                 C1 * R1 * R2 * R3 * R4 + C1 * R1 * R2 * R3 * R5 +
                                 C2 * R1 * R2 * R4 * R5 + C2 * R1 * R3 * R4 * R5 +
                                 C2 * R2 * R3 * R4 * R5);
    const double d0 = A * A * R1 * R2 * R5 + A * A * R1 * R3 * R4 + A * R1 * R2 * R4 +
                      2 * A * R1 * R3 * R4 + A * R1 * R3 * R5 + A * R2 * R3 * R4 +
                      R1 * R2 * R4 + R1 * R2 * R5 + R1 * R3 * R4 + R1 * R3 * R5 + R2 * R3 * R4 +
                      R2 * R3 * R5;
    return num / (d2 * s * s + d1 * s + d0);
}

}  // namespace ftdiag::test
