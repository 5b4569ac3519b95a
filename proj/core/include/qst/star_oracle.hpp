#pragma once

#include <span>

#include "qst/quadrature.hpp"
#include "qst/wave_algebra.hpp"

namespace qst {

// Damped-window quadrature for the integral form of the star product. Zero window or
// width selects the defaults: 40/kappa and 10/kappa (rho: 40/rho, 10/rho; Moyal:
// 40 sqrt(theta), 10 sqrt(theta)). Every Richardson level doubles both.
struct QuadratureSpec {
    double window = 0.0;
    double width = 0.0;
    int levels = 4;
    double rel_tol = 1e-11;
};

struct OracleResult {
    cplx numeric;
    cplx algebraic;
    double error_estimate;  // spread of the last two Richardson estimates
    double difference() const { return std::abs(numeric - algebraic); }
};

// Evaluates (f*g)(x) from the integral formula of the space (kappa- and rho-Minkowski:
// one-dimensional Fourier kernel in time; Moyal: Gaussian-damped kernel per symplectic pair)
// and compares it with the algebraic product evaluated at x. The Moyal oracle expects the
// default phase convention.
OracleResult numeric_star_oracle(const WavePacket& f, const WavePacket& g, std::span<const double> x,
                                 QuadratureSpec spec = {});

}  // namespace qst
