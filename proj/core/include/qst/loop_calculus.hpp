#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qst/momentum_group.hpp"
#include "qst/wave_algebra.hpp"

namespace qst::loop {

// Diagonal metric; 0 marks a non-dynamical slot such as the Moyal phase.
struct KineticSpec {
    GroupDescriptor group;
    std::vector<int> signature;
    double mass = 1.0;

    KineticSpec(GroupDescriptor g, std::vector<int> sig, double m);
};

// (+,-,...,-) on kappa-Minkowski; (-,...,-) elsewhere so that K = |k|^2 + m^2 stays
// positive-definite, with the Moyal phase slot switched off.
KineticSpec standard_kinetic(const GroupDescriptor& g, double mass);

// sum_mu s_mu k_mu (inv k)_mu + m^2
double kinetic_eval(const KineticSpec& ks, MomentumView k);
// |K(inv k) - K(k)|
double parity_residual(const KineticSpec& ks, MomentumView k);

enum class Scheme { sharp_cutoff, schwinger };

struct RegulatorSpec {
    Scheme scheme = Scheme::sharp_cutoff;
    double cutoff = 1.0;
    bool wick = true;

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
};

// Haar-weighted integral of 1/K, loop normalisation dropped. Euclidean metrics integrate
// radially; the Minkowski metric needs wick = true and does the energy integral in closed
// form. Only right-ordered kappa-Minkowski, Moyal and abelian groups are supported.
IntegralResult propagator_integral(const KineticSpec& ks, const RegulatorSpec& reg);

enum class Trend { divergent, convergent, inconclusive };
std::string to_string(Trend t);

struct SweepPoint {
    double parameter = 0.0;
    double value = 0.0;
    double error = 0.0;
};

struct SweepReport {
    std::vector<SweepPoint> points;
    double slope = 0.0;  // d log|value| / d log(parameter) over the last decade
    bool monotone = true;
    Trend trend = Trend::inconclusive;
};

// start, start*factor, ... up to stop.
struct GeometricGrid {
    double start = 1.0;
    double stop = 1e4;
    double factor = 10.0;

    std::vector<double> values() const;
    static GeometricGrid parse(const std::string& text);  // "start:stop:factor"
};

// Slope fitted on the points within one decade of the largest parameter.
// slope > 0.1 is divergent, |slope| < 0.02 convergent, anything else or a
// non-monotone window is inconclusive.
SweepReport classify_sweep(std::vector<SweepPoint> points);

// Evaluates every grid point, in parallel when jobs > 1; the table keeps grid order.
SweepReport sweep(const std::vector<double>& grid, const std::function<IntegralResult(double)>& evaluate,
                  int jobs = 1);

SweepReport cutoff_sweep(const KineticSpec& ks, Scheme scheme, const GeometricGrid& grid, int jobs = 1);

// 4 pi (4 pi kappa m / d)^{(d-1)/2} K_{(d-1)/2}(m d / 2 kappa); the massless limit is
// taken analytically for d > 1.
double kmink_bessel_closed_form(double mass, double kappa, int d);
// Omega_{d-1} int_0^inf r^{d-1} (pi/w) e^{-d w / 2 kappa} dr, w = sqrt(r^2 + m^2).
IntegralResult kmink_wick_oracle(double mass, double kappa, int d);

struct BesselRow {
    double mass = 0.0;
    double kappa = 0.0;
    int d = 0;
    double closed_form = 0.0;
    double oracle = 0.0;
    double ratio = 0.0;  // oracle / closed form
};

struct BesselCheck {
    std::vector<BesselRow> rows;
    double mean_ratio = 0.0;
    double max_relative_deviation = 0.0;  // max |ratio / mean - 1|
};

BesselCheck bessel_ratio_table(std::span<const double> masses, std::span<const double> kappas,
                               std::span<const int> dims, int jobs = 1);

struct MoyalNonplanar {
    double c = 0.0;  // |p Theta|^2 / 4 + 1 / Lambda^2
    double quadrature = 0.0;
    double quadrature_error = 0.0;
    double closed_form = 0.0;  // 2 (m / sqrt c) K_1(2 m sqrt c), 1/c when massless
    double relative_error = 0.0;
    double effective_cutoff_sq = 0.0;  // 1/c
    // Lambda_eff^2 - m^2 log(Lambda_eff^2 / m^2) and value / that, meaningful when m^2 c << 1.
    double asymptotic = 0.0;
    double asymptotic_ratio = 0.0;
};

// Schwinger form int_0^inf a^{-2} exp(-a m^2 - c/a) da. p has the base dimension and
// theta is row-major base x base.
MoyalNonplanar moyal_nonplanar(std::span<const double> p, std::span<const double> theta, double mass,
                               double cutoff);

struct AsymptoticCheck {
    double mass_sq_c = 0.0;
    double ratio = 0.0;
    bool applicable = false;  // m^2 c <= 1e-3
    bool passed = false;      // applicable and |ratio - 1| <= 0.02
};
AsymptoticCheck asymptotic_check(const MoyalNonplanar& r, double mass);

// Coefficients keyed by (power of Delta(q), power of Delta(k)).
using ModularPolynomial = std::map<std::pair<int, int>, mpq_class>;
double evaluate(const ModularPolynomial& poly, double modular_q, double modular_k);
std::string to_string(const ModularPolynomial& poly);

// g^2/4! [ delta(p+q) (1+D(q)) int (3+D(k))/K
//        + int (1+D(k)^-1)(1+D(q) D(k)^-2) delta(p+k+q-k)/K ]
struct TwoPointRecord {
    GroupDescriptor group;
    mpq_class prefactor{1, 24};
    ModularPolynomial planar;
    ModularPolynomial nonplanar;

    DeltaSum planar_conservation(MomentumView p, MomentumView q) const;
    DeltaSum nonplanar_conservation(MomentumView p, MomentumView q, MomentumView k) const;

    double planar_weight(MomentumView q, MomentumView k) const;
    double nonplanar_weight(MomentumView q, MomentumView k) const;
    // Phase-slot component of p+k+(-p)-k; zero unless the group carries a phase slot.
    double nonplanar_phase(MomentumView p, MomentumView k) const;

    // Prefactor times the factor at D = 1.
    mpq_class unimodular_planar() const;
    mpq_class unimodular_nonplanar() const;
    // Both sectors collapse onto delta(p+q) once the addition is abelian.
    mpq_class commutative_coefficient() const;
};

TwoPointRecord two_point_assemble(const GroupDescriptor& g);

struct KappaNonplanar {
    std::complex<double> value;  // delta Jacobian factored out
    double error = 0.0;
    double jacobian = 0.0;  // |1 - e^{-p0/kappa}|^{-d}
};

// Non-planar kappa-Minkowski integrand at q = inv(p), energy Wick-rotated and cut at |s| <= Lambda,
// spatial momentum fixed by the delta. p must satisfy |p_spatial| < kappa |1 - e^{-p0/kappa}|
// so the rotated contour stays off the poles.
KappaNonplanar kappa_nonplanar(const KineticSpec& ks, MomentumView p, double cutoff);

// Spatial loop momentum solving the non-planar delta at complex energy k0.
std::vector<std::complex<double>> kappa_nonplanar_momentum(const GroupDescriptor& g, MomentumView p,
                                                           std::complex<double> k0);

enum class Verdict { mixing, no_mixing, inconclusive };
std::string to_string(Verdict v);

struct Criterion {
    std::optional<bool> holds;  // empty when the sweep is inconclusive
    SweepReport sweep;
    std::string note;
};

struct MixingReport {
    Criterion planar_uv_divergent;
    Criterion nonplanar_ir_singular;  // sweep parameter is 1/|p|
    Criterion nonplanar_uv_finite;
    Verdict verdict = Verdict::inconclusive;
};

struct MixingOptions {
    GeometricGrid cutoffs{1.0, 1e4, 10.0};
    GeometricGrid inverse_momenta{1.0, 1e3, 10.0};
    double ir_cutoff = 1e6;  // kappa-Minkowski caps this at 1e3
    std::vector<double> direction;  // base direction of p; default chosen per group
    int jobs = 1;
};

MixingReport mixing_classify(const KineticSpec& ks, const MixingOptions& options = {});

enum class FieldKind { real_phi4, charged_orientable, charged_nonorientable };

// Leg i of the vertex sits at position i of the cyclic order. p attaches to one leg,
// q to another and the remaining two legs close the loop.
struct Contraction {
    int p_leg = 0;
    int q_leg = 0;
    std::array<int, 2> loop_legs{};
    bool planar = false;
};

std::vector<Contraction> diagram_enumerate(FieldKind field);

// e^{d k0/2 kappa} (-sinh(k0/2 kappa)/k0)^d / (-k0^2 + |k|^2 + m^2)
double sum_order_integrand(MomentumView k, double mass, double kappa, int d);
// (d-1) L + 2
int graviton_divergence_degree(int loops, int d);

}  // namespace qst::loop
