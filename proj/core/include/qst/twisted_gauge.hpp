#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qst/structure_constants.hpp"
#include "qst/wave_algebra.hpp"

namespace qst::gauge {

// Components A_mu on kappa-Minkowski, one per coordinate.
class GaugeField {
public:
    explicit GaugeField(std::vector<WavePacket> components);
    static GaugeField zero(const GroupDescriptor& g);

    const GroupDescriptor& group() const noexcept { return components_.front().group(); }
    int size() const noexcept { return static_cast<int>(components_.size()); }
    const WavePacket& operator[](int mu) const { return components_.at(static_cast<std::size_t>(mu)); }
    const std::vector<WavePacket>& components() const noexcept { return components_; }

private:
    std::vector<WavePacket> components_;
};

// u * u^dagger = u^dagger * u = e_0 to 1e-12; anything else is rejected.
class GaugeTransform {
public:
    explicit GaugeTransform(WavePacket u);
    static GaugeTransform plane_wave(const GroupDescriptor& g, Momentum p, double phase = 0.0);

    const WavePacket& u() const noexcept { return u_; }

private:
    WavePacket u_;
};

// derived: A^u = E(u+) A u + i E(u+) X(u), which follows from A = i nabla(1) with
// nabla = X - iA and keeps F covariant. printed: the same without the i.
enum class GaugeConvention { derived, printed };

// X_0 = kappa (1 - E), X_j = P_j, both with real eigenvalues.
WavePacket twisted_derivation(int mu, const WavePacket& f);
WavePacket twist(int power, const WavePacket& f);  // E^power

// |X(f*g) - X(f)*g - E(f)*X(g)|
double twisted_leibniz_check(int mu, const WavePacket& f, const WavePacket& g);
// |(X f)^dagger + E^-1 X(f^dagger)|
double twisted_reality_check(int mu, const WavePacket& f);

class FieldStrength {
public:
    FieldStrength(int n, std::vector<WavePacket> entries);

    int size() const noexcept { return n_; }
    const WavePacket& operator()(int mu, int nu) const;
    // max |F_mu nu + F_nu mu|
    double antisymmetry_residual() const;
    double distance(const FieldStrength& other) const;

private:
    int n_;
    std::vector<WavePacket> entries_;
};

// F_mu nu = X_mu(A_nu) - X_nu(A_mu) - i (E(A_mu) A_nu - E(A_nu) A_mu)
FieldStrength field_strength(const GaugeField& a);

GaugeField gauge_transform(const GaugeField& a, const GaugeTransform& u,
                           GaugeConvention convention = GaugeConvention::derived);
// max |F(A^u) - E^2(u+) F(A) u|
double covariance_check(const GaugeField& a, const GaugeTransform& u,
                        GaugeConvention convention = GaugeConvention::derived);

// max_mu |A_mu^dagger - E^-1(A_mu)|
double hermiticity_check(const GaugeField& a);

struct DimensionRow {
    int d = 0;
    double max_deviation = 0.0;  // max over samples of |E^{d-2}(u) E^2(u+) - e_0|
};

// Plane-wave unitaries u = e_p with the given energies on kappa-Minkowski of each spatial dimension.
std::vector<DimensionRow> dimension_constraint_scan(int d_first, int d_last, double kappa,
                                                    const std::vector<double>& energies);

// Exact polynomial in up to four variables with rational coefficients.
class Polynomial {
public:
    static constexpr int max_variables = 4;
    using Exponents = std::array<int, max_variables>;

    explicit Polynomial(int variables = max_variables);
    static Polynomial constant(int variables, const mpq_class& c);
    static Polynomial variable(int variables, int index);

    int variables() const noexcept { return vars_; }
    const std::map<Exponents, mpq_class>& terms() const noexcept { return terms_; }
    void add_term(const Exponents& e, const mpq_class& c);

    int degree() const;
    bool is_zero() const noexcept { return terms_.empty(); }
    Polynomial derivative(int index) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const mpq_class& s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const mpq_class& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

    std::string to_string() const;

private:
    int vars_;
    std::map<Exponents, mpq_class> terms_;

    void require_compatible(const Polynomial& o) const;
};

using PolynomialField = std::vector<Polynomial>;
// Antisymmetric, row-major n x n.
using RationalMatrix = std::vector<mpq_class>;

struct SeibergWitten {
    PolynomialField field;  // A hat
    std::vector<Polynomial> strength;  // F hat, row-major n x n
};

// Inputs are limited to degree 4 in at most four variables; larger inputs throw std::length_error.
std::vector<Polynomial> commutative_strength(const PolynomialField& a);
// A hat = A - 1/2 Theta^{rs} A_r (d_s A_mu + F_{s mu});
// F hat = F + Theta^{rs} (F_{mu r} F_{nu s} - A_r d_s F_{mu nu}).
SeibergWitten sw_map_order1(const PolynomialField& a, const RationalMatrix& theta);
// First-order change of A hat under A -> A + d alpha minus the deformed transformation
// d alpha hat - Theta^{rs} d_r alpha d_s A with alpha hat = alpha + 1/2 Theta^{rs} d_r alpha A_s.
PolynomialField sw_consistency(const PolynomialField& a, const Polynomial& alpha, const RationalMatrix& theta);
// O(Theta) part of F hat minus the deformed field strength of A hat, with the Moyal bracket
// [f, g] = i Theta^{rs} d_r f d_s g at first order.
std::vector<Polynomial> sw_strength_consistency(const PolynomialField& a, const RationalMatrix& theta);

// gamma[(mu n + nu) n + rho] = Gamma^rho_{mu nu}, constant and central.
struct ConnectionCoefficients {
    int dim = 0;
    std::vector<cplx> gamma;

    ConnectionCoefficients(int n, std::vector<cplx> values);
    cplx operator()(int mu, int nu, int rho) const;
    // max |conj(Gamma) + Gamma|, zero for anti-Hermitian coefficients
    double anti_hermiticity_residual() const;
};

struct Curvature {
    int dim = 0;
    std::vector<cplx> r;  // r[((mu n + nu) n + rho) n + sigma] = R_{mu nu rho}^sigma

    cplx operator()(int mu, int nu, int rho, int sigma) const;
    double antisymmetry_residual() const;  // max |R_{mu nu} + R_{nu mu}|
};

// Constant coefficients make the derivative terms vanish, leaving
// Gamma^t_{nu rho} Gamma^s_{mu t} - Gamma^t_{mu rho} Gamma^s_{nu t} - C^t_{mu nu} Gamma^s_{t rho}.
Curvature tangent_curvature(const ConnectionCoefficients& gamma, const StructureConstants& tangent);

}  // namespace qst::gauge
