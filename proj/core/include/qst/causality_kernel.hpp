#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qst::causality {

using cplx = std::complex<double>;

enum class DerivativeScheme { central, spectral };

// Periodic grid p_j = -W + j h, h = 2W / n, on which x^0 = -i d/dp0 is Hermitian for both schemes.
class GridSpec {
public:
    GridSpec(int n, double half_width, DerivativeScheme scheme = DerivativeScheme::spectral);
    // W = 20 / kappa, wide enough for the test family after multiplication by e^{+-p0/kappa}.
    static GridSpec for_kappa(int n, double kappa, DerivativeScheme scheme = DerivativeScheme::spectral);

    int size() const noexcept { return n_; }
    double half_width() const noexcept { return half_width_; }
    double spacing() const noexcept { return 2.0 * half_width_ / n_; }
    DerivativeScheme scheme() const noexcept { return scheme_; }
    double point(int j) const noexcept { return -half_width_ + j * spacing(); }
    // 2 for central differences, 0 for spectral (no finite order).
    int order() const noexcept { return scheme_ == DerivativeScheme::central ? 2 : 0; }

    // Throws std::domain_error unless W >= 10 / kappa and kappa h <= 1.
    void require_compatible(double kappa) const;

private:
    int n_;
    double half_width_;
    DerivativeScheme scheme_;
};

// Amplitudes with sum |psi|^2 h = 1 to 1e-10.
class StateVector {
public:
    StateVector(const GridSpec& grid, std::vector<cplx> amplitudes);
    // Normalised exp(-(p0 - center)^2 / (4 width^2)); the tail at +-W must be negligible.
    static StateVector gaussian(const GridSpec& grid, double center, double width);

    const std::vector<cplx>& amplitudes() const noexcept { return psi_; }
    double spacing() const noexcept { return h_; }
    std::size_t size() const noexcept { return psi_.size(); }
    // psi e^{i t p0}
    StateVector phase_shifted(double t) const;

    cplx inner(std::span<const cplx> other) const;  // <psi, other> with weight h

private:
    std::vector<cplx> psi_;
    double h_;
};

// Dense n x n operator on the grid, row-major.
class GridOperator {
public:
    explicit GridOperator(int n);
    static GridOperator diagonal(std::span<const cplx> d);

    int size() const noexcept { return n_; }
    cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
    cplx operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }

    std::vector<cplx> apply(std::span<const cplx> v) const;
    GridOperator adjoint() const;
    GridOperator& operator+=(const GridOperator& o);
    GridOperator& operator-=(const GridOperator& o);
    GridOperator& operator*=(cplx s);
    friend GridOperator operator+(GridOperator a, const GridOperator& b) { return a += b; }
    friend GridOperator operator-(GridOperator a, const GridOperator& b) { return a -= b; }
    friend GridOperator operator*(cplx s, GridOperator a) { return a *= s; }

    cplx expectation(const StateVector& psi) const;
    double hermiticity_residual() const;  // max |A - A^dagger|

private:
    int n_;
    std::vector<cplx> a_;
};

// Real skew-symmetric derivative matrix of the grid's scheme.
GridOperator derivative_matrix(const GridSpec& grid);

struct Representation {
    GridSpec grid;
    double kappa;
    int branch;  // a = +1 or -1
    GridOperator x0;  // -i d/dp0
    GridOperator x1;  // a e^{-p0/kappa}
};

// branch must be +1 or -1; the degenerate a = 0 summand is not built.
Representation build_operators(const GridSpec& grid, double kappa, int branch);

struct DiracData {
    using Matrix2 = std::array<cplx, 4>;  // row-major
    Matrix2 gamma0;
    Matrix2 gamma1;
    Matrix2 fundamental;  // I = i gamma0
};

DiracData dirac_data();

// Twisted derivations on the grid, anti-Hermitian in the continuum:
// X_0 = -i kappa (1 - e^{-p0/kappa}) and X_1 = -kappa a (e^{p0/kappa} d/dp0 + e^{p0/kappa} / (2 kappa)),
// the latter generating unit translations of x^1 = a e^{-p0/kappa}.
GridOperator twisted_x0(const Representation& rep);
GridOperator twisted_x1(const Representation& rep);

struct AxiomReport {
    double i_squared_residual = 0.0;  // |I^2 - 1|
    double i_hermitian_residual = 0.0;  // |I^dagger - I|
    double krein_residual = 0.0;  // max over the test family of |(D^dagger I + I D) Psi|
};

// Maximum over both branches a = +-1; the residual on I is exact, the Dirac part is
// limited by the derivative scheme.
AxiomReport lorentzian_axiom_check(const GridSpec& grid, double kappa, std::uint64_t seed = 0x5eed);

// The same Gaussian family for every grid of a given half-width: centres in [-0.15W, 0.15W],
// widths in [0.025W, 0.05W].
std::vector<StateVector> gaussian_family(const GridSpec& grid, int count, std::uint64_t seed);

// derived: kernel i kappa (1 - e^{-(q0-p0)/kappa}) f(q0-p0, a e^{-p0/kappa}) +- d_1 f, where the
// factor kappa comes from X_0 = kappa (1 - E). printed: the same without kappa.
enum class ConeConvention { derived, printed };

struct ConeOptions {
    int states = 200;
    std::uint64_t seed = 0x5eed;
    ConeConvention convention = ConeConvention::derived;
    int jobs = 1;
};

struct ConeReport {
    static constexpr double tolerance = 1e-8;

    double margin_plus = 0.0;  // min over states of Re <psi, K_+ psi>
    double margin_minus = 0.0;
    double margin() const noexcept { return margin_plus < margin_minus ? margin_plus : margin_minus; }
    bool pass_plus() const noexcept { return margin_plus >= -tolerance; }
    bool pass_minus() const noexcept { return margin_minus >= -tolerance; }
    bool pass() const noexcept { return pass_plus() && pass_minus(); }
};

// f = alpha x^0 + beta x^1. f(q0 - p0, .) is the integral kernel of the represented f, so the
// cone operator is i kappa (pi(f) - M^-1 pi(f) M) +- pi(d_1 f) with M = e^{-p0/kappa}.
ConeReport cone_condition(const GridSpec& grid, double kappa, int branch, double alpha, double beta,
                          const ConeOptions& options = {});

// (<x0>_2 - <x0>_1) - |<x1>_2 - <x1>_1|
double sll_margin(const StateVector& first, const StateVector& second, const Representation& rep);

}  // namespace qst::causality
