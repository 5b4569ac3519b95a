#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qst/causality_kernel.hpp"

using namespace qst::causality;

TEST_CASE("grid and state invariants")
{
    CHECK_THROWS_AS(GridSpec(8, 20.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(255, 20.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(256, 5.0).require_compatible(1.0), std::domain_error);
    CHECK_THROWS_AS(GridSpec(16, 20.0).require_compatible(1.0), std::domain_error);
    CHECK_NOTHROW(GridSpec(256, 10.0).require_compatible(1.0));

    const GridSpec grid = GridSpec::for_kappa(256, 1.0);
    CHECK_THROWS_AS(StateVector(grid, std::vector<cplx>(256, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(StateVector::gaussian(grid, 0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(StateVector::gaussian(grid, 15.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(build_operators(grid, 1.0, 0), std::invalid_argument);

    const StateVector psi = StateVector::gaussian(grid, 1.0, 0.7);
    CHECK(std::abs(psi.inner(psi.amplitudes()) - 1.0) < 1e-12);
}

TEST_CASE("representation operators")
{
    for (auto scheme : {DerivativeScheme::central, DerivativeScheme::spectral}) {
        const GridSpec grid = GridSpec::for_kappa(256, 1.0, scheme);
        for (int a : {1, -1}) {
            const Representation rep = build_operators(grid, 1.0, a);
            CHECK(rep.x0.hermiticity_residual() < 1e-12);
            CHECK(rep.x1.hermiticity_residual() == 0.0);

            double lo = INFINITY;
            double hi = -INFINITY;
            for (int j = 0; j < grid.size(); ++j) {
                lo = std::min(lo, a * std::exp(-grid.point(j)));
                hi = std::max(hi, a * std::exp(-grid.point(j)));
            }
            for (const StateVector& psi : gaussian_family(grid, 20, 11)) {
                const cplx x0 = rep.x0.expectation(psi);
                const cplx x1 = rep.x1.expectation(psi);
                CHECK(std::abs(x0.imag()) < 1e-10);
                CHECK(std::abs(x1.imag()) < 1e-10);
                CHECK(x1.real() >= lo);
                CHECK(x1.real() <= hi);
            }
        }
    }

    SUBCASE("phase shift translates <x0> by t")
    {
        const GridSpec grid = GridSpec::for_kappa(256, 1.0);
        const Representation rep = build_operators(grid, 1.0, 1);
        const StateVector psi = StateVector::gaussian(grid, -0.5, 1.0);
        // A real Gaussian has <x0> = 0.
        CHECK(std::abs(rep.x0.expectation(psi)) < 1e-12);
        for (double t : {0.25, 1.0, 3.0}) {
            const StateVector moved = psi.phase_shifted(t);
            CHECK(rep.x0.expectation(moved).real() == doctest::Approx(t).epsilon(1e-10));
            CHECK(std::abs(rep.x1.expectation(moved) - rep.x1.expectation(psi)) < 1e-14);
        }
    }

    SUBCASE("large kappa makes x1 the branch sign")
    {
        const GridSpec grid = GridSpec::for_kappa(64, 1e8);
        const Representation rep = build_operators(grid, 1e8, -1);
        for (int j = 0; j < grid.size(); ++j) CHECK(std::abs(rep.x1(j, j) + 1.0) < 1e-6);
    }
}

TEST_CASE("Lorentzian axioms")
{
    const DiracData dd = dirac_data();
    CHECK(dd.fundamental[1] == cplx(-1.0, 0.0));
    CHECK(dd.fundamental[2] == cplx(-1.0, 0.0));

    const AxiomReport spectral = lorentzian_axiom_check(GridSpec::for_kappa(256, 1.0), 1.0);
    CHECK(spectral.i_squared_residual == 0.0);
    CHECK(spectral.i_hermitian_residual == 0.0);
    CHECK(spectral.krein_residual < 1e-8);

    // Central differences: the residual drops by 2^2 per doubling.
    double previous = 0.0;
    for (int n : {256, 512, 1024}) {
        const AxiomReport r = lorentzian_axiom_check(GridSpec::for_kappa(n, 1.0, DerivativeScheme::central), 1.0);
        CHECK(r.i_squared_residual == 0.0);
        if (previous > 0.0) {
            const double ratio = previous / r.krein_residual;
            CHECK(ratio > 3.5);
            CHECK(ratio < 4.5);
        }
        previous = r.krein_residual;
    }

    const GridSpec grid = GridSpec::for_kappa(256, 2.0);
    const Representation rep = build_operators(grid, 2.0, 1);
    const GridOperator x0 = twisted_x0(rep);
    CHECK((x0 + x0.adjoint()).hermiticity_residual() == 0.0);
}

TEST_CASE("causal cone of linear functions")
{
    const double kappa = 1.0;
    const GridSpec grid = GridSpec::for_kappa(256, kappa);

    SUBCASE("subluminal slopes pass on both branches")
    {
        for (int a : {1, -1}) {
            for (double v : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
                const ConeReport r = cone_condition(grid, kappa, a, 1.0, v);
                CHECK(r.pass());
                // For normalised states the quadratic form is alpha +- beta.
                CHECK(r.margin_plus == doctest::Approx(1.0 + v).epsilon(1e-9));
                CHECK(r.margin_minus == doctest::Approx(1.0 - v).epsilon(1e-9));
            }
        }
    }

    SUBCASE("pure time function")
    {
        const ConeReport r = cone_condition(GridSpec::for_kappa(256, 3.0), 3.0, 1, 1.0, 0.0);
        CHECK(r.pass());
        CHECK(r.margin() == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("superluminal slope fails")
    {
        const double big = 1e3;
        const ConeReport r = cone_condition(GridSpec::for_kappa(256, big), big, 1, 1.0, 2.0);
        CHECK(!r.pass());
        CHECK(r.pass_plus());
        CHECK(!r.pass_minus());
        CHECK(r.margin() == doctest::Approx(-1.0).epsilon(1e-9));
    }

    SUBCASE("printed prefactor scales the time part by 1/kappa")
    {
        ConeOptions options;
        options.convention = ConeConvention::printed;
        const ConeReport r = cone_condition(GridSpec::for_kappa(256, 2.0), 2.0, 1, 1.0, 0.25, options);
        CHECK(r.margin() == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(!cone_condition(GridSpec::for_kappa(256, 2.0), 2.0, 1, 1.0, 1.0, options).pass());
    }

    SUBCASE("central scheme approaches the light cone under refinement")
    {
        double previous = INFINITY;
        for (int n : {256, 512, 1024}) {
            const ConeReport r =
                cone_condition(GridSpec::for_kappa(n, kappa, DerivativeScheme::central), kappa, 1, 1.0, 1.0);
            CHECK(std::abs(r.margin()) < previous);
            previous = std::abs(r.margin());
        }
    }

    SUBCASE("parallel evaluation is bitwise deterministic")
    {
        ConeOptions serial;
        ConeOptions parallel;
        parallel.jobs = 4;
        const ConeReport s = cone_condition(grid, kappa, -1, 1.0, 0.5, serial);
        const ConeReport p = cone_condition(grid, kappa, -1, 1.0, 0.5, parallel);
        CHECK(s.margin_plus == p.margin_plus);
        CHECK(s.margin_minus == p.margin_minus);
    }
}

TEST_CASE("speed-of-light margin")
{
    const GridSpec grid = GridSpec::for_kappa(256, 1.0);
    const Representation rep = build_operators(grid, 1.0, 1);
    const StateVector psi = StateVector::gaussian(grid, 0.3, 0.8);

    CHECK(sll_margin(psi, psi, rep) == 0.0);
    for (double t : {0.1, 0.5, 2.0}) CHECK(std::abs(sll_margin(psi, psi.phase_shifted(t), rep) - t) < 1e-8);

    // Displacing the centre in p0 moves only <x1>, so the margin is -|delta <x1>| < 0.
    const StateVector displaced = StateVector::gaussian(grid, 0.8, 0.8);
    const double expected = -std::abs(rep.x1.expectation(displaced).real() - rep.x1.expectation(psi).real());
    CHECK(sll_margin(psi, displaced, rep) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(sll_margin(psi, displaced, rep) < 0.0);

    const GridSpec other = GridSpec::for_kappa(128, 1.0);
    CHECK_THROWS_AS(sll_margin(StateVector::gaussian(other, 0.0, 1.0), psi, rep), std::invalid_argument);
}
