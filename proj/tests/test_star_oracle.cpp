#include "doctest.h"

#include <cmath>

#include "qst/star_oracle.hpp"

using namespace qst;

TEST_CASE("kappa integral formula matches the algebraic product")
{
    const auto g = kappa_group(1.0, 1);
    const auto f = WavePacket::plane_wave(g, {std::log(2.0), 1.0});
    const auto h = WavePacket::plane_wave(g, {0.3, 2.0}, cplx{0.5, -1.0});
    const double x[] = {0.4, 0.7};
    const auto r = numeric_star_oracle(f, h, x);
    MESSAGE("kappa difference " << r.difference() << " estimate " << r.error_estimate);
    CHECK(r.difference() < 1e-8);
}

TEST_CASE("kappa oracle on packets in three dimensions")
{
    const auto g = kappa_group(2.0, 3);
    WavePacket f(g), h(g);
    f.add_term(Momentum{0.5, 1.0, -0.5, 0.2}, 1.0);
    f.add_term(Momentum{-0.8, 0.3, 0.1, 0.9}, cplx{0.0, 2.0});
    h.add_term(Momentum{1.1, -0.4, 0.6, 0.3}, cplx{1.0, 1.0});
    h.add_term(Momentum{0.0, 0.5, 0.5, 0.5}, -0.5);
    const double x[] = {-0.3, 0.4, 1.2, -0.8};
    const auto r = numeric_star_oracle(f, h, x);
    MESSAGE("kappa d=3 difference " << r.difference() << " estimate " << r.error_estimate);
    CHECK(r.difference() < 1e-8);
}

TEST_CASE("unit plane wave is neutral in the integral formula")
{
    const auto g = kappa_group(1.0, 1);
    const auto e0 = WavePacket::plane_wave(g, g.zero());
    const auto f = WavePacket::plane_wave(g, {0.2, -1.5}, cplx{0.0, 1.0});
    const double x[] = {1.0, 0.5};
    const auto r1 = numeric_star_oracle(e0, f, x);
    const auto r2 = numeric_star_oracle(f, e0, x);
    CHECK(std::abs(r1.numeric - f.evaluate(x)) < 1e-8);
    CHECK(std::abs(r2.numeric - f.evaluate(x)) < 1e-8);
}

TEST_CASE("rho integral formula matches the algebraic product")
{
    const auto g = rho_group(1.0);
    const auto f = WavePacket::plane_wave(g, {0.9, 1.0, -0.4, 0.3});
    const auto h = WavePacket::plane_wave(g, {-0.2, 0.5, 1.5, -0.7});
    const double x[] = {0.3, 0.8, -0.6, 0.2};
    const auto r = numeric_star_oracle(f, h, x);
    MESSAGE("rho difference " << r.difference());
    CHECK(r.difference() < 1e-8);
}

TEST_CASE("moyal integral formula reproduces the phase increment")
{
    const auto g = moyal_group(1.0, 4);
    const auto f = WavePacket::plane_wave(g, {1, 0, 0, 0, 0});
    const auto h = WavePacket::plane_wave(g, {0, 1, 0, 0, 0});
    const double x[] = {0.0, 0.0, 0.0, 0.0};
    const auto r = numeric_star_oracle(f, h, x);
    MESSAGE("moyal numeric " << r.numeric << " algebraic " << r.algebraic);
    CHECK(r.difference() < 1e-8);
    CHECK(std::abs(r.numeric - std::polar(1.0, -0.5)) < 1e-8);
    CHECK_THROWS(numeric_star_oracle(WavePacket::plane_wave(moyal_group(1.0, 4, MoyalConvention::verbatim),
                                                            Momentum(5, 0.0)),
                                     WavePacket::plane_wave(moyal_group(1.0, 4, MoyalConvention::verbatim),
                                                            Momentum(5, 0.0)),
                                     x));
}
