#include "doctest.h"

#include <cmath>
#include <random>

#include "qst/twisted_gauge.hpp"

using namespace qst;
using namespace qst::gauge;

namespace {

Momentum random_momentum(int dim, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Momentum p(static_cast<std::size_t>(dim));
    for (auto& x : p) x = u(rng);
    return p;
}

cplx random_amplitude(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng), n(rng)};
}

WavePacket random_packet(const GroupDescriptor& g, int terms, std::mt19937_64& rng)
{
    WavePacket f(g);
    for (int t = 0; t < terms; ++t) f.add_term(random_momentum(g.dim(), rng), random_amplitude(rng));
    return f;
}

GaugeField single_wave_field(const GroupDescriptor& g, std::mt19937_64& rng)
{
    std::vector<WavePacket> c;
    for (int mu = 0; mu < g.dim(); ++mu)
        c.push_back(WavePacket::plane_wave(g, random_momentum(g.dim(), rng), random_amplitude(rng)));
    return GaugeField(std::move(c));
}

Polynomial poly(int n, std::initializer_list<std::pair<Polynomial::Exponents, mpq_class>> terms)
{
    Polynomial p(n);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

RationalMatrix block_theta(const mpq_class& t)
{
    RationalMatrix m(16, 0);
    m[0 * 4 + 1] = t;
    m[1 * 4 + 0] = -t;
    m[2 * 4 + 3] = 2 * t;
    m[3 * 4 + 2] = -2 * t;
    return m;
}

}  // namespace

TEST_CASE("twisted Leibniz rule")
{
    const auto g = kappa_group(1.3, 3);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        const auto f = random_packet(g, 3, rng), h = random_packet(g, 3, rng);
        for (int mu = 0; mu < 4; ++mu) CHECK(twisted_leibniz_check(mu, f, h) < 1e-12);
    }
    const auto e0 = WavePacket::plane_wave(g, g.zero());
    const auto ep = WavePacket::plane_wave(g, {0.4, 0.1, -0.2, 0.3});
    CHECK(twisted_leibniz_check(0, ep, e0) < 1e-15);

    // X_0 eigenvalues: kappa(1 - e^{-(p0+q0)/kappa}) = kappa(1 - e^{-p0/kappa}) + e^{-p0/kappa} kappa(1 - e^{-q0/kappa}).
    const double k = 1.3, p0 = 0.4, q0 = -0.9;
    const double lhs = k * (1 - std::exp(-(p0 + q0) / k));
    const double rhs = k * (1 - std::exp(-p0 / k)) + std::exp(-p0 / k) * k * (1 - std::exp(-q0 / k));
    CHECK(std::abs(lhs - rhs) < 1e-15);
}

TEST_CASE("twisted reality")
{
    const auto g = kappa_group(0.8, 3);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        const auto e = WavePacket::plane_wave(g, random_momentum(4, rng));
        const auto f = random_packet(g, 3, rng);
        for (int mu = 0; mu < 4; ++mu) {
            CHECK(twisted_reality_check(mu, e) < 1e-12);
            CHECK(twisted_reality_check(mu, f) < 1e-12);
        }
    }
    CHECK(twisted_reality_check(0, WavePacket::plane_wave(g, g.zero())) == 0.0);
}

TEST_CASE("field strength")
{
    const auto g = kappa_group(1.0, 3);
    const auto zero = field_strength(GaugeField::zero(g));
    CHECK(zero.distance(field_strength(GaugeField::zero(g))) == 0.0);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) CHECK(zero(mu, nu).empty());

    // A_mu = a_mu e_k, F expanded by hand: X terms give (x_mu a_nu - x_nu a_mu) e_k and the
    // twisted commutator gives -i a_mu a_nu (e^{-k0} - e^{-k0}) e_{k+k} = 0.
    const Momentum k{0.3, -0.5, 0.2, 0.7};
    const std::vector<cplx> a{{1, 0}, {0, 2}, {-1, 1}, {0.5, 0}};
    std::vector<WavePacket> comps;
    for (const auto& c : a) comps.push_back(WavePacket::plane_wave(g, k, c));
    const GaugeField field(comps);
    const auto f = field_strength(field);
    const std::vector<double> x{1 - std::exp(-0.3), -0.5, 0.2, 0.7};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const auto expected = WavePacket::plane_wave(g, k, x[mu] * a[nu] - x[nu] * a[mu]);
            CHECK(f(mu, nu).distance(expected) < 1e-14);
        }
    CHECK(f.antisymmetry_residual() < 1e-15);

    // Two waves: the commutator survives through the twist asymmetry.
    const Momentum p{0.6, 0.1, 0.0, 0.0}, q{-0.2, 0.0, 0.4, 0.0};
    std::vector<WavePacket> two(4, WavePacket(g));
    two[0] = WavePacket::plane_wave(g, p);
    two[1] = WavePacket::plane_wave(g, q);
    const auto f2 = field_strength(GaugeField(two));
    const cplx i{0, 1};
    WavePacket expected(g);
    expected.add_term(q, 1 - std::exp(0.2));  // X_0(e_q)
    expected.add_term(p, -0.1);               // -X_1(e_p)
    expected.add_term(g.add(p, q), -i * std::exp(-0.6));
    expected.add_term(g.add(q, p), i * std::exp(0.2));
    CHECK(f2(0, 1).distance(expected) < 1e-14);
    CHECK(f2.antisymmetry_residual() < 1e-15);

    // Large kappa: the twist disappears and F reduces to the undeformed structure.
    const auto flat = kappa_group(1e8, 3);
    std::vector<WavePacket> fc;
    for (const auto& c : a) fc.push_back(WavePacket::plane_wave(flat, k, c));
    const auto ff = field_strength(GaugeField(fc));
    CHECK(std::abs(ff(0, 1).coefficient(k) - (0.3 * a[1] + 0.5 * a[0])) < 1e-7);
}

TEST_CASE("gauge transformations")
{
    const auto g = kappa_group(1.2, 3);
    std::mt19937_64 rng(4);
    const auto a = single_wave_field(g, rng);

    const auto identity = GaugeTransform::plane_wave(g, g.zero());
    const auto same = gauge_transform(a, identity);
    for (int mu = 0; mu < 4; ++mu) CHECK(same[mu].distance(a[mu]) < 1e-15);

    const auto pure = gauge_transform(GaugeField::zero(g), GaugeTransform::plane_wave(g, {0.5, 0.2, -0.1, 0.3}, 0.7));
    const auto flat = field_strength(pure);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) CHECK(flat(mu, nu).distance(WavePacket(g)) < 1e-15);

    for (int t = 0; t < 25; ++t) {
        const auto field = single_wave_field(g, rng);
        const auto u = GaugeTransform::plane_wave(g, random_momentum(4, rng), 2.0 * t);
        CHECK(covariance_check(field, u) < 1e-12);
    }

    // The variant without the i breaks covariance once the field is not pure gauge.
    const auto u = GaugeTransform::plane_wave(g, {0.5, 0.2, -0.1, 0.3});
    CHECK(covariance_check(a, u, GaugeConvention::printed) > 1e-3);

    WavePacket two(g);
    two.add_term(Momentum{0.1, 0, 0, 0}, 1.0);
    two.add_term(Momentum{0.2, 0, 0, 0}, 1.0);
    CHECK_THROWS_AS(GaugeTransform{two}, std::invalid_argument);
    CHECK_THROWS(GaugeTransform(WavePacket::plane_wave(g, g.zero(), 2.0)));
    CHECK_THROWS(GaugeField(std::vector<WavePacket>(3, WavePacket(g))));
    CHECK_THROWS(GaugeField::zero(moyal_group(1.0)));
}

TEST_CASE("twisted Hermiticity")
{
    const double kappa = 0.9;
    const auto g = kappa_group(kappa, 3);
    const Momentum p{0.7, 0.2, -0.4, 0.1};
    WavePacket h(g);
    h.add_term(p, 1.0);
    h.add_term(g.inv(p), std::exp(p[0] / kappa));
    CHECK(hermiticity_check(GaugeField(std::vector<WavePacket>(4, h))) < 1e-14);
    CHECK(hermiticity_check(GaugeField::zero(g)) == 0.0);
    CHECK(hermiticity_check(GaugeField(std::vector<WavePacket>(4, WavePacket::plane_wave(g, p)))) > 0.5);
}

TEST_CASE("dimension constraint")
{
    const auto rows = dimension_constraint_scan(1, 8, 1.0, {-1.0, -0.3, 0.5, 1.0});
    REQUIRE(rows.size() == 8);
    for (const auto& r : rows) {
        if (r.d == 4)
            CHECK(r.max_deviation == 0.0);
        else
            CHECK(r.max_deviation > 0.1);
    }
    const auto d3 = dimension_constraint_scan(3, 3, 1.0, {1.0});
    CHECK(std::abs(d3[0].max_deviation - (std::exp(1.0) - 1.0)) < 1e-14);
    for (const auto& r : dimension_constraint_scan(1, 8, 2.0, {0.0})) CHECK(r.max_deviation == 0.0);
}

TEST_CASE("polynomial arithmetic")
{
    const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    const auto p = x * x * y + mpq_class(1, 3) * y;
    CHECK(p.degree() == 3);
    CHECK(p.derivative(0) == mpq_class(2) * (x * y));
    CHECK(p.derivative(1) == x * x + Polynomial::constant(2, mpq_class(1, 3)));
    CHECK((p - p).is_zero());
    CHECK(p.to_string() == "1/3 x1 + 1 x0^2 x1");
    CHECK_THROWS(Polynomial(5));
    CHECK_THROWS(x + Polynomial::variable(3, 0));
}

TEST_CASE("Seiberg-Witten map at first order")
{
    const int n = 4;
    const auto theta = block_theta(mpq_class(1, 2));

    const PolynomialField zero(n, Polynomial(n));
    const auto z = sw_map_order1(zero, theta);
    for (const auto& c : z.field) CHECK(c.is_zero());
    for (const auto& c : z.strength) CHECK(c.is_zero());

    PolynomialField constant;
    for (int mu = 0; mu < n; ++mu) constant.push_back(Polynomial::constant(n, mpq_class(mu + 1, 7)));
    const auto c = sw_map_order1(constant, theta);
    for (int mu = 0; mu < n; ++mu) CHECK(c.field[mu] == constant[mu]);
    for (const auto& f : c.strength) CHECK(f.is_zero());

    // Linear field A_mu = c_{mu nu} x^nu and linear alpha.
    PolynomialField linear;
    for (int mu = 0; mu < n; ++mu) {
        Polynomial a(n);
        for (int nu = 0; nu < n; ++nu) a += mpq_class(mu * n + nu + 1, 5 - (nu % 3)) * Polynomial::variable(n, nu);
        linear.push_back(a);
    }
    const auto alpha = mpq_class(2, 3) * Polynomial::variable(n, 0) - mpq_class(1, 4) * Polynomial::variable(n, 3) +
                       Polynomial::constant(n, 5);
    for (const auto& r : sw_consistency(linear, alpha, theta)) CHECK(r.is_zero());
    for (const auto& r : sw_strength_consistency(linear, theta)) CHECK(r.is_zero());

    // Degree-two fields and parameters, and a degree-four parameter.
    const auto quad = poly(n, {{{1, 1, 0, 0}, 3}, {{0, 0, 2, 0}, mpq_class(-1, 2)}, {{0, 1, 0, 0}, 1}});
    const PolynomialField quadratic{quad, quad.derivative(0) + quad, Polynomial::variable(n, 3) * quad,
                                    Polynomial::constant(n, 2)};
    for (const auto& r : sw_consistency(quadratic, quad, theta)) CHECK(r.is_zero());
    for (const auto& r : sw_strength_consistency(quadratic, theta)) CHECK(r.is_zero());
    const auto quartic = quad * quad;
    for (const auto& r : sw_consistency(quadratic, quartic, theta)) CHECK(r.is_zero());

    // The residual is not vacuous: dropping the alpha hat correction leaves a remainder.
    const auto full = sw_map_order1(linear, theta);
    CHECK_FALSE(full.field[0] == linear[0]);

    PolynomialField too_high = quadratic;
    too_high[0] = quartic * Polynomial::variable(n, 0);
    CHECK_THROWS_AS(sw_map_order1(too_high, theta), std::length_error);
    RationalMatrix bad = theta;
    bad[1] = 3;
    CHECK_THROWS(sw_map_order1(linear, bad));
}

TEST_CASE("tangent-space curvature")
{
    const int n = 4;
    const double kappa = 2.0;
    const auto tangent = preset(Preset::kappa_minkowski, kappa, n);
    // C_{mu nu}^t = (i/kappa)(delta^0_mu delta^t_nu - delta^0_nu delta^t_mu)
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
            for (int t = 0; t < n; ++t) {
                const double expected = ((mu == 0 && nu == t) ? 1.0 : 0.0) - ((nu == 0 && mu == t) ? 1.0 : 0.0);
                CHECK(std::abs(tangent(mu, nu, t) - cplx{0, expected / kappa}) < 1e-15);
            }

    const ConnectionCoefficients zero(n, std::vector<cplx>(64));
    const auto r0 = tangent_curvature(zero, tangent);
    for (const auto& v : r0.r) CHECK(v == cplx{0.0});

    std::mt19937_64 rng(8);
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<cplx> values(64);
    for (auto& v : values) v = {0.0, d(rng)};
    const ConnectionCoefficients gamma(n, values);
    CHECK(gamma.anti_hermiticity_residual() == 0.0);
    const auto r = tangent_curvature(gamma, tangent);
    CHECK(r.antisymmetry_residual() < 1e-14);

    // Direct contraction at one index set.
    const int mu = 0, nu = 2, rho = 1, sigma = 3;
    cplx expected = 0.0;
    for (int t = 0; t < n; ++t)
        expected += gamma(nu, rho, t) * gamma(mu, t, sigma) - gamma(mu, rho, t) * gamma(nu, t, sigma);
    expected -= cplx{0, 1 / kappa} * gamma(nu, rho, sigma);
    CHECK(std::abs(r(mu, nu, rho, sigma) - expected) < 1e-14);

    // Commutative tangent: only the antisymmetrised Gamma Gamma survives.
    const StructureConstants flat("flat", n, 0.0);
    const auto rf = tangent_curvature(gamma, flat);
    cplx gg = 0.0;
    for (int t = 0; t < n; ++t) gg += gamma(nu, rho, t) * gamma(mu, t, sigma) - gamma(mu, rho, t) * gamma(nu, t, sigma);
    CHECK(std::abs(rf(mu, nu, rho, sigma) - gg) < 1e-14);

    values[5] = {1.0, 0.5};
    CHECK(ConnectionCoefficients(n, values).anti_hermiticity_residual() == doctest::Approx(2.0));
    CHECK_THROWS(ConnectionCoefficients(n, std::vector<cplx>(10)));
    CHECK_THROWS(tangent_curvature(gamma, preset(Preset::kappa_minkowski, kappa, 3)));
}
