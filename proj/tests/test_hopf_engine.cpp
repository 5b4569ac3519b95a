#include "doctest.h"

#include <random>

#include "qst/kappa_poincare.hpp"
#include "qst/twist.hpp"

using namespace qst::hopf;
using qst::exact::GaussianRational;

namespace {

const KappaPoincare& engine()
{
    static const KappaPoincare kp;
    return kp;
}

Coefficient i_over_kappa(long s) { return Coefficient::symbol_power(-1, GaussianRational(0, s)); }

Element mono(Word letters, int e_power, Coefficient c = 1) { return Element::monomial({letters, e_power}, c); }

Word random_word(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> len(0, 4), letter(0, 9), exps(0, 2), flip(0, 1);
    Word w;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) w.push_back(static_cast<std::uint8_t>(letter(rng)));
    const int e = exps(rng);
    for (int i = 0; i < e; ++i) {
        std::uniform_int_distribution<std::size_t> at(0, w.size());
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(at(rng)),
                 flip(rng) ? static_cast<std::uint8_t>(Letter::E) : static_cast<std::uint8_t>(Letter::Einv));
    }
    return w;
}

}  // namespace

TEST_CASE("normal ordering examples")
{
    const auto& kp = engine();
    for (int j = 0; j < 3; ++j) {
        const Element expected =
            mono(word({boost(j)}), 1) + mono(word({momentum(j)}), 1, i_over_kappa(1));
        CHECK(kp.normal_order(word({Letter::E, boost(j)})) == expected);
    }
    CHECK(kp.normal_order(word({Letter::P3, Letter::P1})) == mono(word({Letter::P1, Letter::P3}), 0));
    CHECK(kp.normal_order(word({Letter::K1, Letter::J2, Letter::P0, Letter::P3, Letter::E})) ==
          mono(word({Letter::K1, Letter::J2, Letter::P0, Letter::P3}), 1));
    CHECK(kp.normal_order(word({Letter::E, Letter::Einv, Letter::Einv, Letter::E})) == Element(1));
}

TEST_CASE("coproduct, counit and antipode tables")
{
    const auto& kp = engine();
    const Element one(1), e = kp.generator(Letter::E);
    for (int j = 0; j < 3; ++j) {
        const Element p = kp.generator(momentum(j));
        CHECK(kp.coproduct(p) == Tensor::pure({p, one}) + Tensor::pure({e, p}));
        // S(P_j E) = S(E) S(P_j) = -E^-2 P_j
        CHECK(kp.antipode(kp.multiply(p, e)) == mono(word({momentum(j)}), -2, -1));
    }
    CHECK(kp.antipode(one) == one);
    CHECK(kp.counit(one) == Coefficient(1));
    CHECK(kp.counit(e) == Coefficient(1));
    CHECK(kp.counit(kp.generator(Letter::K2)).is_zero());
    CHECK(kp.coproduct(e) == Tensor::pure({e, e}));
}

TEST_CASE("coassociativity of P_j expands to three terms both ways")
{
    const auto& kp = engine();
    const Element one(1), e = kp.generator(Letter::E), p = kp.generator(Letter::P2);
    const Tensor expected = Tensor::pure({p, one, one}) + Tensor::pure({e, p, one}) + Tensor::pure({e, e, p});
    const Tensor d = kp.coproduct(p);
    CHECK(kp.coproduct_at(d, 0) == expected);
    CHECK(kp.coproduct_at(d, 1) == expected);
}

TEST_CASE("Hopf axioms hold for every generator")
{
    const auto& kp = engine();
    const auto gens = generators();
    CHECK(gens.size() == 3 * 3 + 2);
    for (auto g : gens) {
        const auto r = kp.axioms(g);
        CAPTURE(r.name);
        CHECK_MESSAGE(r.coassociativity.passed, r.coassociativity.residual);
        CHECK_MESSAGE(r.left_counit.passed, r.left_counit.residual);
        CHECK_MESSAGE(r.right_counit.passed, r.right_counit.residual);
        CHECK_MESSAGE(r.left_antipode.passed, r.left_antipode.residual);
        CHECK_MESSAGE(r.right_antipode.passed, r.right_antipode.residual);
    }
    // m(S (x) id) Delta(K_j) cancels to zero term by term.
    const Tensor d = kp.coproduct(kp.generator(Letter::K1));
    CHECK(kp.multiply_with_antipode(d, 0).is_zero());
    CHECK(kp.multiply(kp.antipode(kp.generator(Letter::E)), kp.generator(Letter::E)) == Element(1));
}

TEST_CASE("axioms hold on composite elements")
{
    const auto& kp = engine();
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const Element e = kp.normal_order(random_word(rng)) + kp.normal_order(random_word(rng));
        CHECK(kp.axioms(e, "composite").passed());
    }
}

TEST_CASE("bialgebra compatibility of every bracket")
{
    const auto& kp = engine();
    const auto rels = kp.relations();
    CHECK(rels.size() == 55);
    bool saw_boost_momentum = false;
    for (const auto& rel : rels) {
        const auto r = kp.bialgebra(rel);
        CAPTURE(r.name);
        CHECK_MESSAGE(r.holds.passed, r.holds.residual);
        CHECK_MESSAGE(r.coproduct.passed, r.coproduct.residual);
        CHECK_MESSAGE(r.counit.passed, r.counit.residual);
        CHECK_MESSAGE(r.antipode.passed, r.antipode.residual);
        if (rel.a == Letter::K1 && rel.b == Letter::P1) {
            saw_boost_momentum = true;
            // Contains kappa (1 - E^2)/2 and the momentum square.
            CHECK(rel.rhs.coefficient({{}, 2}) == Coefficient::symbol_power(1, GaussianRational(0, mpq_class(-1, 2))));
        }
    }
    CHECK(saw_boost_momentum);
}

TEST_CASE("hand-expanded [K_j, E] compatibility")
{
    const auto& kp = engine();
    const Element k = kp.generator(Letter::K3), e = kp.generator(Letter::E), p = kp.generator(Letter::P3);
    const Tensor dk = kp.coproduct(k), de = kp.coproduct(e);
    const Tensor lhs = kp.multiply(dk, de) - kp.multiply(de, dk);
    const Tensor dp = kp.coproduct(p);
    Tensor rhs = kp.multiply(dp, de);
    Tensor scaled(2);
    for (const auto& [key, c] : rhs.terms()) scaled.add(key, c * i_over_kappa(-1));
    CHECK(lhs == scaled);
}

TEST_CASE("rewrite system is confluent and normal forms are strategy independent")
{
    const auto& kp = engine();
    const auto rep = kp.confluence();
    CHECK(rep.overlaps_checked > 200);
    CHECK_MESSAGE(rep.passed(), (rep.failures.empty() ? "" : rep.failures.front()));

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), terms(1, 3);
    for (int t = 0; t < 1000; ++t) {
        Element lhs, rhs;
        const int n = terms(rng);
        for (int k = 0; k < n; ++k) {
            const Word w = random_word(rng);
            const Coefficient c(GaussianRational(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))));
            lhs += c * kp.normal_order(w);
            rhs += c * kp.normal_order_random(w, rng);
        }
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("the literal sign of [P_j, J_k] is not confluent")
{
    const KappaPoincare literal(Conventions::printed());
    CHECK_FALSE(literal.confluence().passed());
    auto c = Conventions::consistent();
    c.antipode_momentum_first = false;
    const KappaPoincare reversed(c);
    CHECK(reversed.confluence().passed());
    CHECK_FALSE(reversed.axioms(Letter::K1).passed());
}

TEST_CASE("E agrees with the exponential series of P0")
{
    const auto& kp = engine();
    for (int order = 1; order <= 6; ++order)
        for (int j = 0; j < 3; ++j) CHECK(kp.series_defect(j, order).is_zero());
    // The E letter itself obeys the same rule exactly.
    const Element k = kp.generator(Letter::K2), e = kp.generator(Letter::E);
    CHECK(kp.commutator(k, e) == mono(word({Letter::P2}), 1, i_over_kappa(-1)));
}

TEST_CASE("Jacobi identity over all generator triples")
{
    const auto& kp = engine();
    const auto gens = generators();
    for (auto a : gens)
        for (auto b : gens)
            for (auto c : gens) {
                const Element x = kp.generator(a), y = kp.generator(b), z = kp.generator(c);
                const Element jac = kp.commutator(kp.commutator(x, y), z) + kp.commutator(kp.commutator(y, z), x) +
                                    kp.commutator(kp.commutator(z, x), y);
                CHECK(jac.is_zero());
            }
}

// ---- twists ----

TEST_CASE("abelian twist is a cocycle")
{
    const int order = 3;
    const auto rep = twist_check(abelian_twist(), order);
    CHECK_MESSAGE(rep.cocycle.passed, rep.cocycle.residual);
    CHECK(rep.left_normalization.passed);
    CHECK(rep.right_normalization.passed);
    CHECK(rep.semiclassical.passed);

    // Both sides equal exp(i h (X(x)Y(x)1 + X(x)1(x)Y + 1(x)X(x)Y)).
    TwistSeries exponent(3, 2, order);
    for (const auto& e : {std::vector<int>{1, 0, 0, 1, 0, 0}, {1, 0, 0, 0, 0, 1}, {0, 0, 1, 0, 0, 1}})
        exponent.add(1, e, GaussianRational(0, 1));
    const TwistSeries f = twist_element(abelian_twist(), order);
    CHECK(f.embed(3, {0, 1}) * f.coproduct_at(0) == exponent.exponential());
    CHECK(f.embed(3, {1, 2}) * f.coproduct_at(1) == exponent.exponential());
}

TEST_CASE("twist series basics")
{
    const TwistSeries f = twist_element(abelian_twist(), 4);
    CHECK(f * f.inverse() == TwistSeries::unit(2, 2, 4));
    CHECK(f.counit_at(0) == TwistSeries::unit(1, 2, 4));
    CHECK_THROWS_AS(TwistSeries(2, 2, 4).inverse(), std::domain_error);
    CHECK_THROWS(twist_element(abelian_twist(), max_twist_order + 1));
    CHECK_THROWS(bilinear_twist({{1, 2}}));
    // Second-order coefficient of exp(i h X(x)Y) is -1/2 X^2(x)Y^2.
    CHECK(f.terms().at({2, {2, 0, 0, 2}}) == GaussianRational(mpq_class(-1, 2)));
}

TEST_CASE("a non-cocycle is rejected")
{
    TwistSeries f = TwistSeries::unit(2, 2, 2);
    f.add(1, {2, 0, 0, 1}, 1);  // 1(x)1 + h X^2 (x) Y
    const auto rep = twist_check(f);
    CHECK_FALSE(rep.cocycle.passed);
    CHECK(rep.left_normalization.passed);
}

TEST_CASE("abelian twist R-matrix and twisted structures")
{
    const int order = 4;
    const auto s = twisted_structures(abelian_twist(), order);
    TwistSeries exponent(2, 2, order);
    exponent.add(1, {0, 1, 1, 0}, GaussianRational(0, 1));
    exponent.add(1, {1, 0, 0, 1}, GaussianRational(0, -1));
    CHECK(s.r_matrix == exponent.exponential());
    CHECK_MESSAGE(s.triangularity.passed, s.triangularity.residual);
    CHECK_MESSAGE(s.yang_baxter.passed, s.yang_baxter.residual);
    CHECK_MESSAGE(s.braided_commutativity.passed, s.braided_commutativity.residual);
    CHECK_MESSAGE(s.twisted_antipode.passed, s.twisted_antipode.residual);
}

TEST_CASE("trivial twist leaves everything untouched")
{
    const auto s = twisted_structures(trivial_twist(2), 4);
    CHECK(s.r_matrix == TwistSeries::unit(2, 2, 4));
    for (int u = 0; u < 2; ++u)
        CHECK(s.coproduct[u] == TwistSeries::letter(1, 2, 4, 0, u).coproduct_at(0));
    CHECK(s.passed());
}

TEST_CASE("Moyal twist keeps momenta primitive")
{
    // -(1/2) Theta with Theta^{01} = 1/2, Theta^{23} = 3.
    std::vector<std::vector<mpq_class>> m(4, std::vector<mpq_class>(4, 0));
    m[0][1] = mpq_class(-1, 4);
    m[1][0] = mpq_class(1, 4);
    m[2][3] = mpq_class(-3, 2);
    m[3][2] = mpq_class(3, 2);
    const auto spec = bilinear_twist(m);
    CHECK(twist_check(spec, 4).passed());
    const auto s = twisted_structures(spec, 4);
    for (int u = 0; u < 4; ++u) {
        CHECK(s.coproduct[u] == TwistSeries::letter(1, 4, 4, 0, u).coproduct_at(0));
        CHECK(s.antipode[u] == GaussianRational(-1) * TwistSeries::letter(1, 4, 4, 0, u));
    }
    CHECK(s.passed());
}
