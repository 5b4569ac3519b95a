#include "doctest.h"

#include <cmath>
#include <random>

#include "qst/wave_algebra.hpp"
#include "support.hpp"

using namespace qst;

namespace {

WavePacket random_packet(const GroupDescriptor& g, int terms, std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    WavePacket w(g);
    for (int t = 0; t < terms; ++t) w.add_term(qst::testing::random_momentum(g, rng), cplx{n(rng), n(rng)});
    return w;
}

// Packet pair whose star products contain terms on the delta support.
std::pair<WavePacket, WavePacket> linked_packets(const GroupDescriptor& g, int terms, std::mt19937_64& rng)
{
    auto f = random_packet(g, terms, rng);
    auto h = random_packet(g, terms, rng);
    std::normal_distribution<double> n(0.0, 1.0);
    int linked = 0;
    for (const auto& t : f.terms()) {
        if (linked++ == 2) break;
        h.add_term(g.inv(t.p), cplx{n(rng), n(rng)});
    }
    return {f, h};
}

}  // namespace

TEST_CASE("plane wave star products")
{
    const auto g = kappa_group(1.0, 1);
    const auto ep = WavePacket::plane_wave(g, {std::log(2.0), 1.0});
    const auto e0 = WavePacket::plane_wave(g, g.zero());
    CHECK(star(ep, e0).distance(ep) == 0.0);
    CHECK(star(e0, ep).distance(ep) == 0.0);
    const auto prod = star(ep, WavePacket::plane_wave(g, {0.0, 2.0}));
    REQUIRE(prod.terms().size() == 1);
    CHECK(prod.terms()[0].p[0] == doctest::Approx(std::log(2.0)));
    CHECK(prod.terms()[0].p[1] == doctest::Approx(2.0));
}

TEST_CASE("packets merge close momenta and prune zeros")
{
    const auto g = kappa_group(1.0, 1);
    WavePacket w(g);
    w.add_term(Momentum{0.1, 0.2}, 1.0);
    w.add_term(Momentum{0.1 + 1e-14, 0.2}, 2.0);
    REQUIRE(w.terms().size() == 1);
    CHECK(w.terms()[0].amplitude == cplx{3.0});
    w.add_term(Momentum{0.1, 0.2}, -3.0);
    CHECK(w.empty());
    CHECK_THROWS(w.add_term(Momentum{0.1}, 1.0));
    CHECK_THROWS(star(w, WavePacket(moyal_group(1.0))));
}

TEST_CASE("star is associative and dagger is an involutive antihomomorphism")
{
    std::mt19937_64 rng(7);
    for (const auto& [label, g] : qst::testing::preset_groups()) {
        CAPTURE(label);
        for (int t = 0; t < 20; ++t) {
            const auto a = random_packet(g, 3, rng), b = random_packet(g, 3, rng), c = random_packet(g, 3, rng);
            const auto lhs = star(star(a, b), c), rhs = star(a, star(b, c));
            CHECK(lhs.terms().size() == rhs.terms().size());
            CHECK(lhs.distance(rhs) < 1e-12);
            CHECK(dagger(dagger(a)).distance(a) < 1e-12);
            CHECK(dagger(star(a, b)).distance(star(dagger(b), dagger(a))) < 1e-12);
        }
    }
}

TEST_CASE("dagger on kappa plane waves")
{
    const auto g = kappa_group(1.0, 1);
    const auto d = dagger(WavePacket::plane_wave(g, {std::log(2.0), 1.0}, cplx{0, 1}));
    REQUIRE(d.terms().size() == 1);
    CHECK(d.terms()[0].p[0] == doctest::Approx(-std::log(2.0)));
    CHECK(d.terms()[0].p[1] == doctest::Approx(-2.0));
    CHECK(d.terms()[0].amplitude == cplx{0, -1});
}

TEST_CASE("generator eigenvalues")
{
    const auto g = kappa_group(1.0, 1);
    const auto e0 = WavePacket::plane_wave(g, g.zero());
    CHECK(act_E(1, e0).distance(e0) == 0.0);
    const auto ep = WavePacket::plane_wave(g, {std::log(2.0), 1.0});
    CHECK(act_X(0, ep).terms()[0].amplitude.real() == doctest::Approx(0.5));
    CHECK(act_X(1, ep).terms()[0].amplitude.real() == 1.0);
    CHECK(act_P(0, ep).terms()[0].amplitude.real() == doctest::Approx(std::log(2.0)));
    CHECK(act_E(2, ep).terms()[0].amplitude.real() == doctest::Approx(0.25));

    const auto far = kappa_group(1e9, 1);
    const Momentum p{0.7, 0.1};
    CHECK(generator_eigenvalue(far, {GeneratorKind::X, 0, 1}, p) == doctest::Approx(0.7).epsilon(1e-8));
    CHECK_THROWS(generator_eigenvalue(moyal_group(1.0), {GeneratorKind::E, 0, 1}, Momentum(5, 0.0)));
    CHECK_THROWS(generator_eigenvalue(g, {GeneratorKind::P, 2, 1}, p));
}

TEST_CASE("commutator of small plane waves reproduces the brackets")
{
    // (a+b) - (b+a) = i e^2 a b C + O(e^3) in momentum coordinates.
    for (const auto& [label, g] : qst::testing::preset_groups()) {
        if (g.law().ordering() == Ordering::sum) continue;
        CAPTURE(label);
        const auto& c = g.structure();
        const int n = g.dim();
        const double e = 1e-4;
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) {
                Momentum a(n, 0.0), b(n, 0.0);
                a[mu] = e;
                b[nu] = e;
                const auto ab = g.add(a, b), ba = g.add(b, a);
                for (int rho = 0; rho < n; ++rho) {
                    const double anti = (ab[rho] - ba[rho]) / (e * e);
                    CHECK(std::abs(cplx{0, -1} * anti - c(mu, nu, rho)) < 1e-3);
                }
            }
    }
}

TEST_CASE("integral of plane waves")
{
    const auto g = kappa_group(1.0, 1);
    const auto vol = integral(WavePacket::plane_wave(g, g.zero()));
    REQUIRE(vol.terms().size() == 1);
    CHECK(vol.terms()[0].on_shell);
    CHECK(vol.volume_coefficient({g.zero()}) == cplx{1.0});

    const Momentum p{0.4, 1.0};
    const auto q = g.inv(p);
    const auto s = integral_star(WavePacket::plane_wave(g, p), WavePacket::plane_wave(g, q));
    REQUIRE(s.terms().size() == 1);
    // Canonical rotation puts the smaller momentum first: q = (-0.4, ...) < p.
    CHECK(s.terms()[0].word.front() == q);
    CHECK(std::abs(s.terms()[0].amplitude - 1.0 / g.modular(q)) < 1e-15);

    const auto off = integral_star(WavePacket::plane_wave(g, p), WavePacket::plane_wave(g, Momentum{0.1, 0.0}));
    REQUIRE(off.terms().size() == 1);
    CHECK_FALSE(off.terms()[0].on_shell);
}

TEST_CASE("delta rotation rule")
{
    const auto g = kappa_group(2.0, 3);
    const Momentum p{-0.3, 0.5, 1.0, -1.0};
    const auto q = g.inv(p);
    DeltaSum direct(g), rotated(g);
    direct.add(1.0, {p, q});
    rotated.add(g.modular(p), {q, p});  // delta(p + q) = Delta(p) delta(q + p)
    CHECK(direct.equals(rotated));
    DeltaSum wrong(g);
    wrong.add(1.0, {q, p});
    CHECK_FALSE(direct.equals(wrong));
}

TEST_CASE("twisted trace holds on kappa packets and plain cyclicity fails")
{
    std::mt19937_64 rng(31);
    const auto g = kappa_group(1.0, 3);
    int plain_failures = 0;
    for (int t = 0; t < 100; ++t) {
        auto [f, h] = linked_packets(g, 5, rng);
        CHECK(twisted_trace_check(f, h));
        plain_failures += !cyclicity_check(f, h);
    }
    CHECK(plain_failures > 90);
    const auto e0 = WavePacket::plane_wave(g, g.zero());
    CHECK(twisted_trace_check(e0, e0));
}

TEST_CASE("unimodular groups are plainly cyclic")
{
    std::mt19937_64 rng(37);
    for (const auto& g : {rho_group(1.0), moyal_group(1.0), su2_group(1.0)}) {
        for (int t = 0; t < 50; ++t) {
            auto [f, h] = linked_packets(g, 5, rng);
            CHECK(cyclicity_check(f, h));
            CHECK(twisted_trace_check(f, h));
        }
    }
}

TEST_CASE("delta normal form is confluent under random rewrite orders")
{
    std::mt19937_64 rng(41);
    const auto g = kappa_group(1.0, 3);
    for (int t = 0; t < 200; ++t) {
        const int len = 2 + t % 4;
        std::vector<Momentum> word;
        for (int i = 0; i + 1 < len; ++i) word.push_back(qst::testing::random_momentum(g, rng));
        Momentum acc = g.zero();
        for (const auto& m : word) acc = g.add(acc, m);
        word.push_back(g.inv(acc));  // closes the word onto the support
        DeltaSum canonical(g), shuffled(g);
        canonical.add(1.0, word);
        shuffled.add_randomized(1.0, word, rng);
        CHECK(canonical.equals(shuffled, 1e-10));
    }
}

TEST_CASE("packet json round trip")
{
    std::mt19937_64 rng(43);
    const auto g = kappa_group(1.5, 3);
    const auto f = random_packet(g, 4, rng);
    const auto back = packet_from_json(to_json(f), g);
    CHECK(back.distance(f) == 0.0);
    CHECK_THROWS(packet_from_json(to_json(f), moyal_group(1.0)));
    CHECK_THROWS(packet_from_json(R"({"group":"kappa_minkowski","terms":[{"p":[1,2]}]})", g));
}
