#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qst/moyal_matrix.hpp"

using namespace qst::moyal;

namespace {

TruncatedElement random_element(int n, double theta, std::mt19937_64& rng)
{
    std::normal_distribution<double> d(0.0, 1.0);
    TruncatedElement e(n, theta);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) e.set(m, k, {d(rng), d(rng)});
    return e;
}

// Plain triple loop, independent of the library's product.
TruncatedElement naive_product(const TruncatedElement& a, const TruncatedElement& b)
{
    const int n = a.truncation();
    TruncatedElement out(n, a.theta());
    for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) s += a(m, k) * b(k, l);
            out.set(m, l, s);
        }
    return out;
}

}  // namespace

TEST_CASE("basis product rules")
{
    const MatrixBasis b(32, 0.5);
    REQUIRE(b.product({0, 1}, {1, 2}).has_value());
    CHECK(*b.product({0, 1}, {1, 2}) == BasisIndex{0, 2});
    CHECK_FALSE(b.product({0, 1}, {0, 2}).has_value());
    CHECK(b.dagger({3, 7}) == BasisIndex{7, 3});
    CHECK_THROWS_AS(b.product({0, 32}, {1, 2}), std::out_of_range);
    CHECK_THROWS_AS(b.element({-1, 0}), std::out_of_range);
    CHECK_THROWS(MatrixBasis(0, 1.0));
    CHECK_THROWS(MatrixBasis(4, -1.0));

    // Element-level rules agree with the index rules for every pair at small N.
    const MatrixBasis s(4, 1.0);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const auto prod = star(s.element({m, n}), s.element({k, l}));
                    const auto expected = n == k ? s.element({m, l}) : s.zero();
                    CHECK(prod.distance(expected) == 0.0);
                }
}

TEST_CASE("truncated star is matrix multiplication")
{
    std::mt19937_64 rng(3);
    const int n = 32;
    const MatrixBasis basis(n, 1.0);
    for (int t = 0; t < 5; ++t) {
        const auto a = random_element(n, 1.0, rng), b = random_element(n, 1.0, rng), c = random_element(n, 1.0, rng);
        CHECK(star(a, b).distance(naive_product(a, b)) < 1e-12);
        CHECK(star(star(a, b), c).distance(star(a, star(b, c))) < 1e-12);
        CHECK(star(basis.unit(), a).distance(a) == 0.0);
        CHECK(star(a, basis.unit()).distance(a) == 0.0);
        CHECK(dagger(star(a, b)).distance(star(dagger(b), dagger(a))) < 1e-12);
        CHECK(dagger(dagger(a)).distance(a) == 0.0);
    }
    CHECK_THROWS(star(TruncatedElement(4, 1.0), TruncatedElement(5, 1.0)));
    CHECK_THROWS(star(TruncatedElement(4, 1.0), TruncatedElement(4, 2.0)));
    CHECK_THROWS(TruncatedElement(2, 1.0, std::vector<cplx>(3)));
    CHECK_THROWS(TruncatedElement(2, 1.0).set(0, 0, cplx{NAN, 0.0}));
}

TEST_CASE("trace pairing")
{
    const double theta = 0.7;
    const MatrixBasis b(8, theta);
    const double unit = 2.0 * std::numbers::pi * theta;
    CHECK(std::abs(trace_pairing(b.element({0, 1}), b.element({0, 1})) - unit) < 1e-15);
    CHECK(trace_pairing(b.element({0, 1}), b.element({1, 0})) == cplx{0.0});
    CHECK(std::abs(trace_pairing(b.element({2, 3}, cplx{0, 2}), b.element({2, 3}, 3.0)) - cplx{0, -6} * unit) <
          1e-14);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_element(8, theta, rng), c = random_element(8, theta, rng);
        const cplx aa = trace_pairing(a, a);
        CHECK(aa.real() > 0.0);
        CHECK(std::abs(aa.imag()) < 1e-12);
        // Hermitian symmetry of the pairing.
        CHECK(std::abs(trace_pairing(a, c) - std::conj(trace_pairing(c, a))) < 1e-12);
    }
}

TEST_CASE("diagonal family is a partition of unity")
{
    const auto r = partition_check(32, 1.0, 16, 9);
    CHECK(r.truncation == 32);
    CHECK(r.positivity_error == 0.0);
    CHECK(r.unity_error == 0.0);
    CHECK(r.commutation_error == 0.0);
    CHECK(r.product_family_error == 0.0);
    CHECK(r.passed());

    const MatrixBasis b(32, 1.0);
    for (int m = 0; m < 32; ++m) CHECK(star(b.element({m, 0}), b.element({0, m})).distance(b.element({m, m})) == 0.0);
    CHECK(star(b.element({1, 1}), b.element({2, 2})).distance(b.zero()) == 0.0);
    CHECK(star(b.element({2, 2}), b.element({1, 1})).distance(b.zero()) == 0.0);
}
