#pragma once

#include <compare>
#include <map>
#include <string>

#include <gmpxx.h>

namespace qst::exact {

// a + b i with a, b exact rationals.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }
    GaussianRational(long re) : re_(re), im_(0) {}

    static GaussianRational i() { return {0, 1}; }

    const mpq_class& real() const { return re_; }
    const mpq_class& imag() const { return im_; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    GaussianRational inverse() const;

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

// Laurent polynomial in a formal symbol (kappa for the Hopf engine) with Gaussian rational
// coefficients. Zero coefficients are never stored.
class Laurent {
public:
    Laurent() = default;
    Laurent(GaussianRational c, int power = 0);
    Laurent(long c) : Laurent(GaussianRational(c)) {}

    static Laurent symbol_power(int power, GaussianRational c = 1) { return {std::move(c), power}; }

    const std::map<int, GaussianRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    GaussianRational coefficient(int power) const;
    int min_power() const;
    int max_power() const;

    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const Laurent& o);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    Laurent operator-() const;

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

    // Rendered with the given symbol name, e.g. "(1/2)i k^-1 + 3".
    std::string to_string(const std::string& symbol = "k") const;

private:
    std::map<int, GaussianRational> terms_;
};

}  // namespace qst::exact
