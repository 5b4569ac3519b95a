#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qst/exact.hpp"
#include "qst/kappa_poincare.hpp"

namespace qst::hopf {

using exact::GaussianRational;

// Element of the n-fold tensor power of the polynomial algebra on `generators` commuting
// primitive letters X_u, as a power series in the deformation symbol truncated at `order`.
class TwistSeries {
public:
    // (power of the deformation symbol, exponents laid out slot-major)
    using Key = std::pair<int, std::vector<int>>;

    TwistSeries() : TwistSeries(1, 1, 0) {}
    TwistSeries(int slots, int generators, int order);
    static TwistSeries unit(int slots, int generators, int order);
    // X_u placed in one slot.
    static TwistSeries letter(int slots, int generators, int order, int slot, int u);

    int slots() const { return slots_; }
    int generators() const { return generators_; }
    int order() const { return order_; }
    const std::map<Key, GaussianRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    TwistSeries& add(int power, const std::vector<int>& exponents, const GaussianRational& c);
    TwistSeries& operator+=(const TwistSeries& o);
    TwistSeries& operator-=(const TwistSeries& o);
    TwistSeries& operator*=(const GaussianRational& c);
    friend TwistSeries operator+(TwistSeries a, const TwistSeries& b) { return a += b; }
    friend TwistSeries operator-(TwistSeries a, const TwistSeries& b) { return a -= b; }
    friend TwistSeries operator*(const TwistSeries& a, const TwistSeries& b);
    friend TwistSeries operator*(const GaussianRational& c, TwistSeries a) { return a *= c; }
    friend bool operator==(const TwistSeries&, const TwistSeries&) = default;

    // Throws std::domain_error unless the order-zero part is a nonzero scalar.
    TwistSeries inverse() const;
    // Requires every term to carry at least one power of the deformation symbol.
    TwistSeries exponential() const;

    // Hopf maps of the primitive algebra applied to one slot.
    TwistSeries coproduct_at(int slot) const;
    TwistSeries counit_at(int slot) const;
    TwistSeries antipode_at(int slot) const;
    // Multiplies slot `slot` into slot `slot + 1`.
    TwistSeries multiply_at(int slot) const;
    // Places slot s of this series in slot placement[s] of a series with `slots` slots.
    TwistSeries embed(int slots, const std::vector<int>& placement) const;

    // Substitutes X_u in slot s by values[s * generators + u]; entry n of the result is the
    // coefficient of deformation^n.
    std::vector<GaussianRational> evaluate(const std::vector<GaussianRational>& values) const;

    std::string to_string() const;

private:
    int slots_, generators_, order_;
    std::map<Key, GaussianRational> terms_;

    void require_compatible(const TwistSeries& o) const;
};

// F = exp(i h sum_uv M_uv X_u (x) X_v) with h the deformation symbol.
struct TwistSpec {
    int generators = 2;
    std::vector<std::vector<mpq_class>> matrix;
};

TwistSpec abelian_twist();                                               // exp(i h X (x) Y)
TwistSpec bilinear_twist(std::vector<std::vector<mpq_class>> matrix);   // Theta-type, any square M
TwistSpec trivial_twist(int generators);

inline constexpr int max_twist_order = 6;

TwistSeries twist_element(const TwistSpec& spec, int order = 4);

struct TwistReport {
    int order = 0;
    Residual cocycle;         // (F (x) 1)(Delta (x) id)F = (1 (x) F)(id (x) Delta)F
    Residual left_normalization, right_normalization;
    Residual semiclassical;   // F = 1 (x) 1 at order zero
    bool passed() const;
};

TwistReport twist_check(const TwistSeries& f);
TwistReport twist_check(const TwistSpec& spec, int order = 4);

struct TwistedStructures {
    int order = 0;
    std::vector<TwistSeries> coproduct;  // Delta^F(X_u)
    std::vector<TwistSeries> antipode;   // S^F(X_u) = chi S(X_u) chi^-1
    TwistSeries chi;                     // F_1 S(F_2)
    TwistSeries r_matrix;                // F_21 F^-1
    Residual twisted_antipode;           // m(S^F (x) id) Delta^F(X_u) = 0 for every u
    Residual triangularity;              // R_21 R = 1 (x) 1
    Residual yang_baxter;                // R_12 R_13 R_23 = R_23 R_13 R_12
    Residual braided_commutativity;      // on plane-wave eigenvalues, order by order
    bool passed() const;
};

// Braided commutativity is probed on a fixed set of rational plane-wave momenta, where
// X_u acts on e_a by i a_u.
TwistedStructures twisted_structures(const TwistSeries& f);
TwistedStructures twisted_structures(const TwistSpec& spec, int order = 4);

}  // namespace qst::hopf
