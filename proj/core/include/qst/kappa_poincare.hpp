#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qst/exact.hpp"

namespace qst::hopf {

using Coefficient = exact::Laurent;  // Laurent polynomial in kappa

// Letters of the bicrossproduct basis in three spatial dimensions. The enum order is the
// normal order; E and its inverse share the last rank and never swap with each other.
enum class Letter : std::uint8_t { K1, K2, K3, J1, J2, J3, P0, P1, P2, P3, E, Einv };
inline constexpr int spatial_dim = 3;
inline constexpr int letter_count = 12;

// The 3d+2 algebra generators (E inverse is not counted).
std::vector<Letter> generators();
std::string letter_name(Letter l);

Letter boost(int j);     // j in 0..2
Letter rotation(int j);
Letter momentum(int j);  // spatial

// Word of letters as an unnormalised product.
using Word = std::basic_string<std::uint8_t>;
Word word(std::initializer_list<Letter> letters);

// Sorted non-E letters followed by E^e_power.
struct Monomial {
    Word letters;
    int e_power = 0;
    auto operator<=>(const Monomial&) const = default;
    std::string to_string() const;
};

class Element {
public:
    Element() = default;
    Element(Coefficient c);  // c times the unit
    static Element monomial(Monomial m, Coefficient c = 1);

    const std::map<Monomial, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Coefficient coefficient(const Monomial& m) const;

    Element& add(const Monomial& m, const Coefficient& c);
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Coefficient& c);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Coefficient& c, Element a) { return a *= c; }
    friend bool operator==(const Element&, const Element&) = default;

    int degree() const;  // largest number of non-E letters
    std::string to_string() const;

private:
    std::map<Monomial, Coefficient> terms_;
};

// Element of the n-fold tensor power; each slot is a normal-ordered monomial.
class Tensor {
public:
    explicit Tensor(int slots) : slots_(slots) {}
    static Tensor pure(const std::vector<Element>& factors);

    int slots() const { return slots_; }
    const std::map<std::vector<Monomial>, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Tensor& add(const std::vector<Monomial>& key, const Coefficient& c);
    Tensor& operator+=(const Tensor& o);
    Tensor& operator-=(const Tensor& o);
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend bool operator==(const Tensor&, const Tensor&) = default;

    std::string to_string() const;

private:
    int slots_;
    std::map<std::vector<Monomial>, Coefficient> terms_;
};

// Sign choices left implicit by the printed presentation. `printed()` reproduces the
// formulas letter for letter; `consistent()` is the choice under which the rewrite
// system is confluent and every Hopf identity holds.
struct Conventions {
    int spatial_metric = +1;       // eta_jk = spatial_metric * delta_jk
    int momentum_square = +1;      // P_l P^l = momentum_square * sum_l P_l P_l
    int momentum_rotation = -1;    // [P_j, J_k] = momentum_rotation * i eps_jkl P_l
    int boost_coproduct = -1;      // sign of the (1/kappa) eps P (x) J term in Delta(K_j)
    int boost_antipode = -1;       // sign of the (1/kappa) eps P J term inside S(K_j)
    bool antipode_momentum_first = true;  // P_k J_l rather than J_l P_k inside S(K_j)

    static Conventions printed();
    static Conventions consistent();
    std::string to_string() const;
    friend bool operator==(const Conventions&, const Conventions&) = default;
};

struct Residual {
    bool passed = true;
    std::string residual;  // rendered difference when the check fails
};

struct AxiomReport {
    std::string name;
    Residual coassociativity, left_counit, right_counit, left_antipode, right_antipode;
    bool passed() const;
};

// One bracket [A, B] = rhs of the presentation with its Hopf compatibility checks.
struct Relation {
    std::string name;
    Letter a, b;
    Element rhs;
};

struct BialgebraReport {
    std::string name;
    Residual holds;       // the normal-ordered commutator equals rhs
    Residual coproduct;   // [Delta A, Delta B] = Delta(rhs)
    Residual counit;      // eps(rhs) = 0
    Residual antipode;    // S(rhs) = [S B, S A]
    bool passed() const;
};

struct ConfluenceReport {
    int overlaps_checked = 0;
    std::vector<std::string> failures;  // words whose two reductions disagree
    bool passed() const { return failures.empty(); }
};

// kappa-Poincare algebra in the bicrossproduct basis with E = exp(-P0/kappa) treated as an
// independent letter. Normal forms are cached; the engine is safe to share across threads.
class KappaPoincare {
public:
    explicit KappaPoincare(Conventions conventions = Conventions::consistent());
    ~KappaPoincare();
    KappaPoincare(KappaPoincare&&) noexcept;
    KappaPoincare& operator=(KappaPoincare&&) noexcept;

    const Conventions& conventions() const { return conventions_; }

    Element generator(Letter l) const;
    Element normal_order(const Word& w) const;
    // Same rewrite rules applied at uniformly random reducible positions, uncached.
    Element normal_order_random(const Word& w, std::mt19937_64& rng) const;

    Element multiply(const Element& a, const Element& b) const;
    Element commutator(const Element& a, const Element& b) const;
    Tensor multiply(const Tensor& a, const Tensor& b) const;

    Tensor coproduct(const Element& e) const;
    Coefficient counit(const Element& e) const;
    Element antipode(const Element& e) const;

    // Delta applied to one slot of a tensor, raising the slot count by one.
    Tensor coproduct_at(const Tensor& t, int slot) const;
    // Counit applied to one slot, lowering the slot count by one.
    Tensor counit_at(const Tensor& t, int slot) const;
    // Antipode on one slot (0 or 1) of a two-slot tensor, then multiplication.
    Element multiply_with_antipode(const Tensor& t, int slot) const;

    AxiomReport axioms(const Element& e, std::string name) const;
    AxiomReport axioms(Letter l) const { return axioms(generator(l), letter_name(l)); }

    // Every bracket of the presentation over all index pairs, plus the derived [K_j, P0].
    std::vector<Relation> relations() const;
    BialgebraReport bialgebra(const Relation& r) const;

    // Resolves every overlap of two rewrite rules on three-letter words both ways.
    ConfluenceReport confluence() const;

    // Degree-N truncation of exp(-P0/kappa).
    Element exponential_series(int order) const;
    // [K_j, series_N] + (i/kappa) P_j series_{N-1}; zero when E and exp(-P0/kappa) agree.
    Element series_defect(int j, int order) const;

private:
    struct Cache;
    Conventions conventions_;
    std::array<Element, letter_count * letter_count> brackets_;  // [a, b] for a > b
    std::unique_ptr<Cache> cache_;

    std::vector<std::pair<Coefficient, Word>> rewrite(const Word& w, std::size_t pos) const;
    std::vector<std::size_t> reducible_positions(const Word& w) const;
    Tensor letter_coproduct(Letter l) const;
    Element letter_antipode(Letter l) const;
};

Word monomial_word(const Monomial& m);

}  // namespace qst::hopf
