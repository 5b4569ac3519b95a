#include "qst/kappa_poincare.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace qst::hopf {

namespace {

using exact::GaussianRational;

constexpr std::uint8_t code(Letter l) { return static_cast<std::uint8_t>(l); }
constexpr bool is_exponential(std::uint8_t c) { return c >= code(Letter::E); }
constexpr bool is_boost(std::uint8_t c) { return c <= code(Letter::K3); }

const char* const kNames[letter_count] = {"K1", "K2", "K3", "J1", "J2", "J3", "P0", "P1", "P2", "P3", "E", "E^-1"};

int levi_civita(int j, int k, int l)
{
    if (j == k || k == l || j == l) return 0;
    return ((k - j + 3) % 3 == 1) ? 1 : -1;
}

int third(int j, int k) { return 3 - j - k; }

Coefficient i_over_kappa(long sign) { return Coefficient::symbol_power(-1, GaussianRational(0, sign)); }
Coefficient imaginary(mpq_class v) { return Coefficient(GaussianRational(0, std::move(v))); }
const Coefficient kOne{1};

struct WordHash {
    std::size_t operator()(const Word& w) const
    {
        return std::hash<std::string_view>{}(
            std::string_view(reinterpret_cast<const char*>(w.data()), w.size()));
    }
};

Monomial to_monomial(const Word& w)
{
    Monomial m;
    for (auto c : w) {
        if (c == code(Letter::E)) ++m.e_power;
        else if (c == code(Letter::Einv)) --m.e_power;
        else m.letters.push_back(c);
    }
    return m;
}

Word sorted_pair(Letter a, Letter b)
{
    Word w{code(a), code(b)};
    std::sort(w.begin(), w.end());
    return w;
}

std::string render(const Coefficient& c, const std::string& monomial)
{
    const std::string coef = c.to_string("kappa");
    if (monomial == "1") return "(" + coef + ")";
    if (coef == "1") return monomial;
    return "(" + coef + ") " + monomial;
}

// Cartesian expansion of per-slot elements into a tensor.
void accumulate(Tensor& out, const std::vector<Element>& slots, const Coefficient& scale)
{
    std::vector<Monomial> key(slots.size());
    auto recurse = [&](auto& self, std::size_t s, const Coefficient& c) -> void {
        if (s == slots.size()) {
            out.add(key, c);
            return;
        }
        for (const auto& [m, mc] : slots[s].terms()) {
            key[s] = m;
            self(self, s + 1, c * mc);
        }
    };
    recurse(recurse, 0, scale);
}

Residual compare(const auto& lhs, const auto& rhs)
{
    if (lhs == rhs) return {};
    return {false, (lhs - rhs).to_string()};
}

}  // namespace

std::vector<Letter> generators()
{
    std::vector<Letter> out;
    for (int c = 0; c < code(Letter::Einv); ++c) out.push_back(static_cast<Letter>(c));
    return out;
}

std::string letter_name(Letter l) { return kNames[code(l)]; }
Letter boost(int j) { return static_cast<Letter>(code(Letter::K1) + j); }
Letter rotation(int j) { return static_cast<Letter>(code(Letter::J1) + j); }
Letter momentum(int j) { return static_cast<Letter>(code(Letter::P1) + j); }

Word word(std::initializer_list<Letter> letters)
{
    Word w;
    for (auto l : letters) w.push_back(code(l));
    return w;
}

Word monomial_word(const Monomial& m)
{
    Word w = m.letters;
    w.append(static_cast<std::size_t>(std::abs(m.e_power)), m.e_power > 0 ? code(Letter::E) : code(Letter::Einv));
    return w;
}

std::string Monomial::to_string() const
{
    std::string s;
    for (auto c : letters) s += (s.empty() ? "" : " ") + std::string(kNames[c]);
    if (e_power != 0) s += (s.empty() ? "E" : " E") + (e_power == 1 ? std::string() : "^" + std::to_string(e_power));
    return s.empty() ? "1" : s;
}

// ---- Element ----

Element::Element(Coefficient c) { add(Monomial{}, c); }

Element Element::monomial(Monomial m, Coefficient c)
{
    Element e;
    e.add(m, c);
    return e;
}

Coefficient Element::coefficient(const Monomial& m) const
{
    const auto it = terms_.find(m);
    return it == terms_.end() ? Coefficient{} : it->second;
}

Element& Element::add(const Monomial& m, const Coefficient& c)
{
    if (c.is_zero()) return *this;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

Element& Element::operator+=(const Element& o)
{
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

Element& Element::operator-=(const Element& o)
{
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

Element& Element::operator*=(const Coefficient& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, mc] : terms_) mc *= c;
    return *this;
}

int Element::degree() const
{
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.letters.size()));
    return d;
}

std::string Element::to_string() const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) s += (s.empty() ? "" : " + ") + render(c, m.to_string());
    return s;
}

// ---- Tensor ----

Tensor Tensor::pure(const std::vector<Element>& factors)
{
    Tensor t(static_cast<int>(factors.size()));
    accumulate(t, factors, kOne);
    return t;
}

Tensor& Tensor::add(const std::vector<Monomial>& key, const Coefficient& c)
{
    if (static_cast<int>(key.size()) != slots_) throw std::invalid_argument("tensor slot count mismatch");
    if (c.is_zero()) return *this;
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

Tensor& Tensor::operator+=(const Tensor& o)
{
    if (o.slots_ != slots_) throw std::invalid_argument("tensor slot count mismatch");
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& o)
{
    if (o.slots_ != slots_) throw std::invalid_argument("tensor slot count mismatch");
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
}

std::string Tensor::to_string() const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
        std::string factors;
        for (const auto& m : k) factors += (factors.empty() ? "" : " (x) ") + m.to_string();
        s += (s.empty() ? "" : " + ") + render(c, factors);
    }
    return s;
}

// ---- Conventions ----

Conventions Conventions::printed() { return {}; }

Conventions Conventions::consistent()
{
    Conventions c;
    c.spatial_metric = -1;
    c.momentum_rotation = +1;
    c.boost_coproduct = +1;
    return c;
}

std::string Conventions::to_string() const
{
    std::ostringstream os;
    os << "spatial_metric=" << spatial_metric << " momentum_square=" << momentum_square
       << " momentum_rotation=" << momentum_rotation << " boost_coproduct=" << boost_coproduct
       << " boost_antipode=" << boost_antipode << " antipode_order=" << (antipode_momentum_first ? "PJ" : "JP");
    return os.str();
}

bool AxiomReport::passed() const
{
    return coassociativity.passed && left_counit.passed && right_counit.passed && left_antipode.passed &&
           right_antipode.passed;
}

bool BialgebraReport::passed() const { return holds.passed && coproduct.passed && counit.passed && antipode.passed; }

// ---- engine ----

struct KappaPoincare::Cache {
    std::mutex mutex;
    std::unordered_map<Word, Element, WordHash> normal;
    std::map<Monomial, Tensor> coproduct;
};

KappaPoincare::KappaPoincare(Conventions conventions)
    : conventions_(conventions), cache_(std::make_unique<Cache>())
{
    auto& br = brackets_;
    auto at = [&](Letter a, Letter b) -> Element& { return br[code(a) * letter_count + code(b)]; };
    const Conventions& cv = conventions_;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const int l = third(j, k);
            const int eps = levi_civita(j, k, l);
            if (j != k) {
                // [J_j, K_k] = i eps K_l ; [J_j, J_k] = i eps J_l ; [K_j, K_k] = -i eps J_l
                at(rotation(j), boost(k)) = imaginary(eps) * generator(boost(l));
                if (j > k) {
                    at(rotation(j), rotation(k)) = imaginary(eps) * generator(rotation(l));
                    at(boost(j), boost(k)) = imaginary(-eps) * generator(rotation(l));
                }
                at(momentum(j), rotation(k)) = imaginary(cv.momentum_rotation * eps) * generator(momentum(l));
            }
            // [P_j, K_k] = (i/2) eta_jk (kappa (1 - E^2) + (1/kappa) P_l P^l) + (i/kappa) P_j P_k
            Element pk = Element::monomial({sorted_pair(momentum(j), momentum(k)), 0}, i_over_kappa(1));
            if (j == k) {
                const mpq_class half(cv.spatial_metric, 2);
                pk.add({}, Coefficient::symbol_power(1, GaussianRational(0, half)));
                pk.add({{}, 2}, Coefficient::symbol_power(1, GaussianRational(0, -half)));
                for (int m = 0; m < 3; ++m)
                    pk.add({sorted_pair(momentum(m), momentum(m)), 0},
                           Coefficient::symbol_power(-1, GaussianRational(0, half * cv.momentum_square)));
            }
            at(momentum(j), boost(k)) = pk;
        }
    for (int j = 0; j < 3; ++j) at(Letter::P0, boost(j)) = imaginary(-1) * generator(momentum(j));
}

KappaPoincare::~KappaPoincare() = default;
KappaPoincare::KappaPoincare(KappaPoincare&&) noexcept = default;
KappaPoincare& KappaPoincare::operator=(KappaPoincare&&) noexcept = default;

Element KappaPoincare::generator(Letter l) const { return Element::monomial(to_monomial(Word{code(l)})); }

std::vector<std::size_t> KappaPoincare::reducible_positions(const Word& w) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const auto a = w[i], b = w[i + 1];
        const bool reducible = is_exponential(a) ? (!is_exponential(b) || a != b) : (!is_exponential(b) && a > b);
        if (reducible) out.push_back(i);
    }
    return out;
}

// Rewrites the pair at pos using ab = ba + [a, b] or the exponential rules.
std::vector<std::pair<Coefficient, Word>> KappaPoincare::rewrite(const Word& w, std::size_t pos) const
{
    const auto a = w[pos], b = w[pos + 1];
    const Word prefix = w.substr(0, pos), suffix = w.substr(pos + 2);
    std::vector<std::pair<Coefficient, Word>> out;
    if (is_exponential(a) && is_exponential(b)) {
        out.emplace_back(kOne, prefix + suffix);
        return out;
    }
    out.emplace_back(kOne, prefix + Word{b, a} + suffix);
    if (is_exponential(a)) {
        // E K_j = K_j E + (i/kappa) P_j E and E^-1 K_j = K_j E^-1 - (i/kappa) P_j E^-1
        if (is_boost(b)) {
            const long sign = a == code(Letter::E) ? 1 : -1;
            out.emplace_back(i_over_kappa(sign), prefix + Word{code(momentum(b)), a} + suffix);
        }
        return out;
    }
    for (const auto& [m, c] : brackets_[a * letter_count + b].terms())
        out.emplace_back(c, prefix + monomial_word(m) + suffix);
    return out;
}

Element KappaPoincare::normal_order(const Word& w) const
{
    {
        std::lock_guard lock(cache_->mutex);
        if (auto it = cache_->normal.find(w); it != cache_->normal.end()) return it->second;
    }
    const auto positions = reducible_positions(w);
    Element out;
    if (positions.empty()) out = Element::monomial(to_monomial(w));
    else
        for (const auto& [c, next] : rewrite(w, positions.front())) out += c * normal_order(next);
    std::lock_guard lock(cache_->mutex);
    cache_->normal.emplace(w, out);
    return out;
}

Element KappaPoincare::normal_order_random(const Word& w, std::mt19937_64& rng) const
{
    const auto positions = reducible_positions(w);
    if (positions.empty()) return Element::monomial(to_monomial(w));
    std::uniform_int_distribution<std::size_t> pick(0, positions.size() - 1);
    Element out;
    for (const auto& [c, next] : rewrite(w, positions[pick(rng)])) out += c * normal_order_random(next, rng);
    return out;
}

Element KappaPoincare::multiply(const Element& a, const Element& b) const
{
    Element out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) out += (ca * cb) * normal_order(monomial_word(ma) + monomial_word(mb));
    return out;
}

Element KappaPoincare::commutator(const Element& a, const Element& b) const { return multiply(a, b) - multiply(b, a); }

Tensor KappaPoincare::multiply(const Tensor& a, const Tensor& b) const
{
    if (a.slots() != b.slots()) throw std::invalid_argument("tensor slot count mismatch");
    Tensor out(a.slots());
    std::vector<Element> slots(a.slots());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            for (int s = 0; s < a.slots(); ++s) slots[s] = normal_order(monomial_word(ka[s]) + monomial_word(kb[s]));
            accumulate(out, slots, ca * cb);
        }
    return out;
}

Tensor KappaPoincare::letter_coproduct(Letter l) const
{
    const Element one(kOne), e = generator(Letter::E), g = generator(l);
    const auto c = code(l);
    if (l == Letter::E || l == Letter::Einv) return Tensor::pure({g, g});
    if (l >= Letter::J1 && l <= Letter::P0) return Tensor::pure({g, one}) + Tensor::pure({one, g});
    if (l >= Letter::P1) return Tensor::pure({g, one}) + Tensor::pure({e, g});
    // Delta K_j = K_j (x) 1 + E (x) K_j + sign (1/kappa) eps_jkl P_k (x) J_l
    Tensor t = Tensor::pure({g, one}) + Tensor::pure({e, g});
    const int j = c - code(Letter::K1);
    for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m)
            if (const int eps = levi_civita(j, k, m); eps != 0)
                t += Tensor::pure({Coefficient::symbol_power(-1, eps * conventions_.boost_coproduct) *
                                       generator(momentum(k)),
                                   generator(rotation(m))});
    return t;
}

Element KappaPoincare::letter_antipode(Letter l) const
{
    const Element g = generator(l), einv = generator(Letter::Einv);
    if (l == Letter::E) return einv;
    if (l == Letter::Einv) return generator(Letter::E);
    if (l >= Letter::J1 && l <= Letter::P0) return Coefficient(-1) * g;
    if (l >= Letter::P1) return Coefficient(-1) * multiply(einv, g);
    // S(K_j) = -E^-1 (K_j + sign (1/kappa) eps_jkl P_k J_l)
    Element inner = g;
    const int j = code(l) - code(Letter::K1);
    for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m)
            if (const int eps = levi_civita(j, k, m); eps != 0) {
                const Element p = generator(momentum(k)), r = generator(rotation(m));
                inner += Coefficient::symbol_power(-1, eps * conventions_.boost_antipode) *
                         (conventions_.antipode_momentum_first ? multiply(p, r) : multiply(r, p));
            }
    return Coefficient(-1) * multiply(einv, inner);
}

Tensor KappaPoincare::coproduct(const Element& e) const
{
    Tensor out(2);
    for (const auto& [m, c] : e.terms()) {
        std::optional<Tensor> dm;
        {
            std::lock_guard lock(cache_->mutex);
            if (auto it = cache_->coproduct.find(m); it != cache_->coproduct.end()) dm = it->second;
        }
        if (!dm) {
            Tensor acc = Tensor::pure({Element(kOne), Element(kOne)});
            for (auto l : monomial_word(m)) acc = multiply(acc, letter_coproduct(static_cast<Letter>(l)));
            std::lock_guard lock(cache_->mutex);
            dm = cache_->coproduct.emplace(m, acc).first->second;
        }
        for (const auto& [k, kc] : dm->terms()) out.add(k, c * kc);
    }
    return out;
}

Coefficient KappaPoincare::counit(const Element& e) const
{
    Coefficient out;
    for (const auto& [m, c] : e.terms())
        if (m.letters.empty()) out += c;
    return out;
}

Element KappaPoincare::antipode(const Element& e) const
{
    Element out;
    for (const auto& [m, c] : e.terms()) {
        Element acc(kOne);
        const Word w = monomial_word(m);
        for (auto it = w.rbegin(); it != w.rend(); ++it) acc = multiply(acc, letter_antipode(static_cast<Letter>(*it)));
        out += c * acc;
    }
    return out;
}

Tensor KappaPoincare::coproduct_at(const Tensor& t, int slot) const
{
    if (slot < 0 || slot >= t.slots()) throw std::out_of_range("tensor slot");
    Tensor out(t.slots() + 1);
    for (const auto& [k, c] : t.terms()) {
        const Tensor dm = coproduct(Element::monomial(k[slot]));
        for (const auto& [dk, dc] : dm.terms()) {
            std::vector<Monomial> key(k.begin(), k.begin() + slot);
            key.insert(key.end(), dk.begin(), dk.end());
            key.insert(key.end(), k.begin() + slot + 1, k.end());
            out.add(key, c * dc);
        }
    }
    return out;
}

Tensor KappaPoincare::counit_at(const Tensor& t, int slot) const
{
    if (slot < 0 || slot >= t.slots()) throw std::out_of_range("tensor slot");
    Tensor out(t.slots() - 1);
    for (const auto& [k, c] : t.terms()) {
        if (!k[slot].letters.empty()) continue;
        std::vector<Monomial> key = k;
        key.erase(key.begin() + slot);
        out.add(key, c);
    }
    return out;
}

Element KappaPoincare::multiply_with_antipode(const Tensor& t, int slot) const
{
    if (t.slots() != 2 || (slot != 0 && slot != 1)) throw std::invalid_argument("expects a two-slot tensor");
    Element out;
    for (const auto& [k, c] : t.terms()) {
        Element left = Element::monomial(k[0]), right = Element::monomial(k[1]);
        (slot == 0 ? left : right) = antipode(slot == 0 ? left : right);
        out += c * multiply(left, right);
    }
    return out;
}

AxiomReport KappaPoincare::axioms(const Element& e, std::string name) const
{
    AxiomReport r;
    r.name = std::move(name);
    const Tensor d = coproduct(e);
    r.coassociativity = compare(coproduct_at(d, 0), coproduct_at(d, 1));
    const Tensor self = Tensor::pure({e});
    r.left_counit = compare(counit_at(d, 0), self);
    r.right_counit = compare(counit_at(d, 1), self);
    const Element unit(counit(e));
    r.left_antipode = compare(multiply_with_antipode(d, 0), unit);
    r.right_antipode = compare(multiply_with_antipode(d, 1), unit);
    return r;
}

std::vector<Relation> KappaPoincare::relations() const
{
    std::vector<Relation> out;
    const auto gens = generators();
    for (std::size_t x = 0; x < gens.size(); ++x)
        for (std::size_t y = x + 1; y < gens.size(); ++y) {
            const Letter a = gens[x], b = gens[y];
            Relation r{"[" + letter_name(a) + "," + letter_name(b) + "]", a, b, {}};
            if (b == Letter::E) {
                // [K_j, E] = -(i/kappa) P_j E
                if (is_boost(code(a)))
                    r.rhs = Element::monomial({Word{code(momentum(code(a)))}, 1}, i_over_kappa(-1));
            } else {
                r.rhs = Coefficient(-1) * brackets_[code(b) * letter_count + code(a)];
            }
            out.push_back(std::move(r));
        }
    return out;
}

BialgebraReport KappaPoincare::bialgebra(const Relation& r) const
{
    BialgebraReport rep;
    rep.name = r.name;
    const Element a = generator(r.a), b = generator(r.b);
    rep.holds = compare(commutator(a, b), r.rhs);
    const Tensor da = coproduct(a), db = coproduct(b);
    rep.coproduct = compare(multiply(da, db) - multiply(db, da), coproduct(r.rhs));
    const Coefficient eps = counit(r.rhs);
    rep.counit = eps.is_zero() ? Residual{} : Residual{false, eps.to_string("kappa")};
    const Element sa = antipode(a), sb = antipode(b);
    rep.antipode = compare(antipode(r.rhs), commutator(sb, sa));
    return rep;
}

ConfluenceReport KappaPoincare::confluence() const
{
    ConfluenceReport rep;
    for (std::uint8_t a = 0; a < letter_count; ++a)
        for (std::uint8_t b = 0; b < letter_count; ++b)
            for (std::uint8_t c = 0; c < letter_count; ++c) {
                const Word w{a, b, c};
                const auto pos = reducible_positions(w);
                if (pos.size() < 2) continue;
                ++rep.overlaps_checked;
                Element first, second;
                for (const auto& [k, next] : rewrite(w, 0)) first += k * normal_order(next);
                for (const auto& [k, next] : rewrite(w, 1)) second += k * normal_order(next);
                if (first != second)
                    rep.failures.push_back(std::string(kNames[a]) + " " + kNames[b] + " " + kNames[c] + ": " +
                                           (first - second).to_string());
            }
    return rep;
}

Element KappaPoincare::exponential_series(int order) const
{
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
    Element out;
    mpq_class factorial = 1;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) factorial *= n;
        const mpq_class c = mpq_class((n % 2 == 0) ? 1 : -1) / factorial;
        out.add({Word(static_cast<std::size_t>(n), code(Letter::P0)), 0}, Coefficient::symbol_power(-n, c));
    }
    return out;
}

Element KappaPoincare::series_defect(int j, int order) const
{
    if (order < 1) throw std::invalid_argument("series order must be at least one");
    const Element k = generator(boost(j));
    const Element lhs = commutator(k, exponential_series(order));
    return lhs + multiply(i_over_kappa(1) * generator(momentum(j)), exponential_series(order - 1));
}

}  // namespace qst::hopf
