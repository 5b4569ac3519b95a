#include "qst/twist.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qst::hopf {

namespace {

mpq_class binomial(int n, int k)
{
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return mpq_class(out);
}

GaussianRational power(const GaussianRational& x, int n)
{
    GaussianRational out(1);
    for (int k = 0; k < n; ++k) out *= x;
    return out;
}

Residual compare(const TwistSeries& lhs, const TwistSeries& rhs)
{
    if (lhs == rhs) return {};
    return {false, (lhs - rhs).to_string()};
}

// Rational plane-wave momenta for the braided commutativity probe.
std::vector<std::pair<std::vector<mpq_class>, std::vector<mpq_class>>> probe_momenta(int generators)
{
    std::vector<std::pair<std::vector<mpq_class>, std::vector<mpq_class>>> out(3);
    for (int u = 0; u < generators; ++u) {
        out[0].first.emplace_back(u + 1, 2);
        out[0].second.emplace_back(1 - 2 * u, 3);
        out[1].first.emplace_back(-3 + u, 1);
        out[1].second.emplace_back(2, 5 + u);
        out[2].first.emplace_back(7, 4 + 3 * u);
        out[2].second.emplace_back(-5 * (u % 2) + 1, 2);
    }
    return out;
}

void check_order(int order)
{
    if (order < 0 || order > max_twist_order)
        throw std::invalid_argument("twist order must lie in [0, " + std::to_string(max_twist_order) + "]");
}

}  // namespace

TwistSeries::TwistSeries(int slots, int generators, int order) : slots_(slots), generators_(generators), order_(order)
{
    if (slots < 1 || generators < 1 || order < 0) throw std::invalid_argument("invalid twist series shape");
}

TwistSeries TwistSeries::unit(int slots, int generators, int order)
{
    TwistSeries t(slots, generators, order);
    t.add(0, std::vector<int>(slots * generators, 0), 1);
    return t;
}

TwistSeries TwistSeries::letter(int slots, int generators, int order, int slot, int u)
{
    TwistSeries t(slots, generators, order);
    std::vector<int> e(slots * generators, 0);
    e.at(slot * generators + u) = 1;
    t.add(0, e, 1);
    return t;
}

void TwistSeries::require_compatible(const TwistSeries& o) const
{
    if (o.slots_ != slots_ || o.generators_ != generators_ || o.order_ != order_)
        throw std::invalid_argument("twist series shapes differ");
}

TwistSeries& TwistSeries::add(int power, const std::vector<int>& exponents, const GaussianRational& c)
{
    if (static_cast<int>(exponents.size()) != slots_ * generators_) throw std::invalid_argument("exponent layout");
    if (power > order_ || c.is_zero()) return *this;
    auto [it, fresh] = terms_.try_emplace({power, exponents}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

TwistSeries& TwistSeries::operator+=(const TwistSeries& o)
{
    require_compatible(o);
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
}

TwistSeries& TwistSeries::operator-=(const TwistSeries& o)
{
    require_compatible(o);
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
}

TwistSeries& TwistSeries::operator*=(const GaussianRational& c)
{
    if (c.is_zero()) terms_.clear();
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

TwistSeries operator*(const TwistSeries& a, const TwistSeries& b)
{
    a.require_compatible(b);
    TwistSeries out(a.slots_, a.generators_, a.order_);
    std::vector<int> e(a.slots_ * a.generators_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            if (ka.first + kb.first > a.order_) continue;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ka.second[i] + kb.second[i];
            out.add(ka.first + kb.first, e, ca * cb);
        }
    return out;
}

TwistSeries TwistSeries::inverse() const
{
    const std::vector<int> zero(slots_ * generators_, 0);
    GaussianRational c0;
    for (const auto& [k, c] : terms_) {
        if (k.first != 0) continue;
        if (k.second != zero) throw std::domain_error("order-zero part is not a scalar");
        c0 = c;
    }
    if (c0.is_zero()) throw std::domain_error("series has zero constant term");
    // F = c0 (1 + G) with G of order >= 1, so F^-1 = c0^-1 sum_n (-G)^n terminates.
    TwistSeries g = c0.inverse() * *this - unit(slots_, generators_, order_);
    TwistSeries term = unit(slots_, generators_, order_), sum = term;
    for (int n = 1; n <= order_; ++n) {
        term = term * (GaussianRational(-1) * g);
        sum += term;
    }
    return c0.inverse() * sum;
}

TwistSeries TwistSeries::exponential() const
{
    for (const auto& [k, c] : terms_)
        if (k.first == 0) throw std::domain_error("exponent must vanish at order zero");
    TwistSeries term = unit(slots_, generators_, order_), sum = term;
    for (int n = 1; n <= order_; ++n) {
        term = GaussianRational(mpq_class(1, n)) * (term * *this);
        sum += term;
    }
    return sum;
}

TwistSeries TwistSeries::coproduct_at(int slot) const
{
    if (slot < 0 || slot >= slots_) throw std::out_of_range("twist slot");
    TwistSeries out(slots_ + 1, generators_, order_);
    const int m = generators_;
    for (const auto& [k, c] : terms_) {
        // (X (x) 1 + 1 (x) X)^e per letter, expanded binomially and combined across letters.
        std::vector<std::pair<std::vector<int>, GaussianRational>> partial{{std::vector<int>(2 * m, 0), c}};
        for (int u = 0; u < m; ++u) {
            const int e = k.second[slot * m + u];
            std::vector<std::pair<std::vector<int>, GaussianRational>> next;
            for (const auto& [split, pc] : partial)
                for (int left = 0; left <= e; ++left) {
                    auto s = split;
                    s[u] = left;
                    s[m + u] = e - left;
                    next.emplace_back(std::move(s), pc * GaussianRational(binomial(e, left)));
                }
            partial = std::move(next);
        }
        for (const auto& [split, pc] : partial) {
            std::vector<int> key(k.second.begin(), k.second.begin() + slot * m);
            key.insert(key.end(), split.begin(), split.end());
            key.insert(key.end(), k.second.begin() + (slot + 1) * m, k.second.end());
            out.add(k.first, key, pc);
        }
    }
    return out;
}

TwistSeries TwistSeries::counit_at(int slot) const
{
    if (slot < 0 || slot >= slots_ || slots_ == 1) throw std::out_of_range("twist slot");
    TwistSeries out(slots_ - 1, generators_, order_);
    const int m = generators_;
    for (const auto& [k, c] : terms_) {
        const auto first = k.second.begin() + slot * m;
        if (std::any_of(first, first + m, [](int e) { return e != 0; })) continue;
        std::vector<int> key(k.second.begin(), first);
        key.insert(key.end(), first + m, k.second.end());
        out.add(k.first, key, c);
    }
    return out;
}

TwistSeries TwistSeries::antipode_at(int slot) const
{
    if (slot < 0 || slot >= slots_) throw std::out_of_range("twist slot");
    TwistSeries out(slots_, generators_, order_);
    const int m = generators_;
    for (const auto& [k, c] : terms_) {
        const int degree = std::accumulate(k.second.begin() + slot * m, k.second.begin() + (slot + 1) * m, 0);
        out.add(k.first, k.second, degree % 2 == 0 ? c : -c);
    }
    return out;
}

TwistSeries TwistSeries::multiply_at(int slot) const
{
    if (slot < 0 || slot + 1 >= slots_) throw std::out_of_range("twist slot");
    TwistSeries out(slots_ - 1, generators_, order_);
    const int m = generators_;
    for (const auto& [k, c] : terms_) {
        std::vector<int> key(k.second.begin(), k.second.begin() + slot * m);
        for (int u = 0; u < m; ++u) key.push_back(k.second[slot * m + u] + k.second[(slot + 1) * m + u]);
        key.insert(key.end(), k.second.begin() + (slot + 2) * m, k.second.end());
        out.add(k.first, key, c);
    }
    return out;
}

TwistSeries TwistSeries::embed(int slots, const std::vector<int>& placement) const
{
    if (static_cast<int>(placement.size()) != slots_) throw std::invalid_argument("placement size");
    TwistSeries out(slots, generators_, order_);
    const int m = generators_;
    for (const auto& [k, c] : terms_) {
        std::vector<int> key(slots * m, 0);
        for (int s = 0; s < slots_; ++s)
            for (int u = 0; u < m; ++u) key.at(placement[s] * m + u) += k.second[s * m + u];
        out.add(k.first, key, c);
    }
    return out;
}

std::vector<GaussianRational> TwistSeries::evaluate(const std::vector<GaussianRational>& values) const
{
    if (static_cast<int>(values.size()) != slots_ * generators_) throw std::invalid_argument("value layout");
    std::vector<GaussianRational> out(order_ + 1);
    for (const auto& [k, c] : terms_) {
        GaussianRational v = c;
        for (std::size_t i = 0; i < values.size(); ++i) v *= power(values[i], k.second[i]);
        out[k.first] += v;
    }
    return out;
}

std::string TwistSeries::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        os << (first ? "" : " + ") << c.to_string();
        first = false;
        if (k.first > 0) os << " h^" << k.first;
        for (int s = 0; s < slots_; ++s) {
            os << (s == 0 ? " [" : " (x) ");
            bool any = false;
            for (int u = 0; u < generators_; ++u)
                if (const int e = k.second[s * generators_ + u]; e > 0) {
                    os << (any ? " " : "") << "X" << u << (e > 1 ? "^" + std::to_string(e) : "");
                    any = true;
                }
            if (!any) os << "1";
        }
        os << "]";
    }
    return os.str();
}

// ---- twists ----

TwistSpec abelian_twist() { return {2, {{0, 1}, {0, 0}}}; }

TwistSpec bilinear_twist(std::vector<std::vector<mpq_class>> matrix)
{
    const int n = static_cast<int>(matrix.size());
    for (const auto& row : matrix)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("twist matrix must be square");
    if (n == 0) throw std::invalid_argument("twist matrix is empty");
    return {n, std::move(matrix)};
}

TwistSpec trivial_twist(int generators)
{
    return {generators, std::vector<std::vector<mpq_class>>(generators, std::vector<mpq_class>(generators, 0))};
}

TwistSeries twist_element(const TwistSpec& spec, int order)
{
    check_order(order);
    const int m = spec.generators;
    if (static_cast<int>(spec.matrix.size()) != m) throw std::invalid_argument("twist matrix size");
    TwistSeries exponent(2, m, order);
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) {
            if (sgn(spec.matrix[u][v]) == 0) continue;
            std::vector<int> e(2 * m, 0);
            e[u] += 1;
            e[m + v] += 1;
            exponent.add(1, e, GaussianRational(0, spec.matrix[u][v]));
        }
    return exponent.exponential();
}

bool TwistReport::passed() const
{
    return cocycle.passed && left_normalization.passed && right_normalization.passed && semiclassical.passed;
}

TwistReport twist_check(const TwistSpec& spec, int order) { return twist_check(twist_element(spec, order)); }

TwistReport twist_check(const TwistSeries& f)
{
    if (f.slots() != 2) throw std::invalid_argument("a twist is a two-slot series");
    const int m = f.generators(), order = f.order();
    TwistReport r;
    r.order = order;
    const TwistSeries lhs = f.embed(3, {0, 1}) * f.coproduct_at(0);
    const TwistSeries rhs = f.embed(3, {1, 2}) * f.coproduct_at(1);
    r.cocycle = compare(lhs, rhs);
    const TwistSeries one = TwistSeries::unit(1, m, order);
    r.left_normalization = compare(f.counit_at(0), one);
    r.right_normalization = compare(f.counit_at(1), one);
    TwistSeries leading(2, m, order);
    for (const auto& [k, c] : f.terms())
        if (k.first == 0) leading.add(0, k.second, c);
    r.semiclassical = compare(leading, TwistSeries::unit(2, m, order));
    return r;
}

bool TwistedStructures::passed() const
{
    return twisted_antipode.passed && triangularity.passed && yang_baxter.passed && braided_commutativity.passed;
}

TwistedStructures twisted_structures(const TwistSpec& spec, int order)
{
    return twisted_structures(twist_element(spec, order));
}

TwistedStructures twisted_structures(const TwistSeries& f)
{
    if (f.slots() != 2) throw std::invalid_argument("a twist is a two-slot series");
    const int m = f.generators(), order = f.order();
    const TwistSeries f_inv = f.inverse();
    TwistedStructures out;
    out.order = order;

    out.chi = f.antipode_at(1).multiply_at(0);
    const TwistSeries chi_inv = out.chi.inverse();
    TwistSeries antipode_failures(1, m, order);
    for (int u = 0; u < m; ++u) {
        const TwistSeries x = TwistSeries::letter(1, m, order, 0, u);
        const TwistSeries dx = f * x.coproduct_at(0) * f_inv;
        const TwistSeries sx = out.chi * x.antipode_at(0) * chi_inv;
        // m(S^F (x) id) Delta^F(x): apply S on slot 0 termwise by conjugating with chi.
        TwistSeries contracted(1, m, order);
        for (const auto& [k, c] : dx.terms()) {
            TwistSeries left(1, m, order), right(1, m, order);
            left.add(0, std::vector<int>(k.second.begin(), k.second.begin() + m), 1);
            right.add(k.first, std::vector<int>(k.second.begin() + m, k.second.end()), c);
            contracted += out.chi * left.antipode_at(0) * chi_inv * right;
        }
        antipode_failures += contracted;
        out.coproduct.push_back(dx);
        out.antipode.push_back(sx);
    }
    out.twisted_antipode = antipode_failures.is_zero() ? Residual{} : Residual{false, antipode_failures.to_string()};

    const TwistSeries f21 = f.embed(2, {1, 0});
    out.r_matrix = f21 * f_inv;
    const TwistSeries& r = out.r_matrix;
    out.triangularity = compare(r.embed(2, {1, 0}) * r, TwistSeries::unit(2, m, order));
    const TwistSeries r12 = r.embed(3, {0, 1}), r13 = r.embed(3, {0, 2}), r23 = r.embed(3, {1, 2});
    out.yang_baxter = compare(r12 * r13 * r23, r23 * r13 * r12);

    // e_a * e_b = F^-1(ia, ib) e_{a+b} must equal R^-1(ib, ia) F^-1(ib, ia) e_{a+b}.
    const TwistSeries r_inv = r.inverse();
    std::string failures;
    for (const auto& [a, b] : probe_momenta(m)) {
        std::vector<GaussianRational> ab, ba;
        for (const auto& v : a) ab.emplace_back(0, v);
        for (const auto& v : b) ab.emplace_back(0, v);
        ba.insert(ba.end(), ab.begin() + m, ab.end());
        ba.insert(ba.end(), ab.begin(), ab.begin() + m);
        const auto lhs = f_inv.evaluate(ab);
        const auto r_part = r_inv.evaluate(ba), f_part = f_inv.evaluate(ba);
        for (int n = 0; n <= order; ++n) {
            GaussianRational rhs;
            for (int k = 0; k <= n; ++k) rhs += r_part[k] * f_part[n - k];
            if (!(rhs == lhs[n])) failures += "order " + std::to_string(n) + ": " + (lhs[n] - rhs).to_string() + "; ";
        }
    }
    out.braided_commutativity = failures.empty() ? Residual{} : Residual{false, failures};
    return out;
}

}  // namespace qst::hopf
