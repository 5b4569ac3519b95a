#include "qst/twisted_gauge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qst::gauge {

namespace {

constexpr double unitarity_tolerance = 1e-12;
constexpr int max_input_degree = 4;

void require_kappa(const GroupDescriptor& g)
{
    if (g.kind() != GroupKind::kappa) throw std::invalid_argument("twisted gauge structures live on kappa-Minkowski");
}

WavePacket identity(const GroupDescriptor& g) { return WavePacket::plane_wave(g, g.zero()); }

}  // namespace

GaugeField::GaugeField(std::vector<WavePacket> components) : components_(std::move(components))
{
    if (components_.empty()) throw std::invalid_argument("gauge field needs components");
    const auto& g = components_.front().group();
    require_kappa(g);
    if (static_cast<int>(components_.size()) != g.dim())
        throw std::invalid_argument("gauge field needs one component per coordinate");
    for (const auto& c : components_)
        if (!c.group().same_group(g)) throw std::invalid_argument("components live on different groups");
}

GaugeField GaugeField::zero(const GroupDescriptor& g)
{
    return GaugeField(std::vector<WavePacket>(static_cast<std::size_t>(g.dim()), WavePacket(g)));
}

GaugeTransform::GaugeTransform(WavePacket u) : u_(std::move(u))
{
    require_kappa(u_.group());
    const auto one = identity(u_.group());
    const auto ud = dagger(u_);
    if (star(u_, ud).distance(one) > unitarity_tolerance || star(ud, u_).distance(one) > unitarity_tolerance)
        throw std::invalid_argument("gauge parameter is not unitary");
}

GaugeTransform GaugeTransform::plane_wave(const GroupDescriptor& g, Momentum p, double phase)
{
    return GaugeTransform(WavePacket::plane_wave(g, std::move(p), std::polar(1.0, phase)));
}

WavePacket twisted_derivation(int mu, const WavePacket& f) { return act_X(mu, f); }

WavePacket twist(int power, const WavePacket& f) { return act_E(power, f); }

double twisted_leibniz_check(int mu, const WavePacket& f, const WavePacket& g)
{
    const auto lhs = twisted_derivation(mu, star(f, g));
    const auto rhs = star(twisted_derivation(mu, f), g) + star(twist(1, f), twisted_derivation(mu, g));
    return lhs.distance(rhs);
}

double twisted_reality_check(int mu, const WavePacket& f)
{
    const auto lhs = dagger(twisted_derivation(mu, f));
    const auto rhs = cplx{-1.0} * twist(-1, twisted_derivation(mu, dagger(f)));
    return lhs.distance(rhs);
}

FieldStrength::FieldStrength(int n, std::vector<WavePacket> entries) : n_(n), entries_(std::move(entries))
{
    if (n < 1 || entries_.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("field strength needs n x n entries");
}

const WavePacket& FieldStrength::operator()(int mu, int nu) const
{
    if (mu < 0 || nu < 0 || mu >= n_ || nu >= n_) throw std::out_of_range("field strength index");
    return entries_[static_cast<std::size_t>(mu) * n_ + nu];
}

double FieldStrength::antisymmetry_residual() const
{
    double r = 0.0;
    for (int mu = 0; mu < n_; ++mu)
        for (int nu = 0; nu < n_; ++nu) r = std::max(r, ((*this)(mu, nu) + (*this)(nu, mu)).distance(WavePacket((*this)(mu, nu).group())));
    return r;
}

double FieldStrength::distance(const FieldStrength& other) const
{
    if (other.n_ != n_) throw std::invalid_argument("field strengths differ in size");
    double r = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) r = std::max(r, entries_[i].distance(other.entries_[i]));
    return r;
}

FieldStrength field_strength(const GaugeField& a)
{
    const int n = a.size();
    const cplx i{0.0, 1.0};
    std::vector<WavePacket> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
            if (mu == nu) {
                entries.emplace_back(a.group());
                continue;
            }
            const auto commutator = star(twist(1, a[mu]), a[nu]) - star(twist(1, a[nu]), a[mu]);
            entries.push_back(twisted_derivation(mu, a[nu]) - twisted_derivation(nu, a[mu]) - i * commutator);
        }
    return {n, std::move(entries)};
}

GaugeField gauge_transform(const GaugeField& a, const GaugeTransform& u, GaugeConvention convention)
{
    if (!u.u().group().same_group(a.group())) throw std::invalid_argument("gauge parameter lives on another group");
    const cplx shift = convention == GaugeConvention::derived ? cplx{0.0, 1.0} : cplx{1.0};
    const auto left = twist(1, dagger(u.u()));
    std::vector<WavePacket> out;
    for (int mu = 0; mu < a.size(); ++mu)
        out.push_back(star(star(left, a[mu]), u.u()) + shift * star(left, twisted_derivation(mu, u.u())));
    return GaugeField(std::move(out));
}

double covariance_check(const GaugeField& a, const GaugeTransform& u, GaugeConvention convention)
{
    const auto transformed = field_strength(gauge_transform(a, u, convention));
    const auto original = field_strength(a);
    const auto left = twist(2, dagger(u.u()));
    std::vector<WavePacket> expected;
    for (int mu = 0; mu < a.size(); ++mu)
        for (int nu = 0; nu < a.size(); ++nu) expected.push_back(star(star(left, original(mu, nu)), u.u()));
    return transformed.distance(FieldStrength(a.size(), std::move(expected)));
}

double hermiticity_check(const GaugeField& a)
{
    double r = 0.0;
    for (const auto& c : a.components()) r = std::max(r, dagger(c).distance(twist(-1, c)));
    return r;
}

std::vector<DimensionRow> dimension_constraint_scan(int d_first, int d_last, double kappa,
                                                    const std::vector<double>& energies)
{
    if (d_first < 1 || d_last < d_first) throw std::invalid_argument("dimension range must satisfy 1 <= first <= last");
    std::vector<DimensionRow> rows;
    for (int d = d_first; d <= d_last; ++d) {
        const auto g = kappa_group(kappa, d);
        DimensionRow row{d, 0.0};
        for (double e : energies) {
            Momentum p(static_cast<std::size_t>(d + 1), 0.0);
            p[0] = e;
            for (int j = 1; j <= d; ++j) p[j] = 0.25 * j;
            const auto u = GaugeTransform::plane_wave(g, p).u();
            const auto prefactor = star(twist(d - 2, u), twist(2, dagger(u)));
            if (prefactor.terms().size() != 1 || norm(prefactor.terms().front().p) > 1e-12)
                throw std::logic_error("gauge prefactor left the identity momentum");
            // The eigenvalue exponents are summed before exponentiating so d = 4 cancels exactly.
            const double exponent = (-(d - 2) * e + 2.0 * e) / kappa;
            row.max_deviation = std::max(row.max_deviation, std::abs(std::expm1(exponent)));
        }
        rows.push_back(row);
    }
    return rows;
}

Polynomial::Polynomial(int variables) : vars_(variables)
{
    if (variables < 1 || variables > max_variables) throw std::length_error("polynomials take one to four variables");
}

Polynomial Polynomial::constant(int variables, const mpq_class& c)
{
    Polynomial p(variables);
    p.add_term({}, c);
    return p;
}

Polynomial Polynomial::variable(int variables, int index)
{
    Polynomial p(variables);
    if (index < 0 || index >= variables) throw std::out_of_range("variable index");
    Exponents e{};
    e[static_cast<std::size_t>(index)] = 1;
    p.add_term(e, 1);
    return p;
}

void Polynomial::add_term(const Exponents& e, const mpq_class& c)
{
    for (int k = 0; k < max_variables; ++k) {
        if (e[static_cast<std::size_t>(k)] < 0) throw std::invalid_argument("negative exponent");
        if (k >= vars_ && e[static_cast<std::size_t>(k)] != 0) throw std::out_of_range("exponent on an absent variable");
    }
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
}

int Polynomial::degree() const
{
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
    return d;
}

Polynomial Polynomial::derivative(int index) const
{
    if (index < 0 || index >= vars_) throw std::out_of_range("variable index");
    Polynomial out(vars_);
    for (const auto& [exponents, c] : terms_) {
        const int power = exponents[static_cast<std::size_t>(index)];
        if (power == 0) continue;
        auto e = exponents;
        e[static_cast<std::size_t>(index)] = power - 1;
        out.add_term(e, c * power);
    }
    return out;
}

void Polynomial::require_compatible(const Polynomial& o) const
{
    if (o.vars_ != vars_) throw std::invalid_argument("polynomials in different variable counts");
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    require_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    require_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const mpq_class& s)
{
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    a.require_compatible(b);
    Polynomial out(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Polynomial::Exponents e{};
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    return out;
}

std::string Polynomial::to_string() const
{
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += c.get_str();
        for (int k = 0; k < vars_; ++k) {
            const int power = e[static_cast<std::size_t>(k)];
            if (power == 0) continue;
            out += " x" + std::to_string(k);
            if (power > 1) out += "^" + std::to_string(power);
        }
    }
    return out;
}

namespace {

int field_size(const PolynomialField& a)
{
    if (a.empty()) throw std::invalid_argument("gauge field needs components");
    const int n = a.front().variables();
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("one component per variable");
    for (const auto& c : a) {
        if (c.variables() != n) throw std::invalid_argument("components use different variable counts");
        if (c.degree() > max_input_degree) throw std::length_error("degree overflow: inputs are limited to degree 4");
    }
    return n;
}

const mpq_class& entry(const RationalMatrix& theta, int n, int r, int s)
{
    return theta[static_cast<std::size_t>(r) * n + s];
}

void require_theta(const RationalMatrix& theta, int n)
{
    if (theta.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("theta must be n x n");
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            if (entry(theta, n, r, s) != -entry(theta, n, s, r)) throw std::invalid_argument("theta must be antisymmetric");
}

// B(X, Y)_mu = Theta^{rs} X_r (2 d_s Y_mu - d_mu Y_s); A hat = A - B(A, A)/2.
PolynomialField bilinear(const PolynomialField& x, const PolynomialField& y, const RationalMatrix& theta)
{
    const int n = static_cast<int>(x.size());
    PolynomialField out(static_cast<std::size_t>(n), Polynomial(n));
    for (int mu = 0; mu < n; ++mu)
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                const auto& t = entry(theta, n, r, s);
                if (t == 0) continue;
                out[mu] += t * (x[r] * (mpq_class(2) * y[mu].derivative(s) - y[s].derivative(mu)));
            }
    return out;
}

}  // namespace

std::vector<Polynomial> commutative_strength(const PolynomialField& a)
{
    const int n = field_size(a);
    std::vector<Polynomial> f;
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) f.push_back(a[nu].derivative(mu) - a[mu].derivative(nu));
    return f;
}

SeibergWitten sw_map_order1(const PolynomialField& a, const RationalMatrix& theta)
{
    const int n = field_size(a);
    require_theta(theta, n);
    SeibergWitten out;
    const auto b = bilinear(a, a, theta);
    for (int mu = 0; mu < n; ++mu) out.field.push_back(a[mu] - mpq_class(1, 2) * b[mu]);

    const auto f = commutative_strength(a);
    auto at = [&](int mu, int nu) -> const Polynomial& { return f[static_cast<std::size_t>(mu) * n + nu]; };
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
            Polynomial v = at(mu, nu);
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    const auto& t = entry(theta, n, r, s);
                    if (t == 0) continue;
                    v += t * (at(mu, r) * at(nu, s) - a[r] * at(mu, nu).derivative(s));
                }
            out.strength.push_back(std::move(v));
        }
    return out;
}

PolynomialField sw_consistency(const PolynomialField& a, const Polynomial& alpha, const RationalMatrix& theta)
{
    const int n = field_size(a);
    require_theta(theta, n);
    if (alpha.variables() != n) throw std::invalid_argument("gauge parameter uses a different variable count");
    if (alpha.degree() > max_input_degree) throw std::length_error("degree overflow: inputs are limited to degree 4");

    PolynomialField grad;
    for (int mu = 0; mu < n; ++mu) grad.push_back(alpha.derivative(mu));

    // Linear part of A hat(A + d alpha) - A hat(A).
    const auto b1 = bilinear(grad, a, theta);
    const auto b2 = bilinear(a, grad, theta);

    Polynomial alpha_hat = alpha;
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            const auto& t = entry(theta, n, r, s);
            if (t != 0) alpha_hat += mpq_class(t / 2) * (grad[r] * a[s]);
        }

    PolynomialField residual;
    for (int mu = 0; mu < n; ++mu) {
        Polynomial change = grad[mu] - mpq_class(1, 2) * (b1[mu] + b2[mu]);
        Polynomial deformed = alpha_hat.derivative(mu);
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                const auto& t = entry(theta, n, r, s);
                if (t != 0) deformed -= t * (grad[r] * a[mu].derivative(s));
            }
        residual.push_back(change - deformed);
    }
    return residual;
}

std::vector<Polynomial> sw_strength_consistency(const PolynomialField& a, const RationalMatrix& theta)
{
    const int n = field_size(a);
    require_theta(theta, n);
    const auto sw = sw_map_order1(a, theta);
    const auto f = commutative_strength(a);
    const auto b = bilinear(a, a, theta);

    std::vector<Polynomial> residual;
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
            const std::size_t at = static_cast<std::size_t>(mu) * n + nu;
            Polynomial first_order = sw.strength[at] - f[at];
            Polynomial deformed = mpq_class(-1, 2) * (b[nu].derivative(mu) - b[mu].derivative(nu));
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    const auto& t = entry(theta, n, r, s);
                    if (t != 0) deformed += t * (a[mu].derivative(r) * a[nu].derivative(s));
                }
            residual.push_back(first_order - deformed);
        }
    return residual;
}

ConnectionCoefficients::ConnectionCoefficients(int n, std::vector<cplx> values) : dim(n), gamma(std::move(values))
{
    if (n < 1 || gamma.size() != static_cast<std::size_t>(n) * n * n)
        throw std::invalid_argument("connection needs n^3 coefficients");
}

cplx ConnectionCoefficients::operator()(int mu, int nu, int rho) const
{
    return gamma[(static_cast<std::size_t>(mu) * dim + nu) * dim + rho];
}

double ConnectionCoefficients::anti_hermiticity_residual() const
{
    double r = 0.0;
    for (const auto& g : gamma) r = std::max(r, std::abs(std::conj(g) + g));
    return r;
}

cplx Curvature::operator()(int mu, int nu, int rho, int sigma) const
{
    return r[((static_cast<std::size_t>(mu) * dim + nu) * dim + rho) * dim + sigma];
}

double Curvature::antisymmetry_residual() const
{
    double m = 0.0;
    for (int mu = 0; mu < dim; ++mu)
        for (int nu = 0; nu < dim; ++nu)
            for (int rho = 0; rho < dim; ++rho)
                for (int sigma = 0; sigma < dim; ++sigma)
                    m = std::max(m, std::abs((*this)(mu, nu, rho, sigma) + (*this)(nu, mu, rho, sigma)));
    return m;
}

Curvature tangent_curvature(const ConnectionCoefficients& gamma, const StructureConstants& tangent)
{
    const int n = gamma.dim;
    if (tangent.dim() != n) throw std::invalid_argument("connection and tangent algebra differ in dimension");
    Curvature out{n, std::vector<cplx>(static_cast<std::size_t>(n) * n * n * n)};
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
            for (int rho = 0; rho < n; ++rho)
                for (int sigma = 0; sigma < n; ++sigma) {
                    cplx v = 0.0;
                    for (int t = 0; t < n; ++t)
                        v += gamma(nu, rho, t) * gamma(mu, t, sigma) - gamma(mu, rho, t) * gamma(nu, t, sigma) -
                             tangent(mu, nu, t) * gamma(t, rho, sigma);
                    out.r[((static_cast<std::size_t>(mu) * n + nu) * n + rho) * n + sigma] = v;
                }
    return out;
}

}  // namespace qst::gauge
