#include "qst/loop_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gsl_quadrature.hpp"

namespace qst::loop {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double quad_rel = 1e-11;

// Area of the unit sphere in n+1 dimensions, 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_area(int n)
{
    const double half = 0.5 * (n + 1);
    return 2.0 * std::pow(pi, half) / std::tgamma(half);
}

double bessel_k(double order, double x)
{
    if (x > 700.0) return 0.0;
    return std::cyl_bessel_k(order, x);
}

bool is_kappa_right(const GroupDescriptor& g)
{
    return g.kind() == GroupKind::kappa && g.law().ordering() == Ordering::right;
}

bool minkowski(const std::vector<int>& sig)
{
    if (sig.empty() || sig[0] != 1) return false;
    return std::all_of(sig.begin() + 1, sig.end(), [](int s) { return s == -1; });
}

// Number of dynamical slots when every one of them carries -1, zero otherwise.
int euclidean_dims(const std::vector<int>& sig)
{
    int n = 0;
    for (int s : sig) {
        if (s == 1) return 0;
        if (s == -1) ++n;
    }
    return n;
}

double kappa_of(const GroupDescriptor& g) { return g.deformation(); }

void require_kappa_minkowski(const KineticSpec& ks)
{
    if (!is_kappa_right(ks.group)) throw std::invalid_argument("requires right-ordered kappa-Minkowski");
    if (!minkowski(ks.signature)) throw std::invalid_argument("requires the (+,-,...,-) signature");
}

// Wick-rotated kappa-Minkowski integral after the energy integral:
// Omega_{d-1} int_0^upper r^{d-1} (pi/w) e^{-decay w} dr.
IntegralResult kappa_radial(int d, double mass, double decay, double upper)
{
    detail::Integrator quad;
    const double omega = sphere_area(d - 1);
    auto f = [&](double r) {
        const double w = std::sqrt(r * r + mass * mass);
        if (w == 0.0) return d == 1 ? std::numeric_limits<double>::infinity() : 0.0;
        return std::pow(r, d - 1) * pi / w * std::exp(-decay * w);
    };
    const auto r = std::isfinite(upper) ? quad.finite(f, 0.0, upper, 0.0, quad_rel) : quad.upper(f, 0.0, 0.0, quad_rel);
    return {omega * r.value, omega * r.error};
}

IntegralResult euclidean_radial(int dims, double mass, const RegulatorSpec& reg)
{
    detail::Integrator quad;
    const double omega = sphere_area(dims - 1);
    const double lambda = reg.cutoff;
    if (reg.scheme == Scheme::sharp_cutoff) {
        auto f = [&](double r) { return std::pow(r, dims - 1) / (r * r + mass * mass); };
        const auto r = quad.finite(f, 0.0, lambda, 0.0, quad_rel);
        return {omega * r.value, omega * r.error};
    }
    // int_0^inf da e^{-a K - 1/(a Lambda^2)} = 2/(Lambda sqrt K) K_1(2 sqrt K / Lambda)
    auto f = [&](double r) {
        const double root = std::sqrt(r * r + mass * mass);
        if (root == 0.0) return 0.0;
        return std::pow(r, dims - 1) * 2.0 / (lambda * root) * bessel_k(1.0, 2.0 * root / lambda);
    };
    const double split = 50.0 * lambda;
    const auto a = quad.finite(f, 0.0, split, 0.0, quad_rel);
    const auto b = quad.upper(f, split, 0.0, quad_rel);
    return {omega * (a.value + b.value), omega * (a.error + b.error)};
}

std::optional<bool> verdict_of(Trend t, bool divergent_means)
{
    if (t == Trend::inconclusive) return std::nullopt;
    return (t == Trend::divergent) == divergent_means;
}

std::vector<double> default_direction(int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    double x = 1.0;
    for (auto& c : v) {
        c = x;
        x *= 0.5;
    }
    return v;
}

std::vector<double> kappa_direction(int d)
{
    // Timelike, so the rotated non-planar contour avoids the poles for every scale.
    std::vector<double> v(static_cast<std::size_t>(d + 1), 0.0);
    v[0] = 1.0;
    for (int j = 1; j <= d; ++j) v[j] = 0.3 / j;
    return v;
}

std::vector<double> scaled(const std::vector<double>& v, double t)
{
    auto r = v;
    for (auto& x : r) x *= t;
    return r;
}

}  // namespace

KineticSpec::KineticSpec(GroupDescriptor g, std::vector<int> sig, double m)
    : group(std::move(g)), signature(std::move(sig)), mass(m)
{
    if (static_cast<int>(signature.size()) != group.dim())
        throw std::invalid_argument("signature length must equal the group dimension");
    for (int s : signature)
        if (s != 1 && s != -1 && s != 0) throw std::invalid_argument("signature entries must be +1, -1 or 0");
    if (!(mass >= 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be non-negative");
}

KineticSpec standard_kinetic(const GroupDescriptor& g, double mass)
{
    std::vector<int> sig(static_cast<std::size_t>(g.dim()), -1);
    if (g.kind() == GroupKind::kappa) sig[0] = 1;
    if (g.kind() == GroupKind::moyal) sig.back() = 0;
    return {g, std::move(sig), mass};
}

double kinetic_eval(const KineticSpec& ks, MomentumView k)
{
    if (static_cast<int>(k.size()) != ks.group.dim()) throw std::invalid_argument("momentum dimension mismatch");
    const Momentum inv = ks.group.inv(k);
    double s = ks.mass * ks.mass;
    for (std::size_t mu = 0; mu < k.size(); ++mu) s += ks.signature[mu] * k[mu] * inv[mu];
    return s;
}

double parity_residual(const KineticSpec& ks, MomentumView k)
{
    const Momentum inv = ks.group.inv(k);
    return std::abs(kinetic_eval(ks, inv) - kinetic_eval(ks, k));
}

void RegulatorSpec::validate() const
{
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw std::invalid_argument("cutoff must be positive and finite");
}

IntegralResult propagator_integral(const KineticSpec& ks, const RegulatorSpec& reg)
{
    reg.validate();
    const auto& g = ks.group;
    if (g.kind() == GroupKind::kappa) {
        require_kappa_minkowski(ks);
        if (!reg.wick) throw std::invalid_argument("the Minkowski energy integral is only defined after Wick rotation");
        const int d = g.dim() - 1;
        const double decay = d / (2.0 * kappa_of(g));
        if (reg.scheme == Scheme::sharp_cutoff) return kappa_radial(d, ks.mass, decay, reg.cutoff);
        // The Schwinger factor shifts the decay rate to sqrt(decay^2 + 4/Lambda^2).
        const double shifted = std::sqrt(decay * decay + 4.0 / (reg.cutoff * reg.cutoff));
        return kappa_radial(d, ks.mass, shifted, std::numeric_limits<double>::infinity());
    }
    if (g.kind() != GroupKind::moyal && g.kind() != GroupKind::abelian)
        throw std::invalid_argument("propagator integral needs a kappa-Minkowski, Moyal or abelian group");

    int dims = euclidean_dims(ks.signature);
    if (dims == 0) {
        if (!minkowski(ks.signature)) throw std::invalid_argument("signature is neither Euclidean nor Minkowski");
        if (!reg.wick) throw std::invalid_argument("the Minkowski energy integral is only defined after Wick rotation");
        dims = g.dim();
    }
    return euclidean_radial(dims, ks.mass, reg);
}

std::string to_string(Trend t)
{
    switch (t) {
    case Trend::divergent: return "divergent";
    case Trend::convergent: return "convergent";
    case Trend::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<double> GeometricGrid::values() const
{
    if (!(start > 0.0) || !(stop >= start) || !(factor > 1.0) || !std::isfinite(stop))
        throw std::invalid_argument("grid needs 0 < start <= stop and factor > 1");
    std::vector<double> v;
    for (double x = start; x <= stop * (1.0 + 1e-12); x *= factor) v.push_back(x);
    return v;
}

GeometricGrid GeometricGrid::parse(const std::string& text)
{
    std::istringstream in(text);
    std::string part;
    std::vector<double> fields;
    while (std::getline(in, part, ':')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("grid field '" + part + "' is not a number");
        }
        if (used != part.size()) throw std::invalid_argument("grid field '" + part + "' is not a number");
        fields.push_back(v);
    }
    if (fields.size() != 3) throw std::invalid_argument("grid must read start:stop:factor");
    GeometricGrid g{fields[0], fields[1], fields[2]};
    g.values();
    return g;
}

SweepReport classify_sweep(std::vector<SweepPoint> points)
{
    SweepReport r;
    std::sort(points.begin(), points.end(),
              [](const SweepPoint& a, const SweepPoint& b) { return a.parameter < b.parameter; });
    r.points = std::move(points);
    if (r.points.size() < 2) return r;

    const double top = r.points.back().parameter;
    std::vector<const SweepPoint*> window;
    for (const auto& p : r.points)
        if (p.parameter >= top / 10.0 * (1.0 - 1e-12)) window.push_back(&p);
    if (window.size() < 2) window = {&r.points[r.points.size() - 2], &r.points.back()};

    double scale = 0.0;
    for (const auto* p : window) {
        if (!std::isfinite(p->value) || p->value == 0.0) return r;
        scale = std::max(scale, std::abs(p->value));
    }
    int sign = 0;
    for (std::size_t i = 1; i < window.size(); ++i) {
        const double step = std::abs(window[i]->value) - std::abs(window[i - 1]->value);
        if (std::abs(step) <= 1e-9 * scale) continue;
        const int s = step > 0 ? 1 : -1;
        if (sign != 0 && s != sign) r.monotone = false;
        sign = s;
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(window.size());
    for (const auto* p : window) {
        const double x = std::log(p->parameter), y = std::log(std::abs(p->value));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (!r.monotone) return r;
    if (r.slope > 0.1)
        r.trend = Trend::divergent;
    else if (std::abs(r.slope) < 0.02)
        r.trend = Trend::convergent;
    return r;
}

SweepReport sweep(const std::vector<double>& grid, const std::function<IntegralResult(double)>& evaluate, int jobs)
{
    std::vector<SweepPoint> points(grid.size());
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < grid.size(); i += stride) {
            const auto v = evaluate(grid[i]);
            points[i] = {grid[i], v.value, v.error};
        }
    };
    const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(grid.size(), 1))));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::future<void>> tasks;
        for (std::size_t w = 0; w < workers; ++w) tasks.push_back(std::async(std::launch::async, work, w, workers));
        for (auto& t : tasks) t.get();
    }
    return classify_sweep(std::move(points));
}

SweepReport cutoff_sweep(const KineticSpec& ks, Scheme scheme, const GeometricGrid& grid, int jobs)
{
    return sweep(grid.values(), [&](double lambda) { return propagator_integral(ks, {scheme, lambda, true}); }, jobs);
}

double kmink_bessel_closed_form(double mass, double kappa, int d)
{
    if (!(mass >= 0.0) || !(kappa > 0.0) || d < 1) throw std::invalid_argument("needs m >= 0, kappa > 0, d >= 1");
    const double order = 0.5 * (d - 1);
    if (mass == 0.0) {
        if (d == 1) throw std::domain_error("massless d = 1 integral diverges logarithmically");
        // K_nu(z) ~ Gamma(nu)/2 (2/z)^nu as z -> 0
        const double v = 4.0 * pi * 0.5 * std::tgamma(order) * std::pow(16.0 * pi * kappa * kappa / (d * d), order);
        if (!std::isfinite(v)) throw std::overflow_error("closed form overflows");
        return v;
    }
    const double z = mass * d / (2.0 * kappa);
    const double v = 4.0 * pi * std::pow(4.0 * pi * kappa * mass / d, order) * bessel_k(order, z);
    if (!std::isfinite(v)) throw std::overflow_error("closed form overflows");
    return v;
}

IntegralResult kmink_wick_oracle(double mass, double kappa, int d)
{
    if (!(mass >= 0.0) || !(kappa > 0.0) || d < 1) throw std::invalid_argument("needs m >= 0, kappa > 0, d >= 1");
    return kappa_radial(d, mass, d / (2.0 * kappa), std::numeric_limits<double>::infinity());
}

BesselCheck bessel_ratio_table(std::span<const double> masses, std::span<const double> kappas,
                               std::span<const int> dims, int jobs)
{
    BesselCheck check;
    for (int d : dims)
        for (double k : kappas)
            for (double m : masses) check.rows.push_back({m, k, d, 0.0, 0.0, 0.0});

    std::vector<double> index(check.rows.size());
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
    sweep(
        index,
        [&](double at) {
            auto& row = check.rows[static_cast<std::size_t>(at)];
            row.closed_form = kmink_bessel_closed_form(row.mass, row.kappa, row.d);
            row.oracle = kmink_wick_oracle(row.mass, row.kappa, row.d).value;
            row.ratio = row.oracle / row.closed_form;
            return IntegralResult{row.ratio, 0.0};
        },
        jobs);

    if (check.rows.empty()) return check;
    for (const auto& r : check.rows) check.mean_ratio += r.ratio;
    check.mean_ratio /= static_cast<double>(check.rows.size());
    for (const auto& r : check.rows)
        check.max_relative_deviation = std::max(check.max_relative_deviation, std::abs(r.ratio / check.mean_ratio - 1.0));
    return check;
}

MoyalNonplanar moyal_nonplanar(std::span<const double> p, std::span<const double> theta, double mass, double cutoff)
{
    const std::size_t n = p.size();
    if (n == 0 || theta.size() != n * n) throw std::invalid_argument("theta must be square in the momentum dimension");
    if (!(mass >= 0.0) || !(cutoff > 0.0)) throw std::invalid_argument("needs m >= 0 and a positive cutoff");

    double p_theta_sq = 0.0;
    for (std::size_t nu = 0; nu < n; ++nu) {
        double c = 0.0;
        for (std::size_t mu = 0; mu < n; ++mu) c += p[mu] * theta[mu * n + nu];
        p_theta_sq += c * c;
    }
    MoyalNonplanar r;
    r.c = p_theta_sq / 4.0 + 1.0 / (cutoff * cutoff);
    const double c = r.c;
    const double m2c = mass * mass * c;

    // a = c/u turns the Schwinger integral into (1/c) int_0^inf e^{-m^2 c/u - u} du.
    detail::Integrator quad;
    auto f = [&](double u) {
        if (u == 0.0) return m2c > 0.0 ? 0.0 : 1.0;
        return std::exp(-m2c / u - u);
    };
    const auto q = quad.upper(f, 0.0, 0.0, 1e-12);
    r.quadrature = q.value / c;
    r.quadrature_error = q.error / c;

    r.closed_form = mass == 0.0 ? 1.0 / c : 2.0 * mass / std::sqrt(c) * bessel_k(1.0, 2.0 * mass * std::sqrt(c));
    r.relative_error = std::abs(r.quadrature - r.closed_form) / std::abs(r.closed_form);
    r.effective_cutoff_sq = 1.0 / c;
    r.asymptotic = mass == 0.0 ? r.effective_cutoff_sq
                               : r.effective_cutoff_sq - mass * mass * std::log(r.effective_cutoff_sq / (mass * mass));
    r.asymptotic_ratio = r.closed_form / r.asymptotic;
    return r;
}

AsymptoticCheck asymptotic_check(const MoyalNonplanar& r, double mass)
{
    AsymptoticCheck a;
    a.mass_sq_c = mass * mass * r.c;
    a.ratio = r.asymptotic_ratio;
    a.applicable = a.mass_sq_c <= 1e-3;
    a.passed = a.applicable && std::abs(a.ratio - 1.0) <= 0.02;
    return a;
}

double evaluate(const ModularPolynomial& poly, double modular_q, double modular_k)
{
    double s = 0.0;
    for (const auto& [powers, coeff] : poly)
        s += coeff.get_d() * std::pow(modular_q, powers.first) * std::pow(modular_k, powers.second);
    return s;
}

std::string to_string(const ModularPolynomial& poly)
{
    std::string out;
    for (const auto& [powers, coeff] : poly) {
        if (!out.empty()) out += " + ";
        out += coeff.get_str();
        if (powers.first != 0) out += " D(q)^" + std::to_string(powers.first);
        if (powers.second != 0) out += " D(k)^" + std::to_string(powers.second);
    }
    return out.empty() ? "0" : out;
}

DeltaSum TwoPointRecord::planar_conservation(MomentumView p, MomentumView q) const
{
    DeltaSum s(group);
    s.add(1.0, {Momentum(p.begin(), p.end()), Momentum(q.begin(), q.end())});
    return s;
}

DeltaSum TwoPointRecord::nonplanar_conservation(MomentumView p, MomentumView q, MomentumView k) const
{
    DeltaSum s(group);
    s.add(1.0, {Momentum(p.begin(), p.end()), Momentum(k.begin(), k.end()), Momentum(q.begin(), q.end()),
                group.inv(k)});
    return s;
}

double TwoPointRecord::planar_weight(MomentumView q, MomentumView k) const
{
    return evaluate(planar, group.modular(q), group.modular(k));
}

double TwoPointRecord::nonplanar_weight(MomentumView q, MomentumView k) const
{
    return evaluate(nonplanar, group.modular(q), group.modular(k));
}

double TwoPointRecord::nonplanar_phase(MomentumView p, MomentumView k) const
{
    if (group.kind() != GroupKind::moyal) return 0.0;
    const Momentum w = group.add(group.add(group.add(p, k), group.inv(p)), group.inv(k));
    return w.back();
}

namespace {

mpq_class collapsed(const mpq_class& prefactor, const ModularPolynomial& poly)
{
    mpq_class s = 0;
    for (const auto& [powers, coeff] : poly) s += coeff;
    return prefactor * s;
}

}  // namespace

mpq_class TwoPointRecord::unimodular_planar() const { return collapsed(prefactor, planar); }
mpq_class TwoPointRecord::unimodular_nonplanar() const { return collapsed(prefactor, nonplanar); }
mpq_class TwoPointRecord::commutative_coefficient() const { return unimodular_planar() + unimodular_nonplanar(); }

TwoPointRecord two_point_assemble(const GroupDescriptor& g)
{
    TwoPointRecord r{g, mpq_class(1, 24), {}, {}};
    // (1 + D(q)) (3 + D(k))
    r.planar = {{{0, 0}, 3}, {{0, 1}, 1}, {{1, 0}, 3}, {{1, 1}, 1}};
    // (1 + D(k)^-1) (1 + D(q) D(k)^-2)
    r.nonplanar = {{{0, 0}, 1}, {{0, -1}, 1}, {{1, -2}, 1}, {{1, -3}, 1}};
    return r;
}

std::vector<std::complex<double>> kappa_nonplanar_momentum(const GroupDescriptor& g, MomentumView p,
                                                           std::complex<double> k0)
{
    if (!is_kappa_right(g)) throw std::invalid_argument("requires right-ordered kappa-Minkowski");
    if (static_cast<int>(p.size()) != g.dim()) throw std::invalid_argument("momentum dimension mismatch");
    const double kappa = kappa_of(g);
    const double denom = -std::expm1(-p[0] / kappa);
    if (denom == 0.0) throw std::domain_error("p0 = 0 leaves the non-planar delta degenerate");
    const std::complex<double> lift = 1.0 - std::exp(-k0 / kappa);
    std::vector<std::complex<double>> k(p.size() - 1);
    for (std::size_t j = 1; j < p.size(); ++j) k[j - 1] = p[j] * lift / denom;
    return k;
}

KappaNonplanar kappa_nonplanar(const KineticSpec& ks, MomentumView p, double cutoff)
{
    require_kappa_minkowski(ks);
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw std::invalid_argument("cutoff must be positive and finite");
    if (static_cast<int>(p.size()) != ks.group.dim()) throw std::invalid_argument("momentum dimension mismatch");
    const double kappa = kappa_of(ks.group);
    const int d = ks.group.dim() - 1;
    const double denom = -std::expm1(-p[0] / kappa);
    if (denom == 0.0) throw std::domain_error("p0 = 0 leaves the non-planar delta degenerate");

    double spatial = 0.0;
    for (int j = 1; j <= d; ++j) spatial += p[j] * p[j];
    // On the rotated contour e^{k0/kappa} |k*|^2 = -4 B sin^2(s / 2 kappa).
    const double b = spatial / (denom * denom);
    if (b >= kappa * kappa)
        throw std::domain_error("|p_spatial| >= kappa |1 - e^{-p0/kappa}| puts poles on the rotated contour");

    const double m2 = ks.mass * ks.mass;
    const std::complex<double> i(0.0, 1.0);
    auto f = [&](double s) {
        const double sn = std::sin(s / (2.0 * kappa));
        const double kin = s * s + m2 - 4.0 * b * sn * sn;
        const auto weight = (1.0 + std::exp(i * (d * s / kappa))) *
                            (1.0 + std::exp(-d * p[0] / kappa) * std::exp(-2.0 * i * (d * s / kappa)));
        return weight / kin;
    };
    auto symmetric = [&](double s) { return f(s) + f(-s); };

    KappaNonplanar r;
    r.jacobian = std::pow(std::abs(denom), -d);
    detail::Integrator quad;
    const double width = std::max(pi * kappa / d, cutoff / 20000.0);
    const auto panels = static_cast<long>(std::ceil(cutoff / width));
    for (long n = 0; n < panels; ++n) {
        const double a = n * width, e = std::min(cutoff, (n + 1) * width);
        double err = 0.0;
        r.value += quad.finite_complex(symmetric, a, e, 1e-15, 1e-10, &err);
        r.error += err;
    }
    return r;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::mixing: return "MIXING";
    case Verdict::no_mixing: return "NO_MIXING";
    case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

MixingReport mixing_classify(const KineticSpec& ks, const MixingOptions& options)
{
    const auto& g = ks.group;
    MixingReport r;
    const auto kind = g.kind();
    if (kind != GroupKind::kappa && kind != GroupKind::moyal && kind != GroupKind::abelian)
        throw std::invalid_argument("mixing classification needs a kappa-Minkowski, Moyal or abelian group");

    r.planar_uv_divergent.sweep = cutoff_sweep(ks, Scheme::sharp_cutoff, options.cutoffs, options.jobs);
    r.planar_uv_divergent.holds = verdict_of(r.planar_uv_divergent.sweep.trend, true);
    r.planar_uv_divergent.note = "sharp radial cutoff";

    const auto inverse_momenta = options.inverse_momenta.values();
    const auto cutoffs = options.cutoffs.values();

    if (kind == GroupKind::abelian) {
        r.nonplanar_ir_singular.holds = false;
        r.nonplanar_uv_finite.holds = false;
        r.nonplanar_ir_singular.note = r.nonplanar_uv_finite.note =
            "no non-planar sector: the loop momentum cancels from the delta";
    } else if (kind == GroupKind::moyal) {
        const int base = g.dim() - 1;
        const auto theta = moyal_theta(base, g.deformation());
        const auto dir = options.direction.empty() ? default_direction(base) : options.direction;
        if (static_cast<int>(dir.size()) != base) throw std::invalid_argument("direction must have the base dimension");
        auto at = [&](double t, double lambda) {
            const auto v = moyal_nonplanar(scaled(dir, t), theta, ks.mass, lambda);
            return IntegralResult{v.quadrature, v.quadrature_error};
        };
        r.nonplanar_ir_singular.sweep =
            sweep(inverse_momenta, [&](double x) { return at(1.0 / x, options.ir_cutoff); }, options.jobs);
        r.nonplanar_uv_finite.sweep = sweep(cutoffs, [&](double lambda) { return at(1.0, lambda); }, options.jobs);
        r.nonplanar_ir_singular.note = "Schwinger-regulated non-planar integral, p -> 0";
        r.nonplanar_uv_finite.note = "Schwinger-regulated non-planar integral, fixed p";
    } else {
        const int d = g.dim() - 1;
        const auto dir = options.direction.empty() ? kappa_direction(d) : options.direction;
        if (static_cast<int>(dir.size()) != d + 1) throw std::invalid_argument("direction must have the group dimension");
        auto at = [&](double t, double lambda) {
            const auto v = kappa_nonplanar(ks, scaled(dir, t), lambda);
            return IntegralResult{std::abs(v.value), v.error};
        };
        const double ir_cutoff = std::min(options.ir_cutoff, 1e3);
        r.nonplanar_ir_singular.sweep =
            sweep(inverse_momenta, [&](double x) { return at(1.0 / x, ir_cutoff); }, options.jobs);
        r.nonplanar_uv_finite.sweep = sweep(cutoffs, [&](double lambda) { return at(1.0, lambda); }, options.jobs);
        r.nonplanar_ir_singular.note = "Wick-rotated energy integral at q = -p, delta Jacobian factored out";
        r.nonplanar_uv_finite.note = r.nonplanar_ir_singular.note;
    }
    if (kind != GroupKind::abelian) {
        r.nonplanar_ir_singular.holds = verdict_of(r.nonplanar_ir_singular.sweep.trend, true);
        r.nonplanar_uv_finite.holds = verdict_of(r.nonplanar_uv_finite.sweep.trend, false);
    }

    const std::array<std::optional<bool>, 3> all{r.planar_uv_divergent.holds, r.nonplanar_ir_singular.holds,
                                                 r.nonplanar_uv_finite.holds};
    if (std::all_of(all.begin(), all.end(), [](const auto& h) { return h == true; }))
        r.verdict = Verdict::mixing;
    else if (std::any_of(all.begin(), all.end(), [](const auto& h) { return h == false; }))
        r.verdict = Verdict::no_mixing;
    return r;
}

std::vector<Contraction> diagram_enumerate(FieldKind field)
{
    // +1 marks a conjugate leg that absorbs the incoming line p, -1 a plain leg for q.
    std::array<int, 4> charge{0, 0, 0, 0};
    if (field == FieldKind::charged_orientable) charge = {1, -1, 1, -1};
    if (field == FieldKind::charged_nonorientable) charge = {1, 1, -1, -1};

    std::vector<Contraction> out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            if (field != FieldKind::real_phi4 && (charge[a] != 1 || charge[b] != -1)) continue;
            Contraction c{a, b, {}, false};
            int slot = 0;
            for (int l = 0; l < 4; ++l)
                if (l != a && l != b) c.loop_legs[slot++] = l;
            const int gap = c.loop_legs[1] - c.loop_legs[0];
            c.planar = gap == 1 || gap == 3;
            out.push_back(c);
        }
    return out;
}

double sum_order_integrand(MomentumView k, double mass, double kappa, int d)
{
    if (static_cast<int>(k.size()) != d + 1) throw std::invalid_argument("momentum dimension mismatch");
    const double x = k[0] / (2.0 * kappa);
    const double sinhc = std::abs(x) < 1e-4 ? 1.0 + x * x / 6.0 : std::sinh(x) / x;
    const double factor = -sinhc / (2.0 * kappa);  // -sinh(k0/2 kappa)/k0
    double spatial = 0.0;
    for (int j = 1; j <= d; ++j) spatial += k[j] * k[j];
    return std::exp(d * x) * std::pow(factor, d) / (-k[0] * k[0] + spatial + mass * mass);
}

int graviton_divergence_degree(int loops, int d)
{
    if (loops < 0 || d < 1) throw std::invalid_argument("needs L >= 0 and d >= 1");
    return (d - 1) * loops + 2;
}

}  // namespace qst::loop
