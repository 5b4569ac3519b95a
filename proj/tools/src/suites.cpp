#include "qst/cli/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qst/causality_kernel.hpp"
#include "qst/kappa_poincare.hpp"
#include "qst/loop_calculus.hpp"
#include "qst/moyal_matrix.hpp"
#include "qst/twist.hpp"
#include "qst/twisted_gauge.hpp"
#include "qst/wave_algebra.hpp"

namespace qst::cli {

namespace {

constexpr std::array<std::pair<Suite, std::string_view>, 8> kSuiteNames{{
    {Suite::group, "group"},
    {Suite::hopf, "hopf"},
    {Suite::twist, "twist"},
    {Suite::trace, "trace"},
    {Suite::mixing, "mixing"},
    {Suite::gauge, "gauge"},
    {Suite::causality, "causality"},
    {Suite::all, "all"},
}};

std::uint64_t seed_of(const RunConfig& cfg) { return cfg.seed.value_or(default_seed); }

Check bounded(std::string suite, std::string name, double residual, double tolerance, std::string anchor,
              std::string detail = {})
{
    return Check{std::move(suite), std::move(name), residual <= tolerance, residual, std::move(anchor),
                 detail.empty() ? "tol=" + format_number(tolerance) : std::move(detail)};
}

Check exact(std::string suite, std::string name, bool passed, std::string anchor, std::string detail = {})
{
    return Check{std::move(suite), std::move(name), passed, std::nullopt, std::move(anchor), std::move(detail)};
}

Check from_residual(std::string suite, std::string name, const hopf::Residual& r, std::string anchor)
{
    return exact(std::move(suite), std::move(name), r.passed, std::move(anchor), r.passed ? "exact" : r.residual);
}

bool is_kappa(const RunConfig& cfg) { return cfg.preset() == Preset::kappa_minkowski; }
bool is_moyal(const RunConfig& cfg) { return cfg.preset() == Preset::moyal_extended; }

void require_applicable(Suite s, const RunConfig& cfg)
{
    if (!applicable(s, cfg))
        throw UsageError("suite '" + std::string(to_string(s)) + "' does not apply to this spacetime");
}

double relative_distance(MomentumView a, MomentumView b) { return distance(a, b) / (1.0 + std::max(norm(a), norm(b))); }

WavePacket random_packet(const GroupDescriptor& g, int terms, std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    WavePacket w(g);
    for (int t = 0; t < terms; ++t) w.add_term(sample_momentum(g, rng), cplx{n(rng), n(rng)});
    return w;
}

// The second packet contains inverses of two momenta of the first, so f*g has terms on the
// delta support and the trace comparison is not vacuous.
std::pair<WavePacket, WavePacket> linked_packets(const GroupDescriptor& g, std::mt19937_64& rng)
{
    auto f = random_packet(g, 5, rng);
    auto h = random_packet(g, 5, rng);
    std::normal_distribution<double> n(0.0, 1.0);
    int linked = 0;
    for (const auto& t : f.terms()) {
        if (linked++ == 2) break;
        h.add_term(g.inv(t.p), cplx{n(rng), n(rng)});
    }
    return {f, h};
}

Momentum unit_box_momentum(int dim, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Momentum p(static_cast<std::size_t>(dim));
    for (auto& x : p) x = u(rng);
    return p;
}

cplx normal_amplitude(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng), n(rng)};
}

gauge::GaugeField single_wave_field(const GroupDescriptor& g, std::mt19937_64& rng)
{
    std::vector<WavePacket> c;
    for (int mu = 0; mu < g.dim(); ++mu)
        c.push_back(WavePacket::plane_wave(g, unit_box_momentum(g.dim(), rng), normal_amplitude(rng)));
    return gauge::GaugeField(std::move(c));
}

mpq_class small_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    return mpq_class(num(rng), den(rng));
}

gauge::Polynomial random_polynomial(int vars, int degree, std::mt19937_64& rng)
{
    gauge::Polynomial p(vars);
    std::uniform_int_distribution<int> exponent(0, degree);
    std::uniform_int_distribution<int> var(0, vars - 1);
    for (int t = 0; t < 4; ++t) {
        gauge::Polynomial::Exponents e{};
        int left = exponent(rng);
        while (left-- > 0) ++e[static_cast<std::size_t>(var(rng))];
        p.add_term(e, small_rational(rng));
    }
    return p;
}

double max_abs(const std::vector<moyal::cplx>& v)
{
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

moyal::TruncatedElement random_element(int n, double theta, std::mt19937_64& rng)
{
    std::normal_distribution<double> d(0.0, 1.0);
    moyal::TruncatedElement e(n, theta);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) e.set(m, k, {d(rng), d(rng)});
    return e;
}

}  // namespace

std::string_view to_string(Suite s)
{
    for (const auto& [k, v] : kSuiteNames)
        if (k == s) return v;
    return "unknown";
}

Suite parse_suite(std::string_view name)
{
    for (const auto& [k, v] : kSuiteNames)
        if (v == name) return k;
    throw UsageError("unknown suite '" + std::string(name) + "'");
}

std::vector<double> arithmetic_grid(std::string_view text)
{
    std::vector<double> fields;
    std::string part;
    std::istringstream in{std::string(text)};
    while (std::getline(in, part, ':')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw UsageError("grid field '" + part + "' is not a number");
        }
        if (used != part.size() || !std::isfinite(v)) throw UsageError("grid field '" + part + "' is not a number");
        fields.push_back(v);
    }
    if (fields.size() == 1) return fields;
    if (fields.size() != 3) throw UsageError("grid must be a value or start:stop:step");
    const double start = fields[0], stop = fields[1], step = fields[2];
    if (!(step > 0.0) || stop < start) throw UsageError("grid needs start <= stop and step > 0");
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 0.5));
    if (count > 100000) throw UsageError("grid has too many points");
    std::vector<double> out;
    for (long long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

bool applicable(Suite s, const RunConfig& cfg)
{
    switch (s) {
    case Suite::group:
    case Suite::hopf:
    case Suite::twist:
    case Suite::trace:
    case Suite::all: return true;
    case Suite::mixing: return is_kappa(cfg) || is_moyal(cfg);
    case Suite::gauge:
    case Suite::causality: return is_kappa(cfg);
    }
    return false;
}

Report group_suite(const RunConfig& cfg)
{
    const std::string suite = "group";
    Report r;
    const StructureConstants sc = cfg.structure();
    const GroupDescriptor g = cfg.group();

    const JacobiReport jac = jacobi_check(sc);
    r.add(bounded(suite, "jacobi", std::max(jac.max_violation, jac.max_antisymmetry), cfg.tolerance("group.jacobi", 1e-12),
                  "coordinate brackets form a Lie algebra"));

    std::mt19937_64 rng(seed_of(cfg));
    double assoc = 0.0, ident = 0.0, inverse = 0.0;
    for (int t = 0; t < cfg.parameters.samples; ++t) {
        const auto p = sample_momentum(g, rng);
        const auto q = sample_momentum(g, rng);
        const auto s = sample_momentum(g, rng);
        assoc = std::max(assoc, relative_distance(g.add(g.add(p, q), s), g.add(p, g.add(q, s))));
        ident = std::max({ident, distance(g.add(p, g.zero()), p), distance(g.add(g.zero(), p), p)});
        inverse = std::max({inverse, norm(g.add(p, g.inv(p))), norm(g.add(g.inv(p), p))});
    }
    const std::string n = "samples=" + std::to_string(cfg.parameters.samples);
    r.add(bounded(suite, "associativity", assoc, cfg.tolerance("group.associativity", 1e-9),
                  "momentum addition is a group law", n));
    r.add(bounded(suite, "identity", ident, cfg.tolerance("group.identity", 1e-12), "momentum addition is a group law", n));
    r.add(bounded(suite, "inverse", inverse, cfg.tolerance("group.inverse", 1e-12), "momentum addition is a group law", n));

    r.add(bounded(suite, "structure round trip (series)", max_abs_difference(recover_from_group_law(g), sc),
                  cfg.tolerance("group.round_trip", 1e-12), "second-order group law recovers the brackets"));
    r.add(bounded(suite, "structure round trip (finite difference)",
                  max_abs_difference(recover_from_group_law_numeric(g), sc), cfg.tolerance("group.round_trip_fd", 1e-6),
                  "second-order group law recovers the brackets"));

    // Haar weights exist only for the closed-form laws.
    if (g.kind() != GroupKind::bch) {
        double left = 0.0, right = 0.0, hom = 0.0;
        const int pairs = std::max(1, cfg.parameters.samples / 10);
        for (int t = 0; t < pairs; ++t) {
            const auto p = sample_momentum(g, rng);
            const auto q = sample_momentum(g, rng);
            left = std::max(left, haar_invariance_check(g, q, p));
            right = std::max(right, haar_right_invariance_check(g, q, p));
            const double mp = g.modular(p), mq = g.modular(q);
            hom = std::max({hom, std::abs(g.modular(g.add(p, q)) - mp * mq) / (mp * mq),
                            std::abs(g.modular(g.inv(p)) * mp - 1.0)});
        }
        const std::string np = "pairs=" + std::to_string(pairs);
        r.add(bounded(suite, "haar left invariance", left, cfg.tolerance("group.haar", 1e-8),
                      "Haar weight is translation invariant", np));
        r.add(bounded(suite, "haar right invariance", right, cfg.tolerance("group.haar", 1e-8),
                      "Haar weight is translation invariant", np));
        r.add(bounded(suite, "modular homomorphism", hom, cfg.tolerance("group.modular", 1e-10),
                      "modular function is a homomorphism", np));
        const bool unimodular = g.kind() != GroupKind::kappa;
        double spread = 0.0;
        for (int t = 0; t < 16; ++t) spread = std::max(spread, std::abs(g.modular(sample_momentum(g, rng)) - 1.0));
        r.add(exact(suite, "unimodularity", unimodular ? spread == 0.0 : spread > 0.0,
                    "kappa-Minkowski momentum group is not unimodular; Moyal and rho are",
                    unimodular ? "expected unimodular" : "expected non-unimodular"));
    }
    return r;
}

Report hopf_suite(const RunConfig&)
{
    const std::string suite = "hopf";
    Report r;
    const hopf::KappaPoincare kp;
    for (const auto l : hopf::generators()) {
        const auto a = kp.axioms(l);
        r.add(from_residual(suite, "coassociativity " + a.name, a.coassociativity, "kappa-Poincare coproduct"));
        r.add(from_residual(suite, "counit " + a.name, a.left_counit.passed ? a.right_counit : a.left_counit,
                            "kappa-Poincare counit"));
        r.add(from_residual(suite, "antipode " + a.name, a.left_antipode.passed ? a.right_antipode : a.left_antipode,
                            "kappa-Poincare antipode"));
    }
    for (const auto& rel : kp.relations()) {
        const auto b = kp.bialgebra(rel);
        const bool ok = b.passed();
        std::string detail = "exact";
        for (const auto* res : {&b.holds, &b.coproduct, &b.counit, &b.antipode})
            if (!res->passed) {
                detail = res->residual;
                break;
            }
        r.add(exact(suite, "bialgebra " + b.name, ok, "kappa-Poincare algebra and coalgebra are compatible", detail));
    }
    const auto conf = kp.confluence();
    r.add(exact(suite, "rewrite confluence", conf.passed(), "kappa-Poincare normal ordering is well defined",
                "overlaps=" + std::to_string(conf.overlaps_checked)));
    return r;
}

Report twist_suite(const RunConfig&)
{
    const std::string suite = "twist";
    Report r;
    const int order = 4;
    const auto tc = hopf::twist_check(hopf::abelian_twist(), order);
    const std::string anchor = "abelian Drinfel'd twist";
    r.add(from_residual(suite, "2-cocycle", tc.cocycle, anchor));
    r.add(from_residual(suite, "left normalization", tc.left_normalization, anchor));
    r.add(from_residual(suite, "right normalization", tc.right_normalization, anchor));
    r.add(from_residual(suite, "semiclassical limit", tc.semiclassical, anchor));
    const auto ts = hopf::twisted_structures(hopf::abelian_twist(), order);
    const std::string r_anchor = "R-matrix of the twisted Hopf algebra";
    r.add(from_residual(suite, "triangularity", ts.triangularity, r_anchor));
    r.add(from_residual(suite, "quantum Yang-Baxter", ts.yang_baxter, r_anchor));
    r.add(from_residual(suite, "braided commutativity", ts.braided_commutativity, r_anchor));
    r.add(from_residual(suite, "twisted antipode", ts.twisted_antipode, r_anchor));
    r.summary.emplace_back("twist.order", std::to_string(order));
    return r;
}

Report matrix_basis_checks(int truncation, double theta, std::uint64_t seed, double tolerance)
{
    const std::string suite = "trace";
    const std::string anchor = "Moyal matrix basis";
    Report r;
    const moyal::MatrixBasis b(truncation, theta);

    bool rules = true;
    for (int m = 0; m < truncation; ++m)
        for (int n = 0; n < truncation; ++n) {
            rules = rules && b.dagger({m, n}) == moyal::BasisIndex{n, m};
            for (int k = 0; k < truncation; ++k)
                for (int l = 0; l < truncation; ++l) {
                    const auto p = b.product({m, n}, {k, l});
                    rules = rules && (n == k ? p.has_value() && *p == moyal::BasisIndex{m, l} : !p.has_value());
                }
        }
    r.add(exact(suite, "basis product and involution rules", rules, anchor, "N=" + std::to_string(truncation)));

    std::mt19937_64 rng(seed);
    double product = 0.0, involution = 0.0, trace = 0.0;
    for (int t = 0; t < 4; ++t) {
        const auto x = random_element(truncation, theta, rng);
        const auto y = random_element(truncation, theta, rng);
        const auto z = random_element(truncation, theta, rng);
        const auto xy = moyal::star(x, y);
        const double scale = 1.0 + max_abs(moyal::star(xy, z).coefficients());
        product = std::max(product, moyal::star(xy, z).distance(moyal::star(x, moyal::star(y, z))) / scale);
        product = std::max(product, moyal::star(b.unit(), x).distance(x));
        involution = std::max(involution, moyal::dagger(xy).distance(moyal::star(moyal::dagger(y), moyal::dagger(x))) /
                                              (1.0 + max_abs(xy.coefficients())));
        involution = std::max(involution, moyal::dagger(moyal::dagger(x)).distance(x));
        // <x, y> = conj <y, x>, and Tr(x y z) = Tr(y z x) written through the pairing.
        const moyal::cplx a = moyal::trace_pairing(x, y), c = moyal::trace_pairing(y, x);
        const moyal::cplx cyc1 = moyal::trace_pairing(moyal::dagger(x), moyal::star(y, z));
        const moyal::cplx cyc2 = moyal::trace_pairing(moyal::dagger(y), moyal::star(z, x));
        const double tscale = 1.0 + std::abs(cyc1) + std::abs(a);
        trace = std::max({trace, std::abs(a - std::conj(c)) / tscale, std::abs(cyc1 - cyc2) / tscale});
    }
    r.add(bounded(suite, "star product identities", product, tolerance, anchor));
    r.add(bounded(suite, "involution identities", involution, tolerance, anchor));
    r.add(bounded(suite, "trace identities", trace, tolerance, anchor));

    const auto part = moyal::partition_check(truncation, theta, 16, seed);
    const double worst = std::max({part.positivity_error, part.unity_error, part.commutation_error, part.product_family_error});
    r.add(exact(suite, "diagonal partition of unity", worst == 0.0 && part.passed(),
                "noncommutative partition of unity", "max error=" + format_number(worst)));
    return r;
}

// tr ad_x = 0 for every x; the truncated BCH laws carry no modular weight, so trace checks on
// inline algebras only make sense in this case.
bool trace_free_adjoint(const StructureConstants& sc)
{
    for (int nu = 0; nu < sc.dim(); ++nu) {
        cplx t = 0.0;
        for (int mu = 0; mu < sc.dim(); ++mu) t += sc(nu, mu, mu);
        if (t != 0.0) return false;
    }
    return true;
}

Report trace_suite(const RunConfig& cfg)
{
    const std::string suite = "trace";
    Report r;
    const GroupDescriptor g = cfg.group();
    if (g.kind() == GroupKind::bch && !trace_free_adjoint(g.structure())) {
        r.summary.emplace_back("trace.skipped", "inline algebra is not unimodular and has no modular weight");
        return r;
    }
    std::mt19937_64 rng(seed_of(cfg));
    const bool unimodular = g.kind() != GroupKind::kappa;
    int twisted = 0, plain = 0;
    const int pairs = 100;
    for (int t = 0; t < pairs; ++t) {
        const auto [f, h] = linked_packets(g, rng);
        twisted += twisted_trace_check(f, h);
        plain += cyclicity_check(f, h);
    }
    const std::string detail = "pairs=" + std::to_string(pairs);
    r.add(exact(suite, "twisted trace", twisted == pairs, "integral is a twisted trace with the modular twist",
                detail + " held=" + std::to_string(twisted)));
    if (unimodular)
        r.add(exact(suite, "plain cyclicity", plain == pairs, "integral is cyclic on unimodular momentum groups",
                    detail + " held=" + std::to_string(plain)));
    else
        r.add(exact(suite, "plain cyclicity broken", plain < pairs,
                    "integral is not cyclic on kappa-Minkowski", detail + " held=" + std::to_string(plain)));

    if (is_moyal(cfg))
        r.merge(matrix_basis_checks(cfg.parameters.truncation, cfg.deformation, seed_of(cfg),
                                    cfg.tolerance("trace.matrix", 1e-13)));
    return r;
}

Report mixing_suite(const RunConfig& cfg)
{
    require_applicable(Suite::mixing, cfg);
    const std::string suite = "mixing";
    Report r;
    const GroupDescriptor g = cfg.group();
    const double mass = cfg.parameters.mass;

    loop::MixingOptions opts;
    try {
        opts.cutoffs = loop::GeometricGrid::parse(cfg.parameters.cutoff_grid);
        opts.inverse_momenta = loop::GeometricGrid::parse(cfg.parameters.inverse_momentum_grid);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    opts.jobs = cfg.jobs;
    const auto rep = loop::mixing_classify(loop::standard_kinetic(g, mass), opts);
    const loop::Verdict expected = is_moyal(cfg) ? loop::Verdict::mixing : loop::Verdict::no_mixing;
    // Moyal: all three criteria hold. kappa-Minkowski: only non-planar UV finiteness does.
    auto criterion = [&](const std::string& name, const loop::Criterion& c, bool expected) {
        const std::string holds = c.holds ? (*c.holds ? "yes" : "no") : "inconclusive";
        r.add(Check{suite, name, c.holds == expected, c.sweep.slope, "one-loop divergence structure",
                    "holds=" + holds + " expected=" + (expected ? "yes" : "no") +
                        " trend=" + loop::to_string(c.sweep.trend)});
    };
    criterion("planar UV divergence", rep.planar_uv_divergent, is_moyal(cfg));
    criterion("non-planar IR singularity", rep.nonplanar_ir_singular, is_moyal(cfg));
    criterion("non-planar UV finiteness", rep.nonplanar_uv_finite, true);
    r.add(exact(suite, "verdict", rep.verdict == expected,
                is_moyal(cfg) ? "Moyal tadpole shows UV/IR mixing" : "kappa-Minkowski tadpole shows no UV/IR mixing",
                "verdict=" + loop::to_string(rep.verdict) + " expected=" + loop::to_string(expected)));
    r.summary.emplace_back("mixing.verdict", loop::to_string(rep.verdict));

    if (is_kappa(cfg)) {
        const std::array<double, 3> grid{0.5, 1.0, 2.0};
        const std::array<int, 2> dims{2, 3};
        const auto b = loop::bessel_ratio_table(grid, grid, dims, cfg.jobs);
        r.add(bounded(suite, "Bessel ratio constancy", b.max_relative_deviation, cfg.tolerance("mixing.bessel", 1e-6),
                      "kappa-Minkowski propagator integral in Bessel form",
                      "mean ratio=" + format_number(b.mean_ratio)));
    } else {
        const auto theta = moyal_theta(cfg.d, cfg.deformation);
        double closed_form = 0.0;
        for (double scale : {0.05, 0.2, 1.0, 3.0}) {
            std::vector<double> p(static_cast<std::size_t>(cfg.d), 0.0);
            p[0] = scale;
            if (p.size() > 1) p[1] = -0.5 * scale;
            closed_form = std::max(closed_form, loop::moyal_nonplanar(p, theta, mass, 1e8).relative_error);
        }
        r.add(bounded(suite, "non-planar Bessel closed form", closed_form, cfg.tolerance("mixing.moyal_k1", 1e-6),
                      "Moyal non-planar tadpole in Bessel form"));
        std::vector<double> tiny(static_cast<std::size_t>(cfg.d), 0.0);
        tiny[0] = 2e-3;
        const auto small = loop::moyal_nonplanar(tiny, theta, mass, 1e9);
        const auto a = loop::asymptotic_check(small, mass);
        r.add(bounded(suite, "effective cutoff asymptotics", std::abs(a.ratio - 1.0), cfg.tolerance("mixing.asymptotic", 0.02),
                      "effective cutoff of the non-planar tadpole", "m^2 c=" + format_number(a.mass_sq_c)));
        const auto tp = loop::two_point_assemble(g);
        r.add(exact(suite, "unimodular two-point weights", tp.unimodular_planar() == mpq_class(1, 3) &&
                                                                tp.unimodular_nonplanar() == mpq_class(1, 6),
                    "Moyal two-point function (2 + phase)/6",
                    "planar=" + tp.unimodular_planar().get_str() + " nonplanar=" + tp.unimodular_nonplanar().get_str()));
    }
    const auto flat = loop::two_point_assemble(abelian_group(g.dim()));
    r.add(exact(suite, "commutative two-point coefficient", flat.commutative_coefficient() == mpq_class(1, 2),
                "commutative phi^4 two-point function", "coefficient=" + flat.commutative_coefficient().get_str()));

    auto count = [](loop::FieldKind k) {
        int planar = 0, nonplanar = 0;
        for (const auto& c : loop::diagram_enumerate(k)) (c.planar ? planar : nonplanar)++;
        return std::pair{planar, nonplanar};
    };
    const auto real = count(loop::FieldKind::real_phi4);
    const auto orient = count(loop::FieldKind::charged_orientable);
    const auto nonorient = count(loop::FieldKind::charged_nonorientable);
    r.add(exact(suite, "diagram counts",
                real == std::pair{8, 4} && orient == std::pair{4, 0} && nonorient == std::pair{2, 2},
                "one-loop contractions of the quartic vertex",
                "real=" + std::to_string(real.first) + "+" + std::to_string(real.second) +
                    " orientable=" + std::to_string(orient.first) + "+" + std::to_string(orient.second) +
                    " nonorientable=" + std::to_string(nonorient.first) + "+" + std::to_string(nonorient.second)));
    return r;
}

Report gauge_suite(const RunConfig& cfg)
{
    require_applicable(Suite::gauge, cfg);
    const std::string suite = "gauge";
    Report r;
    const GroupDescriptor g = cfg.group();
    std::mt19937_64 rng(seed_of(cfg));
    const double tol = cfg.tolerance("gauge.residual", 1e-12);
    const int samples = 25;

    double leibniz = 0.0, reality = 0.0, flat = 0.0, covariance = 0.0;
    for (int t = 0; t < samples; ++t) {
        const auto f = WavePacket::plane_wave(g, unit_box_momentum(g.dim(), rng), normal_amplitude(rng));
        const auto h = WavePacket::plane_wave(g, unit_box_momentum(g.dim(), rng), normal_amplitude(rng));
        for (int mu = 0; mu < g.dim(); ++mu) {
            leibniz = std::max(leibniz, gauge::twisted_leibniz_check(mu, f, h));
            reality = std::max(reality, gauge::twisted_reality_check(mu, f));
        }
        const auto u = gauge::GaugeTransform::plane_wave(g, unit_box_momentum(g.dim(), rng), 2.0 * t);
        const auto pure = gauge::field_strength(gauge::gauge_transform(gauge::GaugeField::zero(g), u));
        for (int mu = 0; mu < g.dim(); ++mu)
            for (int nu = 0; nu < g.dim(); ++nu) flat = std::max(flat, pure(mu, nu).distance(WavePacket(g)));
        covariance = std::max(covariance, gauge::covariance_check(single_wave_field(g, rng), u));
    }
    const std::string detail = "samples=" + std::to_string(samples) + " tol=" + format_number(tol);
    r.add(bounded(suite, "twisted Leibniz rule", leibniz, tol, "twisted derivations of kappa-Minkowski", detail));
    r.add(bounded(suite, "twisted reality", reality, tol, "twisted derivations of kappa-Minkowski", detail));
    r.add(bounded(suite, "pure-gauge flatness", flat, tol, "twisted gauge theory field strength", detail));
    r.add(bounded(suite, "field-strength covariance", covariance, tol, "twisted gauge theory field strength", detail));

    const auto rows = gauge::dimension_constraint_scan(1, 8, cfg.deformation, {-1.0, -0.3, 0.5, 1.0});
    std::string zeros;
    bool only_four = true;
    for (const auto& row : rows) {
        if (row.max_deviation == 0.0) zeros += (zeros.empty() ? "" : " ") + std::to_string(row.d);
        only_four = only_four && ((row.max_deviation == 0.0) == (row.d == 4));
    }
    r.add(exact(suite, "dimension constraint", only_four, "gauge invariance of the action needs d = 4",
                "zero set={" + zeros + "}"));

    // Random degree-two fields, parameters and antisymmetric Theta in four variables.
    const int n = 4;
    bool sw_zero = true;
    for (int t = 0; t < 10; ++t) {
        gauge::PolynomialField a;
        for (int mu = 0; mu < n; ++mu) a.push_back(random_polynomial(n, 2, rng));
        const auto alpha = random_polynomial(n, 2, rng);
        gauge::RationalMatrix theta(static_cast<std::size_t>(n * n), 0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const mpq_class v = small_rational(rng);
                theta[static_cast<std::size_t>(i * n + j)] = v;
                theta[static_cast<std::size_t>(j * n + i)] = -v;
            }
        for (const auto& res : gauge::sw_consistency(a, alpha, theta)) sw_zero = sw_zero && res.is_zero();
        for (const auto& res : gauge::sw_strength_consistency(a, theta)) sw_zero = sw_zero && res.is_zero();
    }
    r.add(exact(suite, "Seiberg-Witten consistency", sw_zero, "Seiberg-Witten map at first order",
                "degree<=2 fields, exact rationals"));
    return r;
}

Report causality_suite(const RunConfig& cfg)
{
    require_applicable(Suite::causality, cfg);
    using namespace qst::causality;
    const std::string suite = "causality";
    Report r;
    const double kappa = cfg.deformation;
    GridSpec grid = GridSpec::for_kappa(cfg.parameters.grid_points, kappa);
    try {
        grid.require_compatible(kappa);
        (void)gaussian_family(grid, 1, seed_of(cfg));
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    ConeOptions options;
    options.seed = seed_of(cfg);
    options.jobs = cfg.jobs;
    const std::string anchor = "causal cone of kappa-Minkowski in 1+1 dimensions";
    for (double v : arithmetic_grid(cfg.parameters.slopes)) {
        bool inside = true;
        double margin = std::numeric_limits<double>::infinity();
        for (int a : {1, -1}) {
            const ConeReport c = cone_condition(grid, kappa, a, 1.0, v, options);
            inside = inside && c.pass();
            margin = std::min(margin, c.margin());
        }
        const bool expected = std::abs(v) <= 1.0;
        r.add(Check{suite, "cone v=" + format_number(v), inside == expected, margin, anchor,
                    std::string(inside ? "in cone" : "outside cone") + " states=" + std::to_string(options.states)});
    }

    const AxiomReport ax = lorentzian_axiom_check(grid, kappa, seed_of(cfg));
    r.add(exact(suite, "fundamental symmetry squares to one", ax.i_squared_residual == 0.0, "Lorentzian spectral triple"));
    r.add(exact(suite, "fundamental symmetry is self-adjoint", ax.i_hermitian_residual == 0.0, "Lorentzian spectral triple"));
    const GridSpec coarse(grid.size(), grid.half_width(), DerivativeScheme::central);
    const GridSpec fine(2 * grid.size(), grid.half_width(), DerivativeScheme::central);
    const double before = lorentzian_axiom_check(coarse, kappa, seed_of(cfg)).krein_residual;
    const double after = lorentzian_axiom_check(fine, kappa, seed_of(cfg)).krein_residual;
    const double ratio = before / after;
    const double order_factor = std::pow(2.0, coarse.order());
    r.add(bounded(suite, "Krein self-adjointness refinement", std::abs(ratio / order_factor - 1.0),
                  cfg.tolerance("causality.refinement", 0.125), "Lorentzian spectral triple",
                  "residual " + format_number(before) + " -> " + format_number(after)));

    const Representation rep = build_operators(grid, kappa, 1);
    const StateVector psi = StateVector::gaussian(grid, 0.05 * grid.half_width(), 0.04 * grid.half_width());
    double sll = 0.0;
    for (double t : {0.1, 0.5, 1.0}) sll = std::max(sll, std::abs(sll_margin(psi, psi.phase_shifted(t / kappa), rep) - t / kappa));
    r.add(bounded(suite, "speed-of-light margin of a time shift", sll, cfg.tolerance("causality.sll", 1e-8),
                  "speed-of-light analogue on states"));
    return r;
}

SuiteOutcome run_suite(Suite s, const RunConfig& cfg)
{
    SuiteOutcome out;
    try {
        switch (s) {
        case Suite::group: out.report = group_suite(cfg); break;
        case Suite::hopf: out.report = hopf_suite(cfg); break;
        case Suite::twist: out.report = twist_suite(cfg); break;
        case Suite::trace: out.report = trace_suite(cfg); break;
        case Suite::mixing: out.report = mixing_suite(cfg); break;
        case Suite::gauge: out.report = gauge_suite(cfg); break;
        case Suite::causality: out.report = causality_suite(cfg); break;
        case Suite::all:
            for (Suite each : {Suite::group, Suite::hopf, Suite::twist, Suite::trace, Suite::mixing, Suite::gauge,
                               Suite::causality})
                if (applicable(each, cfg)) out.report.merge(run_suite(each, cfg).report);
            break;
        }
    } catch (const UsageError& e) {
        out.exit_code = exit_code::usage;
        out.error = e.what();
        return out;
    }
    out.exit_code = out.report.passed() ? exit_code::ok : exit_code::check_failed;
    return out;
}

}  // namespace qst::cli
