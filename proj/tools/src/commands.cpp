#include "qst/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qst/causality_kernel.hpp"
#include "qst/kappa_poincare.hpp"
#include "qst/loop_calculus.hpp"
#include "qst/twisted_gauge.hpp"
#include "qst/wave_algebra.hpp"

namespace qst::cli {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ordered_json momentum_json(MomentumView p) { return ordered_json(std::vector<double>(p.begin(), p.end())); }

std::string group_json(MomentumView result, double residual)
{
    ordered_json j;
    j["result"] = momentum_json(result);
    j["residual"] = residual;
    return j.dump(2) + "\n";
}

std::string emit(const Table& t, Format format) { return format == Format::csv ? t.to_csv() : t.to_json(); }

ordered_json polynomial_json(const gauge::Polynomial& p)
{
    auto arr = ordered_json::array();
    for (const auto& [e, c] : p.terms()) {
        ordered_json term;
        term["exponents"] = std::vector<int>(e.begin(), e.begin() + p.variables());
        term["coefficient"] = c.get_str();
        arr.push_back(std::move(term));
    }
    return arr;
}

mpq_class rational(const ordered_json& v, const std::string& where)
{
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (!v.is_string()) throw UsageError(where + ": coefficient must be an integer or a \"p/q\" string");
    try {
        mpq_class q(v.get<std::string>());
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw UsageError(where + ": '" + v.get<std::string>() + "' is not a rational");
    }
}

gauge::Polynomial polynomial_from(const ordered_json& v, int variables, const std::string& where)
{
    if (!v.is_array()) throw UsageError(where + ": polynomial must be a list of terms");
    gauge::Polynomial p(variables);
    for (std::size_t t = 0; t < v.size(); ++t) {
        const std::string at = where + "/" + std::to_string(t);
        const auto& term = v[t];
        if (!term.is_object() || !term.contains("exponents") || !term.contains("coefficient"))
            throw UsageError(at + ": term needs exponents and coefficient");
        const auto& ex = term.at("exponents");
        if (!ex.is_array() || static_cast<int>(ex.size()) != variables)
            throw UsageError(at + "/exponents: expected " + std::to_string(variables) + " entries");
        gauge::Polynomial::Exponents e{};
        for (int i = 0; i < variables; ++i) {
            if (!ex[static_cast<std::size_t>(i)].is_number_integer() || ex[static_cast<std::size_t>(i)].get<int>() < 0)
                throw UsageError(at + "/exponents: entries must be non-negative integers");
            e[static_cast<std::size_t>(i)] = ex[static_cast<std::size_t>(i)].get<int>();
        }
        p.add_term(e, rational(term.at("coefficient"), at + "/coefficient"));
    }
    return p;
}

std::pair<int, int> integer_range(std::string_view text)
{
    const auto colon = text.find(':');
    auto parse = [&](std::string_view s) {
        int v = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || end != s.data() + s.size()) throw UsageError("'" + std::string(text) + "' is not first:last");
        return v;
    };
    if (colon == std::string_view::npos) {
        const int v = parse(text);
        return {v, v};
    }
    return {parse(text.substr(0, colon)), parse(text.substr(colon + 1))};
}

hopf::Letter letter_named(const std::string& name)
{
    for (const auto l : hopf::generators())
        if (hopf::letter_name(l) == name) return l;
    throw UsageError("unknown generator '" + name + "'");
}

ordered_json residual_json(const hopf::Residual& r)
{
    ordered_json j;
    j["pass"] = r.passed;
    j["residual"] = r.passed ? "0" : r.residual;
    return j;
}

}  // namespace

RunConfig resolve_config(const GlobalOptions& options, const char* env_seed)
{
    RunConfig cfg = options.config_path ? parse_config(read_file(*options.config_path)) : RunConfig{};
    cfg.seed = resolve_seed(options.seed, cfg.seed, env_seed);
    if (options.jobs) {
        if (*options.jobs < 1 || *options.jobs > 256) throw UsageError("--jobs must be between 1 and 256");
        cfg.jobs = *options.jobs;
    }
    if (options.out) cfg.output = *options.out;
    if (options.format) {
        try {
            cfg.format = parse_format(*options.format);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    for (const auto& o : options.tol_overrides) {
        try {
            auto [key, value] = parse_tolerance_override(o);
            cfg.tolerances.insert_or_assign(std::move(key), value);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return cfg;
}

void write_output(const std::string& path, std::string_view text)
{
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

Momentum parse_momentum(std::string_view text)
{
    Momentum p;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = std::min(text.find(',', start), text.size());
        const auto field = text.substr(start, comma - start);
        double v = 0.0;
        const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc{} || end != field.data() + field.size() || !std::isfinite(v))
            throw UsageError("'" + std::string(text) + "' is not a comma-separated list of reals");
        p.push_back(v);
        start = comma + 1;
    }
    return p;
}

CommandResult run_command(Suite s, const RunConfig& cfg)
{
    const SuiteOutcome outcome = run_suite(s, cfg);
    if (outcome.exit_code == exit_code::usage) throw UsageError(outcome.error);
    return {outcome.exit_code, cfg.format == Format::csv ? outcome.report.to_csv() : outcome.report.to_json()};
}

GroupOp parse_group_op(std::string_view name)
{
    if (name == "add") return GroupOp::add;
    if (name == "inv") return GroupOp::inv;
    if (name == "modular") return GroupOp::modular;
    if (name == "haar-check") return GroupOp::haar_check;
    if (name == "delta-solve") return GroupOp::delta_solve;
    throw UsageError("unknown group operation '" + std::string(name) + "'");
}

CommandResult group_command(GroupOp op, const RunConfig& cfg, const std::vector<std::string>& momenta, double k0)
{
    const std::size_t needed = (op == GroupOp::inv || op == GroupOp::modular) ? 1 : 2;
    if (momenta.size() != needed)
        throw UsageError("this operation takes " + std::to_string(needed) + " momentum argument(s)");
    const GroupDescriptor g = cfg.group();
    std::vector<Momentum> p;
    for (const auto& m : momenta) {
        p.push_back(parse_momentum(m));
        if (static_cast<int>(p.back().size()) != g.dim())
            throw UsageError("momentum '" + m + "' needs " + std::to_string(g.dim()) + " components");
    }
    switch (op) {
    case GroupOp::add: {
        const Momentum s = g.add(p[0], p[1]);
        return {exit_code::ok, group_json(s, distance(g.add(s, g.inv(p[1])), p[0]))};
    }
    case GroupOp::inv: {
        const Momentum q = g.inv(p[0]);
        return {exit_code::ok, group_json(q, std::max(norm(g.add(p[0], q)), norm(g.add(q, p[0]))))};
    }
    case GroupOp::modular: {
        const double m = g.modular(p[0]);
        const double r = std::abs(m * g.modular(g.inv(p[0])) - 1.0);
        return {exit_code::ok, group_json(std::vector<double>{m}, r)};
    }
    case GroupOp::haar_check: {
        const double left = haar_invariance_check(g, p[0], p[1]);
        const double right = haar_right_invariance_check(g, p[0], p[1]);
        const double r = std::max(left, right);
        return {r <= cfg.tolerance("group.haar", 1e-8) ? exit_code::ok : exit_code::check_failed,
                group_json(std::vector<double>{left, right}, r)};
    }
    case GroupOp::delta_solve: {
        const auto solved = delta_solve_nonplanar(g, p[0], p[1], k0);
        if (const auto* k = std::get_if<Momentum>(&solved)) {
            Momentum full = *k;
            const Momentum word = g.add(g.add(g.add(p[0], full), p[1]), g.inv(full));
            return {exit_code::ok, group_json(full, norm(word))};
        }
        const auto& none = std::get<NoSolution>(solved);
        ordered_json j;
        j["result"] = ordered_json::array();
        j["residual"] = none.residual;
        j["reason"] = none.reason;
        return {exit_code::check_failed, j.dump(2) + "\n"};
    }
    }
    throw UsageError("unknown group operation");
}

CommandResult hopf_command(const std::vector<std::string>& generators)
{
    std::vector<hopf::Letter> letters;
    for (const auto& name : generators) letters.push_back(letter_named(name));
    if (letters.empty()) letters = hopf::generators();

    const hopf::KappaPoincare kp;
    const auto relations = kp.relations();
    std::vector<hopf::BialgebraReport> bialgebra;
    for (const auto& r : relations) bialgebra.push_back(kp.bialgebra(r));

    bool all = true;
    ordered_json out;
    out["algebra"] = "kappa-poincare";
    auto per = ordered_json::object();
    for (const auto l : letters) {
        const auto a = kp.axioms(l);
        ordered_json g;
        g["coassoc"] = residual_json(a.coassociativity);
        g["counit"] = residual_json(a.left_counit.passed ? a.right_counit : a.left_counit);
        g["antipode"] = residual_json(a.left_antipode.passed ? a.right_antipode : a.left_antipode);
        hopf::Residual compat;
        int count = 0;
        for (std::size_t i = 0; i < relations.size(); ++i) {
            if (relations[i].a != l && relations[i].b != l) continue;
            ++count;
            if (!bialgebra[i].passed() && compat.passed) compat = {false, bialgebra[i].name};
        }
        g["bialgebra"] = residual_json(compat);
        g["bialgebra"]["relations"] = count;
        all = all && a.passed() && compat.passed;
        per[hopf::letter_name(l)] = std::move(g);
    }
    out["generators"] = std::move(per);
    out["passed"] = all;
    return {all ? exit_code::ok : exit_code::check_failed, out.dump(2) + "\n"};
}

CommandResult matrix_basis_command(int truncation, double theta, std::string_view check, std::uint64_t seed)
{
    if (truncation < 1) throw UsageError("--N must be positive");
    const Report full = matrix_basis_checks(truncation, theta, seed, 1e-13);
    const std::vector<std::pair<std::string_view, std::string_view>> names{
        {"product", "basis product and involution rules"},
        {"product", "star product identities"},
        {"involution", "basis product and involution rules"},
        {"involution", "involution identities"},
        {"trace", "trace identities"},
        {"partition", "diagonal partition of unity"},
    };
    if (check != "all" && std::none_of(names.begin(), names.end(), [&](const auto& n) { return n.first == check; }))
        throw UsageError("--check must be all, product, involution, trace or partition");
    ordered_json out;
    out["N"] = truncation;
    out["theta"] = theta;
    auto checks = ordered_json::object();
    bool all = true;
    for (const auto& c : full.checks) {
        const bool selected = check == "all" || std::any_of(names.begin(), names.end(), [&](const auto& n) {
                                  return n.first == check && n.second == c.name;
                              });
        if (!selected) continue;
        ordered_json row;
        row["pass"] = c.passed;
        row["residual"] = c.residual ? ordered_json(*c.residual) : ordered_json(nullptr);
        row["detail"] = c.detail;
        checks[c.name] = std::move(row);
        all = all && c.passed;
    }
    out["checks"] = std::move(checks);
    out["passed"] = all;
    return {all ? exit_code::ok : exit_code::check_failed, out.dump(2) + "\n"};
}

CommandResult mixing_command(const MixingRequest& request, Format format)
{
    GroupDescriptor g = [&] {
        try {
            if (request.space == "kappa") return kappa_group(request.deformation, request.d);
            if (request.space == "moyal") return moyal_group(request.deformation, request.d);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        throw UsageError("--space must be kappa or moyal");
    }();
    loop::MixingOptions options;
    try {
        options.cutoffs = loop::GeometricGrid::parse(request.lambda_grid);
        options.inverse_momenta = loop::GeometricGrid::parse(request.inverse_momentum_grid);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    options.jobs = request.jobs;
    const auto report = loop::mixing_classify(loop::standard_kinetic(g, request.mass), options);
    const std::vector<std::pair<std::string, const loop::Criterion*>> criteria{
        {"planar_uv", &report.planar_uv_divergent},
        {"nonplanar_ir", &report.nonplanar_ir_singular},
        {"nonplanar_uv", &report.nonplanar_uv_finite},
    };
    std::string text;
    if (format == Format::csv) {
        Table t({"sweep", "parameter", "value", "error"});
        for (const auto& [name, c] : criteria)
            for (const auto& pt : c->sweep.points)
                t.add_row({name, format_number(pt.parameter), format_number(pt.value), format_number(pt.error)});
        text = t.to_csv();
    } else {
        ordered_json j;
        j["space"] = request.space;
        j["d"] = request.d;
        j["mass"] = request.mass;
        for (const auto& [name, c] : criteria) {
            ordered_json cj;
            cj["holds"] = c->holds ? ordered_json(*c->holds) : ordered_json(nullptr);
            cj["trend"] = loop::to_string(c->sweep.trend);
            cj["slope"] = c->sweep.slope;
            cj["monotone"] = c->sweep.monotone;
            cj["note"] = c->note;
            auto pts = ordered_json::array();
            for (const auto& pt : c->sweep.points)
                pts.push_back(ordered_json{{"parameter", pt.parameter}, {"value", pt.value}, {"error", pt.error}});
            cj["points"] = std::move(pts);
            j[name] = std::move(cj);
        }
        j["verdict"] = loop::to_string(report.verdict);
        text = j.dump(2) + "\n";
    }
    const bool conclusive = report.verdict != loop::Verdict::inconclusive;
    return {conclusive ? exit_code::ok : exit_code::check_failed, text};
}

CommandResult bessel_command(const std::vector<double>& grid, const std::vector<int>& dims, int jobs, Format format)
{
    if (grid.empty() || dims.empty()) throw UsageError("bessel check needs a grid and dimensions");
    for (double v : grid)
        if (!(v > 0.0)) throw UsageError("bessel grid values must be positive");
    for (int d : dims)
        if (d < 1) throw UsageError("bessel dimensions must be positive");
    const auto check = loop::bessel_ratio_table(grid, grid, dims, jobs);
    Table t({"mass", "kappa", "d", "closed_form", "oracle", "ratio"});
    for (const auto& r : check.rows)
        t.add_row({format_number(r.mass), format_number(r.kappa), std::to_string(r.d), format_number(r.closed_form),
                   format_number(r.oracle), format_number(r.ratio)});
    return {check.max_relative_deviation <= 1e-6 ? exit_code::ok : exit_code::check_failed, emit(t, format)};
}

CommandResult dimension_scan_command(double kappa, std::string_view d_range, const std::vector<double>& energies,
                                     Format format)
{
    const auto [first, last] = integer_range(d_range);
    if (first < 1 || last < first || last > 64) throw UsageError("--d must be first:last with 1 <= first <= last <= 64");
    if (!(kappa > 0.0)) throw UsageError("--kappa must be positive");
    const auto rows = gauge::dimension_constraint_scan(first, last, kappa, energies);
    Table t({"d", "max_deviation"});
    for (const auto& r : rows) t.add_row({std::to_string(r.d), format_number(r.max_deviation)});
    return {exit_code::ok, emit(t, format)};
}

CommandResult seiberg_witten_command(std::string_view input_json)
{
    ordered_json in;
    try {
        in = ordered_json::parse(input_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("fields file is not JSON: ") + e.what());
    }
    if (!in.is_object() || !in.contains("variables") || !in.contains("theta") || !in.contains("field"))
        throw UsageError("fields file needs variables, theta and field");
    if (!in.at("variables").is_number_integer()) throw UsageError("/variables: expected an integer");
    const int n = in.at("variables").get<int>();
    if (n < 1 || n > gauge::Polynomial::max_variables) throw UsageError("/variables: must be between 1 and 4");

    const auto& th = in.at("theta");
    if (!th.is_array() || static_cast<int>(th.size()) != n) throw UsageError("/theta: expected an n x n matrix");
    gauge::RationalMatrix theta;
    for (int i = 0; i < n; ++i) {
        const auto& row = th[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) throw UsageError("/theta: expected an n x n matrix");
        for (int j = 0; j < n; ++j)
            theta.push_back(rational(row[static_cast<std::size_t>(j)], "/theta/" + std::to_string(i) + "/" + std::to_string(j)));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (theta[static_cast<std::size_t>(i * n + j)] != -theta[static_cast<std::size_t>(j * n + i)])
                throw UsageError("/theta: must be antisymmetric");

    const auto& fj = in.at("field");
    if (!fj.is_array() || static_cast<int>(fj.size()) != n) throw UsageError("/field: expected one polynomial per variable");
    gauge::PolynomialField field;
    for (int mu = 0; mu < n; ++mu)
        field.push_back(polynomial_from(fj[static_cast<std::size_t>(mu)], n, "/field/" + std::to_string(mu)));

    ordered_json out;
    bool consistent = true;
    try {
        const auto sw = gauge::sw_map_order1(field, theta);
        auto a = ordered_json::array();
        for (const auto& p : sw.field) a.push_back(polynomial_json(p));
        auto f = ordered_json::array();
        for (const auto& p : sw.strength) f.push_back(polynomial_json(p));
        out["field_hat"] = std::move(a);
        out["strength_hat"] = std::move(f);
        auto strength = ordered_json::array();
        for (const auto& p : gauge::sw_strength_consistency(field, theta)) {
            consistent = consistent && p.is_zero();
            strength.push_back(polynomial_json(p));
        }
        out["strength_residual"] = std::move(strength);
        if (in.contains("alpha")) {
            const auto alpha = polynomial_from(in.at("alpha"), n, "/alpha");
            auto gauge_res = ordered_json::array();
            for (const auto& p : gauge::sw_consistency(field, alpha, theta)) {
                consistent = consistent && p.is_zero();
                gauge_res.push_back(polynomial_json(p));
            }
            out["gauge_residual"] = std::move(gauge_res);
        }
    } catch (const std::length_error& e) {
        throw UsageError(e.what());
    }
    out["consistent"] = consistent;
    return {consistent ? exit_code::ok : exit_code::check_failed, out.dump(2) + "\n"};
}

CommandResult cone_command(const ConeRequest& request, Format format)
{
    using namespace qst::causality;
    if (!(request.kappa > 0.0)) throw UsageError("--kappa must be positive");
    if (request.states < 1) throw UsageError("--states must be positive");
    const std::vector<double> slopes = arithmetic_grid(request.slopes);
    GridSpec grid = [&] {
        try {
            GridSpec g = GridSpec::for_kappa(request.grid_points, request.kappa);
            g.require_compatible(request.kappa);
            (void)gaussian_family(g, 1, request.seed);
            return g;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    ConeOptions options;
    options.states = request.states;
    options.seed = request.seed;
    options.jobs = request.jobs;
    Table t({"v", "min_margin", "pass"});
    for (double v : slopes) {
        double margin = std::numeric_limits<double>::infinity();
        bool pass = true;
        for (int a : {1, -1}) {
            const ConeReport r = cone_condition(grid, request.kappa, a, 1.0, v, options);
            margin = std::min(margin, r.margin());
            pass = pass && r.pass();
        }
        t.add_row({format_number(v), format_number(margin), pass ? "PASS" : "FAIL"});
    }
    // Slopes outside the cone are expected to fail; the table is the result.
    return {exit_code::ok, emit(t, format)};
}

}  // namespace qst::cli
