#include "qst/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

#include <json.hpp>

namespace qst::cli {

namespace {

using nlohmann::json;

std::string child(const std::string& pointer, std::string_view key)
{
    // RFC 6901 escaping of '~' and '/'.
    std::string escaped;
    for (char c : key) {
        if (c == '~') escaped += "~0";
        else if (c == '/') escaped += "~1";
        else escaped += c;
    }
    return pointer + "/" + escaped;
}

std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

void require_keys(const json& obj, const std::string& pointer, const std::set<std::string>& allowed)
{
    if (!obj.is_object()) throw ConfigError(pointer, "expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key)) throw ConfigError(child(pointer, key), "unknown key");
}

double number(const json& v, const std::string& pointer)
{
    if (!v.is_number()) throw ConfigError(pointer, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(pointer, "expected a finite number");
    return x;
}

long long integer(const json& v, const std::string& pointer, long long lo, long long hi)
{
    if (!v.is_number_integer()) throw ConfigError(pointer, "expected an integer");
    const long long x = v.get<long long>();
    if (x < lo || x > hi)
        throw ConfigError(pointer, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

std::string text(const json& v, const std::string& pointer)
{
    if (!v.is_string()) throw ConfigError(pointer, "expected a string");
    return v.get<std::string>();
}

StructureConstants inline_structure(const json& obj, const std::string& pointer)
{
    require_keys(obj, pointer, {"name", "dim", "deformation", "labels", "entries"});
    for (const char* key : {"name", "dim", "deformation", "entries"})
        if (!obj.contains(key)) throw ConfigError(child(pointer, key), "missing required key");
    text(obj.at("name"), child(pointer, "name"));
    const long long dim = integer(obj.at("dim"), child(pointer, "dim"), 1, 64);
    number(obj.at("deformation"), child(pointer, "deformation"));
    if (obj.contains("labels")) {
        const auto& labels = obj.at("labels");
        const std::string lp = child(pointer, "labels");
        if (!labels.is_array() || static_cast<long long>(labels.size()) != dim)
            throw ConfigError(lp, "expected an array of dim strings");
        for (std::size_t i = 0; i < labels.size(); ++i) text(labels[i], child(lp, i));
    }
    const auto& entries = obj.at("entries");
    const std::string ep = child(pointer, "entries");
    if (!entries.is_array()) throw ConfigError(ep, "expected an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string p = child(ep, i);
        require_keys(entries[i], p, {"mu", "nu", "rho", "re", "im"});
        for (const char* idx : {"mu", "nu", "rho"}) {
            if (!entries[i].contains(idx)) throw ConfigError(child(p, idx), "missing required key");
            integer(entries[i].at(idx), child(p, idx), 0, dim - 1);
        }
        for (const char* part : {"re", "im"})
            if (entries[i].contains(part)) number(entries[i].at(part), child(p, part));
    }
    return structure_from_json(obj.dump());
}

int default_d(Preset p) { return p == Preset::moyal_extended ? 4 : 3; }

}  // namespace

ConfigError::ConfigError(std::string pointer, const std::string& message)
    : std::runtime_error((pointer.empty() ? std::string("(root)") : pointer) + ": " + message), pointer_(std::move(pointer))
{
}

std::string_view to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

Format parse_format(std::string_view text)
{
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw std::invalid_argument("format must be csv or json");
}

std::string_view deformation_key(Preset p)
{
    switch (p) {
    case Preset::kappa_minkowski: return "kappa";
    case Preset::moyal_extended: return "theta";
    case Preset::rho_minkowski: return "rho";
    case Preset::su2_lambda: return "lambda";
    }
    return "deformation";
}

std::optional<Preset> RunConfig::preset() const
{
    if (const auto* p = std::get_if<Preset>(&spacetime)) return *p;
    return std::nullopt;
}

int RunConfig::group_dim() const
{
    const auto p = preset();
    if (!p) return std::get<StructureConstants>(spacetime).dim();
    switch (*p) {
    case Preset::kappa_minkowski:
    case Preset::moyal_extended: return d + 1;
    case Preset::rho_minkowski: return 4;
    case Preset::su2_lambda: return 3;
    }
    return d;
}

StructureConstants RunConfig::structure() const
{
    if (const auto p = preset()) return qst::preset(*p, deformation, group_dim());
    return std::get<StructureConstants>(spacetime);
}

GroupDescriptor RunConfig::group() const
{
    if (const auto p = preset()) return group_for(*p, deformation, group_dim());
    return bch_group(std::get<StructureConstants>(spacetime));
}

double RunConfig::tolerance(const std::string& key, double fallback) const
{
    const auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
}

RunConfig parse_config(std::string_view input)
{
    json doc;
    try {
        doc = json::parse(input);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    RunConfig cfg;
    const std::string root;
    require_keys(doc, root,
                 {"spacetime", "kappa", "theta", "rho", "lambda", "d", "seed", "jobs", "output", "tolerances",
                  "parameters"});
    if (!doc.contains("spacetime")) throw ConfigError("/spacetime", "missing required key");

    const auto& st = doc.at("spacetime");
    if (st.is_string()) {
        Preset p{};
        try {
            p = parse_preset(st.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw ConfigError("/spacetime", "unknown preset '" + st.get<std::string>() + "'");
        }
        cfg.spacetime = p;
        cfg.d = default_d(p);
        for (Preset other : {Preset::kappa_minkowski, Preset::moyal_extended, Preset::rho_minkowski, Preset::su2_lambda}) {
            const std::string key(deformation_key(other));
            if (!doc.contains(key)) continue;
            if (other != p) throw ConfigError("/" + key, "does not apply to preset " + std::string(to_string(p)));
            cfg.deformation = number(doc.at(key), "/" + key);
        }
        if (doc.contains("d")) cfg.d = static_cast<int>(integer(doc.at("d"), "/d", 1, 16));
        if ((p == Preset::rho_minkowski || p == Preset::su2_lambda) && cfg.d != 3)
            throw ConfigError("/d", "preset " + std::string(to_string(p)) + " fixes d = 3");
        try {
            (void)qst::preset(p, cfg.deformation, cfg.group_dim());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("/" + std::string(deformation_key(p)), e.what());
        }
    } else if (st.is_object()) {
        const auto sc = inline_structure(st, "/spacetime");
        for (const char* key : {"kappa", "theta", "rho", "lambda", "d"})
            if (doc.contains(key)) throw ConfigError(std::string("/") + key, "inline spacetime carries its own parameters");
        cfg.deformation = sc.deformation();
        cfg.d = sc.dim();
        cfg.spacetime = sc;
    } else {
        throw ConfigError("/spacetime", "expected a preset name or a structure-constant object");
    }

    if (doc.contains("seed")) {
        const auto& s = doc.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
            throw ConfigError("/seed", "expected a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("jobs")) cfg.jobs = static_cast<int>(integer(doc.at("jobs"), "/jobs", 1, 256));
    if (doc.contains("output")) {
        const auto& out = doc.at("output");
        require_keys(out, "/output", {"path", "format"});
        if (out.contains("path")) cfg.output = text(out.at("path"), "/output/path");
        if (out.contains("format")) {
            try {
                cfg.format = parse_format(text(out.at("format"), "/output/format"));
            } catch (const std::invalid_argument& e) {
                throw ConfigError("/output/format", e.what());
            }
        }
    }
    if (doc.contains("tolerances")) {
        const auto& tol = doc.at("tolerances");
        if (!tol.is_object()) throw ConfigError("/tolerances", "expected an object");
        for (const auto& [key, value] : tol.items()) {
            const double v = number(value, child("/tolerances", key));
            if (!(v >= 0.0)) throw ConfigError(child("/tolerances", key), "tolerance must be non-negative");
            cfg.tolerances[key] = v;
        }
    }
    if (doc.contains("parameters")) {
        const auto& par = doc.at("parameters");
        const std::string pp = "/parameters";
        require_keys(par, pp,
                     {"mass", "cutoff_grid", "inverse_momentum_grid", "grid_points", "slopes", "truncation", "samples"});
        auto& p = cfg.parameters;
        if (par.contains("mass")) {
            p.mass = number(par.at("mass"), pp + "/mass");
            if (p.mass < 0.0) throw ConfigError(pp + "/mass", "mass must be non-negative");
        }
        if (par.contains("cutoff_grid")) p.cutoff_grid = text(par.at("cutoff_grid"), pp + "/cutoff_grid");
        if (par.contains("inverse_momentum_grid"))
            p.inverse_momentum_grid = text(par.at("inverse_momentum_grid"), pp + "/inverse_momentum_grid");
        if (par.contains("grid_points")) p.grid_points = static_cast<int>(integer(par.at("grid_points"), pp + "/grid_points", 16, 4096));
        if (par.contains("slopes")) p.slopes = text(par.at("slopes"), pp + "/slopes");
        if (par.contains("truncation")) p.truncation = static_cast<int>(integer(par.at("truncation"), pp + "/truncation", 1, 512));
        if (par.contains("samples")) p.samples = static_cast<int>(integer(par.at("samples"), pp + "/samples", 1, 10000000));
    }
    return cfg;
}

std::string serialize_config(const RunConfig& cfg)
{
    nlohmann::ordered_json j;
    if (const auto p = cfg.preset()) {
        j["spacetime"] = std::string(to_string(*p));
        j[std::string(deformation_key(*p))] = cfg.deformation;
        j["d"] = cfg.d;
    } else {
        j["spacetime"] = nlohmann::ordered_json::parse(to_json(std::get<StructureConstants>(cfg.spacetime)));
    }
    if (cfg.seed) j["seed"] = *cfg.seed;
    j["jobs"] = cfg.jobs;
    j["output"] = {{"path", cfg.output}, {"format", std::string(to_string(cfg.format))}};
    j["tolerances"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.tolerances) j["tolerances"][k] = v;
    const auto& p = cfg.parameters;
    j["parameters"] = {{"mass", p.mass},
                       {"cutoff_grid", p.cutoff_grid},
                       {"inverse_momentum_grid", p.inverse_momentum_grid},
                       {"grid_points", p.grid_points},
                       {"slopes", p.slopes},
                       {"truncation", p.truncation},
                       {"samples", p.samples}};
    return j.dump(2);
}

std::pair<std::string, double> parse_tolerance_override(std::string_view input)
{
    const auto eq = input.find('=');
    if (eq == std::string_view::npos || eq == 0) throw std::invalid_argument("tolerance override must be key=value");
    const std::string key(input.substr(0, eq));
    const std::string value(input.substr(eq + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("tolerance override '" + key + "' has a non-numeric value");
    }
    if (used != value.size() || !std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("tolerance override '" + key + "' needs a finite non-negative value");
    return {key, v};
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::optional<std::uint64_t> config_seed, const char* env)
{
    if (flag) return *flag;
    if (config_seed) return *config_seed;
    if (env != nullptr && *env != '\0') {
        const std::string s(env);
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("QSTKIT_SEED is not an unsigned integer");
        }
        if (used != s.size() || s.front() == '-') throw std::invalid_argument("QSTKIT_SEED is not an unsigned integer");
        return v;
    }
    return default_seed;
}

}  // namespace qst::cli
