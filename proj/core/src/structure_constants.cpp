#include "qst/structure_constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qst {

namespace {

constexpr std::pair<Preset, std::string_view> kPresetNames[] = {
    {Preset::kappa_minkowski, "kappa_minkowski"},
    {Preset::moyal_extended, "moyal_extended"},
    {Preset::rho_minkowski, "rho_minkowski"},
    {Preset::su2_lambda, "su2_lambda"},
};

int levi_civita(int a, int b, int c)
{
    if (a == b || b == c || a == c) return 0;
    return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

double first_param(std::span<const double> params, std::string_view what)
{
    if (params.empty()) throw std::invalid_argument(std::string(what) + ": missing deformation parameter");
    return params[0];
}

}  // namespace

std::string_view to_string(Preset p)
{
    for (auto [k, v] : kPresetNames)
        if (k == p) return v;
    return "unknown";
}

Preset parse_preset(std::string_view name)
{
    for (auto [k, v] : kPresetNames)
        if (v == name) return k;
    throw std::invalid_argument("unknown preset: " + std::string(name));
}

StructureConstants::StructureConstants(std::string name, int dim, double deformation)
    : name_(std::move(name)), dim_(dim), deformation_(deformation)
{
    if (dim < 1) throw std::invalid_argument("structure constants need dim >= 1");
    data_.assign(static_cast<std::size_t>(dim) * dim * dim, cplx{});
    labels_.reserve(dim);
    for (int i = 0; i < dim; ++i) labels_.push_back("x" + std::to_string(i));
}

void StructureConstants::set_labels(std::vector<std::string> labels)
{
    if (static_cast<int>(labels.size()) != dim_) throw std::invalid_argument("label count must equal dim");
    labels_ = std::move(labels);
}

std::size_t StructureConstants::index(int mu, int nu, int rho) const
{
    if (mu < 0 || nu < 0 || rho < 0 || mu >= dim_ || nu >= dim_ || rho >= dim_)
        throw std::out_of_range("structure constant index out of range");
    return (static_cast<std::size_t>(mu) * dim_ + nu) * dim_ + rho;
}

void StructureConstants::set(int mu, int nu, int rho, cplx value)
{
    data_[index(mu, nu, rho)] = value;
    data_[index(nu, mu, rho)] = -value;
}

std::vector<double> moyal_theta(int base_dim, double theta)
{
    if (base_dim < 2 || base_dim % 2 != 0) throw std::invalid_argument("Moyal base dimension must be even");
    std::vector<double> t(static_cast<std::size_t>(base_dim) * base_dim, 0.0);
    for (int a = 0; a + 1 < base_dim; a += 2) {
        t[a * base_dim + a + 1] = theta;
        t[(a + 1) * base_dim + a] = -theta;
    }
    return t;
}

StructureConstants preset(Preset which, std::span<const double> params, int dim)
{
    const cplx i{0.0, 1.0};
    switch (which) {
    case Preset::kappa_minkowski: {
        const double kappa = first_param(params, "kappa_minkowski");
        if (!(kappa > 0.0)) throw std::invalid_argument("kappa_minkowski: kappa must be positive");
        if (dim < 2) throw std::invalid_argument("kappa_minkowski: need d >= 1");
        StructureConstants sc("kappa_minkowski", dim, kappa);
        for (int j = 1; j < dim; ++j) sc.set(0, j, j, i / kappa);
        return sc;
    }
    case Preset::moyal_extended: {
        const double theta = first_param(params, "moyal_extended");
        if (theta == 0.0) throw std::invalid_argument("moyal_extended: theta must be nonzero");
        const int base = dim - 1;
        if (base < 2 || base % 2 != 0)
            throw std::invalid_argument("moyal_extended: dim must be an even base dimension plus the phase slot");
        StructureConstants sc("moyal_extended", dim, theta);
        const auto t = moyal_theta(base, theta);
        for (int a = 0; a < base; ++a)
            for (int b = a + 1; b < base; ++b)
                if (t[a * base + b] != 0.0) sc.set(a, b, base, i * t[a * base + b]);
        auto labels = sc.labels();
        labels.back() = "phase";
        sc.set_labels(std::move(labels));
        return sc;
    }
    case Preset::rho_minkowski: {
        const double rho = first_param(params, "rho_minkowski");
        if (rho == 0.0) throw std::invalid_argument("rho_minkowski: rho must be nonzero");
        if (dim != 4) throw std::invalid_argument("rho_minkowski: dim must be 4");
        // Frame in which the rotation law R(rho p0) composes momenta (x2 reflected).
        StructureConstants sc("rho_minkowski", dim, rho);
        sc.set(0, 1, 2, -i * rho);
        sc.set(0, 2, 1, i * rho);
        return sc;
    }
    case Preset::su2_lambda: {
        const double lambda = first_param(params, "su2_lambda");
        if (lambda == 0.0) throw std::invalid_argument("su2_lambda: lambda must be nonzero");
        if (dim != 3) throw std::invalid_argument("su2_lambda: dim must be 3");
        StructureConstants sc("su2_lambda", dim, lambda);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c)
                    if (int e = levi_civita(a, b, c)) sc.set_entry(a, b, c, i * lambda * double(e));
        sc.set_labels({"x1", "x2", "x3"});
        return sc;
    }
    }
    throw std::invalid_argument("unknown preset");
}

JacobiReport jacobi_check(const StructureConstants& c)
{
    JacobiReport r;
    const int n = c.dim();
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
            for (int rho = 0; rho < n; ++rho) {
                r.max_antisymmetry = std::max(r.max_antisymmetry, std::abs(c(mu, nu, rho) + c(nu, mu, rho)));
                for (int tau = 0; tau < n; ++tau) {
                    cplx s{};
                    for (int sg = 0; sg < n; ++sg)
                        s += c(mu, nu, sg) * c(sg, rho, tau) + c(nu, rho, sg) * c(sg, mu, tau) +
                             c(rho, mu, sg) * c(sg, nu, tau);
                    r.max_violation = std::max(r.max_violation, std::abs(s));
                }
            }
    return r;
}

double max_abs_difference(const StructureConstants& a, const StructureConstants& b)
{
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    double m = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
    return m;
}

std::string to_json(const StructureConstants& sc)
{
    nlohmann::ordered_json j;
    j["name"] = sc.name();
    j["dim"] = sc.dim();
    j["deformation"] = sc.deformation();
    j["labels"] = sc.labels();
    auto entries = nlohmann::ordered_json::array();
    const int n = sc.dim();
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
            for (int rho = 0; rho < n; ++rho) {
                const cplx v = sc(mu, nu, rho);
                if (v == cplx{}) continue;
                entries.push_back({{"mu", mu}, {"nu", nu}, {"rho", rho}, {"re", v.real()}, {"im", v.imag()}});
            }
    j["entries"] = std::move(entries);
    return j.dump();
}

StructureConstants structure_from_json(std::string_view text)
{
    const auto j = nlohmann::json::parse(text);
    StructureConstants sc(j.at("name").get<std::string>(), j.at("dim").get<int>(), j.at("deformation").get<double>());
    if (j.contains("labels")) sc.set_labels(j.at("labels").get<std::vector<std::string>>());
    for (const auto& e : j.at("entries"))
        sc.set_entry(e.at("mu").get<int>(), e.at("nu").get<int>(), e.at("rho").get<int>(),
                     cplx{e.value("re", 0.0), e.value("im", 0.0)});
    return sc;
}

}  // namespace qst
