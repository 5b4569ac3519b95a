#include "qst/star_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gsl_quadrature.hpp"

namespace qst {

namespace {

constexpr double kPi = std::numbers::pi;
// e^{-(s w)^2 / 4} < 1e-18 beyond this many units of 1/w.
constexpr double kGaussianReach = 13.0;

struct Richardson {
    std::vector<std::vector<cplx>> table;

    // Estimates at widths w 2^k carry errors in powers of 1/w^2.
    void push(cplx estimate)
    {
        std::vector<cplx> row{estimate};
        if (!table.empty()) {
            const auto& prev = table.back();
            double factor = 4.0;
            for (std::size_t j = 1; j <= prev.size(); ++j, factor *= 4.0)
                row.push_back(row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0));
        }
        table.push_back(std::move(row));
    }
    cplx best() const { return table.back().back(); }
    double spread() const
    {
        if (table.size() < 2) return std::abs(best());
        return std::abs(table.back().back() - table[table.size() - 2].back());
    }
};

double amplitude_mass(const WavePacket& w)
{
    double m = 0.0;
    for (const auto& t : w.terms()) m += std::abs(t.amplitude);
    return m;
}

// (1/2pi) int ds dy e^{-i s y} f(x0 + y, xs) g(x0, M(s) xs) with the y window damped.
OracleResult affine_oracle(const WavePacket& f, const WavePacket& g, std::span<const double> x,
                           const QuadratureSpec& spec,
                           const std::function<void(double, std::span<const double>, std::span<double>)>& transform)
{
    const double scale = amplitude_mass(f) * amplitude_mass(g);
    const std::size_t n = x.size();
    std::vector<double> xs(x.begin(), x.end());
    double smin = 0.0, smax = 0.0;
    if (!f.empty()) {
        smin = smax = f.terms().front().p[0];
        for (const auto& t : f.terms()) {
            smin = std::min(smin, t.p[0]);
            smax = std::max(smax, t.p[0]);
        }
    }

    detail::Integrator outer, inner;
    Richardson rich;
    for (int level = 0; level < spec.levels; ++level) {
        const double w = spec.width * std::ldexp(1.0, level);
        const double W = spec.window * std::ldexp(1.0, level);
        const double reach = kGaussianReach / w;
        std::vector<double> shifted(n), moved(n);
        auto h = [&](double s) {
            auto integrand = [&](double y) {
                shifted = xs;
                shifted[0] += y;
                const double damp = std::exp(-(y / w) * (y / w));
                return std::polar(damp, -s * y) * f.evaluate(shifted);
            };
            return inner.finite_complex(integrand, -W, W, spec.rel_tol * 1e-2 * w, spec.rel_tol);
        };
        auto outer_integrand = [&](double s) {
            transform(s, xs, moved);
            moved[0] = xs[0];
            return h(s) * g.evaluate(moved);
        };
        const double eps = spec.rel_tol * (scale + 1e-300);
        const cplx value = outer.finite_complex(outer_integrand, smin - reach, smax + reach, eps, spec.rel_tol);
        rich.push(value / (2.0 * kPi));
    }
    return {rich.best(), star(f, g).evaluate(x), rich.spread()};
}

// Gaussian-damped int dy dz e^{i a y + i b z + i c y z}; the damping limit is 2 pi/|c| e^{-i a b/c}.
cplx damped_chirp(double a, double b, double c, double w, double W, double rel_tol, detail::Integrator& outer,
                  detail::Integrator& inner)
{
    auto over_z = [&](double y) {
        auto integrand = [&](double z) { return std::polar(std::exp(-(z / w) * (z / w)), (b + c * y) * z); };
        return inner.finite_complex(integrand, -W, W, rel_tol * 1e-2 * w, rel_tol);
    };
    auto integrand = [&](double y) { return std::polar(std::exp(-(y / w) * (y / w)), a * y) * over_z(y); };
    // The z integral is negligible unless |b + c y| < reach.
    const double centre = -b / c, half = kGaussianReach / (w * std::abs(c));
    const double lo = std::max(-W, centre - half), hi = std::min(W, centre + half);
    if (lo >= hi) return {};
    return outer.finite_complex(integrand, lo, hi, rel_tol * 1e-2, rel_tol);
}

OracleResult moyal_oracle(const WavePacket& f, const WavePacket& g, std::span<const double> x,
                          const QuadratureSpec& spec)
{
    const auto& grp = f.group();
    const int base = grp.dim() - 1;
    const double theta = grp.deformation();
    {
        Momentum e0(grp.dim(), 0.0), e1(grp.dim(), 0.0);
        e0[0] = 1.0;
        e1[1] = 1.0;
        if (std::abs(grp.add(e0, e1)[base] + 0.5 * theta) > 1e-14 * std::abs(theta))
            throw std::invalid_argument("Moyal star oracle requires the default phase convention");
    }
    const double c = 2.0 / theta;
    detail::Integrator outer, inner;
    cplx numeric{};
    double spread = 0.0;
    for (const auto& tf : f.terms()) {
        for (const auto& tg : g.terms()) {
            cplx kernel = 1.0;
            for (int blk = 0; blk < base; blk += 2) {
                // (y_{2i}, z_{2i+1}) pair with +c, (y_{2i+1}, z_{2i}) pair with -c.
                const double pairs[2][3] = {{tf.p[blk], tg.p[blk + 1], c}, {tf.p[blk + 1], tg.p[blk], -c}};
                for (const auto& pr : pairs) {
                    Richardson rich;
                    for (int level = 0; level < spec.levels; ++level) {
                        const double w = spec.width * std::ldexp(1.0, level);
                        const double W = spec.window * std::ldexp(1.0, level);
                        rich.push(damped_chirp(pr[0], pr[1], pr[2], w, W, spec.rel_tol, outer, inner));
                    }
                    kernel *= rich.best() / (kPi * std::abs(theta));
                    spread = std::max(spread, rich.spread() / (kPi * std::abs(theta)));
                }
            }
            double phase = tf.p[base] + tg.p[base];
            for (int a = 0; a < base; ++a) phase += (tf.p[a] + tg.p[a]) * x[a];
            numeric += tf.amplitude * tg.amplitude * std::polar(1.0, phase) * kernel;
        }
    }
    return {numeric, star(f, g).evaluate(x), spread * amplitude_mass(f) * amplitude_mass(g)};
}

}  // namespace

OracleResult numeric_star_oracle(const WavePacket& f, const WavePacket& g, std::span<const double> x,
                                 QuadratureSpec spec)
{
    if (!f.group().same_group(g.group())) throw std::invalid_argument("wave packets belong to different groups");
    if (spec.levels < 1) throw std::invalid_argument("need at least one quadrature level");
    const auto& grp = f.group();
    const double dp = std::abs(grp.deformation());
    switch (grp.kind()) {
    case GroupKind::kappa: {
        if (grp.law().ordering() != Ordering::right)
            throw std::invalid_argument("integral formula is stated for time-to-the-right plane waves");
        if (spec.window == 0.0) spec.window = 40.0 / dp;
        if (spec.width == 0.0) spec.width = 10.0 / dp;
        const double kappa = dp;
        return affine_oracle(f, g, x, spec, [kappa](double s, std::span<const double> in, std::span<double> out) {
            const double e = std::exp(-s / kappa);
            for (std::size_t j = 1; j < in.size(); ++j) out[j] = e * in[j];
        });
    }
    case GroupKind::rho: {
        if (spec.window == 0.0) spec.window = 40.0 / dp;
        if (spec.width == 0.0) spec.width = 10.0 / dp;
        const double rho = grp.deformation();
        // The group law's frame has x2 reflected, so the kernel rotates by -rho s there.
        return affine_oracle(f, g, x, spec, [rho](double s, std::span<const double> in, std::span<double> out) {
            const double cs = std::cos(rho * s), sn = std::sin(rho * s);
            out[1] = cs * in[1] + sn * in[2];
            out[2] = -sn * in[1] + cs * in[2];
            out[3] = in[3];
        });
    }
    case GroupKind::moyal:
        if (spec.window == 0.0) spec.window = 40.0 * std::sqrt(dp);
        if (spec.width == 0.0) spec.width = 10.0 * std::sqrt(dp);
        return moyal_oracle(f, g, x, spec);
    default:
        throw std::invalid_argument("no integral star formula for this group");
    }
}

}  // namespace qst
