#include "qst/causality_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace qst::causality {

namespace {

constexpr cplx I_UNIT{0.0, 1.0};

std::vector<cplx> exp_weights(const GridSpec& grid, double rate)
{
    std::vector<cplx> w(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) w[static_cast<std::size_t>(j)] = std::exp(rate * grid.point(j));
    return w;
}

double weighted_norm(std::span<const cplx> v, double h)
{
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s * h);
}

void require_branch(int branch)
{
    if (branch != 1 && branch != -1) throw std::invalid_argument("representation branch must be +1 or -1");
}

template <class F>
std::vector<double> evaluate_family(const std::vector<StateVector>& family, int jobs, F&& f)
{
    std::vector<double> out(family.size());
    const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
    auto work = [&](std::size_t first) {
        for (std::size_t i = first; i < family.size(); i += workers) out[i] = f(family[i]);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::future<void>> tasks;
        for (std::size_t w = 0; w < workers; ++w) tasks.push_back(std::async(std::launch::async, work, w));
        for (auto& t : tasks) t.get();
    }
    return out;
}

}  // namespace

GridSpec::GridSpec(int n, double half_width, DerivativeScheme scheme)
    : n_(n), half_width_(half_width), scheme_(scheme)
{
    if (n < 16) throw std::invalid_argument("grid needs at least 16 points");
    if (n % 2 != 0) throw std::invalid_argument("grid size must be even");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw std::invalid_argument("grid half-width must be positive");
}

GridSpec GridSpec::for_kappa(int n, double kappa, DerivativeScheme scheme)
{
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    return GridSpec(n, 20.0 / kappa, scheme);
}

void GridSpec::require_compatible(double kappa) const
{
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (half_width_ * kappa < 10.0 * (1.0 - 1e-12))
        throw std::domain_error("grid half-width below 10/kappa");
    if (spacing() * kappa > 1.0)
        throw std::domain_error("grid too coarse: e^{-p0/kappa} changes by more than e per cell");
}

StateVector::StateVector(const GridSpec& grid, std::vector<cplx> amplitudes)
    : psi_(std::move(amplitudes)), h_(grid.spacing())
{
    if (psi_.size() != static_cast<std::size_t>(grid.size())) throw std::invalid_argument("state size differs from grid");
    const double norm = weighted_norm(psi_, h_);
    if (std::abs(norm * norm - 1.0) > 1e-10) throw std::invalid_argument("state is not normalised");
}

StateVector StateVector::gaussian(const GridSpec& grid, double center, double width)
{
    if (width < 2.0 * grid.spacing())
        throw std::domain_error("grid too coarse: Gaussian width below two cells aliases");
    if (std::abs(center) + 10.0 * width > grid.half_width())
        throw std::domain_error("Gaussian tail reaches the grid boundary");
    std::vector<cplx> psi(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) {
        const double u = (grid.point(j) - center) / width;
        psi[static_cast<std::size_t>(j)] = std::exp(-0.25 * u * u);
    }
    const double norm = weighted_norm(psi, grid.spacing());
    for (cplx& z : psi) z /= norm;
    return StateVector(grid, std::move(psi));
}

StateVector StateVector::phase_shifted(double t) const
{
    StateVector out = *this;
    const double half_width = 0.5 * static_cast<double>(psi_.size()) * h_;
    for (std::size_t j = 0; j < psi_.size(); ++j) {
        const double p = -half_width + static_cast<double>(j) * h_;
        out.psi_[j] *= std::exp(I_UNIT * (t * p));
    }
    return out;
}

cplx StateVector::inner(std::span<const cplx> other) const
{
    if (other.size() != psi_.size()) throw std::invalid_argument("inner product of mismatched vectors");
    cplx s{};
    for (std::size_t j = 0; j < psi_.size(); ++j) s += std::conj(psi_[j]) * other[j];
    return s * h_;
}

GridOperator::GridOperator(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
{
    if (n <= 0) throw std::invalid_argument("operator size must be positive");
}

GridOperator GridOperator::diagonal(std::span<const cplx> d)
{
    GridOperator out(static_cast<int>(d.size()));
    for (int j = 0; j < out.n_; ++j) out(j, j) = d[static_cast<std::size_t>(j)];
    return out;
}

std::vector<cplx> GridOperator::apply(std::span<const cplx> v) const
{
    if (v.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("operator applied to vector of wrong size");
    std::vector<cplx> out(v.size());
    for (int r = 0; r < n_; ++r) {
        cplx s{};
        const cplx* row = &a_[static_cast<std::size_t>(r) * n_];
        for (int c = 0; c < n_; ++c) s += row[c] * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = s;
    }
    return out;
}

GridOperator GridOperator::adjoint() const
{
    GridOperator out(n_);
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

GridOperator& GridOperator::operator+=(const GridOperator& o)
{
    if (o.n_ != n_) throw std::invalid_argument("operator sizes differ");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

GridOperator& GridOperator::operator-=(const GridOperator& o)
{
    if (o.n_ != n_) throw std::invalid_argument("operator sizes differ");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

GridOperator& GridOperator::operator*=(cplx s)
{
    for (cplx& z : a_) z *= s;
    return *this;
}

cplx GridOperator::expectation(const StateVector& psi) const
{
    return psi.inner(apply(psi.amplitudes()));
}

double GridOperator::hermiticity_residual() const
{
    double worst = 0.0;
    for (int r = 0; r < n_; ++r)
        for (int c = r; c < n_; ++c) worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
}

GridOperator derivative_matrix(const GridSpec& grid)
{
    const int n = grid.size();
    GridOperator d(n);
    if (grid.scheme() == DerivativeScheme::central) {
        const double c = 0.5 / grid.spacing();
        for (int j = 0; j < n; ++j) {
            d(j, (j + 1) % n) = c;
            d(j, (j + n - 1) % n) = -c;
        }
        return d;
    }
    // Periodic sinc interpolant on an even grid of period 2W.
    const double scale = std::numbers::pi / (2.0 * grid.half_width());
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            const int m = j - k;
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            d(j, k) = scale * sign / std::tan(std::numbers::pi * m / n);
        }
    }
    return d;
}

Representation build_operators(const GridSpec& grid, double kappa, int branch)
{
    require_branch(branch);
    grid.require_compatible(kappa);
    GridOperator x0 = -I_UNIT * derivative_matrix(grid);
    std::vector<cplx> x1(exp_weights(grid, -1.0 / kappa));
    for (cplx& z : x1) z *= static_cast<double>(branch);
    return Representation{grid, kappa, branch, std::move(x0), GridOperator::diagonal(x1)};
}

DiracData dirac_data()
{
    DiracData out;
    out.gamma0 = {0.0, I_UNIT, I_UNIT, 0.0};
    out.gamma1 = {0.0, -I_UNIT, I_UNIT, 0.0};
    for (std::size_t k = 0; k < 4; ++k) out.fundamental[k] = I_UNIT * out.gamma0[k];
    return out;
}

GridOperator twisted_x0(const Representation& rep)
{
    std::vector<cplx> d(exp_weights(rep.grid, -1.0 / rep.kappa));
    for (cplx& z : d) z = -I_UNIT * rep.kappa * (1.0 - z);
    return GridOperator::diagonal(d);
}

GridOperator twisted_x1(const Representation& rep)
{
    const std::vector<cplx> e(exp_weights(rep.grid, 1.0 / rep.kappa));
    GridOperator out = derivative_matrix(rep.grid);
    const int n = out.size();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) *= e[static_cast<std::size_t>(r)];
    for (int r = 0; r < n; ++r) out(r, r) += e[static_cast<std::size_t>(r)] / (2.0 * rep.kappa);
    out *= -rep.kappa * rep.branch;
    return out;
}

std::vector<StateVector> gaussian_family(const GridSpec& grid, int count, std::uint64_t seed)
{
    if (count <= 0) throw std::invalid_argument("state family must be non-empty");
    std::mt19937_64 rng(seed);
    const double w = grid.half_width();
    std::uniform_real_distribution<double> centre(-0.15 * w, 0.15 * w);
    std::uniform_real_distribution<double> width(0.025 * w, 0.05 * w);
    std::vector<StateVector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double c = centre(rng);
        const double s = width(rng);
        out.push_back(StateVector::gaussian(grid, c, s));
    }
    return out;
}

AxiomReport lorentzian_axiom_check(const GridSpec& grid, double kappa, std::uint64_t seed)
{
    const DiracData dd = dirac_data();
    const auto& f = dd.fundamental;
    AxiomReport report;
    // 2 x 2 products are exact here: every entry is 0 or +-1 times a unit.
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            cplx sq{};
            for (int k = 0; k < 2; ++k) sq += f[static_cast<std::size_t>(2 * r + k)] * f[static_cast<std::size_t>(2 * k + c)];
            report.i_squared_residual = std::max(report.i_squared_residual, std::abs(sq - (r == c ? 1.0 : 0.0)));
            report.i_hermitian_residual = std::max(
                report.i_hermitian_residual,
                std::abs(std::conj(f[static_cast<std::size_t>(2 * c + r)]) - f[static_cast<std::size_t>(2 * r + c)]));
        }
    }

    const std::vector<StateVector> family = gaussian_family(grid, 8, seed);
    for (int branch : {1, -1}) {
        const Representation rep = build_operators(grid, kappa, branch);
        const std::array<GridOperator, 2> x{twisted_x0(rep), twisted_x1(rep)};
        // D = sum_mu (-i gamma^mu) (x) X_mu as a 2 x 2 block operator.
        std::array<GridOperator, 4> dirac{GridOperator(grid.size()), GridOperator(grid.size()),
                                          GridOperator(grid.size()), GridOperator(grid.size())};
        for (std::size_t k = 0; k < 4; ++k) {
            dirac[k] += (-I_UNIT * dd.gamma0[k]) * x[0];
            dirac[k] += (-I_UNIT * dd.gamma1[k]) * x[1];
        }
        std::array<GridOperator, 4> dirac_adj{dirac[0].adjoint(), dirac[2].adjoint(), dirac[1].adjoint(),
                                              dirac[3].adjoint()};

        std::array<bool, 4> live{};
        for (std::size_t k = 0; k < 4; ++k) live[k] = dd.gamma0[k] != cplx{} || dd.gamma1[k] != cplx{};
        const std::array<bool, 4> live_adj{live[0], live[2], live[1], live[3]};

        auto block_apply = [](const std::array<GridOperator, 4>& op, const std::array<bool, 4>& nonzero,
                              const std::array<std::vector<cplx>, 2>& v) {
            std::array<std::vector<cplx>, 2> out{std::vector<cplx>(v[0].size()), std::vector<cplx>(v[0].size())};
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) {
                    if (!nonzero[2 * r + c]) continue;
                    const auto part = op[2 * r + c].apply(v[c]);
                    for (std::size_t j = 0; j < part.size(); ++j) out[r][j] += part[j];
                }
            return out;
        };
        auto scalar_apply = [&f](const std::array<std::vector<cplx>, 2>& v) {
            std::array<std::vector<cplx>, 2> out{std::vector<cplx>(v[0].size()), std::vector<cplx>(v[0].size())};
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    for (std::size_t j = 0; j < v[0].size(); ++j)
                        out[static_cast<std::size_t>(r)][j] += f[static_cast<std::size_t>(2 * r + c)] * v[static_cast<std::size_t>(c)][j];
            return out;
        };

        for (const StateVector& psi : family) {
            for (int slot = 0; slot < 2; ++slot) {
                std::array<std::vector<cplx>, 2> spinor{std::vector<cplx>(psi.size()), std::vector<cplx>(psi.size())};
                spinor[static_cast<std::size_t>(slot)] = psi.amplitudes();
                const auto lhs = block_apply(dirac_adj, live_adj, scalar_apply(spinor));
                const auto rhs = scalar_apply(block_apply(dirac, live, spinor));
                double s = 0.0;
                for (int r = 0; r < 2; ++r)
                    for (std::size_t j = 0; j < psi.size(); ++j)
                        s += std::norm(lhs[static_cast<std::size_t>(r)][j] + rhs[static_cast<std::size_t>(r)][j]);
                report.krein_residual = std::max(report.krein_residual, std::sqrt(s * grid.spacing()));
            }
        }
    }
    return report;
}

ConeReport cone_condition(const GridSpec& grid, double kappa, int branch, double alpha, double beta,
                          const ConeOptions& options)
{
    const Representation rep = build_operators(grid, kappa, branch);
    const GridOperator f = cplx(alpha) * rep.x0 + cplx(beta) * rep.x1;
    const std::vector<cplx> m = exp_weights(grid, -1.0 / kappa);
    const std::vector<cplx> m_inv = exp_weights(grid, 1.0 / kappa);
    const double prefactor = options.convention == ConeConvention::derived ? kappa : 1.0;

    const std::vector<StateVector> family = gaussian_family(grid, options.states, options.seed);
    // Re <psi, i c (pi(f) - M^-1 pi(f) M) psi>; the d_1 f = beta term adds +-beta for normalised psi.
    const std::vector<double> twisted = evaluate_family(family, options.jobs, [&](const StateVector& psi) {
        const auto& a = psi.amplitudes();
        std::vector<cplx> shifted(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) shifted[j] = m[j] * a[j];
        std::vector<cplx> k = f.apply(a);
        const std::vector<cplx> conjugated = f.apply(shifted);
        for (std::size_t j = 0; j < a.size(); ++j) k[j] = I_UNIT * prefactor * (k[j] - m_inv[j] * conjugated[j]);
        return psi.inner(k).real();
    });

    ConeReport report;
    report.margin_plus = std::numeric_limits<double>::infinity();
    report.margin_minus = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < family.size(); ++i) {
        const double norm = std::real(family[i].inner(family[i].amplitudes()));
        report.margin_plus = std::min(report.margin_plus, twisted[i] + beta * norm);
        report.margin_minus = std::min(report.margin_minus, twisted[i] - beta * norm);
    }
    return report;
}

double sll_margin(const StateVector& first, const StateVector& second, const Representation& rep)
{
    for (const StateVector* s : {&first, &second})
        if (s->size() != static_cast<std::size_t>(rep.grid.size()) || s->spacing() != rep.grid.spacing())
            throw std::invalid_argument("state does not live on the representation grid");
    const double dt = rep.x0.expectation(second).real() - rep.x0.expectation(first).real();
    const double dx = rep.x1.expectation(second).real() - rep.x1.expectation(first).real();
    return dt - std::abs(dx);
}

}  // namespace qst::causality
