#include "qst/momentum_group.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace qst {

namespace {

std::size_t hidx(int dim, int mu, int nu, int rho)
{
    return (static_cast<std::size_t>(mu) * dim + nu) * dim + rho;
}

// (e^x - 1)/x without cancellation.
double expm1_over_x(double x)
{
    return std::abs(x) < 1e-8 ? 1.0 + x / 2.0 : std::expm1(x) / x;
}

class KappaLaw final : public GroupLaw {
public:
    KappaLaw(double kappa, int d, Ordering ordering) : kappa_(kappa), d_(d), ordering_(ordering) {}

    GroupKind kind() const override { return GroupKind::kappa; }
    int dim() const override { return d_ + 1; }

    Momentum add(MomentumView p, MomentumView q) const override
    {
        Momentum r(p.size());
        r[0] = p[0] + q[0];
        const double x = p[0] / kappa_;
        if (ordering_ == Ordering::right) {
            const double e = std::exp(-x);
            for (int j = 1; j <= d_; ++j) r[j] = p[j] + e * q[j];
        } else {
            const double y = q[0] / kappa_;
            const double gs = ordering_g(x + y);
            const double a = gs / ordering_g(x);
            const double b = gs * std::exp(-x) / ordering_g(y);
            for (int j = 1; j <= d_; ++j) r[j] = a * p[j] + b * q[j];
        }
        return r;
    }

    Momentum inv(MomentumView p) const override
    {
        Momentum r(p.size());
        r[0] = -p[0];
        const double e = ordering_ == Ordering::right ? std::exp(p[0] / kappa_) : 1.0;
        for (int j = 1; j <= d_; ++j) r[j] = -e * p[j];
        return r;
    }

    double modular(MomentumView p) const override { return std::exp(d_ * p[0] / kappa_); }

    double haar_left(MomentumView p) const override
    {
        if (ordering_ == Ordering::right) return std::exp(d_ * p[0] / kappa_);
        // |(1 - e^{p0/kappa})/p0|^d
        return std::pow(expm1_over_x(p[0] / kappa_) / kappa_, d_);
    }

    double haar_right(MomentumView p) const override
    {
        if (ordering_ == Ordering::right) return 1.0;
        return std::pow(1.0 / (kappa_ * ordering_g(p[0] / kappa_)), d_);
    }

    std::optional<double> left_translation_det(MomentumView q, MomentumView) const override
    {
        if (ordering_ != Ordering::right) return std::nullopt;
        return std::exp(-d_ * q[0] / kappa_);
    }

    std::optional<double> right_translation_det(MomentumView, MomentumView) const override
    {
        if (ordering_ != Ordering::right) return std::nullopt;
        return 1.0;
    }

    std::optional<Hessian> analytic_hessian() const override
    {
        const int n = dim();
        Hessian h(static_cast<std::size_t>(n) * n * n);
        for (int j = 1; j <= d_; ++j) {
            if (ordering_ == Ordering::right) {
                h[hidx(n, 0, j, j)] = -1.0 / kappa_;
            } else {
                h[hidx(n, 0, j, j)] = -0.5 / kappa_;
                h[hidx(n, j, 0, j)] = 0.5 / kappa_;
            }
        }
        return h;
    }

    std::optional<Ordering> ordering() const override { return ordering_; }

private:
    double kappa_;
    int d_;
    Ordering ordering_;
};

class MoyalLaw final : public GroupLaw {
public:
    MoyalLaw(double theta, int base, MoyalConvention conv)
        : base_(base), theta_(moyal_theta(base, theta)), c_(conv == MoyalConvention::bch ? -0.5 : 1.0)
    {
    }

    GroupKind kind() const override { return GroupKind::moyal; }
    int dim() const override { return base_ + 1; }

    Momentum add(MomentumView p, MomentumView q) const override
    {
        Momentum r(p.size());
        for (std::size_t a = 0; a < p.size(); ++a) r[a] = p[a] + q[a];
        double form = 0.0;
        for (int a = 0; a < base_; ++a)
            for (int b = 0; b < base_; ++b) form += p[a] * theta_[a * base_ + b] * q[b];
        r[base_] += c_ * form;
        return r;
    }

    Momentum inv(MomentumView p) const override
    {
        Momentum r(p.begin(), p.end());
        for (double& x : r) x = -x;
        return r;
    }

    std::optional<double> left_translation_det(MomentumView, MomentumView) const override { return 1.0; }
    std::optional<double> right_translation_det(MomentumView, MomentumView) const override { return 1.0; }

    std::optional<Hessian> analytic_hessian() const override
    {
        const int n = dim();
        Hessian h(static_cast<std::size_t>(n) * n * n);
        for (int a = 0; a < base_; ++a)
            for (int b = 0; b < base_; ++b) h[hidx(n, a, b, base_)] = c_ * theta_[a * base_ + b];
        return h;
    }

private:
    int base_;
    std::vector<double> theta_;
    double c_;
};

class RhoLaw final : public GroupLaw {
public:
    explicit RhoLaw(double rho) : rho_(rho) {}

    GroupKind kind() const override { return GroupKind::rho; }
    int dim() const override { return 4; }

    Momentum add(MomentumView p, MomentumView q) const override
    {
        const double c = std::cos(rho_ * p[0]);
        const double s = std::sin(rho_ * p[0]);
        return {p[0] + q[0], p[1] + c * q[1] - s * q[2], p[2] + s * q[1] + c * q[2], p[3] + q[3]};
    }

    Momentum inv(MomentumView p) const override
    {
        // -R(-rho p0) p
        const double c = std::cos(rho_ * p[0]);
        const double s = std::sin(rho_ * p[0]);
        return {-p[0], -(c * p[1] + s * p[2]), -(-s * p[1] + c * p[2]), -p[3]};
    }

    std::optional<double> left_translation_det(MomentumView, MomentumView) const override { return 1.0; }
    std::optional<double> right_translation_det(MomentumView, MomentumView) const override { return 1.0; }

    std::optional<Hessian> analytic_hessian() const override
    {
        Hessian h(64);
        h[hidx(4, 0, 1, 2)] = rho_;
        h[hidx(4, 0, 2, 1)] = -rho_;
        return h;
    }

private:
    double rho_;
};

// Exponential coordinates on SU(2): p -> exp(i (lambda/2) p.sigma), as a unit quaternion.
class Su2Law final : public GroupLaw {
public:
    explicit Su2Law(double lambda) : lambda_(lambda) {}

    GroupKind kind() const override { return GroupKind::su2; }
    int dim() const override { return 3; }

    Momentum add(MomentumView p, MomentumView q) const override
    {
        const auto a = to_quaternion(p);
        const auto b = to_quaternion(q);
        // (a0 + i a.sigma)(b0 + i b.sigma) = a0 b0 - a.b + i (a0 b + b0 a - a x b).sigma
        std::array<double, 4> c{};
        c[0] = a[0] * b[0] - (a[1] * b[1] + a[2] * b[2] + a[3] * b[3]);
        c[1] = a[0] * b[1] + b[0] * a[1] - (a[2] * b[3] - a[3] * b[2]);
        c[2] = a[0] * b[2] + b[0] * a[2] - (a[3] * b[1] - a[1] * b[3]);
        c[3] = a[0] * b[3] + b[0] * a[3] - (a[1] * b[2] - a[2] * b[1]);
        return from_quaternion(c);
    }

    Momentum inv(MomentumView p) const override { return {-p[0], -p[1], -p[2]}; }

    double haar_left(MomentumView p) const override { return weight(p); }
    double haar_right(MomentumView p) const override { return weight(p); }

    std::optional<Hessian> analytic_hessian() const override
    {
        Hessian h(27);
        const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                  {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                  {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) h[hidx(3, j, k, l)] = -0.5 * lambda_ * eps[j][k][l];
        return h;
    }

private:
    double weight(MomentumView p) const
    {
        const double half = 0.5 * lambda_ * std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        if (half < 1e-6) return 1.0 - half * half / 3.0;
        const double s = std::sin(half) / half;
        return s * s;
    }

    std::array<double, 4> to_quaternion(MomentumView p) const
    {
        const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        const double half = 0.5 * lambda_ * r;
        // sin(half)/r = (lambda/2) sinc(half)
        const double sinc = half < 1e-6 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
        const double f = 0.5 * lambda_ * sinc;
        return {std::cos(half), f * p[0], f * p[1], f * p[2]};
    }

    Momentum from_quaternion(const std::array<double, 4>& c) const
    {
        const double v = std::sqrt(c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
        const double half = std::atan2(v, c[0]);
        // p = (2/lambda) half * v_hat
        const double f = v < 1e-300 ? 2.0 / lambda_ : (2.0 / lambda_) * half / v;
        return {f * c[1], f * c[2], f * c[3]};
    }

    double lambda_;
};

class AbelianLaw final : public GroupLaw {
public:
    explicit AbelianLaw(int dim) : dim_(dim) {}
    GroupKind kind() const override { return GroupKind::abelian; }
    int dim() const override { return dim_; }
    Momentum add(MomentumView p, MomentumView q) const override
    {
        Momentum r(p.size());
        for (std::size_t a = 0; a < p.size(); ++a) r[a] = p[a] + q[a];
        return r;
    }
    Momentum inv(MomentumView p) const override
    {
        Momentum r(p.begin(), p.end());
        for (double& x : r) x = -x;
        return r;
    }
    std::optional<double> left_translation_det(MomentumView, MomentumView) const override { return 1.0; }
    std::optional<double> right_translation_det(MomentumView, MomentumView) const override { return 1.0; }
    std::optional<Hessian> analytic_hessian() const override
    {
        return Hessian(static_cast<std::size_t>(dim_) * dim_ * dim_);
    }

private:
    int dim_;
};

// log(e^X e^Y) through Dynkin's word expansion; the bracket in momentum
// coordinates is {a,b}_rho = i a_mu b_nu C^{mu nu}_rho.
class BchLaw final : public GroupLaw {
public:
    BchLaw(const StructureConstants& sc, int order) : sc_(sc), order_(order)
    {
        if (order < 1 || order > 12) throw std::invalid_argument("BCH order must be in [1,12]");
        for (int n = 1; n <= order; ++n) {
            std::vector<double> coeffs(std::size_t{1} << n);
            for (unsigned w = 0; w < coeffs.size(); ++w) coeffs[w] = dynkin_coefficient(w, n);
            coefficients_.push_back(std::move(coeffs));
        }
    }

    GroupKind kind() const override { return GroupKind::bch; }
    int dim() const override { return sc_.dim(); }

    Momentum add(MomentumView p, MomentumView q) const override
    {
        const int n = dim();
        using Vec = std::vector<cplx>;
        // bracket[len-1][mask] holds the right-nested bracket of the word; bit k set means letter k is Y.
        std::vector<std::vector<Vec>> bracket(order_);
        Vec total(n);
        for (int len = 1; len <= order_; ++len) {
            auto& level = bracket[len - 1];
            level.resize(std::size_t{1} << len);
            for (unsigned w = 0; w < level.size(); ++w) {
                const bool first_is_y = w & 1u;
                if (len == 1) {
                    level[w] = Vec(n);
                    for (int a = 0; a < n; ++a) level[w][a] = first_is_y ? q[a] : p[a];
                } else {
                    const Vec& rest = bracket[len - 2][w >> 1];
                    level[w] = lie_bracket(first_is_y ? q : p, rest);
                }
                const double c = coefficients_[len - 1][w];
                if (c != 0.0)
                    for (int a = 0; a < n; ++a) total[a] += c * level[w][a];
            }
        }
        Momentum r(n);
        for (int a = 0; a < n; ++a) r[a] = total[a].real();
        return r;
    }

    Momentum inv(MomentumView p) const override
    {
        Momentum r(p.begin(), p.end());
        for (double& x : r) x = -x;
        return r;
    }

    std::optional<Hessian> analytic_hessian() const override
    {
        const int n = dim();
        Hessian h(static_cast<std::size_t>(n) * n * n);
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
                for (int rho = 0; rho < n; ++rho) h[hidx(n, mu, nu, rho)] = cplx{0.0, 0.5} * sc_(mu, nu, rho);
        return h;
    }

private:
    template <class A>
    std::vector<cplx> lie_bracket(const A& a, const std::vector<cplx>& b) const
    {
        const int n = dim();
        std::vector<cplx> r(n);
        for (int mu = 0; mu < n; ++mu) {
            if (a[mu] == 0.0) continue;
            for (int nu = 0; nu < n; ++nu) {
                if (b[nu] == cplx{}) continue;
                for (int rho = 0; rho < n; ++rho) r[rho] += cplx{0.0, 1.0} * a[mu] * b[nu] * sc_(mu, nu, rho);
            }
        }
        return r;
    }

    static double dynkin_coefficient(unsigned word, int n)
    {
        auto letter_y = [&](int i) { return (word >> i) & 1u; };
        std::vector<double> fact(n + 1, 1.0);
        for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
        // weight[i][k]: sum over splittings of the first i letters into k blocks X^r Y^s.
        std::vector<std::vector<double>> weight(n + 1, std::vector<double>(n + 1, 0.0));
        weight[0][0] = 1.0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (weight[i][k] == 0.0) continue;
                int r = 0;
                while (true) {
                    int s = 0;
                    while (true) {
                        if (r + s > 0) weight[i + r + s][k + 1] += weight[i][k] / (fact[r] * fact[s]);
                        if (i + r + s < n && letter_y(i + r + s)) ++s;
                        else break;
                    }
                    if (i + r < n && !letter_y(i + r)) ++r;
                    else break;
                }
            }
        double c = 0.0;
        for (int k = 1; k <= n; ++k) c += ((k % 2) ? 1.0 : -1.0) / k * weight[n][k];
        return c / n;
    }

    StructureConstants sc_;
    int order_;
    std::vector<std::vector<double>> coefficients_;
};

Eigen::MatrixXd jacobian_fd(const std::function<Momentum(MomentumView)>& f, MomentumView x, double h)
{
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd jac(n, n);
    Momentum xp(x.begin(), x.end());
    auto central = [&](int j, double step) {
        Momentum a = xp, b = xp;
        a[j] += step;
        b[j] -= step;
        const Momentum fa = f(a), fb = f(b);
        Eigen::VectorXd d(n);
        for (int i = 0; i < n; ++i) d[i] = (fa[i] - fb[i]) / (2.0 * step);
        return d;
    };
    for (int j = 0; j < n; ++j) jac.col(j) = (4.0 * central(j, h / 2) - central(j, h)) / 3.0;
    return jac;
}

}  // namespace

double ordering_g(double x)
{
    if (std::abs(x) < 1e-4) return 1.0 + x / 2.0 + x * x / 12.0 - x * x * x * x / 720.0;
    return x / (-std::expm1(-x));
}

GroupDescriptor::GroupDescriptor(StructureConstants structure, std::shared_ptr<const GroupLaw> law)
    : structure_(std::make_shared<const StructureConstants>(std::move(structure))), law_(std::move(law))
{
    if (!law_) throw std::invalid_argument("group descriptor needs a law");
    if (law_->dim() != structure_->dim()) throw std::invalid_argument("law and structure dimension differ");
}

void GroupDescriptor::check(MomentumView p) const
{
    if (static_cast<int>(p.size()) != dim())
        throw std::invalid_argument("momentum has " + std::to_string(p.size()) + " components, group expects " +
                                    std::to_string(dim()));
}

Momentum GroupDescriptor::add(MomentumView p, MomentumView q) const
{
    check(p);
    check(q);
    return law_->add(p, q);
}

Momentum GroupDescriptor::inv(MomentumView p) const
{
    check(p);
    return law_->inv(p);
}

double GroupDescriptor::modular(MomentumView p) const
{
    check(p);
    return law_->modular(p);
}

double GroupDescriptor::haar_left(MomentumView p) const
{
    check(p);
    return law_->haar_left(p);
}

double GroupDescriptor::haar_right(MomentumView p) const
{
    check(p);
    return law_->haar_right(p);
}

GroupDescriptor kappa_group(double kappa, int d, Ordering ordering)
{
    return GroupDescriptor(preset(Preset::kappa_minkowski, kappa, d + 1),
                           std::make_shared<KappaLaw>(kappa, d, ordering));
}

GroupDescriptor moyal_group(double theta, int base_dim, MoyalConvention conv)
{
    return GroupDescriptor(preset(Preset::moyal_extended, theta, base_dim + 1),
                           std::make_shared<MoyalLaw>(theta, base_dim, conv));
}

GroupDescriptor rho_group(double rho)
{
    return GroupDescriptor(preset(Preset::rho_minkowski, rho, 4), std::make_shared<RhoLaw>(rho));
}

GroupDescriptor su2_group(double lambda)
{
    return GroupDescriptor(preset(Preset::su2_lambda, lambda, 3), std::make_shared<Su2Law>(lambda));
}

GroupDescriptor abelian_group(int dim)
{
    return GroupDescriptor(StructureConstants("abelian", dim, 0.0), std::make_shared<AbelianLaw>(dim));
}

GroupDescriptor bch_group(const StructureConstants& sc, int order)
{
    return GroupDescriptor(sc, std::make_shared<BchLaw>(sc, order));
}

GroupDescriptor group_for(Preset which, double deformation, int dim, GroupOptions options)
{
    switch (which) {
    case Preset::kappa_minkowski: return kappa_group(deformation, dim - 1, options.ordering);
    case Preset::moyal_extended: return moyal_group(deformation, dim - 1, options.moyal);
    case Preset::rho_minkowski:
        if (dim != 4) throw std::invalid_argument("rho_minkowski: dim must be 4");
        return rho_group(deformation);
    case Preset::su2_lambda:
        if (dim != 3) throw std::invalid_argument("su2_lambda: dim must be 3");
        return su2_group(deformation);
    }
    throw std::invalid_argument("unknown preset");
}

double norm(MomentumView a)
{
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

double distance(MomentumView a, MomentumView b)
{
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double haar_invariance_check(const GroupDescriptor& g, MomentumView q, MomentumView p)
{
    const Momentum qp = g.add(q, p);
    double det;
    if (auto exact = g.law().left_translation_det(q, p)) {
        det = *exact;
    } else {
        Momentum qc(q.begin(), q.end());
        det = jacobian_fd([&](MomentumView x) { return g.add(qc, x); }, p, 1e-4).determinant();
    }
    if (det == 0.0) throw std::domain_error("singular left-translation Jacobian");
    return std::abs(g.haar_left(p) - g.haar_left(qp) * std::abs(det));
}

double haar_right_invariance_check(const GroupDescriptor& g, MomentumView q, MomentumView p)
{
    const Momentum pq = g.add(p, q);
    double det;
    if (auto exact = g.law().right_translation_det(p, q)) {
        det = *exact;
    } else {
        Momentum qc(q.begin(), q.end());
        det = jacobian_fd([&](MomentumView x) { return g.add(x, qc); }, p, 1e-4).determinant();
    }
    if (det == 0.0) throw std::domain_error("singular right-translation Jacobian");
    return std::abs(g.haar_right(p) - g.haar_right(pq) * std::abs(det));
}

Momentum right_to_sum(MomentumView p, double kappa)
{
    Momentum r(p.begin(), p.end());
    const double g = ordering_g(p[0] / kappa);
    for (std::size_t j = 1; j < r.size(); ++j) r[j] *= g;
    return r;
}

Momentum sum_to_right(MomentumView p, double kappa)
{
    Momentum r(p.begin(), p.end());
    const double g = ordering_g(p[0] / kappa);
    for (std::size_t j = 1; j < r.size(); ++j) r[j] /= g;
    return r;
}

namespace {

Momentum nonplanar_residual(const GroupDescriptor& g, MomentumView p, MomentumView q, MomentumView k)
{
    return g.add(g.add(g.add(p, k), q), g.inv(k));
}

}  // namespace

std::variant<Momentum, NoSolution> delta_solve_nonplanar(const GroupDescriptor& g, MomentumView p, MomentumView q,
                                                         double k0)
{
    const int n = g.dim();
    if (static_cast<int>(p.size()) != n || static_cast<int>(q.size()) != n)
        throw std::invalid_argument("dimension mismatch");
    Momentum k(n, 0.0);
    k[0] = k0;
    if (norm(p) == 0.0 && norm(q) == 0.0) return k;

    const double scale = 1.0 + norm(p) + norm(q);
    if (g.kind() == GroupKind::kappa || g.kind() == GroupKind::moyal || g.kind() == GroupKind::rho) {
        // Energy is additive for these laws, so the energy residual is p0 + q0 whatever k is.
        if (std::abs(p[0] + q[0]) > 1e-12 * scale)
            return NoSolution{"energy constraint p0 + q0 = 0 violated", std::abs(p[0] + q[0])};
    }

    if (g.kind() == GroupKind::kappa && g.law().ordering() == Ordering::right) {
        const double kappa = g.deformation();
        const double denom = -std::expm1(-p[0] / kappa);
        if (denom == 0.0) {
            const Momentum r = nonplanar_residual(g, p, q, k);
            return NoSolution{"p0 = 0 leaves the spatial residual independent of k", norm(r)};
        }
        const double e = std::exp(-(p[0] + k0) / kappa);
        for (int j = 1; j < n; ++j) k[j] = (p[j] + e * q[j]) / denom;
        const double res = norm(nonplanar_residual(g, p, q, k));
        if (res >= 1e-10 * scale) return NoSolution{"closed form lost precision", res};
        return k;
    }

    // Damped Gauss-Newton in the components other than k0.
    Momentum pc(p.begin(), p.end()), qc(q.begin(), q.end());
    auto residual = [&](const Momentum& kk) { return nonplanar_residual(g, pc, qc, kk); };
    double res = norm(residual(k));
    for (int it = 0; it < 200 && res >= 1e-10; ++it) {
        const Momentum r = residual(k);
        Eigen::MatrixXd jac(n, n - 1);
        const double h = 1e-6;
        for (int j = 1; j < n; ++j) {
            Momentum a = k, b = k;
            a[j] += h;
            b[j] -= h;
            const Momentum ra = residual(a), rb = residual(b);
            for (int i = 0; i < n; ++i) jac(i, j - 1) = (ra[i] - rb[i]) / (2 * h);
        }
        Eigen::VectorXd rv(n);
        for (int i = 0; i < n; ++i) rv[i] = r[i];
        const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-rv);
        double damping = 1.0;
        bool improved = false;
        for (int tries = 0; tries < 30; ++tries, damping *= 0.5) {
            Momentum trial = k;
            for (int j = 1; j < n; ++j) trial[j] += damping * step[j - 1];
            const double tres = norm(residual(trial));
            if (tres < res) {
                k = trial;
                res = tres;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (res >= 1e-10) return NoSolution{"Newton iteration stalled", res};
    return k;
}

double dispersion(DispersionChoice choice, double energy, double kappa)
{
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    const double e2 = energy * energy;
    return choice == DispersionChoice::P ? e2 : e2 - e2 * energy / kappa;
}

namespace {

StructureConstants from_hessian(const GroupDescriptor& g, const Hessian& h)
{
    const StructureConstants& s = g.structure();
    StructureConstants out(s.name(), s.dim(), s.deformation());
    out.set_labels(s.labels());
    const int n = s.dim();
    const cplx minus_i{0.0, -1.0};
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
            for (int rho = 0; rho < n; ++rho)
                out.set_entry(mu, nu, rho, minus_i * (h[hidx(n, mu, nu, rho)] - h[hidx(n, nu, mu, rho)]));
    return out;
}

}  // namespace

StructureConstants recover_from_group_law(const GroupDescriptor& g)
{
    if (auto h = g.law().analytic_hessian()) return from_hessian(g, *h);
    return recover_from_group_law_numeric(g);
}

StructureConstants recover_from_group_law_numeric(const GroupDescriptor& g, double h)
{
    const int n = g.dim();
    auto mixed = [&](int mu, int nu, double step) {
        std::vector<double> out(n);
        Momentum p(n, 0.0), q(n, 0.0);
        const double sp[2] = {step, -step};
        for (double a : sp)
            for (double b : sp) {
                std::fill(p.begin(), p.end(), 0.0);
                std::fill(q.begin(), q.end(), 0.0);
                p[mu] = a;
                q[nu] = b;
                const Momentum r = g.add(p, q);
                const double sign = (a > 0) == (b > 0) ? 1.0 : -1.0;
                for (int rho = 0; rho < n; ++rho) out[rho] += sign * r[rho];
            }
        for (double& x : out) x /= 4.0 * step * step;
        return out;
    };
    Hessian hess(static_cast<std::size_t>(n) * n * n);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
            const auto coarse = mixed(mu, nu, h);
            const auto fine = mixed(mu, nu, h / 2);
            for (int rho = 0; rho < n; ++rho) {
                const double v = (4.0 * fine[rho] - coarse[rho]) / 3.0;
                if (!std::isfinite(v)) throw std::domain_error("Hessian estimate unstable");
                hess[hidx(n, mu, nu, rho)] = v;
            }
        }
    return from_hessian(g, hess);
}

Momentum sample_momentum(const GroupDescriptor& g, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Momentum p(static_cast<std::size_t>(g.dim()));
    switch (g.kind()) {
    case GroupKind::kappa:
        p[0] = 2.0 * g.deformation() * u(rng);
        for (std::size_t j = 1; j < p.size(); ++j) p[j] = 3.0 * u(rng);
        break;
    case GroupKind::rho:
        p[0] = std::numbers::pi * u(rng) / g.deformation();
        for (std::size_t j = 1; j < p.size(); ++j) p[j] = 3.0 * u(rng);
        break;
    case GroupKind::su2: {
        const double radius = 2.0 * std::numbers::pi / (3.0 * std::abs(g.deformation()));
        do {
            for (double& x : p) x = radius * u(rng);
        } while (norm(p) >= 0.999 * radius);
        break;
    }
    case GroupKind::bch:
        for (double& x : p) x = 0.05 * u(rng);
        break;
    default:
        for (double& x : p) x = 3.0 * u(rng);
    }
    return p;
}

}  // namespace qst

