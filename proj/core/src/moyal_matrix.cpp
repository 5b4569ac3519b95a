#include "qst/moyal_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace qst::moyal {

namespace {

using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const Matrix> view(const TruncatedElement& a)
{
    return {a.coefficients().data(), a.truncation(), a.truncation()};
}

void require_shape(int truncation, double theta)
{
    if (truncation < 1) throw std::invalid_argument("truncation must be positive");
    if (!(theta > 0.0) || !std::isfinite(theta)) throw std::invalid_argument("theta must be positive");
}

}  // namespace

TruncatedElement::TruncatedElement(int truncation, double theta)
    : n_(truncation), theta_(theta), data_(static_cast<std::size_t>(truncation) * std::max(truncation, 0))
{
    require_shape(truncation, theta);
}

TruncatedElement::TruncatedElement(int truncation, double theta, std::vector<cplx> row_major)
    : TruncatedElement(truncation, theta)
{
    if (row_major.size() != data_.size()) throw std::invalid_argument("coefficient count does not match truncation");
    for (const auto& v : row_major)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("non-finite coefficient");
    data_ = std::move(row_major);
}

std::size_t TruncatedElement::index(int m, int n) const
{
    if (m < 0 || n < 0 || m >= n_ || n >= n_) throw std::out_of_range("basis index outside the truncation");
    return static_cast<std::size_t>(m) * n_ + n;
}

void TruncatedElement::set(int m, int n, cplx value)
{
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) throw std::invalid_argument("non-finite coefficient");
    data_[index(m, n)] = value;
}

void TruncatedElement::require_same_space(const TruncatedElement& o) const
{
    if (o.n_ != n_) throw std::invalid_argument("truncations differ");
    if (o.theta_ != theta_) throw std::invalid_argument("deformation parameters differ");
}

TruncatedElement& TruncatedElement::operator+=(const TruncatedElement& o)
{
    require_same_space(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

TruncatedElement& TruncatedElement::operator-=(const TruncatedElement& o)
{
    require_same_space(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

TruncatedElement& TruncatedElement::operator*=(cplx s)
{
    for (auto& v : data_) v *= s;
    return *this;
}

double TruncatedElement::distance(const TruncatedElement& o) const
{
    require_same_space(o);
    double d = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) d = std::max(d, std::abs(data_[i] - o.data_[i]));
    return d;
}

MatrixBasis::MatrixBasis(int truncation, double theta) : n_(truncation), theta_(theta)
{
    require_shape(truncation, theta);
}

void MatrixBasis::require(BasisIndex a) const
{
    if (a.m < 0 || a.n < 0 || a.m >= n_ || a.n >= n_) throw std::out_of_range("basis index outside the truncation");
}

std::optional<BasisIndex> MatrixBasis::product(BasisIndex a, BasisIndex b) const
{
    require(a);
    require(b);
    if (a.n != b.m) return std::nullopt;
    return BasisIndex{a.m, b.n};
}

BasisIndex MatrixBasis::dagger(BasisIndex a) const
{
    require(a);
    return {a.n, a.m};
}

TruncatedElement MatrixBasis::element(BasisIndex a, cplx coefficient) const
{
    require(a);
    TruncatedElement e(n_, theta_);
    e.set(a.m, a.n, coefficient);
    return e;
}

TruncatedElement MatrixBasis::unit() const
{
    TruncatedElement e(n_, theta_);
    for (int m = 0; m < n_; ++m) e.set(m, m, 1.0);
    return e;
}

TruncatedElement star(const TruncatedElement& a, const TruncatedElement& b)
{
    a.require_same_space(b);
    const Matrix prod = view(a) * view(b);
    return {a.truncation(), a.theta(), std::vector<cplx>(prod.data(), prod.data() + prod.size())};
}

TruncatedElement dagger(const TruncatedElement& a)
{
    const Matrix adj = view(a).adjoint();
    return {a.truncation(), a.theta(), std::vector<cplx>(adj.data(), adj.data() + adj.size())};
}

cplx trace_pairing(const TruncatedElement& a, const TruncatedElement& b)
{
    a.require_same_space(b);
    const cplx inner = view(a).cwiseProduct(view(b).conjugate()).sum();
    return 2.0 * std::numbers::pi * a.theta() * std::conj(inner);
}

bool PartitionReport::passed() const
{
    return positivity_error <= passed_tolerance && unity_error <= passed_tolerance &&
           commutation_error <= passed_tolerance && product_family_error <= passed_tolerance;
}

PartitionReport partition_check(int truncation, double theta, int random_elements, std::uint64_t seed)
{
    const MatrixBasis basis(truncation, theta);
    PartitionReport r;
    r.truncation = truncation;
    const int n = truncation;

    std::vector<TruncatedElement> chi;
    for (int m = 0; m < n; ++m) chi.push_back(basis.element({m, m}));

    for (int m = 0; m < n; ++m) {
        const auto witness = basis.element({m, 0});
        r.positivity_error = std::max(r.positivity_error, star(witness, dagger(witness)).distance(chi[m]));
    }

    std::vector<TruncatedElement> probes;
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) probes.push_back(basis.element({m, k}));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int t = 0; t < random_elements; ++t) {
        TruncatedElement g(n, theta);
        for (int m = 0; m < n; ++m)
            for (int k = 0; k < n; ++k) g.set(m, k, {normal(rng), normal(rng)});
        probes.push_back(std::move(g));
    }

    // Distributivity lets the partition act as one summed element; the basis probes cover
    // every in-truncation g by linearity.
    TruncatedElement partition_sum(n, theta);
    for (const auto& c : chi) partition_sum += c;
    for (const auto& g : probes) r.unity_error = std::max(r.unity_error, star(partition_sum, g).distance(g));

    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            r.commutation_error = std::max(r.commutation_error, star(chi[m], chi[k]).distance(star(chi[k], chi[m])));

    TruncatedElement product_sum(n, theta);
    for (const auto& a : chi)
        for (const auto& b : chi) product_sum += star(a, b);
    for (const auto& g : probes)
        r.product_family_error = std::max(r.product_family_error, star(product_sum, g).distance(g));
    return r;
}

}  // namespace qst::moyal
