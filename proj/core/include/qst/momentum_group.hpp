#pragma once

#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qst/structure_constants.hpp"

namespace qst {

// Energy first, then spatial components; the extended Moyal algebra appends the phase slot.
using Momentum = std::vector<double>;
using MomentumView = std::span<const double>;

enum class Ordering { right, sum };
// bch: phase slot grows by -pTheta q/2 (consistent with C = i Theta and e^{i p5}).
// verbatim: the printed law p5 + q5 + i pTheta q, stored as s with p5 = i s so the slot stays real.
enum class MoyalConvention { bch, verbatim };

enum class GroupKind { kappa, moyal, rho, su2, bch, abelian };

// Hessian of the law at the identity, H[(mu*dim+nu)*dim+rho] = d^2 (p+q)_rho / dp_mu dq_nu.
using Hessian = std::vector<cplx>;

class GroupLaw {
public:
    virtual ~GroupLaw() = default;
    virtual GroupKind kind() const = 0;
    virtual int dim() const = 0;
    virtual Momentum add(MomentumView p, MomentumView q) const = 0;
    virtual Momentum inv(MomentumView p) const = 0;
    virtual double modular(MomentumView) const { return 1.0; }
    virtual double haar_left(MomentumView) const { return 1.0; }
    virtual double haar_right(MomentumView) const { return 1.0; }
    // det d(q+p)/dp; empty when no closed form exists.
    virtual std::optional<double> left_translation_det(MomentumView, MomentumView) const { return std::nullopt; }
    // det d(p+q)/dp.
    virtual std::optional<double> right_translation_det(MomentumView, MomentumView) const { return std::nullopt; }
    virtual std::optional<Hessian> analytic_hessian() const { return std::nullopt; }
    virtual std::optional<Ordering> ordering() const { return std::nullopt; }
};

class GroupDescriptor {
public:
    GroupDescriptor(StructureConstants structure, std::shared_ptr<const GroupLaw> law);

    const StructureConstants& structure() const noexcept { return *structure_; }
    GroupKind kind() const { return law_->kind(); }
    int dim() const { return law_->dim(); }
    double deformation() const noexcept { return structure_->deformation(); }
    const GroupLaw& law() const noexcept { return *law_; }

    Momentum add(MomentumView p, MomentumView q) const;
    Momentum inv(MomentumView p) const;
    Momentum zero() const { return Momentum(static_cast<std::size_t>(dim()), 0.0); }
    double modular(MomentumView p) const;
    double haar_left(MomentumView p) const;
    double haar_right(MomentumView p) const;

    bool same_group(const GroupDescriptor& other) const noexcept { return law_ == other.law_; }

private:
    void check(MomentumView p) const;

    std::shared_ptr<const StructureConstants> structure_;
    std::shared_ptr<const GroupLaw> law_;
};

struct GroupOptions {
    Ordering ordering = Ordering::right;
    MoyalConvention moyal = MoyalConvention::bch;
};

GroupDescriptor kappa_group(double kappa, int d, Ordering ordering = Ordering::right);
GroupDescriptor moyal_group(double theta, int base_dim = 4, MoyalConvention conv = MoyalConvention::bch);
GroupDescriptor rho_group(double rho);
GroupDescriptor su2_group(double lambda);
GroupDescriptor abelian_group(int dim);
// Truncated Baker-Campbell-Hausdorff law for arbitrary structure constants.
GroupDescriptor bch_group(const StructureConstants& sc, int order = 8);

GroupDescriptor group_for(Preset which, double deformation, int dim, GroupOptions options = {});

double distance(MomentumView a, MomentumView b);
double norm(MomentumView a);

// |w(p) - w(q+p) |det d(q+p)/dp||, and the right-handed analogue with w_right.
double haar_invariance_check(const GroupDescriptor& g, MomentumView q, MomentumView p);
double haar_right_invariance_check(const GroupDescriptor& g, MomentumView q, MomentumView p);

// Uniform sample where every closed form is single-valued: su2 stays inside a ball small enough
// for triple products to remain on the principal branch, BCH laws within 0.05 of the
// identity, where the order-8 truncation error stays below 1e-14.
Momentum sample_momentum(const GroupDescriptor& g, std::mt19937_64& rng);

// g(x) = x / (1 - e^{-x}), with the removable singularity at 0 handled by series.
double ordering_g(double x);
// Right-ordered momentum to sum-ordered momentum and back.
Momentum right_to_sum(MomentumView p, double kappa);
Momentum sum_to_right(MomentumView p, double kappa);

struct NoSolution {
    std::string reason;
    double residual;
};

// Spatial k solving p + k + q - k = 0 at fixed k0.
std::variant<Momentum, NoSolution> delta_solve_nonplanar(const GroupDescriptor& g, MomentumView p,
                                                         MomentumView q, double k0);

enum class DispersionChoice { P, X };
// |p|^2 as a function of energy; X keeps only the first correction in 1/kappa.
double dispersion(DispersionChoice choice, double energy, double kappa);

// C = -i (H - H^T); symbolic when the law has a closed-form Hessian.
StructureConstants recover_from_group_law(const GroupDescriptor& g);
StructureConstants recover_from_group_law_numeric(const GroupDescriptor& g, double h = 1e-4);

}  // namespace qst
