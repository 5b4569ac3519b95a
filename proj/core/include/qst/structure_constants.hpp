#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qst {

using cplx = std::complex<double>;

enum class Preset { kappa_minkowski, moyal_extended, rho_minkowski, su2_lambda };

std::string_view to_string(Preset p);
Preset parse_preset(std::string_view name);

// Lie-algebra-type coordinate algebra [x^mu, x^nu] = C^{mu nu}_rho x^rho.
class StructureConstants {
public:
    StructureConstants(std::string name, int dim, double deformation);

    const std::string& name() const noexcept { return name_; }
    int dim() const noexcept { return dim_; }
    double deformation() const noexcept { return deformation_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<std::string> labels);

    cplx operator()(int mu, int nu, int rho) const { return data_[index(mu, nu, rho)]; }

    // Writes C^{mu nu}_rho and its antisymmetric partner.
    void set(int mu, int nu, int rho, cplx value);
    // Writes one entry only; used to build deliberately broken tensors.
    void set_entry(int mu, int nu, int rho, cplx value) { data_[index(mu, nu, rho)] = value; }

    std::span<const cplx> entries() const noexcept { return data_; }

    friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

private:
    std::size_t index(int mu, int nu, int rho) const;

    std::string name_;
    int dim_;
    double deformation_;
    std::vector<std::string> labels_;
    std::vector<cplx> data_;
};

// params: {kappa}, {theta}, {rho} or {lambda}. dim is the full tensor dimension
// (d+1 for kappa, base+1 for the extended Moyal algebra, 4 for rho, 3 for su2).
StructureConstants preset(Preset which, std::span<const double> params, int dim);
inline StructureConstants preset(Preset which, double deformation, int dim)
{
    const double p[] = {deformation};
    return preset(which, p, dim);
}

// Symplectic block matrix theta*[[0,1],[-1,0]] on consecutive index pairs.
std::vector<double> moyal_theta(int base_dim, double theta);

struct JacobiReport {
    double max_violation = 0.0;
    double max_antisymmetry = 0.0;
    bool passed(double tol = 1e-12) const { return max_violation <= tol && max_antisymmetry <= tol; }
};

JacobiReport jacobi_check(const StructureConstants& sc);

double max_abs_difference(const StructureConstants& a, const StructureConstants& b);

std::string to_json(const StructureConstants& sc);
StructureConstants structure_from_json(std::string_view text);

}  // namespace qst
