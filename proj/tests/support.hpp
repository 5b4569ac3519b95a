#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qst/momentum_group.hpp"

namespace qst::testing {

struct NamedGroup {
    std::string label;
    GroupDescriptor group;
};

inline std::vector<NamedGroup> preset_groups()
{
    return {
        {"kappa d=1", kappa_group(1.0, 1)},
        {"kappa d=3", kappa_group(1.0, 3)},
        {"kappa d=3 sum", kappa_group(2.0, 3, Ordering::sum)},
        {"moyal 4+1", moyal_group(1.0, 4)},
        {"rho", rho_group(1.0)},
        {"su2", su2_group(1.0)},
    };
}

// Momenta in the region where every closed form is single-valued; su2 stays inside
// a ball small enough that products of three elements remain on the principal branch.
inline Momentum random_momentum(const GroupDescriptor& g, std::mt19937_64& rng)
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
    default:
        for (double& x : p) x = 3.0 * u(rng);
    }
    return p;
}

inline double rel_distance(MomentumView a, MomentumView b)
{
    return distance(a, b) / (1.0 + std::max(norm(a), norm(b)));
}

}  // namespace qst::testing
