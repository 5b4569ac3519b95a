#pragma once

#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qst/momentum_group.hpp"

namespace qst {

struct PlaneWaveTerm {
    Momentum p;
    cplx amplitude;
};

// Finite combination of deformed plane waves e_p; momenta closer than 1e-12 are merged.
class WavePacket {
public:
    explicit WavePacket(GroupDescriptor group);
    static WavePacket plane_wave(GroupDescriptor group, Momentum p, cplx amplitude = 1.0);

    const GroupDescriptor& group() const noexcept { return group_; }
    const std::vector<PlaneWaveTerm>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    void add_term(MomentumView p, cplx amplitude);
    WavePacket& operator+=(const WavePacket& other);
    WavePacket& operator-=(const WavePacket& other);
    WavePacket& operator*=(cplx s);

    // Amplitude attached to momentum p, zero when absent.
    cplx coefficient(MomentumView p) const;
    // Largest amplitude difference over the union of momenta.
    double distance(const WavePacket& other) const;

    // Symbol evaluation sum_p a_p exp(i p.x); the Moyal phase slot contributes exp(i p5).
    cplx evaluate(std::span<const double> x) const;

    static constexpr double merge_tolerance = 1e-12;

private:
    GroupDescriptor group_;
    std::vector<PlaneWaveTerm> terms_;
};

WavePacket operator+(WavePacket a, const WavePacket& b);
WavePacket operator-(WavePacket a, const WavePacket& b);
WavePacket operator*(cplx s, WavePacket a);

WavePacket star(const WavePacket& f, const WavePacket& g);
WavePacket dagger(const WavePacket& f);

enum class GeneratorKind { P, E, X };
struct Generator {
    GeneratorKind kind;
    int index = 0;  // mu for P and X
    int power = 1;  // n for E^n
};

// Eigenvalue of the generator on e_p.
double generator_eigenvalue(const GroupDescriptor& g, Generator gen, MomentumView p);
WavePacket act(Generator gen, const WavePacket& f);
inline WavePacket act_P(int mu, const WavePacket& f) { return act({GeneratorKind::P, mu, 1}, f); }
inline WavePacket act_E(int n, const WavePacket& f) { return act({GeneratorKind::E, 0, n}, f); }
inline WavePacket act_X(int mu, const WavePacket& f) { return act({GeneratorKind::X, mu, 1}, f); }

// sum_i a_i delta(w_i), each word a product of concrete momenta under the deformed addition.
// Normal form: words rotated to their lexicographically least rotation through
// delta(u + b) -> Delta(-b) delta(b + u); delta(-w) -> delta(w). Words that do not
// compose to the identity are delta functions away from their support and are kept
// only for reporting.
struct DeltaTerm {
    cplx amplitude;
    std::vector<Momentum> word;
    bool on_shell;
};

class DeltaSum {
public:
    explicit DeltaSum(GroupDescriptor group);

    void add(cplx amplitude, std::vector<Momentum> word);
    void add_inverse(cplx amplitude, std::vector<Momentum> word);
    // Applies rewrite rules in a random order before canonicalising; used to test confluence.
    void add_randomized(cplx amplitude, std::vector<Momentum> word, std::mt19937_64& rng);

    const std::vector<DeltaTerm>& terms() const noexcept { return terms_; }
    // Coefficient of the formal volume attached to a canonical on-shell word.
    cplx volume_coefficient(const std::vector<Momentum>& canonical_word) const;

    // Exact comparison of the on-shell parts, amplitudes to rel_tol.
    bool equals(const DeltaSum& other, double rel_tol = 1e-12) const;
    std::string to_string() const;

private:
    void insert(cplx amplitude, std::vector<Momentum> word, bool on_shell);

    GroupDescriptor group_;
    std::vector<DeltaTerm> terms_;
};

DeltaSum integral(const WavePacket& f);
DeltaSum integral_star(const WavePacket& f, const WavePacket& g);

// Automorphism sigma(e_q) = Delta(q)^{-1} e_q; equals E^d on kappa-Minkowski and the identity when unimodular.
WavePacket modular_twist(const WavePacket& f);
// Integral of f*g against the integral of sigma(g)*f.
bool twisted_trace_check(const WavePacket& f, const WavePacket& g);
// Integral of f*g against the integral of g*f.
bool cyclicity_check(const WavePacket& f, const WavePacket& g);

// {"group": <structure name>, "terms": [{"p": [...], "re": .., "im": ..}]}
std::string to_json(const WavePacket& f);
// The group name in the text must match the structure name of `group`.
WavePacket packet_from_json(std::string_view text, const GroupDescriptor& group);

}  // namespace qst
