#include "qst/wave_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qst {

namespace {

bool close(MomentumView a, MomentumView b, double tol)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

bool words_close(const std::vector<Momentum>& a, const std::vector<Momentum>& b, double tol)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!close(a[i], b[i], tol)) return false;
    return true;
}

void require_same(const GroupDescriptor& a, const GroupDescriptor& b)
{
    if (!a.same_group(b)) throw std::invalid_argument("wave packets belong to different groups");
}

}  // namespace

WavePacket::WavePacket(GroupDescriptor group) : group_(std::move(group)) {}

WavePacket WavePacket::plane_wave(GroupDescriptor group, Momentum p, cplx amplitude)
{
    WavePacket w(std::move(group));
    w.add_term(p, amplitude);
    return w;
}

void WavePacket::add_term(MomentumView p, cplx amplitude)
{
    if (static_cast<int>(p.size()) != group_.dim()) throw std::invalid_argument("momentum dimension mismatch");
    for (double x : p)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite momentum component");
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const PlaneWaveTerm& t) { return close(t.p, p, merge_tolerance); });
    if (it != terms_.end()) {
        it->amplitude += amplitude;
        if (it->amplitude == cplx{}) terms_.erase(it);
        return;
    }
    if (amplitude == cplx{}) return;
    PlaneWaveTerm t{Momentum(p.begin(), p.end()), amplitude};
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), t,
                                [](const PlaneWaveTerm& a, const PlaneWaveTerm& b) { return a.p < b.p; });
    terms_.insert(pos, std::move(t));
}

WavePacket& WavePacket::operator+=(const WavePacket& other)
{
    require_same(group_, other.group_);
    for (const auto& t : other.terms_) add_term(t.p, t.amplitude);
    return *this;
}

WavePacket& WavePacket::operator-=(const WavePacket& other)
{
    require_same(group_, other.group_);
    for (const auto& t : other.terms_) add_term(t.p, -t.amplitude);
    return *this;
}

WavePacket& WavePacket::operator*=(cplx s)
{
    if (s == cplx{}) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.amplitude *= s;
    return *this;
}

cplx WavePacket::coefficient(MomentumView p) const
{
    for (const auto& t : terms_)
        if (close(t.p, p, merge_tolerance)) return t.amplitude;
    return {};
}

double WavePacket::distance(const WavePacket& other) const
{
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.amplitude - other.coefficient(t.p)));
    for (const auto& t : other.terms_) m = std::max(m, std::abs(t.amplitude - coefficient(t.p)));
    return m;
}

cplx WavePacket::evaluate(std::span<const double> x) const
{
    const bool moyal = group_.kind() == GroupKind::moyal;
    const std::size_t spatial = moyal ? group_.dim() - 1 : group_.dim();
    if (x.size() != spatial) throw std::invalid_argument("evaluation point has wrong dimension");
    cplx s{};
    for (const auto& t : terms_) {
        double phase = 0.0;
        for (std::size_t a = 0; a < spatial; ++a) phase += t.p[a] * x[a];
        if (moyal) phase += t.p.back();
        s += t.amplitude * std::polar(1.0, phase);
    }
    return s;
}

WavePacket operator+(WavePacket a, const WavePacket& b) { return a += b; }
WavePacket operator-(WavePacket a, const WavePacket& b) { return a -= b; }
WavePacket operator*(cplx s, WavePacket a) { return a *= s; }

WavePacket star(const WavePacket& f, const WavePacket& g)
{
    require_same(f.group(), g.group());
    WavePacket out(f.group());
    for (const auto& a : f.terms())
        for (const auto& b : g.terms()) out.add_term(f.group().add(a.p, b.p), a.amplitude * b.amplitude);
    return out;
}

WavePacket dagger(const WavePacket& f)
{
    WavePacket out(f.group());
    for (const auto& t : f.terms()) out.add_term(f.group().inv(t.p), std::conj(t.amplitude));
    return out;
}

double generator_eigenvalue(const GroupDescriptor& g, Generator gen, MomentumView p)
{
    if (gen.kind == GeneratorKind::P) {
        if (gen.index < 0 || gen.index >= g.dim()) throw std::out_of_range("P index out of range");
        return p[gen.index];
    }
    if (g.kind() != GroupKind::kappa) throw std::invalid_argument("E and X act only on kappa-Minkowski packets");
    const double kappa = g.deformation();
    if (gen.kind == GeneratorKind::E) return std::exp(-gen.power * p[0] / kappa);
    if (gen.index < 0 || gen.index >= g.dim()) throw std::out_of_range("X index out of range");
    if (gen.index == 0) return -kappa * std::expm1(-p[0] / kappa);
    return p[gen.index];
}

WavePacket act(Generator gen, const WavePacket& f)
{
    WavePacket out(f.group());
    for (const auto& t : f.terms()) out.add_term(t.p, generator_eigenvalue(f.group(), gen, t.p) * t.amplitude);
    return out;
}

DeltaSum::DeltaSum(GroupDescriptor group) : group_(std::move(group)) {}

namespace {

Momentum compose(const GroupDescriptor& g, const std::vector<Momentum>& word)
{
    Momentum acc = g.zero();
    for (const auto& m : word) acc = g.add(acc, m);
    return acc;
}

bool is_identity(const GroupDescriptor& g, const std::vector<Momentum>& word)
{
    double scale = 1.0;
    for (const auto& m : word) scale += norm(m);
    return norm(compose(g, word)) <= 1e-10 * scale;
}

// delta(u + b) -> Delta(-b) delta(b + u), repeated until the least rotation leads.
cplx rotate_to_canonical(const GroupDescriptor& g, std::vector<Momentum>& word)
{
    const std::size_t n = word.size();
    std::size_t best = 0;
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = word[(s + i) % n];
            const auto& b = word[(best + i) % n];
            if (a < b) {
                best = s;
                break;
            }
            if (b < a) break;
        }
    }
    cplx factor = 1.0;
    if (best == 0) return factor;
    // Bring word[best] to the front by moving the trailing letters one at a time.
    for (std::size_t i = n; i-- > best;) factor /= g.modular(word[i]);
    std::rotate(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(best), word.end());
    return factor;
}

}  // namespace

void DeltaSum::insert(cplx amplitude, std::vector<Momentum> word, bool on_shell)
{
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->on_shell == on_shell && words_close(it->word, word, WavePacket::merge_tolerance)) {
            it->amplitude += amplitude;
            if (it->amplitude == cplx{}) terms_.erase(it);
            return;
        }
    }
    if (amplitude == cplx{}) return;
    DeltaTerm t{amplitude, std::move(word), on_shell};
    // On-shell terms first, then lexicographic by word.
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), t, [](const DeltaTerm& a, const DeltaTerm& b) {
        if (a.on_shell != b.on_shell) return a.on_shell;
        return a.word < b.word;
    });
    terms_.insert(pos, std::move(t));
}

void DeltaSum::add(cplx amplitude, std::vector<Momentum> word)
{
    if (word.empty()) word.push_back(group_.zero());
    for (const auto& m : word)
        if (static_cast<int>(m.size()) != group_.dim()) throw std::invalid_argument("momentum dimension mismatch");
    const bool on_shell = is_identity(group_, word);
    const cplx factor = rotate_to_canonical(group_, word);
    insert(amplitude * factor, std::move(word), on_shell);
}

void DeltaSum::add_inverse(cplx amplitude, std::vector<Momentum> word)
{
    // delta(-w) -> delta(w): the inverted word has the same support and unit Jacobian there.
    add(amplitude, std::move(word));
}

void DeltaSum::add_randomized(cplx amplitude, std::vector<Momentum> word, std::mt19937_64& rng)
{
    if (word.empty()) word.push_back(group_.zero());
    const bool on_shell = is_identity(group_, word);
    std::uniform_int_distribution<int> steps(0, static_cast<int>(3 * word.size()));
    std::bernoulli_distribution forward(0.5);
    const int count = steps(rng);
    for (int s = 0; s < count; ++s) {
        if (forward(rng)) {
            // delta(u + b) -> Delta(-b) delta(b + u)
            amplitude /= group_.modular(word.back());
            std::rotate(word.rbegin(), word.rbegin() + 1, word.rend());
        } else {
            // delta(a + u) -> Delta(-u) delta(u + a), with Delta(-u) = Delta(a) on the support
            const double du = group_.modular(compose(group_, {word.begin() + 1, word.end()}));
            amplitude /= du;
            std::rotate(word.begin(), word.begin() + 1, word.end());
        }
    }
    const cplx factor = rotate_to_canonical(group_, word);
    insert(amplitude * factor, std::move(word), on_shell);
}

cplx DeltaSum::volume_coefficient(const std::vector<Momentum>& canonical_word) const
{
    for (const auto& t : terms_)
        if (t.on_shell && words_close(t.word, canonical_word, WavePacket::merge_tolerance)) return t.amplitude;
    return {};
}

bool DeltaSum::equals(const DeltaSum& other, double rel_tol) const
{
    auto covered = [&](const DeltaSum& a, const DeltaSum& b) {
        for (const auto& t : a.terms_) {
            if (!t.on_shell) continue;
            const cplx c = b.volume_coefficient(t.word);
            if (std::abs(t.amplitude - c) > rel_tol * std::max(1.0, std::abs(t.amplitude))) return false;
        }
        return true;
    };
    return covered(*this, other) && covered(other, *this);
}

std::string DeltaSum::to_string() const
{
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& t : terms_) {
        if (!t.on_shell) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << t.amplitude.real() << (t.amplitude.imag() < 0 ? "" : "+") << t.amplitude.imag() << "i) d(";
        for (std::size_t i = 0; i < t.word.size(); ++i) {
            if (i) os << " + ";
            os << "[";
            for (std::size_t a = 0; a < t.word[i].size(); ++a) os << (a ? "," : "") << t.word[i][a];
            os << "]";
        }
        os << ")";
    }
    if (first) os << "0";
    return os.str();
}

DeltaSum integral(const WavePacket& f)
{
    DeltaSum out(f.group());
    for (const auto& t : f.terms()) out.add(t.amplitude, {t.p});
    return out;
}

DeltaSum integral_star(const WavePacket& f, const WavePacket& g)
{
    require_same(f.group(), g.group());
    DeltaSum out(f.group());
    for (const auto& a : f.terms())
        for (const auto& b : g.terms()) out.add(a.amplitude * b.amplitude, {a.p, b.p});
    return out;
}

WavePacket modular_twist(const WavePacket& f)
{
    WavePacket out(f.group());
    for (const auto& t : f.terms()) out.add_term(t.p, t.amplitude / f.group().modular(t.p));
    return out;
}

bool twisted_trace_check(const WavePacket& f, const WavePacket& g)
{
    return integral_star(f, g).equals(integral_star(modular_twist(g), f));
}

bool cyclicity_check(const WavePacket& f, const WavePacket& g)
{
    return integral_star(f, g).equals(integral_star(g, f));
}

std::string to_json(const WavePacket& f)
{
    nlohmann::ordered_json j;
    j["group"] = f.group().structure().name();
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : f.terms())
        terms.push_back({{"p", t.p}, {"re", t.amplitude.real()}, {"im", t.amplitude.imag()}});
    j["terms"] = std::move(terms);
    return j.dump();
}

WavePacket packet_from_json(std::string_view text, const GroupDescriptor& group)
{
    const auto j = nlohmann::json::parse(text);
    const auto name = j.at("group").get<std::string>();
    if (name != group.structure().name())
        throw std::invalid_argument("packet group '" + name + "' differs from '" + group.structure().name() + "'");
    WavePacket out(group);
    for (const auto& t : j.at("terms"))
        out.add_term(t.at("p").get<Momentum>(), cplx{t.value("re", 0.0), t.value("im", 0.0)});
    return out;
}

}  // namespace qst
