#include "qst/exact.hpp"

#include <sstream>
#include <stdexcept>

namespace qst::exact {

GaussianRational GaussianRational::inverse() const
{
    const mpq_class norm = re_ * re_ + im_ * im_;
    if (sgn(norm) == 0) throw std::domain_error("division by zero");
    return {re_ / norm, -im_ / norm};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string GaussianRational::to_string() const
{
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + "i";
    std::string s = "(" + re_.get_str();
    s += sgn(im_) > 0 ? "+" : "";
    return s + im_.get_str() + "i)";
}

Laurent::Laurent(GaussianRational c, int power)
{
    if (!c.is_zero()) terms_.emplace(power, std::move(c));
}

GaussianRational Laurent::coefficient(int power) const
{
    const auto it = terms_.find(power);
    return it == terms_.end() ? GaussianRational{} : it->second;
}

int Laurent::min_power() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int Laurent::max_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

Laurent& Laurent::operator+=(const Laurent& o)
{
    for (const auto& [k, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b)
{
    Laurent out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) out += Laurent(ca * cb, ka + kb);
    return out;
}

Laurent& Laurent::operator*=(const Laurent& o) { return *this = *this * o; }

Laurent Laurent::operator-() const
{
    Laurent out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
}

std::string Laurent::to_string(const std::string& symbol) const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second.to_string();
        if (it->first == 1) os << " " << symbol;
        else if (it->first != 0) os << " " << symbol << "^" << it->first;
    }
    return os.str();
}

}  // namespace qst::exact
