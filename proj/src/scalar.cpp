#include "rsft/scalar.hpp"

#include "rsft/error.hpp"

#include <algorithm>

namespace rsft {

EnergyCutoff min_cutoff(const EnergyCutoff& a, const EnergyCutoff& b)
{
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

bool below_cutoff(const Rational& e, const EnergyCutoff& cutoff)
{
    return !cutoff || e < *cutoff;
}

Rational parse_rational(const std::string& text)
{
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0) {
        throw Error(ErrorCode::SyntaxError, "not a rational literal: '" + text + "'");
    }
    if (r.get_den() == 0) throw Error(ErrorCode::SyntaxError, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

std::string rational_str(const Rational& r) { return r.get_str(10); }

Scalar::Scalar(long value)
{
    if (value != 0) terms_.push_back({Rational(0), Rational(value)});
}

Scalar::Scalar(const Rational& value)
{
    Rational v = value;
    v.canonicalize();
    if (v != 0) terms_.push_back({Rational(0), v});
}

Scalar Scalar::monomial(const Rational& coeff, const Rational& exponent)
{
    Rational e = exponent;
    Rational c = coeff;
    e.canonicalize();
    c.canonicalize();
    if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative Novikov exponent");
    Scalar s;
    if (c != 0) s.terms_.push_back({e, c});
    return s;
}

bool Scalar::is_rational() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0);
}

Rational Scalar::rational() const
{
    if (!is_rational()) throw Error(ErrorCode::InvalidArgument, "Novikov scalar " + str() + " is not rational");
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

Rational Scalar::constant_term() const
{
    if (!terms_.empty() && terms_[0].exponent == 0) return terms_[0].coeff;
    return 0;
}

std::optional<Rational> Scalar::valuation() const
{
    if (terms_.empty()) return std::nullopt;
    return terms_.front().exponent;
}

void Scalar::add_term(const Rational& exponent, const Rational& coeff)
{
    if (coeff == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, const Rational& e) { return t.exponent < e; });
    if (it != terms_.end() && it->exponent == exponent) {
        it->coeff += coeff;
        if (it->coeff == 0) terms_.erase(it);
    } else {
        terms_.insert(it, Term{exponent, coeff});
    }
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& other)
{
    if (terms_.empty()) {
        terms_ = other.terms_;
        return *this;
    }
    for (const auto& t : other.terms_) add_term(t.exponent, t.coeff);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other)
{
    for (const auto& t : other.terms_) add_term(t.exponent, -t.coeff);
    return *this;
}

Scalar Scalar::mul(const Scalar& a, const Scalar& b, const EnergyCutoff& cutoff)
{
    Scalar r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
        Rational e = a.terms_[0].exponent + b.terms_[0].exponent;
        if (below_cutoff(e, cutoff)) r.terms_.push_back({e, a.terms_[0].coeff * b.terms_[0].coeff});
        return r;
    }
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            Rational e = x.exponent + y.exponent;
            if (below_cutoff(e, cutoff)) r.add_term(e, x.coeff * y.coeff);
        }
    }
    return r;
}

Scalar Scalar::scaled(const Rational& factor) const
{
    if (factor == 0) return Scalar();
    Scalar r = *this;
    for (auto& t : r.terms_) t.coeff *= factor;
    return r;
}

Scalar Scalar::truncated(const EnergyCutoff& cutoff) const
{
    if (!cutoff) return *this;
    Scalar r;
    for (const auto& t : terms_) {
        if (t.exponent < *cutoff) r.terms_.push_back(t);
    }
    return r;
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].exponent != b.terms_[i].exponent || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
}

std::string Scalar::str() const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (!first) {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        first = false;
        if (t.exponent == 0) {
            out += rational_str(c);
        } else {
            if (c == -1) out += "-";
            else if (c != 1) out += rational_str(c) + "*";
            out += "L^" + rational_str(t.exponent);
        }
    }
    return out;
}

} // namespace rsft
