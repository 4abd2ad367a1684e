#ifndef RSFT_SCALAR_HPP
#define RSFT_SCALAR_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace rsft {

using Rational = mpq_class;

/// Energy cutoff E for truncated Novikov arithmetic. An empty cutoff means no
/// truncation (plain rational or exact finite Novikov sums).
using EnergyCutoff = std::optional<Rational>;

/// Smaller of two cutoffs; an absent cutoff acts as +infinity.
EnergyCutoff min_cutoff(const EnergyCutoff& a, const EnergyCutoff& b);

/// True when exponent e survives the cutoff (e < E).
bool below_cutoff(const Rational& e, const EnergyCutoff& cutoff);

Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& r);

/// Element of the truncated universal Novikov ring: a finite sum
/// c_1 L^{a_1} + ... with rational c_i and nonnegative rational a_i.
/// Plain rationals are the sums supported on a_i = 0.
///
/// Terms are kept sorted by exponent with no zero coefficients.
class Scalar {
public:
    struct Term {
        Rational exponent;
        Rational coeff;
    };

    Scalar() = default;
    Scalar(long value);
    Scalar(const Rational& value);

    static Scalar monomial(const Rational& coeff, const Rational& exponent);

    bool is_zero() const { return terms_.empty(); }
    /// No positive L-exponents.
    bool is_rational() const;
    /// The rational value; throws unless is_rational().
    Rational rational() const;
    /// Coefficient of L^0.
    Rational constant_term() const;
    /// Minimal exponent with nonzero coefficient (filtration level); empty for zero.
    std::optional<Rational> valuation() const;

    const std::vector<Term>& terms() const { return terms_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

    /// Product, dropping terms with exponent >= cutoff.
    static Scalar mul(const Scalar& a, const Scalar& b, const EnergyCutoff& cutoff = {});
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return mul(a, b); }

    Scalar scaled(const Rational& factor) const;
    Scalar truncated(const EnergyCutoff& cutoff) const;

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical text, e.g. "3/2", "2*L^1/2 - 1".
    std::string str() const;

private:
    void add_term(const Rational& exponent, const Rational& coeff);

    std::vector<Term> terms_;
};

} // namespace rsft

#endif
