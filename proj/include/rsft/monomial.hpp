#ifndef RSFT_MONOMIAL_HPP
#define RSFT_MONOMIAL_HPP

#include "rsft/universe.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace rsft {

struct Power {
    VarId var;
    std::uint32_t exp;

    friend auto operator<=>(const Power&, const Power&) = default;
};

/// Ordered product of variables in canonical order (sorted by VarId). The
/// empty monomial is 1. Odd variables appear with exponent at most 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<Power> powers) : powers_(std::move(powers)) {}
    static Monomial var(VarId v, std::uint32_t exp = 1) { return Monomial({{v, exp}}); }

    const std::vector<Power>& powers() const { return powers_; }
    bool is_one() const { return powers_.empty(); }
    std::uint32_t exponent(VarId v) const;
    std::uint32_t total_degree() const;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Power> powers_;
};

/// A monomial together with a sign, the result of reordering a product.
struct SignedMonomial {
    int sign = 1;
    Monomial mono;
};

int degree(const Universe& u, const Monomial& m);
inline bool odd(const Universe& u, const Monomial& m) { return (degree(u, m) & 1) != 0; }

/// Number of p-letters (optionally restricted to one side).
std::uint32_t p_degree(const Universe& u, const Monomial& m, std::optional<SideId> side = {});
/// Number of q-letters (optionally restricted to one side).
std::uint32_t q_degree(const Universe& u, const Monomial& m, std::optional<SideId> side = {});
bool has_t(const Universe& u, const Monomial& m);

/// Canonical form of the product a*b with its Koszul sign; empty when an odd
/// variable would be squared.
std::optional<SignedMonomial> multiply(const Universe& u, const Monomial& a, const Monomial& b);

/// Split m = sign * (qp part) * (t part); the t part is moved to the left.
struct TSplit {
    int sign;
    Monomial t_part;
    Monomial rest;
};
TSplit split_t_left(const Universe& u, const Monomial& m);

/// Graded derivative of one monomial; coefficient includes the Koszul sign and
/// the old exponent. Empty when v does not occur.
struct DerivativeTerm {
    long coeff;
    Monomial mono;
};
std::optional<DerivativeTerm> left_derivative(const Universe& u, const Monomial& m, VarId v);
std::optional<DerivativeTerm> right_derivative(const Universe& u, const Monomial& m, VarId v);

} // namespace rsft

#endif
