#include "rsft/monomial.hpp"

namespace rsft {

std::uint32_t Monomial::exponent(VarId v) const
{
    for (const auto& pw : powers_) {
        if (pw.var == v) return pw.exp;
        if (pw.var > v) break;
    }
    return 0;
}

std::uint32_t Monomial::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto& pw : powers_) d += pw.exp;
    return d;
}

int degree(const Universe& u, const Monomial& m)
{
    int d = 0;
    for (const auto& pw : m.powers()) d += u.degree(pw.var) * static_cast<int>(pw.exp);
    return d;
}

std::uint32_t p_degree(const Universe& u, const Monomial& m, std::optional<SideId> side)
{
    std::uint32_t d = 0;
    for (const auto& pw : m.powers()) {
        if (u.is_p(pw.var) && (!side || u.info(pw.var).side == *side)) d += pw.exp;
    }
    return d;
}

std::uint32_t q_degree(const Universe& u, const Monomial& m, std::optional<SideId> side)
{
    std::uint32_t d = 0;
    for (const auto& pw : m.powers()) {
        if (u.is_q(pw.var) && (!side || u.info(pw.var).side == *side)) d += pw.exp;
    }
    return d;
}

bool has_t(const Universe& u, const Monomial& m)
{
    return !m.powers().empty() && u.is_t(m.powers().back().var);
}

std::optional<SignedMonomial> multiply(const Universe& u, const Monomial& a, const Monomial& b)
{
    if (a.is_one()) return SignedMonomial{1, b};
    if (b.is_one()) return SignedMonomial{1, a};
    const auto& pa = a.powers();
    const auto& pb = b.powers();
    std::vector<Power> out;
    out.reserve(pa.size() + pb.size());
    // Each odd letter of b passes the odd letters of a with a larger id.
    int odd_a_remaining = 0;
    for (const auto& pw : pa) {
        if (u.odd(pw.var)) ++odd_a_remaining;
    }
    int swaps = 0;
    std::size_t i = 0, j = 0;
    while (i < pa.size() || j < pb.size()) {
        if (j == pb.size() || (i < pa.size() && pa[i].var < pb[j].var)) {
            if (u.odd(pa[i].var)) --odd_a_remaining;
            out.push_back(pa[i++]);
        } else if (i == pa.size() || pb[j].var < pa[i].var) {
            if (u.odd(pb[j].var)) swaps += odd_a_remaining;
            out.push_back(pb[j++]);
        } else {
            if (u.odd(pa[i].var)) return std::nullopt;
            out.push_back({pa[i].var, pa[i].exp + pb[j].exp});
            ++i;
            ++j;
        }
    }
    return SignedMonomial{(swaps & 1) ? -1 : 1, Monomial(std::move(out))};
}

TSplit split_t_left(const Universe& u, const Monomial& m)
{
    const auto& pw = m.powers();
    std::size_t first_t = pw.size();
    while (first_t > 0 && u.is_t(pw[first_t - 1].var)) --first_t;
    if (first_t == pw.size()) return {1, Monomial(), m};
    std::vector<Power> rest(pw.begin(), pw.begin() + static_cast<long>(first_t));
    std::vector<Power> tp(pw.begin() + static_cast<long>(first_t), pw.end());
    Monomial r(std::move(rest));
    Monomial t(std::move(tp));
    int sign = (odd(u, r) && odd(u, t)) ? -1 : 1;
    return {sign, std::move(t), std::move(r)};
}

namespace {

std::optional<DerivativeTerm> derivative(const Universe& u, const Monomial& m, VarId v, bool from_left)
{
    const auto& pw = m.powers();
    std::size_t pos = pw.size();
    for (std::size_t i = 0; i < pw.size(); ++i) {
        if (pw[i].var == v) {
            pos = i;
            break;
        }
    }
    if (pos == pw.size()) return std::nullopt;
    long coeff = pw[pos].exp;
    if (u.odd(v)) {
        int passed = 0;
        if (from_left) {
            for (std::size_t i = 0; i < pos; ++i) passed += u.odd(pw[i].var) ? 1 : 0;
        } else {
            for (std::size_t i = pos + 1; i < pw.size(); ++i) passed += u.odd(pw[i].var) ? 1 : 0;
        }
        if (passed & 1) coeff = -coeff;
    }
    std::vector<Power> out = pw;
    if (--out[pos].exp == 0) out.erase(out.begin() + static_cast<long>(pos));
    return DerivativeTerm{coeff, Monomial(std::move(out))};
}

} // namespace

std::optional<DerivativeTerm> left_derivative(const Universe& u, const Monomial& m, VarId v)
{
    return derivative(u, m, v, true);
}

std::optional<DerivativeTerm> right_derivative(const Universe& u, const Monomial& m, VarId v)
{
    return derivative(u, m, v, false);
}

} // namespace rsft
