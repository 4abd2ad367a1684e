#ifndef RSFT_TEST_SUPPORT_HPP
#define RSFT_TEST_SUPPORT_HPP

#include "rsft/coalgebra.hpp"
#include "rsft/context.hpp"
#include "rsft/element.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <random>
#include <vector>

namespace rsft::testing {

class Random {
public:
    explicit Random(std::uint64_t seed) : eng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    bool coin() { return uniform(0, 1) == 1; }
    long nonzero_coeff(int bound = 3)
    {
        int c = 0;
        while (c == 0) c = uniform(-bound, bound);
        return c;
    }
    template <class T> const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))]; }

private:
    std::mt19937_64 eng_;
};

/// Random monomial with 0..max_letters letters drawn from `vars`; nullopt when
/// an odd letter repeats.
inline std::optional<Monomial> random_monomial(const Universe& u, Random& rng, const std::vector<VarId>& vars,
                                               int min_letters, int max_letters)
{
    Monomial m;
    int letters = rng.uniform(min_letters, max_letters);
    for (int i = 0; i < letters; ++i) {
        auto prod = multiply(u, m, Monomial::var(rng.pick(vars)));
        if (!prod) return std::nullopt;
        m = prod->mono;
    }
    return m;
}

/// Random homogeneous element of the given degree with up to max_terms terms
/// whose monomials satisfy `keep`. May be zero when no monomial is found.
inline AlgElement random_homogeneous(const UniversePtr& u, Random& rng, int degree, int max_terms,
                                     const std::vector<VarId>& vars, int max_letters,
                                     const std::function<bool(const Monomial&)>& keep = {}, int min_letters = 0)
{
    AlgElement x(u);
    int terms = rng.uniform(1, max_terms);
    for (int attempt = 0, found = 0; attempt < 400 && found < terms; ++attempt) {
        auto m = random_monomial(*u, rng, vars, min_letters, max_letters);
        if (!m || rsft::degree(*u, *m) != degree) continue;
        if (keep && !keep(*m)) continue;
        x.add_term(*m, Scalar(rng.nonzero_coeff()));
        ++found;
    }
    return x;
}

inline std::vector<VarId> all_qp(const Universe& u, std::optional<SideId> side = {})
{
    std::vector<VarId> out;
    for (VarId v = 0; v < u.var_count(); ++v) {
        if (u.is_t(v)) continue;
        if (side && u.info(v).side != *side) continue;
        out.push_back(v);
    }
    return out;
}

inline std::vector<VarId> all_q(const Universe& u, std::optional<SideId> side = {})
{
    std::vector<VarId> out;
    for (VarId v : all_qp(u, side)) {
        if (u.is_q(v)) out.push_back(v);
    }
    return out;
}

inline std::vector<VarId> all_p(const Universe& u, std::optional<SideId> side = {})
{
    std::vector<VarId> out;
    for (VarId v : all_qp(u, side)) {
        if (u.is_p(v)) out.push_back(v);
    }
    return out;
}

/// Random word of q-monomial factors (each with at least one letter).
inline TensorWord random_q_word(const UniversePtr& u, Random& rng, int max_length, int max_qlen,
                                std::optional<SideId> side = {})
{
    auto qs = all_q(*u, side);
    for (int attempt = 0; attempt < 100; ++attempt) {
        int len = rng.uniform(1, max_length);
        std::vector<AlgElement> factors;
        int budget = max_qlen;
        bool ok = true;
        for (int i = 0; i < len; ++i) {
            int remaining = len - i - 1;
            int letters = rng.uniform(1, std::max(1, std::min(2, budget - remaining)));
            auto m = random_monomial(*u, rng, qs, letters, letters);
            if (!m || budget - letters < remaining) {
                ok = false;
                break;
            }
            budget -= letters;
            factors.push_back(AlgElement::term(u, *m, Scalar(1)));
        }
        if (!ok) continue;
        TensorWord w = TensorWord::word(factors).scaled(Scalar(rng.nonzero_coeff()));
        if (!w.is_zero()) return w;
    }
    return TensorWord::word(AlgElement::variable(u, qs.front()));
}

inline Context load_fixture(const std::string& name)
{
    std::ifstream in(std::string(RSFT_FIXTURE_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_context(ss.str());
}

/// Copies x into universe `to`, moving variables of side s to sides.at(s)
/// (generator tables must match); t-variables are matched by name.
inline AlgElement transplant(const AlgElement& x, const UniversePtr& to, const std::map<SideId, SideId>& sides)
{
    const Universe& from = x.universe();
    AlgElement out(to, x.space(), x.truncation());
    for (const auto& [m, c] : x.terms()) {
        AlgElement term = AlgElement::constant(to, c);
        for (const auto& pw : m.powers()) {
            const VarInfo& info = from.info(pw.var);
            VarId v;
            if (info.kind == VarKind::T) {
                v = to->t(*to->find_tvar(from.tvars()[info.index].name));
            } else {
                SideId s = sides.at(info.side);
                v = info.kind == VarKind::Q ? to->q(s, info.index) : to->p(s, info.index);
            }
            term = term * power(AlgElement::variable(to, v), pw.exp);
        }
        out += term;
    }
    return out;
}

} // namespace rsft::testing

#endif
