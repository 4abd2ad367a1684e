#include "rsft/mctwist.hpp"

#include "rsft/error.hpp"

namespace rsft {

namespace {

std::size_t ceil_ratio(const Rational& num, const Rational& den)
{
    Rational ratio = num / den;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    return static_cast<std::size_t>(c.get_ui());
}

void require_positive(const AlgElement& a, bool allow_zero)
{
    if (a.is_zero()) {
        if (!allow_zero) throw Error(ErrorCode::ZeroFiltration, "the zero element has no positive filtration level");
        return;
    }
    auto level = a.filtration_level();
    if (!level || *level <= 0) throw Error(ErrorCode::ZeroFiltration, "element has filtration level 0");
}

void require_mc_degree(const AlgElement& a)
{
    if (a.is_zero()) return;
    auto d = a.degree();
    if (!d || *d != 2 * a.universe().N()) {
        throw Error(ErrorCode::DegreeMismatch, "Maurer-Cartan candidates have degree 2N");
    }
}

} // namespace

std::size_t exp_length(const AlgElement& a, const EnergyCutoff& energy)
{
    if (a.is_zero()) return 0;
    auto level = a.filtration_level();
    if (!level || *level <= 0) throw Error(ErrorCode::ZeroFiltration, "e^a needs positive filtration level");
    if (!energy) throw Error(ErrorCode::InvalidArgument, "e^a needs a finite energy cutoff");
    return ceil_ratio(*energy, *level);
}

TensorWord exp_filtered(const AlgElement& a, const EnergyCutoff& energy)
{
    std::size_t len = exp_length(a, energy);
    AlgElement at = a.with_truncation({Truncation::kUnbounded, energy});
    TensorWord e = TensorWord::exp(at, len, false);
    return e.with_limits(energy, std::nullopt);
}

bool is_maurer_cartan(const AlgElement& a, const AlgElement& h, const EnergyCutoff& energy, bool allow_zero,
                      std::optional<SideId> side)
{
    require_mc_degree(a);
    require_positive(a, allow_zero);
    if (!check_master(h)) throw Error(ErrorCode::MasterEquationFails, "{h,h} != 0");
    if (a.is_zero()) return coderivation(h, TensorWord::unit(a.universe_ptr()), side).is_zero();
    return coderivation(h, exp_filtered(a, energy), side).is_zero();
}

bool exponential_product_check(const AlgElement& a, const AlgElement& b, const EnergyCutoff& energy)
{
    AlgElement s = a + b;
    TensorWord lhs = s.is_zero() ? TensorWord::unit(a.universe_ptr(), energy) : exp_filtered(s, energy);
    TensorWord ea = a.is_zero() ? TensorWord::unit(a.universe_ptr(), energy) : exp_filtered(a, energy);
    TensorWord eb = b.is_zero() ? TensorWord::unit(a.universe_ptr(), energy) : exp_filtered(b, energy);
    return lhs == odot(ea, eb);
}

TensorWord psi(const AlgElement& a, const TensorWord& x, const EnergyCutoff& energy)
{
    if (a.is_zero()) return x;
    return odot(exp_filtered(a, energy), x.with_limits(min_cutoff(x.energy(), energy), x.max_length()));
}

TensorWord twist_coderivation(const AlgElement& h, const AlgElement& a, const TensorWord& x,
                              const EnergyCutoff& energy, bool allow_zero, std::optional<SideId> side)
{
    if (!is_maurer_cartan(a, h, energy, allow_zero, side)) {
        throw Error(ErrorCode::NotMaurerCartan, "D_h(e^a) != 0");
    }
    return psi(-a, coderivation(h, psi(a, x, energy), side), energy);
}

AlgElement twist_hamiltonian(const AlgElement& h, const AlgElement& a, const EnergyCutoff& energy, bool allow_zero,
                             std::optional<SideId> side)
{
    if (!is_maurer_cartan(a, h, energy, allow_zero, side)) {
        throw Error(ErrorCode::NotMaurerCartan, "D_h(e^a) != 0");
    }
    const Truncation trunc{h.truncation().pmax, min_cutoff(h.truncation().energy, energy)};
    AlgElement at = a.with_truncation(trunc);
    AlgElement term = h.with_truncation(trunc);
    AlgElement sum = term;
    // Each bracket with a raises the filtration level by level(a) > 0, so the
    // series stops once every term has reached the cutoff.
    for (long n = 1; !term.is_zero(); ++n) {
        term = bracket_bilinear(term, at).scaled(Rational(1, n));
        sum += term;
    }
    return sum.with_space(h.space());
}

SplitPotential split_potential(const Potential& f)
{
    AlgElement f0 = f.zero_part();
    if (!f0.is_zero()) {
        auto level = f0.filtration_level();
        if (!level || *level <= 0) {
            throw Error(ErrorCode::ZeroFiltration, "f|_{p=0} must have positive filtration level");
        }
    }
    AlgElement rest = f.element() - f0;
    return {f0.with_space(Space::Algebra), Potential(rest, f.source(), f.target())};
}

AlgElement pushforward_mc(const Potential& f, const AlgElement& a, const AlgElement& h_plus, const AlgElement& h_minus,
                          const EnergyCutoff& energy)
{
    if (!is_maurer_cartan(a, h_plus, energy, true, f.source())) {
        throw Error(ErrorCode::NotMaurerCartan, "a is not Maurer-Cartan for h+");
    }
    if (!check_chain_map(f, h_plus, h_minus)) throw Error(ErrorCode::NotChainMap, "h-|L_f != h+|L_f");
    const UniversePtr& u = f.universe_ptr();
    AlgElement out(u, Space::Algebra, {Truncation::kUnbounded, energy});
    if (a.is_zero()) return out;
    TensorWord ea = exp_filtered(a, energy);
    Potential ft(f.element().with_truncation({f.element().truncation().pmax, energy}), f.source(), f.target());
    for (const auto& [k, c] : ea.terms()) {
        if (k.factors.empty()) continue;
        std::vector<AlgElement> ws;
        for (const auto& m : k.factors) ws.push_back(AlgElement::term(u, m, Scalar(1), Space::Any, {Truncation::kUnbounded, energy}));
        AlgElement phi = phi_component(ft, ws);
        out += (AlgElement::term(u, k.t_part, c, Space::Any, {Truncation::kUnbounded, energy}) * phi);
    }
    return out.with_space(Space::Algebra);
}

AlgElement twisted_generating_potential(const Potential& f, const AlgElement& a, const EnergyCutoff& energy)
{
    if (!f.in_overline()) throw Error(ErrorCode::NotOverline, "twisting needs a potential in the overline");
    const UniversePtr& u = f.universe_ptr();
    const Truncation trunc{Truncation::kUnbounded, energy};
    AlgElement fe = f.element().with_truncation(trunc);
    TensorWord ea = a.is_zero() ? TensorWord::unit(u, energy) : exp_filtered(a, energy);
    AlgElement g(u, Space::Potential, trunc);
    std::map<std::size_t, TensorWord> powers;
    for (const auto& [k, c] : ea.terms()) {
        std::size_t tau = 0;
        for (const auto& m : k.factors) tau += q_degree(*u, m, f.source());
        if (tau + 1 < k.factors.size()) continue;
        std::size_t n = tau + 1 - k.factors.size();
        auto it = powers.find(n);
        if (it == powers.end()) it = powers.emplace(n, TensorWord::divided_power(fe, n)).first;
        TensorWord w(u, energy);
        w.add_normalized(WordKey{Monomial(), k.factors}, Scalar(1));
        TensorWord y = act_by_word(it->second, w, f.source());
        g += AlgElement::term(u, k.t_part, c, Space::Any, trunc) * y.length_one_element();
    }
    return g.with_space(Space::Potential);
}

TwistedMorphism twisted_morphism(const Potential& f, const AlgElement& a, const AlgElement& h_plus,
                                 const AlgElement& h_minus, const EnergyCutoff& energy)
{
    AlgElement push = pushforward_mc(f, a, h_plus, h_minus, energy);
    AlgElement g = twisted_generating_potential(f, a, energy);
    AlgElement g0 = g.restrict_p_zero(f.source());
    if (g0 != push.with_truncation(g0.truncation())) {
        throw Error(ErrorCode::NotChainMap, "leading term of the twisted potential differs from f_*(a)");
    }
    return {Potential(g - g0, f.source(), f.target()), push};
}

} // namespace rsft
