#include "rsft/morphism.hpp"

#include "rsft/error.hpp"

#include <algorithm>
#include <optional>

namespace rsft {

Potential::Potential(AlgElement f, SideId source, SideId target) : f_(std::move(f)), source_(source), target_(target)
{
    const Universe& u = f_.universe();
    if (source >= u.side_count() || target >= u.side_count() || source == target) {
        throw Error(ErrorCode::InvalidArgument, "potential needs two distinct ends");
    }
    for (const auto& [m, c] : f_.terms()) {
        if (degree(u, m) != 2 * u.N()) {
            throw Error(ErrorCode::DegreeMismatch, "potential term of degree " + std::to_string(degree(u, m)) +
                                                       ", expected " + std::to_string(2 * u.N()));
        }
        for (const auto& pw : m.powers()) {
            const VarInfo& info = u.info(pw.var);
            bool ok = info.kind == VarKind::T || (info.kind == VarKind::P && info.side == source) ||
                      (info.kind == VarKind::Q && info.side == target);
            if (!ok) {
                throw Error(ErrorCode::ContextMismatch,
                            "potential may only contain source p, target q and t variables, found " + u.var_name(pw.var));
            }
        }
    }
    f_ = f_.with_space(Space::Potential);
}

Potential Potential::identity(const UniversePtr& u, SideId source, SideId target, Truncation trunc)
{
    return Potential(identity_potential(u, source, target, std::move(trunc)), source, target);
}

TensorWord left_action(const AlgElement& g, const TensorWord& x, SideId side) { return right_coderivation(x, g, side); }

TensorWord right_action(const AlgElement& g, const TensorWord& x, SideId side) { return coderivation(g, x, side); }

namespace {

TensorWord t_times(const Monomial& t, const Scalar& c, const TensorWord& x)
{
    TensorWord tw(x.universe_ptr(), x.energy(), x.max_length());
    tw.add_normalized(WordKey{t, {}}, c);
    TensorWord out = odot(tw, x);
    out.mark_truncated(x.truncation_active());
    return out;
}

TensorWord act_by_factors(TensorWord x, const std::vector<Monomial>& factors, SideId side)
{
    const UniversePtr& u = x.universe_ptr();
    for (const auto& m : factors) {
        if (x.is_zero()) break;
        x = right_coderivation(x, AlgElement::term(u, m, Scalar(1), Space::Any, {Truncation::kUnbounded, x.energy()}),
                               side);
    }
    return x;
}

std::size_t key_q_length(const Universe& u, const WordKey& k, SideId side)
{
    std::size_t n = 0;
    for (const auto& f : k.factors) n += q_degree(u, f, side);
    return n;
}

void require_source_words(const Potential& f, const TensorWord& w)
{
    const Universe& u = f.universe();
    for (const auto& [k, c] : w.terms()) {
        for (const auto& m : k.factors) {
            for (const auto& pw : m.powers()) {
                if (!(u.is_q(pw.var) && u.info(pw.var).side == f.source())) {
                    throw Error(ErrorCode::ContextMismatch,
                                "morphism input must be a word in source q-variables, found " + u.var_name(pw.var));
                }
            }
        }
    }
}

} // namespace

TensorWord act_by_word(const TensorWord& x, const TensorWord& word, SideId side)
{
    TensorWord out(x.universe_ptr(), min_cutoff(x.energy(), word.energy()), x.max_length());
    out.mark_truncated(x.truncation_active() || word.truncation_active());
    for (const auto& [k, c] : word.terms()) {
        TensorWord y = act_by_factors(x, k.factors, side);
        out += t_times(k.t_part, c, y);
    }
    return out;
}

std::size_t q_length(const TensorWord& w, SideId side)
{
    std::size_t n = 0;
    for (const auto& [k, c] : w.terms()) n = std::max(n, key_q_length(w.universe(), k, side));
    return n;
}

std::size_t exponential_length(const Potential& f, std::size_t tau)
{
    AlgElement f0 = f.zero_part();
    if (f0.is_zero()) return tau;
    auto level = f0.filtration_level();
    const EnergyCutoff& energy = f.element().truncation().energy;
    if (!level || *level <= 0 || !energy) {
        throw Error(ErrorCode::NotOverline,
                    "potential has a part without source p-variables and no positive filtration; split it first");
    }
    Rational ratio = *energy / *level;
    mpz_class ceil_ratio;
    mpz_cdiv_q(ceil_ratio.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    return tau + static_cast<std::size_t>(ceil_ratio.get_ui());
}

TensorWord apply_morphism(const Potential& f, const TensorWord& word, std::optional<std::size_t> max_length)
{
    require_source_words(f, word);
    const UniversePtr& u = f.universe_ptr();
    const EnergyCutoff energy = min_cutoff(f.element().truncation().energy, word.energy());
    TensorWord out(u, energy, max_length);
    out.mark_truncated(word.truncation_active() || f.element().truncation_active());
    // f0 has no source p-variables, so the actions pass it by: Phi(w) = e^{f0} (.) Phi'(w)
    const AlgElement f0 = f.zero_part();
    const std::size_t f0_length = exponential_length(f, 0);
    const AlgElement rest = (f.element() - f0).with_truncation({Truncation::kUnbounded, energy});
    std::optional<TensorWord> e0;
    if (!f0.is_zero()) {
        e0 = TensorWord::exp(f0.with_truncation({Truncation::kUnbounded, energy}), f0_length, false)
                 .with_limits(energy, std::nullopt);
    }
    std::map<std::size_t, TensorWord> exps;
    for (const auto& [k, c] : word.terms()) {
        std::size_t len = key_q_length(*u, k, f.source());
        auto it = exps.find(len);
        if (it == exps.end()) it = exps.emplace(len, TensorWord::exp(rest, len, false).with_limits(energy, std::nullopt)).first;
        TensorWord y = act_by_factors(it->second, k.factors, f.source()).restrict_p_zero(f.source());
        if (e0) y = odot(*e0, y).with_limits(energy, std::nullopt);
        out += t_times(k.t_part, c, y);
    }
    return out;
}

AlgElement phi_component(const Potential& f, const std::vector<AlgElement>& ws)
{
    if (!f.in_overline()) throw Error(ErrorCode::NotOverline, "phi components need a potential in the overline");
    const UniversePtr& u = f.universe_ptr();
    const Truncation trunc{Truncation::kUnbounded, f.element().truncation().energy};
    AlgElement out(u, Space::Algebra, trunc);
    if (ws.empty()) return out;
    TensorWord w = TensorWord::word(ws);
    require_source_words(f, w);
    const std::size_t r = ws.size();
    std::map<std::size_t, TensorWord> powers;
    for (const auto& [k, c] : w.terms()) {
        if (k.factors.size() != r) continue;
        std::size_t tau = key_q_length(*u, k, f.source());
        if (tau + 1 < r) continue;
        std::size_t n = tau + 1 - r;
        auto it = powers.find(n);
        if (it == powers.end()) it = powers.emplace(n, TensorWord::divided_power(f.element(), n)).first;
        TensorWord y = act_by_factors(it->second, k.factors, f.source()).restrict_p_zero(f.source());
        AlgElement value = y.length_one_element();
        if (y.truncation_active()) out.mark_truncated();
        out += AlgElement::term(u, k.t_part, c, Space::Any, trunc) * value;
    }
    return out.with_space(Space::Algebra);
}

namespace {

void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::vector<std::size_t>>&)>& fn)
{
    std::vector<std::vector<std::size_t>> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            fn(blocks);
            return;
        }
        for (auto& b : blocks) {
            b.push_back(i);
            rec(i + 1);
            b.pop_back();
        }
        blocks.push_back({i});
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
}

int permutation_sign(const std::vector<bool>& odd_factors, const std::vector<std::size_t>& order)
{
    int inversions = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if (order[i] > order[j] && odd_factors[order[i]] && odd_factors[order[j]]) ++inversions;
        }
    }
    return (inversions & 1) ? -1 : 1;
}

} // namespace

TensorWord apply_via_components(const Potential& f, const TensorWord& word)
{
    require_source_words(f, word);
    const UniversePtr& u = f.universe_ptr();
    TensorWord out(u, min_cutoff(f.element().truncation().energy, word.energy()));
    std::map<std::vector<Monomial>, TensorWord> cache;
    for (const auto& [k, c] : word.terms()) {
        const std::size_t m = k.factors.size();
        std::vector<bool> odd_factors(m);
        for (std::size_t i = 0; i < m; ++i) odd_factors[i] = odd(*u, k.factors[i]);
        TensorWord sum(u, out.energy());
        if (m == 0) sum = TensorWord::unit(u, out.energy());
        for_each_partition(m, [&](const std::vector<std::vector<std::size_t>>& blocks) {
            std::vector<std::size_t> order;
            TensorWord value = TensorWord::unit(u, out.energy());
            for (const auto& b : blocks) {
                std::vector<Monomial> monos;
                for (auto i : b) {
                    order.push_back(i);
                    monos.push_back(k.factors[i]);
                }
                auto it = cache.find(monos);
                if (it == cache.end()) {
                    std::vector<AlgElement> ws;
                    for (const auto& mono : monos) ws.push_back(AlgElement::term(u, mono, Scalar(1)));
                    AlgElement phi = phi_component(f, ws);
                    it = cache.emplace(monos, phi.is_zero() ? TensorWord(u) : TensorWord::word(phi)).first;
                }
                value = odot(value, it->second);
                if (value.is_zero()) return;
            }
            sum += value.scaled(permutation_sign(odd_factors, order));
        });
        out += t_times(k.t_part, c, sum);
    }
    return out;
}

std::pair<AlgElement, AlgElement> chain_map_sides(const Potential& f, const AlgElement& h_plus, const AlgElement& h_minus)
{
    return {restrict_to_lagrangian(h_plus, f.element(), f.source(), f.target()),
            restrict_to_lagrangian(h_minus, f.element(), f.source(), f.target())};
}

bool check_chain_map(const Potential& f, const AlgElement& h_plus, const AlgElement& h_minus)
{
    if (!check_master(h_plus)) throw Error(ErrorCode::MasterEquationFails, "{h+,h+} != 0");
    if (!check_master(h_minus)) throw Error(ErrorCode::MasterEquationFails, "{h-,h-} != 0");
    auto [plus, minus] = chain_map_sides(f, h_plus, h_minus);
    return plus == minus;
}

Potential compose(const Potential& f_minus, const Potential& f_plus, int max_iterations)
{
    if (f_minus.universe_ptr().get() != f_plus.universe_ptr().get()) {
        throw Error(ErrorCode::ContextMismatch, "composition of potentials over different variable sets");
    }
    if (f_plus.target() != f_minus.source()) {
        throw Error(ErrorCode::ContextMismatch, "middle ends of the composed potentials differ");
    }
    if (!f_plus.in_overline() || !f_minus.in_overline()) {
        throw Error(ErrorCode::NotOverline, "composition needs both potentials in the overline; use the twisted path");
    }
    const UniversePtr& up = f_plus.universe_ptr();
    const Universe& u = *up;
    const SideId mid = f_plus.target();
    const Truncation trunc = Truncation::meet(f_plus.element().truncation(), f_minus.element().truncation());
    const AlgElement fp = f_plus.element().with_truncation(trunc);
    const AlgElement fm = f_minus.element().with_truncation(trunc);
    const std::size_t gens = u.table(mid).size();

    std::vector<AlgElement> dq, dp;
    for (std::size_t g = 0; g < gens; ++g) {
        const Rational kappa(u.table(mid)[g].kappa);
        dq.push_back(left_partial(fp, u.q(mid, g)).scaled(kappa));
        dp.push_back(right_partial(fm, u.p(mid, g)).scaled(kappa));
    }
    std::vector<AlgElement> P(gens, AlgElement(up, Space::Any, trunc));
    std::vector<AlgElement> Q(gens, AlgElement(up, Space::Any, trunc));
    bool stable = false;
    for (int iter = 0; iter < max_iterations && !stable; ++iter) {
        std::map<VarId, AlgElement> q_images, p_images;
        for (std::size_t g = 0; g < gens; ++g) q_images.emplace(u.q(mid, g), Q[g]);
        std::vector<AlgElement> newP, newQ;
        for (std::size_t g = 0; g < gens; ++g) newP.push_back(substitute(dq[g], q_images));
        for (std::size_t g = 0; g < gens; ++g) p_images.emplace(u.p(mid, g), newP[g]);
        for (std::size_t g = 0; g < gens; ++g) newQ.push_back(substitute(dp[g], p_images));
        stable = newP == P && newQ == Q;
        P = std::move(newP);
        Q = std::move(newQ);
    }
    if (!stable) {
        throw Error(ErrorCode::NonTerminating, "composition did not stabilise; set a finite p-degree truncation");
    }
    std::map<VarId, AlgElement> q_images, p_images;
    for (std::size_t g = 0; g < gens; ++g) {
        q_images.emplace(u.q(mid, g), Q[g]);
        p_images.emplace(u.p(mid, g), P[g]);
    }
    AlgElement f = substitute(fp, q_images) + substitute(fm, p_images);
    for (std::size_t g = 0; g < gens; ++g) {
        Rational inv(1, u.table(mid)[g].kappa);
        inv.canonicalize();
        f -= (Q[g] * P[g]).scaled(inv);
    }
    return Potential(f.with_space(Space::Potential), f_plus.source(), f_minus.target());
}

TensorWord constraint_expansion(const Potential& f, const Monomial& t_mono, std::size_t k)
{
    return TensorWord::exp(f.element(), k).t_coefficient(t_mono);
}

TensorWord siegel_map(const Potential& f, const Monomial& t_mono, const TensorWord& word, std::size_t k)
{
    if (!f.universe().table(f.target()).empty()) {
        throw Error(ErrorCode::InvalidArgument, "Siegel maps need a potential with empty target end");
    }
    require_source_words(f, word);
    TensorWord e = constraint_expansion(f, t_mono, k);
    e = e.with_limits(e.energy(), std::nullopt);
    return act_by_word(e, word, f.source()).restrict_p_zero(f.source());
}

} // namespace rsft
