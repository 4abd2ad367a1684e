#include "rsft/linearize.hpp"

#include "rsft/error.hpp"

#include <functional>

namespace rsft {

namespace {

void require_hat(const AlgElement& h, std::optional<SideId> side)
{
    if (!check_hat(h, side)) throw Error(ErrorCode::NotHat, "h|_{p=0} and h|_{q=0} must both vanish");
}

std::vector<VarId> side_qs(const Universe& u, std::optional<SideId> side)
{
    std::vector<VarId> out;
    for (SideId s = 0; s < u.side_count(); ++s) {
        if (side && *side != s) continue;
        for (std::size_t g = 0; g < u.table(s).size(); ++g) out.push_back(u.q(s, g));
    }
    return out;
}

/// All words of n letters from `vars` (odd letters at most once).
void letter_words(const UniversePtr& u, const std::vector<VarId>& vars, std::size_t n,
                  const std::function<void(const TensorWord&)>& visit)
{
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (pick.size() == n) {
            std::vector<AlgElement> factors;
            for (std::size_t i : pick) factors.push_back(AlgElement::variable(u, vars[i]));
            TensorWord w = TensorWord::word(factors);
            if (!w.is_zero()) visit(w);
            return;
        }
        for (std::size_t i = from; i < vars.size(); ++i) {
            if (!pick.empty() && pick.back() == i && u->odd(vars[i])) continue;
            pick.push_back(i);
            rec(i);
            pick.pop_back();
        }
    };
    rec(0);
}

} // namespace

bool check_hat(const AlgElement& h, std::optional<SideId> side) { return h.in_hat(side); }

AlgElement hat_component(const AlgElement& h, int r, int s, std::optional<SideId> side)
{
    return h.extract_bidegree(r, s, side);
}

AlgElement m_operation(const AlgElement& h, int r, int s, const std::vector<AlgElement>& qs, std::optional<SideId> side)
{
    require_hat(h, side);
    if (static_cast<int>(qs.size()) != r) throw Error(ErrorCode::InvalidArgument, "m^r_s takes exactly r inputs");
    AlgElement x = hat_component(h, r, s, side);
    for (const auto& q : qs) {
        if (x.is_zero()) break;
        x = bracket(x, q);
    }
    return x;
}

TensorWord flatten_word(const TensorWord& x)
{
    const UniversePtr& u = x.universe_ptr();
    TensorWord out(u, x.energy());
    for (const auto& [k, c] : x.terms()) {
        std::vector<Monomial> letters;
        for (const auto& m : k.factors) {
            for (const auto& pw : m.powers()) {
                for (std::uint32_t e = 0; e < pw.exp; ++e) letters.push_back(Monomial::var(pw.var));
            }
        }
        auto sw = normalize_word(*u, k.t_part, letters);
        if (!sw) continue;
        out.add_normalized(sw->key, sw->sign < 0 ? -c : c);
    }
    return out;
}

bool is_letter_word(const TensorWord& x)
{
    const Universe& u = x.universe();
    for (const auto& [k, c] : x.terms()) {
        if (!k.t_part.is_one() || k.factors.empty()) return false;
        for (const auto& m : k.factors) {
            if (m.powers().size() != 1 || m.powers()[0].exp != 1 || !u.is_q(m.powers()[0].var)) return false;
        }
    }
    return true;
}

TensorWord composite_relation(const AlgElement& h, int r, int s, const TensorWord& letters, std::optional<SideId> side)
{
    TensorWord sum(letters.universe_ptr(), letters.energy());
    for (int r1 = 1; r1 < r; ++r1) {
        for (int s1 = 1; s1 < s; ++s1) {
            AlgElement inner = hat_component(h, r - r1, s - s1, side);
            AlgElement outer = hat_component(h, r1, s1, side);
            if (inner.is_zero() || outer.is_zero()) continue;
            sum += coderivation(outer, coderivation(inner, letters, side), side);
        }
    }
    return flatten_word(sum);
}

BiLieReport check_bilie_relations(const AlgElement& h, int r_max, int s_max, std::size_t max_inputs,
                                  std::optional<SideId> side)
{
    require_hat(h, side);
    const UniversePtr& u = h.universe_ptr();
    const auto vars = side_qs(*u, side);
    BiLieReport report{true, {}};
    for (int r = 2; r <= r_max; ++r) {
        for (int s = 2; s <= s_max; ++s) {
            AlgElement sum(u, Space::Any, h.truncation());
            for (int r1 = 1; r1 < r; ++r1) {
                for (int s1 = 1; s1 < s; ++s1) {
                    AlgElement a = hat_component(h, r1, s1, side);
                    AlgElement b = hat_component(h, r - r1, s - s1, side);
                    if (!a.is_zero() && !b.is_zero()) sum += bracket(a, b);
                }
            }
            bool composite = true;
            const std::size_t top = std::max<std::size_t>(static_cast<std::size_t>(r), max_inputs);
            for (std::size_t n = static_cast<std::size_t>(r); n <= top && composite; ++n) {
                letter_words(u, vars, n, [&](const TensorWord& w) {
                    if (composite && !composite_relation(h, r, s, w, side).is_zero()) composite = false;
                });
            }
            BiLieComponent c{r, s, sum.is_zero(), composite, sum.is_zero() == composite};
            report.ok = report.ok && c.bracket_form && c.composite_form;
            report.components.push_back(c);
        }
    }
    return report;
}

AlgElement linear_part(const AlgElement& x, std::optional<SideId> side) { return x.q_part(1, side); }

AlgElement restrict_to_augmentation(const AlgElement& h, const AlgElement& f, SideId side)
{
    const UniversePtr& u = h.universe_ptr();
    std::map<VarId, AlgElement> images;
    for (std::size_t g = 0; g < u->table(side).size(); ++g) {
        const VarId p = u->p(side, g);
        images.emplace(u->q(side, g), right_partial(f, p).scaled(Rational(u->info(p).kappa)));
    }
    return substitute(h, images);
}

Augmentation::Augmentation(AlgElement h, AlgElement f, SideId side) : f_(std::move(f)), side_(side)
{
    const Universe& u = f_.universe();
    for (const auto& [m, c] : f_.terms()) {
        for (const auto& pw : m.powers()) {
            if (u.is_q(pw.var) || (u.is_p(pw.var) && u.info(pw.var).side != side)) {
                throw Error(ErrorCode::NotAugmentation, "augmentations are power series in the p-variables of one end");
            }
        }
    }
    if (!f_.is_zero()) {
        auto d = f_.degree();
        if (!d || *d != 2 * u.N()) throw Error(ErrorCode::DegreeMismatch, "augmentations have degree 2N");
    }
    if (!f_.in_overline(side)) throw Error(ErrorCode::NotAugmentation, "f|_{p=0} must vanish");
    if (!restrict_to_augmentation(h, f_, side).is_zero()) throw Error(ErrorCode::NotAugmentation, "h|_{L_f} != 0");
}

AlgElement augmentation_twist(const AlgElement& h, const Augmentation& f)
{
    const UniversePtr& u = h.universe_ptr();
    const SideId side = f.side();
    std::map<VarId, AlgElement> images;
    for (std::size_t g = 0; g < u->table(side).size(); ++g) {
        const VarId p = u->p(side, g);
        const VarId q = u->q(side, g);
        images.emplace(q, AlgElement::variable(u, q) + right_partial(f.element(), p).scaled(Rational(u->info(p).kappa)));
    }
    return substitute(h, images).with_space(h.space());
}

AlgElement augmentation_twist_series(const AlgElement& h, const Augmentation& f)
{
    const AlgElement g = f.element().with_space(Space::Any);
    AlgElement term = h.with_space(Space::Any);
    AlgElement sum = term;
    // every bracket with f consumes one q-letter of h, so the series is finite
    for (long n = 1; !term.is_zero(); ++n) {
        term = bracket_bilinear(g, term).scaled(Rational(1, n));
        sum += term;
    }
    return sum.with_space(h.space());
}

LinearizedMorphism::LinearizedMorphism(const Potential& f, const AlgElement& h_plus, const AlgElement& h_minus)
    : f1_(f)
{
    require_hat(h_plus, f.source());
    require_hat(h_minus, f.target());
    if (!f.in_hat()) throw Error(ErrorCode::NotHat, "f|_{p=0} and f|_{q=0} must both vanish");
    if (!check_chain_map(f, h_plus, h_minus)) throw Error(ErrorCode::NotChainMap, "h-|L_f != h+|L_f");
    f1_ = Potential(linear_part(f.element(), f.target()), f.source(), f.target());
}

TensorWord LinearizedMorphism::apply(const TensorWord& letters) const
{
    if (!is_letter_word(letters)) throw Error(ErrorCode::InvalidArgument, "linearized maps act on words of letters");
    return apply_morphism(f1_, letters);
}

TensorWord linearized_coderivation(const AlgElement& h, const TensorWord& letters, std::optional<SideId> side)
{
    require_hat(h, side);
    if (!is_letter_word(letters)) throw Error(ErrorCode::InvalidArgument, "linearized maps act on words of letters");
    return coderivation(linear_part(h, side), letters, side);
}

AlgElement augmented_mc_linear_part(const AlgElement& h, const Augmentation& f, const AlgElement& a, SideId target,
                                    const EnergyCutoff& energy)
{
    const UniversePtr& u = h.universe_ptr();
    const SideId source = f.side();
    if (!u->same_table(source, target)) throw Error(ErrorCode::ContextMismatch, "ends carry different tables");
    const std::map<SideId, SideId> there{{source, target}};
    Potential i_f(identity_potential(u, source, target) + f.element(), source, target);
    AlgElement h_f = augmentation_twist(h, f).rename_sides(there);
    AlgElement push = pushforward_mc(i_f, a, h, h_f, energy);
    return linear_part(push, target).rename_sides({{target, source}});
}

} // namespace rsft
