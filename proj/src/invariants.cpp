#include "rsft/invariants.hpp"

#include "rsft/error.hpp"
#include "rsft/linearize.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace rsft {

namespace {

/// Coordinate of the linearized problem: zone (0 sorts first), basis word and
/// Novikov exponent.
using Coord = std::tuple<int, WordKey, Rational>;
using Basis = EchelonBasis<Coord>;
using Vector = Basis::Vector;

struct Column {
    WordKey word;
    Rational exponent;
};

std::vector<VarId> q_vars(const Universe& u, std::optional<SideId> side)
{
    std::vector<VarId> out;
    for (SideId s = 0; s < u.side_count(); ++s) {
        if (side && *side != s) continue;
        for (std::size_t g = 0; g < u.table(s).size(); ++g) out.push_back(u.q(s, g));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Monomials in `vars` with at most qlen letters, 1 included, in canonical order.
std::vector<Monomial> all_monomials(const Universe& u, const std::vector<VarId>& vars, std::size_t qlen)
{
    std::vector<Monomial> out;
    std::vector<Power> powers;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
        out.emplace_back(powers);
        for (std::size_t i = from; i < vars.size(); ++i) {
            const std::uint32_t cap = u.odd(vars[i]) ? 1u : static_cast<std::uint32_t>(left);
            for (std::uint32_t e = 1; e <= cap && e <= left; ++e) {
                powers.push_back({vars[i], e});
                rec(i + 1, left - e);
                powers.pop_back();
            }
        }
    };
    rec(0, qlen);
    std::sort(out.begin(), out.end());
    return out;
}

/// Words of exactly `length` factors.
std::vector<WordKey> words_of_length(const UniversePtr& u, std::optional<SideId> side, std::size_t length,
                                     std::size_t qlen, int degree, bool letters_only)
{
    const auto vars = q_vars(*u, side);
    std::vector<Monomial> monos;
    if (letters_only) {
        for (VarId v : vars) monos.push_back(Monomial::var(v));
    } else {
        monos = all_monomials(*u, vars, qlen);
    }
    const int shift = 2 * u->N();
    int dmin = 0;
    int dmax = 0;
    for (VarId v : vars) {
        dmin = std::min(dmin, u->degree(v));
        dmax = std::max(dmax, u->degree(v));
    }
    std::vector<int> mdeg;
    std::vector<std::size_t> mlen;
    for (const auto& m : monos) {
        mdeg.push_back(rsft::degree(*u, m) - shift);
        mlen.push_back(m.total_degree());
    }
    std::set<WordKey> out;
    std::vector<Monomial> pick;
    std::function<void(std::size_t, std::size_t, int)> rec = [&](std::size_t from, std::size_t letters, int deg) {
        const std::size_t left = length - pick.size();
        if (left == 0) {
            if (deg != degree) return;
            auto sw = normalize_word(*u, Monomial(), pick);
            if (sw) out.insert(sw->key);
            return;
        }
        const long budget = static_cast<long>(qlen - letters);
        const long need = degree - deg + static_cast<long>(shift) * static_cast<long>(left);
        if (need < budget * std::min(dmin, 0) || need > budget * std::max(dmax, 0)) return;
        for (std::size_t i = from; i < monos.size(); ++i) {
            if (letters + mlen[i] > qlen) continue;
            pick.push_back(monos[i]);
            rec(i, letters + mlen[i], deg + mdeg[i]);
            pick.pop_back();
        }
    };
    rec(0, 0, 0);
    return {out.begin(), out.end()};
}

void collect_exponents(const AlgElement& x, std::set<Rational>& out)
{
    for (const auto& [m, c] : x.terms()) {
        for (const auto& t : c.terms()) {
            if (t.exponent > 0) out.insert(t.exponent);
        }
    }
}

/// Exponents below `level` reachable as sums of the positive exponents of
/// the operators; {0} for rational operators.
std::vector<Rational> exponent_monoid(const std::vector<const AlgElement*>& ops, const EnergyCutoff& level)
{
    std::set<Rational> gens;
    for (const auto* x : ops) collect_exponents(*x, gens);
    if (gens.empty()) return {Rational(0)};
    if (!level) throw Error(ErrorCode::InvalidArgument, "Novikov coefficients need an energy level");
    if (*level <= 0) throw Error(ErrorCode::InvalidArgument, "energy levels must be positive");
    std::set<Rational> seen{Rational(0)};
    std::vector<Rational> queue{Rational(0)};
    while (!queue.empty()) {
        Rational s = queue.back();
        queue.pop_back();
        for (const auto& g : gens) {
            Rational t = s + g;
            if (t < *level && seen.insert(t).second) queue.push_back(t);
        }
    }
    return {seen.begin(), seen.end()};
}

TensorWord basis_word(const UniversePtr& u, const WordKey& k, const EnergyCutoff& level)
{
    TensorWord w(u, level);
    w.add_normalized(k, Scalar(1));
    return w;
}

/// Adds image * L^shift to v, dropping exponents at or above the level.
void accumulate(Vector& v, const TensorWord& image, const Rational& shift, const EnergyCutoff& level,
                const std::function<int(const WordKey&)>& zone)
{
    for (const auto& [k, c] : image.terms()) {
        for (const auto& t : c.terms()) {
            Rational e = t.exponent + shift;
            if (level && e >= *level) continue;
            Rational& x = v[Coord{zone(k), k, e}];
            x += t.coeff;
            if (x == 0) v.erase(Coord{zone(k), k, e});
        }
    }
}

TensorWord combination_word(const UniversePtr& u, const std::vector<Column>& cols, const Basis::Combination& comb,
                            const EnergyCutoff& level)
{
    TensorWord w(u, level);
    for (const auto& [id, c] : comb) w.add_normalized(cols[id].word, Scalar::monomial(c, cols[id].exponent));
    return w;
}

TensorWord truncate(const TensorWord& w, const EnergyCutoff& level)
{
    TensorWord out(w.universe_ptr(), level);
    for (const auto& [k, c] : w.terms()) {
        Scalar s = c.truncated(level);
        if (!s.is_zero()) out.add_normalized(k, s);
    }
    return out;
}

int zero_zone(const WordKey&) { return 0; }

WordKey one_l_key() { return WordKey{Monomial(), {Monomial()}}; }

Scalar pi(const TensorWord& w) { return w.one_l_coefficient(); }

bool is_rational_element(const AlgElement& x)
{
    for (const auto& [m, c] : x.terms()) {
        if (!c.is_rational()) return false;
    }
    return true;
}

void require_master(const AlgElement& h)
{
    if (!check_master(h)) throw Error(ErrorCode::MasterEquationFails, "{h,h} != 0");
}

enum class Target { Full, Projected };

SearchResult torsion_search(const AlgElement& h, const SearchBounds& b, std::optional<SideId> side,
                            const EnergyCutoff& level, Target target, bool letters_only)
{
    validate_bounds(b);
    require_master(h);
    if (!h.in_overline(side)) throw Error(ErrorCode::NotOverline, "h|_{p=0} must vanish");
    const UniversePtr& u = h.universe_ptr();
    const auto exps = exponent_monoid({&h}, level);
    const AlgElement hl = h.with_truncation({Truncation::kUnbounded, level});
    const int degree = 1 - 2 * u->N();
    const Coord one{0, one_l_key(), Rational(0)};

    Basis basis;
    std::vector<Column> cols;
    SearchResult r;
    r.level = level;
    for (std::size_t k = 1; k <= b.k_max; ++k) {
        r.k_searched = k;
        for (const auto& w : words_of_length(u, side, k, b.qlen_max, degree, letters_only)) {
            TensorWord image = coderivation(hl, basis_word(u, w, level), side);
            if (target == Target::Projected) {
                image = image.filter([](const WordKey& key) { return key == one_l_key(); });
            }
            for (const auto& e : exps) {
                Vector v;
                accumulate(v, image, e, level, zero_zone);
                cols.push_back({w, e});
                basis.add(cols.size() - 1, std::move(v));
            }
        }
        auto sol = basis.solve(Vector{{one, Rational(1)}});
        if (!sol) continue;
        TensorWord cert = combination_word(u, cols, *sol, level);
        TensorWord check = truncate(coderivation(hl, cert, side), level);
        if (target == Target::Full) {
            r.verified = check == TensorWord::one_l(u, level);
        } else {
            r.verified = pi(check) == Scalar(1);
        }
        if (!r.verified) throw Error(ErrorCode::InvalidArgument, "internal: torsion certificate does not re-verify");
        r.status = SearchStatus::Found;
        r.value = static_cast<long>(k) - 1;
        r.certificate = cert;
        return r;
    }
    return r;
}

std::size_t source_contractions(const AlgElement& x, SideId side)
{
    return static_cast<std::size_t>(std::max(0, x.max_q_degree(side)));
}

std::size_t target_contractions(const AlgElement& x, SideId side)
{
    return static_cast<std::size_t>(std::max(0, x.max_p_degree(side)));
}

/// D- passes g before reaching e^f, which costs (-1)^{|g|}.
int homotopy_sign(const AlgElement& g)
{
    if (g.is_zero()) return 1;
    return (*g.degree() & 1) != 0 ? -1 : 1;
}

} // namespace

void validate_bounds(const SearchBounds& b)
{
    if (b.k_max == 0 || b.qlen_max == 0) throw Error(ErrorCode::InvalidArgument, "kmax and qlen-max must be positive");
    for (const auto& e : b.energy_levels) {
        if (e <= 0) throw Error(ErrorCode::InvalidArgument, "energy levels must be positive");
    }
}

std::vector<WordKey> bounded_words(const UniversePtr& u, std::optional<SideId> side, std::size_t k, std::size_t qlen,
                                   int degree, bool letters_only)
{
    std::vector<WordKey> out;
    for (std::size_t len = 1; len <= k; ++len) {
        auto part = words_of_length(u, side, len, qlen, degree, letters_only);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<Monomial> bounded_monomials(const UniversePtr& u, std::optional<SideId> side, std::size_t qlen, int degree)
{
    std::vector<Monomial> out;
    for (const auto& m : all_monomials(*u, q_vars(*u, side), qlen)) {
        if (rsft::degree(*u, m) == degree) out.push_back(m);
    }
    return out;
}

SearchResult torsion(const AlgElement& h, const SearchBounds& b, std::optional<SideId> side, EnergyCutoff level)
{
    return torsion_search(h, b, side, level, Target::Full, false);
}

SearchResult torsion_tilde(const AlgElement& h, const SearchBounds& b, std::optional<SideId> side, EnergyCutoff level,
                           bool letters_only)
{
    return torsion_search(h, b, side, level, Target::Projected, letters_only);
}

std::vector<SearchResult> torsion_by_level(const AlgElement& h, const SearchBounds& b, std::optional<SideId> side)
{
    std::vector<SearchResult> out;
    for (const auto& e : b.energy_levels) out.push_back(torsion(h, b, side, e));
    return out;
}

namespace {

void require_order_inputs(const AlgElement& h, const AlgElement& g, std::optional<SideId> side)
{
    if (!check_hat(h, side)) throw Error(ErrorCode::NotHat, "order needs h|_{p=0} = 0 = h|_{q=0}");
    require_master(h);
    if (!is_rational_element(h) || !is_rational_element(g)) {
        throw Error(ErrorCode::InvalidArgument, "order is defined over the rationals");
    }
    if (!g.is_zero() && !g.degree()) throw Error(ErrorCode::InhomogeneousInput, "g must be homogeneous");
    if (!g.in_overline(side)) throw Error(ErrorCode::NotOverline, "g|_{p=0} must vanish");
    if (!bracket(h, g).is_zero()) throw Error(ErrorCode::BracketNotZero, "{h,g} != 0");
}

int order_degree(const AlgElement& g) { return g.is_zero() ? 0 : -*g.degree(); }

} // namespace

SearchResult order(const AlgElement& h, const AlgElement& g, const SearchBounds& b, std::optional<SideId> side)
{
    validate_bounds(b);
    require_order_inputs(h, g, side);
    const UniversePtr& u = h.universe_ptr();
    SearchResult r;
    if (g.is_zero()) {
        r.k_searched = b.k_max;
        return r;
    }
    const int degree = order_degree(g);
    Basis basis;
    std::vector<Column> cols;
    std::vector<Rational> values; // pi(D_g(column))
    for (std::size_t k = 1; k <= b.k_max; ++k) {
        r.k_searched = k;
        for (const auto& w : words_of_length(u, side, k, b.qlen_max, degree, false)) {
            TensorWord word = basis_word(u, w, {});
            Vector v;
            accumulate(v, coderivation(h, word, side), Rational(0), {}, zero_zone);
            cols.push_back({w, Rational(0)});
            values.push_back(pi(coderivation(g, word, side)).constant_term());
            auto kernel = basis.add(cols.size() - 1, std::move(v));
            if (!kernel) continue;
            Rational value = 0;
            for (const auto& [id, c] : *kernel) value += c * values[id];
            if (value == 0) continue;
            Basis::Combination scaled;
            for (const auto& [id, c] : *kernel) scaled[id] = c / value;
            TensorWord cert = combination_word(u, cols, scaled, {});
            r.verified = coderivation(h, cert, side).is_zero() && pi(coderivation(g, cert, side)) == Scalar(1);
            if (!r.verified) throw Error(ErrorCode::InvalidArgument, "internal: order certificate does not re-verify");
            r.status = SearchStatus::Found;
            r.value = static_cast<long>(k);
            r.certificate = cert;
            return r;
        }
    }
    return r;
}

bool order_kills_boundaries(const AlgElement& h, const AlgElement& g, const SearchBounds& b,
                            std::optional<SideId> side)
{
    validate_bounds(b);
    require_order_inputs(h, g, side);
    if (g.is_zero()) return true;
    const UniversePtr& u = h.universe_ptr();
    for (const auto& w : bounded_words(u, side, b.k_max, b.qlen_max, order_degree(g) + 1)) {
        TensorWord boundary = coderivation(h, basis_word(u, w, {}), side);
        if (!pi(coderivation(g, boundary, side)).is_zero()) return false;
    }
    return true;
}

bool check_order_homotopy(const Potential& f, const AlgElement& g, const AlgElement& h_plus, const AlgElement& h_minus,
                          const AlgElement& g_plus, const AlgElement& g_minus, std::size_t max_length)
{
    const SideId src = f.source();
    const SideId tgt = f.target();
    if (!check_chain_map(f, h_plus, h_minus)) throw Error(ErrorCode::NotChainMap, "h-|L_f != h+|L_f");
    if (!bracket(h_plus, g_plus).is_zero() || !bracket(h_minus, g_minus).is_zero()) {
        throw Error(ErrorCode::BracketNotZero, "{h,g} != 0 on an end");
    }
    std::optional<int> d;
    for (const auto* x : {&g_plus, &g_minus}) {
        if (x->is_zero()) continue;
        auto dx = x->degree();
        if (!dx || (d && *d != *dx)) throw Error(ErrorCode::DegreeMismatch, "g+ and g- need one common degree");
        d = dx;
    }
    if (!g.is_zero()) {
        auto dg = g.degree();
        if (!dg || (d && *dg != *d + 1)) throw Error(ErrorCode::DegreeMismatch, "the homotopy has degree |g+| + 1");
    }
    const UniversePtr& u = f.universe_ptr();
    const TensorWord e = TensorWord::exp(f.element().with_space(Space::Any), max_length);
    const TensorWord gw = g.is_zero() ? TensorWord(u) : TensorWord::word(g.with_space(Space::Any));
    TensorWord lhs = right_action(g_minus, e, tgt) - left_action(g_plus, e, src);
    TensorWord rhs = left_action(h_plus, odot(e, gw), src) -
                     right_action(h_minus, odot(gw, e), tgt).scaled(homotopy_sign(g));
    std::size_t reach = std::max<std::size_t>({1, target_contractions(g_minus, tgt), source_contractions(g_plus, src),
                                               source_contractions(h_plus, src), target_contractions(h_minus, tgt)});
    if (max_length + 1 < reach) throw Error(ErrorCode::CutoffExceeded, "word-length cutoff below the contraction count");
    return (lhs - rhs).length_at_most(max_length + 1 - reach).is_zero();
}

MonotonicityReport monotonicity(const Potential& f, const AlgElement& h_plus, const AlgElement& h_minus,
                                const SearchBounds& b, const std::optional<OrderData>& order_data)
{
    const SideId src = f.source();
    const SideId tgt = f.target();
    if (!check_chain_map(f, h_plus, h_minus)) throw Error(ErrorCode::NotChainMap, "h-|L_f != h+|L_f");
    const UniversePtr& u = f.universe_ptr();
    MonotonicityReport rep{torsion(h_plus, b, src),  torsion(h_minus, b, tgt), torsion_tilde(h_plus, b, src),
                           torsion_tilde(h_minus, b, tgt), {}, false, true, {}, {}, {}, {}, false, true};
    const TensorWord one = TensorWord::one_l(u);
    if (rep.torsion_plus.status == SearchStatus::Found) {
        rep.transported = apply_morphism(f, *rep.torsion_plus.certificate);
        rep.transported_verifies = coderivation(h_minus, *rep.transported, tgt) == one;
        const bool decided = rep.torsion_minus.status == SearchStatus::Found &&
                             rep.torsion_minus.value <= rep.torsion_plus.value;
        rep.torsion_monotone = decided || rep.transported_verifies;
    }
    if (!order_data) return rep;

    const auto& od = *order_data;
    if (!check_order_homotopy(f, od.g, h_plus, h_minus, od.g_plus, od.g_minus, std::max<std::size_t>(b.k_max, 3))) {
        throw Error(ErrorCode::NotChainMap, "the homotopy identity for g fails");
    }
    rep.order_plus = order(h_plus, od.g_plus, b, src);
    rep.order_minus = order(h_minus, od.g_minus, b, tgt);
    if (rep.order_plus->status != SearchStatus::Found) return rep;

    const TensorWord& a = *rep.order_plus->certificate;
    rep.order_transported = apply_morphism(f, a);
    const std::size_t len = q_length(a, src) +
                            std::max(source_contractions(od.g_plus, src), source_contractions(h_plus, src)) + 1;
    const TensorWord e = TensorWord::exp(f.element().with_space(Space::Any), len, false);
    const TensorWord gw = od.g.is_zero() ? TensorWord(u) : TensorWord::word(od.g.with_space(Space::Any));
    auto at_zero = [&](const TensorWord& x) { return pi(x.restrict_p_zero(src)); };

    const TensorWord dg_a = coderivation(od.g_plus, a, src);
    std::vector<Scalar>& v = rep.proof_chain;
    v.push_back(pi(coderivation(od.g_minus, *rep.order_transported, tgt)));
    v.push_back(at_zero(act_by_word(right_action(od.g_minus, e, tgt), a, src)));
    const int sign = homotopy_sign(od.g);
    TensorWord three = left_action(od.g_plus, e, src) + left_action(h_plus, odot(e, gw), src) -
                       right_action(h_minus, odot(gw, e), tgt).scaled(sign);
    v.push_back(at_zero(act_by_word(three, a, src)));
    TensorWord four = act_by_word(e, dg_a, src) + act_by_word(odot(e, gw), coderivation(h_plus, a, src), src) -
                      right_action(h_minus, act_by_word(odot(gw, e), a, src), tgt).scaled(sign);
    v.push_back(at_zero(four));
    v.push_back(pi(apply_morphism(f, dg_a)));
    v.push_back(pi(apply_morphism(f, one.scaled(pi(dg_a)))));
    v.push_back(pi(apply_morphism(f, one)));
    rep.proof_chain_holds = std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s == Scalar(1); });

    const bool cycle = coderivation(h_minus, *rep.order_transported, tgt).is_zero();
    const bool decided = rep.order_minus->status == SearchStatus::Found && rep.order_minus->value <= rep.order_plus->value;
    rep.order_monotone = decided || (cycle && v.front() == Scalar(1));
    return rep;
}

HomologyReport homology_window(const AlgElement& h, ComplexKind kind, const HomologyBounds& b,
                               std::optional<SideId> side)
{
    if (b.degree_lo > b.degree_hi) throw Error(ErrorCode::InvalidArgument, "empty degree window");
    if (b.qlen_max == 0 || b.k_max == 0) throw Error(ErrorCode::InvalidArgument, "bounds must be positive");
    require_master(h);
    const UniversePtr& u = h.universe_ptr();
    const auto exps = exponent_monoid({&h}, b.level);
    const AlgElement hl = h.with_truncation({Truncation::kUnbounded, b.level});
    const AlgElement h1 = hl.p_part(1, side);

    auto letters = [&](const WordKey& k) {
        std::size_t n = 0;
        for (const auto& m : k.factors) n += q_degree(*u, m, side);
        return n;
    };
    auto inside = [&](const WordKey& k) {
        return letters(k) <= b.qlen_max && (kind == ComplexKind::Algebra || k.factors.size() <= b.k_max);
    };
    auto zone = [&](const WordKey& k) { return inside(k) ? 1 : 0; };
    auto chains = [&](int degree, std::size_t qlen) {
        std::vector<WordKey> out;
        if (kind == ComplexKind::Algebra) {
            for (const auto& m : bounded_monomials(u, side, qlen, degree)) out.push_back(WordKey{Monomial(), {m}});
        } else {
            out = bounded_words(u, side, b.k_max, qlen, degree);
        }
        return out;
    };
    auto differential = [&](const WordKey& k) {
        if (kind == ComplexKind::Algebra) {
            AlgElement x = AlgElement::term(u, k.factors[0], Scalar(1), Space::Any, {Truncation::kUnbounded, b.level});
            AlgElement dx = bracket_bilinear(h1, x);
            TensorWord out(u, b.level);
            for (const auto& [m, c] : dx.terms()) out.add_normalized(WordKey{Monomial(), {m}}, c);
            return out;
        }
        return coderivation(hl, basis_word(u, k, b.level), side);
    };

    HomologyReport rep;
    for (int n = b.degree_lo; n <= b.degree_hi; ++n) {
        BettiNumber bn{n, 0, 0, 0, 0};
        Basis cycles;
        std::size_t id = 0;
        for (const auto& k : chains(n, b.qlen_max)) {
            TensorWord d = differential(k);
            for (const auto& [key, c] : d.terms()) rep.closed = rep.closed && inside(key);
            for (const auto& e : exps) {
                Vector v;
                accumulate(v, d, e, b.level, zone);
                if (cycles.add(id++, std::move(v))) ++bn.cycles;
                ++bn.chains;
            }
        }
        Basis bounds;
        id = 0;
        for (const auto& k : chains(n + 1, b.qlen_max + 1)) {
            TensorWord d = differential(k);
            for (const auto& e : exps) {
                Vector v;
                accumulate(v, d, e, b.level, zone);
                bounds.add(id++, std::move(v));
            }
        }
        bn.boundaries = bounds.count_pivots([](const Coord& c) { return std::get<0>(c) == 1; });
        bn.betti = bn.cycles - bn.boundaries;
        rep.betti.push_back(bn);
    }
    return rep;
}

} // namespace rsft
