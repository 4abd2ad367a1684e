#include "rsft/element.hpp"

#include "rsft/error.hpp"

#include <algorithm>
#include <sstream>

namespace rsft {

const char* space_name(Space s)
{
    switch (s) {
    case Space::Any: return "any";
    case Space::Algebra: return "algebra";
    case Space::Hamiltonian: return "hamiltonian";
    case Space::Potential: return "potential";
    case Space::Augmentation: return "augmentation";
    }
    return "?";
}

Truncation Truncation::meet(const Truncation& a, const Truncation& b)
{
    return {std::min(a.pmax, b.pmax), min_cutoff(a.energy, b.energy)};
}

Space join_spaces(Space a, Space b)
{
    if (a == b || b == Space::Any) return a;
    if (a == Space::Any) return b;
    auto ordered = [&](Space lo, Space hi) { return (a == lo && b == hi) || (a == hi && b == lo); };
    if (ordered(Space::Algebra, Space::Hamiltonian)) return Space::Hamiltonian;
    if (ordered(Space::Algebra, Space::Potential)) return Space::Potential;
    if (ordered(Space::Algebra, Space::Augmentation)) return Space::Potential;
    if (ordered(Space::Augmentation, Space::Potential)) return Space::Potential;
    throw Error(ErrorCode::ContextMismatch,
                std::string("cannot combine ") + space_name(a) + " and " + space_name(b) + " elements");
}

AlgElement::AlgElement(UniversePtr u, Space space, Truncation trunc)
    : u_(std::move(u)), space_(space), trunc_(std::move(trunc))
{
    if (!u_) throw Error(ErrorCode::InvalidArgument, "element without universe");
}

AlgElement AlgElement::constant(UniversePtr u, const Scalar& c, Space space, Truncation trunc)
{
    AlgElement x(std::move(u), space, std::move(trunc));
    x.add_term(Monomial(), c);
    return x;
}

AlgElement AlgElement::variable(UniversePtr u, VarId v, Space space, Truncation trunc)
{
    return term(std::move(u), Monomial::var(v), Scalar(1), space, std::move(trunc));
}

AlgElement AlgElement::term(UniversePtr u, const Monomial& m, const Scalar& c, Space space, Truncation trunc)
{
    AlgElement x(std::move(u), space, std::move(trunc));
    x.add_term(m, c);
    return x;
}

AlgElement AlgElement::with_space(Space s) const
{
    AlgElement x = *this;
    x.space_ = s;
    return x;
}

AlgElement AlgElement::with_truncation(const Truncation& t) const
{
    AlgElement x(u_, space_, t);
    x.truncated_ = truncated_;
    for (const auto& [m, c] : terms_) x.add_term(m, c);
    return x;
}

void AlgElement::add_term(const Monomial& m, const Scalar& c)
{
    if (c.is_zero()) return;
    if (trunc_.pmax != Truncation::kUnbounded && p_degree(*u_, m) > static_cast<std::uint32_t>(trunc_.pmax)) {
        truncated_ = true;
        return;
    }
    Scalar cc = c.truncated(trunc_.energy);
    if (cc.terms().size() != c.terms().size()) truncated_ = true;
    if (cc.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, cc);
    if (!inserted) {
        it->second += cc;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void AlgElement::require_compatible(const AlgElement& other, const char* op) const
{
    if (u_.get() != other.u_.get()) {
        throw Error(ErrorCode::ContextMismatch, std::string(op) + " of elements over different variable sets");
    }
}

AlgElement AlgElement::operator-() const
{
    AlgElement x = *this;
    for (auto& [m, c] : x.terms_) c = -c;
    return x;
}

AlgElement& AlgElement::operator+=(const AlgElement& other)
{
    require_compatible(other, "sum");
    space_ = join_spaces(space_, other.space_);
    Truncation t = Truncation::meet(trunc_, other.trunc_);
    if (!(t == trunc_)) *this = with_truncation(t);
    truncated_ = truncated_ || other.truncated_;
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& other) { return *this += -other; }

AlgElement operator*(const AlgElement& a, const AlgElement& b)
{
    a.require_compatible(b, "product");
    AlgElement out(a.u_, join_spaces(a.space_, b.space_), Truncation::meet(a.trunc_, b.trunc_));
    out.truncated_ = a.truncated_ || b.truncated_;
    const Universe& u = *a.u_;
    const int pmax = out.trunc_.pmax;
    for (const auto& [ma, ca] : a.terms_) {
        const std::uint32_t pa = p_degree(u, ma);
        for (const auto& [mb, cb] : b.terms_) {
            if (pmax != Truncation::kUnbounded && pa + p_degree(u, mb) > static_cast<std::uint32_t>(pmax)) {
                out.truncated_ = true;
                continue;
            }
            auto prod = multiply(u, ma, mb);
            if (!prod) continue;
            Scalar c = Scalar::mul(ca, cb, out.trunc_.energy);
            if (c.is_zero()) {
                out.truncated_ = true;
                continue;
            }
            out.add_term(prod->mono, prod->sign < 0 ? -c : c);
        }
    }
    return out;
}

AlgElement AlgElement::scaled(const Scalar& c) const
{
    AlgElement x(u_, space_, trunc_);
    x.truncated_ = truncated_;
    for (const auto& [m, v] : terms_) {
        Scalar s = Scalar::mul(v, c, trunc_.energy);
        x.add_term(m, s);
    }
    return x;
}

std::optional<int> AlgElement::degree() const
{
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int dm = rsft::degree(*u_, m);
        if (d && *d != dm) return std::nullopt;
        d = dm;
    }
    return d;
}

bool AlgElement::is_homogeneous() const { return is_zero() || degree().has_value(); }

int AlgElement::parity() const
{
    if (is_zero()) return 0;
    auto d = degree();
    if (!d) throw Error(ErrorCode::InhomogeneousInput, "parity of an inhomogeneous element");
    return *d & 1;
}

bool AlgElement::in_overline(std::optional<SideId> side) const
{
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return p_degree(*u_, t.first, side) > 0; });
}

bool AlgElement::in_underline(std::optional<SideId> side) const
{
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return q_degree(*u_, t.first, side) > 0; });
}

int AlgElement::max_p_degree(std::optional<SideId> side) const
{
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(p_degree(*u_, m, side)));
    return d;
}

int AlgElement::max_q_degree(std::optional<SideId> side) const
{
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(q_degree(*u_, m, side)));
    return d;
}

std::optional<Rational> AlgElement::filtration_level() const
{
    std::optional<Rational> level;
    for (const auto& [m, c] : terms_) {
        auto v = c.valuation();
        if (v && (!level || *v < *level)) level = v;
    }
    return level;
}

bool AlgElement::has_novikov() const
{
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return !t.second.is_rational(); });
}

AlgElement AlgElement::filter(const std::function<bool(const Monomial&)>& keep) const
{
    AlgElement x(u_, space_, trunc_);
    x.truncated_ = truncated_;
    for (const auto& [m, c] : terms_) {
        if (keep(m)) x.terms_.emplace(m, c);
    }
    return x;
}

AlgElement AlgElement::extract_bidegree(int r, int s, std::optional<SideId> side) const
{
    return filter([&](const Monomial& m) {
        return static_cast<int>(p_degree(*u_, m, side)) == r && static_cast<int>(q_degree(*u_, m, side)) == s;
    });
}

AlgElement AlgElement::p_part(int r, std::optional<SideId> side) const
{
    return filter([&](const Monomial& m) { return static_cast<int>(p_degree(*u_, m, side)) == r; });
}

AlgElement AlgElement::q_part(int s, std::optional<SideId> side) const
{
    return filter([&](const Monomial& m) { return static_cast<int>(q_degree(*u_, m, side)) == s; });
}

AlgElement AlgElement::restrict_p_zero(std::optional<SideId> side) const { return p_part(0, side); }

AlgElement AlgElement::restrict_q_zero(std::optional<SideId> side) const { return q_part(0, side); }

AlgElement AlgElement::t_coefficient(const Monomial& t_mono) const
{
    AlgElement x(u_, space_, trunc_);
    x.truncated_ = truncated_;
    for (const auto& [m, c] : terms_) {
        TSplit sp = split_t_left(*u_, m);
        if (sp.t_part == t_mono) x.add_term(sp.rest, sp.sign < 0 ? -c : c);
    }
    return x;
}

AlgElement AlgElement::rename_sides(const std::map<SideId, SideId>& mapping) const
{
    const Universe& u = *u_;
    for (const auto& [from, to] : mapping) {
        if (from >= u.side_count() || to >= u.side_count() || !u.same_table(from, to)) {
            throw Error(ErrorCode::ContextMismatch, "side renaming between different generator tables");
        }
    }
    AlgElement x(u_, space_, trunc_);
    x.truncated_ = truncated_;
    for (const auto& [m, c] : terms_) {
        // Rebuild the monomial letter by letter so that the Koszul sign of the
        // new canonical order is accounted for.
        SignedMonomial acc{1, Monomial()};
        for (const auto& pw : m.powers()) {
            VarId v = pw.var;
            const VarInfo& info = u.info(v);
            if (info.kind != VarKind::T) {
                auto it = mapping.find(info.side);
                if (it != mapping.end()) {
                    v = info.kind == VarKind::Q ? u.q(it->second, info.index) : u.p(it->second, info.index);
                }
            }
            auto prod = multiply(u, acc.mono, Monomial::var(v, pw.exp));
            if (!prod) {
                acc.sign = 0;
                break;
            }
            acc.sign *= prod->sign;
            acc.mono = std::move(prod->mono);
        }
        if (acc.sign != 0) x.add_term(acc.mono, acc.sign < 0 ? -c : c);
    }
    return x;
}

namespace {

void append_scalar_factor(std::ostringstream& os, const Scalar& mag, bool monomial_is_one, bool& need_star)
{
    // mag is a single-term scalar with positive coefficient
    const auto& t = mag.terms().front();
    bool has_l = t.exponent != 0;
    if (t.coeff != 1 || (monomial_is_one && !has_l)) {
        os << rational_str(t.coeff);
        need_star = true;
    }
    if (has_l) {
        if (need_star) os << '*';
        os << "L^" << rational_str(t.exponent);
        need_star = true;
    }
}

} // namespace

std::string AlgElement::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        bool need_star = false;
        if (c.terms().size() == 1) {
            bool neg = c.terms().front().coeff < 0;
            if (first) {
                if (neg) os << '-';
            } else {
                os << (neg ? " - " : " + ");
            }
            append_scalar_factor(os, neg ? -c : c, m.is_one(), need_star);
        } else {
            if (!first) os << " + ";
            os << '(' << c.str() << ')';
            need_star = true;
        }
        for (const auto& pw : m.powers()) {
            if (need_star) os << '*';
            os << u_->var_name(pw.var);
            if (pw.exp != 1) os << '^' << pw.exp;
            need_star = true;
        }
        first = false;
    }
    return os.str();
}

namespace {

AlgElement partial_impl(const AlgElement& x, VarId v, bool left)
{
    AlgElement out(x.universe_ptr(), x.space(), x.truncation());
    for (const auto& [m, c] : x.terms()) {
        auto d = left ? left_derivative(x.universe(), m, v) : right_derivative(x.universe(), m, v);
        if (d) out.add_term(d->mono, c.scaled(Rational(d->coeff)));
    }
    return out;
}

} // namespace

AlgElement left_partial(const AlgElement& x, VarId v) { return partial_impl(x, v, true); }

AlgElement right_partial(const AlgElement& x, VarId v) { return partial_impl(x, v, false); }

namespace {

Space bracket_space(Space a, Space b)
{
    auto potential_like = [](Space s) { return s == Space::Potential || s == Space::Augmentation; };
    if (potential_like(a) || potential_like(b)) return Space::Potential;
    if (a == Space::Hamiltonian || b == Space::Hamiltonian) return Space::Hamiltonian;
    if (a == Space::Algebra || b == Space::Algebra) return Space::Algebra;
    return Space::Any;
}

} // namespace

AlgElement bracket_bilinear(const AlgElement& f, const AlgElement& g)
{
    if (f.universe_ptr().get() != g.universe_ptr().get()) {
        throw Error(ErrorCode::ContextMismatch, "bracket of elements over different variable sets");
    }
    const Universe& u = f.universe();
    AlgElement out(f.universe_ptr(), bracket_space(f.space(), g.space()),
                   Truncation::meet(f.truncation(), g.truncation()));
    bool truncated = f.truncation_active() || g.truncation_active();
    const int pmax = out.truncation().pmax;
    for (const auto& [mf, cf] : f.terms()) {
        for (const auto& pw : mf.powers()) {
            const VarId v = pw.var;
            if (u.is_t(v)) continue;
            const VarId w = u.partner(v);
            const bool v_is_p = u.is_p(v);
            auto df = right_derivative(u, mf, v);
            const long kappa = u.info(v).kappa;
            // (f dR/dp)(dL/dq g) - (-1)^{|q|} (f dR/dq)(dL/dp g)
            long sign = v_is_p ? 1 : ((u.degree(v) & 1) ? 1 : -1);
            for (const auto& [mg, cg] : g.terms()) {
                if (mg.exponent(w) == 0) continue;
                auto dg = left_derivative(u, mg, w);
                if (pmax != Truncation::kUnbounded &&
                    p_degree(u, df->mono) + p_degree(u, dg->mono) > static_cast<std::uint32_t>(pmax)) {
                    truncated = true;
                    continue;
                }
                auto prod = multiply(u, df->mono, dg->mono);
                if (!prod) continue;
                Scalar c = Scalar::mul(cf, cg, out.truncation().energy);
                if (c.is_zero()) {
                    truncated = true;
                    continue;
                }
                long factor = sign * kappa * df->coeff * dg->coeff * prod->sign;
                out.add_term(prod->mono, c.scaled(Rational(factor)));
            }
        }
    }
    if (truncated) out.mark_truncated();
    return out;
}

AlgElement bracket(const AlgElement& f, const AlgElement& g)
{
    if (!f.is_homogeneous() || !g.is_homogeneous()) {
        throw Error(ErrorCode::InhomogeneousInput, "bracket requires homogeneous arguments");
    }
    return bracket_bilinear(f, g);
}

AlgElement substitute(const AlgElement& x, const std::map<VarId, AlgElement>& images)
{
    Truncation trunc = x.truncation();
    for (const auto& [v, img] : images) {
        if (img.universe_ptr().get() != x.universe_ptr().get()) {
            throw Error(ErrorCode::ContextMismatch, "substitution image over a different variable set");
        }
        trunc = Truncation::meet(trunc, img.truncation());
    }
    const UniversePtr& up = x.universe_ptr();
    AlgElement out(up, x.space(), trunc);
    if (x.truncation_active()) out.mark_truncated();
    std::map<Power, AlgElement> cache;
    auto image_power = [&](const Power& pw) -> const AlgElement& {
        auto it = cache.find(pw);
        if (it != cache.end()) return it->second;
        auto img = images.find(pw.var);
        AlgElement base = img != images.end() ? img->second.with_truncation(trunc).with_space(Space::Any)
                                              : AlgElement::variable(up, pw.var, Space::Any, trunc);
        AlgElement result = base;
        for (std::uint32_t i = 1; i < pw.exp; ++i) result = result * base;
        return cache.emplace(pw, std::move(result)).first->second;
    };
    for (const auto& [m, c] : x.terms()) {
        AlgElement prod = AlgElement::constant(up, c, Space::Any, trunc);
        for (const auto& pw : m.powers()) {
            prod = prod * image_power(pw);
            if (prod.is_zero()) break;
        }
        out += prod;
    }
    return out.with_space(x.space());
}

AlgElement restrict_to_lagrangian(const AlgElement& h, const AlgElement& f, SideId source, SideId target)
{
    const Universe& u = h.universe();
    std::map<VarId, AlgElement> images;
    for (std::size_t g = 0; g < u.table(target).size(); ++g) {
        const VarId q = u.q(target, g);
        images.emplace(u.p(target, g), left_partial(f, q).scaled(Rational(u.info(q).kappa)));
    }
    for (std::size_t g = 0; g < u.table(source).size(); ++g) {
        const VarId p = u.p(source, g);
        images.emplace(u.q(source, g), right_partial(f, p).scaled(Rational(u.info(p).kappa)));
    }
    return substitute(h, images).with_space(Space::Potential);
}

AlgElement identity_potential(const UniversePtr& u, SideId source, SideId target, Truncation trunc)
{
    if (!u->same_table(source, target)) {
        throw Error(ErrorCode::ContextMismatch, "identity between different generator tables");
    }
    AlgElement i(u, Space::Potential, std::move(trunc));
    for (std::size_t g = 0; g < u->table(source).size(); ++g) {
        auto prod = multiply(*u, Monomial::var(u->q(target, g)), Monomial::var(u->p(source, g)));
        Rational c(1, u->table(source)[g].kappa);
        c.canonicalize();
        i.add_term(prod->mono, Scalar(prod->sign < 0 ? Rational(-c) : c));
    }
    return i;
}

AlgElement power(const AlgElement& x, unsigned n)
{
    AlgElement r = AlgElement::constant(x.universe_ptr(), Scalar(1), x.space(), x.truncation());
    for (unsigned i = 0; i < n; ++i) r = r * x;
    return r;
}

} // namespace rsft
