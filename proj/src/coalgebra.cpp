#include "rsft/coalgebra.hpp"

#include "rsft/error.hpp"

#include <algorithm>
#include <sstream>

namespace rsft {

std::optional<SignedWord> normalize_word(const Universe& u, const Monomial& t_part, const std::vector<Monomial>& factors)
{
    int sign = 1;
    Monomial t_acc = t_part;
    bool prefix_odd = false;
    std::vector<Monomial> rest;
    rest.reserve(factors.size());
    for (const auto& f : factors) {
        TSplit sp = split_t_left(u, f);
        sign *= sp.sign;
        if (!sp.t_part.is_one()) {
            if (prefix_odd && odd(u, sp.t_part)) sign = -sign;
            auto prod = multiply(u, t_acc, sp.t_part);
            if (!prod) return std::nullopt;
            sign *= prod->sign;
            t_acc = std::move(prod->mono);
        }
        if (odd(u, sp.rest)) prefix_odd = !prefix_odd;
        rest.push_back(std::move(sp.rest));
    }
    // Insertion sort; each transposition of two odd factors flips the sign.
    std::vector<bool> is_odd(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) is_odd[i] = odd(u, rest[i]);
    for (std::size_t i = 1; i < rest.size(); ++i) {
        for (std::size_t j = i; j > 0 && rest[j] < rest[j - 1]; --j) {
            if (is_odd[j] && is_odd[j - 1]) sign = -sign;
            std::swap(rest[j], rest[j - 1]);
            std::swap(is_odd[j], is_odd[j - 1]);
        }
    }
    for (std::size_t i = 1; i < rest.size(); ++i) {
        if (is_odd[i] && rest[i] == rest[i - 1]) return std::nullopt;
    }
    return SignedWord{sign, WordKey{std::move(t_acc), std::move(rest)}};
}

int word_degree(const Universe& u, const WordKey& w)
{
    int d = degree(u, w.t_part);
    for (const auto& f : w.factors) d += degree(u, f) - 2 * u.N();
    return d;
}

int word_parity(const Universe& u, const WordKey& w) { return word_degree(u, w) & 1; }

int unshuffle_sign(const Universe& u, const std::vector<Monomial>& factors, const std::vector<std::size_t>& first)
{
    std::vector<bool> chosen(factors.size(), false);
    for (auto i : first) chosen[i] = true;
    int swaps = 0;
    int odd_rest_before = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        bool o = odd(u, factors[i]);
        if (chosen[i]) {
            if (o) swaps += odd_rest_before;
        } else if (o) {
            ++odd_rest_before;
        }
    }
    return (swaps & 1) ? -1 : 1;
}

TensorWord::TensorWord(UniversePtr u, EnergyCutoff energy, std::optional<std::size_t> max_length)
    : u_(std::move(u)), energy_(std::move(energy)), max_length_(max_length)
{
    if (!u_) throw Error(ErrorCode::InvalidArgument, "word without universe");
}

TensorWord TensorWord::unit(UniversePtr u, EnergyCutoff energy, std::optional<std::size_t> max_length)
{
    TensorWord w(std::move(u), std::move(energy), max_length);
    w.add_normalized(WordKey{}, Scalar(1));
    return w;
}

TensorWord TensorWord::one_l(UniversePtr u, EnergyCutoff energy, std::optional<std::size_t> max_length)
{
    TensorWord w(std::move(u), std::move(energy), max_length);
    w.add_normalized(WordKey{Monomial(), {Monomial()}}, Scalar(1));
    return w;
}

TensorWord TensorWord::word(const std::vector<AlgElement>& factors, std::optional<std::size_t> max_length)
{
    if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "word needs at least one factor; use unit()");
    EnergyCutoff energy;
    for (const auto& f : factors) energy = min_cutoff(energy, f.truncation().energy);
    TensorWord out(factors.front().universe_ptr(), energy, max_length);
    bool truncated = false;
    for (const auto& f : factors) {
        if (f.universe_ptr().get() != out.u_.get()) {
            throw Error(ErrorCode::ContextMismatch, "word factors over different variable sets");
        }
        truncated = truncated || f.truncation_active();
    }
    // Expand multilinearly over the terms of each factor.
    std::vector<Monomial> monos(factors.size());
    std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& c) {
        if (i == factors.size()) {
            out.add(Monomial(), monos, c);
            return;
        }
        for (const auto& [m, cm] : factors[i].terms()) {
            monos[i] = m;
            Scalar next = Scalar::mul(c, cm, energy);
            if (!next.is_zero()) rec(i + 1, next);
        }
    };
    rec(0, Scalar(1));
    out.mark_truncated(truncated);
    return out;
}

TensorWord TensorWord::exp(const AlgElement& f, std::size_t max_length, bool flag_length_cutoff)
{
    const EnergyCutoff& energy = f.truncation().energy;
    TensorWord total = unit(f.universe_ptr(), energy, max_length);
    if (f.is_zero()) return total;
    TensorWord fw = word(f, max_length);
    TensorWord power = total;
    for (std::size_t k = 1; k <= max_length; ++k) {
        power = odot(power, fw).scaled(Scalar(Rational(1, static_cast<long>(k))));
        if (power.is_zero()) return total;
        total += power;
    }
    total.mark_truncated(flag_length_cutoff);
    return total;
}

TensorWord TensorWord::divided_power(const AlgElement& f, std::size_t n)
{
    TensorWord power = unit(f.universe_ptr(), f.truncation().energy);
    if (n == 0) return power;
    TensorWord fw = word(f);
    for (std::size_t k = 1; k <= n && !power.is_zero(); ++k) {
        power = odot(power, fw).scaled(Scalar(Rational(1, static_cast<long>(k))));
    }
    return power;
}

TensorWord TensorWord::with_limits(EnergyCutoff energy, std::optional<std::size_t> max_length) const
{
    TensorWord out(u_, std::move(energy), max_length);
    out.truncated_ = truncated_;
    for (const auto& [k, c] : terms_) out.add_normalized(k, c);
    return out;
}

void TensorWord::add(const Monomial& t_part, const std::vector<Monomial>& factors, const Scalar& c)
{
    if (c.is_zero()) return;
    auto n = normalize_word(*u_, t_part, factors);
    if (!n) return;
    add_normalized(n->key, n->sign < 0 ? -c : c);
}

void TensorWord::add_normalized(const WordKey& key, const Scalar& c)
{
    if (c.is_zero()) return;
    if (max_length_ && key.factors.size() > *max_length_) {
        truncated_ = true;
        return;
    }
    Scalar cc = c.truncated(energy_);
    if (cc.terms().size() != c.terms().size()) truncated_ = true;
    if (cc.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, cc);
    if (!inserted) {
        it->second += cc;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorWord TensorWord::operator-() const
{
    TensorWord x = *this;
    for (auto& [k, c] : x.terms_) c = -c;
    return x;
}

namespace {

std::optional<std::size_t> min_length(const std::optional<std::size_t>& a, const std::optional<std::size_t>& b)
{
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

} // namespace

TensorWord& TensorWord::operator+=(const TensorWord& other)
{
    if (u_.get() != other.u_.get()) throw Error(ErrorCode::ContextMismatch, "sum of words over different variable sets");
    EnergyCutoff e = min_cutoff(energy_, other.energy_);
    auto len = min_length(max_length_, other.max_length_);
    if (e != energy_ || len != max_length_) *this = with_limits(e, len);
    truncated_ = truncated_ || other.truncated_;
    for (const auto& [k, c] : other.terms_) add_normalized(k, c);
    return *this;
}

TensorWord& TensorWord::operator-=(const TensorWord& other) { return *this += -other; }

TensorWord TensorWord::scaled(const Scalar& c) const
{
    TensorWord out(u_, energy_, max_length_);
    out.truncated_ = truncated_;
    for (const auto& [k, v] : terms_) out.add_normalized(k, Scalar::mul(v, c, energy_));
    return out;
}

TensorWord odot(const TensorWord& a, const TensorWord& b)
{
    if (a.u_.get() != b.u_.get()) throw Error(ErrorCode::ContextMismatch, "product of words over different variable sets");
    const Universe& u = *a.u_;
    TensorWord out(a.u_, min_cutoff(a.energy_, b.energy_), min_length(a.max_length_, b.max_length_));
    out.truncated_ = a.truncated_ || b.truncated_;
    for (const auto& [ka, ca] : a.terms_) {
        const bool a_odd = [&] {
            int d = 0;
            for (const auto& f : ka.factors) d += degree(u, f);
            return (d & 1) != 0;
        }();
        for (const auto& [kb, cb] : b.terms_) {
            if (out.max_length_ && ka.factors.size() + kb.factors.size() > *out.max_length_) {
                out.truncated_ = true;
                continue;
            }
            // (Ta A)(.)(Tb B) = (-1)^{|A||Tb|} Ta Tb (A (.) B)
            int sign = (a_odd && odd(u, kb.t_part)) ? -1 : 1;
            auto tprod = multiply(u, ka.t_part, kb.t_part);
            if (!tprod) continue;
            sign *= tprod->sign;
            std::vector<Monomial> factors = ka.factors;
            factors.insert(factors.end(), kb.factors.begin(), kb.factors.end());
            auto n = normalize_word(u, tprod->mono, factors);
            if (!n) continue;
            sign *= n->sign;
            Scalar c = Scalar::mul(ca, cb, out.energy_);
            if (c.is_zero()) {
                out.truncated_ = true;
                continue;
            }
            out.add_normalized(n->key, sign < 0 ? -c : c);
        }
    }
    return out;
}

TensorWord TensorWord::filter(const std::function<bool(const WordKey&)>& keep) const
{
    TensorWord out(u_, energy_, max_length_);
    out.truncated_ = truncated_;
    for (const auto& [k, c] : terms_) {
        if (keep(k)) out.terms_.emplace(k, c);
    }
    return out;
}

TensorWord TensorWord::length_part(std::size_t n) const
{
    return filter([n](const WordKey& k) { return k.factors.size() == n; });
}

TensorWord TensorWord::length_at_most(std::size_t n) const
{
    return filter([n](const WordKey& k) { return k.factors.size() <= n; });
}

std::size_t TensorWord::max_word_length() const
{
    std::size_t n = 0;
    for (const auto& [k, c] : terms_) n = std::max(n, k.factors.size());
    return n;
}

std::optional<int> TensorWord::degree() const
{
    std::optional<int> d;
    for (const auto& [k, c] : terms_) {
        int dk = word_degree(*u_, k);
        if (d && *d != dk) return std::nullopt;
        d = dk;
    }
    return d;
}

TensorWord TensorWord::t_coefficient(const Monomial& t_mono) const
{
    TensorWord out(u_, energy_, max_length_);
    out.truncated_ = truncated_;
    for (const auto& [k, c] : terms_) {
        if (k.t_part == t_mono) out.terms_.emplace(WordKey{Monomial(), k.factors}, c);
    }
    return out;
}

TensorWord TensorWord::restrict_p_zero(std::optional<SideId> side) const
{
    return filter([&](const WordKey& k) {
        return std::all_of(k.factors.begin(), k.factors.end(),
                           [&](const Monomial& m) { return p_degree(*u_, m, side) == 0; });
    });
}

AlgElement TensorWord::length_one_element() const
{
    AlgElement x(u_, Space::Any, Truncation{Truncation::kUnbounded, energy_});
    for (const auto& [k, c] : terms_) {
        if (k.factors.size() != 1) continue;
        auto prod = multiply(*u_, k.t_part, k.factors.front());
        if (prod) x.add_term(prod->mono, prod->sign < 0 ? -c : c);
    }
    return x;
}

Scalar TensorWord::unit_coefficient() const
{
    auto it = terms_.find(WordKey{});
    return it == terms_.end() ? Scalar() : it->second;
}

Scalar TensorWord::one_l_coefficient() const
{
    auto it = terms_.find(WordKey{Monomial(), {Monomial()}});
    return it == terms_.end() ? Scalar() : it->second;
}

TensorWord TensorWord::rename_sides(const std::map<SideId, SideId>& mapping) const
{
    TensorWord out(u_, energy_, max_length_);
    out.truncated_ = truncated_;
    for (const auto& [k, c] : terms_) {
        std::vector<Monomial> factors;
        int sign = 1;
        bool zero = false;
        for (const auto& f : k.factors) {
            AlgElement e = AlgElement::term(u_, f, Scalar(1)).rename_sides(mapping);
            if (e.is_zero()) {
                zero = true;
                break;
            }
            const auto& [m, s] = *e.terms().begin();
            if (s.constant_term() < 0) sign = -sign;
            factors.push_back(m);
        }
        if (!zero) out.add(k.t_part, factors, sign < 0 ? -c : c);
    }
    return out;
}

namespace {

std::string monomial_text(const Universe& u, const Monomial& m)
{
    std::string s;
    for (const auto& pw : m.powers()) {
        if (!s.empty()) s += '*';
        s += u.var_name(pw.var);
        if (pw.exp != 1) s += '^' + std::to_string(pw.exp);
    }
    return s;
}

} // namespace

std::string TensorWord::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        std::string prefix;
        if (c.terms().size() == 1) {
            const auto& t = c.terms().front();
            bool neg = t.coeff < 0;
            os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
            Rational mag = neg ? Rational(-t.coeff) : t.coeff;
            if (mag != 1) prefix = rational_str(mag);
            if (t.exponent != 0) prefix += (prefix.empty() ? "" : "*") + std::string("L^") + rational_str(t.exponent);
        } else {
            os << (first ? "" : " + ");
            prefix = "(" + c.str() + ")";
        }
        if (!k.t_part.is_one()) prefix += (prefix.empty() ? "" : "*") + monomial_text(*u_, k.t_part);
        if (!prefix.empty()) os << prefix << '*';
        if (k.factors.empty()) {
            os << "()";
        } else {
            for (std::size_t i = 0; i < k.factors.size(); ++i) {
                if (i) os << " (+) ";
                os << (k.factors[i].is_one() ? std::string("1l") : monomial_text(*u_, k.factors[i]));
            }
        }
        first = false;
    }
    return os.str();
}

namespace {

void for_each_subset(std::size_t n, std::size_t r, const std::function<void(const std::vector<std::size_t>&)>& fn)
{
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        if (r == 0) return;
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

TensorWord extend_coderivation(const TensorWord& x, const std::vector<std::size_t>& arities, const FactorOperator& op,
                               int parity, Placement placement)
{
    const UniversePtr& up = x.universe_ptr();
    const Universe& u = *up;
    TensorWord out(up, x.energy(), x.max_length());
    out.mark_truncated(x.truncation_active());
    std::map<std::vector<Monomial>, AlgElement> cache;
    const Truncation factor_trunc{Truncation::kUnbounded, x.energy()};
    for (const auto& [key, c] : x.terms()) {
        const std::size_t n = key.factors.size();
        const bool t_sign = (parity & 1) && odd(u, key.t_part) && placement == Placement::Left;
        for (std::size_t r : arities) {
            if (r > n) continue;
            for_each_subset(n, r, [&](const std::vector<std::size_t>& chosen) {
                std::vector<Monomial> picked;
                std::vector<Monomial> rest;
                std::vector<std::size_t> rest_idx;
                for (std::size_t i = 0, j = 0; i < n; ++i) {
                    if (j < chosen.size() && chosen[j] == i) {
                        picked.push_back(key.factors[i]);
                        ++j;
                    } else {
                        rest.push_back(key.factors[i]);
                        rest_idx.push_back(i);
                    }
                }
                auto it = cache.find(picked);
                if (it == cache.end()) {
                    std::vector<AlgElement> inputs;
                    inputs.reserve(picked.size());
                    for (const auto& m : picked) inputs.push_back(AlgElement::term(up, m, Scalar(1), Space::Any, factor_trunc));
                    it = cache.emplace(picked, op(inputs)).first;
                }
                const AlgElement& value = it->second;
                if (value.truncation_active()) out.mark_truncated();
                if (value.is_zero()) return;
                int sign = placement == Placement::Left ? unshuffle_sign(u, key.factors, chosen)
                                                        : unshuffle_sign(u, key.factors, rest_idx);
                if (t_sign) sign = -sign;
                for (const auto& [m, cm] : value.terms()) {
                    std::vector<Monomial> factors;
                    factors.reserve(rest.size() + 1);
                    if (placement == Placement::Left) {
                        factors.push_back(m);
                        factors.insert(factors.end(), rest.begin(), rest.end());
                    } else {
                        factors = rest;
                        factors.push_back(m);
                    }
                    Scalar coeff = Scalar::mul(c, cm, x.energy());
                    if (coeff.is_zero()) {
                        out.mark_truncated();
                        continue;
                    }
                    out.add(key.t_part, factors, sign < 0 ? -coeff : coeff);
                }
            });
        }
    }
    return out;
}

AlgElement arrow_apply(const AlgElement& h, std::size_t r, const std::vector<AlgElement>& ws, std::optional<SideId> side)
{
    if (ws.size() != r) throw Error(ErrorCode::InvalidArgument, "arrow_apply needs exactly r inputs");
    AlgElement acc = h.p_part(static_cast<int>(r), side);
    for (const auto& w : ws) {
        if (acc.is_zero()) break;
        acc = bracket_bilinear(acc, w);
    }
    return acc;
}

AlgElement arrow_apply_right(const AlgElement& g, std::size_t s, const std::vector<AlgElement>& cs,
                             std::optional<SideId> side)
{
    if (cs.size() != s) throw Error(ErrorCode::InvalidArgument, "arrow_apply_right needs exactly s inputs");
    AlgElement acc = g.q_part(static_cast<int>(s), side);
    for (std::size_t i = s; i-- > 0;) {
        if (acc.is_zero()) break;
        acc = bracket_bilinear(cs[i], acc);
    }
    return acc;
}

TensorWord coderivation(const AlgElement& h, const TensorWord& x, std::optional<SideId> side)
{
    if (!h.is_homogeneous()) throw Error(ErrorCode::InhomogeneousInput, "coderivation of an inhomogeneous element");
    if (h.is_zero()) return TensorWord(x.universe_ptr(), x.energy(), x.max_length());
    std::vector<std::size_t> arities;
    std::map<std::size_t, AlgElement> parts;
    for (int r = 0; r <= h.max_p_degree(side); ++r) {
        AlgElement part = h.p_part(r, side);
        if (!part.is_zero()) {
            arities.push_back(static_cast<std::size_t>(r));
            parts.emplace(static_cast<std::size_t>(r), std::move(part));
        }
    }
    FactorOperator op = [&](const std::vector<AlgElement>& ws) {
        AlgElement acc = parts.at(ws.size());
        for (const auto& w : ws) {
            if (acc.is_zero()) break;
            acc = bracket_bilinear(acc, w);
        }
        return acc;
    };
    return extend_coderivation(x, arities, op, h.parity(), Placement::Left);
}

TensorWord right_coderivation(const TensorWord& x, const AlgElement& g, std::optional<SideId> side)
{
    if (!g.is_homogeneous()) throw Error(ErrorCode::InhomogeneousInput, "coderivation of an inhomogeneous element");
    if (g.is_zero()) return TensorWord(x.universe_ptr(), x.energy(), x.max_length());
    std::vector<std::size_t> arities;
    std::map<std::size_t, AlgElement> parts;
    for (int s = 0; s <= g.max_q_degree(side); ++s) {
        AlgElement part = g.q_part(s, side);
        if (!part.is_zero()) {
            arities.push_back(static_cast<std::size_t>(s));
            parts.emplace(static_cast<std::size_t>(s), std::move(part));
        }
    }
    FactorOperator op = [&](const std::vector<AlgElement>& cs) {
        AlgElement acc = parts.at(cs.size());
        for (std::size_t i = cs.size(); i-- > 0;) {
            if (acc.is_zero()) break;
            acc = bracket_bilinear(cs[i], acc);
        }
        return acc;
    };
    return extend_coderivation(x, arities, op, g.parity(), Placement::Right);
}

bool check_master(const AlgElement& h)
{
    if (h.is_zero()) return true;
    auto d = h.degree();
    if (!d) throw Error(ErrorCode::InhomogeneousInput, "master equation for an inhomogeneous element");
    if (*d != 2 * h.universe().N() - 1) {
        throw Error(ErrorCode::DegreeMismatch,
                    "Hamiltonian has degree " + std::to_string(*d) + ", expected " + std::to_string(2 * h.universe().N() - 1));
    }
    return bracket(h, h).is_zero();
}

bool check_commutator_lemma(const AlgElement& h, const AlgElement& g, const std::vector<TensorWord>& samples)
{
    const AlgElement hg = bracket(h, g);
    const bool minus = (h.parity() & g.parity()) != 0;
    for (const auto& x : samples) {
        TensorWord lhs = coderivation(h, coderivation(g, x));
        TensorWord other = coderivation(g, coderivation(h, x));
        lhs = minus ? lhs + other : lhs - other;
        if (lhs != coderivation(hg, x)) return false;
    }
    return true;
}

AlgElement contact_differential(const AlgElement& h, const AlgElement& x)
{
    if (!check_master(h)) throw Error(ErrorCode::MasterEquationFails, "{h,h} != 0");
    return bracket_bilinear(h.p_part(1), x);
}

TensorSquare coproduct(const TensorWord& x)
{
    const Universe& u = x.universe();
    TensorSquare out;
    for (const auto& [key, c] : x.terms()) {
        const std::size_t n = key.factors.size();
        for (std::size_t r = 1; r < n; ++r) {
            for_each_subset(n, r, [&](const std::vector<std::size_t>& chosen) {
                WordKey left{key.t_part, {}};
                WordKey right{Monomial(), {}};
                for (std::size_t i = 0, j = 0; i < n; ++i) {
                    if (j < chosen.size() && chosen[j] == i) {
                        left.factors.push_back(key.factors[i]);
                        ++j;
                    } else {
                        right.factors.push_back(key.factors[i]);
                    }
                }
                Scalar v = unshuffle_sign(u, key.factors, chosen) < 0 ? -c : c;
                auto [it, inserted] = out.try_emplace({left, right}, v);
                if (!inserted) {
                    it->second += v;
                    if (it->second.is_zero()) out.erase(it);
                }
            });
        }
    }
    return out;
}

TensorSquare apply_on_tensor_square(const UniversePtr& up, const TensorSquare& x,
                                    const std::function<TensorWord(const TensorWord&)>& a, int parity)
{
    const Universe& u = *up;
    TensorSquare out;
    auto add = [&](WordKey l, WordKey r, const Scalar& v) {
        if (v.is_zero()) return;
        auto [it, inserted] = out.try_emplace({std::move(l), std::move(r)}, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) out.erase(it);
        }
    };
    for (const auto& [pair, c] : x) {
        const auto& [l, r] = pair;
        TensorWord lw(up);
        lw.add_normalized(l, Scalar(1));
        const TensorWord al = a(lw);
        for (const auto& [k, v] : al.terms()) add(k, r, Scalar::mul(c, v));
        TensorWord rw(up);
        rw.add_normalized(r, Scalar(1));
        const bool sign_l = (parity & 1) && (word_parity(u, l) != 0);
        const TensorWord ar = a(rw);
        for (const auto& [k, v] : ar.terms()) {
            // L (x) T R' = (-1)^{|T||L|} T L (x) R'
            int sign = sign_l ? -1 : 1;
            if (odd(u, k.t_part) && word_parity(u, l)) sign = -sign;
            auto tprod = multiply(u, k.t_part, l.t_part);
            if (!tprod) continue;
            sign *= tprod->sign;
            WordKey nl{tprod->mono, l.factors};
            WordKey nr{Monomial(), k.factors};
            add(nl, nr, sign < 0 ? -Scalar::mul(c, v) : Scalar::mul(c, v));
        }
    }
    return out;
}

} // namespace rsft
