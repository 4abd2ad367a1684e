// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Algebraic checks are exact (no tolerance). Runtime limits are pinned below.

#include "rsft/error.hpp"
#include "rsft/invariants.hpp"
#include "rsft/linearize.hpp"
#include "rsft/mctwist.hpp"
#include "rsft/parse.hpp"

#include "support.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string_view>

using namespace rsft;
using rsft::testing::load_fixture;
using rsft::testing::Random;

namespace {

constexpr double kBracketSeconds = 10.0;
constexpr double kTorsionSeconds = 30.0;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) detail = "failed: " + what;
        pass = pass && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int sgn(bool odd) { return odd ? -1 : 1; }

struct Zoo {
    const char* file;
    const char* name;
    std::optional<SideId> side;
};

const std::vector<Zoo> kHamiltonians{{"trivial.ctx", "h", {}},         {"hat.ctx", "h", {}},
                                     {"exact.ctx", "h_plus", kPlus},   {"exact.ctx", "h_mid", kNoSide},
                                     {"exact.ctx", "h_minus", kMinus}, {"novikov.ctx", "h_plus", kPlus},
                                     {"novikov.ctx", "h_minus", kMinus}, {"augmentation.ctx", "h", kPlus},
                                     {"order.ctx", "h_plus", kPlus},   {"order.ctx", "h_minus", kMinus}};

/// Chain-map triples of the zoo: context, potential, h+, h-.
struct Pair {
    const char* file;
    const char* f;
    const char* h_plus;
    const char* h_minus;
};

const std::vector<Pair> kPairs{{"exact.ctx", "f_plus", "h_plus", "h_mid"},
                               {"exact.ctx", "f_minus", "h_mid", "h_minus"},
                               {"novikov.ctx", "f", "h_plus", "h_minus"},
                               {"order.ctx", "f", "h_plus", "h_minus"}};

/// Every word of one or two letters from the q-variables of `side`.
std::vector<TensorWord> letter_samples(const UniversePtr& u, std::optional<SideId> side)
{
    std::vector<TensorWord> out;
    const auto qs = rsft::testing::all_q(*u, side);
    for (VarId a : qs) {
        out.push_back(TensorWord::word(AlgElement::variable(u, a)));
        for (VarId b : qs) {
            TensorWord w = TensorWord::word({AlgElement::variable(u, a), AlgElement::variable(u, b)});
            if (!w.is_zero()) out.push_back(w);
        }
    }
    return out;
}

Verdict bracket_axioms()
{
    GeneratorTable t;
    t.add({"x", 1, 2, {}});
    t.add({"y", 2, 1, {}});
    t.add({"z", 3, 1, {}});
    t.add({"w", -2, 3, {}});
    auto u = Universe::single(1, t);
    const auto all = rsft::testing::all_qp(*u);
    Random rng(2024);
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t triples = 0;
    for (int attempt = 0; triples < 1000 && attempt < 20000; ++attempt) {
        // four variables per triple
        std::vector<VarId> vars;
        while (vars.size() < 4) {
            VarId x = rng.pick(all);
            if (std::find(vars.begin(), vars.end(), x) == vars.end()) vars.push_back(x);
        }
        AlgElement f = rsft::testing::random_homogeneous(u, rng, rng.uniform(-6, 6), 3, vars, 4);
        AlgElement g = rsft::testing::random_homogeneous(u, rng, rng.uniform(-6, 6), 3, vars, 4);
        AlgElement h = rsft::testing::random_homogeneous(u, rng, rng.uniform(-6, 6), 3, vars, 4);
        if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
        ++triples;
        const bool pf = f.parity(), pg = g.parity(), ph = h.parity();
        v.require(bracket(f, g) == -bracket(g, f).scaled(sgn(pf && pg)), "antisymmetry");
        v.require(bracket(f, g * h) == bracket(f, g) * h + (g * bracket(f, h)).scaled(sgn(pf && pg)), "Leibniz right");
        v.require(bracket(f * g, h) == f * bracket(g, h) + (bracket(f, h) * g).scaled(sgn(pg && ph)), "Leibniz left");
        v.require(bracket(f, bracket(g, h)) ==
                      bracket(bracket(f, g), h) + bracket(g, bracket(f, h)).scaled(sgn(pf && pg)),
                  "Jacobi");
    }
    const double dt = seconds_since(t0);
    v.require(triples >= 1000, "fewer than 1000 triples");
    v.require(dt < kBracketSeconds, "runtime");
    if (v.pass) v.detail = std::to_string(triples) + " triples, " + std::to_string(dt) + " s";
    return v;
}

Verdict commutator_lemma()
{
    GeneratorTable t;
    t.add({"x", 1, 2, {}});
    t.add({"y", 2, 1, {}});
    t.add({"z", 3, 1, {}});
    t.add({"w", 0, 3, {}});
    auto u = Universe::single(1, t);
    const auto vars = rsft::testing::all_qp(*u);
    Random rng(77);
    Verdict v;
    std::size_t pairs = 0;
    for (int attempt = 0; pairs < 200 && attempt < 5000; ++attempt) {
        auto overline = [&](int degree) {
            return rsft::testing::random_homogeneous(
                u, rng, degree, 3, vars, 3, [&](const Monomial& m) { return p_degree(*u, m) > 0; }, 1);
        };
        AlgElement h = overline(rng.uniform(-1, 3));
        AlgElement g = overline(rng.uniform(-1, 3));
        if (h.is_zero() || g.is_zero()) continue;
        std::vector<TensorWord> samples;
        for (int i = 0; i < 3; ++i) samples.push_back(rsft::testing::random_q_word(u, rng, 3, 4));
        v.require(check_commutator_lemma(h, g, samples), "commutator on a random pair");
        ++pairs;
    }
    std::size_t zoo = 0;
    for (const auto& z : kHamiltonians) {
        const Context c = load_fixture(z.file);
        const AlgElement& h = c.element(z.name);
        for (const auto& w : letter_samples(c.universe, z.side)) {
            TensorWord x = w.with_limits(c.energy, std::nullopt);
            v.require(coderivation(h, coderivation(h, x, z.side), z.side).is_zero(),
                      std::string("D_h^2 = 0 on ") + z.file + " " + z.name);
        }
        ++zoo;
    }
    if (v.pass) v.detail = std::to_string(pairs) + " pairs, D_h^2 = 0 on " + std::to_string(zoo) + " zoo Hamiltonians";
    return v;
}

Verdict functoriality()
{
    Verdict v;
    const Context c = load_fixture("exact.ctx");
    const auto& u = c.universe;
    const Potential fp = c.potential("f_plus");
    const Potential fm = c.potential("f_minus");
    const Potential f = compose(fm, fp);
    Random rng(31);
    constexpr std::size_t kCut = 4;
    std::size_t words = 0;
    for (; words < 100; ++words) {
        TensorWord x = rsft::testing::random_q_word(u, rng, 3, 4, kPlus);
        v.require(apply_morphism(f, x, kCut) == apply_morphism(fm, apply_morphism(fp, x, kCut), kCut),
                  "Phi(f- o f+) = Phi(f-) Phi(f+)");
    }
    // identity laws
    const Potential i_plus = Potential::identity(u, kPlus, kNoSide);
    const Potential i_minus = Potential::identity(u, kNoSide, kMinus);
    v.require(compose(i_minus, fp).element() == fp.element().rename_sides({{kNoSide, kMinus}}), "i o f = f");
    v.require(compose(fm, i_plus).element() == fm.element().rename_sides({{kNoSide, kPlus}}), "f o i = f");
    for (const auto& w : letter_samples(u, kPlus)) {
        v.require(apply_morphism(i_plus, w) == w.rename_sides({{kPlus, kNoSide}}), "Phi(i) = id");
    }
    if (v.pass) v.detail = std::to_string(words) + " words at cutoff 4, identity laws exact";
    return v;
}

Verdict chain_map_criterion()
{
    Verdict v;
    Random rng(41);
    for (const auto& p : kPairs) {
        const Context c = load_fixture(p.file);
        const auto& u = c.universe;
        const Potential f = c.potential(p.f);
        const AlgElement& hp = c.element(p.h_plus);
        const AlgElement& hm = c.element(p.h_minus);
        std::vector<TensorWord> samples = letter_samples(u, f.source());
        for (int i = 0; i < 10; ++i) samples.push_back(rsft::testing::random_q_word(u, rng, 3, 4, f.source()));
        auto intertwines = [&](const Potential& g) {
            for (const auto& w : samples) {
                TensorWord x = w.with_limits(c.energy, std::nullopt);
                if (coderivation(hm, apply_morphism(g, x), g.target()) !=
                    apply_morphism(g, coderivation(hp, x, g.source()))) {
                    return false;
                }
            }
            return true;
        };
        const std::string tag = std::string(p.file) + " " + p.f;
        v.require(check_chain_map(f, hp, hm), "restriction criterion on " + tag);
        v.require(intertwines(f), "intertwining on " + tag);
        // negative controls: double one coefficient of f at a time, both tests must agree
        std::size_t broken = 0;
        for (const auto& [mono, coeff] : f.element().terms()) {
            const AlgElement extra = AlgElement::term(u, mono, coeff, Space::Any, f.element().truncation());
            std::optional<Potential> g;
            try {
                g.emplace(f.element().with_space(Space::Any) + extra, f.source(), f.target());
            } catch (const Error&) {
                continue;
            }
            const bool restricted = check_chain_map(*g, hp, hm);
            v.require(restricted == intertwines(*g), "criteria disagree on a mutation of " + tag);
            if (!restricted) ++broken;
        }
        v.require(broken > 0, "no mutation of " + tag + " breaks the chain map");
    }
    if (v.pass) v.detail = std::to_string(kPairs.size()) + " zoo pairs, both directions with mutated controls";
    return v;
}

/// All q-monomials on `side` with 1..max letters.
std::vector<Monomial> q_monomials(const Universe& u, SideId side, std::size_t max)
{
    std::vector<Monomial> out{Monomial()};
    std::vector<Monomial> frontier{Monomial()};
    const auto qs = rsft::testing::all_q(u, side);
    for (std::size_t n = 1; n <= max; ++n) {
        std::vector<Monomial> next;
        for (const auto& m : frontier) {
            for (VarId q : qs) {
                // nondecreasing variable order enumerates each monomial once
                if (!m.powers().empty() && m.powers().back().var > q) continue;
                auto prod = multiply(u, m, Monomial::var(q));
                if (prod) next.push_back(prod->mono);
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    out.erase(out.begin());
    return out;
}

Verdict phi_oracle()
{
    GeneratorTable t;
    t.add({"a", 1, 2, {}});
    t.add({"b", 2, 1, {}});
    t.add({"c", 0, 1, {}});
    auto u = Universe::cobordism(1, {}, t, t);
    Random rng(53);
    std::vector<Potential> fs;
    std::vector<VarId> vars = rsft::testing::all_p(*u, kPlus);
    for (VarId q : rsft::testing::all_q(*u, kMinus)) vars.push_back(q);
    while (fs.size() < 4) {
        AlgElement f = rsft::testing::random_homogeneous(
            u, rng, 2, 3, vars, 3, [&](const Monomial& m) { return p_degree(*u, m, kPlus) > 0; }, 1);
        if (!f.is_zero()) fs.emplace_back(f, kPlus, kMinus);
    }
    // two different graphs giving one expression: the square p_b^2 and two copies of p_b
    fs.emplace_back(parse_element(u, "q:b-*p:b+ + q:b-*p:b+^2"), kPlus, kMinus);

    const auto monos = q_monomials(*u, kPlus, 5);
    Verdict v;
    std::size_t cases = 0;
    std::function<void(std::vector<std::size_t>&, std::size_t, std::size_t)> rec;
    for (const auto& f : fs) {
        std::map<std::size_t, TensorWord> exps;
        rec = [&](std::vector<std::size_t>& pick, std::size_t from, std::size_t tau) {
            if (!pick.empty()) {
                std::vector<AlgElement> ws;
                for (std::size_t i : pick) ws.push_back(AlgElement::term(u, monos[i], Scalar(1)));
                TensorWord w = TensorWord::word(ws);
                if (!w.is_zero()) {
                    // unrestricted expansion over every number of f-factors; its connected
                    // part is the length-one output
                    auto it = exps.find(tau);
                    if (it == exps.end()) it = exps.emplace(tau, TensorWord::exp(f.element(), tau + 1, false)).first;
                    TensorWord full = act_by_word(it->second, w, kPlus).restrict_p_zero(kPlus);
                    AlgElement oracle = full.length_part(1).length_one_element();
                    v.require(phi_component(f, ws) == oracle, "phi^" + std::to_string(ws.size()) + " on " +
                                                                  w.str() + " for f = " + f.element().str());
                    ++cases;
                }
            }
            if (pick.size() == 3) return;
            for (std::size_t i = from; i < monos.size(); ++i) {
                std::size_t n = q_degree(*u, monos[i], kPlus);
                if (tau + n > 5) continue;
                pick.push_back(i);
                rec(pick, i, tau + n);
                pick.pop_back();
            }
        };
        std::vector<std::size_t> pick;
        rec(pick, 0, 0);
    }
    const Potential& shared = fs.back();
    AlgElement twice = phi_component(shared, {parse_element(u, "q:b+"), parse_element(u, "q:b+")});
    v.require(twice == parse_element(u, "2*q:b-"), "shared-expression case phi^2(q_b, q_b) = 2 q_b-");
    if (v.pass) v.detail = std::to_string(cases) + " inputs with tau <= 5, r <= 3";
    return v;
}

Verdict maurer_cartan()
{
    Verdict v;
    const Context c = load_fixture("novikov.ctx");
    const auto& u = c.universe;
    const AlgElement& hp = c.element("h_plus");
    const AlgElement& hm = c.element("h_minus");
    const AlgElement& a = c.element("a");
    const Potential f = c.potential("f");
    const AlgElement b = parse_element(u, "L^1/2*q:x+ + L^1/4*q:c+*q:z+");
    const auto samples = letter_samples(u, kPlus);
    const auto split = split_potential(f);
    for (Rational E : {Rational(1, 2), Rational(1), Rational(3, 2)}) {
        const std::string at = " at E = " + rational_str(E);
        v.require(exponential_product_check(a, b, E), "e^{a+b} = e^a e^b" + at);
        v.require(is_maurer_cartan(a, hp, E, false, kPlus), "a is Maurer-Cartan" + at);
        AlgElement ha = twist_hamiltonian(hp, a, E, false, kPlus);
        for (const auto& w : samples) {
            TensorWord x = w.with_limits(E, std::nullopt);
            TensorWord da = twist_coderivation(hp, a, x, E, false, kPlus);
            v.require(da == coderivation(ha, x, kPlus), "D^a = D_{h^a}" + at);
            v.require(twist_coderivation(hp, a, da, E, false, kPlus).is_zero(), "(D^a)^2 = 0" + at);
        }
        // f = f0 + f' with f0 constant: f' is a chain map into the twist of h- by f0
        AlgElement hm0 = twist_hamiltonian(hm, split.zero_part, E, false, kMinus);
        v.require(check_chain_map(split.overline_part, hp, hm0), "f' is a chain map into h-^{f0}" + at);
        AlgElement push = split.zero_part + pushforward_mc(split.overline_part, a, hp, hm0, E);
        TensorWord lhs = apply_morphism(f, exp_filtered(a, E));
        TensorWord rhs = push.is_zero() ? TensorWord::unit(u, E) : exp_filtered(push, E);
        v.require(lhs == rhs, "Phi(e^a) = e^{f0 + f'_*(a)}" + at);
        v.require(is_maurer_cartan(push, hm, E, false, kMinus), "pushforward is Maurer-Cartan" + at);
    }
    if (v.pass) v.detail = "Novikov fixture at E in {1/2, 1, 3/2}";
    return v;
}

Verdict linearization()
{
    Verdict v;
    for (const auto& [file, name, side] : std::vector<Zoo>{{"hat.ctx", "h", {}}, {"order.ctx", "h_minus", kMinus}}) {
        const Context c = load_fixture(file);
        const auto& u = c.universe;
        const AlgElement& h = c.element(name);
        BiLieReport rep = check_bilie_relations(h, 4, 4, 3, side);
        v.require(rep.ok, std::string("quadratic relations on ") + file);
        for (const auto& comp : rep.components) v.require(comp.forms_agree, "bracket and composite forms agree");
        const AlgElement h1 = h.p_part(1, side);
        for (VarId q : rsft::testing::all_q(*u, side)) {
            AlgElement x = AlgElement::variable(u, q);
            v.require(m_operation(h, 1, 1, {m_operation(h, 1, 1, {x}, side)}, side).is_zero(), "m11 squares to zero");
            v.require(bracket(h1, bracket(h1, x)).is_zero(), "D^1 squares to zero");
        }
    }
    const Context c = load_fixture("augmentation.ctx");
    const AlgElement& h = c.element("h");
    Augmentation aug(h, c.element("f"), kPlus);
    AlgElement hf = augmentation_twist(h, aug);
    v.require(hf == augmentation_twist_series(h, aug), "augmentation twist paths agree");
    v.require(check_hat(hf, kPlus), "h_f in the hat space");
    v.require(check_master(hf), "h_f satisfies the master equation");
    if (v.pass) v.detail = "r, s <= 4 on two hat Hamiltonians; h_f = " + hf.str();
    return v;
}

Verdict torsion_criterion()
{
    Verdict v;
    const Context t = load_fixture("trivial.ctx");
    SearchResult px = torsion(t.element("h"), SearchBounds{4, 6, {}});
    v.require(px.status == SearchStatus::Found && px.value == 0, "h = p_x has torsion 0");
    v.require(px.certificate && *px.certificate == parse_word(t.universe, "1/2*q:x"), "certificate q_x / kappa_x");
    v.require(torsion(AlgElement(t.universe), SearchBounds{5, 6, {}}).status == SearchStatus::Unknown,
              "h = 0 is Unknown at kmax 5");

    double slowest = 0;
    std::size_t homology_checked = 0;
    for (const auto& z : kHamiltonians) {
        const Context c = load_fixture(z.file);
        const AlgElement& h = c.element(z.name);
        bool novikov = false;
        for (const auto& [m, k] : h.terms()) novikov = novikov || !k.is_rational();
        const EnergyCutoff level = novikov ? c.energy : EnergyCutoff{};
        auto t0 = std::chrono::steady_clock::now();
        SearchResult r = torsion(h, SearchBounds{4, 6, {}}, z.side, level);
        slowest = std::max(slowest, seconds_since(t0));
        t0 = std::chrono::steady_clock::now();
        SearchResult rt = torsion_tilde(h, SearchBounds{4, 6, {}}, z.side, level);
        slowest = std::max(slowest, seconds_since(t0));
        if (r.status == SearchStatus::Found) {
            v.require(r.verified, "certificate re-verifies");
            v.require(rt.status == SearchStatus::Found && rt.value <= r.value, "projected torsion <= torsion");
        }
        if (level) continue;
        HomologyReport hr = homology_window(h, ComplexKind::Algebra, HomologyBounds{-2, 3, 3, 1, {}}, z.side);
        bool acyclic = true;
        for (const auto& b : hr.betti) acyclic = acyclic && b.betti == 0;
        const bool zero = r.status == SearchStatus::Found && r.value == 0;
        v.require(zero == acyclic, std::string("T = 0 iff H(A, D^1) = 0 on ") + z.file + " " + z.name);
        ++homology_checked;
    }
    v.require(homology_checked >= 3, "fewer than three homology cross-checks");
    v.require(slowest < kTorsionSeconds, "runtime");
    if (v.pass) {
        v.detail = "homology cross-check on " + std::to_string(homology_checked) + " Hamiltonians, slowest search " +
                   std::to_string(slowest) + " s at kmax 4, qlen 6";
    }
    return v;
}

Verdict order_criterion()
{
    Verdict v;
    const Context c = load_fixture("hat.ctx");
    const auto& u = c.universe;
    const AlgElement& h = c.element("h");
    const SearchBounds b{3, 4, {}};
    auto throws = [](const std::function<void()>& fn, ErrorCode code) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code() == code;
        }
        return false;
    };
    v.require(throws([&] { order(h, parse_element(u, "p:x"), b); }, ErrorCode::BracketNotZero), "{h,g} = 0 enforced");
    v.require(throws([&] { order(h + parse_element(u, "q:y"), parse_element(u, "p:v"), b); }, ErrorCode::NotHat),
              "h in the hat space enforced");
    for (const char* g : {"p:v", "p:a", "p:a*p:v"}) {
        v.require(order_kills_boundaries(h, parse_element(u, g), b), std::string("pi D_g kills boundaries, g = ") + g);
    }
    SearchResult r = order(h, parse_element(u, "p:v"), b);
    v.require(r.status == SearchStatus::Found && r.verified, "order certificate found and verified");
    v.require(coderivation(h, *r.certificate).is_zero() &&
                  coderivation(parse_element(u, "p:v"), *r.certificate).one_l_coefficient() == Scalar(1),
              "certificate re-verifies by direct application");

    const Context e = load_fixture("exact.ctx");
    for (const auto& [f, hp, hm] : std::vector<std::array<const char*, 3>>{{"f_plus", "h_plus", "h_mid"},
                                                                            {"f_minus", "h_mid", "h_minus"}}) {
        MonotonicityReport m = monotonicity(e.potential(f), e.element(hp), e.element(hm), SearchBounds{3, 4, {}});
        v.require(m.torsion_monotone && m.transported_verifies, std::string("T+ >= T- along ") + f);
        v.require(m.torsion_plus.status == SearchStatus::Found && m.torsion_minus.status == SearchStatus::Found &&
                      m.torsion_plus.value >= m.torsion_minus.value,
                  "both ends decided");
    }
    const Context o = load_fixture("order.ctx");
    OrderData od{o.element("g_plus"), o.element("g_minus"), o.element("g")};
    MonotonicityReport m = monotonicity(o.potential("f"), o.element("h_plus"), o.element("h_minus"), b, od);
    v.require(m.proof_chain.size() == 7 && m.proof_chain_holds, "six equalities of the proof chain");
    v.require(m.order_monotone, "O+ >= O-");
    std::string chain;
    for (const auto& s : m.proof_chain) chain += (chain.empty() ? "" : " = ") + s.str();
    if (v.pass) v.detail = "proof chain " + chain;
    return v;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict determinism()
{
    Verdict v;
    const std::string fx = RSFT_FIXTURE_DIR;
    const std::vector<std::string> commands{
        "check-master --context " + fx + "/hat.ctx",
        "torsion --kmax 3 --context " + fx + "/trivial.ctx",
        "torsion --context " + fx + "/exact.ctx --h h_plus",
        "order --context " + fx + "/hat.ctx --g p:v",
        "monotonicity --with-order --kmax 3 --qlen-max 4 --context " + fx + "/order.ctx",
        "compose --context " + fx + "/exact.ctx",
        "apply --context " + fx + "/exact.ctx --f f_plus --word \"q:a+ (+) q:b+\"",
        "bilie-check --context " + fx + "/hat.ctx",
        "augment-twist --context " + fx + "/augmentation.ctx",
        "homology --context " + fx + "/hat.ctx --degree-lo -1 --degree-hi 2 --qlen-max 3",
        "torsion --context " + fx + "/novikov.ctx --h h_plus --energy-levels 1/2,1,3/2 --kmax 2 --qlen-max 3",
    };
    const auto dir = std::filesystem::temp_directory_path() / "rsft_acceptance";
    std::filesystem::create_directories(dir);
    auto run = [&](const std::string& cmd, const std::filesystem::path& out) {
        const int rc = std::system((cmd + " > \"" + out.string() + "\" 2>&1").c_str());
        return std::to_string(rc) + "\n" + slurp(out);
    };
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const std::string cmd = std::string(RSFT_CLI) + " " + commands[i];
        const std::string a = run(cmd, dir / ("a" + std::to_string(i)));
        const std::string b = run(cmd, dir / ("b" + std::to_string(i)));
        v.require(!a.empty() && a == b, "CLI report differs: " + commands[i]);
    }
    const std::string tests = std::string(RSFT_UNIT_TESTS);
    v.require(run(tests, dir / "ua") == run(tests, dir / "ub"), "unit test output differs");
    std::filesystem::remove_all(dir);
    if (v.pass) v.detail = std::to_string(commands.size()) + " CLI reports and the unit suite byte-identical";
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, Verdict (*)()>> criteria{
        {"bracket axioms", bracket_axioms},
        {"coderivation commutator", commutator_lemma},
        {"morphism functoriality", functoriality},
        {"chain-map criterion", chain_map_criterion},
        {"phi-component oracle", phi_oracle},
        {"Maurer-Cartan and twisting", maurer_cartan},
        {"linearization", linearization},
        {"torsion", torsion_criterion},
        {"order and monotonicity", order_criterion},
        {"determinism", determinism},
    };
    int failed = 0;
    // optional arguments select criteria by name prefix
    const std::vector<std::string> only(argv + 1, argv + argc);
    for (const auto& [name, fn] : criteria) {
        if (!only.empty() && std::none_of(only.begin(), only.end(), [&](const std::string& o) {
                return std::string_view(name).starts_with(o);
            })) {
            continue;
        }
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v = Verdict{false, std::string("threw: ") + e.what()};
        }
        std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
        failed += v.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
