#include "rsft/error.hpp"
#include "rsft/morphism.hpp"
#include "rsft/parse.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace rsft;
using rsft::testing::Random;

namespace {

GeneratorTable morphism_table()
{
    GeneratorTable t;
    t.add({"a", 1, 2, {}});
    t.add({"b", 2, 1, {}});
    t.add({"c", 0, 1, {}});
    t.add({"d", 3, 3, {}});
    return t;
}

/// Ends "", "+", "-" with identical tables; potentials go + -> "" -> -.
UniversePtr three_ends()
{
    auto t = morphism_table();
    return Universe::cobordism(1, t, t, t, {{"s", 2}, {"r", 1}});
}

AlgElement random_potential(const UniversePtr& u, Random& rng, SideId source, SideId target, int max_terms = 3)
{
    std::vector<VarId> vars = rsft::testing::all_p(*u, source);
    for (VarId v : rsft::testing::all_q(*u, target)) vars.push_back(v);
    return rsft::testing::random_homogeneous(
        u, rng, 2 * u->N(), max_terms, vars, 3, [&](const Monomial& m) { return p_degree(*u, m, source) > 0; }, 1);
}

std::map<SideId, SideId> plus_to_minus() { return {{kPlus, kMinus}}; }

} // namespace

TEST_SUITE("morphism") {

TEST_CASE("identity potential acts as the identity")
{
    auto u = three_ends();
    auto i = Potential::identity(u, kPlus, kMinus);
    CHECK(i.in_hat());
    Random rng(1);
    for (int trial = 0; trial < 60; ++trial) {
        TensorWord w = rsft::testing::random_q_word(u, rng, 3, 4, kPlus);
        CHECK(apply_morphism(i, w) == w.rename_sides(plus_to_minus()));
    }
    CHECK(apply_morphism(i, TensorWord::one_l(u)) == TensorWord::one_l(u));
    auto qa = parse_element(u, "q:a+");
    auto qb = parse_element(u, "q:b+");
    CHECK(phi_component(i, {qa * qb}) == parse_element(u, "q:a-*q:b-"));
    CHECK(phi_component(i, {qa, qb}).is_zero());
}

TEST_CASE("Phi(1l) = 1l and the two assembly paths agree")
{
    auto u = three_ends();
    Random rng(2);
    for (int trial = 0; trial < 40; ++trial) {
        Potential f(random_potential(u, rng, kPlus, kMinus), kPlus, kMinus);
        CHECK(apply_morphism(f, TensorWord::one_l(u)) == TensorWord::one_l(u));
        TensorWord w = rsft::testing::random_q_word(u, rng, 3, 4, kPlus);
        CHECK(apply_morphism(f, w) == apply_via_components(f, w));
    }
}

TEST_CASE("phi components have degree (1-r)2N")
{
    auto u = three_ends();
    Random rng(3);
    auto qs = rsft::testing::all_q(*u, kPlus);
    for (int trial = 0; trial < 40; ++trial) {
        Potential f(random_potential(u, rng, kPlus, kMinus), kPlus, kMinus);
        int r = rng.uniform(1, 3);
        std::vector<AlgElement> ws;
        int total = 0;
        for (int i = 0; i < r; ++i) {
            auto m = rsft::testing::random_monomial(*u, rng, qs, 1, 2);
            if (!m) m = Monomial::var(qs.front());
            ws.push_back(AlgElement::term(u, *m, Scalar(1)));
            total += degree(*u, *m);
        }
        AlgElement phi = phi_component(f, ws);
        if (!phi.is_zero()) CHECK(phi.degree() == total + (1 - r) * 2 * u->N());
    }
}

TEST_CASE("actions on exponentials")
{
    auto u = three_ends();
    Random rng(4);
    for (int trial = 0; trial < 25; ++trial) {
        AlgElement f = random_potential(u, rng, kPlus, kMinus, 2);
        const std::size_t k = 4;
        TensorWord ef = TensorWord::exp(f, k);
        // (e^f)<-D_{g_s} = e^f (.) (1/s! f^s)<-g_s, compared below word length k
        AlgElement g = rsft::testing::random_homogeneous(u, rng, rng.uniform(0, 4), 2, rsft::testing::all_q(*u, kPlus), 2,
                                                         {}, 1);
        for (int s = 1; s <= 2; ++s) {
            AlgElement gs = g.q_part(s, kPlus);
            if (gs.is_zero()) continue;
            TensorWord lhs = left_action(gs, ef, kPlus).length_at_most(k - static_cast<std::size_t>(s));
            TensorWord inner = right_coderivation(TensorWord::divided_power(f, static_cast<std::size_t>(s)), gs, kPlus);
            TensorWord rhs = odot(ef, inner).length_at_most(k - static_cast<std::size_t>(s));
            CHECK(lhs == rhs);
        }
        // ->D_{g^r}(e^f) = ->g^r(1/r! f^r) (.) e^f and ->g^r(f^r/r!) = g^r|_{L_f}
        AlgElement h = rsft::testing::random_homogeneous(u, rng, rng.uniform(-1, 3), 2, rsft::testing::all_qp(*u, kMinus),
                                                         3, [&](const Monomial& m) { return p_degree(*u, m) > 0; });
        for (int r = 1; r <= 2; ++r) {
            AlgElement hr = h.p_part(r, kMinus);
            if (hr.is_zero()) continue;
            TensorWord lhs = right_action(hr, ef, kMinus).length_at_most(k - static_cast<std::size_t>(r));
            TensorWord direct = right_action(hr, TensorWord::divided_power(f, static_cast<std::size_t>(r)), kMinus);
            CHECK(direct.max_word_length() <= 1);
            TensorWord rhs = odot(direct, ef).length_at_most(k - static_cast<std::size_t>(r));
            CHECK(lhs == rhs);
            CHECK(direct.length_one_element() == restrict_to_lagrangian(hr, f, kPlus, kMinus));
        }
    }
}

TEST_CASE("composition with the identity and functoriality")
{
    auto u = three_ends();
    Random rng(5);
    auto i_plus = Potential::identity(u, kPlus, kNoSide);
    auto i_minus = Potential::identity(u, kNoSide, kMinus);
    for (int trial = 0; trial < 15; ++trial) {
        Truncation trunc{4, {}};
        Potential f1(random_potential(u, rng, kPlus, kNoSide).with_truncation(trunc), kPlus, kNoSide);
        Potential f2(random_potential(u, rng, kNoSide, kMinus).with_truncation(trunc), kNoSide, kMinus);
        Potential left = compose(i_minus, f1);
        CHECK(left.element() == f1.element().rename_sides({{kNoSide, kMinus}}));
        Potential right = compose(f2, i_plus);
        CHECK(right.element() == f2.element().rename_sides({{kNoSide, kPlus}}));
        Potential f = compose(f2, f1);
        for (int w = 0; w < 5; ++w) {
            TensorWord x = rsft::testing::random_q_word(u, rng, 3, 4, kPlus);
            CHECK(apply_morphism(f, x) == apply_morphism(f2, apply_morphism(f1, x)));
        }
    }
}

TEST_CASE("constraint expansion")
{
    auto t = morphism_table();
    auto u = Universe::cobordism(1, t, t, t, {{"s", 0}, {"r", 1}});
    auto f = parse_element(u, "q:a-*p:a+ + t:s*q:c-*p:c+ + t:r*p:a+ + t:s^2*p:c+ + t:s*t:r*q:c-*p:a+");
    Potential pf(f, kPlus, kMinus);
    auto s = Monomial::var(u->t(0));
    const std::size_t k = 4;
    AlgElement fprime = f.t_coefficient(Monomial());
    TensorWord efp = TensorWord::exp(fprime, k);
    CHECK(constraint_expansion(pf, Monomial(), k) == efp);
    CHECK(constraint_expansion(pf, s, k) == odot(TensorWord::word(f.t_coefficient(s)), efp).length_at_most(k));
    auto s2 = Monomial::var(u->t(0), 2);
    TensorWord expected = TensorWord::word(f.t_coefficient(s2)) +
                          odot(TensorWord::word(f.t_coefficient(s)), TensorWord::word(f.t_coefficient(s))).scaled(Rational(1, 2));
    CHECK(constraint_expansion(pf, s2, k) == odot(expected, efp).length_at_most(k));
}

TEST_CASE("potential validation")
{
    auto u = three_ends();
    CHECK_THROWS_AS(Potential(parse_element(u, "q:a+*p:a+"), kPlus, kMinus), Error);
    CHECK_THROWS_AS(Potential(parse_element(u, "q:a-"), kPlus, kMinus), Error);
    Potential f(parse_element(u, "q:a-*p:a+ + L^1/2*q:b-"), kPlus, kMinus);
    CHECK_FALSE(f.in_overline());
    CHECK_THROWS_AS(phi_component(f, {parse_element(u, "q:a+")}), Error);
}

}

namespace {

/// h^- for the potential i + f0 with f0 a pure p^+ function: q^+ is replaced
/// by q^- + kappa (f0 dR/dp^+), then the remaining plus letters move to the minus end.
AlgElement transported_hamiltonian(const AlgElement& h_plus, const AlgElement& f0)
{
    const UniversePtr& u = h_plus.universe_ptr();
    std::map<VarId, AlgElement> images;
    for (std::size_t g = 0; g < u->table(kPlus).size(); ++g) {
        const VarId p = u->p(kPlus, g);
        images.emplace(u->q(kPlus, g), AlgElement::variable(u, u->q(kMinus, g)) +
                                           right_partial(f0, p).scaled(Rational(u->info(p).kappa)).rename_sides({{kPlus, kMinus}}));
        images.emplace(p, AlgElement::variable(u, u->p(kMinus, g)));
    }
    return substitute(h_plus, images);
}

} // namespace

TEST_SUITE("morphism") {

TEST_CASE("chain-map criterion and intertwining")
{
    auto u = three_ends();
    Random rng(6);
    auto h_plus = parse_element(u, "p:a+ + p:d+*q:b+");
    REQUIRE(check_master(h_plus));
    for (int trial = 0; trial < 10; ++trial) {
        AlgElement f0 = rsft::testing::random_homogeneous(u, rng, 2, 2, rsft::testing::all_p(*u, kPlus), 3);
        Potential f(identity_potential(u, kPlus, kMinus) + f0, kPlus, kMinus);
        AlgElement h_minus = transported_hamiltonian(h_plus, f0);
        REQUIRE(check_master(h_minus));
        CHECK(check_chain_map(f, h_plus, h_minus));
        std::vector<TensorWord> samples;
        for (int i = 0; i < 6; ++i) samples.push_back(rsft::testing::random_q_word(u, rng, 3, 4, kPlus));
        bool intertwines = true;
        for (const auto& x : samples) {
            intertwines = intertwines && coderivation(h_minus, apply_morphism(f, x), kMinus) ==
                                             apply_morphism(f, coderivation(h_plus, x, kPlus));
        }
        CHECK(intertwines);
        // negative control: scale one coefficient of h^-
        AlgElement mutated = h_minus + AlgElement::term(u, h_minus.terms().begin()->first, Scalar(1));
        if (check_master(mutated)) {
            CHECK_FALSE(check_chain_map(f, h_plus, mutated));
            bool all = true;
            TensorWord probe = TensorWord::word(parse_element(u, "q:a+")) + TensorWord::word(parse_element(u, "q:d+")) +
                               TensorWord::word({parse_element(u, "q:a+"), parse_element(u, "q:d+")});
            samples.push_back(probe);
            for (const auto& x : samples) {
                all = all && coderivation(mutated, apply_morphism(f, x), kMinus) ==
                                 apply_morphism(f, coderivation(h_plus, x, kPlus));
            }
            CHECK_FALSE(all);
        }
    }
}

TEST_CASE("restriction accepts tagged Hamiltonians and potentials")
{
    auto u = three_ends();
    auto h_plus = parse_element(u, "p:a+ + p:d+*q:b+", Space::Hamiltonian);
    AlgElement f0 = parse_element(u, "p:c+", Space::Potential);
    Potential f(identity_potential(u, kPlus, kMinus).with_space(Space::Potential) + f0, kPlus, kMinus);
    AlgElement h_minus = transported_hamiltonian(h_plus, f0).with_space(Space::Hamiltonian);
    CHECK_NOTHROW(restrict_to_lagrangian(h_plus, f.element(), kPlus, kMinus));
    CHECK(check_chain_map(f, h_plus, h_minus));
}

TEST_CASE("Siegel map of an augmentation vanishes on boundaries")
{
    auto t = morphism_table();
    auto u = Universe::cobordism(1, {}, t, {});
    auto h = parse_element(u, "p:d+*q:b+ + 2*p:d+*q:b+*q:c+");
    REQUIRE(check_master(h));
    Potential f(parse_element(u, "3*p:c+"), kPlus, kMinus);
    CHECK(restrict_to_lagrangian(h, f.element(), kPlus, kMinus).is_zero());
    Random rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        TensorWord x = rsft::testing::random_q_word(u, rng, 3, 4, kPlus);
        CHECK(siegel_map(f, Monomial(), coderivation(h, x, kPlus), 4).is_zero());
        TensorWord phi = siegel_map(f, Monomial(), x, 4);
        for (const auto& [k, c] : phi.terms()) {
            for (const auto& m : k.factors) CHECK(m.is_one());
        }
    }
}

}

TEST_CASE("non-exact potential: factored action matches the full expansion")
{
    const Context c = rsft::testing::load_fixture("novikov.ctx");
    const auto& u = c.universe;
    const Potential f = c.potential("f");
    REQUIRE_FALSE(f.in_overline());
    for (const char* text : {"q:x+", "q:x+ (+) q:z+", "q:c+ (+) q:x+ (+) q:x+"}) {
        const TensorWord w = parse_word(u, text).with_limits(c.energy, std::nullopt);
        // e^f to a length where the f0 powers run out against the energy cutoff
        const TensorWord e = TensorWord::exp(f.element().with_truncation({Truncation::kUnbounded, c.energy}), 12, false)
                                 .with_limits(c.energy, std::nullopt);
        const TensorWord full = act_by_word(e, w, f.source()).restrict_p_zero(f.source());
        CHECK(apply_morphism(f, w) == full);
    }
}
