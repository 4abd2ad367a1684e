#include "rsft/error.hpp"
#include "rsft/linearize.hpp"
#include "rsft/parse.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace rsft;
using rsft::testing::load_fixture;
using rsft::testing::transplant;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

AlgElement el(const UniversePtr& u, const std::string& s) { return parse_element(u, s); }

TensorWord letters(const UniversePtr& u, const std::vector<std::string>& names)
{
    std::vector<AlgElement> f;
    for (const auto& n : names) f.push_back(el(u, n));
    return TensorWord::word(f);
}

} // namespace

TEST_SUITE("linearize") {

TEST_CASE("hat space membership and components")
{
    const Context c = load_fixture("hat.ctx");
    const auto& u = c.universe;
    const AlgElement& h = c.element("h");
    CHECK(check_hat(h));
    CHECK(check_master(h));
    CHECK_FALSE(check_hat(h + el(u, "q:y")));
    CHECK_FALSE(check_hat(h + el(u, "p:x*p:x")));
    CHECK(hat_component(h, 1, 1) == el(u, "-2*q:w*p:a - 2*q:y*p:x - 2*q:k*p:z - 2*q:e*p:u"));
    CHECK(hat_component(h, 2, 1) == el(u, "-2*q:z*p:u*p:v + q:k*p:v*p:e"));
    CHECK(hat_component(h, 1, 2) == el(u, "-2*q:x*q:c*p:a + 2*q:c*q:y*p:w"));
    CHECK(hat_component(h, 2, 2).is_zero());
    CHECK(code_of([&] { m_operation(h + el(u, "q:y"), 1, 1, {el(u, "q:x")}); }) == ErrorCode::NotHat);
}

TEST_CASE("operations m^r_s on generators")
{
    const Context c = load_fixture("hat.ctx");
    const auto& u = c.universe;
    const AlgElement& h = c.element("h");
    CHECK(m_operation(h, 1, 1, {el(u, "q:x")}) == el(u, "-2*q:y"));
    CHECK(m_operation(h, 1, 1, {el(u, "q:u")}) == el(u, "-2*q:e"));
    CHECK(m_operation(h, 2, 1, {el(u, "q:v"), el(u, "q:e")}) == el(u, "2*q:k"));
    CHECK(m_operation(h, 1, 2, {el(u, "q:w")}) == el(u, "2*q:c*q:y"));
    CHECK_THROWS_AS(m_operation(h, 2, 1, {el(u, "q:v")}), Error);

    const Universe& U = *u;
    for (std::size_t g = 0; g < U.table(kNoSide).size(); ++g) {
        AlgElement q = AlgElement::variable(u, U.q(kNoSide, g));
        AlgElement once = m_operation(h, 1, 1, {q});
        // output degree 2N-1 + |q| - 2N
        if (!once.is_zero()) CHECK(once.degree() == U.degree(U.q(kNoSide, g)) - 1);
        CHECK(m_operation(h, 1, 1, {once}).is_zero());
        // the co-L-infinity operations square to zero on generators
        AlgElement h1 = h.p_part(1);
        CHECK(bracket(h1, bracket(h1, q)).is_zero());
    }
}

TEST_CASE("quadratic relations in bracket and composite form")
{
    const Context c = load_fixture("hat.ctx");
    const auto& u = c.universe;
    const AlgElement& h = c.element("h");
    BiLieReport ok = check_bilie_relations(h, 4, 4, 3);
    CHECK(ok.ok);
    CHECK(ok.components.size() == 9);
    for (const auto& comp : ok.components) CHECK(comp.forms_agree);

    AlgElement broken = h + el(u, "q:c*q:y*p:w");
    BiLieReport bad = check_bilie_relations(broken, 3, 3, 3);
    CHECK_FALSE(bad.ok);
    bool some_failed = false;
    for (const auto& comp : bad.components) {
        CHECK(comp.forms_agree);
        some_failed = some_failed || !comp.bracket_form;
    }
    CHECK(some_failed);
}

TEST_CASE("flatten and letter words")
{
    const Context c = load_fixture("hat.ctx");
    const auto& u = c.universe;
    TensorWord w = parse_word(u, "q:x*q:c (+) q:y");
    CHECK_FALSE(is_letter_word(w));
    TensorWord flat = flatten_word(w);
    CHECK(is_letter_word(flat));
    CHECK(flat == letters(u, {"q:x", "q:c", "q:y"}));
    CHECK_FALSE(is_letter_word(parse_word(u, "1l")));
    CHECK_THROWS_AS(linearized_coderivation(c.element("h"), w), Error);
}

TEST_CASE("augmentation twist: substitution, series and restriction agree")
{
    const Context c = load_fixture("augmentation.ctx");
    const auto& u = c.universe;
    const AlgElement& h = c.element("h");
    REQUIRE(check_master(h));
    Augmentation aug(h, c.element("f"), kPlus);
    CHECK(restrict_to_augmentation(h, aug.element(), kPlus).is_zero());

    AlgElement hf = augmentation_twist(h, aug);
    CHECK(hf == augmentation_twist_series(h, aug));
    CHECK(check_master(hf));
    CHECK(check_hat(hf, kPlus));
    CHECK_FALSE(check_hat(h, kPlus));

    // h_f is h restricted to the graph of the identity plus f
    AlgElement i_f = identity_potential(u, kPlus, kMinus) + aug.element();
    AlgElement via_graph = restrict_to_lagrangian(h, i_f, kPlus, kMinus).rename_sides({{kPlus, kMinus}});
    CHECK(via_graph == hf.rename_sides({{kPlus, kMinus}}));
    CHECK(linear_part(hf, kPlus) != linear_part(h, kPlus));

    CHECK(code_of([&] { Augmentation(h, el(u, "2*p:c+"), kPlus); }) == ErrorCode::NotAugmentation);
    CHECK(code_of([&] { Augmentation(h, el(u, "q:c+"), kPlus); }) == ErrorCode::NotAugmentation);
    CHECK(code_of([&] { Augmentation(h, el(u, "p:d+"), kPlus); }) == ErrorCode::DegreeMismatch);
    CHECK(code_of([&] { Augmentation(h, el(u, "p:c-"), kPlus); }) == ErrorCode::NotAugmentation);
}

TEST_CASE("augmented Maurer-Cartan linear part")
{
    const Context c = load_fixture("augmentation.ctx");
    const auto& u = c.universe;
    const AlgElement& h = c.element("h");
    const AlgElement& a = c.element("a");
    Augmentation aug(h, c.element("f"), kPlus);
    REQUIRE(is_maurer_cartan(a, h, c.energy, false, kPlus));

    AlgElement a1 = augmented_mc_linear_part(h, aug, a, kMinus, c.energy);
    // the graph of i + f shifts q_c by kappa_c * df/dp_c = 1
    AlgElement shifted = substitute(a, {{u->var(VarKind::Q, kPlus, "c"), el(u, "q:c+ + 1")}});
    CHECK(a1 == linear_part(shifted, kPlus));
    CHECK(a1 == el(u, "2*L^1/2*q:b+"));
    AlgElement hf = augmentation_twist(h, aug);
    CHECK(is_maurer_cartan(a1, linear_part(hf, kPlus), c.energy, false, kPlus));
}

TEST_CASE("linearized morphism intertwines the linearized differentials")
{
    const Context c = load_fixture("hat.ctx");
    const GeneratorTable& table = c.universe->table(kNoSide);
    auto u = Universe::cobordism(1, {}, table, table);
    AlgElement h_plus = transplant(c.element("h"), u, {{kNoSide, kPlus}});
    // the linear symplectic change q_x -> q_x + 3 q_c (|x| = |c|, p_c absent from h)
    AlgElement h_minus =
        substitute(transplant(c.element("h"), u, {{kNoSide, kMinus}}), {{u->var(VarKind::Q, kMinus, "x"), el(u, "q:x- + 3*q:c-")}});
    Potential f(identity_potential(u, kPlus, kMinus) + el(u, "3*q:c-*p:x+"), kPlus, kMinus);
    REQUIRE(check_chain_map(f, h_plus, h_minus));
    LinearizedMorphism phi(f, h_plus, h_minus);
    CHECK(phi.linear_potential().element() == f.element());

    CHECK(phi.apply(letters(u, {"q:x+"})) == letters(u, {"q:x-"}) + letters(u, {"q:c-"}).scaled(3));
    const auto qs = rsft::testing::all_q(*u, kPlus);
    std::vector<TensorWord> samples;
    for (VarId a : qs) {
        samples.push_back(TensorWord::word(AlgElement::variable(u, a)));
        for (VarId b : qs) {
            TensorWord w = TensorWord::word({AlgElement::variable(u, a), AlgElement::variable(u, b)});
            if (!w.is_zero()) samples.push_back(w);
        }
    }
    for (const auto& w : samples) {
        TensorWord lhs = linearized_coderivation(h_minus, phi.apply(w), kMinus);
        TensorWord rhs = phi.apply(flatten_word(linearized_coderivation(h_plus, w, kPlus)));
        CHECK(lhs == rhs);
    }

    Potential not_hat(identity_potential(u, kPlus, kMinus) + el(u, "p:k+"), kPlus, kMinus);
    CHECK(code_of([&] { LinearizedMorphism(not_hat, h_plus, h_plus.rename_sides({{kPlus, kMinus}})); }) ==
          ErrorCode::NotHat);
}

TEST_CASE("linear part of a Maurer-Cartan element solves the linearized equation")
{
    const Context c = load_fixture("hat.ctx");
    const auto& u = c.universe;
    const AlgElement& h = c.element("h");
    const EnergyCutoff E = Rational(2);
    AlgElement a = el(u, "L^1/2*q:v + L^1/2*q:k*q:v");
    REQUIRE(is_maurer_cartan(a, h, E));
    CHECK(is_maurer_cartan(linear_part(a), linear_part(h), E));
    CHECK_FALSE(is_maurer_cartan(el(u, "L^1/2*q:x"), linear_part(h), E));
}

} // TEST_SUITE
