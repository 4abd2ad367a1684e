// Regenerates the fixture zoo by brute-force coefficient search.
//
//   zoo_search <output-dir>
//
// Every fixture is the first hit of a lexicographic enumeration over small
// coefficient sets; the predicates are the defining properties of the fixture.

#include "rsft/context.hpp"
#include "rsft/error.hpp"
#include "rsft/invariants.hpp"
#include "rsft/linearize.hpp"
#include "rsft/parse.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

using namespace rsft;

namespace {

/// An element with unknown coefficients: fixed + sum_i c_i * slots[i].
struct Template {
    std::string fixed;
    std::vector<std::string> slots;
};

AlgElement instantiate(const UniversePtr& u, const Template& t, const std::vector<Scalar>& cs, std::size_t offset,
                       const Truncation& trunc)
{
    AlgElement x = t.fixed.empty() ? AlgElement(u, Space::Any, trunc) : parse_element(u, t.fixed, Space::Any, trunc);
    for (std::size_t i = 0; i < t.slots.size(); ++i) {
        x += parse_element(u, t.slots[i], Space::Any, trunc).scaled(cs[offset + i]);
    }
    return x;
}

/// First assignment (odometer order, last slot fastest) accepted by `accept`.
std::optional<std::vector<Scalar>> search(const std::vector<std::vector<Scalar>>& choices,
                                          const std::function<bool(const std::vector<Scalar>&)>& accept,
                                          std::size_t& tried)
{
    std::vector<std::size_t> idx(choices.size(), 0);
    std::vector<Scalar> cs(choices.size());
    tried = 0;
    while (true) {
        for (std::size_t i = 0; i < idx.size(); ++i) cs[i] = choices[i][idx[i]];
        ++tried;
        if (accept(cs)) return cs;
        std::size_t k = idx.size();
        while (k > 0) {
            --k;
            if (++idx[k] < choices[k].size()) break;
            idx[k] = 0;
            if (k == 0) return std::nullopt;
        }
        if (idx.empty()) return std::nullopt;
    }
}

std::vector<Scalar> integers(long lo, long hi, bool skip_zero)
{
    std::vector<Scalar> out;
    for (long v = lo; v <= hi; ++v) {
        if (!(skip_zero && v == 0)) out.emplace_back(v);
    }
    return out;
}

std::vector<std::vector<Scalar>> repeat(const std::vector<Scalar>& c, std::size_t n) { return {n, c}; }

std::vector<std::vector<Scalar>> concat(std::vector<std::vector<Scalar>> a, const std::vector<std::vector<Scalar>>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool master_ok(const AlgElement& h)
{
    try {
        return check_master(h);
    } catch (const Error&) {
        return false;
    }
}

bool chain_ok(const Potential& f, const AlgElement& hp, const AlgElement& hm)
{
    try {
        return check_chain_map(f, hp, hm);
    } catch (const Error&) {
        return false;
    }
}

/// Some pair of terms has a nonzero bracket, so {h,h} = 0 rests on
/// cancellations rather than on disjoint variables.
bool interacting(const AlgElement& h)
{
    std::vector<AlgElement> terms;
    for (const auto& [m, c] : h.terms()) terms.push_back(AlgElement::term(h.universe_ptr(), m, c));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i; j < terms.size(); ++j) {
            if (!bracket(terms[i], terms[j]).is_zero()) return true;
        }
    }
    return false;
}

struct Output {
    std::string file;
    std::string comment;
    Context ctx;
};

void write(const std::filesystem::path& dir, const Output& o)
{
    std::ofstream out(dir / o.file);
    out << "# " << o.comment << "\n# generated by zoo_search; do not edit by hand\n" << print_context(o.ctx);
    std::cout << "wrote " << (dir / o.file).string() << '\n';
}

Context base(const char* text)
{
    return parse_context(text);
}

[[noreturn]] void no_hit(const std::string& what)
{
    throw std::runtime_error("no assignment satisfies the " + what + " search");
}

Output trivial_fixture()
{
    Context c = base("N = 1\ngenerator x qdeg=1 kappa=2\n");
    Template h{"", {"p:x"}};
    std::size_t tried = 0;
    auto hit = search({integers(1, 3, true)}, [&](const std::vector<Scalar>& cs) {
        return master_ok(instantiate(c.universe, h, cs, 0, c.truncation()));
    }, tried);
    if (!hit) no_hit("trivial");
    c.elements.push_back({"h", Space::Hamiltonian, {}, {}, instantiate(c.universe, h, *hit, 0, c.truncation())});
    return {"trivial.ctx", "(a) h = p:x, torsion 0", c};
}

Output hat_fixture()
{
    Context c = base(R"(N = 1
generator a qdeg=5 kappa=1
generator x qdeg=2 kappa=1
generator c qdeg=2 kappa=1
generator w qdeg=4 kappa=1
generator y qdeg=1 kappa=1
generator u qdeg=2 kappa=1
generator v qdeg=2 kappa=1
generator z qdeg=1 kappa=1
generator k qdeg=0 kappa=1
generator e qdeg=1 kappa=2
)");
    Template h{"", {"p:a*q:x*q:c", "p:a*q:w", "p:x*q:y", "p:w*q:y*q:c", "p:u*p:v*q:z", "p:z*q:k", "p:u*q:e",
                    "p:e*p:v*q:k"}};
    std::size_t tried = 0;
    auto hit = search(repeat(integers(-2, 2, true), h.slots.size()), [&](const std::vector<Scalar>& cs) {
        AlgElement x = instantiate(c.universe, h, cs, 0, c.truncation());
        return x.in_hat() && master_ok(x) && interacting(x);
    }, tried);
    if (!hit) no_hit("hat");
    c.elements.push_back({"h", Space::Hamiltonian, {}, {}, instantiate(c.universe, h, *hit, 0, c.truncation())});
    return {"hat.ctx", "(b) h in the hat space with {h,h} = 0 through cancellations; searched " +
                           std::to_string(tried) + " assignments", c};
}

Output exact_fixture()
{
    Context c = base(R"(N = 1
generator a qdeg=1 kappa=1 ends=+,0,-
generator b qdeg=2 kappa=1 ends=+,0,-
generator x qdeg=2 kappa=1 ends=+,0,-
generator y qdeg=1 kappa=1 ends=+,0,-
generator c qdeg=0 kappa=1 ends=+,0,-
)");
    const auto& u = c.universe;
    const Truncation tr = c.truncation();
    const AlgElement h_plus = parse_element(u, "p:a+*p:b+ + p:x+*q:y+ + p:x+*q:y+*q:c+", Space::Hamiltonian, tr);
    const Template mid_t{"", {"p:a*p:b", "p:x*q:y", "p:x*q:y*q:c", "p:b*q:y", "p:b*q:y*q:c"}};
    const Template minus_t{"", {"p:a-*p:b-", "p:x-*q:y-", "p:x-*q:y-*q:c-", "p:b-*q:y-", "p:b-*q:y-*q:c-"}};
    const AlgElement i_plus = identity_potential(u, kPlus, kNoSide, tr);
    const AlgElement i_minus = identity_potential(u, kNoSide, kMinus, tr);
    const Template fp_t{"", {"p:c+", "q:x*p:b+"}};
    const Template fm_t{"", {"p:c", "q:x-*p:b"}};

    std::size_t tried1 = 0;
    auto hit1 = search(concat(repeat(integers(1, 2, true), 2), repeat(integers(-4, 4, false), 5)),
                       [&](const std::vector<Scalar>& cs) {
                           Potential f(i_plus + instantiate(u, fp_t, cs, 0, tr), kPlus, kNoSide);
                           AlgElement hm = instantiate(u, mid_t, cs, 2, tr);
                           return master_ok(hm) && chain_ok(f, h_plus, hm);
                       },
                       tried1);
    if (!hit1) no_hit("exact (first stage)");
    const AlgElement f_plus = i_plus + instantiate(u, fp_t, *hit1, 0, tr);
    const AlgElement h_mid = instantiate(u, mid_t, *hit1, 2, tr);

    std::size_t tried2 = 0;
    auto hit2 = search({integers(1, 1, true), integers(1, 1, true), integers(-2, 2, false), integers(-4, 4, false),
                        integers(-2, 2, false), integers(-8, 8, false), integers(-4, 4, false)},
                       [&](const std::vector<Scalar>& cs) {
                           Potential f(i_minus + instantiate(u, fm_t, cs, 0, tr), kNoSide, kMinus);
                           AlgElement hm = instantiate(u, minus_t, cs, 2, tr);
                           return master_ok(hm) && chain_ok(f, h_mid, hm);
                       },
                       tried2);
    if (!hit2) no_hit("exact (second stage)");
    const AlgElement f_minus = i_minus + instantiate(u, fm_t, *hit2, 0, tr);
    const AlgElement h_minus = instantiate(u, minus_t, *hit2, 2, tr);

    c.elements.push_back({"h_plus", Space::Hamiltonian, {}, {}, h_plus});
    c.elements.push_back({"h_mid", Space::Hamiltonian, {}, {}, h_mid});
    c.elements.push_back({"h_minus", Space::Hamiltonian, {}, {}, h_minus});
    c.elements.push_back({"f_plus", Space::Potential, {}, std::make_pair(kPlus, kNoSide), f_plus});
    c.elements.push_back({"f_minus", Space::Potential, {}, std::make_pair(kNoSide, kMinus), f_minus});
    return {"exact.ctx", "(c) exact cobordisms + -> 0 -> - with chain maps f_plus, f_minus; searched " +
                             std::to_string(tried1) + " + " + std::to_string(tried2) + " assignments", c};
}

Output novikov_fixture()
{
    Context c = base(R"(ring = novikov
energy_cutoff = 3/2
N = 1
generator x qdeg=2 kappa=1 ends=+,-
generator z qdeg=2 kappa=1 ends=+,-
generator y qdeg=1 kappa=1 ends=+,-
generator w qdeg=4 kappa=1 ends=+,-
generator c qdeg=0 kappa=1 ends=+,-
)");
    const auto& u = c.universe;
    const Truncation tr = c.truncation();
    const EnergyCutoff E = c.energy;
    const AlgElement h_minus = parse_element(
        u, "p:x-*q:y- - p:z-*q:y- + p:x-*p:z-*q:y- - p:x-^2*q:y- + p:w-*q:x-*q:y-", Space::Hamiltonian, tr);
    const AlgElement f = identity_potential(u, kPlus, kMinus, tr) +
                         parse_element(u, "L^1/4*q:x- + L^1/4*q:z- + p:c+", Space::Any, tr);
    const Potential pf(f, kPlus, kMinus);
    const Template plus_t{"", {"p:x+*q:y+", "p:z+*q:y+", "p:x+*p:z+*q:y+", "p:x+^2*q:y+", "p:w+*q:x+*q:y+"}};
    std::vector<Scalar> nov;
    for (long a = -1; a <= 1; ++a) {
        for (long b = -1; b <= 1; ++b) nov.push_back(Scalar(a) + Scalar::monomial(b, Rational(1, 4)));
    }
    std::size_t tried1 = 0;
    auto hit1 = search(repeat(nov, plus_t.slots.size()), [&](const std::vector<Scalar>& cs) {
        return chain_ok(pf, instantiate(u, plus_t, cs, 0, tr), h_minus);
    }, tried1);
    if (!hit1) no_hit("novikov chain map");
    const AlgElement h_plus = instantiate(u, plus_t, *hit1, 0, tr);

    const Template a_t{"", {"q:x+", "q:z+"}};
    std::vector<Scalar> small{Scalar(), Scalar::monomial(1, Rational(1, 4)), Scalar::monomial(-1, Rational(1, 4)),
                              Scalar::monomial(1, Rational(1, 2))};
    std::size_t tried2 = 0;
    auto hit2 = search(repeat(small, a_t.slots.size()), [&](const std::vector<Scalar>& cs) {
        AlgElement a = instantiate(u, a_t, cs, 0, tr);
        if (a.terms().size() < 2) return false;
        try {
            return is_maurer_cartan(a, h_plus, E, false, kPlus);
        } catch (const Error&) {
            return false;
        }
    }, tried2);
    if (!hit2) no_hit("novikov Maurer-Cartan");
    c.elements.push_back({"h_plus", Space::Hamiltonian, {}, {}, h_plus});
    c.elements.push_back({"h_minus", Space::Hamiltonian, {}, {}, h_minus});
    c.elements.push_back({"f", Space::Potential, {}, std::make_pair(kPlus, kMinus), f});
    c.elements.push_back({"a", Space::Algebra, {}, {}, instantiate(u, a_t, *hit2, 0, tr)});
    return {"novikov.ctx", "(d) non-exact cobordism with f|_{p=0} = L^1/4*(q:x- + q:z-); a is Maurer-Cartan for h_plus; "
                           "searched " + std::to_string(tried1) + " + " + std::to_string(tried2) + " assignments", c};
}

Output augmentation_fixture()
{
    Context c = base(R"(ring = novikov
energy_cutoff = 2
N = 1
generator b qdeg=2 kappa=1 ends=+,-
generator c qdeg=0 kappa=1 ends=+,-
generator d qdeg=3 kappa=3 ends=+,-
generator e qdeg=1 kappa=2 ends=+,-
)");
    const auto& u = c.universe;
    const Truncation tr = c.truncation();
    const Template h_t{"p:d+*q:b+", {"p:d+*q:b+*q:c+", "p:e+*q:c+", "p:e+"}};
    const Template f_t{"", {"p:c+"}};
    std::size_t tried1 = 0;
    auto hit1 = search(concat(repeat(integers(1, 3, true), 1), concat(repeat(integers(-3, 3, true), 3), {})),
                       [&](const std::vector<Scalar>& cs) {
                           AlgElement f = instantiate(u, f_t, cs, 0, tr);
                           AlgElement h = instantiate(u, h_t, cs, 1, tr);
                           if (h.in_hat(kPlus) || !master_ok(h)) return false;
                           try {
                               Augmentation aug(h, f, kPlus);
                               return augmentation_twist(h, aug) != h;
                           } catch (const Error&) {
                               return false;
                           }
                       },
                       tried1);
    if (!hit1) no_hit("augmentation");
    const AlgElement f = instantiate(u, f_t, *hit1, 0, tr);
    const AlgElement h = instantiate(u, h_t, *hit1, 1, tr);
    const Template a_t{"", {"q:b+", "q:c+*q:b+"}};
    std::vector<Scalar> small{Scalar(), Scalar::monomial(1, Rational(1, 2)), Scalar::monomial(-1, Rational(1, 2))};
    std::size_t tried2 = 0;
    auto hit2 = search(repeat(small, a_t.slots.size()), [&](const std::vector<Scalar>& cs) {
        AlgElement a = instantiate(u, a_t, cs, 0, tr);
        if (a.terms().size() < 2) return false;
        try {
            return is_maurer_cartan(a, h, c.energy, false, kPlus);
        } catch (const Error&) {
            return false;
        }
    }, tried2);
    if (!hit2) no_hit("augmentation Maurer-Cartan");
    c.elements.push_back({"h", Space::Hamiltonian, {}, {}, h});
    c.elements.push_back({"f", Space::Augmentation, {}, {}, f});
    c.elements.push_back({"a", Space::Algebra, {}, {}, instantiate(u, a_t, *hit2, 0, tr)});
    return {"augmentation.ctx", "(e) h in the overline with augmentation f (h|_{L_f} = 0) and Maurer-Cartan a; searched " +
                                    std::to_string(tried1) + " + " + std::to_string(tried2) + " assignments", c};
}

Output order_fixture()
{
    Context c = base(R"(N = 1
generator a qdeg=5 kappa=1 ends=+,-
generator x qdeg=2 kappa=1 ends=+,-
generator c qdeg=2 kappa=1 ends=+,-
generator w qdeg=4 kappa=1 ends=+,-
generator y qdeg=1 kappa=1 ends=+,-
generator u qdeg=2 kappa=1 ends=+,-
generator v qdeg=2 kappa=1 ends=+,-
generator z qdeg=1 kappa=1 ends=+,-
generator k qdeg=0 kappa=1 ends=+,-
generator e qdeg=1 kappa=2 ends=+,-
)");
    const auto& u = c.universe;
    const Truncation tr = c.truncation();
    const char* hat = "-2*q:x*q:c*p:a + 2*q:c*q:y*p:w - 2*q:w*p:a - 2*q:y*p:x - 2*q:z*p:u*p:v + q:k*p:v*p:e - "
                      "2*q:k*p:z - 2*q:e*p:u";
    std::string plus(hat), minus(hat);
    for (std::size_t i = 0; i < plus.size(); ++i) {
        if (plus[i] == ':') {
            plus.insert(i + 2, "+");
            minus.insert(i + 2, "-");
        }
    }
    const AlgElement h_plus = parse_element(u, plus, Space::Any, tr);
    const AlgElement h_base = parse_element(u, minus, Space::Any, tr);
    const AlgElement i = identity_potential(u, kPlus, kMinus, tr);
    const AlgElement g_plus = parse_element(u, "p:v+", Space::Any, tr);
    const AlgElement k_hat = parse_element(u, "q:y-*p:x-", Space::Any, tr);
    const VarId qv = u->var(VarKind::Q, kMinus, "v");
    const VarId pu = u->var(VarKind::P, kMinus, "u");

    // f = i + c0 q:u- p:v+ is the linear change q_v -> q_v + c0 q_u, p_u -> p_u - c0 p_v;
    // the homotopy is c1 q:y- p:x+ and g- = p:v- + c2 {h-, q:y- p:x-}
    struct Pieces {
        AlgElement h_minus, f, g, g_minus;
    };
    auto build = [&](const std::vector<Scalar>& cs) {
        const Rational c0 = cs[0].constant_term();
        const AlgElement el_v = parse_element(u, "q:v-", Space::Any, tr);
        const AlgElement el_u = parse_element(u, "q:u-", Space::Any, tr);
        const AlgElement pl_u = parse_element(u, "p:u-", Space::Any, tr);
        const AlgElement pl_v = parse_element(u, "p:v-", Space::Any, tr);
        AlgElement hm = substitute(h_base, {{qv, el_v + el_u.scaled(c0)}, {pu, pl_u - pl_v.scaled(c0)}});
        return Pieces{hm, i + parse_element(u, "q:u-*p:v+", Space::Any, tr).scaled(c0),
                      parse_element(u, "q:y-*p:x+", Space::Any, tr).scaled(cs[1]),
                      pl_v + bracket(hm, k_hat).scaled(cs[2])};
    };
    std::size_t tried = 0;
    auto hit = search({integers(1, 3, true), integers(-2, 2, true), integers(-2, 2, true)},
                      [&](const std::vector<Scalar>& cs) {
                          const Pieces x = build(cs);
                          const Potential f(x.f, kPlus, kMinus);
                          if (!master_ok(x.h_minus) || !chain_ok(f, h_plus, x.h_minus)) return false;
                          try {
                              return check_order_homotopy(f, x.g, h_plus, x.h_minus, g_plus, x.g_minus);
                          } catch (const Error&) {
                              return false;
                          }
                      },
                      tried);
    if (!hit) no_hit("order homotopy");
    const Pieces x = build(*hit);
    c.elements.push_back({"h_plus", Space::Hamiltonian, {}, {}, h_plus});
    c.elements.push_back({"h_minus", Space::Hamiltonian, {}, {}, x.h_minus});
    c.elements.push_back({"f", Space::Potential, {}, std::make_pair(kPlus, kMinus), x.f});
    c.elements.push_back({"g_plus", Space::Any, {}, {}, g_plus});
    c.elements.push_back({"g_minus", Space::Any, {}, {}, x.g_minus});
    c.elements.push_back({"g", Space::Any, {}, {}, x.g});
    return {"order.ctx", "(f) hat Hamiltonians on both ends, chain map f and order homotopy g from g_plus to g_minus; "
                         "searched " + std::to_string(tried) + " assignments", c};
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: zoo_search <output-dir>\n";
        return 2;
    }
    const std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    try {
        for (const auto& make : {trivial_fixture, hat_fixture, exact_fixture, novikov_fixture, augmentation_fixture,
                                 order_fixture}) {
            write(dir, make());
        }
    } catch (const std::exception& e) {
        std::cerr << "zoo_search: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
