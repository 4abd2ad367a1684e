// Batch front-end for the rsft kernel.
//
//   rsft <command> --context <file> [flags]
//
// Element flags take either a name declared in the context or an inline
// expression. Exit status: 0 success, 1 a verification failed, 2 bad input.

#include "rsft/context.hpp"
#include "rsft/error.hpp"
#include "rsft/invariants.hpp"
#include "rsft/linearize.hpp"
#include "rsft/mctwist.hpp"
#include "rsft/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace rsft;
using json = nlohmann::ordered_json;

namespace {

struct Flags {
    std::string context;
    std::string output = "json";
    std::size_t kmax = 4;
    std::optional<int> pmax;
    std::size_t qlen_max = 6;
    std::vector<std::string> energy_levels;
    std::size_t cutoff_words = 4;
    bool wallclock = false;
    std::string side;

    std::string h = "h", h_plus = "h_plus", h_minus = "h_minus";
    std::string f = "f", f_plus = "f_plus", f_minus = "f_minus";
    std::string g = "g", g_plus = "g_plus", g_minus = "g_minus";
    std::string a = "a", x, y, word, t;
    std::size_t k = 1;
    int rmax = 4, smax = 4;
    std::size_t max_inputs = 3;
    int degree_lo = 0, degree_hi = 0;
    std::string complex = "algebra";
    bool with_order = false;
};

class Session {
public:
    Session(const Flags& flags) : flags_(flags)
    {
        std::ifstream in(flags.context);
        if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read context file '" + flags.context + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        ctx_ = parse_context(ss.str());
        if (flags.pmax) {
            if (*flags.pmax < 0) throw Error(ErrorCode::InvalidArgument, "pmax must be nonnegative");
            ctx_.pmax = *flags.pmax;
        }
        for (const auto& e : flags.energy_levels) levels_.push_back(parse_rational(e));
    }

    const Context& ctx() const { return ctx_; }
    const UniversePtr& u() const { return ctx_.universe; }
    const std::vector<Rational>& levels() const { return levels_; }

    AlgElement element(const std::string& flag, const std::string& text)
    {
        if (text.empty()) throw Error(ErrorCode::InvalidArgument, "--" + flag + " is required");
        AlgElement x = ctx_.has(text) ? ctx_.element(text).with_truncation(ctx_.truncation())
                                      : parse_element(u(), text, Space::Any, ctx_.truncation());
        inputs_[flag] = text == x.str() ? json(text) : json{{"name", text}, {"value", x.str()}};
        return x;
    }

    Potential potential(const std::string& flag, const std::string& name)
    {
        Potential p = ctx_.potential(name);
        inputs_[flag] = {{"name", name}, {"value", p.element().str()}, {"ends", end_label(p.source()) + "->" +
                                                                                    end_label(p.target())}};
        return Potential(p.element().with_truncation(ctx_.truncation()), p.source(), p.target());
    }

    TensorWord word(const std::string& flag, const std::string& text)
    {
        if (text.empty()) throw Error(ErrorCode::InvalidArgument, "--" + flag + " is required");
        inputs_[flag] = text;
        return parse_word(u(), text, ctx_.truncation());
    }

    /// --side if given, otherwise the single end the element lives on.
    std::optional<SideId> side_of(const AlgElement& x) const
    {
        if (!flags_.side.empty()) {
            auto s = u()->side_by_suffix(flags_.side == "0" ? "" : flags_.side);
            if (!s) throw Error(ErrorCode::InvalidArgument, "unknown end '" + flags_.side + "'");
            return s;
        }
        if (u()->side_count() == 1) return kNoSide;
        std::set<SideId> seen;
        for (const auto& [m, c] : x.terms()) {
            for (const auto& pw : m.powers()) {
                if (!u()->is_t(pw.var)) seen.insert(u()->info(pw.var).side);
            }
        }
        if (seen.size() == 1) return *seen.begin();
        return std::nullopt;
    }

    SearchBounds bounds() const { return SearchBounds{flags_.kmax, flags_.qlen_max, levels_}; }

    json inputs() const
    {
        json in{{"context", flags_.context}};
        for (const auto& [k, v] : inputs_.items()) in[k] = v;
        return in;
    }

private:
    const Flags& flags_;
    Context ctx_;
    std::vector<Rational> levels_;
    json inputs_ = json::object();
};

/// Fields of a command report besides the common header.
struct Outcome {
    json fields = json::object();
    bool ok = true;
    bool truncated = false;
};

std::string status_name(SearchStatus s) { return s == SearchStatus::Found ? "found" : "unknown"; }

json search_json(const SearchResult& r)
{
    json j{{"status", status_name(r.status)}};
    if (r.status == SearchStatus::Found) {
        j["value"] = r.value;
        j["certificate"] = r.certificate->str();
        j["verified"] = r.verified;
    }
    j["k_searched"] = r.k_searched;
    if (r.level) j["energy_level"] = rational_str(*r.level);
    return j;
}

void merge(json& into, const json& from)
{
    for (const auto& [k, v] : from.items()) into[k] = v;
}

/// Unknown means the bounds decided the answer.
bool bound_limited(const SearchResult& r) { return r.status == SearchStatus::Unknown; }

json bounds_json(const Flags& fl, const std::vector<Rational>& levels)
{
    json b{{"kmax", fl.kmax}, {"qlen_max", fl.qlen_max}};
    if (!levels.empty()) {
        json l = json::array();
        for (const auto& e : levels) l.push_back(rational_str(e));
        b["energy_levels"] = l;
    }
    return b;
}

EnergyCutoff search_level(const Session& s, const AlgElement& h)
{
    for (const auto& [m, c] : h.terms()) {
        if (!c.is_rational()) return s.ctx().energy;
    }
    return {};
}

Outcome run(const std::string& cmd, Session& s, const Flags& fl)
{
    Outcome o;
    auto& r = o.fields;
    if (cmd == "check-master") {
        AlgElement h = s.element("h", fl.h);
        o.ok = check_master(h);
        AlgElement hh = bracket(h, h);
        r["ok"] = o.ok;
        r["bracket"] = hh.str();
        o.truncated = hh.truncation_active();
    } else if (cmd == "bracket") {
        AlgElement x = s.element("x", fl.x);
        AlgElement y = s.element("y", fl.y);
        AlgElement b = bracket(x, y);
        r["value"] = b.str();
        if (auto d = b.degree()) r["degree"] = *d;
        o.truncated = b.truncation_active();
    } else if (cmd == "coderive") {
        AlgElement h = s.element("h", fl.h);
        TensorWord w = s.word("word", fl.word).with_limits({}, fl.cutoff_words);
        TensorWord d = coderivation(h, w, s.side_of(h));
        r["value"] = d.str();
        o.truncated = d.truncation_active();
    } else if (cmd == "chaincheck") {
        Potential f = s.potential("f", fl.f);
        AlgElement hp = s.element("h_plus", fl.h_plus);
        AlgElement hm = s.element("h_minus", fl.h_minus);
        auto [lp, lm] = chain_map_sides(f, hp, hm);
        o.ok = check_chain_map(f, hp, hm);
        r["ok"] = o.ok;
        r["h_plus_restricted"] = lp.str();
        r["h_minus_restricted"] = lm.str();
        o.truncated = lp.truncation_active() || lm.truncation_active();
    } else if (cmd == "compose") {
        Potential fm = s.potential("f_minus", fl.f_minus);
        Potential fp = s.potential("f_plus", fl.f_plus);
        Potential c = compose(fm, fp);
        r["value"] = c.element().str();
        r["ends"] = end_label(c.source()) + "->" + end_label(c.target());
        o.truncated = c.element().truncation_active();
    } else if (cmd == "apply") {
        Potential f = s.potential("f", fl.f);
        TensorWord w = apply_morphism(f, s.word("word", fl.word), fl.cutoff_words);
        r["value"] = w.str();
        o.truncated = w.truncation_active();
    } else if (cmd == "siegel") {
        Potential f = s.potential("f", fl.f);
        AlgElement t = s.element("t", fl.t);
        if (t.terms().size() != 1) throw Error(ErrorCode::InvalidArgument, "--t must be a single t-monomial");
        TensorWord w = siegel_map(f, t.terms().begin()->first, s.word("word", fl.word), fl.k);
        r["value"] = w.str();
        o.truncated = w.truncation_active();
    } else if (cmd == "mc-check") {
        AlgElement h = s.element("h", fl.h);
        AlgElement a = s.element("a", fl.a);
        o.ok = is_maurer_cartan(a, h, s.ctx().energy, false, s.side_of(h));
        r["ok"] = o.ok;
        o.truncated = s.ctx().energy.has_value();
    } else if (cmd == "twist") {
        AlgElement h = s.element("h", fl.h);
        AlgElement a = s.element("a", fl.a);
        AlgElement ha = twist_hamiltonian(h, a, s.ctx().energy, false, s.side_of(h));
        o.ok = check_master(ha);
        r["value"] = ha.str();
        r["master"] = o.ok;
        o.truncated = s.ctx().energy.has_value() || ha.truncation_active();
    } else if (cmd == "linearize") {
        AlgElement h = s.element("h", fl.h);
        auto side = s.side_of(h);
        o.ok = check_hat(h, side);
        r["hat"] = o.ok;
        if (o.ok) {
            json comps = json::array();
            for (int i = 1; i <= fl.rmax; ++i) {
                for (int j = 1; j <= fl.smax; ++j) {
                    AlgElement c = hat_component(h, i, j, side);
                    if (!c.is_zero()) comps.push_back({{"r", i}, {"s", j}, {"value", c.str()}});
                }
            }
            r["components"] = comps;
            r["linear_part"] = linear_part(h, side).str();
        }
    } else if (cmd == "augment-twist") {
        AlgElement h = s.element("h", fl.h);
        AlgElement fe = s.element("f", fl.f);
        auto side = s.side_of(fe);
        if (!side) throw Error(ErrorCode::InvalidArgument, "cannot tell which end the augmentation lives on");
        Augmentation aug(h, fe, *side);
        AlgElement hf = augmentation_twist(h, aug);
        const bool paths = hf == augmentation_twist_series(h, aug);
        const bool hat = check_hat(hf, side);
        const bool master = check_master(hf);
        o.ok = paths && hat && master;
        r["value"] = hf.str();
        r["paths_agree"] = paths;
        r["hat"] = hat;
        r["master"] = master;
        o.truncated = hf.truncation_active();
    } else if (cmd == "bilie-check") {
        AlgElement h = s.element("h", fl.h);
        BiLieReport rep = check_bilie_relations(h, fl.rmax, fl.smax, fl.max_inputs, s.side_of(h));
        o.ok = rep.ok;
        json comps = json::array();
        for (const auto& c : rep.components) {
            comps.push_back({{"r", c.r}, {"s", c.s}, {"bracket_form", c.bracket_form},
                             {"composite_form", c.composite_form}, {"forms_agree", c.forms_agree}});
            o.ok = o.ok && c.forms_agree;
        }
        r["ok"] = o.ok;
        r["components"] = comps;
        o.truncated = true; // the composite form is sampled on bounded words
    } else if (cmd == "torsion") {
        AlgElement h = s.element("h", fl.h);
        auto side = s.side_of(h);
        if (s.levels().empty()) {
            SearchResult t = torsion(h, s.bounds(), side, search_level(s, h));
            SearchResult tt = torsion_tilde(h, s.bounds(), side, search_level(s, h));
            merge(r, search_json(t));
            r["tilde"] = search_json(tt);
            o.truncated = bound_limited(t) || t.level.has_value();
            o.ok = t.status == SearchStatus::Unknown || t.verified;
        } else {
            json per = json::array();
            for (const auto& t : torsion_by_level(h, s.bounds(), side)) {
                per.push_back(search_json(t));
                o.ok = o.ok && (t.status == SearchStatus::Unknown || t.verified);
            }
            r["levels"] = per;
            o.truncated = true;
        }
        r["bounds"] = bounds_json(fl, s.levels());
    } else if (cmd == "order") {
        AlgElement h = s.element("h", fl.h);
        AlgElement g = s.element("g", fl.g);
        auto side = s.side_of(h);
        SearchResult res = order(h, g, s.bounds(), side);
        merge(r, search_json(res));
        r["kills_boundaries"] = order_kills_boundaries(h, g, s.bounds(), side);
        r["bounds"] = bounds_json(fl, {});
        o.ok = r["kills_boundaries"].get<bool>() && (res.status == SearchStatus::Unknown || res.verified);
        o.truncated = bound_limited(res);
    } else if (cmd == "monotonicity") {
        Potential f = s.potential("f", fl.f);
        AlgElement hp = s.element("h_plus", fl.h_plus);
        AlgElement hm = s.element("h_minus", fl.h_minus);
        std::optional<OrderData> od;
        if (fl.with_order) {
            od = OrderData{s.element("g_plus", fl.g_plus), s.element("g_minus", fl.g_minus), s.element("g", fl.g)};
        }
        MonotonicityReport rep = monotonicity(f, hp, hm, s.bounds(), od);
        r["torsion_plus"] = search_json(rep.torsion_plus);
        r["torsion_minus"] = search_json(rep.torsion_minus);
        r["tilde_plus"] = search_json(rep.tilde_plus);
        r["tilde_minus"] = search_json(rep.tilde_minus);
        if (rep.transported) {
            r["transported"] = rep.transported->str();
            r["transported_verifies"] = rep.transported_verifies;
        }
        r["torsion_monotone"] = rep.torsion_monotone;
        o.ok = rep.torsion_monotone;
        o.truncated = bound_limited(rep.torsion_plus) || bound_limited(rep.torsion_minus);
        if (od) {
            r["order_plus"] = search_json(*rep.order_plus);
            r["order_minus"] = search_json(*rep.order_minus);
            if (rep.order_transported) r["order_transported"] = rep.order_transported->str();
            json chain = json::array();
            for (const auto& v : rep.proof_chain) chain.push_back(v.str());
            r["proof_chain"] = chain;
            r["proof_chain_holds"] = rep.proof_chain_holds;
            r["order_monotone"] = rep.order_monotone;
            o.ok = o.ok && rep.order_monotone && (rep.proof_chain.empty() || rep.proof_chain_holds);
            o.truncated = o.truncated || bound_limited(*rep.order_plus) || bound_limited(*rep.order_minus);
        }
        r["bounds"] = bounds_json(fl, {});
    } else if (cmd == "homology") {
        AlgElement h = s.element("h", fl.h);
        if (fl.complex != "algebra" && fl.complex != "words") {
            throw Error(ErrorCode::InvalidArgument, "--complex is algebra or words");
        }
        HomologyBounds hb{fl.degree_lo, fl.degree_hi, fl.qlen_max, fl.kmax, search_level(s, h)};
        HomologyReport rep =
            homology_window(h, fl.complex == "algebra" ? ComplexKind::Algebra : ComplexKind::Words, hb, s.side_of(h));
        json betti = json::array();
        for (const auto& b : rep.betti) {
            betti.push_back({{"degree", b.degree}, {"chains", b.chains}, {"cycles", b.cycles},
                             {"boundaries", b.boundaries}, {"betti", b.betti}});
        }
        r["complex"] = fl.complex;
        r["betti"] = betti;
        r["closed"] = rep.closed;
        o.truncated = true; // a window is always a truncation
    }
    return o;
}

void print_text(const json& report)
{
    for (const auto& [k, v] : report.items()) {
        if (v.is_string()) {
            std::cout << k << ": " << v.get<std::string>() << '\n';
        } else {
            std::cout << k << ": " << v.dump() << '\n';
        }
    }
}

} // namespace

int main(int argc, char** argv)
{
    Flags fl;
    CLI::App app{"rational SFT algebra kernel"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--context", fl.context, "context file")->required();
    app.add_option("--output", fl.output, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--kmax", fl.kmax, "largest word length searched")->check(CLI::PositiveNumber);
    app.add_option("--pmax", fl.pmax, "p-degree truncation, overrides the context");
    app.add_option("--qlen-max", fl.qlen_max, "largest number of q-letters")->check(CLI::PositiveNumber);
    app.add_option("--energy-levels", fl.energy_levels, "Novikov levels, e.g. 1/2,1,3/2")->delimiter(',');
    app.add_option("--cutoff-words", fl.cutoff_words, "word-length cutoff")->check(CLI::PositiveNumber);
    app.add_flag("--wallclock", fl.wallclock, "report elapsed time (breaks byte-identical output)");
    app.add_option("--side", fl.side, "end to work on: 0, + or -");

    struct Spec {
        const char* name;
        const char* help;
        std::vector<std::pair<const char*, std::string*>> elements;
    };
    const std::vector<Spec> specs{
        {"check-master", "{h,h} = 0", {{"--h", &fl.h}}},
        {"bracket", "{x,y}", {{"--x", &fl.x}, {"--y", &fl.y}}},
        {"coderive", "D_h applied to a word", {{"--h", &fl.h}, {"--word", &fl.word}}},
        {"chaincheck", "h+|L_f = h-|L_f", {{"--f", &fl.f}, {"--h-plus", &fl.h_plus}, {"--h-minus", &fl.h_minus}}},
        {"compose", "composite potential", {{"--f-minus", &fl.f_minus}, {"--f-plus", &fl.f_plus}}},
        {"apply", "Phi_f on a word", {{"--f", &fl.f}, {"--word", &fl.word}}},
        {"siegel", "Siegel map", {{"--f", &fl.f}, {"--t", &fl.t}, {"--word", &fl.word}}},
        {"mc-check", "Maurer-Cartan test", {{"--h", &fl.h}, {"--a", &fl.a}}},
        {"twist", "twisted Hamiltonian h^a", {{"--h", &fl.h}, {"--a", &fl.a}}},
        {"linearize", "components of a hat Hamiltonian", {{"--h", &fl.h}}},
        {"augment-twist", "h_f for an augmentation f", {{"--h", &fl.h}, {"--f", &fl.f}}},
        {"bilie-check", "quadratic relations of m^r_s", {{"--h", &fl.h}}},
        {"torsion", "algebraic torsion", {{"--h", &fl.h}}},
        {"order", "order with respect to g", {{"--h", &fl.h}, {"--g", &fl.g}}},
        {"monotonicity", "torsion and order on both ends of f",
         {{"--f", &fl.f}, {"--h-plus", &fl.h_plus}, {"--h-minus", &fl.h_minus}, {"--g-plus", &fl.g_plus},
          {"--g-minus", &fl.g_minus}, {"--g", &fl.g}}},
        {"homology", "homology in a degree window", {{"--h", &fl.h}}},
    };
    for (const auto& sp : specs) {
        CLI::App* sub = app.add_subcommand(sp.name, sp.help);
        for (const auto& [opt, target] : sp.elements) sub->add_option(opt, *target, "element name or expression");
        const std::string name = sp.name;
        if (name == "siegel") sub->add_option("--k", fl.k, "number of constraints");
        if (name == "linearize" || name == "bilie-check") {
            sub->add_option("--rmax", fl.rmax);
            sub->add_option("--smax", fl.smax);
        }
        if (name == "bilie-check") sub->add_option("--max-inputs", fl.max_inputs);
        if (name == "monotonicity") sub->add_flag("--with-order", fl.with_order, "also run the order comparison");
        if (name == "homology") {
            sub->add_option("--degree-lo", fl.degree_lo);
            sub->add_option("--degree-hi", fl.degree_hi);
            sub->add_option("--complex", fl.complex, "algebra or words");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    const auto start = std::chrono::steady_clock::now();
    json report{{"schema", 1}, {"command", cmd}};
    int status = 0;
    try {
        Session s(fl);
        Outcome o = run(cmd, s, fl);
        report["inputs"] = s.inputs();
        report["truncation_active"] = o.truncated;
        for (const auto& [k, v] : o.fields.items()) report[k] = v;
        status = o.ok ? 0 : 1;
    } catch (const Error& e) {
        report["truncation_active"] = false;
        report["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
        status = 2;
    } catch (const std::exception& e) {
        report["truncation_active"] = false;
        report["error"] = {{"code", "InvalidArgument"}, {"message", e.what()}};
        status = 2;
    }
    if (fl.wallclock) {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        report["wallclock"] = dt.count();
    }
    if (fl.output == "text") {
        print_text(report);
    } else {
        std::cout << report.dump(2) << '\n';
    }
    return status;
}
