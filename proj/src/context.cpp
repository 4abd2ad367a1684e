#include "rsft/context.hpp"

#include "rsft/error.hpp"
#include "rsft/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace rsft {

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool valid_name(const std::string& s)
{
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct Line {
    int number;
    std::string text;
};

/// Splits "a b key=value ..." into whitespace-separated tokens with columns.
struct Token {
    std::string text;
    int column;
};

std::vector<Token> tokens(const std::string& s, int base_column)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size()) break;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        out.push_back({s.substr(i, j - i), base_column + static_cast<int>(i)});
        i = j;
    }
    return out;
}

std::optional<SideId> parse_end(const std::string& s)
{
    if (s == "0") return kNoSide;
    if (s == "+") return kPlus;
    if (s == "-") return kMinus;
    return std::nullopt;
}

std::optional<Space> parse_space(const std::string& s)
{
    for (Space sp : {Space::Any, Space::Algebra, Space::Hamiltonian, Space::Potential, Space::Augmentation}) {
        if (s == space_name(sp)) return sp;
    }
    return std::nullopt;
}

long parse_long(const Token& t, const std::string& value, int line)
{
    try {
        std::size_t used = 0;
        long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(ErrorCode::SyntaxError, "expected an integer in '" + t.text + "'", line, t.column);
    }
}

Rational parse_rat(const Token& t, const std::string& value, int line)
{
    try {
        return parse_rational(value);
    } catch (const Error&) {
        throw ParseError(ErrorCode::SyntaxError, "expected a rational in '" + t.text + "'", line, t.column);
    }
}

struct PendingElement {
    int line;
    int column; ///< column where the expression starts
    std::string kind;
    struct {
        std::string name;
        Space space = Space::Any;
        std::optional<int> degree;
        std::optional<std::pair<SideId, SideId>> ends;
    } header;
    std::string expr;
};

} // namespace

std::string end_label(SideId s)
{
    switch (s) {
    case kNoSide: return "0";
    case kPlus: return "+";
    case kMinus: return "-";
    default: return std::to_string(static_cast<int>(s));
    }
}

bool Context::has(std::string_view name) const
{
    return std::any_of(elements.begin(), elements.end(), [&](const NamedElement& e) { return e.name == name; });
}

const NamedElement& Context::entry(std::string_view name) const
{
    for (const auto& e : elements) {
        if (e.name == name) return e;
    }
    throw Error(ErrorCode::InvalidArgument, "context has no element named '" + std::string(name) + "'");
}

Potential Context::potential(std::string_view name) const
{
    const auto& e = entry(name);
    if (!e.ends) throw Error(ErrorCode::InvalidArgument, "'" + std::string(name) + "' is not declared as a potential");
    return Potential(e.value, e.ends->first, e.ends->second);
}

Context parse_context(std::string_view text)
{
    Context ctx;
    std::optional<int> n;
    GeneratorTable tables[3];
    std::vector<TVariable> tvars;
    std::vector<PendingElement> pending;
    bool have_cutoff = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string raw(text.substr(pos, end - pos));
        pos = end + 1;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw = raw.substr(0, hash);
        if (trim(raw).empty()) {
            if (end == text.size()) break;
            continue;
        }
        auto eq = raw.find('=');
        auto toks = tokens(raw, 1);
        const Token& head = toks.front();
        const bool is_decl = head.text == "generator" || head.text == "tvar";
        const bool is_elem = head.text == "element" || head.text == "potential";
        if (!is_decl && !is_elem) {
            if (eq == std::string::npos) {
                throw ParseError(ErrorCode::SyntaxError, "expected 'key = value'", line_no, head.column);
            }
            std::string key = trim(raw.substr(0, eq));
            std::string value = trim(raw.substr(eq + 1));
            Token vt{value, static_cast<int>(eq) + 2};
            if (key == "ring") {
                if (value == "rational") ctx.ring = Ring::Rational;
                else if (value == "novikov") ctx.ring = Ring::Novikov;
                else throw ParseError(ErrorCode::SyntaxError, "ring must be 'rational' or 'novikov'", line_no, vt.column);
            } else if (key == "energy_cutoff") {
                ctx.energy = parse_rat(vt, value, line_no);
                if (*ctx.energy <= 0) throw ParseError(ErrorCode::SyntaxError, "energy_cutoff must be positive", line_no, vt.column);
                have_cutoff = true;
            } else if (key == "N") {
                n = static_cast<int>(parse_long(vt, value, line_no));
            } else if (key == "pmax") {
                ctx.pmax = static_cast<int>(parse_long(vt, value, line_no));
                if (ctx.pmax < 0) throw ParseError(ErrorCode::SyntaxError, "pmax must be nonnegative", line_no, vt.column);
            } else {
                throw ParseError(ErrorCode::SyntaxError, "unknown setting '" + key + "'", line_no, head.column);
            }
            continue;
        }
        if (is_decl) {
            if (toks.size() < 2 || !valid_name(toks[1].text)) {
                throw ParseError(ErrorCode::SyntaxError, "expected a name after '" + head.text + "'", line_no,
                                 toks.size() < 2 ? head.column : toks[1].column);
            }
            std::map<std::string, std::pair<std::string, Token>> kv;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                auto e = toks[i].text.find('=');
                if (e == std::string::npos || e == 0) {
                    throw ParseError(ErrorCode::SyntaxError, "expected key=value", line_no, toks[i].column);
                }
                kv.emplace(toks[i].text.substr(0, e), std::make_pair(toks[i].text.substr(e + 1), toks[i]));
            }
            auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, Token>> {
                auto it = kv.find(key);
                if (it == kv.end()) return std::nullopt;
                auto v = it->second;
                kv.erase(it);
                return v;
            };
            if (head.text == "tvar") {
                auto deg = take("deg");
                if (!deg) throw ParseError(ErrorCode::SyntaxError, "tvar needs deg=", line_no, head.column);
                tvars.push_back({toks[1].text, static_cast<int>(parse_long(deg->second, deg->first, line_no))});
            } else {
                Generator g;
                g.name = toks[1].text;
                auto qdeg = take("qdeg");
                if (!qdeg) throw ParseError(ErrorCode::SyntaxError, "generator needs qdeg=", line_no, head.column);
                g.qdeg = static_cast<int>(parse_long(qdeg->second, qdeg->first, line_no));
                if (auto k = take("kappa")) {
                    g.kappa = parse_long(k->second, k->first, line_no);
                    if (g.kappa < 1) throw ParseError(ErrorCode::SyntaxError, "kappa must be at least 1", line_no, k->second.column);
                }
                if (auto a = take("action")) g.action = parse_rat(a->second, a->first, line_no);
                std::vector<SideId> ends{kNoSide};
                if (auto e = take("ends")) {
                    ends.clear();
                    std::stringstream ss(e->first);
                    std::string item;
                    while (std::getline(ss, item, ',')) {
                        auto s = parse_end(item);
                        if (!s) throw ParseError(ErrorCode::SyntaxError, "ends must list 0, + or -", line_no, e->second.column);
                        ends.push_back(*s);
                    }
                }
                for (SideId s : ends) {
                    if (tables[s].find(g.name)) {
                        throw ParseError(ErrorCode::SyntaxError, "generator '" + g.name + "' declared twice on end " + end_label(s),
                                         line_no, toks[1].column);
                    }
                    tables[s].add(g);
                }
            }
            if (!kv.empty()) {
                const auto& t = kv.begin()->second.second;
                throw ParseError(ErrorCode::SyntaxError, "unknown key '" + kv.begin()->first + "'", line_no, t.column);
            }
            continue;
        }
        // element/potential NAME [annotations] = EXPR; the separating '=' has
        // whitespace on at least one side, unlike key=value annotations
        eq = std::string::npos;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '=') continue;
            bool before = i == 0 || std::isspace(static_cast<unsigned char>(raw[i - 1]));
            bool after = i + 1 >= raw.size() || std::isspace(static_cast<unsigned char>(raw[i + 1]));
            if (before || after) {
                eq = i;
                break;
            }
        }
        if (eq == std::string::npos) throw ParseError(ErrorCode::SyntaxError, "expected '=' and an expression", line_no, head.column);
        auto lhs = tokens(raw.substr(0, eq), 1);
        if (lhs.size() < 2 || !valid_name(lhs[1].text)) {
            throw ParseError(ErrorCode::SyntaxError, "expected a name after '" + head.text + "'", line_no,
                             lhs.size() < 2 ? head.column : lhs[1].column);
        }
        PendingElement pe{line_no, static_cast<int>(eq) + 2, head.text, {}, raw.substr(eq + 1)};
        pe.header.name = lhs[1].text;
        for (std::size_t i = 2; i < lhs.size(); ++i) {
            const auto& t = lhs[i];
            if (t.text.rfind("deg=", 0) == 0) {
                pe.header.degree = static_cast<int>(parse_long(t, t.text.substr(4), line_no));
            } else if (head.text == "potential" && t.text.find("->") != std::string::npos) {
                auto arrow = t.text.find("->");
                auto src = parse_end(t.text.substr(0, arrow));
                auto tgt = parse_end(t.text.substr(arrow + 2));
                if (!src || !tgt || *src == *tgt) {
                    throw ParseError(ErrorCode::SyntaxError, "expected ends like '+->-'", line_no, t.column);
                }
                pe.header.ends = std::make_pair(*src, *tgt);
            } else if (auto sp = parse_space(t.text); sp && head.text == "element") {
                pe.header.space = *sp;
            } else {
                throw ParseError(ErrorCode::SyntaxError, "unexpected annotation '" + t.text + "'", line_no, t.column);
            }
        }
        if (head.text == "potential") {
            if (!pe.header.ends) throw ParseError(ErrorCode::SyntaxError, "potential needs ends like '+->-'", line_no, head.column);
            pe.header.space = Space::Potential;
        }
        if (ctx.has(pe.header.name) ||
            std::any_of(pending.begin(), pending.end(), [&](const PendingElement& p) { return p.header.name == pe.header.name; })) {
            throw ParseError(ErrorCode::SyntaxError, "element '" + pe.header.name + "' defined twice", line_no, lhs[1].column);
        }
        pending.push_back(std::move(pe));
    }

    if (!n) throw ParseError(ErrorCode::SyntaxError, "missing 'N = <int>'", 1, 1);
    if (ctx.ring == Ring::Novikov && !have_cutoff) {
        throw ParseError(ErrorCode::SyntaxError, "ring = novikov needs energy_cutoff", 1, 1);
    }
    if (ctx.ring == Ring::Rational && have_cutoff) {
        throw ParseError(ErrorCode::SyntaxError, "energy_cutoff only applies to ring = novikov", 1, 1);
    }
    ctx.universe = Universe::cobordism(*n, tables[kNoSide], tables[kPlus], tables[kMinus], tvars);
    for (auto& pe : pending) {
        NamedElement e{pe.header.name, pe.header.space, pe.header.degree, pe.header.ends,
                       parse_element(ctx.universe, pe.expr, pe.header.space, ctx.truncation(), pe.line, pe.column)};
        if (ctx.ring == Ring::Rational && e.value.has_novikov()) {
            throw ParseError(ErrorCode::SyntaxError, "L^a factors need ring = novikov", pe.line, pe.column);
        }
        std::optional<int> expected = e.degree;
        if (e.space == Space::Hamiltonian) expected = 2 * *n - 1;
        if (e.space == Space::Potential || e.space == Space::Augmentation) expected = 2 * *n;
        if (e.degree && expected && *e.degree != *expected) {
            throw ParseError(ErrorCode::DegreeAnnotationMismatch, "annotation deg=" + std::to_string(*e.degree) +
                                                                      " contradicts the space " + space_name(e.space),
                             pe.line, 1);
        }
        if (expected && !e.value.is_zero()) {
            auto d = e.value.degree();
            if (!d || *d != *expected) {
                throw ParseError(ErrorCode::DegreeAnnotationMismatch,
                                 "'" + e.name + "' is not homogeneous of degree " + std::to_string(*expected), pe.line,
                                 pe.column);
            }
        }
        ctx.elements.push_back(std::move(e));
    }
    return ctx;
}

std::string print_context(const Context& c)
{
    std::ostringstream os;
    os << "ring = " << (c.ring == Ring::Novikov ? "novikov" : "rational") << '\n';
    if (c.energy) os << "energy_cutoff = " << rational_str(*c.energy) << '\n';
    os << "N = " << c.universe->N() << '\n';
    if (c.pmax != Truncation::kUnbounded) os << "pmax = " << c.pmax << '\n';
    // generators in first-declaration order, grouped across ends
    struct Decl {
        Generator g;
        std::vector<SideId> ends;
    };
    std::vector<Decl> decls;
    for (SideId s : {kNoSide, kPlus, kMinus}) {
        for (const auto& g : c.universe->table(s).generators()) {
            auto it = std::find_if(decls.begin(), decls.end(), [&](const Decl& d) {
                return d.g.name == g.name && d.g.qdeg == g.qdeg && d.g.kappa == g.kappa && d.g.action == g.action;
            });
            if (it == decls.end()) decls.push_back({g, {s}});
            else it->ends.push_back(s);
        }
    }
    for (const auto& d : decls) {
        os << "generator " << d.g.name << " qdeg=" << d.g.qdeg << " kappa=" << d.g.kappa;
        if (d.g.action) os << " action=" << rational_str(*d.g.action);
        if (!(d.ends.size() == 1 && d.ends[0] == kNoSide)) {
            os << " ends=";
            for (std::size_t i = 0; i < d.ends.size(); ++i) os << (i ? "," : "") << end_label(d.ends[i]);
        }
        os << '\n';
    }
    for (const auto& t : c.universe->tvars()) os << "tvar " << t.name << " deg=" << t.degree << '\n';
    for (const auto& e : c.elements) {
        if (e.ends) {
            os << "potential " << e.name << ' ' << end_label(e.ends->first) << "->" << end_label(e.ends->second);
        } else {
            os << "element " << e.name;
            if (e.space != Space::Any) os << ' ' << space_name(e.space);
        }
        if (e.degree) os << " deg=" << *e.degree;
        os << " = " << e.value.str() << '\n';
    }
    return os.str();
}

} // namespace rsft
