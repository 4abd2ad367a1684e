#include "rsft/parse.hpp"

#include "rsft/coalgebra.hpp"
#include "rsft/error.hpp"

#include <cctype>

namespace rsft {

namespace {

class ElementParser {
public:
    ElementParser(const UniversePtr& u, std::string_view text, const Truncation& trunc, int line, int column)
        : u_(u), text_(text), trunc_(trunc), line_(line), column_(column)
    {
    }

    AlgElement run()
    {
        AlgElement x = expr();
        skip_space();
        if (pos_ != text_.size()) fail(ErrorCode::SyntaxError, "unexpected '" + std::string(1, text_[pos_]) + "'");
        return x;
    }

    /// word_sum := ['-'|'+'] word_term (('+'|'-') word_term)*, where a word
    /// term is products joined by "(+)"; "1l" is the constant factor and "()"
    /// the empty word.
    TensorWord run_word()
    {
        words_ = true;
        skip_space();
        TensorWord acc(u_, trunc_.energy);
        bool negate = false;
        if (peek('-')) {
            negate = true;
            ++pos_;
        } else if (peek('+')) {
            ++pos_;
        }
        TensorWord first = word_term();
        acc += negate ? -first : first;
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c != '+' && c != '-') fail(ErrorCode::SyntaxError, "unexpected '" + std::string(1, c) + "'");
            ++pos_;
            TensorWord t = word_term();
            acc += c == '-' ? -t : t;
        }
        return acc;
    }

private:
    TensorWord word_term()
    {
        std::vector<AlgElement> factors;
        bool unit = false;
        while (true) {
            unit_seen_ = false;
            factors.push_back(product());
            if (unit_seen_) unit = true;
            skip_space();
            if (text_.substr(pos_, 3) != "(+)") break;
            pos_ += 3;
        }
        if (unit) {
            if (factors.size() != 1) fail(ErrorCode::SyntaxError, "the empty word '()' cannot be a factor");
            TensorWord w(u_, trunc_.energy);
            for (const auto& [m, c] : factors[0].terms()) {
                for (const auto& pw : m.powers()) {
                    if (!u_->is_t(pw.var)) fail(ErrorCode::SyntaxError, "the empty word takes only scalar and t factors");
                }
                w.add(m, {}, c);
            }
            return w;
        }
        return TensorWord::word(factors);
    }

    [[noreturn]] void fail(ErrorCode code, const std::string& msg, std::size_t at) const
    {
        int line = line_;
        int col = column_;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(code, msg, line, col);
    }
    [[noreturn]] void fail(ErrorCode code, const std::string& msg) const { fail(code, msg, pos_); }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c)
    {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool operand_starts_at(std::size_t i) const
    {
        while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
        if (i >= text_.size()) return false;
        char c = text_[i];
        if (c == '(') return text_.substr(i, 3) != "(+)";
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    AlgElement constant(const Scalar& s) const { return AlgElement::constant(u_, s, Space::Any, trunc_); }

    AlgElement expr()
    {
        skip_space();
        AlgElement acc(u_, Space::Any, trunc_);
        bool negate = false;
        if (peek('-')) {
            negate = true;
            ++pos_;
        } else if (peek('+')) {
            ++pos_;
        }
        AlgElement first = product();
        acc += negate ? -first : first;
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c != '+' && c != '-') break;
            ++pos_;
            AlgElement t = product();
            acc += c == '-' ? -t : t;
        }
        return acc;
    }

    AlgElement product()
    {
        AlgElement acc = power();
        while (peek('*')) {
            ++pos_;
            acc = acc * power();
        }
        return acc;
    }

    AlgElement power()
    {
        std::size_t start = pos_;
        auto [base, single_var] = primary();
        if (!peek('^')) return base;
        ++pos_;
        skip_space();
        std::size_t exp_start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (exp_start == pos_) fail(ErrorCode::SyntaxError, "expected a nonnegative integer exponent");
        unsigned long e = std::stoul(std::string(text_.substr(exp_start, pos_ - exp_start)));
        if (e > 4096) fail(ErrorCode::SyntaxError, "exponent too large", exp_start);
        if (single_var && u_->odd(*single_var) && e >= 2) {
            fail(ErrorCode::OddPowerViolation, "odd variable " + u_->var_name(*single_var) + " raised to power " +
                                                   std::to_string(e), start);
        }
        return rsft::power(base, static_cast<unsigned>(e));
    }

    Rational rational_literal()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail(ErrorCode::SyntaxError, "expected a number");
        if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        std::string lit(text_.substr(start, pos_ - start));
        try {
            return parse_rational(lit);
        } catch (const Error& e) {
            fail(ErrorCode::SyntaxError, "bad rational literal '" + lit + "'", start);
        }
    }

    std::pair<AlgElement, std::optional<VarId>> primary()
    {
        skip_space();
        if (pos_ >= text_.size()) fail(ErrorCode::SyntaxError, "unexpected end of expression");
        char c = text_[pos_];
        if (words_ && text_.substr(pos_, 2) == "()") {
            pos_ += 2;
            unit_seen_ = true;
            return {constant(Scalar(1)), std::nullopt};
        }
        if (words_ && text_.substr(pos_, 2) == "1l" &&
            (pos_ + 2 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 2])))) {
            pos_ += 2;
            return {constant(Scalar(1)), std::nullopt};
        }
        if (c == '(') {
            if (text_.substr(pos_, 3) == "(+)") fail(ErrorCode::SyntaxError, "missing factor before '(+)'");
            ++pos_;
            AlgElement x = expr();
            if (!peek(')')) fail(ErrorCode::SyntaxError, "expected ')'");
            ++pos_;
            return {x, std::nullopt};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return {constant(Scalar(rational_literal())), std::nullopt};
        if (c == 'L' && (pos_ + 1 >= text_.size() || text_[pos_ + 1] != ':')) {
            ++pos_;
            Rational e = 1;
            if (peek('^')) {
                ++pos_;
                e = rational_literal();
            }
            return {constant(Scalar::monomial(1, e)), std::nullopt};
        }
        if ((c == 'q' || c == 'p' || c == 't') && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':') {
            std::size_t start = pos_;
            pos_ += 2;
            std::size_t name_start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(text_.substr(name_start, pos_ - name_start));
            if (name.empty()) fail(ErrorCode::SyntaxError, "expected a name after '" + std::string(1, c) + ":'");
            if (c == 't') {
                auto idx = u_->find_tvar(name);
                if (!idx) fail(ErrorCode::UnknownGenerator, "unknown t-variable '" + name + "'", start);
                VarId v = u_->t(*idx);
                return {AlgElement::variable(u_, v, Space::Any, trunc_), v};
            }
            std::string suffix;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-') &&
                u_->side_by_suffix(std::string(1, text_[pos_])) && !operand_starts_at(pos_ + 1)) {
                suffix = std::string(1, text_[pos_]);
                ++pos_;
            }
            auto side = u_->side_by_suffix(suffix);
            if (!side) fail(ErrorCode::UnknownGenerator, "no end with suffix '" + suffix + "'", start);
            auto g = u_->table(*side).find(name);
            if (!g) fail(ErrorCode::UnknownGenerator, "unknown generator '" + name + suffix + "'", start);
            VarId v = c == 'q' ? u_->q(*side, *g) : u_->p(*side, *g);
            return {AlgElement::variable(u_, v, Space::Any, trunc_), v};
        }
        fail(ErrorCode::SyntaxError, "unexpected '" + std::string(1, c) + "'");
    }

    UniversePtr u_;
    std::string_view text_;
    Truncation trunc_;
    int line_;
    int column_;
    std::size_t pos_ = 0;
    bool words_ = false;
    bool unit_seen_ = false;
};

} // namespace

TensorWord parse_word(const UniversePtr& u, std::string_view text, const Truncation& trunc, int line, int column)
{
    return ElementParser(u, text, trunc, line, column).run_word();
}

AlgElement parse_element(const UniversePtr& u, std::string_view text, Space space, const Truncation& trunc, int line,
                         int column)
{
    return ElementParser(u, text, trunc, line, column).run().with_space(space);
}

} // namespace rsft
