#include <symchain/expr.hpp>

#include <cctype>

namespace symchain {

namespace {

// expr    := term (('+' | '-') term)*
// term    := unary ('*' unary)*
// unary   := ('-' | '+') unary | power
// power   := primary ('^' literal)?
// primary := literal | name | '(' expr ')'
// literal := digits ('/' digits)?
class Parser {
public:
    Parser(std::string_view text, const VarTablePtr& vars) : text_(text), vars_(vars) {}

    Expression parse() {
        skip_space();
        if (at_end()) throw ParseError("empty expression", pos_);
        Expression e = parse_sum();
        skip_space();
        if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return e;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expression parse_sum() {
        Expression e = parse_product();
        for (;;) {
            if (accept('+')) {
                e += parse_product();
            } else if (accept('-')) {
                e -= parse_product();
            } else {
                return e;
            }
        }
    }

    Expression parse_product() {
        Expression e = parse_unary();
        while (accept('*')) e *= parse_unary();
        return e;
    }

    Expression parse_unary() {
        if (accept('-')) return -parse_unary();
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    Expression parse_power() {
        Expression base = parse_primary();
        if (!accept('^')) return base;
        skip_space();
        const std::size_t at = pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            if (!at_end() && text_[pos_] == '-') throw ParseError("negative exponent", at);
            throw ParseError("exponent must be a nonnegative integer literal", at);
        }
        Rational k = parse_literal();
        if (k.get_den() != 1) throw ParseError("non-integer exponent", at);
        if (!k.get_num().fits_uint_p()) throw ParseError("exponent too large", at);
        return pow(base, static_cast<unsigned>(k.get_num().get_ui()));
    }

    Expression parse_primary() {
        skip_space();
        if (at_end()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Expression(vars_, parse_literal());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
            auto name = text_.substr(start, pos_ - start);
            auto index = vars_->find(name);
            if (!index) throw ParseError("unknown variable '" + std::string(name) + "'", start);
            return Expression::variable(vars_, *index);
        }
        if (c == '(') {
            ++pos_;
            Expression e = parse_sum();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    Rational parse_literal() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t from = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return pos_ > from;
        };
        digits();
        if (!at_end() && text_[pos_] == '/') {
            ++pos_;
            if (!digits()) throw ParseError("malformed rational literal", start);
        }
        try {
            return parse_rational(text_.substr(start, pos_ - start));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), start);
        }
    }

    std::string_view text_;
    const VarTablePtr& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text, const VarTablePtr& vars) {
    return Parser(text, vars).parse();
}

}  // namespace symchain
