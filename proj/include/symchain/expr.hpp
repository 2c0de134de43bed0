#pragma once

#include <symchain/rational.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace symchain {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownVariable : public std::invalid_argument {
public:
    explicit UnknownVariable(const std::string& name);
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Raised when linear-span reduction is asked to handle a nonlinear input.
class NonlinearReduction : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// `[A-Za-z_][A-Za-z0-9_]*`
bool is_valid_name(std::string_view name);

/// Ordered, duplicate-free list of variable names. The order fixes the
/// monomial order used for canonical printing and for pivot selection.
class VarTable {
public:
    explicit VarTable(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws UnknownVariable.
    std::size_t index(std::string_view name) const;

    friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> lookup_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

VarTablePtr make_vars(std::vector<std::string> names);

/// True when both pointers name the same variable list.
bool same_vars(const VarTablePtr& a, const VarTablePtr& b);

using Exponents = std::vector<unsigned>;

/// Graded lexicographic order, greatest first: higher total degree wins,
/// ties go to the larger exponent on the earliest differing variable.
struct GradedLexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
class Expression {
public:
    using Terms = std::map<Exponents, Rational, GradedLexGreater>;

    explicit Expression(VarTablePtr vars);
    Expression(VarTablePtr vars, const Rational& constant);

    static Expression variable(VarTablePtr vars, std::size_t index);
    static Expression variable(VarTablePtr vars, std::string_view name);
    /// `coeffs` has one entry per variable followed by the constant term.
    static Expression from_linear(VarTablePtr vars, std::span<const Rational> coeffs);

    const VarTablePtr& vars() const noexcept { return vars_; }
    const Terms& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    unsigned total_degree() const;
    unsigned degree_in(std::size_t var) const;
    bool is_linear() const { return total_degree() <= 1; }
    bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

    /// Per-variable coefficients followed by the constant term.
    /// Throws NonlinearReduction for degree > 1.
    std::vector<Rational> linear_coefficients() const;

    /// Coefficient of the greatest monomial; zero for the zero expression.
    Rational leading_coefficient() const;
    /// Scaled so the leading coefficient is +1 (zero stays zero).
    Expression monic() const;

    void add_term(const Exponents& exps, const Rational& coeff);

    Expression operator-() const;
    Expression& operator+=(const Expression& rhs);
    Expression& operator-=(const Expression& rhs);
    Expression& operator*=(const Expression& rhs);
    Expression& operator*=(const Rational& k);

    friend Expression operator+(Expression a, const Expression& b) { return a += b; }
    friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
    friend Expression operator*(Expression a, const Expression& b) { return a *= b; }
    friend Expression operator*(Expression a, const Rational& k) { return a *= k; }
    friend Expression operator*(const Rational& k, Expression a) { return a *= k; }

    friend bool operator==(const Expression& a, const Expression& b);

    /// Canonical text: monomials in graded-lex order, reduced fractions,
    /// e.g. "x*z + y*z + p_x*p_y", "-1/2*x^2 + 3". Parses back to *this.
    std::string to_string() const;

private:
    void check_same(const Expression& other) const;

    VarTablePtr vars_;
    Terms terms_;
};

Expression parse_expression(std::string_view text, const VarTablePtr& vars);

Expression differentiate(const Expression& e, std::size_t var);
Expression differentiate(const Expression& e, std::string_view var);

using Assignment = std::map<std::string, Rational, std::less<>>;

/// Throws std::invalid_argument naming the first unassigned variable that
/// actually occurs in `e`.
Rational evaluate(const Expression& e, const Assignment& point);
/// `point[i]` is the value of variable i.
Rational evaluate(const Expression& e, std::span<const Rational> point);

Expression pow(const Expression& base, unsigned exponent);
Expression substitute(const Expression& e, std::size_t var, const Expression& value);

/// Re-expresses `e` over `target` by variable name. Throws UnknownVariable
/// if `e` uses a variable missing from `target`.
Expression rebase(const Expression& e, const VarTablePtr& target);

/// Incrementally maintained reduced row-echelon basis of affine-linear
/// expressions. Columns are the variables in table order, then the constant.
class LinearSpan {
public:
    explicit LinearSpan(VarTablePtr vars);

    /// Adds `e` if it is independent of the current span; returns whether it
    /// was added. Throws NonlinearReduction.
    bool insert(const Expression& e);
    /// Canonical remainder: zero iff `e` lies in the span.
    Expression reduce(const Expression& e) const;
    bool contains(const Expression& e) const { return reduce(e).is_zero(); }

    std::size_t dimension() const noexcept { return rows_.size(); }
    /// RREF rows ordered by pivot column, each with pivot coefficient 1.
    std::vector<Expression> basis() const;

    friend bool operator==(const LinearSpan& a, const LinearSpan& b);

private:
    std::vector<Rational> reduce_coeffs(std::vector<Rational> v) const;

    VarTablePtr vars_;
    std::map<std::size_t, std::vector<Rational>> rows_;  // pivot column -> row
};

/// Canonical remainder of the linear `e` modulo the span of `basis`.
/// Throws NonlinearReduction if any input has degree > 1, and
/// std::invalid_argument for a zero basis member.
Expression reduce_modulo_linear(const Expression& e, const std::vector<Expression>& basis);

}  // namespace symchain
