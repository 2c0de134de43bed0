#include <symchain/expr.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace symchain {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

UnknownVariable::UnknownVariable(const std::string& name)
    : std::invalid_argument("unknown variable '" + name + "'"), name_(name) {}

bool is_valid_name(std::string_view name) {
    if (name.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front())) return false;
    return std::all_of(name.begin(), name.end(), [&](char c) { return alpha(c) || digit(c); });
}

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!is_valid_name(names_[i])) {
            throw std::invalid_argument("invalid variable name '" + names_[i] + "'");
        }
        if (!lookup_.emplace(names_[i], i).second) {
            throw std::invalid_argument("duplicate variable name '" + names_[i] + "'");
        }
    }
}

std::optional<std::size_t> VarTable::find(std::string_view name) const {
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::size_t VarTable::index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw UnknownVariable(std::string(name));
}

VarTablePtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VarTable>(std::move(names));
}

bool same_vars(const VarTablePtr& a, const VarTablePtr& b) {
    return a == b || (a && b && *a == *b);
}

namespace {

unsigned degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

}  // namespace

bool GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = degree_of(a);
    unsigned db = degree_of(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Expression::Expression(VarTablePtr vars) : vars_(std::move(vars)) {
    if (!vars_) throw std::invalid_argument("expression needs a variable table");
}

Expression::Expression(VarTablePtr vars, const Rational& constant) : Expression(std::move(vars)) {
    add_term(Exponents(vars_->size(), 0), constant);
}

Expression Expression::variable(VarTablePtr vars, std::size_t index) {
    if (index >= vars->size()) throw std::out_of_range("variable index out of range");
    Expression e(vars);
    Exponents exps(vars->size(), 0);
    exps[index] = 1;
    e.add_term(exps, 1);
    return e;
}

Expression Expression::variable(VarTablePtr vars, std::string_view name) {
    std::size_t i = vars->index(name);
    return variable(std::move(vars), i);
}

Expression Expression::from_linear(VarTablePtr vars, std::span<const Rational> coeffs) {
    const std::size_t n = vars->size();
    if (coeffs.size() != n + 1) throw std::invalid_argument("linear coefficient vector has wrong length");
    Expression e(vars);
    for (std::size_t i = 0; i < n; ++i) {
        if (symchain::is_zero(coeffs[i])) continue;
        Exponents exps(n, 0);
        exps[i] = 1;
        e.add_term(exps, coeffs[i]);
    }
    e.add_term(Exponents(n, 0), coeffs[n]);
    return e;
}

bool Expression::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational Expression::constant_term() const {
    auto it = terms_.find(Exponents(vars_->size(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Expression::total_degree() const {
    return terms_.empty() ? 0 : degree_of(terms_.begin()->first);
}

unsigned Expression::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [exps, c] : terms_) d = std::max(d, exps.at(var));
    return d;
}

std::vector<Rational> Expression::linear_coefficients() const {
    if (!is_linear()) throw NonlinearReduction("expression is not linear: " + to_string());
    const std::size_t n = vars_->size();
    std::vector<Rational> out(n + 1);
    for (const auto& [exps, c] : terms_) {
        auto it = std::find(exps.begin(), exps.end(), 1u);
        out[it == exps.end() ? n : static_cast<std::size_t>(it - exps.begin())] = c;
    }
    return out;
}

Rational Expression::leading_coefficient() const {
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Expression Expression::monic() const {
    if (is_zero()) return *this;
    Rational inv = 1 / leading_coefficient();
    return *this * inv;
}

void Expression::add_term(const Exponents& exps, const Rational& coeff) {
    if (exps.size() != vars_->size()) throw std::invalid_argument("exponent vector has wrong length");
    if (symchain::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(exps, coeff);
    if (!inserted) {
        it->second += coeff;
        if (symchain::is_zero(it->second)) terms_.erase(it);
    }
}

void Expression::check_same(const Expression& other) const {
    if (!same_vars(vars_, other.vars_)) {
        throw std::invalid_argument("expressions over different variable tables");
    }
}

Expression Expression::operator-() const {
    Expression out = *this;
    for (auto& [exps, c] : out.terms_) c = -c;
    return out;
}

Expression& Expression::operator+=(const Expression& rhs) {
    check_same(rhs);
    for (const auto& [exps, c] : rhs.terms_) add_term(exps, c);
    return *this;
}

Expression& Expression::operator-=(const Expression& rhs) {
    check_same(rhs);
    for (const auto& [exps, c] : rhs.terms_) add_term(exps, -c);
    return *this;
}

Expression& Expression::operator*=(const Expression& rhs) {
    check_same(rhs);
    Expression out(vars_);
    Exponents prod(vars_->size());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ea[i] + eb[i];
            out.add_term(prod, ca * cb);
        }
    }
    terms_ = std::move(out.terms_);
    return *this;
}

Expression& Expression::operator*=(const Rational& k) {
    if (symchain::is_zero(k)) {
        terms_.clear();
        return *this;
    }
    for (auto& [exps, c] : terms_) c *= k;
    return *this;
}

bool operator==(const Expression& a, const Expression& b) {
    return same_vars(a.vars_, b.vars_) && a.terms_ == b.terms_;
}

std::string Expression::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [exps, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += vars_->name(i);
            if (exps[i] > 1) mono += '^' + std::to_string(exps[i]);
        }
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out << '-';
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (mono.empty()) {
            out << symchain::to_string(mag);
        } else if (mag == 1) {
            out << mono;
        } else {
            out << symchain::to_string(mag) << '*' << mono;
        }
    }
    return out.str();
}

Expression differentiate(const Expression& e, std::size_t var) {
    if (var >= e.vars()->size()) throw std::out_of_range("variable index out of range");
    Expression out(e.vars());
    for (const auto& [exps, c] : e.terms()) {
        if (exps[var] == 0) continue;
        Exponents d = exps;
        d[var] -= 1;
        out.add_term(d, c * exps[var]);
    }
    return out;
}

Expression differentiate(const Expression& e, std::string_view var) {
    return differentiate(e, e.vars()->index(var));
}

namespace {

Rational power_of(const Rational& base, unsigned exp) {
    Rational r = 1;
    for (unsigned k = 0; k < exp; ++k) r *= base;
    return r;
}

}  // namespace

Rational evaluate(const Expression& e, const Assignment& point) {
    const auto& vars = *e.vars();
    std::vector<Rational> values(vars.size());
    std::vector<bool> used(vars.size(), false);
    for (const auto& [exps, c] : e.terms()) {
        for (std::size_t i = 0; i < exps.size(); ++i) used[i] = used[i] || exps[i] > 0;
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!used[i]) continue;
        auto it = point.find(vars.name(i));
        if (it == point.end()) throw std::invalid_argument("no value assigned to '" + vars.name(i) + "'");
        values[i] = it->second;
    }
    return evaluate(e, values);
}

Rational evaluate(const Expression& e, std::span<const Rational> point) {
    if (point.size() != e.vars()->size()) throw std::invalid_argument("evaluation point has wrong length");
    Rational sum = 0;
    for (const auto& [exps, c] : e.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] > 0) t *= power_of(point[i], exps[i]);
        }
        sum += t;
    }
    return sum;
}

Expression pow(const Expression& base, unsigned exponent) {
    Expression result(base.vars(), 1);
    Expression sq = base;
    while (exponent > 0) {
        if (exponent & 1u) result *= sq;
        exponent >>= 1;
        if (exponent > 0) sq *= sq;
    }
    return result;
}

Expression substitute(const Expression& e, std::size_t var, const Expression& value) {
    if (!same_vars(e.vars(), value.vars())) {
        throw std::invalid_argument("substitution value uses a different variable table");
    }
    Expression out(e.vars());
    std::vector<Expression> powers{Expression(e.vars(), 1)};
    for (const auto& [exps, c] : e.terms()) {
        unsigned k = exps.at(var);
        while (powers.size() <= k) powers.push_back(powers.back() * value);
        Exponents rest = exps;
        rest[var] = 0;
        Expression term(e.vars());
        term.add_term(rest, c);
        out += term * powers[k];
    }
    return out;
}

Expression rebase(const Expression& e, const VarTablePtr& target) {
    if (same_vars(e.vars(), target)) {
        Expression out(target);
        for (const auto& [exps, c] : e.terms()) out.add_term(exps, c);
        return out;
    }
    const auto& src = *e.vars();
    std::vector<std::optional<std::size_t>> map(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) map[i] = target->find(src.name(i));
    Expression out(target);
    for (const auto& [exps, c] : e.terms()) {
        Exponents t(target->size(), 0);
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!map[i]) throw UnknownVariable(src.name(i));
            t[*map[i]] = exps[i];
        }
        out.add_term(t, c);
    }
    return out;
}

LinearSpan::LinearSpan(VarTablePtr vars) : vars_(std::move(vars)) {}

std::vector<Rational> LinearSpan::reduce_coeffs(std::vector<Rational> v) const {
    for (const auto& [pivot, row] : rows_) {
        if (is_zero(v[pivot])) continue;
        Rational k = v[pivot];
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!is_zero(row[j])) v[j] -= k * row[j];
        }
    }
    return v;
}

bool LinearSpan::insert(const Expression& e) {
    if (!same_vars(e.vars(), vars_)) throw std::invalid_argument("expression over a different variable table");
    auto v = reduce_coeffs(e.linear_coefficients());
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& q) { return !is_zero(q); });
    if (it == v.end()) return false;
    const std::size_t pivot = static_cast<std::size_t>(it - v.begin());
    Rational inv = 1 / v[pivot];
    for (auto& x : v) x *= inv;
    for (auto& [p, row] : rows_) {
        if (is_zero(row[pivot])) continue;
        Rational k = row[pivot];
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!is_zero(v[j])) row[j] -= k * v[j];
        }
    }
    rows_.emplace(pivot, std::move(v));
    return true;
}

Expression LinearSpan::reduce(const Expression& e) const {
    if (!same_vars(e.vars(), vars_)) throw std::invalid_argument("expression over a different variable table");
    auto v = reduce_coeffs(e.linear_coefficients());
    return Expression::from_linear(vars_, v);
}

std::vector<Expression> LinearSpan::basis() const {
    std::vector<Expression> out;
    out.reserve(rows_.size());
    for (const auto& [pivot, row] : rows_) out.push_back(Expression::from_linear(vars_, row));
    return out;
}

bool operator==(const LinearSpan& a, const LinearSpan& b) {
    return same_vars(a.vars_, b.vars_) && a.rows_ == b.rows_;
}

Expression reduce_modulo_linear(const Expression& e, const std::vector<Expression>& basis) {
    LinearSpan span(e.vars());
    for (const auto& b : basis) {
        if (b.is_zero()) throw std::invalid_argument("zero expression in reduction basis");
        span.insert(rebase(b, e.vars()));
    }
    return span.reduce(e);
}

}  // namespace symchain
