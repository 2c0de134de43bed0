#include <symchain/dirac.hpp>

#include <algorithm>
#include <stdexcept>

namespace symchain {

CanonicalPairing::CanonicalPairing(VarTablePtr vars, std::size_t zeta_dim, std::vector<CanonicalPair> pairs)
    : vars_(std::move(vars)), zeta_dim_(zeta_dim), pairs_(std::move(pairs)) {
    std::vector<bool> seen(zeta_dim_, false);
    for (const auto& p : pairs_) {
        for (std::size_t i : {p.coordinate, p.momentum}) {
            if (i >= zeta_dim_ || seen[i]) throw std::invalid_argument("canonical pairs overlap or leave zeta");
            seen[i] = true;
        }
        if (is_zero(p.weight)) throw std::invalid_argument("canonical pair with zero weight");
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
        throw std::invalid_argument("canonical pairs do not cover every coordinate");
    }
}

CanonicalPairing CanonicalPairing::derive(const FirstOrderModel& m) {
    const std::size_t n = m.phase.dimension();
    std::vector<CanonicalPair> pairs;
    for (std::size_t a = 0; a < n; ++a) {
        const Expression& c = m.c[a];
        if (c.is_zero()) continue;
        if (c.terms().size() != 1 || c.total_degree() != 1) {
            throw ModelError("no canonical pairing: c(" + m.phase.zeta()->name(a) + ") = " + c.to_string() +
                             " is not a multiple of a single coordinate");
        }
        const auto& [exps, weight] = *c.terms().begin();
        const auto b = static_cast<std::size_t>(std::find(exps.begin(), exps.end(), 1u) - exps.begin());
        if (b >= n || !m.c[b].is_zero()) {
            throw ModelError("no canonical pairing: momentum of '" + m.phase.zeta()->name(a) + "' is not conjugate");
        }
        pairs.push_back(CanonicalPair{a, b, weight});
    }
    try {
        return CanonicalPairing(m.phase.all(), n, std::move(pairs));
    } catch (const std::invalid_argument& e) {
        throw ModelError(std::string("no canonical pairing: ") + e.what());
    }
}

Expression poisson_bracket(const Expression& a, const Expression& b, const CanonicalPairing& pairing) {
    if (!same_vars(a.vars(), pairing.vars()) || !same_vars(b.vars(), pairing.vars())) {
        throw std::invalid_argument("bracket operands are not over the pairing's variables");
    }
    for (std::size_t i = pairing.zeta_dimension(); i < pairing.vars()->size(); ++i) {
        if (a.depends_on(i) || b.depends_on(i)) {
            throw std::invalid_argument("bracket operand mentions non-phase-space variable '" +
                                        pairing.vars()->name(i) + "'");
        }
    }
    Expression out(pairing.vars());
    for (const auto& p : pairing.pairs()) {
        const Expression daq = differentiate(a, p.coordinate);
        const Expression dap = differentiate(a, p.momentum);
        const Expression dbq = differentiate(b, p.coordinate);
        const Expression dbp = differentiate(b, p.momentum);
        Expression term = daq * dbp - dap * dbq;
        if (term.is_zero()) continue;
        out += term * Rational(1 / p.weight);
    }
    return out;
}

std::vector<Expression> OracleResult::exprs() const {
    std::vector<Expression> out;
    for (const auto& c : constraints) out.push_back(c.expr);
    return out;
}

std::size_t OracleResult::levels() const {
    std::size_t l = 0;
    for (const auto& c : constraints) l = std::max(l, c.level);
    return l;
}

namespace {

Rational constant_bracket(const Expression& e) {
    if (!e.is_constant()) {
        throw NonlinearReduction("multiplier coefficient " + e.to_string() + " is not constant");
    }
    return e.constant_term();
}

/// Solves B_sub * lambda = -h_sub on an independent row subset of B.
std::optional<std::vector<Expression>> solve_multipliers(const RationalMatrix& b, const std::vector<Expression>& h,
                                                         const VarTablePtr& vars) {
    const std::size_t m = b.cols();
    if (m == 0) return std::vector<Expression>{};
    const auto rows = rref(b.transpose()).pivots;  // independent rows of B
    if (rows.size() < m) return std::nullopt;
    RationalMatrix aug(m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug(i, j) = b(rows[i], j);
        aug(i, m + i) = 1;
    }
    const auto inv = rref(aug).reduced;
    std::vector<Expression> lambda;
    for (std::size_t mu = 0; mu < m; ++mu) {
        Expression l(vars);
        for (std::size_t k = 0; k < m; ++k) {
            const Rational& coeff = inv(mu, m + k);
            if (!is_zero(coeff)) l -= h[rows[k]] * coeff;
        }
        lambda.push_back(std::move(l));
    }
    return lambda;
}

}  // namespace

OracleResult consistency_algorithm(const FirstOrderModel& m) {
    m.validate();
    const CanonicalPairing pairing = CanonicalPairing::derive(m);
    const auto& vars = m.phase.all();
    const std::size_t mult = m.primaries.size();

    OracleResult result;
    ConstraintSpan span(vars);
    for (const auto& p : m.primaries) {
        result.constraints.push_back(make_constraint(1, p, Origin::primary));
        span.add(p);
    }

    std::vector<Expression> h;                    // {phi_a, H_C}
    std::vector<std::vector<Rational>> b_rows;    // {phi_a, phi1_mu}
    for (std::size_t round = 1;; ++round) {
        result.rounds = round;
        for (std::size_t a = h.size(); a < result.constraints.size(); ++a) {
            const Expression& phi = result.constraints[a].raw;
            h.push_back(poisson_bracket(phi, m.hamiltonian, pairing));
            std::vector<Rational> row;
            Expression condition = h.back();
            for (std::size_t mu = 0; mu < mult; ++mu) {
                row.push_back(constant_bracket(poisson_bracket(phi, m.primaries[mu], pairing)));
                if (!is_zero(row.back())) condition += m.phase.multiplier(mu) * row.back();
            }
            if (std::any_of(row.begin(), row.end(), [](const Rational& q) { return !is_zero(q); })) {
                result.multiplier_conditions.push_back(MultiplierCondition{round, std::move(condition)});
            }
            b_rows.push_back(std::move(row));
        }

        RationalMatrix b(b_rows.size(), mult);
        for (std::size_t a = 0; a < b_rows.size(); ++a) {
            for (std::size_t mu = 0; mu < mult; ++mu) b(a, mu) = b_rows[a][mu];
        }
        const NullBasis free_combinations = left_null_space(b);

        std::vector<Constraint> found;
        for (const auto& w : free_combinations.vectors) {
            Expression candidate(vars);
            for (std::size_t a = 0; a < w.size(); ++a) {
                if (!is_zero(w[a])) candidate += h[a] * w[a];
            }
            if (!span.is_new(candidate)) continue;
            span.add(candidate);
            found.push_back(make_constraint(round + 1, candidate, Origin::null_vector, w));
        }
        if (found.empty()) {
            result.multipliers = solve_multipliers(b, h, vars);
            break;
        }
        result.constraints.insert(result.constraints.end(), found.begin(), found.end());
    }
    return result;
}

ConstraintMatrix classify(const std::vector<Expression>& constraints, const CanonicalPairing& pairing) {
    const std::size_t k = constraints.size();
    ConstraintMatrix out;
    out.brackets = RationalMatrix(k, k);
    out.second_class.assign(k, false);
    if (k == 0) return out;
    LinearSpan span(pairing.vars());
    for (const auto& c : constraints) {
        if (!span.insert(c)) throw std::invalid_argument("constraint set is not linearly independent: " + c.to_string());
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            const Expression br = poisson_bracket(constraints[a], constraints[b], pairing);
            if (!br.is_constant()) throw std::invalid_argument("constraint bracket is not constant: " + br.to_string());
            out.brackets(a, b) = br.constant_term();
            out.brackets(b, a) = -br.constant_term();
        }
    }
    out.rank = rank(out.brackets);
    for (std::size_t a = 0; a < k; ++a) {
        auto row = out.brackets.row(a);
        out.second_class[a] = std::any_of(row.begin(), row.end(), [](const Rational& q) { return !is_zero(q); });
    }
    return out;
}

SpanVerdict compare_spans(const std::vector<Expression>& chain, const std::vector<Expression>& oracle) {
    SpanVerdict v;
    if (chain.empty() && oracle.empty()) {
        v.equal = true;
        return v;
    }
    const VarTablePtr vars = chain.empty() ? oracle.front().vars() : chain.front().vars();
    LinearSpan cs(vars);
    LinearSpan os(vars);
    for (const auto& e : chain) cs.insert(rebase(e, vars));
    for (const auto& e : oracle) os.insert(rebase(e, vars));
    v.equal = cs == os;
    auto leftover = [&](const LinearSpan& from, const LinearSpan& modulo) {
        LinearSpan rest(vars);
        for (const auto& e : from.basis()) rest.insert(modulo.reduce(e));
        std::vector<Expression> out;
        for (const auto& e : rest.basis()) out.push_back(e.monic());
        return out;
    };
    v.only_in_chain = leftover(cs, os);
    v.only_in_oracle = leftover(os, cs);
    return v;
}

SpanVerdict compare_spans(const ChainReport& chain, const OracleResult& oracle) {
    return compare_spans(chain.exprs(), oracle.exprs());
}

}  // namespace symchain
