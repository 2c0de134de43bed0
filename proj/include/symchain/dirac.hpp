#pragma once

#include <symchain/chain.hpp>
#include <symchain/expr.hpp>
#include <symchain/linalg.hpp>
#include <symchain/model.hpp>

#include <optional>
#include <vector>

namespace symchain {

/// Coordinate/momentum pair with c_q = weight * p, so that
/// {q, p} = 1 / weight.
struct CanonicalPair {
    std::size_t coordinate;
    std::size_t momentum;
    Rational weight;

    friend bool operator==(const CanonicalPair&, const CanonicalPair&) = default;
};

/// Darboux pairing read off the coefficients c. Indices refer to the
/// model's full variable table; pairs are disjoint and cover zeta.
class CanonicalPairing {
public:
    CanonicalPairing(VarTablePtr vars, std::size_t zeta_dim, std::vector<CanonicalPair> pairs);

    /// Requires every nonzero c_a to be weight * zeta^b for a single b, with
    /// c_b = 0. Throws ModelError otherwise.
    static CanonicalPairing derive(const FirstOrderModel& m);

    const VarTablePtr& vars() const noexcept { return vars_; }
    std::size_t zeta_dimension() const noexcept { return zeta_dim_; }
    const std::vector<CanonicalPair>& pairs() const noexcept { return pairs_; }

private:
    VarTablePtr vars_;
    std::size_t zeta_dim_;
    std::vector<CanonicalPair> pairs_;
};

/// sum over pairs of (1/w) (da/dq db/dp - da/dp db/dq). Throws
/// std::invalid_argument if either side mentions a non-zeta variable.
Expression poisson_bracket(const Expression& a, const Expression& b, const CanonicalPairing& pairing);

/// Linear conditions on the multipliers met during the consistency run.
struct MultiplierCondition {
    std::size_t round;
    Expression condition;  // {phi, H_C} + sum lambda {phi, phi_mu}, must vanish
};

struct OracleResult {
    std::vector<Constraint> constraints;
    std::vector<MultiplierCondition> multiplier_conditions;
    /// lambda_mu solved on the constraint surface, when the conditions fix
    /// every multiplier.
    std::optional<std::vector<Expression>> multipliers;
    std::size_t rounds = 0;

    std::vector<Expression> exprs() const;
    std::size_t levels() const;
};

/// Dirac-Bergmann iteration. Each round takes every constraint phi_a found
/// so far, forms {phi_a, H_T} = h_a + sum_mu lambda_mu B_a,mu, and for each
/// combination w with w.B = 0 checks w.h against the span of the known
/// constraints; independent ones form the next level. Stops when a round
/// adds nothing. B must be constant (NonlinearReduction otherwise).
OracleResult consistency_algorithm(const FirstOrderModel& m);

struct ConstraintMatrix {
    RationalMatrix brackets;
    std::size_t rank = 0;
    std::vector<bool> second_class;  // per constraint: its bracket row is nonzero

    std::size_t second_class_count() const noexcept { return rank; }
};

/// C_ab = {phi_a, phi_b}. The set must be linearly independent and the
/// brackets constant; std::invalid_argument otherwise.
ConstraintMatrix classify(const std::vector<Expression>& constraints, const CanonicalPairing& pairing);

struct SpanVerdict {
    bool equal = false;
    std::vector<Expression> only_in_chain;   // monic basis of chain span mod oracle span
    std::vector<Expression> only_in_oracle;  // monic basis of oracle span mod chain span
};

SpanVerdict compare_spans(const std::vector<Expression>& chain, const std::vector<Expression>& oracle);
SpanVerdict compare_spans(const ChainReport& chain, const OracleResult& oracle);

}  // namespace symchain
