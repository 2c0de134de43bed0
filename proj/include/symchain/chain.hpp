#pragma once

#include <symchain/expr.hpp>
#include <symchain/linalg.hpp>
#include <symchain/model.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symchain {

enum class Origin { primary, null_vector, truncated_null_vector };

std::string to_string(Origin o);

/// One constraint phi^(level) of a chain.
struct Constraint {
    std::size_t level = 1;
    Expression expr;  // raw.monic()
    Expression raw;   // as generated: v . rhs, or the primary as given
    Origin origin = Origin::primary;
    std::optional<std::vector<Rational>> generator;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

Constraint make_constraint(std::size_t level, Expression raw, Origin origin,
                           std::optional<std::vector<Rational>> generator = std::nullopt);

/// Span bookkeeping for deciding whether a candidate constraint is new.
///
/// Linear candidates are reduced against the linear members. A nonlinear
/// candidate is new when every member is linear, redundant when it is a
/// multiple of a member, and otherwise undecidable here: NonlinearReduction
/// is thrown rather than guessing.
class ConstraintSpan {
public:
    explicit ConstraintSpan(VarTablePtr vars);

    bool is_new(const Expression& e) const;
    void add(const Expression& e);

private:
    LinearSpan linear_;
    std::vector<Expression> nonlinear_;  // monic
};

/// The extended matrix F^(k): base block f bordered by the constraint
/// gradients A^(gamma), optionally keeping only the first `kept_levels`
/// levels of xi columns.
struct ExtendedSymplecticMatrix {
    std::size_t level = 0;
    PolyMatrix base;
    std::vector<PolyMatrix> borders;  // A^(gamma), gamma = 1..level
    bool truncated = false;
    std::size_t kept_levels = 0;
    PolyMatrix assembled;
    std::vector<std::string> row_labels;
    std::vector<std::string> column_labels;
};

/// f_ab = d_a c_b - d_b c_a.
PolyMatrix build_base_tensor(const FirstOrderModel& m);

/// Block layout, rows and columns ordered (zeta, xi_1, ..., xi_k):
///   [ f    +A^T ]
///   [ -A    0   ]
/// where A stacks the gradients of the `raw` constraint expressions of
/// levels 1..k. With `truncated`, only the zeta and xi_1 columns are kept;
/// all rows stay.
ExtendedSymplecticMatrix assemble_F(const FirstOrderModel& m, const std::vector<Constraint>& constraints,
                                    std::size_t level, bool truncated);

/// Same, keeping the xi columns of levels 1..kept_levels.
ExtendedSymplecticMatrix assemble_F_keeping(const FirstOrderModel& m, const std::vector<Constraint>& constraints,
                                            std::size_t level, std::size_t kept_levels);

/// (dH_T/dzeta, 0, ..., 0) with one zero per constraint of level <= k.
std::vector<Expression> assemble_rhs(const FirstOrderModel& m, const std::vector<Constraint>& constraints,
                                     std::size_t level);

enum class CandidateClass { new_constraint, multiplier_fixing, redundant };

std::string to_string(CandidateClass c);

struct Candidate {
    std::vector<Rational> vector;
    Expression value;
    CandidateClass classification;
};

struct NullExtraction {
    NullBasis basis;
    std::vector<Candidate> candidates;
    bool generic = false;  // matrix had symbolic entries; basis taken at a random point
};

/// Contracts each canonical left null vector of F with `rhs` and classifies
/// the result against `existing`. Candidates classified as new are also
/// checked against each other, in basis order.
NullExtraction find_new_constraints(const ExtendedSymplecticMatrix& f, const std::vector<Expression>& rhs,
                                    const std::vector<Constraint>& existing, std::uint64_t seed = 0x5eed);

// first: keep only the xi_1 columns. iterative: drop the newest xi level
// one at a time until a new constraint appears.
enum class TruncationMode { first, iterative };
enum class Termination { nonsingular, exhausted, max_level_reached };

std::string to_string(Termination t);

struct ChainOptions {
    std::size_t max_level = 12;
    bool allow_truncation = true;
    TruncationMode truncation = TruncationMode::first;
    std::uint64_t seed = 0x5eed;
};

/// One null-vector extraction performed during a run.
struct ChainStep {
    std::size_t level = 0;
    bool truncated = false;
    std::size_t kept_levels = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    NullExtraction extraction;
};

struct ChainReport {
    std::string model;
    std::vector<std::string> zeta;
    std::vector<std::string> xi;
    std::vector<Constraint> constraints;
    std::vector<ChainStep> steps;
    std::vector<std::size_t> truncations;
    Termination termination = Termination::exhausted;
    std::size_t final_level = 0;
    std::optional<Rational> determinant;
    bool generic = false;
    std::vector<std::string> warnings;
    std::string fingerprint;

    std::size_t levels() const;
    std::vector<Expression> exprs() const;
    std::vector<Constraint> at_level(std::size_t level) const;
};

ChainReport run_chain(const FirstOrderModel& m, const ChainOptions& opts = {});

/// Text of the reduced row-echelon basis of a set of linear constraints,
/// one row per line; sets with equal spans have equal fingerprints.
std::string span_fingerprint(const std::vector<Expression>& constraints);

}  // namespace symchain
