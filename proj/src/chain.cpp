#include <symchain/chain.hpp>

#include <algorithm>
#include <stdexcept>

namespace symchain {

std::string to_string(Origin o) {
    switch (o) {
        case Origin::primary: return "primary";
        case Origin::null_vector: return "null-vector";
        case Origin::truncated_null_vector: return "truncated-null-vector";
    }
    return "?";
}

std::string to_string(CandidateClass c) {
    switch (c) {
        case CandidateClass::new_constraint: return "new";
        case CandidateClass::multiplier_fixing: return "multiplier-fixing";
        case CandidateClass::redundant: return "redundant";
    }
    return "?";
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::nonsingular: return "nonsingular";
        case Termination::exhausted: return "exhausted";
        case Termination::max_level_reached: return "max-level-reached";
    }
    return "?";
}

Constraint make_constraint(std::size_t level, Expression raw, Origin origin,
                           std::optional<std::vector<Rational>> generator) {
    if (raw.is_zero()) throw std::invalid_argument("a constraint cannot be zero");
    Expression expr = raw.monic();
    return Constraint{level, std::move(expr), std::move(raw), origin, std::move(generator)};
}

ConstraintSpan::ConstraintSpan(VarTablePtr vars) : linear_(std::move(vars)) {}

bool ConstraintSpan::is_new(const Expression& e) const {
    if (e.is_zero()) return false;
    if (e.is_linear()) {
        if (!nonlinear_.empty() && !linear_.reduce(e).is_zero()) {
            throw NonlinearReduction("cannot decide whether " + e.to_string() +
                                     " lies in a span containing nonlinear constraints");
        }
        return !linear_.reduce(e).is_zero();
    }
    const Expression m = e.monic();
    if (std::find(nonlinear_.begin(), nonlinear_.end(), m) != nonlinear_.end()) return false;
    if (nonlinear_.empty()) return true;
    throw NonlinearReduction("cannot decide whether " + e.to_string() +
                             " lies in a span containing nonlinear constraints");
}

void ConstraintSpan::add(const Expression& e) {
    if (e.is_linear()) {
        linear_.insert(e);
    } else {
        nonlinear_.push_back(e.monic());
    }
}

PolyMatrix build_base_tensor(const FirstOrderModel& m) {
    const std::size_t n = m.phase.dimension();
    PolyMatrix f(n, n, m.phase.all());
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            f(a, b) = differentiate(m.c[b], a) - differentiate(m.c[a], b);
        }
    }
    return f;
}

namespace {

std::vector<const Constraint*> up_to_level(const std::vector<Constraint>& constraints, std::size_t level) {
    std::vector<const Constraint*> out;
    for (const auto& c : constraints) {
        if (c.level <= level) out.push_back(&c);
    }
    std::stable_sort(out.begin(), out.end(), [](const Constraint* a, const Constraint* b) { return a->level < b->level; });
    return out;
}

void check_levels_present(const std::vector<Constraint>& constraints, std::size_t level) {
    for (std::size_t g = 1; g <= level; ++g) {
        bool found = std::any_of(constraints.begin(), constraints.end(), [&](const Constraint& c) { return c.level == g; });
        if (!found) throw std::invalid_argument("constraint level " + std::to_string(g) + " is missing");
    }
}

}  // namespace

ExtendedSymplecticMatrix assemble_F_keeping(const FirstOrderModel& m, const std::vector<Constraint>& constraints,
                                            std::size_t level, std::size_t kept_levels) {
    check_levels_present(constraints, level);
    if (kept_levels > level) throw std::invalid_argument("cannot keep more xi levels than assembled");
    const std::size_t n = m.phase.dimension();
    const auto& vars = m.phase.all();
    const auto rows_c = up_to_level(constraints, level);

    PolyMatrix f = build_base_tensor(m);
    std::vector<PolyMatrix> borders;
    for (std::size_t g = 1; g <= level; ++g) {
        std::vector<const Constraint*> block;
        for (const auto* c : rows_c) {
            if (c->level == g) block.push_back(c);
        }
        PolyMatrix a(block.size(), n, vars);
        for (std::size_t mu = 0; mu < block.size(); ++mu) {
            for (std::size_t alpha = 0; alpha < n; ++alpha) a(mu, alpha) = differentiate(block[mu]->raw, alpha);
        }
        borders.push_back(std::move(a));
    }

    std::vector<std::string> row_labels = m.phase.zeta()->names();
    std::vector<std::size_t> kept_xi;  // indices into rows_c
    for (std::size_t k = 0; k < rows_c.size(); ++k) {
        row_labels.push_back("xi" + std::to_string(k + 1));
        if (rows_c[k]->level <= kept_levels) kept_xi.push_back(k);
    }
    std::vector<std::string> col_labels = m.phase.zeta()->names();
    for (std::size_t k : kept_xi) col_labels.push_back(row_labels[n + k]);

    const std::size_t total = n + rows_c.size();
    PolyMatrix full(total, total, vars);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) full(a, b) = f(a, b);
    }
    for (std::size_t k = 0; k < rows_c.size(); ++k) {
        for (std::size_t alpha = 0; alpha < n; ++alpha) {
            Expression grad = differentiate(rows_c[k]->raw, alpha);
            full(n + k, alpha) = -grad;
            full(alpha, n + k) = std::move(grad);
        }
    }

    PolyMatrix assembled(total, n + kept_xi.size(), vars);
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < n; ++j) assembled(i, j) = full(i, j);
        for (std::size_t k = 0; k < kept_xi.size(); ++k) assembled(i, n + k) = full(i, n + kept_xi[k]);
    }

    const bool truncated = kept_levels < level;
    if (!truncated) {
        for (std::size_t i = 0; i < total; ++i) {
            for (std::size_t j = i; j < total; ++j) {
                if (!(assembled(i, j) == -assembled(j, i))) {
                    throw std::logic_error("assembled extended matrix is not antisymmetric");
                }
            }
        }
    }
    return ExtendedSymplecticMatrix{level,      std::move(f),          std::move(borders),
                                    truncated,  kept_levels,           std::move(assembled),
                                    std::move(row_labels), std::move(col_labels)};
}

ExtendedSymplecticMatrix assemble_F(const FirstOrderModel& m, const std::vector<Constraint>& constraints,
                                    std::size_t level, bool truncated) {
    const std::size_t keep = truncated ? std::min<std::size_t>(1, level) : level;
    return assemble_F_keeping(m, constraints, level, keep);
}

std::vector<Expression> assemble_rhs(const FirstOrderModel& m, const std::vector<Constraint>& constraints,
                                     std::size_t level) {
    const Expression ht = m.total_hamiltonian();
    std::vector<Expression> rhs;
    for (std::size_t a = 0; a < m.phase.dimension(); ++a) rhs.push_back(differentiate(ht, a));
    for (const auto& c : constraints) {
        if (c.level <= level) rhs.emplace_back(m.phase.all());
    }
    return rhs;
}

NullExtraction find_new_constraints(const ExtendedSymplecticMatrix& f, const std::vector<Expression>& rhs,
                                    const std::vector<Constraint>& existing, std::uint64_t seed) {
    if (rhs.size() != f.assembled.rows()) throw std::invalid_argument("rhs length does not match matrix rows");
    NullExtraction out;
    RationalMatrix numeric;
    if (f.assembled.is_constant()) {
        numeric = f.assembled.to_rational();
    } else {
        out.generic = true;
        numeric = f.assembled.evaluate(random_point(f.assembled.vars()->size(), seed));
    }
    out.basis = left_null_space(numeric);

    const auto& vars = f.assembled.vars();
    const std::size_t zeta_dim = f.base.rows();
    ConstraintSpan span(vars);
    for (const auto& c : existing) span.add(c.raw);

    for (const auto& v : out.basis.vectors) {
        Expression value(vars);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!is_zero(v[i]) && !rhs[i].is_zero()) value += rhs[i] * v[i];
        }
        bool has_multiplier = false;
        for (std::size_t i = zeta_dim; i < vars->size(); ++i) has_multiplier = has_multiplier || value.depends_on(i);
        CandidateClass cls = CandidateClass::redundant;
        if (has_multiplier) {
            cls = CandidateClass::multiplier_fixing;
        } else if (span.is_new(value)) {
            cls = CandidateClass::new_constraint;
            span.add(value);
        }
        out.candidates.push_back(Candidate{v, std::move(value), cls});
    }
    return out;
}

std::size_t ChainReport::levels() const {
    std::size_t l = 0;
    for (const auto& c : constraints) l = std::max(l, c.level);
    return l;
}

std::vector<Expression> ChainReport::exprs() const {
    std::vector<Expression> out;
    for (const auto& c : constraints) out.push_back(c.expr);
    return out;
}

std::vector<Constraint> ChainReport::at_level(std::size_t level) const {
    std::vector<Constraint> out;
    std::copy_if(constraints.begin(), constraints.end(), std::back_inserter(out),
                 [&](const Constraint& c) { return c.level == level; });
    return out;
}

std::string span_fingerprint(const std::vector<Expression>& constraints) {
    if (constraints.empty()) return "";
    LinearSpan span(constraints.front().vars());
    for (const auto& c : constraints) span.insert(c);
    std::string out;
    for (const auto& row : span.basis()) out += row.to_string() + "\n";
    return out;
}

namespace {

ChainStep record(const ExtendedSymplecticMatrix& f, NullExtraction extraction) {
    return ChainStep{f.level, f.truncated, f.kept_levels, f.assembled.rows(), f.assembled.cols(), std::move(extraction)};
}

bool has_new(const NullExtraction& e) {
    return std::any_of(e.candidates.begin(), e.candidates.end(),
                       [](const Candidate& c) { return c.classification == CandidateClass::new_constraint; });
}

}  // namespace

ChainReport run_chain(const FirstOrderModel& m, const ChainOptions& opts) {
    if (opts.max_level < 1) throw std::invalid_argument("max_level must be at least 1");
    m.validate();

    ChainReport report;
    report.model = m.name;
    report.zeta = m.phase.zeta()->names();
    PhaseSpace phase = m.phase;  // private xi registry

    std::vector<Constraint> constraints;
    for (const auto& p : m.primaries) {
        constraints.push_back(make_constraint(1, p, Origin::primary));
        phase.add_xi();
    }
    std::size_t level = constraints.empty() ? 0 : 1;

    auto accept = [&](const NullExtraction& e, Origin origin) {
        for (const auto& cand : e.candidates) {
            if (cand.classification != CandidateClass::new_constraint) continue;
            constraints.push_back(make_constraint(level + 1, cand.value, origin, cand.vector));
            phase.add_xi();
        }
        ++level;
    };

    for (;;) {
        const auto f = assemble_F(m, constraints, level, false);
        const auto rhs = assemble_rhs(m, constraints, level);
        auto extraction = find_new_constraints(f, rhs, constraints, opts.seed);
        const bool found = has_new(extraction);
        report.generic = report.generic || extraction.generic;
        report.steps.push_back(record(f, extraction));
        if (found) {
            if (level + 1 > opts.max_level) {
                report.termination = Termination::max_level_reached;
                break;
            }
            accept(extraction, Origin::null_vector);
            continue;
        }

        if (extraction.basis.empty()) {
            const RationalMatrix numeric = f.assembled.is_constant()
                                               ? f.assembled.to_rational()
                                               : f.assembled.evaluate(random_point(f.assembled.vars()->size(), opts.seed));
            report.determinant = determinant(numeric);
            report.termination = Termination::nonsingular;
            break;
        }

        bool truncated_found = false;
        if (opts.allow_truncation && level >= 2) {
            report.truncations.push_back(level);
            std::vector<std::size_t> keeps;
            if (opts.truncation == TruncationMode::first) {
                keeps.push_back(1);
            } else {
                for (std::size_t k = level - 1; k >= 1; --k) keeps.push_back(k);
            }
            for (std::size_t keep : keeps) {
                const auto ft = assemble_F_keeping(m, constraints, level, keep);
                auto te = find_new_constraints(ft, rhs, constraints, opts.seed);
                report.generic = report.generic || te.generic;
                report.steps.push_back(record(ft, te));
                if (has_new(te)) {
                    truncated_found = true;
                    extraction = std::move(te);
                    break;
                }
            }
        }
        if (!truncated_found) {
            report.termination = Termination::exhausted;
            report.warnings.push_back("chain exhausted at level " + std::to_string(level) +
                                      " with a singular extended matrix; completeness must be checked against "
                                      "the Dirac-Bergmann oracle");
            break;
        }
        if (level + 1 > opts.max_level) {
            report.termination = Termination::max_level_reached;
            break;
        }
        accept(extraction, Origin::truncated_null_vector);
    }

    report.final_level = level;
    report.constraints = constraints;
    report.xi = phase.xi();
    try {
        report.fingerprint = span_fingerprint(report.exprs());
    } catch (const NonlinearReduction&) {
        report.fingerprint.clear();
        for (const auto& c : report.constraints) report.fingerprint += c.expr.to_string() + "\n";
    }
    if (report.termination == Termination::nonsingular && report.determinant && is_zero(*report.determinant)) {
        throw std::logic_error("nonsingular termination with zero determinant");
    }
    return report;
}

}  // namespace symchain
