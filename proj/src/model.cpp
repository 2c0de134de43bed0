#include <symchain/linalg.hpp>
#include <symchain/model.hpp>

namespace symchain {

ModelError::ModelError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

std::vector<std::string> multiplier_names(std::size_t m) {
    std::vector<std::string> names;
    for (std::size_t mu = 0; mu < m; ++mu) names.push_back(PhaseSpace::multiplier_name(mu));
    return names;
}

VarTablePtr joined(const VarTable& a, const VarTable& b) {
    std::vector<std::string> names = a.names();
    names.insert(names.end(), b.names().begin(), b.names().end());
    try {
        return make_vars(std::move(names));
    } catch (const std::invalid_argument& e) {
        throw ModelError(std::string("coordinate and multiplier names overlap: ") + e.what());
    }
}

}  // namespace

PhaseSpace::PhaseSpace(std::vector<std::string> zeta, std::size_t multipliers) {
    try {
        zeta_ = make_vars(std::move(zeta));
    } catch (const std::invalid_argument& e) {
        throw ModelError(e.what());
    }
    multipliers_ = make_vars(multiplier_names(multipliers));
    all_ = joined(*zeta_, *multipliers_);
    for (const auto& n : zeta_->names()) {
        if (n.rfind("xi", 0) == 0 && n.size() > 2 && n.find_first_not_of("0123456789", 2) == std::string::npos) {
            throw ModelError("coordinate name '" + n + "' is reserved for auxiliary variables");
        }
    }
}

Expression PhaseSpace::multiplier(std::size_t mu) const {
    return Expression::variable(all_, zeta_->size() + mu);
}

const std::string& PhaseSpace::add_xi() {
    xi_.push_back("xi" + std::to_string(xi_.size() + 1));
    return xi_.back();
}

bool operator==(const PhaseSpace& a, const PhaseSpace& b) {
    return *a.zeta_ == *b.zeta_ && *a.multipliers_ == *b.multipliers_ && a.xi_ == b.xi_;
}

Expression FirstOrderModel::total_hamiltonian() const {
    Expression h = hamiltonian;
    for (std::size_t mu = 0; mu < primaries.size(); ++mu) h += phase.multiplier(mu) * primaries[mu];
    return h;
}

void FirstOrderModel::validate() const {
    const auto& all = phase.all();
    if (c.size() != phase.dimension()) {
        throw ModelError("expected " + std::to_string(phase.dimension()) + " coefficients c, got " +
                         std::to_string(c.size()));
    }
    if (primaries.size() != phase.multipliers()->size()) {
        throw ModelError("one multiplier per primary constraint is required");
    }
    auto check_zeta_only = [&](const Expression& e, const std::string& what) {
        if (!same_vars(e.vars(), all)) throw ModelError(what + " is not over the model's variables");
        for (std::size_t i = phase.dimension(); i < all->size(); ++i) {
            if (e.depends_on(i)) throw ModelError(what + " depends on multiplier '" + all->name(i) + "'");
        }
    };
    for (std::size_t a = 0; a < c.size(); ++a) check_zeta_only(c[a], "coefficient c(" + all->name(a) + ")");
    check_zeta_only(hamiltonian, "Hamiltonian");
    bool all_linear = true;
    for (std::size_t mu = 0; mu < primaries.size(); ++mu) {
        check_zeta_only(primaries[mu], "primary constraint " + std::to_string(mu + 1));
        if (primaries[mu].is_zero()) throw ModelError("primary constraint " + std::to_string(mu + 1) + " is zero");
        all_linear = all_linear && primaries[mu].is_linear();
    }
    if (all_linear) {
        LinearSpan span(all);
        for (const auto& p : primaries) {
            if (!span.insert(p)) throw ModelError("primary constraints are linearly dependent: " + p.to_string());
        }
    } else {
        for (std::size_t i = 0; i < primaries.size(); ++i) {
            for (std::size_t j = i + 1; j < primaries.size(); ++j) {
                if (primaries[i].monic() == primaries[j].monic()) {
                    throw ModelError("primary constraints " + std::to_string(i + 1) + " and " +
                                     std::to_string(j + 1) + " are proportional");
                }
            }
        }
    }
}

FirstOrderModel make_first_order_model(std::string name, std::vector<std::string> zeta,
                                       const std::vector<std::string>& c, std::string_view hamiltonian,
                                       const std::vector<std::string>& primaries) {
    PhaseSpace phase(std::move(zeta), primaries.size());
    const auto& all = phase.all();
    std::vector<Expression> cs;
    for (const auto& t : c) cs.push_back(parse_expression(t, all));
    std::vector<Expression> ps;
    for (const auto& t : primaries) ps.push_back(parse_expression(t, all));
    FirstOrderModel m{std::move(name), phase, std::move(cs), parse_expression(hamiltonian, all), std::move(ps)};
    m.validate();
    return m;
}

SecondOrderLagrangian::SecondOrderLagrangian(std::vector<std::string> coords, std::string_view text)
    : coordinates(make_vars(coords)),
      vars([&] {
          std::vector<std::string> names = coords;
          for (const auto& q : coords) names.push_back(velocity_name(q));
          return make_vars(std::move(names));
      }()),
      lagrangian(parse_expression(text, vars)) {}

FirstOrderModel legendre_transform(const SecondOrderLagrangian& l, std::string name) {
    const std::size_t n = l.coordinates->size();
    // Working table: q's, velocities, momenta.
    std::vector<std::string> work_names = l.vars->names();
    for (const auto& q : l.coordinates->names()) work_names.push_back(SecondOrderLagrangian::momentum_name(q));
    VarTablePtr work;
    try {
        work = make_vars(work_names);
    } catch (const std::invalid_argument& e) {
        throw ModelError(std::string("momentum names collide with coordinates: ") + e.what());
    }
    const Expression lag = rebase(l.lagrangian, work);
    auto velocity = [&](std::size_t i) { return n + i; };
    auto momentum = [&](std::size_t i) { return 2 * n + i; };

    for (const auto& [exps, coeff] : lag.terms()) {
        unsigned vdeg = 0;
        for (std::size_t i = 0; i < n; ++i) vdeg += exps[velocity(i)];
        if (vdeg > 2) throw ModelError("Lagrangian is more than quadratic in the velocities");
    }

    // p_i = W_ij v_j + b_i(q), with W the constant velocity Hessian.
    RationalMatrix hessian(n, n);
    std::vector<Expression> rhs;
    const Expression zero(work);
    for (std::size_t i = 0; i < n; ++i) {
        const Expression dl = differentiate(lag, velocity(i));
        Expression b = dl;
        for (std::size_t j = 0; j < n; ++j) {
            const Expression w = differentiate(dl, velocity(j));
            if (!w.is_constant()) throw ModelError("velocity Hessian is not constant");
            hessian(i, j) = w.constant_term();
            b = substitute(b, velocity(j), zero);
        }
        rhs.push_back(Expression::variable(work, momentum(i)) - b);
    }

    // Gauss-Jordan on [W | p - b], carrying the expression column along.
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < n; ++col) {
        std::size_t p = r;
        while (p < n && is_zero(hessian(p, col))) ++p;
        if (p == n) continue;
        if (p != r) {
            for (std::size_t j = 0; j < n; ++j) std::swap(hessian(p, j), hessian(r, j));
            std::swap(rhs[p], rhs[r]);
        }
        const Rational inv = 1 / hessian(r, col);
        for (std::size_t j = 0; j < n; ++j) hessian(r, j) *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || is_zero(hessian(i, col))) continue;
            const Rational k = hessian(i, col);
            for (std::size_t j = 0; j < n; ++j) hessian(i, j) -= k * hessian(r, j);
            rhs[i] -= rhs[r] * k;
        }
        pivots.push_back(col);
        ++r;
    }

    // Unsolved velocities are set to zero; H does not depend on them on the
    // primary constraint surface.
    std::vector<Expression> solved(n, zero);
    for (std::size_t k = 0; k < pivots.size(); ++k) solved[pivots[k]] = rhs[k];
    std::vector<Expression> primaries_work;
    for (std::size_t k = pivots.size(); k < n; ++k) {
        if (rhs[k].is_constant()) throw ModelError("inconsistent momentum relations");
        primaries_work.push_back(rhs[k]);
    }

    Expression h(work);
    for (std::size_t i = 0; i < n; ++i) h += Expression::variable(work, momentum(i)) * Expression::variable(work, velocity(i));
    h -= lag;
    for (std::size_t i = 0; i < n; ++i) h = substitute(h, velocity(i), solved[i]);

    std::vector<std::string> zeta = l.coordinates->names();
    for (const auto& q : l.coordinates->names()) zeta.push_back(SecondOrderLagrangian::momentum_name(q));
    PhaseSpace phase(zeta, primaries_work.size());
    const auto& all = phase.all();
    std::vector<Expression> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(Expression::variable(all, n + i));
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(all);
    std::vector<Expression> primaries;
    for (const auto& p : primaries_work) primaries.push_back(rebase(p, all));
    FirstOrderModel m{std::move(name), phase, std::move(c), rebase(h, all), std::move(primaries)};
    m.validate();
    return m;
}

}  // namespace symchain
