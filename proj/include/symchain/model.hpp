#pragma once

#include <symchain/expr.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symchain {

/// Rejected model input. `line()` is 1-based, or 0 when the problem is not
/// tied to a single line.
class ModelError : public std::runtime_error {
public:
    ModelError(const std::string& what, std::size_t line = 0);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Base coordinates, Lagrange multipliers, and the auxiliary xi registry.
///
/// Every model expression is built over `all`, which lists the zeta names
/// followed by the multiplier names, so the total Hamiltonian and the
/// equations-of-motion right-hand side share one table with the constraints.
/// The xi names only label rows and columns of the extended matrices.
class PhaseSpace {
public:
    PhaseSpace(std::vector<std::string> zeta, std::size_t multipliers);

    const VarTablePtr& zeta() const noexcept { return zeta_; }
    const VarTablePtr& multipliers() const noexcept { return multipliers_; }
    const VarTablePtr& all() const noexcept { return all_; }
    std::size_t dimension() const noexcept { return zeta_->size(); }

    bool is_multiplier(std::size_t index_in_all) const noexcept { return index_in_all >= zeta_->size(); }
    Expression multiplier(std::size_t mu) const;

    const std::vector<std::string>& xi() const noexcept { return xi_; }
    /// Appends and returns the next name: xi1, xi2, ...
    const std::string& add_xi();

    static std::string multiplier_name(std::size_t mu) { return "lambda" + std::to_string(mu + 1); }

    friend bool operator==(const PhaseSpace& a, const PhaseSpace& b);

private:
    VarTablePtr zeta_;
    VarTablePtr multipliers_;
    VarTablePtr all_;
    std::vector<std::string> xi_;
};

/// L = c_a(zeta) dzeta^a/dt - H(zeta), together with its primary constraints.
struct FirstOrderModel {
    std::string name;
    PhaseSpace phase;
    std::vector<Expression> c;
    Expression hamiltonian;
    std::vector<Expression> primaries;

    /// H_C + sum_mu lambda_mu * primary_mu, formed on demand.
    Expression total_hamiltonian() const;

    /// Throws ModelError on any broken invariant.
    void validate() const;

    friend bool operator==(const FirstOrderModel&, const FirstOrderModel&) = default;
};

/// Parses the coefficient, Hamiltonian and primary texts over `zeta`, then
/// validates.
FirstOrderModel make_first_order_model(std::string name, std::vector<std::string> zeta,
                                       const std::vector<std::string>& c, std::string_view hamiltonian,
                                       const std::vector<std::string>& primaries);

/// A Lagrangian in coordinates q and velocities `<q>dot`, at most quadratic
/// in the velocities.
struct SecondOrderLagrangian {
    SecondOrderLagrangian(std::vector<std::string> coordinates, std::string_view lagrangian);

    static std::string velocity_name(std::string_view q) { return std::string(q) + "dot"; }
    static std::string momentum_name(std::string_view q) { return "p_" + std::string(q); }

    VarTablePtr coordinates;
    VarTablePtr vars;  // coordinates followed by velocities
    Expression lagrangian;
};

/// Introduces momenta p_q, solves the momentum relations for as many
/// velocities as the velocity Hessian allows, and turns each unsolvable
/// direction into a primary constraint. Zeta is ordered q's then p's.
FirstOrderModel legendre_transform(const SecondOrderLagrangian& l, std::string name = "model");

FirstOrderModel parse_model(std::string_view text);
FirstOrderModel load_model(const std::filesystem::path& path);

/// First-order form text; parse_model(format_model(m)) == m.
std::string format_model(const FirstOrderModel& m);
void save_model(const FirstOrderModel& m, const std::filesystem::path& path);

}  // namespace symchain
