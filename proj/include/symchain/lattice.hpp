#pragma once

#include <symchain/expr.hpp>
#include <symchain/linalg.hpp>
#include <symchain/model.hpp>

#include <optional>
#include <string>
#include <vector>

namespace symchain {

enum class Scheme { central, forward };

std::string to_string(Scheme s);
Scheme parse_scheme(std::string_view text);

/// Periodic one-dimensional lattice.
struct LatticeSpec {
    std::size_t sites = 3;
    Rational spacing = 1;
    Scheme scheme = Scheme::central;

    /// N >= 3, spacing > 0, and N odd for the central scheme (the central
    /// difference of an even lattice has a staggered zero mode). Throws
    /// std::invalid_argument.
    void validate() const;
};

/// N x N circulant. Central: (S - S^T) / 2a, forward: (S - I) / a, with
/// (S x)_i = x_{i+1}.
RationalMatrix difference_matrix(const LatticeSpec& spec);

/// Site variables `<field>_<i>` (1-based), all field blocks before all
/// momentum blocks.
class FieldSet {
public:
    FieldSet(std::vector<std::string> fields, std::vector<std::string> momenta, std::size_t sites);

    static FieldSet schwinger(std::size_t sites);

    std::size_t sites() const noexcept { return sites_; }
    /// Fields then momenta.
    const std::vector<std::string>& blocks() const noexcept { return blocks_; }
    const std::vector<std::string>& fields() const noexcept { return fields_; }
    const std::vector<std::string>& momenta() const noexcept { return momenta_; }

    static std::string site_name(std::string_view block, std::size_t site);
    std::vector<std::string> zeta_names() const;
    /// Position in zeta of block b at 0-based site i.
    std::size_t index(std::size_t block, std::size_t site) const { return block * sites_ + site; }

private:
    std::vector<std::string> fields_;
    std::vector<std::string> momenta_;
    std::vector<std::string> blocks_;
    std::size_t sites_;
};

/// Bosonized chiral Schwinger model (a = 1 mass term) on the lattice:
/// c puts a * pi in each field slot, H_C = a * sum_i of
///   1/2 (E^2 + pi^2 + (D phi)^2) + E (D A0) + (pi + A1 + D phi)(A1 - A0)
/// with E = pi1, pi = piphi; primaries pi0_i.
FirstOrderModel build_schwinger(const LatticeSpec& spec);

struct StencilTerm {
    std::string block;
    Rational local;       // coefficient of block_i
    Rational derivative;  // coefficient of (D block)_i

    friend bool operator==(const StencilTerm&, const StencilTerm&) = default;
};

/// A constraint written as sum_b (local_b + derivative_b D) block_b at one site.
struct StencilForm {
    std::size_t site = 0;  // 0-based
    std::vector<StencilTerm> terms;

    /// Scaled so the first nonzero coefficient is +1.
    StencilForm normalized() const;
    /// Same terms up to a nonzero overall factor (site ignored).
    bool same_shape(const StencilForm& other) const;
    /// e.g. "A1 + D(phi) + D(pi1) + piphi"
    std::string to_string() const;
};

struct SiteDescription {
    std::optional<StencilForm> stencil;
    std::string text;  // stencil text with "@ site i", or the raw expression
};

/// Finds the first site at which every block's coefficient vector is
/// local * e_i + derivative * (row i of D). Falls back to the raw
/// expression when there is none or the constraint is nonlinear.
SiteDescription map_constraint_to_sites(const Expression& constraint, const FieldSet& fields,
                                        const RationalMatrix& d);

}  // namespace symchain
