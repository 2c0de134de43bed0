#include <symchain/lattice.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace symchain {

std::string to_string(Scheme s) { return s == Scheme::central ? "central" : "forward"; }

Scheme parse_scheme(std::string_view text) {
    if (text == "central") return Scheme::central;
    if (text == "forward") return Scheme::forward;
    throw std::invalid_argument("unknown difference scheme '" + std::string(text) + "'");
}

void LatticeSpec::validate() const {
    if (sites < 3) throw std::invalid_argument("a lattice needs at least 3 sites");
    if (sgn(spacing) <= 0) throw std::invalid_argument("lattice spacing must be positive");
    if (scheme == Scheme::central && sites % 2 == 0) {
        throw std::invalid_argument("the central scheme needs an odd number of sites");
    }
}

RationalMatrix difference_matrix(const LatticeSpec& spec) {
    spec.validate();
    const std::size_t n = spec.sites;
    RationalMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t next = (i + 1) % n;
        const std::size_t prev = (i + n - 1) % n;
        if (spec.scheme == Scheme::central) {
            d(i, next) += 1 / (2 * spec.spacing);
            d(i, prev) -= 1 / (2 * spec.spacing);
        } else {
            d(i, next) += 1 / spec.spacing;
            d(i, i) -= 1 / spec.spacing;
        }
    }
    return d;
}

FieldSet::FieldSet(std::vector<std::string> fields, std::vector<std::string> momenta, std::size_t sites)
    : fields_(std::move(fields)), momenta_(std::move(momenta)), sites_(sites) {
    blocks_ = fields_;
    blocks_.insert(blocks_.end(), momenta_.begin(), momenta_.end());
}

FieldSet FieldSet::schwinger(std::size_t sites) {
    return FieldSet({"A0", "A1", "phi"}, {"pi0", "pi1", "piphi"}, sites);
}

std::string FieldSet::site_name(std::string_view block, std::size_t site) {
    return std::string(block) + "_" + std::to_string(site + 1);
}

std::vector<std::string> FieldSet::zeta_names() const {
    std::vector<std::string> names;
    for (const auto& b : blocks_) {
        for (std::size_t i = 0; i < sites_; ++i) names.push_back(site_name(b, i));
    }
    return names;
}

FirstOrderModel build_schwinger(const LatticeSpec& spec) {
    const RationalMatrix d = difference_matrix(spec);
    const std::size_t n = spec.sites;
    const FieldSet fs = FieldSet::schwinger(n);
    enum Block : std::size_t { A0, A1, PHI, PI0, PI1, PIPHI };

    PhaseSpace phase(fs.zeta_names(), n);
    const auto& vars = phase.all();
    auto var = [&](std::size_t block, std::size_t site) { return Expression::variable(vars, fs.index(block, site)); };
    auto diff = [&](std::size_t block, std::size_t site) {
        Expression e(vars);
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_zero(d(site, j))) e += var(block, j) * d(site, j);
        }
        return e;
    };

    std::vector<Expression> c;
    for (std::size_t b : {A0, A1, PHI}) {
        for (std::size_t i = 0; i < n; ++i) c.push_back(var(b + 3, i) * spec.spacing);
    }
    for (std::size_t k = 0; k < 3 * n; ++k) c.emplace_back(vars);

    const Rational half(1, 2);
    Expression h(vars);
    for (std::size_t i = 0; i < n; ++i) {
        const Expression e = var(PI1, i);
        const Expression pi = var(PIPHI, i);
        const Expression dphi = diff(PHI, i);
        Expression density = (e * e + pi * pi + dphi * dphi) * half;
        density += e * diff(A0, i);
        density += (pi + var(A1, i) + dphi) * (var(A1, i) - var(A0, i));
        h += density;
    }
    h *= spec.spacing;

    std::vector<Expression> primaries;
    for (std::size_t i = 0; i < n; ++i) primaries.push_back(var(PI0, i));

    FirstOrderModel m{"schwinger_n" + std::to_string(n), phase, std::move(c), std::move(h), std::move(primaries)};
    m.validate();
    return m;
}

StencilForm StencilForm::normalized() const {
    Rational lead = 0;
    for (const auto& t : terms) {
        if (!is_zero(t.local)) {
            lead = t.local;
            break;
        }
        if (!is_zero(t.derivative)) {
            lead = t.derivative;
            break;
        }
    }
    StencilForm out = *this;
    if (is_zero(lead)) return out;
    for (auto& t : out.terms) {
        t.local /= lead;
        t.derivative /= lead;
    }
    return out;
}

bool StencilForm::same_shape(const StencilForm& other) const {
    return normalized().terms == other.normalized().terms;
}

std::string StencilForm::to_string() const {
    std::ostringstream out;
    bool first = true;
    auto emit = [&](const Rational& k, const std::string& what) {
        if (is_zero(k)) return;
        if (first) {
            if (sgn(k) < 0) out << '-';
        } else {
            out << (sgn(k) < 0 ? " - " : " + ");
        }
        first = false;
        const Rational mag = abs(k);
        if (mag != 1) out << symchain::to_string(mag) << '*';
        out << what;
    };
    for (const auto& t : terms) {
        emit(t.local, t.block);
        emit(t.derivative, "D(" + t.block + ")");
    }
    if (first) out << '0';
    return out.str();
}

SiteDescription map_constraint_to_sites(const Expression& constraint, const FieldSet& fields,
                                        const RationalMatrix& d) {
    SiteDescription out;
    out.text = constraint.to_string();
    if (!constraint.is_linear() || !is_zero(constraint.constant_term())) return out;
    const std::size_t n = fields.sites();
    if (d.rows() != n || d.cols() != n) throw std::invalid_argument("difference matrix does not match the lattice");

    const auto coeffs = constraint.linear_coefficients();
    const auto& vars = *constraint.vars();
    std::vector<std::vector<Rational>> block_coeffs(fields.blocks().size(), std::vector<Rational>(n));
    std::size_t covered = 0;
    for (std::size_t b = 0; b < fields.blocks().size(); ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            auto idx = vars.find(FieldSet::site_name(fields.blocks()[b], i));
            if (!idx) continue;
            block_coeffs[b][i] = coeffs[*idx];
            if (!is_zero(coeffs[*idx])) ++covered;
        }
    }
    const std::size_t nonzero =
        static_cast<std::size_t>(std::count_if(coeffs.begin(), coeffs.end(), [](const Rational& q) { return !is_zero(q); }));
    if (covered != nonzero) return out;  // mentions variables outside the lattice

    for (std::size_t site = 0; site < n; ++site) {
        StencilForm form{site, {}};
        bool fits = true;
        for (std::size_t b = 0; b < fields.blocks().size() && fits; ++b) {
            const auto& cb = block_coeffs[b];
            Rational beta = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != site && !is_zero(d(site, j))) {
                    beta = cb[j] / d(site, j);
                    break;
                }
            }
            const Rational alpha = cb[site] - beta * d(site, site);
            for (std::size_t k = 0; k < n && fits; ++k) {
                const Rational expect = (k == site ? alpha : Rational(0)) + beta * d(site, k);
                fits = expect == cb[k];
            }
            if (fits && (!is_zero(alpha) || !is_zero(beta))) {
                form.terms.push_back(StencilTerm{fields.blocks()[b], alpha, beta});
            }
        }
        if (fits) {
            out.text = form.to_string() + " @ site " + std::to_string(site + 1);
            out.stencil = std::move(form);
            return out;
        }
    }
    return out;
}

}  // namespace symchain
