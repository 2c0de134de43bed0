#include <symchain/report.hpp>

#include <sstream>

namespace symchain {

using nlohmann::ordered_json;

std::string format_vector(const std::vector<Rational>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

namespace {

ordered_json rationals(const std::vector<Rational>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

ordered_json exprs(const std::vector<Expression>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& e : v) a.push_back(e.to_string());
    return a;
}

ordered_json constraint_tree(const Constraint& c, const LatticeContext* lattice) {
    ordered_json j;
    j["level"] = c.level;
    j["expr"] = c.expr.to_string();
    j["raw"] = c.raw.to_string();
    j["origin"] = to_string(c.origin);
    j["generator"] = c.generator ? rationals(*c.generator) : ordered_json(nullptr);
    if (lattice) j["site"] = map_constraint_to_sites(c.expr, lattice->fields, lattice->difference).text;
    return j;
}

std::string termination_line(const ChainReport& r) {
    std::ostringstream out;
    out << to_string(r.termination);
    if (r.termination == Termination::nonsingular && r.determinant) {
        out << ", det(F^(" << r.final_level << ")) = " << to_string(*r.determinant);
        if (r.generic) out << " (generic point)";
    } else {
        out << " at level " << r.final_level;
    }
    return out.str();
}

}  // namespace

ordered_json report_tree(const ChainReport& r, const Comparison* cmp, const LatticeContext* lattice) {
    ordered_json j;
    j["model"] = r.model;
    j["zeta"] = r.zeta;
    j["xi"] = r.xi;
    j["constraints"] = ordered_json::array();
    for (const auto& c : r.constraints) j["constraints"].push_back(constraint_tree(c, lattice));
    j["eigenvectors"] = ordered_json::array();
    for (const auto& s : r.steps) {
        ordered_json step;
        step["level"] = s.level;
        step["truncated"] = s.truncated;
        step["kept_levels"] = s.kept_levels;
        step["shape"] = {s.rows, s.cols};
        step["generic"] = s.extraction.generic;
        step["vectors"] = ordered_json::array();
        for (const auto& c : s.extraction.candidates) {
            ordered_json v;
            v["vector"] = rationals(c.vector);
            v["candidate"] = c.value.to_string();
            v["classification"] = to_string(c.classification);
            step["vectors"].push_back(std::move(v));
        }
        j["eigenvectors"].push_back(std::move(step));
    }
    j["truncations"] = r.truncations;
    ordered_json term;
    term["kind"] = to_string(r.termination);
    term["level"] = r.final_level;
    term["determinant"] = r.determinant ? ordered_json(to_string(*r.determinant)) : ordered_json(nullptr);
    j["termination"] = std::move(term);
    j["generic"] = r.generic;
    j["fingerprint"] = r.fingerprint;
    j["warnings"] = r.warnings;
    if (cmp) {
        ordered_json c;
        c["oracle"] = ordered_json::array();
        for (const auto& oc : cmp->oracle.constraints) c["oracle"].push_back(constraint_tree(oc, lattice));
        c["multiplier_conditions"] = ordered_json::array();
        for (const auto& mc : cmp->oracle.multiplier_conditions) {
            c["multiplier_conditions"].push_back({{"round", mc.round}, {"condition", mc.condition.to_string()}});
        }
        c["multipliers"] = cmp->oracle.multipliers ? exprs(*cmp->oracle.multipliers) : ordered_json(nullptr);
        c["verdict"] = cmp->verdict.equal ? "equal" : "different";
        c["only_in_chain"] = exprs(cmp->verdict.only_in_chain);
        c["only_in_oracle"] = exprs(cmp->verdict.only_in_oracle);
        j["comparison"] = std::move(c);
    } else {
        j["comparison"] = nullptr;
    }
    return j;
}

std::string report_text(const ChainReport& r, const Comparison* cmp, const LatticeContext* lattice) {
    std::ostringstream out;
    out << "model: " << r.model << '\n';
    out << "level | constraint | raw | origin | eigenvector\n";
    for (const auto& c : r.constraints) {
        out << c.level << " | " << c.expr.to_string() << " | " << c.raw.to_string() << " | " << to_string(c.origin)
            << " | " << (c.generator ? format_vector(*c.generator) : "-") << '\n';
        if (lattice) {
            out << "  site form: " << map_constraint_to_sites(c.expr, lattice->fields, lattice->difference).text
                << '\n';
        }
    }
    out << "truncations: ";
    if (r.truncations.empty()) out << "none";
    for (std::size_t i = 0; i < r.truncations.size(); ++i) out << (i ? ", " : "") << r.truncations[i];
    out << '\n';
    out << "termination: " << termination_line(r) << '\n';
    for (const auto& w : r.warnings) out << "warning: " << w << '\n';
    if (cmp) {
        out << "oracle constraints:\n";
        for (const auto& c : cmp->oracle.constraints) out << c.level << " | " << c.expr.to_string() << '\n';
        out << "verdict: " << (cmp->verdict.equal ? "equal" : "different") << " (" << r.constraints.size()
            << " chain vs " << cmp->oracle.constraints.size() << " oracle constraints)\n";
        for (const auto& e : cmp->verdict.only_in_chain) out << "only in chain: " << e.to_string() << '\n';
        for (const auto& e : cmp->verdict.only_in_oracle) out << "only in oracle: " << e.to_string() << '\n';
    }
    return out.str();
}

}  // namespace symchain
