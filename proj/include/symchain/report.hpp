#pragma once

#include <symchain/chain.hpp>
#include <symchain/dirac.hpp>
#include <symchain/lattice.hpp>

#include <json.hpp>

#include <string>

namespace symchain {

struct Comparison {
    OracleResult oracle;
    SpanVerdict verdict;
};

/// Extra context for lattice models: constraints get a per-site stencil.
struct LatticeContext {
    FieldSet fields;
    RationalMatrix difference;
};

/// Lossless tree: model, zeta, xi, constraints, eigenvectors, truncations,
/// termination, generic, fingerprint, warnings, comparison.
nlohmann::ordered_json report_tree(const ChainReport& r, const Comparison* cmp = nullptr,
                                   const LatticeContext* lattice = nullptr);

/// Table "level | constraint | raw | origin | eigenvector" plus the
/// truncation and termination lines.
std::string report_text(const ChainReport& r, const Comparison* cmp = nullptr,
                        const LatticeContext* lattice = nullptr);

std::string format_vector(const std::vector<Rational>& v);

}  // namespace symchain
