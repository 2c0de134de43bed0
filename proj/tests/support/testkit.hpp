#pragma once

#include <symchain/chain.hpp>
#include <symchain/expr.hpp>
#include <symchain/linalg.hpp>
#include <symchain/model.hpp>

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testkit {

using symchain::Expression;
using symchain::Rational;
using symchain::RationalMatrix;

// Seed shared by every property test; test_main sets it from --seed.
std::uint64_t seed();
void set_seed(std::uint64_t s);

std::filesystem::path fixture(const std::string& name);

class Rng {
public:
    explicit Rng(std::uint64_t s) : gen_(s) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
    bool coin() { return integer(0, 1) == 1; }
    // Small numerator over a small positive denominator.
    Rational rational(long bound = 5, long max_den = 3);
    // Like rational() but zero with probability `zero_prob` percent.
    Rational sparse(int zero_prob, long bound = 5, long max_den = 3);

private:
    std::mt19937_64 gen_;
};

RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int zero_prob = 30);

// Reference determinant by expansion along the first row.
Rational cofactor_determinant(const RationalMatrix& m);

// Polynomial of degree <= `degree` over the first `active` variables of `vars`.
Expression random_polynomial(Rng& rng, const symchain::VarTablePtr& vars, std::size_t active, unsigned degree);

// Random first-order model in canonical form: pairs q_i / p_i with c_q = p,
// a homogeneous quadratic Hamiltonian and up to two independent linear
// primaries.
symchain::FirstOrderModel random_model(std::uint64_t s);

// Chain exprs with the nonzero-scale freedom removed, for direct comparison.
std::vector<std::string> monic_strings(const std::vector<Expression>& exprs);

bool proportional(const std::vector<Rational>& a, const std::vector<Rational>& b);

// True when `target` is a combination of `basis`.
bool in_row_span(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& target);

}  // namespace testkit
