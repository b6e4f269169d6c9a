#pragma once
#include <map>

#include "kfold/characters.hpp"

namespace kfold {

// Multiplicities B^{lambda lambda'}_mu of the S_k x S_{k'} irrep
// lambda (x) lambda' in the restriction of the S_{k+k'} irrep mu.
std::map<std::pair<Partition, Partition>, std::int64_t> branching(
    const Partition& mu, int k, int kp);

// Multiplicity of mu in lambda (x) lambda' as S_k representations.
std::int64_t kronecker(const Partition& lambda, const Partition& lambdap,
                       const Partition& mu);

// Multiplicities of mu in the symmetric / antisymmetric square of lambda.
std::int64_t kronecker_sym2(const Partition& lambda, const Partition& mu);
std::int64_t kronecker_alt2(const Partition& lambda, const Partition& mu);

// Multiplicity of lambda |- k in the permutation representation on V^{(x)k},
// (1/k!) sum_sigma chi_lambda(sigma) d^{cycles(sigma)}. Equals the Weyl
// dimension of the U(d) irrep V_lambda.
std::int64_t perm_rep_multiplicity(const Partition& lambda, int d);

// dim V_lambda over U(d), hook-content formula; 0 if rows(lambda) > d.
std::int64_t unitary_irrep_dim(const Partition& lambda, int d);

struct CCoefficient {
  Partition mu;        // |- 2k
  Partition mu_prime;  // |- k
  char sign;           // '+' or '-'
  std::int64_t value;
};

// Bipartite coefficients C^k_{mu mu' s} = sum_{lambda,lambda'} B * c,
// with lambda, lambda', mu restricted to at most d rows. The sign label:
// '+' collects diagonal lambda=lambda' contributions (Sym^2 part),
// '-' collects the Alt^2 part plus ordered off-diagonal pairs.
// Zero entries are omitted. Deterministic reverse-lex ordering.
std::vector<CCoefficient> c_coefficients(int k, int d);

}  // namespace kfold
