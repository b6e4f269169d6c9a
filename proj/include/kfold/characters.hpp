#pragma once
#include "kfold/partitions.hpp"

namespace kfold {

// Irreducible S_k character chi_lambda on the class of cycle type rho,
// by the Murnaghan-Nakayama rule. Exact integer arithmetic.
std::int64_t character(const Partition& lambda, const Partition& rho);

struct CharacterTable {
  int k = 0;
  std::vector<Partition> irreps;   // row labels, reverse-lex
  std::vector<Partition> classes;  // column labels, reverse-lex
  std::vector<std::int64_t> sizes; // class sizes, same order as classes
  std::vector<std::vector<std::int64_t>> entries;  // entries[row][col]
};

CharacterTable character_table(int k);

// Exact orthogonality checks; throw on violation (used by tests and audit).
void check_orthogonality(const CharacterTable& t);

}  // namespace kfold
