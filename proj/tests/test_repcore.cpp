#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kfold/repcore.hpp"

using namespace kfold;

TEST_CASE("partition enumeration") {
  CHECK(enumerate_partitions(4).size() == 5);
  CHECK(enumerate_partitions(1) == std::vector<Partition>{{1}});
  CHECK(enumerate_partitions(6).size() == 11);
  // reverse-lexicographic order
  auto p4 = enumerate_partitions(4);
  CHECK(p4[0] == Partition{4});
  CHECK(p4[1] == Partition{3, 1});
  CHECK(p4[2] == Partition{2, 2});
  CHECK(p4[3] == Partition{2, 1, 1});
  CHECK(p4[4] == Partition{1, 1, 1, 1});
  CHECK(enumerate_partitions(4, 2).size() == 3);
  CHECK_THROWS_AS(enumerate_partitions(0), std::invalid_argument);
}

TEST_CASE("hook dimensions and class sizes") {
  for (int k = 1; k <= 6; ++k) {
    std::int64_t sum = 0, csum = 0;
    for (const auto& lam : enumerate_partitions(k)) {
      sum += hook_dimension(lam) * hook_dimension(lam);
      csum += class_size(lam);
    }
    CHECK(sum == factorial(k));
    CHECK(csum == factorial(k));
  }
  CHECK(hook_dimension({2, 1}) == 2);
  CHECK(hook_dimension({3, 1}) == 3);
  CHECK(hook_dimension({2, 2}) == 2);
}

TEST_CASE("S4 character table, standard labels") {
  CHECK(character({2, 2}, {3, 1}) == -1);
  CHECK(character({1, 1, 1, 1}, {2, 1, 1}) == -1);
  CHECK(character({2, 1, 1}, {1, 1, 1, 1}) == 3);
  // full 25-entry table, rows (4),(3,1),(2,2),(2,1,1),(1^4),
  // columns (1^4),(2,1,1),(2,2),(3,1),(4)
  std::int64_t expected[5][5] = {
      {1, 1, 1, 1, 1},
      {3, 1, -1, 0, -1},
      {2, 0, 2, -1, 0},
      {3, -1, -1, 0, 1},
      {1, -1, 1, 1, -1},
  };
  auto t = character_table(4);
  std::vector<Partition> cols = {{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {3, 1}, {4}};
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c)
      CHECK(character(t.irreps[r], cols[c]) == expected[r][c]);
  check_orthogonality(t);
  for (int k = 1; k <= 6; ++k) check_orthogonality(character_table(k));
  CHECK_THROWS_AS(character({2, 1}, {2, 2}), std::invalid_argument);
}

TEST_CASE("character at identity equals hook dimension") {
  for (int k = 1; k <= 6; ++k)
    for (const auto& lam : enumerate_partitions(k)) {
      Partition id(k, 1);
      CHECK(character(lam, id) == hook_dimension(lam));
    }
}

TEST_CASE("branching S4 -> S2 x S2") {
  Partition plus = {2}, minus = {1, 1};
  auto b4 = branching({4}, 2, 2);
  CHECK(b4.size() == 1);
  CHECK(b4.at({plus, plus}) == 1);
  auto b211 = branching({2, 1, 1}, 2, 2);
  CHECK(b211.size() == 3);
  CHECK(b211.at({plus, minus}) == 1);
  CHECK(b211.at({minus, plus}) == 1);
  CHECK(b211.at({minus, minus}) == 1);
  auto b1111 = branching({1, 1, 1, 1}, 2, 2);
  CHECK(b1111.size() == 1);
  CHECK(b1111.at({minus, minus}) == 1);
  auto b31 = branching({3, 1}, 2, 2);
  CHECK(b31.at({plus, plus}) == 1);
  CHECK(b31.at({plus, minus}) == 1);
  CHECK(b31.at({minus, plus}) == 1);
  auto b22 = branching({2, 2}, 2, 2);
  CHECK(b22.at({plus, plus}) == 1);
  CHECK(b22.at({minus, minus}) == 1);
  CHECK(b22.size() == 2);
  CHECK_THROWS_AS(branching({3, 1}, 2, 1), std::invalid_argument);
}

TEST_CASE("branching dimension sum rule") {
  for (int k = 1; k <= 3; ++k)
    for (int kp = 1; kp <= 3; ++kp)
      for (const auto& mu : enumerate_partitions(k + kp)) {
        std::int64_t sum = 0;
        for (const auto& [pair, b] : branching(mu, k, kp))
          sum += b * hook_dimension(pair.first) * hook_dimension(pair.second);
        CHECK(sum == hook_dimension(mu));
      }
}

TEST_CASE("kronecker coefficients") {
  CHECK(kronecker({2}, {2}, {2}) == 1);
  CHECK(kronecker({2}, {1, 1}, {1, 1}) == 1);
  CHECK(kronecker({1, 1}, {1, 1}, {2}) == 1);
  CHECK(kronecker({2}, {1, 1}, {2}) == 0);
  CHECK(kronecker({2, 1}, {2, 1}, {2, 1}) == 1);
  CHECK_THROWS_AS(kronecker({2}, {2}, {3}), std::invalid_argument);
  // sym/alt split recombines to the full square
  for (const auto& lam : enumerate_partitions(3))
    for (const auto& mu : enumerate_partitions(3))
      CHECK(kronecker_sym2(lam, mu) + kronecker_alt2(lam, mu) ==
            kronecker(lam, lam, mu));
}

TEST_CASE("permutation representation multiplicities") {
  CHECK(perm_rep_multiplicity({2}, 2) == 3);
  CHECK(perm_rep_multiplicity({1, 1}, 3) == 3);
  CHECK(perm_rep_multiplicity({2, 1}, 2) == 2);
  // Schur-Weyl consistency and completeness
  for (int k = 1; k <= 4; ++k)
    for (int d = 1; d <= 4; ++d) {
      std::int64_t total = 0;
      for (const auto& lam : enumerate_partitions(k)) {
        CHECK(perm_rep_multiplicity(lam, d) == unitary_irrep_dim(lam, d));
        total += unitary_irrep_dim(lam, d) * hook_dimension(lam);
      }
      std::int64_t dk = 1;
      for (int i = 0; i < k; ++i) dk *= d;
      CHECK(total == dk);
    }
}

TEST_CASE("unitary irrep dimensions") {
  CHECK(unitary_irrep_dim({1}, 5) == 5);
  CHECK(unitary_irrep_dim({2}, 3) == 6);
  CHECK(unitary_irrep_dim({2, 2}, 2) == 1);
  CHECK(unitary_irrep_dim({1, 1, 1}, 2) == 0);
}

TEST_CASE("c coefficients for k=2") {
  auto table = c_coefficients(2, 4);
  auto get = [&](Partition mu, Partition mup, char s) -> std::int64_t {
    for (const auto& e : table)
      if (e.mu == mu && e.mu_prime == mup && e.sign == s) return e.value;
    return 0;
  };
  CHECK(get({4}, {2}, '+') == 1);
  CHECK(get({3, 1}, {2}, '+') == 1);
  CHECK(get({3, 1}, {1, 1}, '-') == 2);
  CHECK(get({2, 2}, {2}, '+') == 2);
  CHECK(get({2, 1, 1}, {2}, '+') == 1);
  CHECK(get({2, 1, 1}, {1, 1}, '-') == 2);
  CHECK(get({1, 1, 1, 1}, {2}, '+') == 1);
  CHECK(table.size() == 7);
  std::int64_t sum2 = 0;
  for (const auto& e : table) sum2 += e.value * e.value;
  CHECK(sum2 == 16);
  // row filter at small d
  auto sumsq = [](const std::vector<CCoefficient>& t) {
    std::int64_t s = 0;
    for (const auto& e : t) s += e.value * e.value;
    return s;
  };
  CHECK(sumsq(c_coefficients(2, 2)) == 10);
  CHECK(sumsq(c_coefficients(2, 3)) == 15);
  CHECK(sumsq(c_coefficients(2, 5)) == 16);
  CHECK(sumsq(c_coefficients(1, 2)) == 2);
}
