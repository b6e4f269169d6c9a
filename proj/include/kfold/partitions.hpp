#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfold {

// Weakly decreasing sequence of positive parts, lambda |- k.
using Partition = std::vector<int>;

inline int weight(const Partition& p) {
  int w = 0;
  for (int x : p) w += x;
  return w;
}

bool is_partition(const Partition& p);

// All partitions of k with at most max_rows parts, reverse-lexicographic
// ((k) first, (1,...,1) last). max_rows <= 0 means no cap.
std::vector<Partition> enumerate_partitions(int k, int max_rows = 0);

// Dimension of the S_k irrep labeled by lambda (hook length formula).
std::int64_t hook_dimension(const Partition& lambda);

// Conjugacy class size of the cycle type rho in S_k: k!/z_rho.
std::int64_t class_size(const Partition& rho);

std::int64_t factorial(int k);

std::string partition_str(const Partition& p);

}  // namespace kfold
