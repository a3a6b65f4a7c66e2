#pragma once

#include "coulomb/types.hpp"

namespace coulomb {

struct ShellPrediction {
  int m = 0;
  std::vector<int> occupations;  // outermost first, sums to m
};

// greedy outermost-first filling: each ring takes
// min(remaining, nmax_total(remaining)); a final remainder of 1 becomes a
// center "ring" of one particle
ShellPrediction shell_fill(int m);

std::vector<ShellPrediction> shell_table(const std::vector<int>& ms);

// "36/28/20/12/4"
std::string format_occupations(const std::vector<int>& occ);

}  // namespace coulomb
