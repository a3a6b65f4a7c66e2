#include "coulomb/shell_model.hpp"

#include "coulomb/spectral.hpp"

namespace coulomb {

ShellPrediction shell_fill(int m) {
  if (m < 1) throw TooFewParticles(m < 0 ? 0 : static_cast<std::size_t>(m), 1);
  ShellPrediction sp;
  sp.m = m;
  int remaining = m;
  while (remaining > 0) {
    int cap = nmax_total(static_cast<std::size_t>(remaining));
    int n = cap < remaining ? cap : remaining;
    if (n < 1) n = remaining;  // unreachable with the clamped capacity
    sp.occupations.push_back(n);
    remaining -= n;
  }
  return sp;
}

std::vector<ShellPrediction> shell_table(const std::vector<int>& ms) {
  std::vector<ShellPrediction> out;
  out.reserve(ms.size());
  for (int m : ms) out.push_back(shell_fill(m));
  return out;
}

std::string format_occupations(const std::vector<int>& occ) {
  std::string s;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (i) s += '/';
    s += std::to_string(occ[i]);
  }
  return s;
}

}  // namespace coulomb
