#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "coulomb/types.hpp"

namespace coulomb {

// one row of the embedded reference tables: model = shell-model prediction,
// sim = annealing observation; both outermost first
struct GoldenRow {
  int m = 0;
  std::vector<int> model;
  std::vector<int> sim;
};

std::uint64_t fnv1a64(std::string_view bytes);

// embedded CSV bytes, exactly as shipped in data/
std::string_view golden_main_csv();
std::string_view golden_sweep_csv();

// expected fnv1a64 of the embedded CSVs; drift is an error
std::uint64_t golden_main_hash_expected();
std::uint64_t golden_sweep_hash_expected();

const std::vector<GoldenRow>& golden_main();
const std::vector<GoldenRow>& golden_sweep();

// searches both tables; throws UnknownM
const GoldenRow& golden_row(int m);
std::optional<GoldenRow> golden_row_opt(int m);

// every M present in either table, ascending
std::vector<int> golden_ms();

}  // namespace coulomb
