#include "coulomb/golden.hpp"

#include <algorithm>
#include <charconv>

#include "coulomb/golden_data.hpp"

namespace coulomb {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string_view golden_main_csv() { return embedded::kMainTable; }
std::string_view golden_sweep_csv() { return embedded::kSweepTable; }

std::uint64_t golden_main_hash_expected() { return 0x9a7d68e8884f8efdull; }
std::uint64_t golden_sweep_hash_expected() { return 0x5760c429c8ce2f0aull; }

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw BadInputFile("bad integer '" + std::string(s) + "' in reference table");
  return v;
}

std::vector<int> parse_occupations(std::string_view s) {
  std::vector<int> occ;
  while (!s.empty()) {
    auto pos = s.find('/');
    occ.push_back(parse_int(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return occ;
}

std::vector<GoldenRow> parse_table(std::string_view csv) {
  std::vector<GoldenRow> rows;
  bool header_seen = false;
  while (!csv.empty()) {
    auto eol = csv.find('\n');
    std::string_view line = csv.substr(0, eol);
    csv.remove_prefix(eol == std::string_view::npos ? csv.size() : eol + 1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {  // "M,model,sim"
      header_seen = true;
      continue;
    }
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos)
      throw BadInputFile("malformed reference table row '" + std::string(line) +
                         "'");
    GoldenRow row;
    row.m = parse_int(line.substr(0, c1));
    row.model = parse_occupations(line.substr(c1 + 1, c2 - c1 - 1));
    row.sim = parse_occupations(line.substr(c2 + 1));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

const std::vector<GoldenRow>& golden_main() {
  static const std::vector<GoldenRow> rows = parse_table(golden_main_csv());
  return rows;
}

const std::vector<GoldenRow>& golden_sweep() {
  static const std::vector<GoldenRow> rows = parse_table(golden_sweep_csv());
  return rows;
}

std::optional<GoldenRow> golden_row_opt(int m) {
  for (const auto& r : golden_main())
    if (r.m == m) return r;
  for (const auto& r : golden_sweep())
    if (r.m == m) return r;
  return std::nullopt;
}

const GoldenRow& golden_row(int m) {
  for (const auto& r : golden_main())
    if (r.m == m) return r;
  for (const auto& r : golden_sweep())
    if (r.m == m) return r;
  throw UnknownM(m);
}

std::vector<int> golden_ms() {
  std::vector<int> ms;
  for (const auto& r : golden_main()) ms.push_back(r.m);
  for (const auto& r : golden_sweep()) ms.push_back(r.m);
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

}  // namespace coulomb
