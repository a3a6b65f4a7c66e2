#pragma once

#include <string>

#include "coulomb/types.hpp"

namespace coulomb {

// shortest form of a double that parses back to the same bits (%.17g)
std::string fmt_double(double v);

struct LoadedConfig {
  Configuration config;
  ModelParams params;
};

// {"n": int, "q": real, "positions": [[x, y], ...]} with full double
// precision; writing then reading is value-exact
std::string write_configuration(const Configuration& c, const ModelParams& p);
LoadedConfig parse_configuration(const std::string& json_text);

LoadedConfig read_configuration_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace coulomb
