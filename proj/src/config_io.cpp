#include "coulomb/config_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coulomb {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string write_configuration(const Configuration& c,
                                const ModelParams& p) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"n\": " << c.size() << ",\n";
  os << "  \"q\": " << fmt_double(p.q) << ",\n";
  os << "  \"positions\": [\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << "    [" << fmt_double(c.positions[i].x()) << ", "
       << fmt_double(c.positions[i].y()) << "]"
       << (i + 1 < c.size() ? "," : "") << "\n";
  }
  os << "  ]\n";
  os << "}\n";
  return os.str();
}

LoadedConfig parse_configuration(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw BadInputFile(std::string("configuration is not valid JSON: ") +
                       e.what());
  }
  if (!j.is_object() || !j.contains("positions") ||
      !j["positions"].is_array())
    throw BadInputFile("configuration needs a \"positions\" array");

  LoadedConfig lc;
  for (const auto& pt : j["positions"]) {
    if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() ||
        !pt[1].is_number())
      throw BadInputFile("positions must be [x, y] pairs");
    double x = pt[0].get<double>();
    double y = pt[1].get<double>();
    if (!std::isfinite(x) || !std::isfinite(y))
      throw BadInputFile("positions must be finite");
    lc.config.positions.emplace_back(x, y);
  }
  if (lc.config.positions.empty())
    throw BadInputFile("configuration has no particles");

  if (j.contains("n")) {
    if (!j["n"].is_number_integer() ||
        j["n"].get<long long>() !=
            static_cast<long long>(lc.config.positions.size()))
      throw BadInputFile("\"n\" disagrees with the positions array");
  }
  if (j.contains("q")) {
    if (!j["q"].is_number()) throw BadInputFile("\"q\" must be a number");
    lc.params.q = j["q"].get<double>();
    if (!(lc.params.q >= 0.0))
      throw BadInputFile("\"q\" must be non-negative");
  }
  return lc;
}

LoadedConfig read_configuration_file(const std::string& path) {
  return parse_configuration(read_text_file(path));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw BadInputFile("cannot open '" + path + "' for writing");
  f << content;
  if (!f.good()) throw BadInputFile("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw BadInputFile("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace coulomb
