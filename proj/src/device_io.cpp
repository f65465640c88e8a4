#include "zzsim/device_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "zzsim/errors.hpp"
#include "zzsim/units.hpp"

namespace zzsim {

namespace {

using nlohmann::json;

struct Field {
  const char* key;
  bool required;
};

constexpr Field kFields[] = {
    {"name", false},           {"omega_1_ghz", true},     {"alpha_1_ghz", true},
    {"t1_1_us", true},         {"t2e_1_us", true},        {"omega_2_ghz", true},
    {"alpha_2_ghz", true},     {"t1_2_us", true},         {"t2e_2_us", true},
    {"omega_plus_ghz", true},  {"alpha_plus_ghz", false}, {"omega_minus_max_ghz", true},
    {"alpha_minus_ghz", true}, {"g_1plus_ghz", true},     {"g_2plus_ghz", true},
    {"g_1minus_ghz", true},    {"g_2minus_ghz", true},    {"flux_quantum_wb", false},
};

double number(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw DomainError(std::string("device field '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

DeviceParams parse_device(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("device file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("device file must contain a JSON object");

  std::set<std::string> known;
  for (const auto& f : kFields) {
    known.insert(f.key);
    if (f.required && !doc.contains(f.key))
      throw DomainError(std::string("device file is missing '") + f.key + "'");
  }
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw DomainError("unknown device field '" + key + "'");

  DeviceParams p;
  if (doc.contains("name")) p.name = doc.at("name").get<std::string>();
  p.omega_1 = units::from_ghz(number(doc, "omega_1_ghz"));
  p.omega_2 = units::from_ghz(number(doc, "omega_2_ghz"));
  p.omega_plus = units::from_ghz(number(doc, "omega_plus_ghz"));
  p.omega_minus_max = units::from_ghz(number(doc, "omega_minus_max_ghz"));
  p.alpha_1 = units::from_ghz(number(doc, "alpha_1_ghz"));
  p.alpha_2 = units::from_ghz(number(doc, "alpha_2_ghz"));
  if (doc.contains("alpha_plus_ghz")) p.alpha_plus = units::from_ghz(number(doc, "alpha_plus_ghz"));
  p.alpha_minus = units::from_ghz(number(doc, "alpha_minus_ghz"));
  p.g_1plus = units::from_ghz(number(doc, "g_1plus_ghz"));
  p.g_2plus = units::from_ghz(number(doc, "g_2plus_ghz"));
  p.g_1minus = units::from_ghz(number(doc, "g_1minus_ghz"));
  p.g_2minus = units::from_ghz(number(doc, "g_2minus_ghz"));
  p.t1 = {units::from_us(number(doc, "t1_1_us")), units::from_us(number(doc, "t1_2_us"))};
  p.t2 = {units::from_us(number(doc, "t2e_1_us")), units::from_us(number(doc, "t2e_2_us"))};
  if (doc.contains("flux_quantum_wb")) p.flux_quantum = number(doc, "flux_quantum_wb");
  p.validate();
  return p;
}

std::filesystem::path resolve_device_path(const std::string& path_or_name) {
  namespace fs = std::filesystem;
  if (fs::exists(path_or_name)) return path_or_name;
  const std::string file = path_or_name + (fs::path(path_or_name).has_extension() ? "" : ".json");
  if (const char* dir = std::getenv("ZZSIM_DEVICE_DIR"); dir && *dir)
    if (fs::exists(fs::path(dir) / file)) return fs::path(dir) / file;
  if (fs::exists(fs::path(ZZSIM_DATA_DIR) / file)) return fs::path(ZZSIM_DATA_DIR) / file;
  throw DomainError("device file not found: " + path_or_name);
}

DeviceFile load_device(const std::string& path_or_name) {
  DeviceFile out;
  out.path = resolve_device_path(path_or_name);
  std::ifstream in(out.path, std::ios::binary);
  if (!in) throw DomainError("cannot read device file " + out.path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  out.hash = fnv1a_hex(text);
  try {
    out.params = parse_device(text);
  } catch (const DomainError& e) {
    throw DomainError(out.path.string() + ": " + e.what());
  }
  if (out.params.name.empty()) out.params.name = out.path.stem().string();
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace zzsim
