#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cantorsum/family.hpp"
#include "cantorsum/geometry.hpp"
#include "cantorsum/measures.hpp"
#include "cantorsum/transversality.hpp"

namespace cantorsum {

using json = nlohmann::json;

struct CapsConfig {
  uint64_t words = kDefaultWordCap;
  uint64_t pairs = kDefaultPairCap;
};

/// Rejects keys outside the allowed set; errors carry the JSON path.
void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed);

json parse_config_text(const std::string& text);
json load_config_file(const std::string& path);

CapsConfig parse_caps(const json& root);
uint64_t parse_seed(const json& root);

CoefFn parse_coef(const json& j, const std::string& path);
PerturbationField parse_perturbation(const json& j, const std::string& path);
Ifs parse_ifs(const json& j, const std::string& path);
CantorFamily parse_family(const json& j, const std::string& path);

/// A set operand: middle-alpha ratio, explicit ifs, family at a parameter, or
/// a fixed interval union.
CoverSource parse_set(const json& j, const std::string& path);

/// Contraction ratios from whichever of ratios / middle_alpha / ifs / family
/// sections is present (family evaluated at the window midpoint).
std::vector<double> config_ratios(const json& root);

struct EtaSpec {
  MeasureHistogram histogram;
  double d = 0.0;
  double frostman_C = 0.0;
};

EtaSpec parse_measure(const json& j, const std::string& path, uint64_t word_cap);

VerifySettings parse_verify_settings(const json& root, uint64_t seed, uint64_t word_cap);

}  // namespace cantorsum
