#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cantorsum/interval_union.hpp"

namespace cantorsum {

inline constexpr uint64_t kSweepCellCap = 1000000;

struct SweepAxis {
  std::string name;
  std::string pointer;  // JSON pointer into the template config
  double lo = 0.0;
  double hi = 0.0;
  uint32_t steps = 0;
};

struct SweepSpec {
  std::string task;  // classify | sum-measure | verify
  std::vector<SweepAxis> axes;
  nlohmann::json config_template;
};

SweepSpec parse_sweep_spec(const nlohmann::json& root);

/// Grid run of the per-cell task. Cells are evaluated by a worker pool and
/// emitted in row-major grid order; per-cell failures land in the error
/// column and the run continues.
std::string run_sweep(const SweepSpec& spec, uint64_t seed, int workers);

struct RegionMapResult {
  std::string csv;
  std::string pgm;
  uint32_t width = 0;
  uint32_t height = 0;
  std::vector<uint8_t> pixels;  // row-major, b ascending by row, a ascending by column
};

/// Zone map over an (a, b) grid: CSV rows and a P2 PGM with 0 = cantor zone,
/// 1 = undecided region, 2 = interval zone.
RegionMapResult region_map(double a_lo, double a_hi, uint32_t a_steps, double b_lo, double b_hi,
                           uint32_t b_steps);

std::string format_csv_number(double v);

}  // namespace cantorsum
