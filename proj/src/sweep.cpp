#include "cantorsum/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <thread>

#include "cantorsum/config.hpp"
#include "cantorsum/errors.hpp"
#include "cantorsum/geometry.hpp"

namespace cantorsum {

std::string format_csv_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

SweepSpec parse_sweep_spec(const nlohmann::json& root) {
  auto it = root.find("sweep");
  if (it == root.end()) raise(Errc::config, "config error at /sweep: missing sweep section");
  const json& j = *it;
  require_keys(j, "/sweep", {"task", "axes", "template"});
  SweepSpec spec;
  spec.task = j.value("task", "");
  if (spec.task != "classify" && spec.task != "sum-measure" && spec.task != "verify") {
    raise(Errc::config,
          "config error at /sweep/task: expected one of: classify, sum-measure, verify");
  }
  if (!j.contains("axes") || !j["axes"].is_array() || j["axes"].empty()) {
    raise(Errc::config, "config error at /sweep/axes: expected a nonempty array");
  }
  size_t idx = 0;
  for (const json& aj : j["axes"]) {
    std::string ap = "/sweep/axes/" + std::to_string(idx++);
    require_keys(aj, ap, {"name", "pointer", "lo", "hi", "steps"});
    SweepAxis ax;
    ax.name = aj.value("name", "");
    ax.pointer = aj.value("pointer", "");
    if (ax.name.empty()) raise(Errc::config, "config error at " + ap + "/name: missing");
    if (ax.pointer.empty() || ax.pointer[0] != '/') {
      raise(Errc::config, "config error at " + ap + "/pointer: expected a JSON pointer");
    }
    if (!aj.contains("lo") || !aj.contains("hi") || !aj.contains("steps")) {
      raise(Errc::config, "config error at " + ap + ": need lo, hi, steps");
    }
    ax.lo = aj["lo"].get<double>();
    ax.hi = aj["hi"].get<double>();
    ax.steps = aj["steps"].get<uint32_t>();
    if (!(ax.lo < ax.hi)) raise(Errc::config, "config error at " + ap + ": need lo < hi");
    if (ax.steps < 2) raise(Errc::config, "config error at " + ap + "/steps: must be >= 2");
    spec.axes.push_back(std::move(ax));
  }
  if (!j.contains("template") || !j["template"].is_object()) {
    raise(Errc::config, "config error at /sweep/template: expected an object");
  }
  spec.config_template = j["template"];
  return spec;
}

namespace {

struct CellResult {
  std::vector<std::string> columns;
  std::string error;
};

std::vector<std::string> task_headers(const std::string& task) {
  if (task == "classify") return {"tag", "dim_sum", "thickness_product"};
  if (task == "sum-measure") return {"interval_count", "measure", "verdict_hint"};
  return {"overall", "delta_star", "c1_required", "omega_mass"};
}

CellResult run_cell(const SweepSpec& spec, const json& cell_config, uint64_t seed) {
  CellResult res;
  const json& cfg = cell_config;
  if (spec.task == "classify") {
    auto cj = cfg.find("classify");
    if (cj == cfg.end()) raise(Errc::config, "config error at /classify: missing section");
    require_keys(*cj, "/classify", {"a", "b"});
    RegionVerdict v =
        middle_alpha_classify((*cj)["a"].get<double>(), (*cj)["b"].get<double>());
    res.columns = {to_string(v.tag), format_csv_number(v.dim_sum),
                   format_csv_number(v.thickness_product)};
    return res;
  }
  CapsConfig caps = parse_caps(cfg);
  if (spec.task == "sum-measure") {
    auto sj = cfg.find("sum");
    if (sj == cfg.end()) raise(Errc::config, "config error at /sum: missing section");
    require_keys(*sj, "/sum", {"left", "right", "depth"});
    CoverSource left = parse_set((*sj)["left"], "/sum/left");
    CoverSource right = parse_set((*sj)["right"], "/sum/right");
    auto depth = (*sj)["depth"].get<uint32_t>();
    SumCoverAnalysis an = sum_cover_analysis(left, right, depth, caps.words, caps.pairs);
    const SumCoverRow& last = an.rows.back();
    res.columns = {std::to_string(last.interval_count), format_csv_number(last.measure),
                   last.hint};
    return res;
  }
  // verify
  CantorFamily fam = parse_family(cfg.at("family"), "/family");
  if (!cfg.contains("measure")) raise(Errc::config, "config error at /measure: missing section");
  EtaSpec eta = parse_measure(cfg["measure"], "/measure", caps.words);
  VerifySettings vs = parse_verify_settings(cfg, seed, caps.words);
  TransversalityReport rep = assemble_report(fam, eta.histogram, eta.d, eta.frostman_C, vs);
  res.columns = {rep.overall ? "pass" : "fail", format_csv_number(rep.scan.delta_star),
                 format_csv_number(rep.phi_bound.c1_required), format_csv_number(rep.omega.mass)};
  return res;
}

}  // namespace

std::string run_sweep(const SweepSpec& spec, uint64_t seed, int workers) {
  uint64_t cells = 1;
  for (const SweepAxis& ax : spec.axes) {
    if (cells > kSweepCellCap / ax.steps) {
      raise(Errc::cap_exceeded, "sweep cell count exceeds " + std::to_string(kSweepCellCap));
    }
    cells *= ax.steps;
  }
  std::vector<CellResult> results(cells);
  std::atomic<uint64_t> next{0};
  auto axis_value = [](const SweepAxis& ax, uint64_t i) {
    if (i + 1 == ax.steps) return ax.hi;
    return ax.lo + (ax.hi - ax.lo) * static_cast<double>(i) / (ax.steps - 1);
  };
  auto worker = [&]() {
    for (;;) {
      uint64_t cell = next.fetch_add(1);
      if (cell >= cells) return;
      json cfg = spec.config_template;
      uint64_t rest = cell;
      // row-major: the last axis varies fastest
      for (size_t a = spec.axes.size(); a-- > 0;) {
        const SweepAxis& ax = spec.axes[a];
        uint64_t i = rest % ax.steps;
        rest /= ax.steps;
        cfg[nlohmann::json::json_pointer(ax.pointer)] = axis_value(ax, i);
      }
      try {
        results[cell] = run_cell(spec, cfg, seed + cell);
      } catch (const std::exception& e) {
        results[cell].error = e.what();
        results[cell].columns.assign(task_headers(spec.task).size(), "");
      }
    }
  };
  int n_workers = std::max(1, workers);
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  std::string csv;
  for (const SweepAxis& ax : spec.axes) csv += ax.name + ",";
  for (const std::string& h : task_headers(spec.task)) csv += h + ",";
  csv += "error\n";
  for (uint64_t cell = 0; cell < cells; ++cell) {
    uint64_t rest = cell;
    std::vector<double> vals(spec.axes.size());
    for (size_t a = spec.axes.size(); a-- > 0;) {
      const SweepAxis& ax = spec.axes[a];
      vals[a] = axis_value(ax, rest % ax.steps);
      rest /= ax.steps;
    }
    for (double v : vals) csv += format_csv_number(v) + ",";
    for (const std::string& c : results[cell].columns) csv += c + ",";
    // commas inside error messages would break the column count
    std::string err = results[cell].error;
    for (char& ch : err) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    csv += err + "\n";
  }
  return csv;
}

RegionMapResult region_map(double a_lo, double a_hi, uint32_t a_steps, double b_lo, double b_hi,
                           uint32_t b_steps) {
  if (a_steps < 2 || b_steps < 2) raise(Errc::config, "region map needs >= 2 steps per axis");
  RegionMapResult out;
  out.width = a_steps;
  out.height = b_steps;
  out.pixels.resize(static_cast<size_t>(a_steps) * b_steps);
  out.csv = "a,b,tag,dim_sum,thickness_product\n";
  auto grid_value = [](double lo, double hi, uint32_t i, uint32_t steps) {
    if (i + 1 == steps) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  };
  for (uint32_t bi = 0; bi < b_steps; ++bi) {
    double b = grid_value(b_lo, b_hi, bi, b_steps);
    for (uint32_t ai = 0; ai < a_steps; ++ai) {
      double a = grid_value(a_lo, a_hi, ai, a_steps);
      RegionVerdict v = middle_alpha_classify(a, b);
      uint8_t pixel = v.tag == RegionTag::cantor_zone ? 0 : v.tag == RegionTag::region_R ? 1 : 2;
      out.pixels[static_cast<size_t>(bi) * a_steps + ai] = pixel;
      out.csv += format_csv_number(a) + "," + format_csv_number(b) + "," + to_string(v.tag) + "," +
                 format_csv_number(v.dim_sum) + "," + format_csv_number(v.thickness_product) +
                 "\n";
    }
  }
  out.pgm = "P2\n" + std::to_string(a_steps) + " " + std::to_string(b_steps) + "\n2\n";
  for (uint32_t bi = 0; bi < b_steps; ++bi) {
    for (uint32_t ai = 0; ai < a_steps; ++ai) {
      if (ai) out.pgm += ' ';
      out.pgm += std::to_string(out.pixels[static_cast<size_t>(bi) * a_steps + ai]);
    }
    out.pgm += '\n';
  }
  return out;
}

}  // namespace cantorsum
