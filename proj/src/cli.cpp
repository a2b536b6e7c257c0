#include "cantorsum/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cantorsum/config.hpp"
#include "cantorsum/errors.hpp"
#include "cantorsum/sweep.hpp"

namespace cantorsum {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::config, "cannot write " + path.string());
  out << content;
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  uint64_t seed = 0;
  bool seed_set = false;
  int workers = 1;
  int depth = 0;
  bool depth_set = false;
};

uint64_t effective_seed(const CommonOpts& opts, const json& cfg) {
  return opts.seed_set ? opts.seed : parse_seed(cfg);
}

int run_dimension(const CommonOpts& opts) {
  json cfg = load_config_file(opts.config_path);
  std::vector<double> ratios = config_ratios(cfg);
  double s = moran_dimension(ratios);
  std::string csv = "quantity,value\n";
  csv += "moran_dimension," + format_csv_number(s) + "\n";
  std::cout << "moran dimension: " << format_csv_number(s) << " (ratios:";
  for (double r : ratios) std::cout << ' ' << format_csv_number(r);
  std::cout << ")\n";
  if (cfg.contains("dimension")) {
    const json& dj = cfg["dimension"];
    require_keys(dj, "/dimension", {"box_depths"});
    if (dj.contains("box_depths")) {
      auto lo = dj["box_depths"][0].get<uint32_t>();
      auto hi = dj["box_depths"][1].get<uint32_t>();
      CapsConfig caps = parse_caps(cfg);
      json set_spec;
      if (cfg.contains("ifs")) {
        set_spec = json{{"ifs", cfg["ifs"]}};
      } else if (cfg.contains("middle_alpha")) {
        set_spec = json{{"middle_alpha", cfg["middle_alpha"]["a"]}};
      } else if (cfg.contains("family")) {
        raise(Errc::config,
              "config error at /dimension: box estimate over a family needs an explicit ifs");
      } else {
        raise(Errc::config, "config error at /dimension: no ifs to cover");
      }
      CoverSource src = parse_set(set_spec, "/");
      BoxFit fit = box_dimension_estimate(
          [&](uint32_t d) { return src.cover(d, caps.words); }, lo, hi);
      std::cout << "box dimension:   " << format_csv_number(fit.dimension) << " (depths " << lo
                << ".." << hi << ", max log-residual " << format_csv_number(fit.max_residual)
                << ")\n";
      csv += "box_dimension," + format_csv_number(fit.dimension) + "\n";
      csv += "box_max_residual," + format_csv_number(fit.max_residual) + "\n";
    }
  }
  write_file(std::filesystem::path(opts.out_dir) / "dimension.csv", csv);
  return 0;
}

int run_region_map(const CommonOpts& opts) {
  json cfg = load_config_file(opts.config_path);
  auto it = cfg.find("region_map");
  if (it == cfg.end()) raise(Errc::config, "config error at /region_map: missing section");
  require_keys(*it, "/region_map", {"a", "b"});
  auto parse_axis = [&](const char* key) {
    const json& aj = it->at(key);
    require_keys(aj, std::string("/region_map/") + key, {"lo", "hi", "steps"});
    return std::tuple<double, double, uint32_t>(aj.at("lo").get<double>(),
                                                aj.at("hi").get<double>(),
                                                aj.at("steps").get<uint32_t>());
  };
  auto [alo, ahi, asteps] = parse_axis("a");
  auto [blo, bhi, bsteps] = parse_axis("b");
  RegionMapResult map = region_map(alo, ahi, asteps, blo, bhi, bsteps);
  write_file(std::filesystem::path(opts.out_dir) / "region_map.csv", map.csv);
  write_file(std::filesystem::path(opts.out_dir) / "region_map.pgm", map.pgm);
  std::cout << "region map " << map.width << "x" << map.height << " written to " << opts.out_dir
            << "\n";
  return 0;
}

int run_sum(const CommonOpts& opts) {
  json cfg = load_config_file(opts.config_path);
  auto it = cfg.find("sum");
  if (it == cfg.end()) raise(Errc::config, "config error at /sum: missing section");
  require_keys(*it, "/sum", {"left", "right", "depth"});
  CoverSource left = parse_set(it->at("left"), "/sum/left");
  CoverSource right = parse_set(it->at("right"), "/sum/right");
  uint32_t depth = opts.depth_set ? static_cast<uint32_t>(opts.depth)
                                  : it->at("depth").get<uint32_t>();
  CapsConfig caps = parse_caps(cfg);
  SumCoverAnalysis an;
  try {
    an = sum_cover_analysis(left, right, depth, caps.words, caps.pairs);
  } catch (const Error& e) {
    if (e.code() == Errc::cap_exceeded) {
      // largest depth that stays within both caps, for the error message
      uint32_t ok_depth = 0;
      for (uint32_t d = 1; d <= depth; ++d) {
        try {
          (void)sum_cover_analysis(left, right, d, caps.words, caps.pairs);
          ok_depth = d;
        } catch (const Error&) {
          break;
        }
      }
      raise(Errc::cap_exceeded,
            std::string(e.what()) + "; maximum feasible depth is " + std::to_string(ok_depth));
    }
    throw;
  }
  std::string csv = "depth,interval_count,measure,verdict_hint\n";
  for (const SumCoverRow& row : an.rows) {
    csv += std::to_string(row.depth) + "," + std::to_string(row.interval_count) + "," +
           format_csv_number(row.measure) + "," + row.hint + "\n";
  }
  write_file(std::filesystem::path(opts.out_dir) / "sum.csv", csv);
  std::cout << csv;
  return 0;
}

int run_verify(const CommonOpts& opts) {
  json cfg = load_config_file(opts.config_path);
  if (!cfg.contains("family")) raise(Errc::config, "config error at /family: missing section");
  CantorFamily fam = parse_family(cfg["family"], "/family");
  if (!cfg.contains("measure")) raise(Errc::config, "config error at /measure: missing section");
  CapsConfig caps = parse_caps(cfg);
  EtaSpec eta = parse_measure(cfg["measure"], "/measure", caps.words);
  VerifySettings settings = parse_verify_settings(cfg, effective_seed(opts, cfg), caps.words);
  TransversalityReport rep = assemble_report(fam, eta.histogram, eta.d, eta.frostman_C, settings);
  write_file(std::filesystem::path(opts.out_dir) / "verify_report.json", rep.to_json().dump(2) + "\n");
  write_file(std::filesystem::path(opts.out_dir) / "eta_histogram.csv", eta.histogram.to_csv());
  std::cout << rep.summary_table();
  return rep.overall ? 0 : 3;
}

int run_sweep_cmd(const CommonOpts& opts) {
  json cfg = load_config_file(opts.config_path);
  SweepSpec spec = parse_sweep_spec(cfg);
  std::string csv = run_sweep(spec, effective_seed(opts, cfg), opts.workers);
  write_file(std::filesystem::path(opts.out_dir) / "sweep.csv", csv);
  std::cout << "sweep (" << spec.task << ") written to " << opts.out_dir << "/sweep.csv\n";
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"dynamically defined Cantor sets: dimensions, sumsets, verification"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub, bool with_depth) {
    sub->add_option("--config", opts.config_path, "JSON configuration file")->required();
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--seed", opts.seed, "RNG seed override")->each([&](const std::string&) {
      opts.seed_set = true;
    });
    sub->add_option("--workers", opts.workers, "worker thread count");
    if (with_depth) {
      sub->add_option("--depth", opts.depth, "cover depth override")->each([&](const std::string&) {
        opts.depth_set = true;
      });
    }
  };

  CLI::App* dim = app.add_subcommand("dimension", "Moran / box-counting dimension");
  add_common(dim, false);
  CLI::App* rmap = app.add_subcommand("region-map", "zone map over middle-alpha ratio pairs");
  add_common(rmap, false);
  CLI::App* sum = app.add_subcommand("sum", "sumset cover measures by depth");
  add_common(sum, true);
  CLI::App* verify = app.add_subcommand("verify", "transversality condition verification");
  add_common(verify, false);
  CLI::App* sweep = app.add_subcommand("sweep", "parameter grid runs");
  add_common(sweep, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (dim->parsed()) return run_dimension(opts);
    if (rmap->parsed()) return run_region_map(opts);
    if (sum->parsed()) return run_sum(opts);
    if (verify->parsed()) return run_verify(opts);
    if (sweep->parsed()) return run_sweep_cmd(opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::cap_exceeded ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cantorsum
