#include "cantorsum/config.hpp"

#include <fstream>
#include <set>

#include "cantorsum/errors.hpp"

namespace cantorsum {

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& msg) {
  raise(Errc::config, "config error at " + (path.empty() ? "/" : path) + ": " + msg);
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) config_error(path, "expected an object");
  return j;
}

double get_number(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) config_error(path + "/" + key, "missing required number");
  if (!it->is_number()) config_error(path + "/" + key, "expected a number");
  return it->get<double>();
}

double get_number_or(const json& obj, const std::string& path, const char* key, double dflt) {
  auto it = obj.find(key);
  if (it == obj.end()) return dflt;
  if (!it->is_number()) config_error(path + "/" + key, "expected a number");
  return it->get<double>();
}

int get_int_or(const json& obj, const std::string& path, const char* key, int dflt) {
  auto it = obj.find(key);
  if (it == obj.end()) return dflt;
  if (!it->is_number_integer()) config_error(path + "/" + key, "expected an integer");
  return it->get<int>();
}

Interval get_interval(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) config_error(path + "/" + key, "missing required [lo, hi] pair");
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
    config_error(path + "/" + key, "expected [lo, hi]");
  }
  return Interval{(*it)[0].get<double>(), (*it)[1].get<double>()};
}

}  // namespace

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  require_object(obj, path);
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) config_error(path + "/" + key, "unknown key");
  }
}

json parse_config_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) raise(Errc::config, "config error at /: not valid JSON");
  require_object(j, "");
  return j;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::config, "config error: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

CapsConfig parse_caps(const json& root) {
  CapsConfig caps;
  auto it = root.find("caps");
  if (it == root.end()) return caps;
  require_keys(*it, "/caps", {"words", "pairs"});
  caps.words = static_cast<uint64_t>(get_number_or(*it, "/caps", "words",
                                                   static_cast<double>(caps.words)));
  caps.pairs = static_cast<uint64_t>(get_number_or(*it, "/caps", "pairs",
                                                   static_cast<double>(caps.pairs)));
  return caps;
}

uint64_t parse_seed(const json& root) {
  auto it = root.find("seed");
  if (it == root.end()) return 0;
  if (!it->is_number_unsigned() && !it->is_number_integer()) {
    config_error("/seed", "expected a nonnegative integer");
  }
  return it->get<uint64_t>();
}

CoefFn parse_coef(const json& j, const std::string& path) {
  if (j.is_number()) return CoefFn(j.get<double>());
  require_keys(j, path, {"terms"});
  auto terms_it = j.find("terms");
  if (terms_it == j.end() || !terms_it->is_array()) config_error(path, "expected a terms array");
  std::vector<CoefTerm> terms;
  size_t idx = 0;
  for (const json& t : *terms_it) {
    std::string tp = path + "/terms/" + std::to_string(idx++);
    require_keys(t, tp, {"coeff", "power", "rate"});
    CoefTerm term;
    term.coeff = get_number(t, tp, "coeff");
    term.power = get_int_or(t, tp, "power", 0);
    term.rate = get_number_or(t, tp, "rate", 0.0);
    if (term.power < 0) config_error(tp + "/power", "must be >= 0");
    terms.push_back(term);
  }
  return CoefFn(std::move(terms));
}

PerturbationField parse_perturbation(const json& j, const std::string& path) {
  require_keys(j, path, {"terms", "c2_bound"});
  auto terms_it = j.find("terms");
  if (terms_it == j.end() || !terms_it->is_array()) config_error(path, "expected a terms array");
  std::vector<PerturbTerm> terms;
  size_t idx = 0;
  for (const json& t : *terms_it) {
    std::string tp = path + "/terms/" + std::to_string(idx++);
    require_keys(t, tp, {"coeff", "xpow", "trig", "freq", "phase", "lpow"});
    PerturbTerm term;
    term.coeff = get_number(t, tp, "coeff");
    term.xpow = get_int_or(t, tp, "xpow", 0);
    term.lpow = get_int_or(t, tp, "lpow", 0);
    term.freq = get_number_or(t, tp, "freq", 0.0);
    term.phase = get_number_or(t, tp, "phase", 0.0);
    std::string trig = t.value("trig", "one");
    if (trig == "one") {
      term.trig = TrigKind::one;
    } else if (trig == "sin") {
      term.trig = TrigKind::sin;
    } else if (trig == "cos") {
      term.trig = TrigKind::cos;
    } else {
      config_error(tp + "/trig", "expected one of: one, sin, cos");
    }
    terms.push_back(term);
  }
  return PerturbationField(std::move(terms), get_number(j, path, "c2_bound"));
}

Ifs parse_ifs(const json& j, const std::string& path) {
  require_keys(j, path, {"maps"});
  auto maps_it = j.find("maps");
  if (maps_it == j.end() || !maps_it->is_array()) config_error(path, "expected a maps array");
  std::vector<IfsMap> maps;
  size_t idx = 0;
  for (const json& mj : *maps_it) {
    std::string mp = path + "/maps/" + std::to_string(idx++);
    require_keys(mj, mp, {"c", "b", "g"});
    double c = get_number(mj, mp, "c");
    double b = get_number(mj, mp, "b");
    if (!(std::abs(c) > 0.0 && std::abs(c) < 1.0)) {
      config_error(mp + "/c", "contraction ratio must satisfy 0 < |c| < 1");
    }
    try {
      if (mj.contains("g")) {
        PerturbationField g = parse_perturbation(mj["g"], mp + "/g");
        if (g.scan_c2(Interval{0.0, 0.0}) > g.c2_bound()) {
          config_error(mp + "/g/c2_bound", "recorded bound is below the sampled norm");
        }
        maps.emplace_back(AffineMap{c, b}, std::move(g), 0.0);
      } else {
        maps.emplace_back(AffineMap{c, b});
      }
    } catch (const Error& e) {
      if (e.code() == Errc::config && std::string(e.what()).rfind("config error", 0) == 0) throw;
      config_error(mp, e.what());
    }
  }
  try {
    return Ifs(std::move(maps));
  } catch (const Error& e) {
    config_error(path, e.what());
  }
}

CantorFamily parse_family(const json& j, const std::string& path) {
  require_keys(j, path, {"J", "delta", "maps"});
  Interval J = get_interval(j, path, "J");
  double delta = get_number_or(j, path, "delta", 0.0);
  auto maps_it = j.find("maps");
  if (maps_it == j.end() || !maps_it->is_array()) config_error(path, "expected a maps array");
  std::vector<FamilyMap> maps;
  size_t idx = 0;
  for (const json& mj : *maps_it) {
    std::string mp = path + "/maps/" + std::to_string(idx++);
    require_keys(mj, mp, {"c", "b", "g"});
    FamilyMap fm;
    if (!mj.contains("c")) config_error(mp + "/c", "missing coefficient");
    fm.c = parse_coef(mj["c"], mp + "/c");
    if (!mj.contains("b")) config_error(mp + "/b", "missing coefficient");
    fm.b = parse_coef(mj["b"], mp + "/b");
    if (mj.contains("g")) fm.g = parse_perturbation(mj["g"], mp + "/g");
    maps.push_back(std::move(fm));
  }
  try {
    CantorFamily fam(std::move(maps), J, delta);
    if (!fam.derivative_consistency()) {
      config_error(path, "coefficient derivatives fail the finite-difference cross-check");
    }
    for (size_t i = 0; i < fam.size(); ++i) {
      const auto& g = fam.maps()[i].g;
      if (g && g->scan_c2(J) > g->c2_bound()) {
        config_error(path + "/maps/" + std::to_string(i) + "/g/c2_bound",
                     "recorded bound " + std::to_string(g->c2_bound()) +
                         " is below the sampled norm " + std::to_string(g->scan_c2(J)));
      }
    }
    return fam;
  } catch (const Error& e) {
    if (std::string(e.what()).rfind("config error", 0) == 0) throw;
    config_error(path, e.what());
  }
}

CoverSource parse_set(const json& j, const std::string& path) {
  require_keys(j, path, {"middle_alpha", "ifs", "family", "lambda", "intervals"});
  int present = j.contains("middle_alpha") + j.contains("ifs") + j.contains("family") +
                j.contains("intervals");
  if (present != 1) {
    config_error(path, "expected exactly one of: middle_alpha, ifs, family, intervals");
  }
  if (j.contains("middle_alpha")) {
    if (!j["middle_alpha"].is_number()) config_error(path + "/middle_alpha", "expected a number");
    try {
      return CoverSource(middle_alpha_ifs(j["middle_alpha"].get<double>()));
    } catch (const Error& e) {
      config_error(path + "/middle_alpha", e.what());
    }
  }
  if (j.contains("ifs")) return CoverSource(parse_ifs(j["ifs"], path + "/ifs"));
  if (j.contains("family")) {
    CantorFamily fam = parse_family(j["family"], path + "/family");
    double lambda = get_number(j, path, "lambda");
    try {
      return CoverSource(fam.at(lambda));
    } catch (const Error& e) {
      config_error(path + "/lambda", e.what());
    }
  }
  const json& arr = j["intervals"];
  if (!arr.is_array() || arr.empty()) config_error(path + "/intervals", "expected [[lo, hi], ...]");
  std::vector<Interval> ivs;
  for (const json& p : arr) {
    if (!p.is_array() || p.size() != 2) config_error(path + "/intervals", "expected [lo, hi] pairs");
    ivs.push_back(Interval{p[0].get<double>(), p[1].get<double>()});
  }
  try {
    return CoverSource(IntervalUnion::from_intervals(std::move(ivs)));
  } catch (const Error& e) {
    config_error(path + "/intervals", e.what());
  }
}

std::vector<double> config_ratios(const json& root) {
  if (root.contains("ratios")) {
    const json& arr = root["ratios"];
    if (!arr.is_array() || arr.size() < 2) config_error("/ratios", "expected >= 2 numbers");
    std::vector<double> r;
    for (const json& v : arr) {
      if (!v.is_number()) config_error("/ratios", "expected numbers");
      r.push_back(v.get<double>());
    }
    return r;
  }
  if (root.contains("middle_alpha")) {
    const json& ma = root["middle_alpha"];
    require_keys(ma, "/middle_alpha", {"a"});
    double a = get_number(ma, "/middle_alpha", "a");
    if (!(a > 0.0 && a < 0.5)) config_error("/middle_alpha/a", "must lie in (0, 1/2)");
    return {a, a};
  }
  if (root.contains("ifs")) return parse_ifs(root["ifs"], "/ifs").ratios();
  if (root.contains("family")) {
    CantorFamily fam = parse_family(root["family"], "/family");
    double mid = 0.5 * (fam.domain().lo + fam.domain().hi);
    return fam.at(mid).ratios();
  }
  config_error("", "need one of: ratios, middle_alpha, ifs, family");
}

EtaSpec parse_measure(const json& j, const std::string& path, uint64_t word_cap) {
  require_keys(j, path,
               {"type", "set", "depth", "bin_width", "weights", "d", "C", "support", "path",
                "origin"});
  std::string type = j.value("type", "");
  EtaSpec spec;
  spec.d = get_number(j, path, "d");
  spec.frostman_C = get_number_or(j, path, "C", 4.0);
  if (type == "uniform") {
    Interval sup = j.contains("support") ? get_interval(j, path, "support") : Interval{0.0, 1.0};
    double bw = get_number_or(j, path, "bin_width", 1.0 / 4096.0);
    spec.histogram = uniform_histogram(sup.lo, sup.hi, bw);
    return spec;
  }
  if (type == "attractor") {
    if (!j.contains("set")) config_error(path + "/set", "missing attractor set");
    CoverSource src = parse_set(j["set"], path + "/set");
    if (!src.is_ifs()) config_error(path + "/set", "attractor measure needs an ifs-backed set");
    auto depth = static_cast<uint32_t>(get_int_or(j, path, "depth", 10));
    double bw = get_number_or(j, path, "bin_width", 1.0 / 4096.0);
    BernoulliWeights w = [&] {
      if (!j.contains("weights") || (j["weights"].is_string() && j["weights"] == "equilibrium")) {
        return equilibrium_weights(src.ifs().ratios());
      }
      if (!j["weights"].is_array()) {
        config_error(path + "/weights", "expected \"equilibrium\" or an array");
      }
      std::vector<double> p;
      for (const json& v : j["weights"]) p.push_back(v.get<double>());
      return BernoulliWeights(std::move(p));
    }();
    try {
      spec.histogram = pushforward_histogram(src.ifs(), w, depth, bw, word_cap);
    } catch (const Error& e) {
      if (e.code() == Errc::cap_exceeded) throw;
      config_error(path, e.what());
    }
    return spec;
  }
  if (type == "csv") {
    std::string file = j.value("path", "");
    if (file.empty()) config_error(path + "/path", "missing histogram CSV path");
    std::ifstream in(file);
    if (!in) config_error(path + "/path", "cannot open " + file);
    MeasureHistogram h;
    h.bin_width = get_number(j, path, "bin_width");
    h.origin = get_number_or(j, path, "origin", 0.0);
    std::string line;
    std::vector<std::pair<size_t, double>> entries;
    size_t max_idx = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto comma = line.find(',');
      if (comma == std::string::npos) config_error(path + "/path", "bad CSV line: " + line);
      size_t idx = std::stoul(line.substr(0, comma));
      entries.emplace_back(idx, std::stod(line.substr(comma + 1)));
      max_idx = std::max(max_idx, idx);
    }
    h.weights.assign(max_idx + 1, 0.0);
    for (auto& [idx, mass] : entries) h.weights[idx] += mass;
    spec.histogram = std::move(h);
    return spec;
  }
  config_error(path + "/type", "expected one of: uniform, attractor, csv");
}

VerifySettings parse_verify_settings(const json& root, uint64_t seed, uint64_t word_cap) {
  VerifySettings s;
  s.seed = seed;
  s.word_cap = word_cap;
  auto it = root.find("verify");
  if (it == root.end()) return s;
  const json& j = *it;
  require_keys(j, "/verify",
               {"alpha", "beta", "gamma", "epsilon", "k0", "n_select", "wedge_lo", "wedge_hi",
                "pairs_per_wedge", "tail_length", "lambda_grid", "window", "r_grid", "v_grid",
                "C1", "C2", "C3", "delta_min", "decay_slope_tol", "auto_margin"});
  if (j.contains("alpha")) s.alpha = get_number(j, "/verify", "alpha");
  if (j.contains("beta")) s.beta = get_number(j, "/verify", "beta");
  if (j.contains("gamma")) s.gamma = get_number(j, "/verify", "gamma");
  s.epsilon = get_number_or(j, "/verify", "epsilon", s.epsilon);
  s.k0 = static_cast<uint32_t>(get_int_or(j, "/verify", "k0", static_cast<int>(s.k0)));
  s.n_select =
      static_cast<uint32_t>(get_int_or(j, "/verify", "n_select", static_cast<int>(s.n_select)));
  s.wedge_lo =
      static_cast<uint32_t>(get_int_or(j, "/verify", "wedge_lo", static_cast<int>(s.wedge_lo)));
  s.wedge_hi =
      static_cast<uint32_t>(get_int_or(j, "/verify", "wedge_hi", static_cast<int>(s.wedge_hi)));
  s.pairs_per_wedge = static_cast<uint32_t>(
      get_int_or(j, "/verify", "pairs_per_wedge", static_cast<int>(s.pairs_per_wedge)));
  s.tail_length = static_cast<uint32_t>(
      get_int_or(j, "/verify", "tail_length", static_cast<int>(s.tail_length)));
  s.lambda_grid_size = static_cast<size_t>(
      get_int_or(j, "/verify", "lambda_grid", static_cast<int>(s.lambda_grid_size)));
  if (j.contains("window")) s.window = get_interval(j, "/verify", "window");
  if (j.contains("r_grid")) {
    if (!j["r_grid"].is_array()) config_error("/verify/r_grid", "expected an array");
    for (const json& v : j["r_grid"]) s.r_grid.push_back(v.get<double>());
  }
  s.v_grid_size = get_int_or(j, "/verify", "v_grid", s.v_grid_size);
  s.C1 = get_number_or(j, "/verify", "C1", s.C1);
  s.C2 = get_number_or(j, "/verify", "C2", s.C2);
  s.C3 = get_number_or(j, "/verify", "C3", s.C3);
  s.delta_min = get_number_or(j, "/verify", "delta_min", s.delta_min);
  s.decay_slope_tol = get_number_or(j, "/verify", "decay_slope_tol", s.decay_slope_tol);
  s.auto_margin = get_number_or(j, "/verify", "auto_margin", s.auto_margin);
  if (s.wedge_hi < s.wedge_lo) config_error("/verify/wedge_hi", "must be >= wedge_lo");
  if (s.lambda_grid_size < 2) config_error("/verify/lambda_grid", "must be >= 2");
  return s;
}

}  // namespace cantorsum
