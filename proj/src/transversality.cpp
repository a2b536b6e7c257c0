#include "cantorsum/transversality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <nlohmann/json.hpp>

#include "cantorsum/errors.hpp"

namespace cantorsum {

namespace {

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double n = static_cast<double>(xs.size());
  double den = n * sxx - sx * sx;
  if (den == 0.0) return 0.0;
  return (n * sxy - sx * sy) / den;
}

// symbol occurrence counts of the depth-n word of the given rank
void rank_symbol_counts(uint64_t rank, uint32_t depth, uint32_t m, std::vector<uint32_t>& counts) {
  counts.assign(m, 0);
  for (uint32_t i = 0; i < depth; ++i) {
    counts[rank % m] += 1;
    rank /= m;
  }
}

}  // namespace

std::vector<double> multipliers(const CantorFamily& fam, double lambda, const SymbolPath& path,
                                uint32_t n) {
  fam.require_in_domain(lambda);
  std::vector<double> xs = orbit_points(fam, lambda, path, n);
  std::vector<double> out(n);
  for (uint32_t s = 1; s <= n; ++s) {
    out[s - 1] = fam.f_x(path.at(s - 1), xs[s], lambda);
  }
  return out;
}

std::vector<uint64_t> birkhoff_window_check(const CantorFamily& fam,
                                            const std::vector<double>& lambda_grid, uint32_t depth,
                                            double alpha, double beta, uint64_t cap) {
  const uint32_t m = static_cast<uint32_t>(fam.size());
  const uint64_t count = checked_pow(m, depth, cap);
  const double log_m = std::log(static_cast<double>(m));
  const double lo = alpha * log_m, hi = beta * log_m;
  std::vector<uint64_t> retained;

  if (fam.affine()) {
    // the multiplier at a step depends only on the symbol, so the average is
    // a symbol-count functional
    std::vector<std::vector<double>> neg_log_c(lambda_grid.size(), std::vector<double>(m));
    for (size_t gi = 0; gi < lambda_grid.size(); ++gi) {
      for (uint32_t i = 0; i < m; ++i) {
        neg_log_c[gi][i] = -std::log(std::abs(fam.c(i, lambda_grid[gi])));
      }
    }
    std::vector<uint32_t> counts;
    for (uint64_t rank = 0; rank < count; ++rank) {
      rank_symbol_counts(rank, depth, m, counts);
      bool ok = true;
      for (size_t gi = 0; gi < lambda_grid.size() && ok; ++gi) {
        double sum = 0.0;
        for (uint32_t i = 0; i < m; ++i) sum += counts[i] * neg_log_c[gi][i];
        double avg = sum / depth;
        ok = avg > lo && avg < hi;
      }
      if (ok) retained.push_back(rank);
    }
    return retained;
  }

  for (uint64_t rank = 0; rank < count; ++rank) {
    Word u = Word::from_rank(rank, depth, m);
    SymbolPath path{u};
    bool ok = true;
    for (double lambda : lambda_grid) {
      std::vector<double> ls = multipliers(fam, lambda, path, depth);
      double sum = 0.0;
      for (double l : ls) sum -= std::log(std::abs(l));
      double avg = sum / depth;
      if (!(avg > lo && avg < hi)) {
        ok = false;
        break;
      }
    }
    if (ok) retained.push_back(rank);
  }
  return retained;
}

std::vector<uint64_t> smb_check(const BernoulliWeights& w, uint32_t depth, double gamma, double C3,
                                uint64_t cap) {
  const uint32_t m = static_cast<uint32_t>(w.size());
  const uint64_t count = checked_pow(m, depth, cap);
  const double bound = C3 * std::pow(static_cast<double>(m), -gamma * static_cast<double>(depth));
  std::vector<uint64_t> retained;
  std::vector<uint32_t> counts;
  for (uint64_t rank = 0; rank < count; ++rank) {
    rank_symbol_counts(rank, depth, m, counts);
    double mass = 1.0;
    for (uint32_t i = 0; i < m; ++i) mass *= std::pow(w[i], static_cast<double>(counts[i]));
    if (mass <= bound) retained.push_back(rank);
  }
  return retained;
}

OmegaEpsilonSet select_omega_epsilon(const CantorFamily& fam, const BernoulliWeights& w,
                                     const std::vector<double>& lambda_grid, uint32_t depth,
                                     const ExponentTriple& triple, double C3, uint64_t cap) {
  OmegaEpsilonSet out;
  out.depth = depth;
  out.total_words = checked_pow(static_cast<uint32_t>(fam.size()), depth, cap);
  std::vector<uint64_t> a =
      birkhoff_window_check(fam, lambda_grid, depth, triple.alpha, triple.beta, cap);
  std::vector<uint64_t> b = smb_check(w, depth, triple.gamma, C3, cap);
  out.retained.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.retained));
  const uint32_t m = static_cast<uint32_t>(fam.size());
  std::vector<uint32_t> counts;
  for (uint64_t rank : out.retained) {
    rank_symbol_counts(rank, depth, m, counts);
    double mass = 1.0;
    for (uint32_t i = 0; i < m; ++i) mass *= std::pow(w[i], static_cast<double>(counts[i]));
    out.mass += mass;
  }
  return out;
}

double phi(const CantorFamily& fam, const SymbolPath& omega, const SymbolPath& tau,
           double lambda) {
  wedge(omega, tau);  // rejects identical sequences
  return coding_eval(fam, lambda, omega).x - coding_eval(fam, lambda, tau).x;
}

PhiDerivative dphi_dlambda(const CantorFamily& fam, const SymbolPath& omega, const SymbolPath& tau,
                           double lambda) {
  fam.require_in_domain(lambda);
  const uint32_t n = static_cast<uint32_t>(wedge(omega, tau));
  PhiDerivative out;
  out.total = coding_eval(fam, lambda, omega).dx_dlambda -
              coding_eval(fam, lambda, tau).dx_dlambda;

  std::vector<double> xp = orbit_points(fam, lambda, omega, n);
  std::vector<double> xq = orbit_points(fam, lambda, tau, n);
  double dpn = coding_eval(fam, lambda, omega.shift(n)).dx_dlambda;
  double dqn = coding_eval(fam, lambda, tau.shift(n)).dx_dlambda;

  double prod_p = 1.0, prod_q = 1.0;
  for (uint32_t i = 1; i <= n; ++i) {
    const uint32_t sym = omega.at(i - 1);
    out.s1 += prod_p * (fam.f_lambda(sym, xp[i], lambda) - fam.f_lambda(sym, xq[i], lambda));
    out.s2 += fam.f_lambda(sym, xq[i], lambda) * (prod_p - prod_q);
    prod_p *= fam.f_x(sym, xp[i], lambda);
    prod_q *= fam.f_x(sym, xq[i], lambda);
  }
  out.s3 = prod_p * dpn - prod_q * dqn;
  return out;
}

std::vector<PathPair> sample_pairs(uint32_t m, const PairSampleSpec& spec,
                                   const OmegaEpsilonSet* retained) {
  if (m < 2) raise(Errc::config, "alphabet size must be >= 2");
  std::vector<PathPair> out;
  for (uint32_t w = spec.wedge_lo; w <= spec.wedge_hi; ++w) {
    std::mt19937_64 rng(spec.seed + static_cast<uint64_t>(w) * 0x9E3779B97F4A7C15ULL);
    std::uniform_int_distribution<uint32_t> sym(0, m - 1);
    uint32_t produced = 0;
    uint32_t attempts = 0;
    const uint32_t max_attempts = spec.pairs_per_wedge * 200;
    while (produced < spec.pairs_per_wedge && attempts < max_attempts) {
      ++attempts;
      std::vector<uint32_t> prefix(w);
      for (auto& s : prefix) s = sym(rng);
      uint32_t s1 = sym(rng);
      uint32_t s2 = sym(rng);
      if (s1 == s2) s2 = (s1 + 1) % m;
      auto make_tail = [&]() {
        std::vector<uint32_t> t(spec.tail_length);
        for (auto& s : t) s = sym(rng);
        return Word(std::move(t), m);
      };
      std::vector<uint32_t> po = prefix, pt = prefix;
      po.push_back(s1);
      pt.push_back(s2);
      PathPair pair{SymbolPath(Word(std::move(po), m), make_tail()),
                    SymbolPath(Word(std::move(pt), m), make_tail()), w};
      if (retained != nullptr) {
        uint64_t ro = pair.omega.first(retained->depth).rank();
        uint64_t rt = pair.tau.first(retained->depth).rank();
        if (!std::binary_search(retained->retained.begin(), retained->retained.end(), ro) ||
            !std::binary_search(retained->retained.begin(), retained->retained.end(), rt)) {
          continue;
        }
      }
      out.push_back(std::move(pair));
      ++produced;
    }
  }
  return out;
}

TransversalityScan transversality_lower_bound(const CantorFamily& fam,
                                              const std::vector<PathPair>& pairs,
                                              const std::vector<double>& lambda_grid,
                                              double delta_min, double decay_slope_tol) {
  TransversalityScan scan;
  scan.delta_star = std::numeric_limits<double>::infinity();
  std::vector<std::pair<uint32_t, double>> mins;  // per wedge depth
  for (const PathPair& pair : pairs) {
    const uint32_t n = pair.wedge_depth;
    if (n == 0) continue;
    double pair_min = std::numeric_limits<double>::infinity();
    for (double lambda : lambda_grid) {
      PhiDerivative d = dphi_dlambda(fam, pair.omega, pair.tau, lambda);
      std::vector<double> ls = multipliers(fam, lambda, pair.omega, n);
      double prod = 1.0;
      for (double l : ls) prod *= l;
      double ratio = std::abs(d.total) / (static_cast<double>(n) * std::abs(prod));
      pair_min = std::min(pair_min, ratio);
    }
    auto it = std::find_if(mins.begin(), mins.end(),
                           [&](const auto& e) { return e.first == n; });
    if (it == mins.end()) {
      mins.emplace_back(n, pair_min);
    } else {
      it->second = std::min(it->second, pair_min);
    }
    scan.delta_star = std::min(scan.delta_star, pair_min);
  }
  if (!std::isfinite(scan.delta_star)) scan.delta_star = 0.0;
  std::sort(mins.begin(), mins.end());
  std::vector<double> xs, ys;
  for (const auto& [w, v] : mins) {
    scan.per_wedge_min.push_back(WedgeStat{w, v});
    xs.push_back(static_cast<double>(w));
    ys.push_back(std::log(std::max(v, 1e-300)));
  }
  scan.decay_slope = least_squares_slope(xs, ys);
  scan.pass = scan.delta_star > delta_min && scan.decay_slope >= decay_slope_tol;
  return scan;
}

double distortion_check(const CantorFamily& fam, double lambda, const std::vector<Word>& words,
                        double x, double y) {
  fam.require_in_domain(lambda);
  if (x == y) raise(Errc::config, "distortion check needs x != y");
  double worst = 1.0;
  for (const Word& w : words) {
    const size_t len = w.size();
    std::vector<double> vals(len + 1);
    vals[len] = x;
    double q = y;
    for (size_t i = len; i-- > 0;) {
      vals[i] = fam.f(w[i], vals[i + 1], lambda);
      q = fam.f(w[i], q, lambda);
    }
    double prod = 1.0;
    for (size_t s = 1; s <= len; ++s) prod *= fam.f_x(w[s - 1], vals[s], lambda);
    double ratio = std::abs((vals[0] - q) / (x - y));
    double c = std::max(ratio / std::abs(prod), std::abs(prod) / ratio);
    worst = std::max(worst, c);
  }
  return worst;
}

PhiBoundResult phi_bound_check(const CantorFamily& fam, const std::vector<PathPair>& pairs,
                                const std::vector<double>& lambda_grid, double C1, double alpha) {
  PhiBoundResult res;
  res.c1_given = C1;
  const double m = static_cast<double>(fam.size());
  std::vector<std::pair<uint32_t, double>> per_wedge;
  for (const PathPair& pair : pairs) {
    double max_phi = 0.0;
    for (double lambda : lambda_grid) {
      max_phi = std::max(max_phi, std::abs(phi(fam, pair.omega, pair.tau, lambda)));
    }
    double required = max_phi * std::pow(m, alpha * pair.wedge_depth);
    res.c1_required = std::max(res.c1_required, required);
    auto it = std::find_if(per_wedge.begin(), per_wedge.end(),
                           [&](const auto& e) { return e.first == pair.wedge_depth; });
    if (it == per_wedge.end()) {
      per_wedge.emplace_back(pair.wedge_depth, required);
    } else {
      it->second = std::max(it->second, required);
    }
  }
  std::sort(per_wedge.begin(), per_wedge.end());
  std::vector<double> xs, ys;
  for (const auto& [w, v] : per_wedge) {
    res.per_wedge_c1.push_back(WedgeStat{w, v});
    xs.push_back(static_cast<double>(w));
    ys.push_back(std::log(std::max(v, 1e-300)));
  }
  res.growth_slope = least_squares_slope(xs, ys);
  res.pass = res.c1_required <= C1;
  return res;
}

double level_set_measure(const std::vector<double>& phi_values, double grid_step, double v,
                         double r) {
  size_t count = 0;
  for (double p : phi_values) {
    if (std::abs(v + p) <= r) ++count;
  }
  return static_cast<double>(count) * grid_step;
}

LevelSetResult level_set_check(const CantorFamily& fam, const std::vector<PathPair>& pairs,
                                const std::vector<double>& lambda_grid,
                                const std::vector<double>& r_grid, int v_grid_size, double C2,
                                double beta, uint32_t k0) {
  if (lambda_grid.size() < 2) raise(Errc::config, "lambda grid needs >= 2 points");
  if (r_grid.empty()) raise(Errc::config, "empty r grid");
  const double step = lambda_grid[1] - lambda_grid[0];
  for (double r : r_grid) {
    if (step > r / 10.0) {
      raise(Errc::grid_too_coarse, "lambda grid step " + std::to_string(step) +
                                       " exceeds r/10 for r = " + std::to_string(r));
    }
  }
  LevelSetResult res;
  res.c2_given = C2;
  res.min_abs_dphi = std::numeric_limits<double>::infinity();
  res.pass = true;
  const double m = static_cast<double>(fam.size());
  for (const PathPair& pair : pairs) {
    if (pair.wedge_depth < k0) continue;
    std::vector<double> phis(lambda_grid.size());
    for (size_t i = 0; i < lambda_grid.size(); ++i) {
      phis[i] = phi(fam, pair.omega, pair.tau, lambda_grid[i]);
      double dp = std::abs(dphi_dlambda(fam, pair.omega, pair.tau, lambda_grid[i]).total);
      res.min_abs_dphi = std::min(res.min_abs_dphi, dp);
    }
    auto [mn, mx] = std::minmax_element(phis.begin(), phis.end());
    std::vector<double> vs;
    vs.reserve(v_grid_size + 1);
    for (int k = 0; k < v_grid_size; ++k) {
      double t = v_grid_size == 1 ? 0.5 : static_cast<double>(k) / (v_grid_size - 1);
      vs.push_back(-(*mx) + t * (*mx - *mn));
    }
    vs.push_back(-phis[phis.size() / 2]);
    const double scale = std::pow(m, beta * pair.wedge_depth);
    for (double r : r_grid) {
      for (double v : vs) {
        double measure = level_set_measure(phis, step, v, r);
        double bound = C2 * scale * r;
        double required = measure / (scale * r);
        res.c2_required = std::max(res.c2_required, required);
        if (measure > res.worst_measure) {
          res.worst_measure = measure;
          res.worst_bound = bound;
          res.worst_wedge = pair.wedge_depth;
          res.worst_r = r;
        }
        if (measure > bound) res.pass = false;
      }
    }
  }
  if (!std::isfinite(res.min_abs_dphi)) res.min_abs_dphi = 0.0;
  return res;
}

namespace {

struct FamilyStats {
  double moran_s = 0.0;
  double entropy_nats = 0.0;
  double lyap_min = 0.0;
  double lyap_max = 0.0;
};

FamilyStats family_stats(const CantorFamily& fam, const BernoulliWeights& w,
                         const std::vector<double>& lambda_grid, uint64_t seed) {
  FamilyStats st;
  st.lyap_min = std::numeric_limits<double>::infinity();
  st.lyap_max = -std::numeric_limits<double>::infinity();
  if (fam.affine()) {
    for (double lambda : lambda_grid) {
      double v = 0.0;
      for (size_t i = 0; i < fam.size(); ++i) {
        v -= w[i] * std::log(std::abs(fam.c(i, lambda)));
      }
      st.lyap_min = std::min(st.lyap_min, v);
      st.lyap_max = std::max(st.lyap_max, v);
    }
  } else {
    // Birkhoff estimates on a coarse parameter subgrid
    const size_t sub = 9;
    for (size_t k = 0; k < sub; ++k) {
      double lambda = lambda_grid[k * (lambda_grid.size() - 1) / (sub - 1)];
      LyapunovEstimate est = lyapunov_exponent(fam.at(lambda), w, OrbitSpec{64, 256, 32, seed});
      st.lyap_min = std::min(st.lyap_min, est.value);
      st.lyap_max = std::max(st.lyap_max, est.value);
    }
  }
  st.entropy_nats = entropy(w);
  return st;
}

}  // namespace

TransversalityReport assemble_report(const CantorFamily& fam, const MeasureHistogram& eta,
                                     double d_eta, double frostman_C, const VerifySettings& s) {
  TransversalityReport rep;
  rep.seed = s.seed;
  Interval W = s.window.value_or(fam.domain());
  if (W.lo < fam.domain().lo || W.hi > fam.domain().hi || !(W.lo < W.hi)) {
    raise(Errc::config, "verification window must be a subinterval of the family domain");
  }
  rep.window = W;
  rep.lambda_grid_size = s.lambda_grid_size;
  std::vector<double> grid(s.lambda_grid_size);
  for (size_t i = 0; i < grid.size(); ++i) {
    grid[i] = W.lo + (W.hi - W.lo) * static_cast<double>(i) / (grid.size() - 1);
  }

  const double lambda0 = 0.5 * (W.lo + W.hi);
  Ifs ifs0 = fam.at(lambda0);
  std::vector<double> ratios0 = ifs0.ratios();
  rep.moran_s = moran_dimension(ratios0);
  BernoulliWeights w = equilibrium_weights(ratios0);
  FamilyStats st = family_stats(fam, w, grid, s.seed);
  rep.entropy_nats = st.entropy_nats;
  rep.lyap_min = st.lyap_min;
  rep.lyap_max = st.lyap_max;

  const double log_m = std::log(static_cast<double>(fam.size()));
  ExponentTriple triple;
  triple.m = static_cast<uint32_t>(fam.size());
  triple.d_eta = d_eta;
  triple.epsilon = s.epsilon;
  triple.k0 = s.k0;
  if (s.alpha && s.beta && s.gamma) {
    triple.alpha = *s.alpha;
    triple.beta = *s.beta;
    triple.gamma = *s.gamma;
  } else {
    bool found = false;
    for (double margin = s.auto_margin; margin >= s.auto_margin / 64.0; margin *= 0.5) {
      triple.alpha = s.alpha.value_or(st.lyap_min / log_m * (1.0 - margin));
      triple.beta = s.beta.value_or(st.lyap_max / log_m * (1.0 + margin));
      triple.gamma = s.gamma.value_or(st.entropy_nats / log_m * (1.0 - margin));
      if (triple.condition0()) {
        found = true;
        break;
      }
    }
    if (!found) {
      raise(Errc::infeasible_triple,
            "no exponent margins satisfy the dimension conditions: d_eta = " +
                std::to_string(d_eta) + ", dim = " + std::to_string(rep.moran_s) +
                " (dimension sum too small)");
    }
  }
  rep.triple = triple;
  rep.exponents_pass = triple.condition0();

  rep.frostman = frostman_check(eta, d_eta, frostman_C, frostman_default_samples(eta));

  rep.omega = select_omega_epsilon(fam, w, grid, s.n_select, triple, s.C3, s.word_cap);
  rep.cylinder_mass_pass = rep.omega.pass(s.epsilon);
  const uint32_t m = triple.m;
  std::vector<uint32_t> counts;
  for (uint64_t rank : rep.omega.retained) {
    rank_symbol_counts(rank, rep.omega.depth, m, counts);
    double mass = 1.0;
    for (uint32_t i = 0; i < m; ++i) mass *= std::pow(w[i], static_cast<double>(counts[i]));
    rep.c3_required = std::max(
        rep.c3_required,
        mass * std::pow(static_cast<double>(m), triple.gamma * static_cast<double>(rep.omega.depth)));
  }

  PairSampleSpec pair_spec{s.wedge_lo, s.wedge_hi, s.pairs_per_wedge, s.tail_length, s.seed};
  std::vector<PathPair> pairs = sample_pairs(m, pair_spec, &rep.omega);

  rep.phi_bound = phi_bound_check(fam, pairs, grid, s.C1, triple.alpha);
  std::vector<double> r_grid = s.r_grid;
  if (r_grid.empty()) {
    const double width = W.hi - W.lo;
    r_grid = {width / 50.0, width / 20.0, width / 10.0};
  }
  rep.level_set = level_set_check(fam, pairs, grid, r_grid, s.v_grid_size, s.C2, triple.beta, s.k0);
  rep.scan = transversality_lower_bound(fam, pairs, grid, s.delta_min, s.decay_slope_tol);

  rep.overall = rep.exponents_pass && rep.frostman.pass && rep.cylinder_mass_pass && rep.phi_bound.pass &&
                rep.level_set.pass && rep.scan.pass;
  return rep;
}

nlohmann::json TransversalityReport::to_json() const {
  nlohmann::json j;
  j["triple"] = {{"alpha", triple.alpha}, {"beta", triple.beta},   {"gamma", triple.gamma},
                 {"m", triple.m},         {"d_eta", triple.d_eta}, {"epsilon", triple.epsilon},
                 {"k0", triple.k0}};
  j["dimension"] = {{"moran_s", moran_s},
                    {"entropy_nats", entropy_nats},
                    {"lyapunov_min", lyap_min},
                    {"lyapunov_max", lyap_max}};
  j["frostman"] = {{"d", frostman.d},
                   {"C", frostman.C},
                   {"worst_ratio", frostman.worst_ratio},
                   {"worst_x", frostman.worst_x},
                   {"worst_r", frostman.worst_r},
                   {"samples", frostman.samples},
                   {"pass", frostman.pass}};
  j["omega_epsilon"] = {{"depth", omega.depth},
                        {"total_words", omega.total_words},
                        {"retained", omega.retained.size()},
                        {"mass", omega.mass}};
  j["constants"] = {{"C1", phi_bound.c1_given},         {"C1_required", phi_bound.c1_required},
                    {"C2", level_set.c2_given},         {"C2_required", level_set.c2_required},
                    {"C3_required", c3_required}, {"delta_star", scan.delta_star}};
  auto wedge_stats = [](const std::vector<WedgeStat>& stats) {
    nlohmann::json arr = nlohmann::json::array();
    for (const WedgeStat& s : stats) {
      arr.push_back({{"wedge", s.wedge_depth}, {"value", s.value}});
    }
    return arr;
  };
  j["diagnostics"] = {{"phi_bound_per_wedge_c1", wedge_stats(phi_bound.per_wedge_c1)},
                      {"phi_bound_growth_slope", phi_bound.growth_slope},
                      {"level_set_worst_measure", level_set.worst_measure},
                      {"level_set_worst_bound", level_set.worst_bound},
                      {"level_set_worst_wedge", level_set.worst_wedge},
                      {"level_set_worst_r", level_set.worst_r},
                      {"level_set_min_abs_dphi", level_set.min_abs_dphi},
                      {"scan_per_wedge_min", wedge_stats(scan.per_wedge_min)},
                      {"scan_decay_slope", scan.decay_slope},
                      {"window", {window.lo, window.hi}},
                      {"lambda_grid_size", lambda_grid_size},
                      {"seed", seed}};
  j["verdicts"] = {{"exponents", exponents_pass},    {"phi_bound", phi_bound.pass}, {"level_set", level_set.pass},
                   {"cylinder_mass", cylinder_mass_pass},    {"frostman", frostman.pass},
                   {"transversality", scan.pass}, {"overall", overall}};
  return j;
}

std::string TransversalityReport::summary_table() const {
  char buf[256];
  std::string out;
  auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof(buf), fmt, args...);
    out += buf;
    out += '\n';
  };
  auto pf = [](bool b) { return b ? "pass" : "FAIL"; };
  line("%s", "transversality verification");
  line("  window              [%.6g, %.6g]  grid %zu", window.lo, window.hi, lambda_grid_size);
  line("  dim (moran)         %.6f", moran_s);
  line("  entropy / lyap      %.6f / [%.6f, %.6f]", entropy_nats, lyap_min, lyap_max);
  line("  alpha, beta, gamma  %.4f, %.4f, %.4f   d_eta %.4f  eps %.3f  k0 %u", triple.alpha,
       triple.beta, triple.gamma, triple.d_eta, triple.epsilon, triple.k0);
  line("  condition 0         %s  (margins %.4f, %.4f)", pf(exponents_pass), triple.margin_dim(),
       triple.margin_ratio());
  line("  frostman            %s  (worst ratio %.4g vs C %.4g)", pf(frostman.pass),
       frostman.worst_ratio, frostman.C);
  line("  omega_epsilon       %s  (mass %.6f of 1 - eps = %.6f, depth %u, %zu/%llu words)",
       pf(cylinder_mass_pass), omega.mass, 1.0 - triple.epsilon, omega.depth, omega.retained.size(),
       static_cast<unsigned long long>(omega.total_words));
  line("  condition 1         %s  (required C1 %.4g vs %.4g, growth slope %.3g)", pf(phi_bound.pass),
       phi_bound.c1_required, phi_bound.c1_given, phi_bound.growth_slope);
  line("  condition 2         %s  (required C2 %.4g vs %.4g, min |dphi| %.4g)", pf(level_set.pass),
       level_set.c2_required, level_set.c2_given, level_set.min_abs_dphi);
  line("  transversality      %s  (delta* %.6g, decay slope %.3g)", pf(scan.pass),
       scan.delta_star, scan.decay_slope);
  line("  overall             %s", pf(overall));
  return out;
}

}  // namespace cantorsum
