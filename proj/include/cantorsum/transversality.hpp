#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cantorsum/family.hpp"
#include "cantorsum/measures.hpp"
#include "cantorsum/words.hpp"

namespace cantorsum {

/// Exponents and budgets of the four-condition verification.
struct ExponentTriple {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  uint32_t m = 2;
  double d_eta = 0.0;
  double epsilon = 0.1;
  uint32_t k0 = 2;

  double margin_dim() const { return d_eta + gamma / beta - 1.0; }
  double margin_ratio() const { return d_eta - (beta - gamma) / alpha; }
  /// Both exponent inequalities hold with positive margin.
  bool condition0() const { return alpha < beta && margin_dim() > 0.0 && margin_ratio() > 0.0; }
};

/// Retained depth-n cylinders (stored by lexicographic rank) and their mass.
struct OmegaEpsilonSet {
  uint32_t depth = 0;
  uint64_t total_words = 0;
  std::vector<uint64_t> retained;
  double mass = 0.0;
  bool pass(double epsilon) const { return mass > 1.0 - epsilon; }
};

/// Contraction derivatives along the orbit of the coding point: entry s-1
/// is the derivative of the map applied at step s.
std::vector<double> multipliers(const CantorFamily& fam, double lambda, const SymbolPath& path,
                                uint32_t n);

/// Depth-n cylinders whose Birkhoff average of -log|multiplier| stays inside
/// the open window (alpha log m, beta log m) for every grid parameter.
std::vector<uint64_t> birkhoff_window_check(const CantorFamily& fam,
                                            const std::vector<double>& lambda_grid, uint32_t depth,
                                            double alpha, double beta,
                                            uint64_t cap = kDefaultWordCap);

/// Depth-n cylinders with mass <= C3 * m^(-gamma n).
std::vector<uint64_t> smb_check(const BernoulliWeights& w, uint32_t depth, double gamma, double C3,
                                uint64_t cap = kDefaultWordCap);

OmegaEpsilonSet select_omega_epsilon(const CantorFamily& fam, const BernoulliWeights& w,
                                     const std::vector<double>& lambda_grid, uint32_t depth,
                                     const ExponentTriple& triple, double C3,
                                     uint64_t cap = kDefaultWordCap);

/// Difference of the two coding points.
double phi(const CantorFamily& fam, const SymbolPath& omega, const SymbolPath& tau, double lambda);

struct PhiDerivative {
  double total = 0.0;
  double s1 = 0.0;  // mixed-derivative difference along the common prefix
  double s2 = 0.0;  // multiplier-product difference
  double s3 = 0.0;  // transported tail derivatives
};

/// Parameter derivative of phi with its three-part expansion across the
/// common prefix. The total is computed independently of the parts.
PhiDerivative dphi_dlambda(const CantorFamily& fam, const SymbolPath& omega, const SymbolPath& tau,
                           double lambda);

struct PathPair {
  SymbolPath omega;
  SymbolPath tau;
  uint32_t wedge_depth = 0;
};

struct PairSampleSpec {
  uint32_t wedge_lo = 2;
  uint32_t wedge_hi = 12;
  uint32_t pairs_per_wedge = 64;
  uint32_t tail_length = 8;
  uint64_t seed = 0;
};

/// Stratified pair sample: for each wedge depth, random common prefix, forced
/// differing next symbols, random periodic tails. When a retained cylinder
/// set is supplied, both depth-n prefixes must be retained.
std::vector<PathPair> sample_pairs(uint32_t m, const PairSampleSpec& spec,
                                   const OmegaEpsilonSet* retained = nullptr);

struct WedgeStat {
  uint32_t wedge_depth = 0;
  double value = 0.0;
};

struct TransversalityScan {
  double delta_star = 0.0;
  std::vector<WedgeStat> per_wedge_min;
  double decay_slope = 0.0;  // least-squares slope of log(min) against wedge depth
  bool pass = false;
};

/// Minimum over pairs and parameters of |dphi/dlambda| / (n |prod multipliers|),
/// n the wedge depth. Passes when the minimum clears delta_min and shows no
/// systematic decay across wedge depths.
TransversalityScan transversality_lower_bound(const CantorFamily& fam,
                                              const std::vector<PathPair>& pairs,
                                              const std::vector<double>& lambda_grid,
                                              double delta_min, double decay_slope_tol = -0.1);

/// Worst ratio between |p - q| / |x - y| and the multiplier product over the
/// sampled words; exactly 1 for affine systems.
double distortion_check(const CantorFamily& fam, double lambda, const std::vector<Word>& words,
                        double x, double y);

struct PhiBoundResult {
  bool pass = false;
  double c1_given = 0.0;
  double c1_required = 0.0;
  double growth_slope = 0.0;  // slope of log(required C1) against wedge depth
  std::vector<WedgeStat> per_wedge_c1;
};

/// max over the grid of |phi| <= C1 m^(-alpha * wedge) for every pair; reports
/// the smallest C1 that would work.
PhiBoundResult phi_bound_check(const CantorFamily& fam, const std::vector<PathPair>& pairs,
                                const std::vector<double>& lambda_grid, double C1, double alpha);

struct LevelSetResult {
  bool pass = false;
  double c2_given = 0.0;
  double c2_required = 0.0;
  double worst_measure = 0.0;
  double worst_bound = 0.0;
  uint32_t worst_wedge = 0;
  double worst_r = 0.0;
  /// Smallest grid min of |dphi/dlambda| over the pairs; the calculus route
  /// bounds every level-set measure by 2r over this.
  double min_abs_dphi = 0.0;
};

/// Estimates Leb{lambda : |v + phi| <= r} by grid counting, maximized over a
/// v grid, and compares with C2 m^(beta * wedge) r for every pair with
/// wedge >= k0, every r.
LevelSetResult level_set_check(const CantorFamily& fam, const std::vector<PathPair>& pairs,
                                const std::vector<double>& lambda_grid,
                                const std::vector<double>& r_grid, int v_grid_size, double C2,
                                double beta, uint32_t k0);

/// Grid estimate of Leb{lambda in W : |v + phi(lambda)| <= r} from sampled
/// phi values: grid points inside the level set times the grid step.
double level_set_measure(const std::vector<double>& phi_values, double grid_step, double v,
                         double r);

struct VerifySettings {
  std::optional<double> alpha;  // auto-suggested from the Lyapunov window when unset
  std::optional<double> beta;
  std::optional<double> gamma;
  double epsilon = 0.1;
  uint32_t k0 = 2;
  uint32_t n_select = 12;       // depth of the retained cylinder set
  uint32_t wedge_lo = 6;
  uint32_t wedge_hi = 14;
  uint32_t pairs_per_wedge = 64;
  uint32_t tail_length = 8;
  size_t lambda_grid_size = 512;
  std::optional<Interval> window;  // W; defaults to the family domain
  std::vector<double> r_grid;      // defaults to |W| * {1/50, 1/20, 1/10}
  int v_grid_size = 33;
  double C1 = 1.5;
  double C2 = 4.0;
  double C3 = 1.0;
  double delta_min = 1e-4;
  double decay_slope_tol = -0.1;
  double auto_margin = 0.02;
  uint64_t seed = 0;
  uint64_t word_cap = kDefaultWordCap;
};

struct TransversalityReport {
  ExponentTriple triple;
  double moran_s = 0.0;
  double entropy_nats = 0.0;
  double lyap_min = 0.0;
  double lyap_max = 0.0;
  FrostmanCertificate frostman;
  OmegaEpsilonSet omega;
  PhiBoundResult phi_bound;
  LevelSetResult level_set;
  TransversalityScan scan;
  double c3_required = 0.0;
  bool exponents_pass = false;
  bool cylinder_mass_pass = false;
  bool overall = false;
  Interval window{0.0, 0.0};
  size_t lambda_grid_size = 0;
  uint64_t seed = 0;

  nlohmann::json to_json() const;
  std::string summary_table() const;
};

/// Full verification pipeline: suggest or take exponents, build the retained
/// set, run the four condition checks and the transversality scan.
TransversalityReport assemble_report(const CantorFamily& fam, const MeasureHistogram& eta,
                                     double d_eta, double frostman_C, const VerifySettings& s);

}  // namespace cantorsum
