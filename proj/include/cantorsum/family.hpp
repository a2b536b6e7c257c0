#pragma once

#include <optional>
#include <vector>

#include "cantorsum/expressions.hpp"
#include "cantorsum/ifs.hpp"
#include "cantorsum/words.hpp"

namespace cantorsum {

struct FamilyMap {
  CoefFn c;
  CoefFn b;
  std::optional<PerturbationField> g;
};

/// A parameter-dependent system f_i(x) = c_i(lambda)*x + b_i(lambda) + g_i(x, lambda)
/// over a closed parameter interval.
class CantorFamily {
 public:
  CantorFamily(std::vector<FamilyMap> maps, Interval domain, double delta);

  size_t size() const { return maps_.size(); }
  const Interval& domain() const { return domain_; }
  double delta() const { return delta_; }
  const std::vector<FamilyMap>& maps() const { return maps_; }

  bool affine() const;
  void require_in_domain(double lambda) const;

  double c(size_t i, double lambda) const { return maps_[i].c.value(lambda); }
  double dc(size_t i, double lambda) const { return maps_[i].c.deriv(lambda); }
  double b(size_t i, double lambda) const { return maps_[i].b.value(lambda); }
  double db(size_t i, double lambda) const { return maps_[i].b.deriv(lambda); }

  double f(size_t i, double x, double lambda) const;
  double f_x(size_t i, double x, double lambda) const;
  double f_lambda(size_t i, double x, double lambda) const;
  double f_x_lambda(size_t i, double x, double lambda) const;

  /// Concrete system at a parameter value; throws Errc::separation_violated
  /// when the instantiated images are not strictly separated and
  /// Errc::out_of_domain off the parameter interval.
  Ifs at(double lambda) const;

  /// Analytic coefficient derivatives vs central finite differences on a
  /// parameter grid; true when they agree to rel_tol everywhere.
  bool derivative_consistency(int grid = 17, double rel_tol = 1e-6) const;

 private:
  std::vector<FamilyMap> maps_;
  Interval domain_;
  double delta_;
};

/// Finite-difference slopes of |c_i| over a parameter grid all <= -delta + slack.
bool monotonicity_check(const CantorFamily& fam, int grid, double slack = 1e-9);

struct CodingEval {
  double x = 0.0;
  double dx_dlambda = 0.0;
  double error_bound = 0.0;
};

/// Coding-map value and its parameter derivative for an eventually periodic
/// path. Affine systems are evaluated exactly through the fixed point of the
/// periodic tail; perturbed systems solve the tail fixed point iteratively and
/// use implicit differentiation.
CodingEval coding_eval(const CantorFamily& fam, double lambda, const SymbolPath& path);

/// Orbit x_s = Pi_lambda(shift^s path) for s = 0..n.
std::vector<double> orbit_points(const CantorFamily& fam, double lambda, const SymbolPath& path,
                                 uint32_t n);

/// Homogeneous two-map family c(lambda) = c0 + c1*lambda, offsets b0, b1(lambda).
CantorFamily homogeneous_two_map_family(double c0, double c1, CoefFn b0, CoefFn b1,
                                        Interval domain, double delta);

}  // namespace cantorsum
