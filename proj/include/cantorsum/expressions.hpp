#pragma once

#include <vector>

#include "cantorsum/interval_union.hpp"

namespace cantorsum {

/// One term of a parameter coefficient: coeff * lambda^power * exp(rate*lambda).
struct CoefTerm {
  double coeff = 0.0;
  int power = 0;
  double rate = 0.0;
};

/// Closed-form coefficient function of the parameter with an exact derivative.
class CoefFn {
 public:
  CoefFn() = default;
  explicit CoefFn(double constant);
  explicit CoefFn(std::vector<CoefTerm> terms);
  static CoefFn linear(double a0, double a1);  // a0 + a1*lambda

  double value(double lambda) const;
  double deriv(double lambda) const;
  bool is_constant() const;
  const std::vector<CoefTerm>& terms() const { return terms_; }

 private:
  std::vector<CoefTerm> terms_;
};

enum class TrigKind { one, sin, cos };

/// One term of a perturbation: coeff * x^xpow * trig(freq*x + phase) * lambda^lpow.
struct PerturbTerm {
  double coeff = 0.0;
  int xpow = 0;
  TrigKind trig = TrigKind::one;
  double freq = 0.0;
  double phase = 0.0;
  int lpow = 0;
};

/// Small-amplitude perturbation g(x, lambda) with all the partial derivatives
/// the verifier needs available in closed form.
class PerturbationField {
 public:
  PerturbationField(std::vector<PerturbTerm> terms, double c2_bound);

  double value(double x, double lambda) const;
  double dx(double x, double lambda) const;
  double dxx(double x, double lambda) const;
  double dlambda(double x, double lambda) const;
  double dx_dlambda(double x, double lambda) const;

  double c2_bound() const { return c2_bound_; }
  const std::vector<PerturbTerm>& terms() const { return terms_; }

  /// Max over an (x, lambda) grid of |g|, |g_x|, |g_xx|, |g_xl|; spot-check
  /// that the recorded c2 bound is honest.
  double scan_c2(const Interval& lambda_range, int xgrid = 64, int lgrid = 16) const;

 private:
  std::vector<PerturbTerm> terms_;
  double c2_bound_;
};

}  // namespace cantorsum
