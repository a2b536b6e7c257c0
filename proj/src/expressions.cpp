#include "cantorsum/expressions.hpp"

#include <algorithm>
#include <cmath>

#include "cantorsum/errors.hpp"

namespace cantorsum {

namespace {

double ipow(double x, int n) {
  if (n <= 0) return 1.0;
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= x;
  return v;
}

// value, first and second derivative of trig(freq*x + phase)
struct TrigEval {
  double v, d1, d2;
};

TrigEval trig_eval(TrigKind kind, double freq, double phase, double x) {
  switch (kind) {
    case TrigKind::one:
      return {1.0, 0.0, 0.0};
    case TrigKind::sin: {
      double u = freq * x + phase;
      return {std::sin(u), freq * std::cos(u), -freq * freq * std::sin(u)};
    }
    case TrigKind::cos: {
      double u = freq * x + phase;
      return {std::cos(u), -freq * std::sin(u), -freq * freq * std::cos(u)};
    }
  }
  return {1.0, 0.0, 0.0};
}

}  // namespace

CoefFn::CoefFn(double constant) {
  if (constant != 0.0) terms_.push_back(CoefTerm{constant, 0, 0.0});
}

CoefFn::CoefFn(std::vector<CoefTerm> terms) : terms_(std::move(terms)) {}

CoefFn CoefFn::linear(double a0, double a1) {
  std::vector<CoefTerm> t;
  if (a0 != 0.0) t.push_back(CoefTerm{a0, 0, 0.0});
  if (a1 != 0.0) t.push_back(CoefTerm{a1, 1, 0.0});
  return CoefFn(std::move(t));
}

double CoefFn::value(double lambda) const {
  double v = 0.0;
  for (const CoefTerm& t : terms_) {
    double term = t.coeff * ipow(lambda, t.power);
    if (t.rate != 0.0) term *= std::exp(t.rate * lambda);
    v += term;
  }
  return v;
}

double CoefFn::deriv(double lambda) const {
  double v = 0.0;
  for (const CoefTerm& t : terms_) {
    double e = t.rate != 0.0 ? std::exp(t.rate * lambda) : 1.0;
    double d = 0.0;
    if (t.power > 0) d += t.power * ipow(lambda, t.power - 1);
    d += t.rate * ipow(lambda, t.power);
    v += t.coeff * d * e;
  }
  return v;
}

bool CoefFn::is_constant() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const CoefTerm& t) { return t.power == 0 && t.rate == 0.0; });
}

PerturbationField::PerturbationField(std::vector<PerturbTerm> terms, double c2_bound)
    : terms_(std::move(terms)), c2_bound_(c2_bound) {
  if (c2_bound_ < 0.0) raise(Errc::config, "perturbation c2_bound must be >= 0");
  for (const PerturbTerm& t : terms_) {
    if (t.xpow < 0 || t.lpow < 0) raise(Errc::config, "perturbation powers must be >= 0");
  }
}

double PerturbationField::value(double x, double lambda) const {
  double v = 0.0;
  for (const PerturbTerm& t : terms_) {
    TrigEval tr = trig_eval(t.trig, t.freq, t.phase, x);
    v += t.coeff * ipow(x, t.xpow) * tr.v * ipow(lambda, t.lpow);
  }
  return v;
}

double PerturbationField::dx(double x, double lambda) const {
  double v = 0.0;
  for (const PerturbTerm& t : terms_) {
    TrigEval tr = trig_eval(t.trig, t.freq, t.phase, x);
    double dxpart = 0.0;
    if (t.xpow > 0) dxpart += t.xpow * ipow(x, t.xpow - 1) * tr.v;
    dxpart += ipow(x, t.xpow) * tr.d1;
    v += t.coeff * dxpart * ipow(lambda, t.lpow);
  }
  return v;
}

double PerturbationField::dxx(double x, double lambda) const {
  double v = 0.0;
  for (const PerturbTerm& t : terms_) {
    TrigEval tr = trig_eval(t.trig, t.freq, t.phase, x);
    double d = 0.0;
    if (t.xpow > 1) d += t.xpow * (t.xpow - 1) * ipow(x, t.xpow - 2) * tr.v;
    if (t.xpow > 0) d += 2.0 * t.xpow * ipow(x, t.xpow - 1) * tr.d1;
    d += ipow(x, t.xpow) * tr.d2;
    v += t.coeff * d * ipow(lambda, t.lpow);
  }
  return v;
}

double PerturbationField::dlambda(double x, double lambda) const {
  double v = 0.0;
  for (const PerturbTerm& t : terms_) {
    if (t.lpow == 0) continue;
    TrigEval tr = trig_eval(t.trig, t.freq, t.phase, x);
    v += t.coeff * ipow(x, t.xpow) * tr.v * t.lpow * ipow(lambda, t.lpow - 1);
  }
  return v;
}

double PerturbationField::dx_dlambda(double x, double lambda) const {
  double v = 0.0;
  for (const PerturbTerm& t : terms_) {
    if (t.lpow == 0) continue;
    TrigEval tr = trig_eval(t.trig, t.freq, t.phase, x);
    double dxpart = 0.0;
    if (t.xpow > 0) dxpart += t.xpow * ipow(x, t.xpow - 1) * tr.v;
    dxpart += ipow(x, t.xpow) * tr.d1;
    v += t.coeff * dxpart * t.lpow * ipow(lambda, t.lpow - 1);
  }
  return v;
}

double PerturbationField::scan_c2(const Interval& lambda_range, int xgrid, int lgrid) const {
  double worst = 0.0;
  for (int j = 0; j <= lgrid; ++j) {
    double lam = lambda_range.lo + (lambda_range.hi - lambda_range.lo) * j / std::max(1, lgrid);
    for (int i = 0; i <= xgrid; ++i) {
      double x = static_cast<double>(i) / xgrid;
      worst = std::max({worst, std::abs(value(x, lam)), std::abs(dx(x, lam)),
                        std::abs(dxx(x, lam)), std::abs(dx_dlambda(x, lam))});
    }
  }
  return worst;
}

}  // namespace cantorsum
