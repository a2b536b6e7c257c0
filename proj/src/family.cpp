#include "cantorsum/family.hpp"

#include <cmath>
#include <string>

#include "cantorsum/errors.hpp"

namespace cantorsum {

CantorFamily::CantorFamily(std::vector<FamilyMap> maps, Interval domain, double delta)
    : maps_(std::move(maps)), domain_(domain), delta_(delta) {
  if (maps_.size() < 2) raise(Errc::config, "a family needs at least two maps");
  if (!(domain_.lo < domain_.hi)) raise(Errc::config, "parameter interval must have lo < hi");
  if (!(delta_ >= 0.0)) raise(Errc::config, "delta must be >= 0");
}

bool CantorFamily::affine() const {
  for (const FamilyMap& fm : maps_) {
    if (fm.g.has_value()) return false;
  }
  return true;
}

void CantorFamily::require_in_domain(double lambda) const {
  if (lambda < domain_.lo || lambda > domain_.hi) {
    raise(Errc::out_of_domain, "lambda = " + std::to_string(lambda) +
                                   " outside the parameter interval [" +
                                   std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) +
                                   "]");
  }
}

double CantorFamily::f(size_t i, double x, double lambda) const {
  double v = c(i, lambda) * x + b(i, lambda);
  if (maps_[i].g) v += maps_[i].g->value(x, lambda);
  return v;
}

double CantorFamily::f_x(size_t i, double x, double lambda) const {
  double v = c(i, lambda);
  if (maps_[i].g) v += maps_[i].g->dx(x, lambda);
  return v;
}

double CantorFamily::f_lambda(size_t i, double x, double lambda) const {
  double v = dc(i, lambda) * x + db(i, lambda);
  if (maps_[i].g) v += maps_[i].g->dlambda(x, lambda);
  return v;
}

double CantorFamily::f_x_lambda(size_t i, double x, double lambda) const {
  double v = dc(i, lambda);
  if (maps_[i].g) v += maps_[i].g->dx_dlambda(x, lambda);
  return v;
}

Ifs CantorFamily::at(double lambda) const {
  require_in_domain(lambda);
  std::vector<IfsMap> instantiated;
  instantiated.reserve(maps_.size());
  for (const FamilyMap& fm : maps_) {
    AffineMap aff{fm.c.value(lambda), fm.b.value(lambda)};
    try {
      if (fm.g) {
        instantiated.emplace_back(aff, *fm.g, lambda);
      } else {
        instantiated.emplace_back(aff);
      }
    } catch (const Error& e) {
      raise(Errc::separation_violated,
            "family invalid at lambda = " + std::to_string(lambda) + ": " + e.what());
    }
  }
  std::optional<Ifs> ifs;
  try {
    ifs.emplace(std::move(instantiated));
  } catch (const Error& e) {
    raise(Errc::separation_violated,
          "family invalid at lambda = " + std::to_string(lambda) + ": " + e.what());
  }
  SeparationReport rep = validate_separation(*ifs);
  if (!rep.ok) {
    raise(Errc::separation_violated,
          "strong separation fails at lambda = " + std::to_string(lambda) + " between maps " +
              std::to_string(rep.bad_first) + " and " + std::to_string(rep.bad_second));
  }
  return std::move(*ifs);
}

bool CantorFamily::derivative_consistency(int grid, double rel_tol) const {
  double h = (domain_.hi - domain_.lo) * 1e-6;
  for (int k = 0; k < grid; ++k) {
    double lam = domain_.lo + (domain_.hi - domain_.lo) * (k + 0.5) / grid;
    for (size_t i = 0; i < maps_.size(); ++i) {
      double fd_c = (c(i, lam + h) - c(i, lam - h)) / (2.0 * h);
      double fd_b = (b(i, lam + h) - b(i, lam - h)) / (2.0 * h);
      double scale_c = std::max(1.0, std::abs(dc(i, lam)));
      double scale_b = std::max(1.0, std::abs(db(i, lam)));
      if (std::abs(fd_c - dc(i, lam)) > rel_tol * scale_c) return false;
      if (std::abs(fd_b - db(i, lam)) > rel_tol * scale_b) return false;
    }
  }
  return true;
}

bool monotonicity_check(const CantorFamily& fam, int grid, double slack) {
  if (grid < 2) raise(Errc::config, "monotonicity grid must have >= 2 points");
  const Interval J = fam.domain();
  const double h = (J.hi - J.lo) / (grid - 1);
  for (size_t i = 0; i < fam.size(); ++i) {
    for (int k = 0; k + 1 < grid; ++k) {
      double l0 = J.lo + h * k;
      double l1 = J.lo + h * (k + 1);
      double slope = (std::abs(fam.c(i, l1)) - std::abs(fam.c(i, l0))) / h;
      if (!(slope <= -fam.delta() + slack)) return false;
    }
  }
  return true;
}

namespace {

struct AffineFold {
  double slope = 1.0, dslope = 0.0, offset = 0.0, doffset = 0.0;
};

// Left-composition fold with parameter derivatives: acc <- f_i o acc.
void fold_outer(const CantorFamily& fam, size_t i, double lambda, AffineFold& acc) {
  double ci = fam.c(i, lambda), dci = fam.dc(i, lambda);
  double bi = fam.b(i, lambda), dbi = fam.db(i, lambda);
  acc.dslope = dci * acc.slope + ci * acc.dslope;
  acc.doffset = dci * acc.offset + ci * acc.doffset + dbi;
  acc.slope = ci * acc.slope;
  acc.offset = ci * acc.offset + bi;
}

CodingEval coding_eval_affine(const CantorFamily& fam, double lambda, const SymbolPath& path) {
  AffineFold tail;
  for (size_t i = path.tail.size(); i-- > 0;) fold_outer(fam, path.tail[i], lambda, tail);
  const double den = 1.0 - tail.slope;
  double x = tail.offset / den;
  double dx = (tail.doffset * den + tail.offset * tail.dslope) / (den * den);
  for (size_t i = path.prefix.size(); i-- > 0;) {
    size_t s = path.prefix[i];
    double ci = fam.c(s, lambda);
    double nx = ci * x + fam.b(s, lambda);
    double ndx = fam.dc(s, lambda) * x + ci * dx + fam.db(s, lambda);
    x = nx;
    dx = ndx;
  }
  return CodingEval{x, dx, 0.0};
}

CodingEval coding_eval_perturbed(const CantorFamily& fam, double lambda, const SymbolPath& path) {
  const Word& tail = path.tail;
  // fixed point of the one-period composition, by iteration
  auto period_map = [&](double x) {
    for (size_t i = tail.size(); i-- > 0;) x = fam.f(tail[i], x, lambda);
    return x;
  };
  double x = 0.5;
  double step = 1.0;
  int iters = 0;
  while (step > 1e-16 && iters < 256) {
    double nx = period_map(x);
    step = std::abs(nx - x);
    x = nx;
    ++iters;
  }
  // dF/dx and dF/dlambda at the fixed point, chain rule along the period
  double A = 1.0, B = 0.0;
  double y = x;
  for (size_t i = tail.size(); i-- > 0;) {
    size_t s = tail[i];
    B = fam.f_x(s, y, lambda) * B + fam.f_lambda(s, y, lambda);
    A = fam.f_x(s, y, lambda) * A;
    y = fam.f(s, y, lambda);
  }
  double dx = B / (1.0 - A);
  for (size_t i = path.prefix.size(); i-- > 0;) {
    size_t s = path.prefix[i];
    double nx = fam.f(s, x, lambda);
    double ndx = fam.f_x(s, x, lambda) * dx + fam.f_lambda(s, x, lambda);
    x = nx;
    dx = ndx;
  }
  return CodingEval{x, dx, step};
}

}  // namespace

CodingEval coding_eval(const CantorFamily& fam, double lambda, const SymbolPath& path) {
  fam.require_in_domain(lambda);
  if (fam.affine()) return coding_eval_affine(fam, lambda, path);
  return coding_eval_perturbed(fam, lambda, path);
}

std::vector<double> orbit_points(const CantorFamily& fam, double lambda, const SymbolPath& path,
                                 uint32_t n) {
  std::vector<double> xs(n + 1);
  xs[n] = coding_eval(fam, lambda, path.shift(n)).x;
  for (size_t s = n; s-- > 0;) {
    xs[s] = fam.f(path.at(s), xs[s + 1], lambda);
  }
  return xs;
}

CantorFamily homogeneous_two_map_family(double c0, double c1, CoefFn b0, CoefFn b1,
                                        Interval domain, double delta) {
  std::vector<FamilyMap> maps;
  maps.push_back(FamilyMap{CoefFn::linear(c0, c1), std::move(b0), std::nullopt});
  maps.push_back(FamilyMap{CoefFn::linear(c0, c1), std::move(b1), std::nullopt});
  return CantorFamily(std::move(maps), domain, delta);
}

}  // namespace cantorsum
