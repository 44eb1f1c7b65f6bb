#pragma once

#include <cstdint>
#include <vector>

#include "cyclewalk/evolution.hpp"
#include "cyclewalk/spectral.hpp"

namespace cyclewalk {

// |<w_{j,l}(k), phihat+(k)>|^2, the branch weight entering the weak limit.
// The positive-frequency transform phihat+(k) is the FourierState evaluated
// at -k; branch_weight handles that internally.
double branch_weight(const FourierState& phi, int j, int l, double k);

// Mass captured by the fiber's point subspace at momentum k (the four cycle
// functionals); integrating over k recovers the trapped probability.
double point_weight(const FourierState& phi, double k);

// One branch of the limiting a.c. density, sampled as x(k), rho(x(k)).
// branch 0 spans (-1/sqrt10, 1/sqrt10) (outer bands), branch 1 spans
// (-2/7, 2/7) (inner band); where they overlap the total density is the sum.
struct DensityCurve {
  int branch;
  std::vector<double> k, x, rho;

  // Trapezoid mass of the curve in x.
  double mass() const;
};

// The weak limit of X_t / t: an atom `delta` at 0 plus an absolutely
// continuous part, held as quadrature samples of the branch weights.
class LimitLaw {
 public:
  double delta() const { return delta_; }
  double norm2() const { return norm2_; }
  // |delta + ac mass - norm2| from the quadrature; small by completeness.
  double mass_error() const { return mass_error_; }
  int grid() const { return grid_; }

  double cdf(double x) const;
  double moment(int r) const;
  const std::vector<DensityCurve>& curves() const { return curves_; }

 private:
  friend LimitLaw build_limit_law(const FourierState* phi, double delta, double norm2, int grid);
  double delta_ = 0.0, norm2_ = 1.0, mass_error_ = 0.0;
  int grid_ = 0;
  std::vector<double> v_, w_, cum_;  // sorted observables, weights, prefix sums
  std::vector<DensityCurve> curves_;
};

// Weak limit of the walk started from st (a chain-window state): the atom is
// the trapped probability, the a.c. part comes from the branch weights of
// the momentum representation.  If the quadrature mass identity misses by
// more than 1e-4 the grid is doubled once, then the failure is an error.
LimitLaw weak_limit(const WalkState& st, int grid = 16384);

// Average law over the ten one-coin basis states of a cell: every branch
// weight flattens to 1/10, the atom is exactly 2/5, and the curves reduce to
// (3/5) times the two reference densities 1/(3 pi |dx_b/dk|).
LimitLaw uniform_limit_law(int grid = 16384);

// Cross-check of the closed lambda-parametrized form of the reference
// densities against the k-parametrized ones, sampled on both bands away
// from the edges.  Returns the worst relative deviations.
struct ParametrizationCheck {
  double max_position_dev = 0.0;
  double max_density_dev = 0.0;
};

ParametrizationCheck lambda_parametrization_check(int samples = 200, double edge_margin = 1e-3);

}  // namespace cyclewalk
