#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cyclewalk/arc_graph.hpp"
#include "cyclewalk/evolution.hpp"

namespace cyclewalk {

// Requested an eigenvector at a fiber point where the construction is
// singular (band edge: 1 - lambda^2 below 1e-14).
class degenerate_fiber_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace bands {
// The three dispersion branches are lambda_j(k) = gamma * cos(xi_j(k)),
// xi_j = arccos(A cos k) / 3 + 2 pi j / 3; gamma * A = 6/7.
inline constexpr double kGamma = 1.0183501544346312;  // sqrt(28/27)
inline constexpr double kA = 0.8416975766245415;      // 9 sqrt(3) / (7 sqrt(7))
}  // namespace bands

// Coarse-grained transfer operator on the four cycle sites, ordered
// (0', u, d, 0); row-major, column-stochastic at k = 0.
std::array<cplx, 16> transfer_matrix(double k);

// Branch j in {0,1,2} of the dispersion cubic 9 L^3 - 7 L - 2 cos k = 0,
// trig-solved and Newton-polished.  Ranges: [2/3,1], [-1,-2/3], [-1/3,1/3].
double band_lambda(int j, double k);

// 1 -+ lambda evaluated without cancellation near the band edges, using the
// exact factorizations (1-L)(9L^2+9L+2) = 4 sin^2(k/2) and
// (1+L)(9L^2-9L+2) = 4 cos^2(k/2) on the branch where each is stable.
double one_minus_lambda(int j, double k);
double one_plus_lambda(int j, double k);
double sqrt_one_minus_lambda_sq(int j, double k);

// lambda + (-1)^l i sqrt(1 - lambda^2); l in {0,1} picks the half-plane.
cplx spectral_map(double lambda, int l);

// Normalized eigenvector of the momentum-k walk fiber with eigenvalue
// spectral_map(band_lambda(j,k), l), on the ten coin slots.  Throws
// degenerate_fiber_error within 1e-14 of a band edge.
std::array<cplx, 10> walk_eigenvector(double k, int j, int l);

// The two k-independent flat-band lifts, eigenvalues +i (l=0) and -i (l=1).
// Together with the four cycle functionals of eta_coin_components they span
// the fiber's point subspace.
std::array<cplx, 10> flat_eigenvector(double k, int l);

// Group velocity of branch (j,l): (-1)^l lambda_j'(k) / sqrt(1 - lambda_j^2),
// evaluated through the stable factorizations.  At the singular momenta
// (k = 0 for j = 0, k = +-pi for j = 1) the value returned is the one-sided
// limit from the positive side of the edge.
double velocity(int j, int l, double k);

// d(velocity)/dk in closed form.
double velocity_derivative(int j, int l, double k);

// The one-sided limits at the singular momenta: +-(-1)^l / sqrt(10).
// j = 0 limits at k -> 0+-, j = 1 at k -> pi- / -pi+; j = 2 has none.
double one_sided_velocity_limit(int j, int l, bool from_above);

// Full 10x10 fiber unitary at momentum k, row-major in coin order.
std::array<cplx, 100> walk_fiber(double k);

// Momentum representation of a finitely supported chain state:
//   phihat(k)[c] = sum_j e^{-i k j} psi(cell j, coin c).
class FourierState {
 public:
  static FourierState from_state(const WalkState& st);  // chain windows only
  static FourierState from_cells(std::vector<std::pair<std::int32_t, std::array<cplx, 10>>> cells);

  std::array<cplx, 10> operator()(double k) const;
  double norm2() const;  // Parseval: equals the state's norm
  const std::vector<std::pair<std::int32_t, std::array<cplx, 10>>>& cells() const { return cells_; }

 private:
  std::vector<std::pair<std::int32_t, std::array<cplx, 10>>> cells_;
};

FourierState fourier_initial(const WalkState& st);

}  // namespace cyclewalk
