#include "cyclewalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace cyclewalk {

namespace {

using std::numbers::pi;

// Local coin geometry of one chain cell, sites indexed (0', u, d, 0).
constexpr int kSiteDeg[4] = {3, 2, 2, 3};
constexpr int kFibO[10] = {0, 0, 0, 1, 1, 2, 2, 3, 3, 3};
constexpr int kFibT[10] = {3, 2, 1, 0, 3, 3, 0, 1, 2, 0};
constexpr int kFibRev[10] = {9, 6, 3, 2, 7, 8, 1, 4, 5, 0};

// Bloch phase carried by the two bridge coins: coin 9 crosses +1 cell,
// coin 0 crosses -1.
double bridge_phase(int coin, double k) {
  if (coin == 9) return k;
  if (coin == 0) return -k;
  return 0.0;
}

void check_branch(int j) {
  if (j < 0 || j > 2) throw std::invalid_argument("branch index must be 0, 1 or 2");
}

void check_half(int l) {
  if (l != 0 && l != 1) throw std::invalid_argument("half-plane index must be 0 or 1");
}

double cubic_residual_root(int j, double k) {
  const double c = std::cos(k);
  double arg = bands::kA * c;
  arg = std::clamp(arg, -1.0, 1.0);
  const double xi = std::acos(arg) / 3.0 + 2.0 * pi * j / 3.0;
  double lam = bands::kGamma * std::cos(xi);
  // Two Newton steps on 9L^3 - 7L - 2cos k; the derivative 27L^2 - 7 is
  // bounded away from zero on all three branches.
  for (int it = 0; it < 2; ++it) {
    const double f = 9.0 * lam * lam * lam - 7.0 * lam - 2.0 * c;
    const double fp = 27.0 * lam * lam - 7.0;
    lam -= f / fp;
  }
  return lam;
}

struct Factors {
  double minus;  // 1 - lambda
  double plus;   // 1 + lambda
};

Factors stable_factors(int j, double k, double lam) {
  Factors f{1.0 - lam, 1.0 + lam};
  if (j == 0) {
    const double s = std::sin(k / 2.0);
    f.minus = 4.0 * s * s / (9.0 * lam * lam + 9.0 * lam + 2.0);
  } else if (j == 1) {
    const double c = std::cos(k / 2.0);
    f.plus = 4.0 * c * c / (9.0 * lam * lam - 9.0 * lam + 2.0);
  }
  return f;
}

using Vec3 = std::array<cplx, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm2_of(const Vec3& v) { return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]); }

// Eigenvector of the reduced symmetric 3x3 fiber (basis 0', (u+d)/sqrt 2, 0)
// for eigenvalue lam: closed form, with a null-space fallback at its two
// isolated zeros (k = pi, lam = 1/3) and (k = 0, lam = -1/3).
Vec3 reduced_eigenvector(double k, double lam) {
  const cplx eik{std::cos(k), std::sin(k)};
  Vec3 g{lam + eik / 3.0, (9.0 * lam * lam - 1.0) / (3.0 * std::sqrt(3.0)), lam + std::conj(eik) / 3.0};
  if (norm2_of(g) > 1e-12) return g;

  const double s = 1.0 / std::sqrt(3.0);
  const Vec3 rows[3] = {{cplx{-lam}, cplx{s}, eik / 3.0},
                        {cplx{s}, cplx{-lam}, cplx{s}},
                        {std::conj(eik) / 3.0, cplx{s}, cplx{-lam}}};
  Vec3 best{};
  double bestn = -1.0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const Vec3 cand = cross(rows[a], rows[b]);
      const double n = norm2_of(cand);
      if (n > bestn) {
        bestn = n;
        best = cand;
      }
    }
  return best;
}

// Lift a 4-site vector through w = A g - nu B g, the intertwining that turns
// transfer-operator eigenvectors into walk-fiber eigenvectors.
std::array<cplx, 10> lift(const std::array<cplx, 4>& g, cplx nu, double k) {
  std::array<cplx, 10> w{};
  for (int e = 0; e < 10; ++e) {
    const double th = bridge_phase(e, k);
    const cplx ph{std::cos(th), -std::sin(th)};
    w[static_cast<std::size_t>(e)] =
        std::sqrt(1.0 / kSiteDeg[kFibO[e]]) * g[static_cast<std::size_t>(kFibO[e])] -
        nu * ph * std::sqrt(1.0 / kSiteDeg[kFibT[e]]) * g[static_cast<std::size_t>(kFibT[e])];
  }
  return w;
}

std::array<cplx, 4> unfold(const Vec3& g) {
  const double r = 1.0 / std::sqrt(2.0);
  std::array<cplx, 4> g4{g[0], r * g[1], r * g[1], g[2]};
  double n = 0.0;
  for (const cplx& z : g4) n += std::norm(z);
  n = std::sqrt(n);
  for (cplx& z : g4) z /= n;
  return g4;
}

}  // namespace

std::array<cplx, 16> transfer_matrix(double k) {
  const cplx eik{std::cos(k), std::sin(k)};
  std::array<cplx, 16> p{};
  auto at = [&p](int r, int c) -> cplx& { return p[static_cast<std::size_t>(4 * r + c)]; };
  at(0, 1) = 0.5;
  at(0, 2) = 0.5;
  at(0, 3) = eik / 3.0;
  at(1, 0) = 1.0 / 3.0;
  at(1, 3) = 1.0 / 3.0;
  at(2, 0) = 1.0 / 3.0;
  at(2, 3) = 1.0 / 3.0;
  at(3, 0) = std::conj(eik) / 3.0;
  at(3, 1) = 0.5;
  at(3, 2) = 0.5;
  return p;
}

double band_lambda(int j, double k) {
  check_branch(j);
  return cubic_residual_root(j, k);
}

double one_minus_lambda(int j, double k) {
  check_branch(j);
  return stable_factors(j, k, cubic_residual_root(j, k)).minus;
}

double one_plus_lambda(int j, double k) {
  check_branch(j);
  return stable_factors(j, k, cubic_residual_root(j, k)).plus;
}

double sqrt_one_minus_lambda_sq(int j, double k) {
  check_branch(j);
  const Factors f = stable_factors(j, k, cubic_residual_root(j, k));
  return std::sqrt(std::max(0.0, f.minus * f.plus));
}

cplx spectral_map(double lambda, int l) {
  check_half(l);
  if (std::abs(lambda) > 1.0 + 1e-12)
    throw std::invalid_argument("spectral parameter outside [-1, 1]");
  lambda = std::clamp(lambda, -1.0, 1.0);
  const double im = std::sqrt(1.0 - lambda * lambda);
  return {lambda, l == 0 ? im : -im};
}

std::array<cplx, 10> walk_eigenvector(double k, int j, int l) {
  check_branch(j);
  check_half(l);
  const double lam = cubic_residual_root(j, k);
  const Factors f = stable_factors(j, k, lam);
  const double one_m_l2 = f.minus * f.plus;
  if (one_m_l2 < 1e-14)
    throw degenerate_fiber_error("band edge: eigenvector undefined within 1e-14 of |lambda| = 1");

  const std::array<cplx, 4> g4 = unfold(reduced_eigenvector(k, lam));
  const cplx nu{lam, (l == 0 ? 1.0 : -1.0) * std::sqrt(one_m_l2)};
  std::array<cplx, 10> w = lift(g4, nu, k);
  const double inv = 1.0 / std::sqrt(2.0 * one_m_l2);
  for (cplx& z : w) z *= inv;
  return w;
}

std::array<cplx, 10> flat_eigenvector(double k, int l) {
  check_half(l);
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<cplx, 4> g4{cplx{}, cplx{r}, cplx{-r}, cplx{}};
  const cplx nu{0.0, l == 0 ? 1.0 : -1.0};
  std::array<cplx, 10> w = lift(g4, nu, k);
  for (cplx& z : w) z *= r;  // ||w||^2 = 2 at lambda = 0
  return w;
}

double velocity(int j, int l, double k) {
  check_branch(j);
  check_half(l);
  const double lam = cubic_residual_root(j, k);
  const double sgn = l == 0 ? 1.0 : -1.0;
  const double den = 27.0 * lam * lam - 7.0;
  if (j == 0) {
    // lambda'/sqrt(1-lambda^2) with the sin(k/2) factors cancelled by hand;
    // at k = 0 this evaluates to the limit from k -> 0+.
    const double sh = std::sin(k / 2.0);
    const double side = sh >= 0.0 ? 1.0 : -1.0;
    const double root = std::sqrt((9.0 * lam * lam + 9.0 * lam + 2.0) / (1.0 + lam));
    return sgn * -2.0 * side * std::cos(k / 2.0) * root / den;
  }
  if (j == 1) {
    const double ch = std::cos(k / 2.0);
    const double side = ch >= 0.0 ? 1.0 : -1.0;
    const double root = std::sqrt((9.0 * lam * lam - 9.0 * lam + 2.0) / (1.0 - lam));
    return sgn * -2.0 * std::sin(k / 2.0) * side * root / den;
  }
  const double lp = -2.0 * std::sin(k) / den;
  return sgn * lp / std::sqrt(1.0 - lam * lam);
}

double velocity_derivative(int j, int l, double k) {
  check_branch(j);
  check_half(l);
  const double lam = cubic_residual_root(j, k);
  const double x = lam / bands::kGamma;  // cos(xi_j)
  const double q = 4.0 * x * x - 1.0;
  const double F = -2.0 * x * (28.0 * x * x + 33.0) / (9.0 * q * q * q);
  const double sgn = l == 0 ? 1.0 : -1.0;
  return -sgn * (bands::kA / 21.0) * F * sqrt_one_minus_lambda_sq(j, k);
}

double one_sided_velocity_limit(int j, int l, bool from_above) {
  check_half(l);
  const double mag = 1.0 / std::sqrt(10.0);
  const double sgn = l == 0 ? 1.0 : -1.0;
  if (j == 0) return from_above ? -sgn * mag : sgn * mag;   // at k = 0
  if (j == 1) return from_above ? sgn * mag : -sgn * mag;   // at k = +-pi
  throw std::invalid_argument("branch 2 has no singular momentum");
}

std::array<cplx, 100> walk_fiber(double k) {
  std::array<cplx, 100> u{};
  for (int f = 0; f < 10; ++f) {
    const double th = bridge_phase(f, k);
    const cplx ph{std::cos(th), -std::sin(th)};
    for (int e = 0; e < 10; ++e) {
      if (kFibO[e] != kFibT[f]) continue;
      const double coin = 2.0 / kSiteDeg[kFibO[e]] - (e == kFibRev[f] ? 1.0 : 0.0);
      u[static_cast<std::size_t>(10 * f + e)] = coin * ph;
    }
  }
  return u;
}

FourierState FourierState::from_state(const WalkState& st) {
  const ArcSpace& sp = *st.space;
  if (sp.kind() != GraphKind::C4Prime)
    throw std::invalid_argument("momentum representation requires a chain window");
  std::map<std::int32_t, std::array<cplx, 10>> cells;
  for (std::int32_t e = 0; e < sp.arc_count(); ++e) {
    const cplx& z = st.amps[static_cast<std::size_t>(e)];
    if (z == cplx{}) continue;
    cells[sp.cell_of_arc(e)][static_cast<std::size_t>(sp.coin_of(e))] += z;
  }
  std::vector<std::pair<std::int32_t, std::array<cplx, 10>>> packed(cells.begin(), cells.end());
  return from_cells(std::move(packed));
}

FourierState FourierState::from_cells(
    std::vector<std::pair<std::int32_t, std::array<cplx, 10>>> cells) {
  FourierState fs;
  fs.cells_ = std::move(cells);
  return fs;
}

std::array<cplx, 10> FourierState::operator()(double k) const {
  std::array<cplx, 10> out{};
  for (const auto& [cell, amps] : cells_) {
    const double th = -k * static_cast<double>(cell);
    const cplx ph{std::cos(th), std::sin(th)};
    for (int c = 0; c < 10; ++c) out[static_cast<std::size_t>(c)] += ph * amps[static_cast<std::size_t>(c)];
  }
  return out;
}

double FourierState::norm2() const {
  double n = 0.0;
  for (const auto& [cell, amps] : cells_)
    for (const cplx& z : amps) n += std::norm(z);
  return n;
}

FourierState fourier_initial(const WalkState& st) { return FourierState::from_state(st); }

}  // namespace cyclewalk
