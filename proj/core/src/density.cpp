#include "cyclewalk/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "cyclewalk/homology.hpp"
#include "cyclewalk/parallel.hpp"

namespace cyclewalk {

namespace {

using std::numbers::pi;

constexpr double kMassTol = 1e-4;

double overlap_weight(const std::array<cplx, 10>& vec, const std::array<cplx, 10>& phi) {
  cplx ip{};
  for (int c = 0; c < 10; ++c)
    ip += std::conj(vec[static_cast<std::size_t>(c)]) * phi[static_cast<std::size_t>(c)];
  return std::norm(ip);
}

// Branch weights at one momentum; null phi means the flat ensemble value 1/10.
double weight_at(const FourierState* phi, int j, int l, double k) {
  if (phi == nullptr) return 0.1;
  return overlap_weight(walk_eigenvector(k, j, l), (*phi)(-k));
}

}  // namespace

double branch_weight(const FourierState& phi, int j, int l, double k) {
  return weight_at(&phi, j, l, k);
}

double point_weight(const FourierState& phi, double k) {
  const std::array<cplx, 10> f = phi(-k);
  double s = 0.0;
  for (int m = 0; m < 4; ++m) s += overlap_weight(eta_coin_components(m), f);
  return s;
}

double DensityCurve::mass() const {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    s += 0.5 * (rho[i] + rho[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

double LimitLaw::cdf(double x) const {
  const auto it = std::upper_bound(v_.begin(), v_.end(), x);
  const double ac = it == v_.begin() ? 0.0 : cum_[static_cast<std::size_t>(it - v_.begin()) - 1];
  return ac + (x >= 0.0 ? delta_ : 0.0);
}

double LimitLaw::moment(int r) const {
  if (r == 0) return delta_ + (cum_.empty() ? 0.0 : cum_.back());
  double s = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i) s += std::pow(v_[i], r) * w_[i];
  return s;
}

LimitLaw build_limit_law(const FourierState* phi, double delta, double norm2, int grid) {
  if (grid < 8) throw std::invalid_argument("grid too small");
  LimitLaw law;
  law.delta_ = delta;
  law.norm2_ = norm2;
  law.grid_ = grid;

  const std::int64_t M = grid;
  const double dw = 1.0 / static_cast<double>(M);

  // Quadrature samples of every branch: observable v = -x_{j,l}(k), which is
  // the velocity at the flipped half-plane index.
  std::vector<std::pair<double, double>> samples(static_cast<std::size_t>(6 * M));
  parallel_for(M, [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      const double k = -pi + (static_cast<double>(i) + 0.5) * (2.0 * pi / static_cast<double>(M));
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 2; ++l) {
          const double v = velocity(j, 1 - l, k);
          const double w = weight_at(phi, j, l, k) * dw;
          samples[static_cast<std::size_t>((2 * j + l) * M + i)] = {v, w};
        }
    }
  });
  std::sort(samples.begin(), samples.end());
  law.v_.resize(samples.size());
  law.w_.resize(samples.size());
  law.cum_.resize(samples.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    law.v_[i] = samples[i].first;
    law.w_[i] = samples[i].second;
    acc += samples[i].second;
    law.cum_[i] = acc;
  }
  law.mass_error_ = std::abs(law.delta_ + acc - norm2);

  // Outer curve: x = x_{0,0}(k) over [0, 2pi) collects the four branch
  // weights whose observable lands at that x.
  DensityCurve outer;
  outer.branch = 0;
  outer.k.resize(static_cast<std::size_t>(M));
  outer.x.resize(static_cast<std::size_t>(M));
  outer.rho.resize(static_cast<std::size_t>(M));
  parallel_for(M, [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      const double k = (static_cast<double>(i) + 0.5) * (2.0 * pi / static_cast<double>(M));
      const double tau = std::abs(velocity_derivative(0, 0, k));
      const double wsum = weight_at(phi, 0, 1, k) + weight_at(phi, 0, 0, -k) +
                          weight_at(phi, 1, 0, k - pi) + weight_at(phi, 1, 1, pi - k);
      outer.k[static_cast<std::size_t>(i)] = k;
      outer.x[static_cast<std::size_t>(i)] = velocity(0, 0, k);
      outer.rho[static_cast<std::size_t>(i)] = wsum / (2.0 * pi * tau);
    }
  });

  // Inner curve: x = x_{2,0}(k) over [-pi/2, pi/2).
  DensityCurve inner;
  inner.branch = 1;
  inner.k.resize(static_cast<std::size_t>(M));
  inner.x.resize(static_cast<std::size_t>(M));
  inner.rho.resize(static_cast<std::size_t>(M));
  parallel_for(M, [&](std::int64_t b, std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      const double k = -pi / 2.0 + (static_cast<double>(i) + 0.5) * (pi / static_cast<double>(M));
      const double tau = std::abs(velocity_derivative(2, 0, k));
      const double wsum = weight_at(phi, 2, 1, k) + weight_at(phi, 2, 1, pi - k) +
                          weight_at(phi, 2, 0, -k) + weight_at(phi, 2, 0, pi + k);
      inner.k[static_cast<std::size_t>(i)] = k;
      inner.x[static_cast<std::size_t>(i)] = velocity(2, 0, k);
      inner.rho[static_cast<std::size_t>(i)] = wsum / (2.0 * pi * tau);
    }
  });

  law.curves_.push_back(std::move(outer));
  law.curves_.push_back(std::move(inner));
  return law;
}

LimitLaw weak_limit(const WalkState& st, int grid) {
  const FourierState phi = fourier_initial(st);
  const double delta = homological_projection(st).delta;
  const double norm2 = phi.norm2();
  LimitLaw law = build_limit_law(&phi, delta, norm2, grid);
  if (law.mass_error() > kMassTol) {
    law = build_limit_law(&phi, delta, norm2, 2 * grid);
    if (law.mass_error() > kMassTol)
      throw std::runtime_error("weak-limit mass identity failed: residual " +
                               std::to_string(law.mass_error()));
  }
  return law;
}

LimitLaw uniform_limit_law(int grid) {
  return build_limit_law(nullptr, 0.4, 1.0, grid);
}

ParametrizationCheck lambda_parametrization_check(int samples, double edge_margin) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  ParametrizationCheck out;
  const double gamma = bands::kGamma;
  const double A = bands::kA;

  // Bands sampled: the top band (2/3, 1) via branch 0 and the middle band
  // (-1/3, 1/3) via branch 2, staying `edge_margin` inside each.
  const double ranges[2][2] = {{2.0 / 3.0 + edge_margin, 1.0 - edge_margin},
                               {-1.0 / 3.0 + edge_margin, 1.0 / 3.0 - edge_margin}};
  const int branch_of[2] = {0, 2};

  for (int b = 0; b < 2; ++b) {
    for (int i = 0; i < samples; ++i) {
      const double lam =
          ranges[b][0] + (ranges[b][1] - ranges[b][0]) * (static_cast<double>(i) + 0.5) /
                             static_cast<double>(samples);
      // Dispersion inverted: cos k = (9 lam^3 - 7 lam) / 2, k in [0, pi].
      const double ck = std::clamp((9.0 * lam * lam * lam - 7.0 * lam) / 2.0, -1.0, 1.0);
      const double k = std::acos(ck);
      const int j = branch_of[b];

      // k-parametrized reference values.
      const double x_k = std::abs(velocity(j, 0, k));
      const double nu_k = 1.0 / (3.0 * pi * std::abs(velocity_derivative(j, 0, k)));

      // lambda-parametrized closed forms.
      const double xr = lam / gamma;                  // cos(xi)
      const double c3 = 4.0 * xr * xr * xr - 3.0 * xr;  // cos(3 xi) = A cos k
      const double s3sq = std::max(0.0, 1.0 - c3 * c3);
      const double eta = (A * A - c3 * c3) / (9.0 * s3sq);
      const double x_l = std::sqrt(std::max(0.0, (gamma * gamma - lam * lam) * eta /
                                                     (1.0 - lam * lam)));
      const double q = 4.0 * xr * xr - 1.0;
      const double G = -2.0 * xr * (28.0 * xr * xr + 33.0) / (9.0 * q * q * q);
      const double nu_l = (7.0 / (27.0 * pi)) * 7.0 * std::sqrt(21.0) /
                          (std::abs(G) * std::sqrt(1.0 - lam * lam));

      out.max_position_dev = std::max(out.max_position_dev, std::abs(x_k - x_l) / x_l);
      out.max_density_dev = std::max(out.max_density_dev, std::abs(nu_k - nu_l) / nu_l);
    }
  }
  return out;
}

}  // namespace cyclewalk
