#include "cyclewalk/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "cyclewalk/arc_graph.hpp"
#include "cyclewalk/density.hpp"
#include "cyclewalk/evolution.hpp"
#include "cyclewalk/homology.hpp"
#include "cyclewalk/presets.hpp"
#include "cyclewalk/spectral.hpp"

namespace cyclewalk {

namespace {

using std::numbers::pi;
using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CoinAmplitudes random_coin(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CoinAmplitudes a;
  for (int c = 0; c < 10; ++c) a[c] = cplx{g(rng), g(rng)};
  return a.normalized();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

CriterionResult c1_scattering(const VerifyOptions&) {
  const auto t0 = Clock::now();
  CriterionResult r{1, "scattering-rates", false, 0.0, 1e-8, "", 0.0};
  const ArcSpace space = ArcSpace::build(GraphKind::TildeC4, 130);
  const double want[2][3] = {{0.2, 0.0, 0.8}, {0.45, 0.5, 0.05}};
  const char* names[2] = {"case-i", "case-ii"};
  for (int s = 0; s < 2; ++s) {
    Evolution ev(space);
    WalkState st = make_coin_state(space, preset_amplitudes(names[s]));
    const ScatteringRates rr = scattering_rates(ev, std::move(st), 120);
    r.measured = std::max({r.measured, std::abs(rr.reflected - want[s][0]),
                           std::abs(rr.trapped - want[s][1]),
                           std::abs(rr.transmitted - want[s][2])});
    r.details += std::string(names[s]) + " t=" + std::to_string(rr.t_used) + " ";
  }
  r.seconds = elapsed(t0);
  r.pass = r.measured <= r.threshold && r.seconds < 1.0;
  r.details += "dev=" + fmt(r.measured);
  return r;
}

CriterionResult c2_closed_forms(const VerifyOptions& opts) {
  const auto t0 = Clock::now();
  CriterionResult r{2, "closed-form-oracle", false, 0.0, 1e-9, "", 0.0};
  const ArcSpace space = ArcSpace::build(GraphKind::TildeC4, 210);
  const std::int32_t vm1 = space.vertex_id(LocalSite::Tail, -1);
  const std::int32_t vp1 = space.vertex_id(LocalSite::Tail, 1);
  const std::int32_t cyc[4] = {space.vertex_id(LocalSite::ZeroPrime, 0),
                               space.vertex_id(LocalSite::U, 0), space.vertex_id(LocalSite::D, 0),
                               space.vertex_id(LocalSite::Zero, 0)};
  const LocalSite sites[4] = {LocalSite::ZeroPrime, LocalSite::U, LocalSite::D, LocalSite::Zero};

  std::mt19937_64 rng(opts.seed);
  Evolution ev(space);
  double dev_sites = 0.0, dev_limits = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const CoinAmplitudes a = random_coin(rng);
    const SiteLimitTable tbl = closed_form_site_limits(a);
    WalkState st = make_coin_state(space, a);
    for (std::int64_t t = 1; t <= 204; ++t) {
      ev.step(st);
      const std::vector<double> mu = vertex_distribution(st);
      if (t <= 40) {
        dev_sites = std::max(
            {dev_sites,
             std::abs(mu[static_cast<std::size_t>(vm1)] - closed_form_site_probability(a, t, -1)),
             std::abs(mu[static_cast<std::size_t>(vp1)] - closed_form_site_probability(a, t, 1))});
      }
      if (t >= 201) {
        const int jmod = static_cast<int>(t % 4 == 0 ? 4 : t % 4);
        for (int v = 0; v < 4; ++v)
          dev_limits = std::max(dev_limits, std::abs(mu[static_cast<std::size_t>(cyc[v])] -
                                                     tbl.at(sites[v], jmod)));
      }
    }
  }
  r.measured = dev_sites;
  r.seconds = elapsed(t0);
  r.pass = dev_sites <= 1e-9 && dev_limits <= 1e-6;
  r.details = "sites=" + fmt(dev_sites) + " limits=" + fmt(dev_limits);
  return r;
}

CriterionResult c3_eigen_residuals(const VerifyOptions&) {
  const auto t0 = Clock::now();
  CriterionResult r{3, "eigen-residuals", false, 0.0, 1e-12, "", 0.0};
  const ArcSpace space = ArcSpace::build(GraphKind::C4Prime, 8);
  Evolution ev(space);
  const cplx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int m = 0; m < 4; ++m) {
    const cplx phase = phases[m];
    for (std::int32_t cell = -5; cell <= 5; ++cell) {
      WalkState st = eta_state(space, m, cell);
      const std::vector<cplx> before = st.amps;
      ev.step(st);
      double res2 = 0.0;
      for (std::size_t i = 0; i < before.size(); ++i)
        res2 += std::norm(st.amps[i] - phase * before[i]);
      r.measured = std::max(r.measured, std::sqrt(res2));
    }
  }
  r.seconds = elapsed(t0);
  r.pass = r.measured < r.threshold;
  r.details = "max residual " + fmt(r.measured);
  return r;
}

CriterionResult c4_trapped_mass(const VerifyOptions&) {
  const auto t0 = Clock::now();
  CriterionResult r{4, "trapped-mass", false, 0.0, 1e-12, "", 0.0};
  const ArcSpace space = ArcSpace::build(GraphKind::C4Prime, 2);
  const double d3a = homological_projection(make_coin_state(space, preset_amplitudes("fig3a"))).delta;
  const double d3b = homological_projection(make_coin_state(space, preset_amplitudes("fig3b"))).delta;
  double avg = 0.0;
  for (int c = 0; c < 10; ++c) {
    CoinAmplitudes a;
    a[c] = 1.0;
    avg += homological_projection(make_coin_state(space, a)).delta;
  }
  avg /= 10.0;
  const bool ok3a = d3a < 1e-14;
  const double dev = std::max(std::abs(d3b - 0.5), std::abs(avg - 0.4));
  r.measured = std::max(d3a, dev);
  r.seconds = elapsed(t0);
  r.pass = ok3a && dev <= r.threshold;
  r.details = "fig3a=" + fmt(d3a) + " fig3b=" + fmt(d3b) + " avg=" + fmt(avg);
  return r;
}

CriterionResult c5_band_structure(const VerifyOptions&) {
  const auto t0 = Clock::now();
  CriterionResult r{5, "band-structure", false, 0.0, 1e-9, "", 0.0};
  const int n = 10000;
  double resid = 0.0;
  double lo[3] = {2.0, 2.0, 2.0}, hi[3] = {-2.0, -2.0, -2.0};
  double flat = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double k = -pi + 2.0 * pi * i / n;
    for (int j = 0; j < 3; ++j) {
      const double lam = band_lambda(j, k);
      resid = std::max(resid,
                       std::abs(9.0 * lam * lam * lam - 7.0 * lam - 2.0 * std::cos(k)));
      lo[j] = std::min(lo[j], lam);
      hi[j] = std::max(hi[j], lam);
    }
    // The flat eigenvalue 0: (u - d) annihilates the transfer operator.
    const std::array<cplx, 16> P = transfer_matrix(k);
    const cplx f0[4] = {0.0, 1.0, -1.0, 0.0};
    for (int row = 0; row < 4; ++row) {
      cplx acc{};
      for (int col = 0; col < 4; ++col) acc += P[static_cast<std::size_t>(4 * row + col)] * f0[col];
      flat = std::max(flat, std::abs(acc));
    }
  }
  const double edges = std::max({std::abs(hi[0] - 1.0), std::abs(lo[0] - 2.0 / 3.0),
                                 std::abs(lo[1] + 1.0), std::abs(hi[1] + 2.0 / 3.0),
                                 std::abs(hi[2] - 1.0 / 3.0), std::abs(lo[2] + 1.0 / 3.0)});
  r.measured = std::max(edges, flat);
  r.seconds = elapsed(t0);
  r.pass = resid <= 1e-10 && edges <= 1e-9 && flat <= 1e-12;
  r.details = "resid=" + fmt(resid) + " edges=" + fmt(edges) + " flat=" + fmt(flat);
  return r;
}

CriterionResult c6_velocity(const VerifyOptions& opts) {
  const auto t0 = Clock::now();
  CriterionResult r{6, "velocity-extrema", false, 0.0, 1e-10, "", 0.0};
  const int n = 10000;  // even: grid hits 0 and +-pi/2 exactly
  double max0 = 0.0, max2 = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double k = -pi + 2.0 * pi * i / n;
    for (int l = 0; l < 2; ++l) {
      max0 = std::max(max0, std::abs(velocity(0, l, k)));
      max2 = std::max(max2, std::abs(velocity(2, l, k)));
    }
  }
  const double extrema_dev =
      std::max(std::abs(max0 - 1.0 / std::sqrt(10.0)), std::abs(max2 - 2.0 / 7.0));

  // Derivative and velocity against central finite differences, away from
  // the singular/critical momenta.
  std::mt19937_64 rng(opts.seed + 6);
  std::uniform_real_distribution<double> uk(-pi, pi);
  const double h = 1e-5;
  double fd_dev = 0.0;
  int used = 0;
  while (used < 200) {
    const double k = uk(rng);
    const double guard = std::min({std::abs(k), std::abs(std::abs(k) - pi),
                                   std::abs(std::abs(k) - pi / 2.0)});
    if (guard < 0.05) continue;
    ++used;
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 2; ++l) {
        const double lam_p = band_lambda(j, k + h);
        const double lam_m = band_lambda(j, k - h);
        const double lam = band_lambda(j, k);
        const double v_fd =
            (l == 0 ? 1.0 : -1.0) * ((lam_p - lam_m) / (2.0 * h)) / std::sqrt(1.0 - lam * lam);
        const double d_fd = (velocity(j, l, k + h) - velocity(j, l, k - h)) / (2.0 * h);
        fd_dev = std::max({fd_dev, std::abs(velocity(j, l, k) - v_fd),
                           std::abs(velocity_derivative(j, l, k) - d_fd)});
      }
  }
  r.measured = extrema_dev;
  r.seconds = elapsed(t0);
  r.pass = extrema_dev <= 1e-10 && fd_dev <= 1e-6;
  r.details = "extrema=" + fmt(extrema_dev) + " fd=" + fmt(fd_dev);
  return r;
}

double ks_excluding(const PositionDistribution& dist, const LimitLaw& law) {
  // Kolmogorov distance between the empirical CDF of X_t/t and the limit,
  // probed at every jump from both sides, excluding 0.01-neighborhoods of
  // the atom and the density's support endpoints.
  const double excl[5] = {0.0, 2.0 / 7.0, -2.0 / 7.0, 1.0 / std::sqrt(10.0),
                          -1.0 / std::sqrt(10.0)};
  const double t = static_cast<double>(dist.t);
  double ks = 0.0, below = 0.0;
  for (std::size_t i = 0; i < dist.prob.size(); ++i) {
    const double x = static_cast<double>(dist.min_pos + static_cast<std::int32_t>(i)) / t;
    const double above = below + dist.prob[i];
    bool excluded = false;
    for (double e : excl) excluded = excluded || std::abs(x - e) < 0.01;
    if (!excluded) {
      const double F = law.cdf(x);
      ks = std::max({ks, std::abs(F - below), std::abs(F - above)});
    }
    below = above;
  }
  return ks;
}

CriterionResult c7_weak_convergence(const VerifyOptions&) {
  const auto t0 = Clock::now();
  CriterionResult r{7, "weak-convergence", false, 0.0, 0.05, "", 0.0};
  const ArcSpace space = ArcSpace::build(GraphKind::C4Prime, 1010);
  for (const char* name : {"fig3a", "fig3b"}) {
    WalkState st = make_coin_state(space, preset_amplitudes(name));
    const LimitLaw law = weak_limit(st);
    Evolution ev(space);
    ev.run_steps(st, 1000);
    const double ks = ks_excluding(position_distribution(st), law);
    r.measured = std::max(r.measured, ks);
    r.details += std::string(name) + "=" + fmt(ks) + " ";
  }
  r.seconds = elapsed(t0);
  r.pass = r.measured <= r.threshold && r.seconds < 30.0;
  return r;
}

CriterionResult c8_moments(const VerifyOptions& opts) {
  const auto t0 = Clock::now();
  CriterionResult r{8, "moment-consistency", false, 0.0, 0.01, "", 0.0};
  const ArcSpace space = ArcSpace::build(GraphKind::C4Prime, 1010);
  std::mt19937_64 rng(opts.seed + 8);
  for (int trial = 0; trial < 10; ++trial) {
    WalkState st = make_coin_state(space, random_coin(rng));
    const double predicted = weak_limit(st).moment(2);
    Evolution ev(space);
    ev.run_steps(st, 1000);
    const double empirical = position_distribution(st).scaled_moment(2);
    r.measured = std::max(r.measured, std::abs(empirical - predicted) / predicted);
  }
  r.seconds = elapsed(t0);
  r.pass = r.measured <= r.threshold;
  r.details = "max rel dev " + fmt(r.measured);
  return r;
}

CriterionResult c9_mass_identity(const VerifyOptions& opts) {
  const auto t0 = Clock::now();
  CriterionResult r{9, "mass-identity", false, 0.0, 1e-6, "", 0.0};
  const ArcSpace space = ArcSpace::build(GraphKind::C4Prime, 4);
  std::mt19937_64 rng(opts.seed + 9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    WalkState st = WalkState::zero(space);
    for (std::int32_t cell = -2; cell <= 2; ++cell)
      for (int c = 0; c < 10; ++c)
        st.amps[static_cast<std::size_t>(space.coin_arc(c, cell))] = cplx{g(rng), g(rng)};
    st.normalize();
    r.measured = std::max(r.measured, weak_limit(st, 2048).mass_error());
  }
  r.seconds = elapsed(t0);
  r.pass = r.measured <= r.threshold;
  r.details = "max |Delta + ac - 1| = " + fmt(r.measured);
  return r;
}

CriterionResult c10_cross_parametrization(const VerifyOptions&) {
  const auto t0 = Clock::now();
  CriterionResult r{10, "cross-parametrization", false, 0.0, 1e-6, "", 0.0};
  const ParametrizationCheck chk = lambda_parametrization_check(200, 1e-3);
  r.measured = std::max(chk.max_position_dev, chk.max_density_dev);
  r.seconds = elapsed(t0);
  r.pass = r.measured <= r.threshold;
  r.details = "pos=" + fmt(chk.max_position_dev) + " dens=" + fmt(chk.max_density_dev);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts) {
  using Fn = CriterionResult (*)(const VerifyOptions&);
  struct Entry {
    const char* name;
    Fn fn;
  };
  static const Entry checks[] = {{"scattering-rates", c1_scattering},
                                 {"closed-form-oracle", c2_closed_forms},
                                 {"eigen-residuals", c3_eigen_residuals},
                                 {"trapped-mass", c4_trapped_mass},
                                 {"band-structure", c5_band_structure},
                                 {"velocity-extrema", c6_velocity},
                                 {"weak-convergence", c7_weak_convergence},
                                 {"moment-consistency", c8_moments},
                                 {"mass-identity", c9_mass_identity},
                                 {"cross-parametrization", c10_cross_parametrization}};
  std::vector<CriterionResult> out;
  for (const Entry& e : checks) {
    if (!opts.only.empty()) {
      bool wanted = false;
      for (const std::string& s : opts.only)
        wanted = wanted || std::string(e.name).find(s) != std::string::npos;
      if (!wanted) continue;
    }
    out.push_back(e.fn(opts));
  }
  return out;
}

}  // namespace cyclewalk
