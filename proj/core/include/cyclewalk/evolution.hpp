#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "cyclewalk/arc_graph.hpp"

namespace cyclewalk {

// Wavefunction on the arcs of a window, tagged with the step count.
struct WalkState {
  const ArcSpace* space = nullptr;
  std::int64_t t = 0;
  std::vector<cplx> amps;

  static WalkState zero(const ArcSpace& space);
  double norm2() const;
  // Scales to unit norm and returns the factor divided out (the prior norm).
  double normalize();
};

// Amplitudes on the ten arcs incident to one 4-cycle, indexed by coin label.
struct CoinAmplitudes {
  std::array<cplx, 10> a{};

  cplx& operator[](int c) { return a[static_cast<std::size_t>(c)]; }
  const cplx& operator[](int c) const { return a[static_cast<std::size_t>(c)]; }
  double norm2() const;
  CoinAmplitudes normalized() const;
};

// One application of the walk unitary restricted to a window:
//   (U psi)(f) = (2 / deg(t(f))) * s(t(f)) - psi(reverse f),
// where s(v) sums psi over arcs leaving v and absent reversals contribute 0.
// The restriction is exact until amplitude would cross the window boundary;
// the step that would lose mass throws window_overflow_error instead of
// silently truncating.  Each Evolution owns its scratch buffers, so
// independent instances may run on separate threads.
class Evolution {
 public:
  explicit Evolution(const ArcSpace& space);

  const ArcSpace& space() const { return *space_; }

  // Advances by one step (t increments).  Throws window_overflow_error, with
  // the offending step index, the moment any amplitude would leave the window.
  void step(WalkState& st);

  void run_steps(WalkState& st, std::int64_t n);

 private:
  const ArcSpace* space_;
  std::vector<std::int32_t> origin_, term_, rev_;
  std::vector<double> coeff_;            // 2/deg, indexed by vertex
  std::vector<cplx> vsum_, next_;        // scratch
  std::vector<std::int32_t> dangling_;   // tail window: arcs whose mass exits next step
  std::int32_t right_exit_vertex_ = -1;  // chain window: sum at these vertices leaks
  std::int32_t left_exit_vertex_ = -1;
};

// Probability at each vertex: mu(v) = sum over arcs leaving v of |psi|^2.
std::vector<double> vertex_distribution(const WalkState& st);

// The same mass folded onto integer positions (tail coordinate on the tailed
// window, cell index on the chain; every cycle vertex of the tailed window
// reports position 0).
struct PositionDistribution {
  std::int64_t t = 0;
  std::int32_t min_pos = 0;
  std::vector<double> prob;

  std::int32_t max_pos() const { return min_pos + static_cast<std::int32_t>(prob.size()) - 1; }
  double at(std::int64_t j) const;
  double total() const;
  // Largest |j| carrying more than `tol` probability.
  std::int32_t support_radius(double tol = 0.0) const;
  double mean() const;
  // E[(X/t)^r]; r = 0 returns the total mass.
  double scaled_moment(int r) const;
};

PositionDistribution position_distribution(const WalkState& st);

// Runs t_max steps collecting the position distribution at every step.
struct RunResult {
  std::vector<PositionDistribution> dists;  // t_max + 1 entries, index = t
  double max_norm_drift = 0.0;              // max |norm2 - 1| observed
};

RunResult run(Evolution& ev, WalkState st, std::int64_t t_max);

// Exact tail-site probability mu_n(-1) / mu_n(+1) at step n >= 1 for a state
// supported on the ten cycle-incident arcs of the tailed graph, evaluated
// from the closed form (no simulation).  `site` must be -1 or +1.
double closed_form_site_probability(const CoinAmplitudes& a, std::int64_t n, int site);

// Limits of mu_{4n+j} on the four cycle vertices as n -> infinity, j in
// {1,2,3,4} (j = 4 covering steps divisible by 4).  Zero-limit coin states
// make every entry vanish.
struct SiteLimitTable {
  // Rows follow LocalSite order: 0', u, d, 0.  Column j-1 holds the limit
  // along steps congruent to j mod 4.
  std::array<std::array<double, 4>, 4> limit{};

  double at(LocalSite v, int jmod4) const;
};

SiteLimitTable closed_form_site_limits(const CoinAmplitudes& a);

// Asymptotic mass split for a state on the tailed window: probability ending
// left of the cycle, on it, and right of it.
struct ScatteringRates {
  double reflected = 0.0;
  double trapped = 0.0;
  double transmitted = 0.0;
  std::int64_t t_used = 0;
};

// Runs until the period-4 averaged rates move by less than `tol` between
// consecutive periods (or until t_max).  The window must be large enough for
// t_max steps from the initial support.
ScatteringRates scattering_rates(Evolution& ev, WalkState st, std::int64_t t_max = 200,
                                 double tol = 1e-10);

// E[(X/t)^r] of a single snapshot (convenience over scaled_moment).
double empirical_moment(const PositionDistribution& dist, int r);

}  // namespace cyclewalk
