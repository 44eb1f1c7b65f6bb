#include "cyclewalk/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace cyclewalk {

namespace {
constexpr double kLeakTol = 1e-14;
constexpr double kNormDriftTol = 1e-10;
}  // namespace

WalkState WalkState::zero(const ArcSpace& space) {
  WalkState st;
  st.space = &space;
  st.amps.assign(static_cast<std::size_t>(space.arc_count()), cplx{});
  return st;
}

double WalkState::norm2() const {
  double s = 0.0;
  for (const cplx& z : amps) s += std::norm(z);
  return s;
}

double WalkState::normalize() {
  const double n = std::sqrt(norm2());
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero state");
  for (cplx& z : amps) z /= n;
  return n;
}

double CoinAmplitudes::norm2() const {
  double s = 0.0;
  for (const cplx& z : a) s += std::norm(z);
  return s;
}

CoinAmplitudes CoinAmplitudes::normalized() const {
  const double n = std::sqrt(norm2());
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero coin amplitudes");
  CoinAmplitudes out = *this;
  for (cplx& z : out.a) z /= n;
  return out;
}

Evolution::Evolution(const ArcSpace& space) : space_(&space) {
  const std::int32_t m = space.arc_count();
  origin_.resize(static_cast<std::size_t>(m));
  term_.resize(static_cast<std::size_t>(m));
  rev_.resize(static_cast<std::size_t>(m));
  for (std::int32_t i = 0; i < m; ++i) {
    const Arc& a = space.arc(i);
    origin_[static_cast<std::size_t>(i)] = a.origin;
    term_[static_cast<std::size_t>(i)] = a.terminus;
    rev_[static_cast<std::size_t>(i)] = a.reverse;
  }
  coeff_.resize(static_cast<std::size_t>(space.vertex_count()));
  for (std::int32_t v = 0; v < space.vertex_count(); ++v)
    coeff_[static_cast<std::size_t>(v)] = 2.0 / space.degree(v);
  vsum_.resize(coeff_.size());
  next_.resize(origin_.size());

  if (space.kind() == GraphKind::TildeC4) {
    dangling_.assign(space.dangling_arcs().begin(), space.dangling_arcs().end());
  } else {
    // Mass leaves a chain window only through the two missing bridge arcs;
    // the amplitude each would receive is (2/3) * s at the outermost bridge
    // endpoints, so those vertex sums are the exact leak monitors.
    right_exit_vertex_ = space.vertex_id(LocalSite::Zero, space.radius());
    left_exit_vertex_ = space.vertex_id(LocalSite::ZeroPrime, -space.radius());
  }
}

void Evolution::step(WalkState& st) {
  if (st.space != space_) throw std::invalid_argument("state belongs to a different arc space");
  const std::size_t m = origin_.size();
  if (st.amps.size() != m) throw std::invalid_argument("state size does not match arc space");

  std::fill(vsum_.begin(), vsum_.end(), cplx{});
  for (std::size_t e = 0; e < m; ++e) vsum_[static_cast<std::size_t>(origin_[e])] += st.amps[e];

  const std::int64_t stepping_to = st.t + 1;
  if (space_->kind() == GraphKind::TildeC4) {
    for (std::int32_t d : dangling_) {
      if (std::abs(st.amps[static_cast<std::size_t>(d)]) > kLeakTol)
        throw window_overflow_error("amplitude reached the outermost tail arc; enlarge the window",
                                    stepping_to);
    }
  } else {
    const double leak =
        std::max(std::abs(vsum_[static_cast<std::size_t>(right_exit_vertex_)]),
                 std::abs(vsum_[static_cast<std::size_t>(left_exit_vertex_)])) *
        (2.0 / 3.0);
    if (leak > kLeakTol)
      throw window_overflow_error("amplitude would cross the outermost cells; enlarge the window",
                                  stepping_to);
  }

  for (std::size_t f = 0; f < m; ++f) {
    const std::int32_t tf = term_[f];
    cplx out = coeff_[static_cast<std::size_t>(tf)] * vsum_[static_cast<std::size_t>(tf)];
    const std::int32_t r = rev_[f];
    if (r >= 0) out -= st.amps[static_cast<std::size_t>(r)];
    next_[f] = out;
  }
  st.amps.swap(next_);
  st.t = stepping_to;
}

void Evolution::run_steps(WalkState& st, std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) step(st);
}

std::vector<double> vertex_distribution(const WalkState& st) {
  const ArcSpace& sp = *st.space;
  std::vector<double> mu(static_cast<std::size_t>(sp.vertex_count()), 0.0);
  for (std::int32_t e = 0; e < sp.arc_count(); ++e)
    mu[static_cast<std::size_t>(sp.arc(e).origin)] += std::norm(st.amps[static_cast<std::size_t>(e)]);
  return mu;
}

double PositionDistribution::at(std::int64_t j) const {
  if (j < min_pos || j > max_pos()) return 0.0;
  return prob[static_cast<std::size_t>(j - min_pos)];
}

double PositionDistribution::total() const {
  double s = 0.0;
  for (double p : prob) s += p;
  return s;
}

std::int32_t PositionDistribution::support_radius(double tol) const {
  std::int32_t r = 0;
  for (std::size_t i = 0; i < prob.size(); ++i)
    if (prob[i] > tol)
      r = std::max(r, std::abs(min_pos + static_cast<std::int32_t>(i)));
  return r;
}

double PositionDistribution::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i)
    s += static_cast<double>(min_pos + static_cast<std::int32_t>(i)) * prob[i];
  return s;
}

double PositionDistribution::scaled_moment(int r) const {
  if (r == 0) return total();
  const double tt = static_cast<double>(t > 0 ? t : 1);
  double s = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    const double x = static_cast<double>(min_pos + static_cast<std::int32_t>(i)) / tt;
    s += std::pow(x, r) * prob[i];
  }
  return s;
}

PositionDistribution position_distribution(const WalkState& st) {
  const ArcSpace& sp = *st.space;
  const std::vector<double> mu = vertex_distribution(st);
  std::int32_t lo = 0, hi = 0;
  for (std::int32_t v = 0; v < sp.vertex_count(); ++v) {
    if (mu[static_cast<std::size_t>(v)] <= 0.0) continue;
    const std::int32_t p = sp.position_of_vertex(v);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  PositionDistribution out;
  out.t = st.t;
  out.min_pos = lo;
  out.prob.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::int32_t v = 0; v < sp.vertex_count(); ++v) {
    const double p = mu[static_cast<std::size_t>(v)];
    if (p <= 0.0) continue;
    out.prob[static_cast<std::size_t>(sp.position_of_vertex(v) - lo)] += p;
  }
  return out;
}

RunResult run(Evolution& ev, WalkState st, std::int64_t t_max) {
  RunResult res;
  res.dists.reserve(static_cast<std::size_t>(t_max + 1));
  const double n0 = st.norm2();
  res.dists.push_back(position_distribution(st));
  for (std::int64_t i = 0; i < t_max; ++i) {
    ev.step(st);
    const double drift = std::abs(st.norm2() - n0);
    res.max_norm_drift = std::max(res.max_norm_drift, drift);
    if (drift > kNormDriftTol)
      throw std::runtime_error("norm drift " + std::to_string(drift) + " exceeds tolerance at step " +
                               std::to_string(st.t));
    res.dists.push_back(position_distribution(st));
  }
  return res;
}

namespace {

double sq(const cplx& z) { return std::norm(z); }

}  // namespace

double closed_form_site_probability(const CoinAmplitudes& c, std::int64_t n, int site) {
  if (n < 1) throw std::invalid_argument("step index must be >= 1");
  if (site != -1 && site != 1) throw std::invalid_argument("site must be -1 or +1");
  const auto& a = c.a;

  // The four step-residue classes repeat with an extra 1/81 of mass each
  // period; the n in {1,2,3,4} prefactors differ from the recurring pattern.
  const std::int64_t m = (n - 1) / 4;        // completed periods
  const int phase = static_cast<int>((n - 1) % 4) + 1;  // 1..4
  const double p9 = std::pow(9.0, -2.0 * static_cast<double>(m));

  if (site == -1) {
    switch (phase) {
      case 1:
        if (m == 0) return sq(a[0] - 2.0 * a[1] - 2.0 * a[2]) / 9.0;
        return 4.0 * sq(4.0 * a[0] + a[1] + a[2]) * p9 / 9.0;
      case 2:
        return 4.0 * sq(a[4] + a[5]) * p9 / 9.0;
      case 3:
        return 4.0 * sq(a[7] + a[8] + 4.0 * a[9]) * p9 / 81.0;
      default:
        return 4.0 * sq(a[3] + a[6]) * p9 / 81.0;
    }
  }
  switch (phase) {
    case 1:
      if (m == 0) return sq(2.0 * a[7] + 2.0 * a[8] - a[9]) / 9.0;
      return 4.0 * sq(a[7] + a[8] + 4.0 * a[9]) * p9 / 9.0;
    case 2:
      return 4.0 * sq(a[3] + a[6]) * p9 / 9.0;
    case 3:
      return 4.0 * sq(4.0 * a[0] + a[1] + a[2]) * p9 / 81.0;
    default:
      return 4.0 * sq(a[4] + a[5]) * p9 / 81.0;
  }
}

double SiteLimitTable::at(LocalSite v, int jmod4) const {
  int col = ((jmod4 % 4) + 4) % 4;
  col = col == 0 ? 3 : col - 1;
  const auto row = static_cast<std::size_t>(v);
  if (row > 3) throw std::invalid_argument("limits exist only on the cycle vertices");
  return limit[row][static_cast<std::size_t>(col)];
}

SiteLimitTable closed_form_site_limits(const CoinAmplitudes& c) {
  const auto& a = c.a;
  const double p1 = sq(a[1] - a[2]);
  const double p2 = sq(a[4] - a[5]);
  const double p3 = sq(a[7] - a[8]);
  const double p4 = sq(a[3] - a[6]);
  const double odd = (p1 + p3) / 4.0;
  const double even = (p2 + p4) / 4.0;
  SiteLimitTable tbl;
  tbl.limit[static_cast<std::size_t>(LocalSite::ZeroPrime)] = {p2 / 2, p3 / 2, p4 / 2, p1 / 2};
  tbl.limit[static_cast<std::size_t>(LocalSite::U)] = {odd, even, odd, even};
  tbl.limit[static_cast<std::size_t>(LocalSite::D)] = {odd, even, odd, even};
  tbl.limit[static_cast<std::size_t>(LocalSite::Zero)] = {p4 / 2, p1 / 2, p2 / 2, p3 / 2};
  return tbl;
}

ScatteringRates scattering_rates(Evolution& ev, WalkState st, std::int64_t t_max, double tol) {
  if (ev.space().kind() != GraphKind::TildeC4)
    throw std::invalid_argument("scattering rates are defined on the tailed window");

  auto snapshot = [&st]() {
    ScatteringRates r;
    const PositionDistribution d = position_distribution(st);
    for (std::size_t i = 0; i < d.prob.size(); ++i) {
      const std::int32_t j = d.min_pos + static_cast<std::int32_t>(i);
      if (j < 0)
        r.reflected += d.prob[i];
      else if (j > 0)
        r.transmitted += d.prob[i];
      else
        r.trapped += d.prob[i];
    }
    r.t_used = st.t;
    return r;
  };

  ScatteringRates prev = snapshot();
  while (st.t < t_max) {
    const std::int64_t chunk = std::min<std::int64_t>(4, t_max - st.t);
    ev.run_steps(st, chunk);
    const ScatteringRates cur = snapshot();
    const double delta = std::max({std::abs(cur.reflected - prev.reflected),
                                   std::abs(cur.trapped - prev.trapped),
                                   std::abs(cur.transmitted - prev.transmitted)});
    if (chunk == 4 && delta < tol) return cur;
    prev = cur;
  }
  return prev;
}

double empirical_moment(const PositionDistribution& dist, int r) { return dist.scaled_moment(r); }

}  // namespace cyclewalk
