#include "cyclewalk/homology.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cyclewalk {

namespace {

cplx ipow(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

constexpr double kInvSqrt8 = 0.35355339059327373;  // 1/sqrt(8)

}  // namespace

std::vector<cplx> path_functional(const ArcSpace& space, std::span<const std::int32_t> arcs,
                                  int m) {
  const std::size_t n = arcs.size();
  if (n == 0) throw std::invalid_argument("path is empty");
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t e = arcs[i];
    if (e < 0 || e >= space.arc_count()) throw std::invalid_argument("arc id out of range");
    const std::int32_t nxt = arcs[(i + 1) % n];
    if (space.arc(e).terminus != space.arc(nxt).origin)
      throw std::invalid_argument("arcs do not form a closed path");
  }
  std::vector<cplx> out(static_cast<std::size_t>(space.arc_count()), cplx{});
  const double base = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ang = base * static_cast<double>(i + 1);
    out[static_cast<std::size_t>(arcs[i])] += cplx{std::cos(ang), std::sin(ang)};
  }
  return out;
}

std::array<std::int32_t, 4> cycle_arcs(const ArcSpace& space, std::int32_t cell) {
  return {space.coin_arc(2, cell), space.coin_arc(4, cell), space.coin_arc(8, cell),
          space.coin_arc(6, cell)};
}

std::array<std::int32_t, 4> reverse_cycle_arcs(const ArcSpace& space, std::int32_t cell) {
  return {space.coin_arc(1, cell), space.coin_arc(5, cell), space.coin_arc(7, cell),
          space.coin_arc(3, cell)};
}

std::array<cplx, 10> eta_coin_components(int m) {
  std::array<cplx, 10> v{};
  // Forward cycle legs pick up i^{mj}; the reversed legs enter negated.
  v[2] = kInvSqrt8 * ipow(m);
  v[4] = kInvSqrt8 * ipow(2 * m);
  v[8] = kInvSqrt8 * ipow(3 * m);
  v[6] = kInvSqrt8;
  v[1] = -v[2];
  v[5] = -v[4];
  v[7] = -v[8];
  v[3] = -v[6];
  return v;
}

WalkState eta_state(const ArcSpace& space, int m, std::int32_t cell) {
  WalkState st = WalkState::zero(space);
  const std::array<cplx, 10> comp = eta_coin_components(m);
  for (int c = 1; c <= 8; ++c)
    st.amps[static_cast<std::size_t>(space.coin_arc(c, cell))] = comp[static_cast<std::size_t>(c)];
  return st;
}

HomologyReport homological_projection(const WalkState& st) {
  const ArcSpace& sp = *st.space;
  const std::int32_t rad = sp.kind() == GraphKind::C4Prime ? sp.radius() : 0;
  HomologyReport rep;
  rep.overlaps.reserve(static_cast<std::size_t>(2 * rad + 1) * 4);
  for (std::int32_t cell = -rad; cell <= rad; ++cell) {
    std::array<cplx, 8> psi;
    for (int c = 1; c <= 8; ++c)
      psi[static_cast<std::size_t>(c - 1)] =
          st.amps[static_cast<std::size_t>(sp.coin_arc(c, cell))];
    for (int m = 0; m < 4; ++m) {
      const std::array<cplx, 10> comp = eta_coin_components(m);
      cplx ip{};
      for (int c = 1; c <= 8; ++c)
        ip += std::conj(comp[static_cast<std::size_t>(c)]) * psi[static_cast<std::size_t>(c - 1)];
      const double w = std::norm(ip);
      rep.overlaps.push_back(EtaOverlap{m, cell, w});
      rep.delta += w;
    }
  }
  return rep;
}

LocalizationVerdict localization_predicate(const WalkState& st, double tol) {
  const HomologyReport rep = homological_projection(st);
  return LocalizationVerdict{rep.delta > tol, rep.delta};
}

double trapped_weight_formula(const CoinAmplitudes& a, int m) {
  const cplx z = (a[2] - a[1]) + ipow(3 * m) * (a[4] - a[5]) + ipow(2 * m) * (a[8] - a[7]) +
                 ipow(m) * (a[6] - a[3]);
  return std::norm(z) / 8.0;
}

}  // namespace cyclewalk
