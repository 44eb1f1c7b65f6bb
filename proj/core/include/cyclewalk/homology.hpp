#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cyclewalk/arc_graph.hpp"
#include "cyclewalk/evolution.hpp"

namespace cyclewalk {

// Phase-weighted indicator of a closed arc path (e_1, ..., e_n):
//   sum_j w^{j} delta_{e_j},  w = exp(2 pi i m / n).
// Requires t(e_i) = o(e_{i+1}) cyclically; rejects anything else.
std::vector<cplx> path_functional(const ArcSpace& space, std::span<const std::int32_t> arcs,
                                  int m);

// The 4-cycle traversed 0' -> u -> 0 -> d -> 0' and its reversal, as arc ids.
std::array<std::int32_t, 4> cycle_arcs(const ArcSpace& space, std::int32_t cell = 0);
std::array<std::int32_t, 4> reverse_cycle_arcs(const ArcSpace& space, std::int32_t cell = 0);

// Normalized trapped eigenvector supported on one cell's cycle:
//   eta_m = (w^m(c) - w^m(cbar)) / sqrt(8),
// an exact eigenvector of the walk with eigenvalue i^m (its vertex sums all
// vanish, so a step only negates reversals and applies the phase).
WalkState eta_state(const ArcSpace& space, int m, std::int32_t cell = 0);

// The same vector on the ten coin slots of a single cell (coins 0 and 9 are
// the bridges and carry nothing).
std::array<cplx, 10> eta_coin_components(int m);

struct EtaOverlap {
  int m;
  std::int32_t cell;
  double weight;  // |<eta_{m,cell}, psi>|^2
};

struct HomologyReport {
  std::vector<EtaOverlap> overlaps;  // every (m, cell) pair of the window
  double delta = 0.0;                // total trapped probability
};

// Projects onto the span of all trapped eigenvectors in the window.
HomologyReport homological_projection(const WalkState& st);

struct LocalizationVerdict {
  bool localized;
  double delta;
};

// localized <=> delta > tol: some probability never escapes to infinity.
LocalizationVerdict localization_predicate(const WalkState& st, double tol = 1e-12);

// Trapped weight at eigenvalue i^m of a state on one cell's ten coins,
// evaluated in closed form:
//   (1/8) |(a2-a1) + i^{3m}(a4-a5) + i^{2m}(a8-a7) + i^{m}(a6-a3)|^2.
double trapped_weight_formula(const CoinAmplitudes& a, int m);

}  // namespace cyclewalk
