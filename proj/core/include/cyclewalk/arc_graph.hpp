#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclewalk {

using cplx = std::complex<double>;

// The two graph families: a single 4-cycle with two semi-infinite tails
// attached at opposite vertices, and a Z-periodic chain of 4-cycles joined
// by bridge edges.
enum class GraphKind { TildeC4, C4Prime };

// Local role of a vertex inside its unit (cycle or cell).
enum class LocalSite : std::uint8_t { ZeroPrime = 0, U = 1, D = 2, Zero = 3, Tail = 4 };

struct VertexInfo {
  LocalSite site;
  // TildeC4: signed tail coordinate for Tail sites (cycle sites use 0).
  // C4Prime: cell index.
  std::int32_t coord;
};

// A directed arc. Amplitudes live on arcs; an arc (a, b) is read as
// "walker at a whose previous position was b", so origin() is the walker's
// current position. `reverse` is -1 for the two unpaired boundary arcs of a
// tailed-graph window (their opposites fall outside the window).
struct Arc {
  std::int32_t origin;
  std::int32_t terminus;
  std::int32_t reverse;
};

// Thrown when amplitude would leave the finite window (the simulation is
// exact, never silently absorbing).
class window_overflow_error : public std::runtime_error {
 public:
  window_overflow_error(std::string what, std::int64_t step)
      : std::runtime_error(std::move(what)), step_(step) {}
  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

// Direction tag for tail arcs of the tailed graph: Inward = moving toward
// the cycle, Outward = moving away from it.
enum class TailDir { Inward, Outward };

// Immutable finite window of one of the two infinite graphs, with dense
// arc/vertex indexing, the reversal involution, vertex degrees, and the
// ten-coin labeling of each fundamental cell:
//   |0>=(0',-1)  |1>=(0',d)  |2>=(0',u)  |3>=(u,0')  |4>=(u,0)
//   |5>=(d,0)    |6>=(d,0')  |7>=(0,u)   |8>=(0,d)   |9>=(0,+1)
// (chain cells replace the tail neighbours by the bridge targets
//  |0> = (0'_j, 0_{j-1}) and |9> = (0_j, 0'_{j+1})).
class ArcSpace {
 public:
  // TildeC4: radius = number of real tail vertices per side, >= 1.
  // C4Prime: radius = number of cells per side of cell 0, >= 0.
  static ArcSpace build(GraphKind kind, int radius);

  GraphKind kind() const noexcept { return kind_; }
  int radius() const noexcept { return radius_; }

  std::int32_t arc_count() const noexcept { return static_cast<std::int32_t>(arcs_.size()); }
  std::int32_t vertex_count() const noexcept { return static_cast<std::int32_t>(verts_.size()); }
  const Arc& arc(std::int32_t a) const { return arcs_.at(static_cast<std::size_t>(a)); }
  std::span<const Arc> arcs() const noexcept { return arcs_; }

  const VertexInfo& vertex(std::int32_t v) const { return verts_.at(static_cast<std::size_t>(v)); }
  int degree(std::int32_t v) const { return degree_.at(static_cast<std::size_t>(v)); }

  // Position aggregation: tail coordinate / cell index; every cycle vertex of
  // the tailed graph counts as position 0.
  std::int32_t position_of_vertex(std::int32_t v) const;
  std::int32_t cell_of_arc(std::int32_t a) const { return position_of_vertex(arc(a).origin); }

  // Vertex lookup. TildeC4 cycle sites use coord 0; tails use site Tail with
  // their signed coordinate. Throws std::out_of_range outside the window.
  std::int32_t vertex_id(LocalSite site, std::int32_t coord) const;

  // Coin addressing. `cell` must be 0 for TildeC4. Throws std::out_of_range
  // when the arc is outside the window (e.g. the missing outer bridge of a
  // boundary cell).
  std::int32_t coin_arc(int coin, std::int32_t cell = 0) const;
  // Inverse map: coin index 0-9, or -1 for tail arcs.
  int coin_of(std::int32_t a) const { return coin_of_.at(static_cast<std::size_t>(a)); }

  // Tail arc addressing (TildeC4 only), n in [-(radius+1), -1] U [1, radius+1].
  // Outward arcs exist for 1 <= |n| <= radius+1, inward for 1 <= |n| <= radius-1.
  std::int32_t tail_arc(std::int32_t n, TailDir dir) const;

  // The unpaired outermost arcs of a TildeC4 window (empty for C4Prime).
  std::span<const std::int32_t> dangling_arcs() const noexcept { return dangling_; }

  // Grover single-step matrix element <delta_f, U delta_e>:
  //   (2/deg(o(e)) - [e == reverse(f)]) when o(e) == t(f), else 0.
  double matrix_element(std::int32_t f, std::int32_t e) const;

  std::string kind_name() const { return kind_ == GraphKind::TildeC4 ? "tilde-c4" : "c4-prime"; }

 private:
  ArcSpace() = default;

  GraphKind kind_{};
  int radius_ = 0;
  std::vector<Arc> arcs_;
  std::vector<VertexInfo> verts_;
  std::vector<int> degree_;
  std::vector<int> coin_of_;
  std::vector<std::int32_t> coin_arc_;  // (cell+J)*10 + coin -> arc id or -1
  std::vector<std::int32_t> dangling_;

  std::int32_t coin_slot(int coin, std::int32_t cell) const;
};

}  // namespace cyclewalk
