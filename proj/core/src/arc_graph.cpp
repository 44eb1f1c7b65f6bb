#include "cyclewalk/arc_graph.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace cyclewalk {

namespace {

// Builder-side vertex key: (site, coord) with the same meaning as VertexInfo.
using VKey = std::pair<int, std::int32_t>;

struct Builder {
  std::vector<VertexInfo> verts;
  std::map<VKey, std::int32_t> ids;
  std::vector<std::pair<std::int32_t, std::int32_t>> arcs;  // (origin, terminus)

  std::int32_t vertex(LocalSite s, std::int32_t coord) {
    VKey key{static_cast<int>(s), coord};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    auto id = static_cast<std::int32_t>(verts.size());
    verts.push_back(VertexInfo{s, coord});
    ids.emplace(key, id);
    return id;
  }
  void arc(std::int32_t o, std::int32_t t) { arcs.emplace_back(o, t); }
};

}  // namespace

ArcSpace ArcSpace::build(GraphKind kind, int radius) {
  if (kind == GraphKind::TildeC4 && radius < 1)
    throw std::invalid_argument("tilde-c4 window requires radius >= 1");
  if (kind == GraphKind::C4Prime && radius < 0)
    throw std::invalid_argument("c4-prime window requires radius >= 0");

  Builder b;
  ArcSpace s;
  s.kind_ = kind;
  s.radius_ = radius;

  if (kind == GraphKind::TildeC4) {
    const int N = radius;
    const auto op = b.vertex(LocalSite::ZeroPrime, 0);
    const auto u = b.vertex(LocalSite::U, 0);
    const auto d = b.vertex(LocalSite::D, 0);
    const auto o = b.vertex(LocalSite::Zero, 0);
    auto tail = [&](std::int32_t n) { return b.vertex(LocalSite::Tail, n); };

    // Coins 0..9 in labeling order, then the two remaining connector arcs.
    b.arc(op, tail(-1));  // 0
    b.arc(op, d);         // 1
    b.arc(op, u);         // 2
    b.arc(u, op);         // 3
    b.arc(u, o);          // 4
    b.arc(d, o);          // 5
    b.arc(d, op);         // 6
    b.arc(o, u);          // 7
    b.arc(o, d);          // 8
    b.arc(o, tail(1));    // 9
    b.arc(tail(-1), op);  // 10
    b.arc(tail(1), o);    // 11
    for (std::int32_t n = 1; n < N; ++n) {
      b.arc(tail(-(n + 1)), tail(-n));
      b.arc(tail(-n), tail(-(n + 1)));
      b.arc(tail(n + 1), tail(n));
      b.arc(tail(n), tail(n + 1));
    }
    // Outermost layer: the outward arcs at the ghost vertices +-(N+1) are kept
    // (they carry one step of outgoing flux); their reverses fall outside.
    b.arc(tail(-(N + 1)), tail(-N));
    b.arc(tail(N + 1), tail(N));
  } else {
    const int J = radius;
    auto vtx = [&](LocalSite site, std::int32_t cell) { return b.vertex(site, cell); };
    for (std::int32_t j = -J; j <= J; ++j) {
      const auto op = vtx(LocalSite::ZeroPrime, j);
      const auto u = vtx(LocalSite::U, j);
      const auto d = vtx(LocalSite::D, j);
      const auto o = vtx(LocalSite::Zero, j);
      for (int coin = 0; coin < 10; ++coin) {
        if (coin == 0) {
          if (j - 1 < -J) continue;
          b.arc(op, vtx(LocalSite::Zero, j - 1));
        } else if (coin == 9) {
          if (j + 1 > J) continue;
          b.arc(o, vtx(LocalSite::ZeroPrime, j + 1));
        } else {
          static constexpr int kFrom[10] = {-1, 0, 0, 1, 1, 2, 2, 3, 3, -1};
          static constexpr int kTo[10] = {-1, 2, 1, 0, 3, 3, 0, 1, 2, -1};
          const LocalSite from = static_cast<LocalSite>(kFrom[coin]);
          const LocalSite to = static_cast<LocalSite>(kTo[coin]);
          b.arc(vtx(from, j), vtx(to, j));
        }
      }
    }
  }

  // Freeze arcs, resolve the reversal involution by (origin, terminus) lookup.
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> byPair;
  for (std::size_t i = 0; i < b.arcs.size(); ++i)
    byPair.emplace(b.arcs[i], static_cast<std::int32_t>(i));
  s.arcs_.reserve(b.arcs.size());
  for (auto [o, t] : b.arcs) {
    auto it = byPair.find({t, o});
    s.arcs_.push_back(Arc{o, t, it == byPair.end() ? -1 : it->second});
  }
  s.verts_ = std::move(b.verts);

  // Degrees count edges of the *infinite* graph (ghost tail endpoints
  // included), so the walk's coin at every vertex is the true one.  No
  // in-window arc terminates at a ghost vertex, so the step kernel never
  // divides by a degree the window cannot certify.
  s.degree_.resize(s.verts_.size());
  for (std::size_t v = 0; v < s.verts_.size(); ++v) {
    const VertexInfo& info = s.verts_[v];
    if (info.site == LocalSite::ZeroPrime || info.site == LocalSite::Zero)
      s.degree_[v] = 3;
    else
      s.degree_[v] = 2;
  }

  for (std::size_t i = 0; i < s.arcs_.size(); ++i)
    if (s.arcs_[i].reverse < 0) s.dangling_.push_back(static_cast<std::int32_t>(i));

  // Coin tables.
  const std::int32_t cells = kind == GraphKind::C4Prime ? 2 * radius + 1 : 1;
  s.coin_arc_.assign(static_cast<std::size_t>(cells) * 10, -1);
  s.coin_of_.assign(s.arcs_.size(), -1);
  if (kind == GraphKind::TildeC4) {
    for (int c = 0; c < 10; ++c) {
      s.coin_arc_[static_cast<std::size_t>(c)] = c;
      s.coin_of_[static_cast<std::size_t>(c)] = c;
    }
  } else {
    std::int32_t id = 0;
    for (std::int32_t j = -radius; j <= radius; ++j)
      for (int c = 0; c < 10; ++c) {
        if ((c == 0 && j == -radius) || (c == 9 && j == radius)) continue;
        s.coin_arc_[static_cast<std::size_t>((j + radius) * 10 + c)] = id;
        s.coin_of_[static_cast<std::size_t>(id)] = c;
        ++id;
      }
  }
  return s;
}

std::int32_t ArcSpace::position_of_vertex(std::int32_t v) const {
  const VertexInfo& info = vertex(v);
  if (kind_ == GraphKind::C4Prime) return info.coord;
  return info.site == LocalSite::Tail ? info.coord : 0;
}

std::int32_t ArcSpace::vertex_id(LocalSite site, std::int32_t coord) const {
  for (std::int32_t v = 0; v < vertex_count(); ++v) {
    const VertexInfo& info = verts_[static_cast<std::size_t>(v)];
    if (info.site == site && info.coord == coord) return v;
  }
  throw std::out_of_range("vertex outside window");
}

std::int32_t ArcSpace::coin_slot(int coin, std::int32_t cell) const {
  if (coin < 0 || coin > 9) throw std::out_of_range("coin index must be 0..9");
  if (kind_ == GraphKind::TildeC4) {
    if (cell != 0) throw std::out_of_range("tilde-c4 has a single cell (cell 0)");
    return coin;
  }
  if (cell < -radius_ || cell > radius_) throw std::out_of_range("cell outside window");
  return (cell + radius_) * 10 + coin;
}

std::int32_t ArcSpace::coin_arc(int coin, std::int32_t cell) const {
  const std::int32_t id = coin_arc_.at(static_cast<std::size_t>(coin_slot(coin, cell)));
  if (id < 0) throw std::out_of_range("bridge arc outside window (boundary cell)");
  return id;
}

std::int32_t ArcSpace::tail_arc(std::int32_t n, TailDir dir) const {
  if (kind_ != GraphKind::TildeC4) throw std::out_of_range("tail arcs exist only on tilde-c4");
  if (n == 0 || std::abs(n) > radius_ + 1) throw std::out_of_range("tail coordinate outside window");
  const std::int32_t a = std::abs(n);
  const std::int32_t sign = n > 0 ? 1 : -1;
  // Inward = came from farther out; outward = came from nearer the cycle.
  const std::int32_t other = dir == TailDir::Inward ? a + 1 : a - 1;
  if (dir == TailDir::Inward && a > radius_ - 1)
    throw std::out_of_range("inward arc outside window");
  const std::int32_t from = vertex_id(LocalSite::Tail, sign * a);
  const std::int32_t to = other == 0 ? vertex_id(n > 0 ? LocalSite::Zero : LocalSite::ZeroPrime, 0)
                                     : vertex_id(LocalSite::Tail, sign * other);
  for (std::int32_t i = 0; i < arc_count(); ++i)
    if (arcs_[static_cast<std::size_t>(i)].origin == from &&
        arcs_[static_cast<std::size_t>(i)].terminus == to)
      return i;
  throw std::out_of_range("tail arc outside window");
}

double ArcSpace::matrix_element(std::int32_t f, std::int32_t e) const {
  const Arc& fa = arc(f);
  const Arc& ea = arc(e);
  if (ea.origin != fa.terminus) return 0.0;
  const double coin = 2.0 / degree(ea.origin);
  return coin - (fa.reverse == e ? 1.0 : 0.0);
}

}  // namespace cyclewalk
