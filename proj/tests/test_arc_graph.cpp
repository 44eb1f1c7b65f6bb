#include <set>

#include "doctest.h"

#include "cyclewalk/arc_graph.hpp"

using namespace cyclewalk;

TEST_SUITE("arc_graph") {

TEST_CASE("window sizes follow the two closed counts") {
  for (int n = 1; n <= 6; ++n) {
    const ArcSpace s = ArcSpace::build(GraphKind::TildeC4, n);
    CHECK(s.arc_count() == 4 * n + 10);
  }
  for (int j = 0; j <= 5; ++j) {
    const ArcSpace s = ArcSpace::build(GraphKind::C4Prime, j);
    CHECK(s.arc_count() == 10 * (2 * j + 1) - 2);
    CHECK(s.vertex_count() == 4 * (2 * j + 1));
  }
  CHECK_THROWS_AS(ArcSpace::build(GraphKind::TildeC4, 0), std::invalid_argument);
  CHECK_THROWS_AS(ArcSpace::build(GraphKind::C4Prime, -1), std::invalid_argument);
}

TEST_CASE("reversal is an involution exchanging endpoints") {
  for (const ArcSpace& s : {ArcSpace::build(GraphKind::TildeC4, 3),
                            ArcSpace::build(GraphKind::C4Prime, 2)}) {
    int unpaired = 0;
    for (std::int32_t a = 0; a < s.arc_count(); ++a) {
      const Arc& arc = s.arc(a);
      if (arc.reverse < 0) {
        ++unpaired;
        continue;
      }
      const Arc& rev = s.arc(arc.reverse);
      CHECK(rev.reverse == a);
      CHECK(rev.origin == arc.terminus);
      CHECK(rev.terminus == arc.origin);
    }
    CHECK(unpaired == (s.kind() == GraphKind::TildeC4 ? 2 : 0));
    CHECK(static_cast<int>(s.dangling_arcs().size()) == unpaired);
  }
}

TEST_CASE("degrees come from the infinite graph") {
  const ArcSpace t = ArcSpace::build(GraphKind::TildeC4, 2);
  for (std::int32_t v = 0; v < t.vertex_count(); ++v) {
    const LocalSite site = t.vertex(v).site;
    const int expected = (site == LocalSite::Zero || site == LocalSite::ZeroPrime) ? 3 : 2;
    CHECK(t.degree(v) == expected);
  }
  const ArcSpace c = ArcSpace::build(GraphKind::C4Prime, 1);
  for (std::int32_t v = 0; v < c.vertex_count(); ++v) {
    const LocalSite site = c.vertex(v).site;
    const int expected = (site == LocalSite::Zero || site == LocalSite::ZeroPrime) ? 3 : 2;
    CHECK(c.degree(v) == expected);
  }
}

TEST_CASE("coin labels resolve to the documented endpoints") {
  const ArcSpace s = ArcSpace::build(GraphKind::C4Prime, 1);

  const auto site_of = [&](std::int32_t v) { return s.vertex(v).site; };
  const auto cell_of = [&](std::int32_t v) { return s.vertex(v).coord; };

  const Arc& c0 = s.arc(s.coin_arc(0, 0));
  CHECK(site_of(c0.origin) == LocalSite::ZeroPrime);
  CHECK(cell_of(c0.origin) == 0);
  CHECK(site_of(c0.terminus) == LocalSite::Zero);
  CHECK(cell_of(c0.terminus) == -1);

  const Arc& c9 = s.arc(s.coin_arc(9, 0));
  CHECK(site_of(c9.origin) == LocalSite::Zero);
  CHECK(site_of(c9.terminus) == LocalSite::ZeroPrime);
  CHECK(cell_of(c9.terminus) == 1);

  const Arc& c4 = s.arc(s.coin_arc(4, 0));
  CHECK(site_of(c4.origin) == LocalSite::U);
  CHECK(site_of(c4.terminus) == LocalSite::Zero);
  CHECK(cell_of(c4.terminus) == 0);

  // In-cell reversal pairs and the cross-cell bridge pair.
  CHECK(s.arc(s.coin_arc(1, 0)).reverse == s.coin_arc(6, 0));
  CHECK(s.arc(s.coin_arc(2, 0)).reverse == s.coin_arc(3, 0));
  CHECK(s.arc(s.coin_arc(4, 0)).reverse == s.coin_arc(7, 0));
  CHECK(s.arc(s.coin_arc(5, 0)).reverse == s.coin_arc(8, 0));
  CHECK(s.arc(s.coin_arc(0, 0)).reverse == s.coin_arc(9, -1));
  CHECK(s.arc(s.coin_arc(9, 0)).reverse == s.coin_arc(0, 1));

  // coin_of is the inverse map.
  for (int c = 0; c < 10; ++c) CHECK(s.coin_of(s.coin_arc(c, 0)) == c);
}

TEST_CASE("tail arcs carry direction and signed coordinate") {
  const ArcSpace s = ArcSpace::build(GraphKind::TildeC4, 3);

  // Outward arc at n: walker at |n| coming from |n|-1; inward: coming from
  // |n|+1.  Coin 0/9 reversals are the innermost outward arcs.
  const Arc& out1 = s.arc(s.tail_arc(1, TailDir::Outward));
  CHECK(s.vertex(out1.origin).site == LocalSite::Tail);
  CHECK(s.vertex(out1.origin).coord == 1);
  CHECK(s.vertex(out1.terminus).site == LocalSite::Zero);

  const Arc& in1 = s.arc(s.tail_arc(1, TailDir::Inward));
  CHECK(s.vertex(in1.origin).coord == 1);
  CHECK(s.vertex(in1.terminus).coord == 2);

  CHECK(s.arc(s.coin_arc(0)).reverse == s.tail_arc(-1, TailDir::Outward));
  CHECK(s.arc(s.coin_arc(9)).reverse == s.tail_arc(1, TailDir::Outward));

  // Existence ranges: outward up to radius+1 (the dangles), inward to radius-1.
  CHECK_NOTHROW(s.tail_arc(4, TailDir::Outward));
  CHECK_THROWS_AS(s.tail_arc(5, TailDir::Outward), std::out_of_range);
  CHECK_NOTHROW(s.tail_arc(-2, TailDir::Inward));
  CHECK_THROWS_AS(s.tail_arc(3, TailDir::Inward), std::out_of_range);
  CHECK_THROWS_AS(s.tail_arc(0, TailDir::Outward), std::out_of_range);

  for (std::int32_t d : s.dangling_arcs()) {
    CHECK(s.arc(d).reverse == -1);
    CHECK(std::abs(s.vertex(s.arc(d).origin).coord) == 4);
  }
}

TEST_CASE("vertex addressing and positions") {
  const ArcSpace t = ArcSpace::build(GraphKind::TildeC4, 2);
  CHECK(t.position_of_vertex(t.vertex_id(LocalSite::U, 0)) == 0);
  CHECK(t.position_of_vertex(t.vertex_id(LocalSite::Tail, -2)) == -2);
  CHECK_THROWS_AS(t.vertex_id(LocalSite::Tail, 4), std::out_of_range);

  const ArcSpace c = ArcSpace::build(GraphKind::C4Prime, 2);
  CHECK(c.position_of_vertex(c.vertex_id(LocalSite::D, -2)) == -2);
  CHECK(c.cell_of_arc(c.coin_arc(7, 1)) == 1);
  CHECK_THROWS_AS(c.vertex_id(LocalSite::U, 3), std::out_of_range);
  CHECK_THROWS_AS(c.coin_arc(2, 5), std::out_of_range);
}

TEST_CASE("boundary cells of a chain window lose one bridge each") {
  const ArcSpace s = ArcSpace::build(GraphKind::C4Prime, 2);
  CHECK_THROWS_AS(s.coin_arc(0, -2), std::out_of_range);  // bridge into cell -3
  CHECK_THROWS_AS(s.coin_arc(9, 2), std::out_of_range);   // bridge into cell 3
  CHECK_NOTHROW(s.coin_arc(9, -2));
  CHECK_NOTHROW(s.coin_arc(0, 2));

  const ArcSpace j0 = ArcSpace::build(GraphKind::C4Prime, 0);
  CHECK(j0.arc_count() == 8);
  CHECK_THROWS_AS(j0.coin_arc(0, 0), std::out_of_range);
  CHECK_THROWS_AS(j0.coin_arc(9, 0), std::out_of_range);
  CHECK_NOTHROW(j0.coin_arc(5, 0));
}

TEST_CASE("matrix elements reproduce hand-computed transitions") {
  const ArcSpace s = ArcSpace::build(GraphKind::C4Prime, 1);

  // Amplitude on e = (0', u) redistributes over the three arcs that came from
  // 0': back onto the reverse with weight 2/3 - 1, forward with weight 2/3.
  const std::int32_t e = s.coin_arc(2, 0);
  CHECK(s.matrix_element(s.coin_arc(3, 0), e) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(s.matrix_element(s.coin_arc(6, 0), e) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(s.matrix_element(s.coin_arc(9, -1), e) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(s.matrix_element(s.coin_arc(1, 0), e) == 0.0);  // wrong terminus

  // Degree-2 vertices transmit perfectly: 2/2 forward, 2/2 - 1 = 0 back.
  const std::int32_t e2 = s.coin_arc(4, 0);              // (u, 0)
  CHECK(s.matrix_element(s.coin_arc(2, 0), e2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.matrix_element(s.coin_arc(7, 0), e2) == 0.0);  // its own reverse
}

TEST_CASE("window operator columns are isometric away from the boundary") {
  // Column e of the one-step operator has squared norm 1 whenever the
  // origin of e keeps all its outgoing arcs inside the window.
  for (const ArcSpace& s : {ArcSpace::build(GraphKind::TildeC4, 2),
                            ArcSpace::build(GraphKind::C4Prime, 1)}) {
    std::set<std::int32_t> interior_loss;
    for (std::int32_t e = 0; e < s.arc_count(); ++e) {
      const std::int32_t o = s.arc(e).origin;
      // Count arcs leaving o: must match deg(o) for the column to be complete.
      int out = 0;
      for (std::int32_t f = 0; f < s.arc_count(); ++f)
        if (s.arc(f).origin == o) ++out;
      if (out != s.degree(o)) continue;

      double col = 0.0;
      for (std::int32_t f = 0; f < s.arc_count(); ++f) {
        const double m = s.matrix_element(f, e);
        col += m * m;
      }
      if (std::abs(col - 1.0) > 1e-13) interior_loss.insert(e);
    }
    CHECK(interior_loss.empty());
  }
}

}  // TEST_SUITE
