#include "catch_amalgamated.hpp"

#include <set>

#include "kmarc/plane.hpp"

using namespace kmarc;

TEST_CASE("point and line counts") {
  for (auto [p, k, n] : {std::tuple{2u, 1u, 7u}, {3u, 1u, 13u}, {5u, 1u, 31u}}) {
    auto F = Field::make(p, k);
    auto pts = enumerate_points(*F);
    auto lns = enumerate_lines(*F);
    REQUIRE(pts.size() == n);
    REQUIRE(lns.size() == n);
    std::set<std::uint64_t> seen;
    for (auto& P : pts) seen.insert(point_index(P));
    REQUIRE(seen.size() == n);
  }
}

TEST_CASE("incidence basics") {
  auto F3 = Field::make(3, 1);
  ProjPoint inf_pt = make_point(*F3, 0, 1, 0);
  ProjPoint origin = make_point(*F3, 0, 0, 1);
  ProjLine linf = line_at_infinity(*F3);
  REQUIRE(incidence(inf_pt, linf));
  REQUIRE_FALSE(incidence(origin, linf));

  auto F5 = Field::make(5, 1);
  REQUIRE_THROWS_AS(incidence(origin, line_at_infinity(*F5)), std::invalid_argument);
}

TEST_CASE("line through two points") {
  auto F3 = Field::make(3, 1);
  ProjPoint e0 = make_point(*F3, 1, 0, 0), e1 = make_point(*F3, 0, 1, 0);
  REQUIRE(line_through(e0, e1) == line_at_infinity(*F3));

  ProjPoint a = make_point(*F3, 0, 0, 1), b = make_point(*F3, 1, 1, 1);
  ProjLine l = line_through(a, b);  // y = x
  REQUIRE(l == make_line(*F3, 1, F3->neg(1), 0));
  REQUIRE(line_through(b, a) == l);
  REQUIRE_THROWS_AS(line_through(a, a), std::invalid_argument);
}

TEST_CASE("pencil through a point") {
  auto F3 = Field::make(3, 1);
  for (auto& P : enumerate_points(*F3)) {
    auto pencil = lines_through(P);
    REQUIRE(pencil.size() == 4);
    std::set<std::uint64_t> seen;
    for (auto& L : pencil) {
      REQUIRE(incidence(P, L));
      seen.insert(line_index(L));
    }
    REQUIRE(seen.size() == 4);
  }
}

TEST_CASE("plane axioms hold exhaustively") {
  for (auto F : {Field::make(2, 1), Field::make(3, 1), Field::make(2, 2), Field::make(5, 1),
                 Field::make(7, 1), Field::make(2, 3), Field::make(3, 2)}) {
    const std::uint64_t n = plane_size(*F);
    auto pts = enumerate_points(*F);
    auto lns = enumerate_lines(*F);

    // every line carries q+1 points; points_on_line agrees with incidence
    for (auto& L : lns) {
      std::size_t cnt = 0;
      for (auto& P : pts)
        if (incidence(P, L)) ++cnt;
      REQUIRE(cnt == F->q() + 1);
      auto on = points_on_line(L);
      REQUIRE(on.size() == F->q() + 1);
      for (auto& P : on) REQUIRE(incidence(P, L));
      for (std::size_t i = 1; i < on.size(); ++i)
        REQUIRE(point_index(on[i - 1]) < point_index(on[i]));
    }

    // two distinct points determine exactly one line; pencils share one line
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        ProjLine l = line_through(pts[i], pts[j]);
        REQUIRE(incidence(pts[i], l));
        REQUIRE(incidence(pts[j], l));
      }

    // every point lies on q+1 lines
    for (auto& P : pts) {
      std::size_t cnt = 0;
      for (auto& L : lns)
        if (incidence(P, L)) ++cnt;
      REQUIRE(cnt == F->q() + 1);
    }

    REQUIRE(pts.size() == n);
    REQUIRE(lns.size() == n);
  }
}

TEST_CASE("canonicalization is idempotent and unique") {
  auto F7 = Field::make(7, 1);
  for (felt s = 1; s < 7; ++s) {
    ProjPoint P = make_point(*F7, F7->mul(s, 2), F7->mul(s, 3), F7->mul(s, 5));
    REQUIRE(P == make_point(*F7, 2, 3, 5));
    ProjPoint again = make_point(*F7, P.x0, P.x1, P.x2);
    REQUIRE(again == P);
  }
  REQUIRE_THROWS_AS(make_point(*F7, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("index round trip") {
  auto F = Field::make(3, 2);
  for (std::uint64_t i = 0; i < plane_size(*F); ++i) {
    REQUIRE(point_index(point_from_index(*F, i)) == i);
    REQUIRE(line_index(line_from_index(*F, i)) == i);
  }
}
