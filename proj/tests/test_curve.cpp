#include "catch_amalgamated.hpp"

#include <random>
#include <set>

#include "kmarc/curve.hpp"

using namespace kmarc;

namespace {

// projective closure of y^2 - f(x) over the given field
PlaneCurve hyper_closure(FieldPtr F, const UniPoly& f) {
  BivarPoly g(*F);
  g.t.push_back({0, 2, 1});
  for (std::size_t i = 0; i < f.c.size(); ++i)
    if (f.c[i]) g.t.push_back({static_cast<std::uint32_t>(i), 0, F->neg(f.c[i])});
  g.normalize();
  return PlaneCurve::create(F, homogenize(g, std::max(2, f.degree())), false);
}

PlaneCurve weierstrass_cubic(FieldPtr F) {
  // X1^2 X2 - X0^3 - X2^3, the closure of y^2 = x^3 + 1
  HomogPoly form(*F, 3,
                 {{0, 2, 1, 1}, {3, 0, 0, F->neg(1)}, {0, 0, 3, F->neg(1)}});
  return PlaneCurve::create(F, std::move(form));
}

std::set<std::uint64_t> point_set(const std::vector<std::pair<ProjPoint, InflectionMethod>>& v) {
  std::set<std::uint64_t> s;
  for (auto& [P, via] : v) s.insert(point_index(P));
  return s;
}

}  // namespace

TEST_CASE("curve creation") {
  auto F7 = Field::make(7, 1);
  PlaneCurve c = weierstrass_cubic(F7);
  REQUIRE(c.degree() == 3);
  REQUIRE_FALSE(c.warned_linear_factor());

  HomogPoly axes(*F7, 3, {{1, 1, 1, 1}});  // X0 X1 X2
  PlaneCurve r = PlaneCurve::create(F7, axes);
  REQUIRE(r.warned_linear_factor());

  HomogPoly conic(*F7, 2, {{2, 0, 0, 1}, {0, 2, 0, 1}, {0, 0, 2, 1}});
  REQUIRE_THROWS_AS(PlaneCurve::create(F7, conic), std::invalid_argument);
  REQUIRE_THROWS_AS(PlaneCurve::create(F7, HomogPoly(*F7, 3)), std::invalid_argument);
}

TEST_CASE("rational points of the Weierstrass cubic") {
  auto F7 = Field::make(7, 1);
  PlaneCurve c = weierstrass_cubic(F7);
  auto pts = c.rational_points();
  // brute-force oracle over the affine grid
  std::size_t expected = 0;
  for (felt x = 0; x < 7; ++x)
    for (felt y = 0; y < 7; ++y)
      if (F7->sub(F7->mul(y, y), F7->add(F7->mul(F7->mul(x, x), x), 1)) == 0) ++expected;
  REQUIRE(pts.affine.size() == expected);
  for (auto P : {make_point(*F7, 0, 1, 1), make_point(*F7, 0, 6, 1), make_point(*F7, 2, 3, 1),
                 make_point(*F7, 2, 4, 1)})
    REQUIRE(std::find(pts.affine.begin(), pts.affine.end(), P) != pts.affine.end());
  REQUIRE(pts.at_infinity.size() == 1);
  REQUIRE(pts.at_infinity[0] == make_point(*F7, 0, 1, 0));
}

TEST_CASE("maximal curve point count over F_25") {
  auto F25 = Field::make(5, 2);
  PlaneCurve c = weierstrass_cubic(F25);
  auto pts = c.rational_points();
  REQUIRE(pts.affine.size() == 35);  // q^2 + 1 + 2gq places, one at infinity
  REQUIRE(pts.at_infinity.size() == 1);
}

TEST_CASE("singular point detection") {
  auto F7 = Field::make(7, 1);
  REQUIRE(weierstrass_cubic(F7).singular_points(1).points.empty());
  REQUIRE(weierstrass_cubic(F7).singular_points(2).points.empty());

  auto F11 = Field::make(11, 1);
  UniPoly f(*F11, {1, 0, 0, 0, 0, 1});  // x^5 + 1
  PlaneCurve c = hyper_closure(F11, f);
  auto s = c.singular_points(1);
  REQUIRE(s.points.size() == 1);
  REQUIRE(s.points[0] == make_point(*F11, 0, 1, 0));
  for (auto& P : c.singular_points(2).points) REQUIRE(P.x2 == 0);
}

TEST_CASE("Hessian of the Weierstrass cubic") {
  auto F7 = Field::make(7, 1);
  PlaneCurve c = weierstrass_cubic(F7);
  HomogPoly H = c.hessian();
  // 24 X0 X1^2 + 72 X0 X2^2 reduces to 3 X0 X1^2 + 2 X0 X2^2 mod 7
  REQUIRE(H == HomogPoly(*F7, 3, {{1, 2, 0, 3}, {1, 0, 2, 2}}));
  REQUIRE(H.deg == 3);  // 3(m-2) attained

  // H not proportional to F, so H != 0 mod F for this cubic
  bool proportional = H == c.form() * 1u;
  for (felt s = 1; s < 7 && !proportional; ++s) proportional = H == c.form() * s;
  REQUIRE_FALSE(proportional);

  auto F3 = Field::make(3, 1);
  REQUIRE_THROWS_AS(weierstrass_cubic(F3).hessian(), std::domain_error);
}

TEST_CASE("line restriction bookkeeping") {
  auto F7 = Field::make(7, 1);
  PlaneCurve c = weierstrass_cubic(F7);

  // line y = 1 is tangent at (0, 1) with full triple contact
  ProjLine l = make_line(*F7, 0, 1, F7->neg(1));
  auto contacts = c.contacts_on_line(l);
  REQUIRE(contacts.size() == 1);
  REQUIRE(contacts[0].P == make_point(*F7, 0, 1, 1));
  REQUIRE(contacts[0].mult == 3);

  // restriction to the line at infinity: triple contact at [0,1,0]
  auto inf_contacts = c.contacts_on_line(line_at_infinity(*F7));
  REQUIRE(inf_contacts.size() == 1);
  REQUIRE(inf_contacts[0].P == make_point(*F7, 0, 1, 0));
  REQUIRE(inf_contacts[0].mult == 3);
  REQUIRE(inf_contacts[0].at_infinity);

  // degree conservation on every line of the plane
  for (auto& L : enumerate_lines(*F7)) {
    LineRestriction r = c.line_restriction(L);
    auto census = root_multiplicities(r.poly);
    int total = census.residual + r.off_chart_mult;
    for (auto& [t, m] : census.roots) total += m;
    REQUIRE(total == 3);
  }
}

TEST_CASE("tangent lines and the Gauss map") {
  auto F7 = Field::make(7, 1);
  PlaneCurve c = weierstrass_cubic(F7);
  ProjPoint P = make_point(*F7, 0, 1, 1);
  ProjLine T = c.tangent_line_at(P);
  REQUIRE(T == make_line(*F7, 0, 1, F7->neg(1)));  // y = 1

  // tangency: the restriction has multiplicity >= 2 at P
  REQUIRE(c.tangent_contact_multiplicity(P) >= 2);

  // Gauss image is the canonical coefficient triple of the tangent
  ProjPoint img = c.gauss_map(P);
  REQUIRE(img == make_point(*F7, 0, 6, 1));
  for (auto& Q : c.rational_nonsingular_points()) {
    ProjLine t = c.tangent_line_at(Q);
    ProjPoint gi = c.gauss_map(Q);
    REQUIRE((gi.x0 == t.a0 && gi.x1 == t.a1 && gi.x2 == t.a2));
  }

  auto F11 = Field::make(11, 1);
  PlaneCurve sing = hyper_closure(F11, UniPoly(*F11, {1, 0, 0, 0, 0, 1}));
  REQUIRE_THROWS_AS(sing.tangent_line_at(make_point(*F11, 0, 1, 0)), std::invalid_argument);
  REQUIRE_THROWS_AS(c.tangent_line_at(make_point(*F7, 1, 1, 1)), std::invalid_argument);
}

TEST_CASE("inflection points by both routes") {
  auto F7 = Field::make(7, 1);
  PlaneCurve c = weierstrass_cubic(F7);
  auto hess = c.inflection_points_hessian();
  auto mult = c.inflection_points_multiplicity();
  REQUIRE(point_set(hess) == point_set(mult));
  REQUIRE(point_set(hess).count(point_index(make_point(*F7, 0, 1, 0))));

  // p <= m: the Hessian route refuses, the multiplicity route still answers
  auto F3 = Field::make(3, 1);
  UniPoly f3(*F3, {1, 1, 0, 1});  // x^3 + x + 1 (squarefree: f' = 1)
  PlaneCurve small = hyper_closure(F3, f3);
  REQUIRE_THROWS_AS(small.inflection_points_hessian(), std::domain_error);
  REQUIRE_NOTHROW(small.inflection_points_multiplicity());
  REQUIRE_NOTHROW(small.inflection_points());
}

TEST_CASE("Hessian and multiplicity methods agree on random curves") {
  std::mt19937 rng(20240517);
  int tested = 0;
  for (auto [p, m] : {std::pair{7u, 3u}, {7u, 4u}, {11u, 3u}, {13u, 4u}}) {
    auto F = Field::make(p, 1);
    std::uniform_int_distribution<felt> dc(0, p - 1);
    int found = 0;
    while (found < 3) {
      HomogPoly form(*F, m);
      for (std::uint32_t e0 = 0; e0 <= m; ++e0)
        for (std::uint32_t e1 = 0; e0 + e1 <= m; ++e1) {
          felt c = dc(rng);
          if (c) form.t.push_back({e0, e1, m - e0 - e1, c});
        }
      form.normalize();
      if (form.is_zero()) continue;
      PlaneCurve c = PlaneCurve::create(F, form, false);
      if (c.hessian().is_zero()) continue;
      bool has_factor = false;
      for (auto& L : enumerate_lines(*F)) {
        try {
          c.line_restriction(L);
        } catch (const std::invalid_argument&) {
          has_factor = true;
          break;
        }
      }
      if (has_factor) continue;
      ++found;
      ++tested;
      REQUIRE(point_set(c.inflection_points_hessian()) ==
              point_set(c.inflection_points_multiplicity()));
    }
  }
  REQUIRE(tested == 12);
}

TEST_CASE("inflection tangents") {
  auto F7 = Field::make(7, 1);
  PlaneCurve c = weierstrass_cubic(F7);
  auto tangents = c.rational_inflection_tangents();
  auto flexes = c.inflection_points();
  REQUIRE(tangents.size() <= flexes.size());
  REQUIRE(!tangents.empty());

  // tangent lines at the flexes are exactly the recorded lines
  std::set<std::uint64_t> from_points;
  for (auto& [P, via] : flexes) from_points.insert(line_index(c.tangent_line_at(P)));
  std::set<std::uint64_t> from_records;
  for (auto& r : tangents) from_records.insert(line_index(r.line));
  REQUIRE(from_points == from_records);

  for (auto& r : tangents) {
    bool has_triple = false;
    for (auto& ct : r.contacts)
      if (ct.mult >= 3 && !ct.singular) has_triple = true;
    REQUIRE(has_triple);
  }
}

TEST_CASE("bitangent scan and Gauss census cross-check") {
  // The degenerate sextic y^2 = x^6 + x^3 + 1 over F_3 has inseparable dual
  // data: every nonsingular point shares its tangent with a partner.
  auto F3 = Field::make(3, 1);
  UniPoly f(*F3, {1, 0, 0, 1, 0, 0, 1});
  PlaneCurve degen = hyper_closure(F3, f);
  auto census1 = degen.gauss_fiber_census(1);
  REQUIRE(!census1.multiple.empty());
  std::size_t fat = 0, total = 0;
  for (auto& [size, count] : census1.histogram) {
    total += count;
    if (size >= 2) fat += count;
  }
  REQUIRE(fat == total);  // dominant large-fiber signal

  for (auto curve_field : {std::pair{5u, 1u}, {7u, 1u}, {13u, 1u}}) {
    auto F = Field::make(curve_field.first, curve_field.second);
    PlaneCurve c = weierstrass_cubic(F);
    for (std::uint32_t e = 1; e <= 2; ++e) {
      auto bits = c.rational_bitangents(e);
      auto census = c.gauss_fiber_census(e);
      std::set<std::uint64_t> bit_lines, fat_images;
      for (auto& r : bits) bit_lines.insert(line_index(r.line));
      for (auto& fiber : census.multiple)
        fat_images.insert(line_index(
            ProjLine{census.field.get(), fiber.image.x0, fiber.image.x1, fiber.image.x2}));
      REQUIRE(bit_lines == fat_images);
    }
  }
}

TEST_CASE("bitangents at higher extension degree contain the base scan") {
  auto F5 = Field::make(5, 1);
  PlaneCurve c = weierstrass_cubic(F5);
  auto e1 = c.rational_bitangents(1);
  auto e2 = c.rational_bitangents(2);
  FieldHom hom(F5, Field::make(5, 2));
  std::set<std::uint64_t> lifted_lines;
  for (auto& r : e2)
    if (r.base_line) lifted_lines.insert(line_index(*r.base_line));
  for (auto& r : e1) REQUIRE(lifted_lines.count(line_index(r.line)));

  for (auto& r : e2)
    for (auto& ct : r.contacts) REQUIRE(ct.mult >= 2);
}

TEST_CASE("tangency records re-validate") {
  auto F7 = Field::make(7, 1);
  PlaneCurve c = weierstrass_cubic(F7);
  for (std::uint32_t e = 1; e <= 2; ++e) {
    auto recs = c.rational_bitangents(e);
    auto [ext, lifted_curve] = c.lifted(e);
    const PlaneCurve& cur = e == 1 ? c : lifted_curve;
    for (auto& r : recs)
      for (auto& ct : r.contacts) {
        REQUIRE(incidence(ct.P, r.line));
        REQUIRE(cur.on_curve(ct.P));
        auto fresh = cur.contacts_on_line(r.line);
        bool matched = false;
        for (auto& fc : fresh)
          if (fc.P == ct.P && fc.mult == ct.mult) matched = true;
        REQUIRE(matched);
      }
  }
}
