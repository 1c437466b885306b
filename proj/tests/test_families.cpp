#include "catch_amalgamated.hpp"

#include <set>

#include "kmarc/families.hpp"

using namespace kmarc;

namespace {

std::size_t enumerate_affine(const PlaneCurve& c) { return c.rational_points().affine.size(); }

std::size_t count_y0(const PlaneCurve& c) {
  std::size_t n = 0;
  for (auto& P : c.rational_points().affine)
    if (P.x1 == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("hyperelliptic admissibility checklist") {
  auto F7 = Field::make(7, 1);
  auto ok = hyperelliptic(F7, UniPoly(*F7, {1, 0, 0, 1}));  // x^3 + 1
  REQUIRE(ok.spec.admissible());
  REQUIRE(ok.spec.m == 3);
  REQUIRE(ok.spec.genus == 1);

  auto F5 = Field::make(5, 1);
  auto badm = hyperelliptic(F5, UniPoly(*F5, {1, 0, 0, 0, 0, 1}));  // x^5 + 1, m = p
  REQUIRE_FALSE(badm.spec.admissible());

  // (x-1)^2 (x+1) is not squarefree
  UniPoly lin1(*F7, {6, 1}), lin2(*F7, {1, 1});
  auto rep = hyperelliptic(F7, lin1 * lin1 * lin2);
  REQUIRE_FALSE(rep.spec.admissible());

  REQUIRE_THROWS_AS(hyperelliptic(F7, UniPoly::constant(*F7, 2)), std::invalid_argument);
}

TEST_CASE("hyperelliptic genus") {
  REQUIRE(genus_hyperelliptic(3) == 1);
  REQUIRE(genus_hyperelliptic(5) == 2);
  REQUIRE(genus_hyperelliptic(6) == 2);
  REQUIRE_THROWS_AS(genus_hyperelliptic(2), std::invalid_argument);
}

TEST_CASE("maximal example predictions") {
  auto ex = maximal_example(5, 3);
  REQUIRE(ex.expected_degree1 == 36);
  REQUIRE(ex.genus == 1);
  REQUIRE(ex.p_infinity == 1);
  REQUIRE(enumerate_affine(ex.curve) + ex.p_infinity == 36);
  REQUIRE(count_y0(ex.curve) == 3);

  auto ex74 = maximal_example(7, 4);
  REQUIRE(ex74.expected_degree1 == 64);
  REQUIRE(ex74.p_infinity == 2);  // even degree, leading coefficient 1 is a square
  REQUIRE(enumerate_affine(ex74.curve) + ex74.p_infinity == 64);
  REQUIRE(count_y0(ex74.curve) == 4);

  REQUIRE_THROWS_AS(maximal_example(7, 3), std::invalid_argument);   // 3 does not divide 8
  REQUIRE_THROWS_AS(maximal_example(8, 3), std::invalid_argument);   // even q
  REQUIRE_THROWS_AS(maximal_example(10, 3), std::invalid_argument);  // not a prime power
}

TEST_CASE("twisted example predictions") {
  auto tw = twisted_example(5, 3);
  REQUIRE(tw.p_infinity == 1);
  REQUIRE(tw.predicted_affine == 15);  // 25 - (1 + 10 - 1)
  REQUIRE(enumerate_affine(tw.curve) == tw.predicted_affine);
  REQUIRE(count_y0(tw.curve) == 3);

  // curve and twist split every x between them: affine counts sum to 2 q^2
  auto ex = maximal_example(5, 3);
  REQUIRE(enumerate_affine(ex.curve) + enumerate_affine(tw.curve) == 2 * 25);

  auto F25 = Field::make(5, 2);
  felt square = F25->mul(3, 3);
  REQUIRE_THROWS_AS(twisted_example(5, 3, square), std::invalid_argument);
}

TEST_CASE("places at infinity") {
  auto F7 = Field::make(7, 1);
  REQUIRE(p_infinity_count_hyperelliptic(UniPoly(*F7, {1, 0, 0, 1})) == 1);  // odd degree

  // even degree: split iff the leading coefficient is a square
  UniPoly sq(*F7, {1, 1, 0, 0, 1});  // x^4 + x + 1, lc 1
  REQUIRE(p_infinity_count_hyperelliptic(sq) == 2);
  UniPoly nsq(*F7, {1, 1, 0, 0, 3});  // lc 3, non-square mod 7
  REQUIRE(p_infinity_count_hyperelliptic(nsq) == 1);

  // oracle: on the maximal curves the place count reconciles the affine
  // enumeration with the Hasse-Weil count
  auto ex = maximal_example(7, 4);
  REQUIRE(ex.expected_degree1 - enumerate_affine(ex.curve) == (std::size_t)ex.p_infinity);
}

TEST_CASE("admissible hyperelliptic curves are singular only at infinity") {
  auto F7 = Field::make(7, 1);
  for (auto f : {UniPoly(*F7, {1, 0, 0, 1}), UniPoly(*F7, {3, 1, 0, 0, 1}),
                 UniPoly(*F7, {1, 2, 0, 0, 0, 1})}) {
    auto fam = hyperelliptic(F7, f);
    if (!fam.spec.admissible()) continue;
    for (std::uint32_t e = 1; e <= 2; ++e)
      for (auto& P : fam.curve.singular_points(e).points) REQUIRE(P.x2 == 0);
  }
}

TEST_CASE("Artin-Schreier admissibility checklist") {
  auto F3 = Field::make(3, 1);

  // f = x^4 + x: f' = x^3 + 1 lies in F_3[x^3]
  auto a = artin_schreier(F3, UniPoly(*F3, {0, 1, 0, 0, 1}));
  REQUIRE_FALSE(a.spec.admissible());
  bool fp_check_failed = false;
  for (auto& item : a.spec.checklist)
    if (item.name == "f' not in F_q[x^p]" && !item.pass) fp_check_failed = true;
  REQUIRE(fp_check_failed);

  // f = x^5 + x: f' = 2x^4 + 1 escapes F_3[x^3]
  auto b = artin_schreier(F3, UniPoly(*F3, {0, 1, 0, 0, 0, 1}));
  REQUIRE(b.spec.admissible());

  // f = x^3 - x is z^3 - z with z = x
  auto c = artin_schreier(F3, UniPoly(*F3, {0, 2, 0, 1}));
  REQUIRE_FALSE(c.spec.admissible());

  REQUIRE_THROWS_AS(artin_schreier(F3, UniPoly::zero(*F3)), std::invalid_argument);
}

TEST_CASE("Artin-Schreier inflection abscissae") {
  auto F3 = Field::make(3, 1);
  auto fam = artin_schreier(F3, UniPoly(*F3, {0, 1, 0, 0, 0, 1}));  // x^5 + x
  REQUIRE(fam.spec.admissible());
  auto infl = as_inflection_x(fam.spec);
  REQUIRE(infl.roots == std::vector<felt>{0});  // f'' = 2x^3
  REQUIRE(infl.tangent_bound == 9);             // (5 - 2) * 3

  // cross-check: affine inflection contacts sit over these abscissae
  auto tangents = fam.curve.rational_inflection_tangents();
  std::set<felt> allowed(infl.roots.begin(), infl.roots.end());
  std::size_t affine_tangents = 0;
  for (auto& rec : tangents) {
    bool has_affine_flex = false;
    for (auto& ct : rec.contacts)
      if (ct.mult >= 3 && !ct.singular && !ct.at_infinity) {
        REQUIRE(allowed.count(ct.P.x0));
        has_affine_flex = true;
      }
    if (has_affine_flex) ++affine_tangents;
  }
  REQUIRE(affine_tangents <= infl.tangent_bound);

  auto F7 = Field::make(7, 1);
  REQUIRE_THROWS_AS(as_inflection_x(hyperelliptic(F7, UniPoly(*F7, {1, 0, 0, 1})).spec),
                    std::invalid_argument);
}

TEST_CASE("inadmissible specs still run downstream") {
  auto F27 = Field::make(3, 3);
  UniPoly f(*F27, {1, 2, 0, 1});  // x^3 - x + 1: m = p, inadmissible but usable
  auto fam = hyperelliptic(F27, f);
  REQUIRE_FALSE(fam.spec.admissible());
  auto rep = complete_arc(fam.curve, 3, 1);
  REQUIRE(rep.certified_complete);
}
