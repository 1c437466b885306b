#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "kmarc/gf.hpp"
#include "kmarc/plane.hpp"
#include "kmarc/poly.hpp"

namespace kmarc {

struct RationalPointSet {
  std::vector<ProjPoint> affine;       // zeros of the affine equation, index order
  std::vector<ProjPoint> at_infinity;  // zeros of the form with X2 = 0
};

struct Contact {
  ProjPoint P;
  int mult = 0;
  bool at_infinity = false;
  bool singular = false;
};

// A line together with its contact data on a curve, possibly over an
// extension field F_{q^e}. base_line is set when the line descends to the
// base field.
struct TangencyRecord {
  ProjLine line;
  std::vector<Contact> contacts;  // every intersection point of multiplicity >= 2
  std::uint32_t ext_degree = 1;
  FieldPtr field;
  std::optional<ProjLine> base_line;
};

// Restriction of the curve to a line, parameterized as base + t * dir. The
// root multiplicities of poly are the intersection multiplicities at the
// parameterized points; dir itself is the one off-chart point and meets the
// curve with multiplicity deg(F) - deg(poly).
struct LineRestriction {
  UniPoly poly;
  ProjPoint base, dir;
  int off_chart_mult = 0;

  ProjPoint point_at(felt t) const {
    const Field& F = *poly.F;
    return make_point(F, F.add(base.x0, F.mul(t, dir.x0)), F.add(base.x1, F.mul(t, dir.x1)),
                      F.add(base.x2, F.mul(t, dir.x2)));
  }
};

enum class InflectionMethod { hessian, multiplicity };

struct GaussFiber {
  ProjPoint image;  // point of the dual plane = coefficient triple of the shared tangent
  std::vector<ProjPoint> preimages;
};

struct GaussCensus {
  FieldPtr field;
  std::uint32_t ext_degree = 1;
  std::map<std::size_t, std::size_t> histogram;  // fiber size -> number of images
  std::vector<GaussFiber> multiple;              // fibers of size >= 2, by image line index
};

struct SingularScan {
  FieldPtr field;
  std::uint32_t ext_degree = 1;
  std::vector<ProjPoint> points;  // index order over PG(2, q^e)
};

class PlaneCurve {
 public:
  // Validates degree >= 3 and nonzero form; with screen on, scans rational
  // points once to flag full lines (rational linear factors) and point counts
  // far outside the Hasse-Weil corridor. Both are warnings, not errors.
  static PlaneCurve create(FieldPtr field, HomogPoly form, bool screen = true) {
    PlaneCurve c(std::move(field), std::move(form));
    if (screen) c.run_screen();
    return c;
  }

  const Field& field() const { return *field_; }
  FieldPtr field_ptr() const { return field_; }
  const HomogPoly& form() const { return form_; }
  const BivarPoly& affine_equation() const { return g_; }
  const HomogPoly& partial(int i) const { return dF_[i]; }
  std::uint32_t degree() const { return m_; }
  bool warned_linear_factor() const { return warn_linear_factor_; }
  bool warned_point_count() const { return warn_point_count_; }

  felt eval(const ProjPoint& P) const { return form_.eval(P.x0, P.x1, P.x2); }
  bool on_curve(const ProjPoint& P) const { return eval(P) == 0; }

  bool is_singular_at(const ProjPoint& P) const {
    return on_curve(P) && dF_[0].eval(P.x0, P.x1, P.x2) == 0 &&
           dF_[1].eval(P.x0, P.x1, P.x2) == 0 && dF_[2].eval(P.x0, P.x1, P.x2) == 0;
  }

  RationalPointSet rational_points() const {
    RationalPointSet out;
    const Field& F = *field_;
    auto cols = g_.columns();
    std::vector<felt> vals(cols.size());
    for (felt x = 0; x < F.q(); ++x) {
      for (std::size_t j = 0; j < cols.size(); ++j) vals[j] = cols[j].eval(x);
      for (felt y = 0; y < F.q(); ++y) {
        felt v = 0;
        for (std::size_t j = cols.size(); j-- > 0;) v = F.add(F.mul(v, y), vals[j]);
        if (v == 0) out.affine.push_back(make_point(F, x, y, 1));
      }
    }
    // X2 = 0 slice: roots of F(x, 1, 0), plus (1, 0, 0) when the X0^m
    // coefficient vanishes
    UniPoly slice(F);
    felt lead = 0;
    for (auto& mono : form_.t) {
      if (mono.e2 != 0) continue;
      if (mono.e1 == 0) lead = mono.c;
      if (slice.c.size() <= mono.e0) slice.c.resize(mono.e0 + 1, 0);
      slice.c[mono.e0] = F.add(slice.c[mono.e0], mono.c);
    }
    slice.trim();
    if (!slice.is_zero())
      for (auto& [r, mult] : root_multiplicities(slice).roots)
        out.at_infinity.push_back(make_point(F, r, 1, 0));
    else
      for (felt x = 0; x < F.q(); ++x) out.at_infinity.push_back(make_point(F, x, 1, 0));
    if (lead == 0) out.at_infinity.push_back(make_point(F, 1, 0, 0));
    return out;
  }

  std::vector<ProjPoint> rational_nonsingular_points() const {
    auto pts = rational_points();
    std::vector<ProjPoint> out;
    for (auto& P : pts.affine)
      if (!is_singular_at(P)) out.push_back(P);
    for (auto& P : pts.at_infinity)
      if (!is_singular_at(P)) out.push_back(P);
    std::sort(out.begin(), out.end(),
              [](const ProjPoint& a, const ProjPoint& b) { return point_index(a) < point_index(b); });
    return out;
  }

  SingularScan singular_points(std::uint32_t ext_degree = 1) const {
    if (ext_degree < 1 || ext_degree > 3)
      throw std::invalid_argument("singular scan supports extension degrees 1..3");
    if (ext_degree == 1) {
      SingularScan s{field_, 1, {}};
      collect_singular(*this, s.points);
      return s;
    }
    auto [ext, curve] = lifted(ext_degree);
    SingularScan s{ext, ext_degree, {}};
    collect_singular(curve, s.points);
    return s;
  }

  // determinant of the matrix of second partials; defined here only for
  // characteristic 0-like behavior p > m
  HomogPoly hessian() const {
    if (field_->p() <= m_)
      throw std::domain_error("Hessian method requires characteristic > degree");
    HomogPoly h[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) h[i][j] = dF_[i].derivative(j);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < i; ++j) h[i][j] = h[j][i];
    HomogPoly det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                    h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                    h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    return det;
  }

  LineRestriction line_restriction(const ProjLine& L) const {
    const Field& F = *form_.F;
    if (!F.same(*L.F)) throw std::invalid_argument("line from a different field");
    const felt a[3] = {L.a0, L.a1, L.a2};
    int j = a[2] ? 2 : a[1] ? 1 : 0;
    int i1 = j == 0 ? 1 : 0;
    int i2 = j == 2 ? 1 : 2;
    felt u[3] = {0, 0, 0}, v[3] = {0, 0, 0};
    u[i1] = 1;
    u[j] = F.neg(a[i1]);
    v[i2] = 1;
    v[j] = F.neg(a[i2]);
    ProjPoint A = make_point(F, u[0], u[1], u[2]);
    ProjPoint B = make_point(F, v[0], v[1], v[2]);
    UniPoly R(F);
    for (auto& mono : form_.t) {
      UniPoly term = UniPoly::constant(F, mono.c);
      const std::uint32_t exps[3] = {mono.e0, mono.e1, mono.e2};
      const felt av[3] = {A.x0, A.x1, A.x2};
      const felt bv[3] = {B.x0, B.x1, B.x2};
      for (int i = 0; i < 3; ++i)
        for (std::uint32_t e = 0; e < exps[i]; ++e) term = term * UniPoly(F, {av[i], bv[i]});
      R = R + term;
    }
    if (R.is_zero()) throw std::invalid_argument("line is a component of the curve");
    LineRestriction out;
    out.poly = std::move(R);
    out.base = A;
    out.dir = B;
    out.off_chart_mult = static_cast<int>(m_) - out.poly.degree();
    return out;
  }

  std::vector<Contact> contacts_on_line(const ProjLine& L) const {
    LineRestriction r = line_restriction(L);
    std::vector<Contact> out;
    for (auto& [t, mult] : root_multiplicities(r.poly).roots) {
      ProjPoint P = r.point_at(t);
      out.push_back({P, mult, P.x2 == 0, is_singular_at(P)});
    }
    if (r.off_chart_mult > 0)
      out.push_back({r.dir, r.off_chart_mult, r.dir.x2 == 0, is_singular_at(r.dir)});
    std::sort(out.begin(), out.end(),
              [](const Contact& a, const Contact& b) { return point_index(a.P) < point_index(b.P); });
    return out;
  }

  ProjLine tangent_line_at(const ProjPoint& P) const {
    if (!on_curve(P)) throw std::invalid_argument("point is not on the curve");
    felt g0 = dF_[0].eval(P.x0, P.x1, P.x2);
    felt g1 = dF_[1].eval(P.x0, P.x1, P.x2);
    felt g2 = dF_[2].eval(P.x0, P.x1, P.x2);
    if (g0 == 0 && g1 == 0 && g2 == 0)
      throw std::invalid_argument("tangent line undefined at a singular point");
    return make_line(*field_, g0, g1, g2);
  }

  ProjPoint gauss_map(const ProjPoint& P) const {
    ProjLine t = tangent_line_at(P);
    return {field_.get(), t.a0, t.a1, t.a2};
  }

  // nonsingular rational points with Hessian value zero; requires p > m
  std::vector<std::pair<ProjPoint, InflectionMethod>> inflection_points_hessian() const {
    HomogPoly H = hessian();
    std::vector<std::pair<ProjPoint, InflectionMethod>> out;
    for (auto& P : rational_nonsingular_points())
      if (H.eval(P.x0, P.x1, P.x2) == 0) out.emplace_back(P, InflectionMethod::hessian);
    return out;
  }

  // nonsingular rational points whose tangent meets the curve with
  // multiplicity >= 3 there
  std::vector<std::pair<ProjPoint, InflectionMethod>> inflection_points_multiplicity() const {
    std::vector<std::pair<ProjPoint, InflectionMethod>> out;
    for (auto& P : rational_nonsingular_points())
      if (tangent_contact_multiplicity(P) >= 3) out.emplace_back(P, InflectionMethod::multiplicity);
    return out;
  }

  std::vector<std::pair<ProjPoint, InflectionMethod>> inflection_points() const {
    if (field_->p() > m_) return inflection_points_hessian();
    return inflection_points_multiplicity();
  }

  int tangent_contact_multiplicity(const ProjPoint& P) const {
    ProjLine T = tangent_line_at(P);
    LineRestriction r = line_restriction(T);
    // solve base + t dir ~ P: cross(base, P) + t cross(dir, P) = 0
    const Field& F = *field_;
    auto cross = [&](const ProjPoint& U, const ProjPoint& V) {
      return std::array<felt, 3>{F.sub(F.mul(U.x1, V.x2), F.mul(U.x2, V.x1)),
                                 F.sub(F.mul(U.x2, V.x0), F.mul(U.x0, V.x2)),
                                 F.sub(F.mul(U.x0, V.x1), F.mul(U.x1, V.x0))};
    };
    auto cdp = cross(r.dir, P);
    if (cdp[0] == 0 && cdp[1] == 0 && cdp[2] == 0) return r.off_chart_mult;
    auto cbp = cross(r.base, P);
    for (int j = 0; j < 3; ++j)
      if (cdp[j] != 0) {
        felt t = F.neg(F.div(cbp[j], cdp[j]));
        UniPoly divisor(F, {F.neg(t), 1});
        UniPoly g = r.poly;
        int mult = 0;
        while (!g.is_zero()) {
          auto [quot, rem] = divmod(g, divisor);
          if (!rem.is_zero()) break;
          ++mult;
          g = std::move(quot);
        }
        return mult;
      }
    throw std::logic_error("tangency point not on its own tangent line");
  }

  // Exhaustive scan over the lines of PG(2, q^e): a line qualifies when it
  // touches the curve with multiplicity >= 2 at two or more distinct
  // nonsingular points rational over F_{q^e}. Contacts at singular points are
  // recorded but do not qualify a line.
  std::vector<TangencyRecord> rational_bitangents(std::uint32_t ext_degree = 1) const {
    if (ext_degree < 1 || ext_degree > 2)
      throw std::invalid_argument("bitangent scan supports extension degrees 1 and 2");
    if (ext_degree == 1) return scan_bitangents(*this, field_, 1, nullptr);
    auto [ext, curve] = lifted(ext_degree);
    FieldHom hom(field_, ext);
    return scan_bitangents(curve, ext, ext_degree, &hom);
  }

  // One tangent per rational flex: lines tangent with multiplicity >= 3 at a
  // nonsingular rational point, deduplicated, in line index order.
  std::vector<TangencyRecord> rational_inflection_tangents() const {
    std::map<std::uint64_t, ProjLine> lines;
    for (auto& P : rational_nonsingular_points()) {
      ProjLine T = tangent_line_at(P);
      if (tangent_contact_multiplicity(P) >= 3) lines.emplace(line_index(T), T);
    }
    std::vector<TangencyRecord> out;
    for (auto& [idx, L] : lines) {
      TangencyRecord rec;
      rec.line = L;
      rec.ext_degree = 1;
      rec.field = field_;
      rec.base_line = L;
      for (auto& c : contacts_on_line(L))
        if (c.mult >= 2) rec.contacts.push_back(c);
      out.push_back(std::move(rec));
    }
    return out;
  }

  GaussCensus gauss_fiber_census(std::uint32_t ext_degree = 1) const {
    if (ext_degree < 1 || ext_degree > 2)
      throw std::invalid_argument("Gauss census supports extension degrees 1 and 2");
    const PlaneCurve* curve = this;
    std::optional<std::pair<FieldPtr, PlaneCurve>> lift_holder;
    FieldPtr fld = field_;
    if (ext_degree > 1) {
      lift_holder = lifted(ext_degree);
      fld = lift_holder->first;
      curve = &lift_holder->second;
    }
    GaussCensus out;
    out.field = fld;
    out.ext_degree = ext_degree;
    std::map<std::uint64_t, GaussFiber> by_image;
    for (auto& P : curve->rational_nonsingular_points()) {
      ProjPoint img = curve->gauss_map(P);
      ProjLine as_line{fld.get(), img.x0, img.x1, img.x2};
      auto& fiber = by_image[line_index(as_line)];
      fiber.image = img;
      fiber.preimages.push_back(P);
    }
    for (auto& [idx, fiber] : by_image) {
      ++out.histogram[fiber.preimages.size()];
      if (fiber.preimages.size() >= 2) out.multiple.push_back(fiber);
    }
    return out;
  }

  // same curve over F_{q^e}, coefficients embedded; screen skipped
  std::pair<FieldPtr, PlaneCurve> lifted(std::uint32_t ext_degree) const {
    FieldPtr ext = Field::make(field_->p(), field_->k() * ext_degree);
    FieldHom hom(field_, ext);
    return {ext, PlaneCurve::create(ext, lift(form_, hom), false)};
  }

 private:
  PlaneCurve(FieldPtr field, HomogPoly form) : field_(std::move(field)), form_(std::move(form)) {
    if (form_.is_zero()) throw std::invalid_argument("curve form must be nonzero");
    if (form_.deg < 3) throw std::invalid_argument("curve degree must be at least 3");
    m_ = form_.deg;
    for (int i = 0; i < 3; ++i) dF_[i] = form_.derivative(i);
    g_ = form_.dehomogenize(2);
  }

  void run_screen() {
    const Field& F = *field_;
    auto pts = rational_points();
    std::vector<std::uint32_t> counts(plane_size(F), 0);
    auto tally = [&](const ProjPoint& P) {
      for (auto& L : lines_through(P)) ++counts[line_index(L)];
    };
    for (auto& P : pts.affine) tally(P);
    for (auto& P : pts.at_infinity) tally(P);
    for (auto c : counts)
      if (c == F.q() + 1) {
        warn_linear_factor_ = true;
        break;
      }
    double total = static_cast<double>(pts.affine.size() + pts.at_infinity.size());
    double gmax = (m_ - 1.0) * (m_ - 2.0) / 2.0;
    double slack = 2.0 * gmax * std::sqrt(static_cast<double>(F.q())) + m_;
    if (total > F.q() + 1 + slack || total + slack < F.q() + 1) warn_point_count_ = true;
  }

  static void collect_singular(const PlaneCurve& c, std::vector<ProjPoint>& out) {
    auto pts = c.rational_points();
    for (auto& P : pts.affine)
      if (c.is_singular_at(P)) out.push_back(P);
    for (auto& P : pts.at_infinity)
      if (c.is_singular_at(P)) out.push_back(P);
    std::sort(out.begin(), out.end(),
              [](const ProjPoint& a, const ProjPoint& b) { return point_index(a) < point_index(b); });
  }

  static std::vector<TangencyRecord> scan_bitangents(const PlaneCurve& curve, FieldPtr fld,
                                                     std::uint32_t ext_degree, const FieldHom* hom) {
    std::vector<TangencyRecord> out;
    const std::uint64_t n = plane_size(*fld);
    for (std::uint64_t i = 0; i < n; ++i) {
      ProjLine L = line_from_index(*fld, i);
      std::vector<Contact> touching;
      bool component = false;
      try {
        for (auto& c : curve.contacts_on_line(L))
          if (c.mult >= 2) touching.push_back(c);
      } catch (const std::invalid_argument&) {
        component = true;  // line divides the form; not a tangency
      }
      if (component) continue;
      std::size_t smooth = 0;
      for (auto& c : touching)
        if (!c.singular) ++smooth;
      if (smooth < 2) continue;
      TangencyRecord rec;
      rec.line = L;
      rec.contacts = std::move(touching);
      rec.ext_degree = ext_degree;
      rec.field = fld;
      if (hom) {
        auto b0 = hom->preimage(L.a0);
        auto b1 = hom->preimage(L.a1);
        auto b2 = hom->preimage(L.a2);
        if (b0 && b1 && b2) rec.base_line = make_line(hom->src(), *b0, *b1, *b2);
      } else {
        rec.base_line = L;
      }
      out.push_back(std::move(rec));
    }
    return out;
  }

  FieldPtr field_;
  HomogPoly form_;
  std::array<HomogPoly, 3> dF_;
  BivarPoly g_;
  std::uint32_t m_ = 0;
  bool warn_linear_factor_ = false;
  bool warn_point_count_ = false;
};

}  // namespace kmarc
