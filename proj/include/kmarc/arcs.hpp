#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmarc/curve.hpp"
#include "kmarc/gf.hpp"
#include "kmarc/plane.hpp"

namespace kmarc {

// ---------------------------------------------------------------------------
// Arc: a point set with its per-line intersection-count table.
// ---------------------------------------------------------------------------

inline std::vector<std::uint32_t> census_counts(const Field& F,
                                                const std::vector<ProjPoint>& points) {
  std::vector<std::uint32_t> counts(plane_size(F), 0);
  for (auto& P : points)
    for (auto& L : lines_through(P)) ++counts[line_index(L)];
  return counts;
}

class Arc {
 public:
  Arc(FieldPtr field, std::uint32_t m)
      : F_(std::move(field)), m_(m), member_(plane_size(*F_), false),
        counts_(plane_size(*F_), 0) {
    if (m < 2) throw std::invalid_argument("arc parameter must be at least 2");
  }

  static Arc from_points(FieldPtr field, const std::vector<ProjPoint>& points, std::uint32_t m) {
    Arc a(std::move(field), m);
    for (auto& P : points) a.add(P);
    return a;
  }

  const Field& field() const { return *F_; }
  FieldPtr field_ptr() const { return F_; }
  std::uint32_t m() const { return m_; }
  std::size_t size() const { return pts_.size(); }

  bool contains(const ProjPoint& P) const { return member_[point_index(P)]; }

  void add(const ProjPoint& P) {
    std::uint64_t idx = point_index(P);
    if (member_[idx]) return;
    member_[idx] = true;
    pts_.push_back(P);
    for (auto& L : lines_through(P)) ++counts_[line_index(L)];
  }

  std::uint32_t count_on(const ProjLine& L) const { return counts_[line_index(L)]; }
  const std::vector<std::uint32_t>& census() const { return counts_; }

  // points in index order
  std::vector<ProjPoint> sorted_points() const {
    std::vector<ProjPoint> out = pts_;
    std::sort(out.begin(), out.end(),
              [](const ProjPoint& a, const ProjPoint& b) { return point_index(a) < point_index(b); });
    return out;
  }

 private:
  FieldPtr F_;
  std::uint32_t m_;
  std::vector<ProjPoint> pts_;
  std::vector<bool> member_;
  std::vector<std::uint32_t> counts_;
};

// ---------------------------------------------------------------------------
// Arc predicates.
// ---------------------------------------------------------------------------

enum class ArcVerdict { valid, no_m_secant, violation };

struct ArcCheck {
  ArcVerdict verdict = ArcVerdict::no_m_secant;
  std::optional<ProjLine> witness;  // a line exceeding m, or one attaining it
  std::uint32_t witness_count = 0;
};

// fresh census every time; the witness is the first offending (or attaining)
// line in index order
inline ArcCheck is_m_arc(const Field& F, const std::vector<ProjPoint>& points, std::uint32_t m) {
  if (m < 2) throw std::invalid_argument("arc parameter must be at least 2");
  auto counts = census_counts(F, points);
  ArcCheck out;
  for (std::uint64_t i = 0; i < counts.size(); ++i)
    if (counts[i] > m) {
      out.verdict = ArcVerdict::violation;
      out.witness = line_from_index(F, i);
      out.witness_count = counts[i];
      return out;
    }
  for (std::uint64_t i = 0; i < counts.size(); ++i)
    if (counts[i] == m) {
      out.verdict = ArcVerdict::valid;
      out.witness = line_from_index(F, i);
      out.witness_count = m;
      return out;
    }
  return out;
}

inline ArcCheck is_m_arc(const Arc& A) { return is_m_arc(A.field(), A.sorted_points(), A.m()); }

inline bool covered(const Arc& A, const ProjPoint& Q) {
  if (A.contains(Q)) throw std::invalid_argument("coverage is asked about points outside the arc");
  for (auto& L : lines_through(Q))
    if (A.count_on(L) == A.m()) return true;
  return false;
}

inline std::optional<ProjLine> find_m_secant(const Arc& A, const ProjPoint& P) {
  if (A.contains(P)) throw std::invalid_argument("secant search expects a point outside the arc");
  for (auto& L : lines_through(P))
    if (A.count_on(L) == A.m()) return L;
  return std::nullopt;
}

struct CompletenessCheck {
  bool complete = false;
  std::vector<ProjPoint> uncovered;
};

inline CompletenessCheck is_complete(const Arc& A) {
  if (is_m_arc(A).verdict != ArcVerdict::valid)
    throw std::invalid_argument("completeness is defined for valid m-arcs");
  CompletenessCheck out;
  const Field& F = A.field();
  for (std::uint64_t i = 0; i < plane_size(F); ++i) {
    ProjPoint P = point_from_index(F, i);
    if (A.contains(P)) continue;
    if (!covered(A, P)) out.uncovered.push_back(P);
  }
  out.complete = out.uncovered.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Completion of a curve's rational point set into a complete m-arc.
// ---------------------------------------------------------------------------

inline std::uint64_t bound_constant_c(std::uint32_t m) {
  if (m < 3) throw std::invalid_argument("bound constant defined for m >= 3");
  if (m > 11) throw std::invalid_argument("bound constant overflows 64 bits beyond m = 11");
  std::uint64_t fact = 1;
  for (std::uint32_t i = 2; i <= m; ++i) fact *= i;
  return 9ull * m * m * fact * fact;
}

class completion_error : public std::runtime_error {
 public:
  completion_error(const std::string& msg, std::optional<ProjLine> witness = std::nullopt,
                   std::uint32_t count = 0)
      : std::runtime_error(msg), witness_line(witness), witness_count(count) {}
  std::optional<ProjLine> witness_line;
  std::uint32_t witness_count = 0;
};

enum class SpecialLineKind { bitangent, inflection_tangent, infinity_line };

struct SpecialLineEntry {
  ProjLine line;
  std::vector<SpecialLineKind> kinds;
  std::optional<TangencyRecord> source;  // detection record; absent for a bare l_inf
  std::vector<ProjPoint> added;          // H_i in addition order
};

struct CompletionPolicy {
  bool allow_fallback = true;  // global sweep after the special lines
  bool debug_checks = false;   // re-verify the census after every addition
};

struct CompletionReport {
  FieldPtr field;
  HomogPoly curve_form;
  std::uint32_t m = 0;
  std::uint32_t ext_degree = 1;
  CompletionPolicy policy;

  std::size_t base_affine = 0, base_infinity = 0;
  std::vector<ProjPoint> excluded_singular;
  std::size_t base_size = 0;
  bool base_has_m_secant = false;
  bool char_exceeds_degree = false;
  bool singulars_at_infinity = true;

  std::vector<SpecialLineEntry> special_lines;  // processing order, l_inf last
  std::vector<ProjPoint> fallback_added;
  std::vector<ProjPoint> S;  // all additions, index order
  std::vector<ProjPoint> final_points;
  std::size_t final_size = 0;

  bool certified_m_arc = false;
  bool certified_complete = false;

  std::size_t N = 0;        // special lines excluding the bare l_inf walk
  std::size_t T = 0;        // rational inflection tangents
  std::uint64_t c = 0;      // 9 m^2 (m!)^2
};

namespace detail {

inline bool legal_to_add(const Arc& A, const ProjPoint& P) {
  for (auto& L : lines_through(P))
    if (A.count_on(L) >= A.m()) return false;
  return true;
}

inline void debug_verify(const Arc& A) {
  auto fresh = census_counts(A.field(), A.sorted_points());
  if (fresh != A.census()) throw std::logic_error("incremental census diverged from recount");
  for (auto c : fresh)
    if (c > A.m()) throw std::logic_error("arc property violated during completion");
}

}  // namespace detail

// The constructive procedure: start from the curve's nonsingular rational
// points, walk every special line (rational bitangents detected over
// F_{q^e}, rational inflection tangents, then the line at infinity) adding
// uncovered points, then sweep the whole plane for anything still uncovered.
// An uncovered point is always legal to add: a blocking line through it would
// carry m arc points and hence cover it. The sweep is a single forward pass
// because coverage never decreases. Certification at the end recomputes
// everything from scratch.
inline CompletionReport complete_arc(const PlaneCurve& curve, std::uint32_t m,
                                     std::uint32_t ext_degree = 1, CompletionPolicy policy = {}) {
  const Field& F = curve.field();
  if (curve.degree() != m)
    throw std::invalid_argument("arc parameter must equal the curve degree");
  if (m > F.q())
    throw std::invalid_argument("arc parameter exceeds the affine line size q");

  CompletionReport rep;
  rep.field = curve.field_ptr();
  rep.curve_form = curve.form();
  rep.m = m;
  rep.ext_degree = ext_degree;
  rep.policy = policy;
  rep.char_exceeds_degree = F.p() > m;
  rep.c = bound_constant_c(m);

  auto pts = curve.rational_points();
  rep.base_affine = pts.affine.size();
  rep.base_infinity = pts.at_infinity.size();
  std::vector<ProjPoint> base;
  auto sift = [&](const std::vector<ProjPoint>& in) {
    for (auto& P : in) {
      if (curve.is_singular_at(P)) {
        rep.excluded_singular.push_back(P);
        if (P.x2 != 0) rep.singulars_at_infinity = false;
      } else {
        base.push_back(P);
      }
    }
  };
  sift(pts.affine);
  sift(pts.at_infinity);
  rep.base_size = base.size();

  ArcCheck base_check = is_m_arc(F, base, m);
  if (base_check.verdict == ArcVerdict::violation)
    throw completion_error("curve points already violate the arc property", base_check.witness,
                           base_check.witness_count);
  rep.base_has_m_secant = base_check.verdict == ArcVerdict::valid;

  Arc A = Arc::from_points(curve.field_ptr(), base, m);

  // special lines: bitangents in base line order, inflection tangents, l_inf
  auto push_line = [&](const ProjLine& L, SpecialLineKind kind,
                       std::optional<TangencyRecord> src) {
    for (auto& e : rep.special_lines)
      if (e.line == L) {
        for (auto k : e.kinds)
          if (k == kind) return;
        e.kinds.push_back(kind);
        return;
      }
    SpecialLineEntry e;
    e.line = L;
    e.kinds.push_back(kind);
    e.source = std::move(src);
    rep.special_lines.push_back(std::move(e));
  };

  {
    auto bits = curve.rational_bitangents(ext_degree);
    std::vector<const TangencyRecord*> rational;
    for (auto& r : bits)
      if (r.base_line) rational.push_back(&r);
    std::sort(rational.begin(), rational.end(), [](const TangencyRecord* a, const TangencyRecord* b) {
      return line_index(*a->base_line) < line_index(*b->base_line);
    });
    for (auto* r : rational) push_line(*r->base_line, SpecialLineKind::bitangent, *r);

    auto flex = curve.rational_inflection_tangents();
    rep.T = flex.size();
    for (auto& r : flex) push_line(r.line, SpecialLineKind::inflection_tangent, r);

    push_line(line_at_infinity(F), SpecialLineKind::infinity_line, std::nullopt);
  }

  std::size_t bare_inf = 0;
  for (auto& e : rep.special_lines)
    if (e.kinds.size() == 1 && e.kinds[0] == SpecialLineKind::infinity_line) bare_inf = 1;
  rep.N = rep.special_lines.size() - bare_inf;

  for (auto& entry : rep.special_lines) {
    for (auto& P : points_on_line(entry.line)) {
      if (A.contains(P)) continue;
      if (covered(A, P)) continue;
      if (!detail::legal_to_add(A, P)) {
        // unreachable: an uncovered point has all pencil counts below m
        if (policy.debug_checks) throw std::logic_error("uncovered point was illegal to add");
        continue;
      }
      A.add(P);
      entry.added.push_back(P);
      rep.S.push_back(P);
      if (policy.debug_checks) detail::debug_verify(A);
    }
    if (entry.added.size() > m)
      throw std::logic_error("special-line walk exceeded the m-point cap");
  }

  if (policy.allow_fallback) {
    for (std::uint64_t i = 0; i < plane_size(F); ++i) {
      ProjPoint P = point_from_index(F, i);
      if (A.contains(P)) continue;
      if (covered(A, P)) continue;
      A.add(P);
      rep.fallback_added.push_back(P);
      rep.S.push_back(P);
      if (policy.debug_checks) detail::debug_verify(A);
    }
  } else {
    std::vector<ProjPoint> remaining;
    for (std::uint64_t i = 0; i < plane_size(F); ++i) {
      ProjPoint P = point_from_index(F, i);
      if (!A.contains(P) && !covered(A, P)) remaining.push_back(P);
    }
    if (!remaining.empty())
      throw completion_error("special-line walks left " + std::to_string(remaining.size()) +
                             " points uncovered and the fallback sweep is disabled");
  }

  if (rep.S.size() > plane_size(F))
    throw std::logic_error("completion added more points than the plane holds");

  std::sort(rep.S.begin(), rep.S.end(),
            [](const ProjPoint& a, const ProjPoint& b) { return point_index(a) < point_index(b); });
  rep.final_points = A.sorted_points();
  rep.final_size = rep.final_points.size();

  // certification from scratch
  Arc fresh = Arc::from_points(curve.field_ptr(), rep.final_points, m);
  ArcCheck final_check = is_m_arc(F, rep.final_points, m);
  rep.certified_m_arc = final_check.verdict == ArcVerdict::valid;
  if (!rep.certified_m_arc)
    throw std::logic_error("completed set failed independent m-arc certification");
  CompletenessCheck comp = is_complete(fresh);
  rep.certified_complete = comp.complete;
  if (!rep.certified_complete)
    throw std::logic_error("completed set failed independent completeness certification");
  return rep;
}

// ---------------------------------------------------------------------------
// Accounting over a report.
// ---------------------------------------------------------------------------

struct Accounting {
  std::size_t S_size = 0;
  std::size_t sum_H = 0;
  std::size_t fallback_count = 0;
  std::size_t N = 0;
  std::size_t T = 0;
  std::uint64_t c = 0;
  std::size_t cap = 0;  // m (N + 1), meaningful when fallback_count == 0
  bool per_line_cap_ok = false;
  bool totals_consistent = false;
  bool within_cap = false;
};

inline Accounting size_accounting(const CompletionReport& rep) {
  Accounting a;
  a.S_size = rep.S.size();
  a.fallback_count = rep.fallback_added.size();
  a.N = rep.N;
  a.T = rep.T;
  a.c = rep.c;
  a.per_line_cap_ok = true;
  for (auto& e : rep.special_lines) {
    a.sum_H += e.added.size();
    if (e.added.size() > rep.m) a.per_line_cap_ok = false;
  }
  a.totals_consistent = a.S_size == a.sum_H + a.fallback_count;
  a.cap = static_cast<std::size_t>(rep.m) * (a.N + 1);
  a.within_cap = a.fallback_count > 0 || a.S_size <= a.cap;
  return a;
}

// ---------------------------------------------------------------------------
// Empirical m-secant prevalence sweep.
// ---------------------------------------------------------------------------

struct SweepReport {
  std::size_t checked = 0;
  std::size_t with_secant = 0;
  std::vector<ProjPoint> exceptions;
  double fraction = 0.0;
};

// For every affine point off the curve and off the special lines, ask whether
// a line through it meets the affine rational points of the curve in exactly
// m points. Bitangent lines for the exclusion are taken from the Gauss fiber
// census at depth e, which finds the same lines as the exhaustive scan but
// stays cheap over larger extensions.
inline SweepReport secant_sweep(const PlaneCurve& curve, std::uint32_t m,
                                std::uint32_t ext_degree = 1) {
  const Field& F = curve.field();
  auto pts = curve.rational_points();
  std::vector<ProjPoint> affine_smooth;
  for (auto& P : pts.affine)
    if (!curve.is_singular_at(P)) affine_smooth.push_back(P);
  Arc A = Arc::from_points(curve.field_ptr(), affine_smooth, m);

  std::vector<bool> on_curve(plane_size(F), false);
  for (auto& P : pts.affine) on_curve[point_index(P)] = true;
  for (auto& P : pts.at_infinity) on_curve[point_index(P)] = true;

  std::vector<bool> special(plane_size(F), false);
  auto mark = [&](const ProjLine& L) {
    for (auto& P : points_on_line(L)) special[point_index(P)] = true;
  };
  {
    auto census = curve.gauss_fiber_census(ext_degree);
    FieldHom hom(curve.field_ptr(), census.field);
    for (auto& fiber : census.multiple) {
      auto b0 = hom.preimage(fiber.image.x0);
      auto b1 = hom.preimage(fiber.image.x1);
      auto b2 = hom.preimage(fiber.image.x2);
      if (b0 && b1 && b2) mark(make_line(F, *b0, *b1, *b2));
    }
    for (auto& r : curve.rational_inflection_tangents()) mark(r.line);
    mark(line_at_infinity(F));
  }

  SweepReport out;
  const std::uint64_t q = F.q();
  for (std::uint64_t i = 0; i < q * q; ++i) {  // affine chart only
    ProjPoint P = point_from_index(F, i);
    if (on_curve[i] || special[i]) continue;
    ++out.checked;
    if (find_m_secant(A, P))
      ++out.with_secant;
    else
      out.exceptions.push_back(P);
  }
  out.fraction = out.checked ? static_cast<double>(out.with_secant) / out.checked : 1.0;
  return out;
}

}  // namespace kmarc
