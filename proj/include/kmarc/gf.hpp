#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kmarc {

// A field element in packed form: the base-p digits of the value are the
// coefficients of the polynomial-basis representation, constant term in the
// least significant digit. Enumerating 0..q-1 walks coefficient vectors in
// lexicographic order read from the highest power down, which is also the
// order used to pick the default modulus.
using felt = std::uint32_t;

namespace detail {

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// F_p[x] on raw coefficient vectors (index = degree), used only for modulus
// validation and the default-modulus search.
using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  fp_trim(c);
  return c;
}

// remainder of a by monic f
inline FpPoly fp_mod(FpPoly a, const FpPoly& f, std::uint32_t p) {
  while (a.size() >= f.size()) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - f.size();
    if (lead)
      for (std::size_t j = 0; j + 1 < f.size(); ++j)
        a[shift + j] = static_cast<std::uint32_t>(
            (a[shift + j] + static_cast<std::uint64_t>(lead) * (p - f[j])) % p);
    a.pop_back();
    fp_trim(a);
  }
  return a;
}

inline FpPoly fp_make_monic(FpPoly a, std::uint32_t p) {
  if (a.empty()) return a;
  std::uint64_t s = powmod_u64(a.back(), p - 2, p);
  for (auto& c : a) c = static_cast<std::uint32_t>(c * s % p);
  return a;
}

inline FpPoly fp_rem(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
  return fp_mod(a, fp_make_monic(b, p), p);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  while (!b.empty()) {
    FpPoly r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_make_monic(a, p);
}

inline FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& f, std::uint32_t p) {
  FpPoly r{1};
  base = fp_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = fp_mod(fp_mul(r, base, p), f, p);
    base = fp_mod(fp_mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

inline std::uint32_t fp_eval(const FpPoly& f, std::uint32_t x, std::uint32_t p) {
  std::uint64_t v = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) v = (v * x + *it) % p;
  return static_cast<std::uint32_t>(v);
}

inline bool fp_has_root(const FpPoly& f, std::uint32_t p) {
  for (std::uint32_t x = 0; x < p; ++x)
    if (fp_eval(f, x, p) == 0) return true;
  return false;
}

// f monic of degree k >= 1. Exhaustive root/factor test for k <= 4, a
// deterministic Rabin test above that.
inline bool fp_is_irreducible(const FpPoly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  if (k <= 3) return !fp_has_root(f, p);
  if (k == 4) {
    if (fp_has_root(f, p)) return false;
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c) {
        FpPoly quad{c, b, 1};
        if (fp_has_root(quad, p)) continue;
        if (fp_rem(f, quad, p).empty()) return false;
      }
    return true;
  }
  // x^(p^i) mod f for i = 0..k
  std::vector<FpPoly> frob(k + 1);
  frob[0] = FpPoly{0, 1};
  for (std::size_t i = 1; i <= k; ++i) frob[i] = fp_powmod(frob[i - 1], p, f, p);
  FpPoly x{0, 1};
  if (frob[k] != fp_mod(x, f, p)) return false;
  for (std::size_t r = 2; r <= k; ++r) {
    if (k % r != 0 || !is_prime_u32(static_cast<std::uint32_t>(r))) continue;
    FpPoly d = frob[k / r];
    // d - x
    if (d.size() < 2) d.resize(2, 0);
    d[1] = (d[1] + p - 1) % p;
    fp_trim(d);
    FpPoly g = fp_gcd(d, f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Immutable finite field context F_{p^k}. Arithmetic works on packed felt
// values; log/exp (and Zech logarithm) tables back multiplication and
// addition for q up to 2^16, a digitwise slow path covers the rest of the
// desk-scale range q <= 2^24.
//
// Domain objects (points, polynomials, curves) hold a raw Field pointer, so
// the owning FieldPtr must outlive them; never dereference a temporary from
// Field::make in an expression whose results persist.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 24;
  static constexpr std::uint32_t kTableLimit = 1u << 16;
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  static FieldPtr make(std::uint32_t p, std::uint32_t k) {
    return FieldPtr(new Field(p, k, std::nullopt));
  }
  static FieldPtr make(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus) {
    return FieldPtr(new Field(p, k, std::move(modulus)));
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }

  bool same(const Field& o) const { return p_ == o.p_ && k_ == o.k_ && mod_ == o.mod_; }

  felt add(felt a, felt b) const {
    if (p_ == 2) return a ^ b;
    if (k_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (tables_) {
      if (a == 0) return b;
      if (b == 0) return a;
      std::uint32_t i = log_[a], j = log_[b];
      std::uint32_t d = j >= i ? j - i : j + (q_ - 1) - i;
      std::uint32_t z = zech_[d];
      if (z == kNoLog) return 0;
      std::uint32_t e = i + z;
      if (e >= q_ - 1) e -= q_ - 1;
      return exp_[e];
    }
    return add_digits(a, b);
  }

  felt neg(felt a) const {
    if (p_ == 2) return a;
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    if (tables_) return neg_[a];
    return neg_digits(a);
  }

  felt sub(felt a, felt b) const { return add(a, neg(b)); }

  felt mul(felt a, felt b) const {
    if (a == 0 || b == 0) return 0;
    if (tables_) {
      std::uint32_t e = log_[a] + log_[b];
      if (e >= q_ - 1) e -= q_ - 1;
      return exp_[e];
    }
    return mul_slow(a, b);
  }

  felt inv(felt a) const {
    if (a == 0) throw std::invalid_argument("division by zero");
    if (tables_) {
      std::uint32_t e = log_[a];
      return exp_[e == 0 ? 0 : q_ - 1 - e];
    }
    return pow_slow(a, q_ - 2);
  }

  felt div(felt a, felt b) const { return mul(a, inv(b)); }

  felt pow(felt a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (tables_) {
      std::uint64_t r = static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1)) % (q_ - 1);
      return exp_[static_cast<std::uint32_t>(r)];
    }
    return pow_slow(a, e);
  }

  // inverse of the Frobenius x -> x^p
  felt pth_root(felt a) const {
    std::uint64_t e = 1;
    for (std::uint32_t i = 0; i + 1 < k_; ++i) e *= p_;
    return pow(a, e);
  }

  bool is_square(felt a) const {
    if (p_ == 2 || a == 0) return true;
    if (tables_) return log_[a] % 2 == 0;
    return pow_slow(a, (q_ - 1) / 2) == 1;
  }

  std::uint32_t digit(felt a, std::uint32_t i) const { return (a / pw_[i]) % p_; }

  felt from_digits(const std::vector<std::uint32_t>& d) const {
    if (d.size() > k_) throw std::invalid_argument("too many digits for this field");
    felt r = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] >= p_) throw std::invalid_argument("digit out of range");
      r += d[i] * pw_[i];
    }
    return r;
  }

  felt from_int(std::uint64_t n) const { return static_cast<felt>(n % q_); }

  std::vector<felt> elements() const {
    std::vector<felt> v(q_);
    for (std::uint32_t i = 0; i < q_; ++i) v[i] = i;
    return v;
  }

 private:
  Field(std::uint32_t p, std::uint32_t k, std::optional<std::vector<std::uint32_t>> modulus)
      : p_(p), k_(k) {
    if (!detail::is_prime_u32(p)) throw std::invalid_argument("field characteristic must be prime");
    if (k < 1) throw std::invalid_argument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      q *= p;
      if (q > kMaxOrder) throw std::invalid_argument("field order exceeds the 2^24 desk-scale cap");
    }
    q_ = static_cast<std::uint32_t>(q);
    pw_.resize(k + 1);
    pw_[0] = 1;
    for (std::uint32_t i = 1; i <= k; ++i) pw_[i] = pw_[i - 1] * p;

    if (modulus) {
      mod_ = std::move(*modulus);
      if (mod_.size() != k + 1 || mod_.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree k");
      for (auto c : mod_)
        if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
      if (k >= 2 && !detail::fp_is_irreducible(mod_, p))
        throw std::invalid_argument("modulus is reducible over F_p");
    } else if (k == 1) {
      mod_ = {0, 1};  // identity placeholder
    } else {
      mod_ = find_default_modulus();
    }

    if (q_ <= kTableLimit) build_tables();
  }

  std::vector<std::uint32_t> find_default_modulus() const {
    // smallest monic irreducible in packed-value order
    for (std::uint32_t v = 0; v < q_; ++v) {
      std::vector<std::uint32_t> f(k_ + 1);
      for (std::uint32_t i = 0; i < k_; ++i) f[i] = (v / pw_[i]) % p_;
      f[k_] = 1;
      if (detail::fp_is_irreducible(f, p_)) return f;
    }
    throw std::logic_error("no irreducible modulus found");  // unreachable
  }

  felt add_digits(felt a, felt b) const {
    felt r = 0;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t s = (a / pw_[i]) % p_ + (b / pw_[i]) % p_;
      if (s >= p_) s -= p_;
      r += s * pw_[i];
    }
    return r;
  }

  felt neg_digits(felt a) const {
    felt r = 0;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t d = (a / pw_[i]) % p_;
      if (d) r += (p_ - d) * pw_[i];
    }
    return r;
  }

  felt mul_slow(felt a, felt b) const {
    if (k_ == 1) return static_cast<felt>(static_cast<std::uint64_t>(a) * b % p_);
    std::uint64_t c[47] = {0};
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint64_t da = (a / pw_[i]) % p_;
      if (!da) continue;
      for (std::uint32_t j = 0; j < k_; ++j) {
        std::uint64_t db = (b / pw_[j]) % p_;
        c[i + j] += da * db;
      }
    }
    for (int d = 2 * static_cast<int>(k_) - 2; d >= static_cast<int>(k_); --d) {
      std::uint64_t lead = c[d] % p_;
      if (lead)
        for (std::uint32_t j = 0; j < k_; ++j)
          c[d - k_ + j] += lead * (p_ - mod_[j]);
      c[d] = 0;
    }
    felt r = 0;
    for (std::uint32_t i = 0; i < k_; ++i) r += static_cast<felt>(c[i] % p_) * pw_[i];
    return r;
  }

  felt pow_slow(felt a, std::uint64_t e) const {
    felt r = 1, base = a;
    while (e) {
      if (e & 1) r = mul_slow(r, base);
      base = mul_slow(base, base);
      e >>= 1;
    }
    return r;
  }

  void build_tables() {
    std::vector<std::uint32_t> prime_factors;
    {
      std::uint32_t n = q_ - 1;
      for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        while (n % d == 0) {
          if (prime_factors.empty() || prime_factors.back() != d) prime_factors.push_back(d);
          n /= d;
        }
      if (n > 1) prime_factors.push_back(n);
    }
    gen_ = 1;
    for (felt g = 2; g < q_; ++g) {
      bool ok = true;
      for (auto r : prime_factors)
        if (pow_slow(g, (q_ - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen_ = g;
        break;
      }
    }
    exp_.resize(q_ - 1);
    log_.assign(q_, kNoLog);
    exp_[0] = 1;
    log_[1] = 0;
    for (std::uint32_t i = 1; i < q_ - 1; ++i) {
      exp_[i] = mul_slow(exp_[i - 1], gen_);
      log_[exp_[i]] = i;
    }
    tables_ = true;
    if (p_ > 2) {
      neg_.resize(q_);
      for (felt a = 0; a < q_; ++a) neg_[a] = neg_digits(a);
      if (k_ > 1) {
        zech_.resize(q_ - 1);
        for (std::uint32_t d = 0; d < q_ - 1; ++d) {
          felt s = add_digits(1, exp_[d]);
          zech_[d] = s == 0 ? kNoLog : log_[s];
        }
      }
    }
  }

  std::uint32_t p_, k_, q_ = 0;
  std::vector<std::uint32_t> mod_;
  std::vector<std::uint32_t> pw_;
  bool tables_ = false;
  felt gen_ = 0;
  std::vector<std::uint32_t> log_, exp_, zech_, neg_;
};

// Bound element: carries its field for context-checked operator syntax.
// Hot paths work on raw felt values through Field methods instead.
struct Fq {
  const Field* F = nullptr;
  felt v = 0;

  Fq() = default;
  Fq(const Field& f, felt x) : F(&f), v(x) {}
};

namespace detail {
inline const Field& common_field(const Fq& a, const Fq& b) {
  if (!a.F || !b.F || !a.F->same(*b.F))
    throw std::invalid_argument("elements belong to different fields");
  return *a.F;
}
}  // namespace detail

inline Fq operator+(const Fq& a, const Fq& b) {
  const Field& F = detail::common_field(a, b);
  return {F, F.add(a.v, b.v)};
}
inline Fq operator-(const Fq& a, const Fq& b) {
  const Field& F = detail::common_field(a, b);
  return {F, F.sub(a.v, b.v)};
}
inline Fq operator*(const Fq& a, const Fq& b) {
  const Field& F = detail::common_field(a, b);
  return {F, F.mul(a.v, b.v)};
}
inline Fq operator/(const Fq& a, const Fq& b) {
  const Field& F = detail::common_field(a, b);
  return {F, F.div(a.v, b.v)};
}
inline bool operator==(const Fq& a, const Fq& b) {
  return a.F && b.F && a.F->same(*b.F) && a.v == b.v;
}

// Embedding F_{p^k} -> F_{p^(k*e)}, sending the modulus root x to its
// smallest root in the target field (packed order). For a field embedded
// into itself this picks x itself, so the map is the identity.
class FieldHom {
 public:
  FieldHom(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p() != dst_->p()) throw std::invalid_argument("embedding requires equal characteristic");
    if (dst_->k() % src_->k() != 0)
      throw std::invalid_argument("embedding requires source degree dividing target degree");
    const auto& m = src_->modulus();
    root_ = 0;
    bool found = false;
    for (felt c = 0; c < dst_->q(); ++c) {
      felt v = 0;
      for (auto it = m.rbegin(); it != m.rend(); ++it)
        v = dst_->add(dst_->mul(v, c), static_cast<felt>(*it));
      if (v == 0) {
        root_ = c;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("modulus has no root in target field");
    rpow_.resize(src_->k());
    rpow_[0] = 1;
    for (std::uint32_t i = 1; i < src_->k(); ++i) rpow_[i] = dst_->mul(rpow_[i - 1], root_);
    back_.reserve(src_->q());
    for (felt a = 0; a < src_->q(); ++a) back_.emplace(map(a), a);
  }

  const Field& src() const { return *src_; }
  const Field& dst() const { return *dst_; }
  FieldPtr src_ptr() const { return src_; }
  FieldPtr dst_ptr() const { return dst_; }

  felt map(felt a) const {
    felt r = 0;
    for (std::uint32_t i = 0; i < src_->k(); ++i) {
      std::uint32_t d = src_->digit(a, i);
      if (d) r = dst_->add(r, dst_->mul(static_cast<felt>(d), rpow_[i]));
    }
    return r;
  }

  std::optional<felt> preimage(felt b) const {
    auto it = back_.find(b);
    if (it == back_.end()) return std::nullopt;
    return it->second;
  }

 private:
  FieldPtr src_, dst_;
  felt root_;
  std::vector<felt> rpow_;
  std::unordered_map<felt, felt> back_;
};

}  // namespace kmarc
