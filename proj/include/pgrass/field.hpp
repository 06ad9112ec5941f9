#pragma once
// Exact arithmetic over prime fields GF(p), small extension fields GF(p^e)
// in a fixed polynomial basis, and the rationals. Elements are plain value
// types; all operations go through the owning Field.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgrass {

// Thrown when an operation needs to enumerate a field that is not finite.
struct InfiniteFieldError : std::domain_error {
  using std::domain_error::domain_error;
};

// One exact field element. Finite fields store the polynomial-basis code
// sum_i c_i p^i in num (den stays 1); the rationals store num/den in lowest
// terms with den > 0. Equal values always have equal representations.
struct Elt {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Elt&, const Elt&) = default;
  friend auto operator<=>(const Elt&, const Elt&) = default;
};

enum class FieldKind { Finite, Rational };

namespace detail {

inline std::int64_t checked64(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Elt make_rational(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) { n = -n; d = -d; }
  __int128 g = gcd128(n, d);
  if (g > 1) { n /= g; d /= g; }
  return Elt{checked64(n), checked64(d)};
}

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

// Dense polynomials over GF(p), coefficients low-degree first.
using Poly = std::vector<std::int64_t>;

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  poly_trim(c);
  return c;
}

// Remainder of a by monic m.
inline Poly poly_rem(Poly a, const Poly& m, std::int64_t p) {
  poly_trim(a);
  const size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::int64_t lead = a.back();
    size_t shift = a.size() - 1 - dm;
    if (lead != 0)
      for (size_t i = 0; i < m.size(); ++i) {
        size_t k = shift + i;
        a[k] = ((a[k] - lead * m[i]) % p + p) % p;
      }
    poly_trim(a);
    if (a.size() <= dm) break;
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2. Fine at the
// degrees this library ever sees.
inline bool poly_irreducible(const Poly& m, std::int64_t p) {
  const size_t deg = m.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  std::int64_t count = 1;
  for (size_t i = 0; i < deg / 2; ++i) count *= p;
  for (size_t d = 1; d <= deg / 2; ++d) {
    std::int64_t nd = 1;
    for (size_t i = 0; i < d; ++i) nd *= p;
    for (std::int64_t code = 0; code < nd; ++code) {
      Poly div(d + 1, 0);
      std::int64_t c = code;
      for (size_t i = 0; i < d; ++i) { div[i] = c % p; c /= p; }
      div[d] = 1;
      if (poly_rem(m, div, p).empty()) return false;
    }
  }
  (void)count;
  return true;
}

}  // namespace detail

class Field {
 public:
  FieldKind kind = FieldKind::Rational;
  std::int64_t p = 0;  // characteristic (0 for rationals)
  int e = 1;           // extension degree over GF(p)
  std::vector<std::int64_t> modulus;  // monic, length e+1, low-degree first

  static Field rationals() {
    Field F;
    F.kind = FieldKind::Rational;
    return F;
  }

  static Field gf(std::int64_t p, int e = 1) {
    return gf(p, e, default_modulus(p, e));
  }

  static Field gf(std::int64_t p, int e, std::vector<std::int64_t> mod) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
    if ((int)mod.size() != e + 1 || mod.back() != 1)
      throw std::invalid_argument("modulus must be monic of degree e");
    for (auto& c : mod) c = ((c % p) + p) % p;
    if (e > 1 && !detail::poly_irreducible(mod, p))
      throw std::invalid_argument("modulus is reducible");
    Field F;
    F.kind = FieldKind::Finite;
    F.p = p;
    F.e = e;
    F.modulus = std::move(mod);
    F.q_ = 1;
    for (int i = 0; i < e; ++i) F.q_ *= p;
    return F;
  }

  // Least monic irreducible of degree e, scanning low-order coefficient
  // codes upward. Deterministic across runs.
  static std::vector<std::int64_t> default_modulus(std::int64_t p, int e) {
    if (e == 1) return {0, 1};
    std::int64_t n = 1;
    for (int i = 0; i < e; ++i) n *= p;
    for (std::int64_t code = 0; code < n; ++code) {
      std::vector<std::int64_t> m(e + 1, 0);
      std::int64_t c = code;
      for (int i = 0; i < e; ++i) { m[i] = c % p; c /= p; }
      m[e] = 1;
      if (detail::poly_irreducible(m, p)) return m;
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind == b.kind && a.p == b.p && a.e == b.e && a.modulus == b.modulus;
  }

  bool finite() const { return kind == FieldKind::Finite; }
  std::int64_t characteristic() const { return finite() ? p : 0; }
  bool char2() const { return p == 2; }

  std::int64_t order() const {
    if (!finite()) throw InfiniteFieldError("the rationals have no finite order");
    return q_;
  }

  Elt zero() const { return Elt{0, 1}; }
  Elt one() const { return finite() ? from_int(1) : Elt{1, 1}; }
  bool is_zero(const Elt& a) const { return a.num == 0; }

  Elt from_int(std::int64_t v) const {
    if (!finite()) return Elt{v, 1};
    std::int64_t r = ((v % p) + p) % p;
    return Elt{r, 1};
  }

  // Fixed enumeration order: polynomial-basis colex, i.e. code order.
  Elt element(std::int64_t idx) const {
    if (!finite()) throw InfiniteFieldError("cannot enumerate the rationals");
    if (idx < 0 || idx >= q_) throw std::out_of_range("element index");
    return Elt{idx, 1};
  }
  std::int64_t index_of(const Elt& a) const {
    if (!finite()) throw InfiniteFieldError("cannot enumerate the rationals");
    return a.num;
  }

  Elt add(const Elt& a, const Elt& b) const {
    if (!finite())
      return detail::make_rational((__int128)a.num * b.den + (__int128)b.num * a.den,
                                   (__int128)a.den * b.den);
    if (e == 1) return Elt{(a.num + b.num) % p, 1};
    std::int64_t r = 0, pw = 1, x = a.num, y = b.num;
    for (int i = 0; i < e; ++i) {
      r += ((x % p + y % p) % p) * pw;
      x /= p;
      y /= p;
      pw *= p;
    }
    return Elt{r, 1};
  }

  Elt neg(const Elt& a) const {
    if (!finite()) return Elt{-a.num, a.den};
    if (e == 1) return Elt{(p - a.num) % p, 1};
    std::int64_t r = 0, pw = 1, x = a.num;
    for (int i = 0; i < e; ++i) {
      r += ((p - x % p) % p) * pw;
      x /= p;
      pw *= p;
    }
    return Elt{r, 1};
  }

  Elt sub(const Elt& a, const Elt& b) const { return add(a, neg(b)); }

  Elt mul(const Elt& a, const Elt& b) const {
    if (!finite())
      return detail::make_rational((__int128)a.num * b.num, (__int128)a.den * b.den);
    if (e == 1) return Elt{(a.num * b.num) % p, 1};
    detail::Poly pa = digits(a.num), pb = digits(b.num);
    detail::Poly pc = detail::poly_mul(pa, pb, p);
    pc = detail::poly_rem(pc, modulus, p);
    return Elt{code(pc), 1};
  }

  Elt inv(const Elt& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    if (!finite()) return detail::make_rational(a.den, a.num);
    return pow(a, q_ - 2);
  }

  Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }

  Elt pow(Elt base, std::int64_t n) const {
    if (n < 0) { base = inv(base); n = -n; }
    Elt r = one();
    while (n > 0) {
      if (n & 1) r = mul(r, base);
      base = mul(base, base);
      n >>= 1;
    }
    return r;
  }

  // x -> x^p, the absolute Frobenius.
  Elt frobenius(const Elt& a) const {
    if (!finite()) throw std::domain_error("frobenius needs a finite field");
    return pow(a, p);
  }

  // Unique square root in characteristic 2; exhaustive search otherwise.
  std::optional<Elt> sqrt(const Elt& a) const {
    if (!finite()) throw std::domain_error("sqrt implemented for finite fields only");
    if (p == 2) return pow(a, q_ / 2);
    for (std::int64_t i = 0; i < q_; ++i) {
      Elt y = element(i);
      if (mul(y, y) == a) return y;
    }
    return std::nullopt;
  }

  // --- Hermitian involution x -> x^{p^{e/2}}, available when e is even ---

  bool has_involution() const { return finite() && e % 2 == 0; }

  Elt conj(const Elt& a) const {
    if (!has_involution()) throw std::domain_error("no order-2 automorphism: extension degree is odd");
    std::int64_t q0 = 1;
    for (int i = 0; i < e / 2; ++i) q0 *= p;
    return pow(a, q0);
  }

  bool in_fixed_field(const Elt& a) const { return conj(a) == a; }

  Elt trace_to_fixed(const Elt& a) const { return add(a, conj(a)); }

  Elt norm_to_fixed(const Elt& a) const { return mul(a, conj(a)); }

  // Subfield of order p^{e/2} fixed by the involution, as its own Field.
  Field fixed_field() const {
    if (!has_involution()) throw std::domain_error("no involution, no fixed field");
    return Field::gf(p, e / 2);
  }

  std::vector<Elt> fixed_field_elements() const {
    std::vector<Elt> out;
    for (std::int64_t i = 0; i < q_; ++i)
      if (in_fixed_field(element(i))) out.push_back(element(i));
    return out;
  }

  // First t in enumeration order with t + conj(t) = a. Always exists for
  // finite quadratic extensions (the trace is surjective).
  Elt trace_preimage(const Elt& a) const {
    if (!has_involution()) throw std::domain_error("trace preimage needs an involution");
    for (std::int64_t i = 0; i < q_; ++i) {
      Elt t = element(i);
      if (trace_to_fixed(t) == a) return t;
    }
    throw std::logic_error("trace unexpectedly not surjective");
  }

  // --- text encodings ---

  std::string str(const Elt& a) const {
    if (finite()) return std::to_string(a.num);
    if (a.den == 1) return std::to_string(a.num);
    return std::to_string(a.num) + "/" + std::to_string(a.den);
  }

  Elt parse(const std::string& s) const {
    size_t slash = s.find('/');
    if (slash == std::string::npos) {
      std::int64_t v = std::stoll(s);
      if (!finite()) return Elt{v, 1};
      if (v >= 0 && v < q_) return Elt{v, 1};
      if (e == 1) return from_int(v);
      throw std::invalid_argument("element code out of range for " + spec_string());
    }
    if (finite()) throw std::invalid_argument("fractional literal in a finite field");
    return detail::make_rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }

  // "p^e" with an optional " mod=[c0,...,1]" when the modulus is not the
  // default one; the rationals print as "Q".
  std::string spec_string() const {
    if (!finite()) return "Q";
    std::string s = std::to_string(p) + "^" + std::to_string(e);
    if (e > 1 && modulus != default_modulus(p, e)) {
      s += " mod=[";
      for (int i = 0; i <= e; ++i) s += (i ? "," : "") + std::to_string(modulus[i]);
      s += "]";
    }
    return s;
  }

  static Field parse_spec(const std::string& text) {
    std::string s = text;
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s == "Q" || s == "q") return rationals();
    std::vector<std::int64_t> mod;
    size_t msp = s.find(" mod=[");
    if (msp != std::string::npos) {
      std::string body = s.substr(msp + 6);
      if (body.empty() || body.back() != ']') throw std::invalid_argument("bad modulus syntax");
      body.pop_back();
      size_t pos = 0;
      while (pos < body.size()) {
        size_t comma = body.find(',', pos);
        std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        mod.push_back(std::stoll(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      s = s.substr(0, msp);
    }
    size_t caret = s.find('^');
    std::int64_t pp;
    int ee = 1;
    if (caret == std::string::npos) {
      pp = std::stoll(s);
    } else {
      pp = std::stoll(s.substr(0, caret));
      ee = (int)std::stoll(s.substr(caret + 1));
    }
    if (mod.empty()) return gf(pp, ee);
    return gf(pp, ee, mod);
  }

  detail::Poly digits(std::int64_t codev) const {
    detail::Poly d(e, 0);
    for (int i = 0; i < e; ++i) { d[i] = codev % p; codev /= p; }
    detail::poly_trim(d);
    return d;
  }

  std::int64_t code(const detail::Poly& d) const {
    std::int64_t r = 0, pw = 1;
    for (int i = 0; i < e; ++i) {
      r += (i < (int)d.size() ? d[i] : 0) * pw;
      pw *= p;
    }
    return r;
  }

 private:
  std::int64_t q_ = 0;
};

// Roots of a polynomial with coefficients in F (low-degree first), by scan.
inline std::vector<Elt> poly_roots(const Field& F, const std::vector<Elt>& coeffs) {
  if (!F.finite()) throw InfiniteFieldError("root scan needs a finite field");
  std::vector<Elt> roots;
  for (std::int64_t i = 0; i < F.order(); ++i) {
    Elt x = F.element(i);
    Elt acc = F.zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    if (F.is_zero(acc)) roots.push_back(x);
  }
  return roots;
}

// Embedding of `sub` into `big` determined by the least root of sub's
// modulus inside big. Requires equal characteristic and sub.e | big.e.
struct FieldHom {
  Field sub, big;
  Elt root;  // image of sub's polynomial-basis generator

  Elt operator()(const Elt& x) const {
    auto d = sub.digits(x.num);
    Elt acc = big.zero();
    for (auto it = d.rbegin(); it != d.rend(); ++it)
      acc = big.add(big.mul(acc, root), big.from_int(*it));
    return acc;
  }
};

inline FieldHom embed_field(const Field& sub, const Field& big) {
  if (!sub.finite() || !big.finite() || sub.p != big.p || big.e % sub.e != 0)
    throw std::invalid_argument("no embedding between these fields");
  std::vector<Elt> cs;
  for (auto c : sub.modulus) cs.push_back(big.from_int(c));
  auto roots = poly_roots(big, cs);
  if (roots.empty()) throw std::logic_error("subfield modulus has no root upstairs");
  return FieldHom{sub, big, roots.front()};
}

}  // namespace pgrass
