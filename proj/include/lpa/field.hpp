#pragma once

// Exact scalars and dense univariate polynomials over Q and F_p.
//
// Rationals are arbitrary precision (boost::multiprecision); residues modulo
// p are plain 64-bit integers since p is capped at 2^20.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lpa/error.hpp"

namespace lpa {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline constexpr std::uint64_t kMaxCharacteristic = std::uint64_t{1} << 20;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t mod_reduce(const BigInt& n, std::uint64_t p) {
  BigInt r = n % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec(); }

  static FieldSpec prime(std::uint64_t p) {
    if (!detail::is_prime(p)) {
      fail(ErrorCode::InvalidField, "characteristic " + std::to_string(p) + " is not prime");
    }
    if (p > kMaxCharacteristic) {
      fail(ErrorCode::ResourceLimit,
           "characteristic " + std::to_string(p) + " exceeds 2^20");
    }
    FieldSpec spec;
    spec.kind_ = Kind::PrimeField;
    spec.p_ = p;
    return spec;
  }

  /// Accepts "Q" or "F<p>".
  static FieldSpec parse(std::string_view text) {
    if (text == "Q") return rationals();
    if (text.size() >= 2 && text.front() == 'F') {
      std::uint64_t p = 0;
      for (char c : text.substr(1)) {
        if (c < '0' || c > '9' || p > kMaxCharacteristic * 10) {
          fail(ErrorCode::InvalidField, "bad field '" + std::string(text) + "'");
        }
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return prime(p);
    }
    fail(ErrorCode::InvalidField, "bad field '" + std::string(text) + "'");
  }

  Kind kind() const { return kind_; }
  bool is_prime_field() const { return kind_ == Kind::PrimeField; }
  /// 0 for Q.
  std::uint64_t characteristic() const { return p_; }

  std::string to_string() const {
    return is_prime_field() ? "F" + std::to_string(p_) : std::string("Q");
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  Kind kind_ = Kind::Rationals;
  std::uint64_t p_ = 0;
};

inline void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (!(a == b)) {
    fail(ErrorCode::FieldMismatch, a.to_string() + " vs " + b.to_string());
  }
}

class FieldValue {
 public:
  FieldValue() = default;

  FieldValue(const FieldSpec& spec, long long n) : spec_(spec) {
    if (spec_.is_prime_field()) {
      residue_ = detail::mod_reduce(BigInt(n), spec_.characteristic());
    } else {
      rational_ = n;
    }
  }

  static FieldValue from_rational(const FieldSpec& spec, const BigRational& q) {
    FieldValue v;
    v.spec_ = spec;
    if (spec.is_prime_field()) {
      const std::uint64_t p = spec.characteristic();
      const std::uint64_t num = detail::mod_reduce(boost::multiprecision::numerator(q), p);
      const std::uint64_t den = detail::mod_reduce(boost::multiprecision::denominator(q), p);
      if (den == 0) fail(ErrorCode::DivisionByZero, "denominator vanishes modulo p");
      v.residue_ = num * detail::mod_pow(den, p - 2, p) % p;
    } else {
      v.rational_ = q;
    }
    return v;
  }

  static FieldValue zero(const FieldSpec& spec) { return FieldValue(spec, 0); }
  static FieldValue one(const FieldSpec& spec) { return FieldValue(spec, 1); }

  /// "a", "-a" or "a/b"; over F_p any integer or fraction is reduced.
  static FieldValue parse(const FieldSpec& spec, std::string_view text) {
    const auto bad = [&] { fail(ErrorCode::ParseError, "bad scalar '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    const auto parse_int = [&](std::string_view s) {
      std::size_t i = 0;
      if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) bad();
      for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') bad();
      }
      return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    const auto slash = text.find('/');
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = 1;
    if (slash != std::string_view::npos) {
      den = parse_int(text.substr(slash + 1));
      if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
      if (den < 0) {
        num = -num;
        den = -den;
      }
    }
    return from_rational(spec, BigRational(num, den));
  }

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const { return spec_.is_prime_field() ? residue_ == 0 : rational_ == 0; }
  bool is_one() const { return spec_.is_prime_field() ? residue_ == 1 : rational_ == 1; }

  std::uint64_t residue() const { return residue_; }
  const BigRational& rational() const { return rational_; }

  FieldValue operator-() const {
    FieldValue r = *this;
    if (spec_.is_prime_field()) {
      r.residue_ = residue_ == 0 ? 0 : spec_.characteristic() - residue_;
    } else {
      r.rational_ = -rational_;
    }
    return r;
  }

  FieldValue inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    FieldValue r = *this;
    if (spec_.is_prime_field()) {
      const auto p = spec_.characteristic();
      r.residue_ = detail::mod_pow(residue_, p - 2, p);
    } else {
      r.rational_ = 1 / rational_;
    }
    return r;
  }

  friend FieldValue operator+(const FieldValue& a, const FieldValue& b) {
    require_same_field(a.spec_, b.spec_);
    FieldValue r = a;
    if (a.spec_.is_prime_field()) {
      r.residue_ = (a.residue_ + b.residue_) % a.spec_.characteristic();
    } else {
      r.rational_ = a.rational_ + b.rational_;
    }
    return r;
  }
  friend FieldValue operator-(const FieldValue& a, const FieldValue& b) { return a + (-b); }
  friend FieldValue operator*(const FieldValue& a, const FieldValue& b) {
    require_same_field(a.spec_, b.spec_);
    FieldValue r = a;
    if (a.spec_.is_prime_field()) {
      r.residue_ = a.residue_ * b.residue_ % a.spec_.characteristic();
    } else {
      r.rational_ = a.rational_ * b.rational_;
    }
    return r;
  }
  friend FieldValue operator/(const FieldValue& a, const FieldValue& b) { return a * b.inverse(); }

  FieldValue& operator+=(const FieldValue& b) { return *this = *this + b; }
  FieldValue& operator-=(const FieldValue& b) { return *this = *this - b; }
  FieldValue& operator*=(const FieldValue& b) { return *this = *this * b; }

  friend bool operator==(const FieldValue& a, const FieldValue& b) {
    return a.spec_ == b.spec_ && a.residue_ == b.residue_ && a.rational_ == b.rational_;
  }

  /// Canonical field order: ascending residues over F_p, ascending values over Q.
  friend bool canonical_less(const FieldValue& a, const FieldValue& b) {
    require_same_field(a.spec_, b.spec_);
    return a.spec_.is_prime_field() ? a.residue_ < b.residue_ : a.rational_ < b.rational_;
  }

  std::string to_string() const {
    if (spec_.is_prime_field()) return std::to_string(residue_);
    std::ostringstream os;
    os << boost::multiprecision::numerator(rational_);
    if (boost::multiprecision::denominator(rational_) != 1) {
      os << '/' << boost::multiprecision::denominator(rational_);
    }
    return os.str();
  }

 private:
  FieldSpec spec_;
  BigRational rational_ = 0;
  std::uint64_t residue_ = 0;
};

/// Dense polynomial, coefficients low degree first; the zero polynomial has
/// no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const FieldSpec& spec) : spec_(spec) {}

  Polynomial(const FieldSpec& spec, std::vector<FieldValue> coefficients)
      : spec_(spec), coeffs_(std::move(coefficients)) {
    for (const auto& c : coeffs_) require_same_field(spec_, c.spec());
    trim();
  }

  Polynomial(const FieldSpec& spec, std::initializer_list<long long> coefficients)
      : spec_(spec) {
    for (long long c : coefficients) coeffs_.emplace_back(spec, c);
    trim();
  }

  static Polynomial from_ints(const FieldSpec& spec, std::span<const long long> coefficients) {
    std::vector<FieldValue> cs;
    for (long long c : coefficients) cs.emplace_back(spec, c);
    return Polynomial(spec, std::move(cs));
  }

  static Polynomial constant(const FieldValue& c) { return Polynomial(c.spec(), {c}); }

  static Polynomial monomial(const FieldValue& c, std::size_t degree) {
    std::vector<FieldValue> cs(degree + 1, FieldValue::zero(c.spec()));
    cs[degree] = c;
    return Polynomial(c.spec(), std::move(cs));
  }

  /// x - r
  static Polynomial linear_factor(const FieldValue& root) {
    return Polynomial(root.spec(), {-root, FieldValue::one(root.spec())});
  }

  const FieldSpec& spec() const { return spec_; }
  std::span<const FieldValue> coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  FieldValue coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : FieldValue::zero(spec_);
  }
  FieldValue leading() const { return coeff(coeffs_.empty() ? 0 : coeffs_.size() - 1); }
  FieldValue constant_term() const { return coeff(0); }

  FieldValue evaluate(const FieldValue& x) const {
    FieldValue acc = FieldValue::zero(spec_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial scaled(const FieldValue& c) const {
    std::vector<FieldValue> cs;
    cs.reserve(coeffs_.size());
    for (const auto& a : coeffs_) cs.push_back(a * c);
    return Polynomial(spec_, std::move(cs));
  }

  Polynomial monic() const {
    if (is_zero()) fail(ErrorCode::ZeroPolynomial, "monic of zero");
    return scaled(leading().inverse());
  }

  /// Rescaled so the constant term is 1.
  Polynomial unit_constant() const {
    if (constant_term().is_zero()) fail(ErrorCode::ZeroConstantTerm, "constant term is zero");
    return scaled(constant_term().inverse());
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    require_same_field(a.spec_, b.spec_);
    std::vector<FieldValue> cs(std::max(a.coeffs_.size(), b.coeffs_.size()),
                               FieldValue::zero(a.spec_));
    for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(a.spec_, std::move(cs));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + b.scaled(-FieldValue::one(b.spec_));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_field(a.spec_, b.spec_);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.spec_);
    std::vector<FieldValue> cs(a.coeffs_.size() + b.coeffs_.size() - 1, FieldValue::zero(a.spec_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(a.spec_, std::move(cs));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.spec_ == b.spec_ && a.coeffs_ == b.coeffs_;
  }

  /// Space-separated coefficients, low degree first ("0" for zero).
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) out += ' ';
      out += coeffs_[i].to_string();
    }
    return out;
  }

  /// Human-oriented rendering, e.g. "1 - 2x + x^2".
  std::string pretty() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      std::string c = coeffs_[i].to_string();
      bool negative = !spec_.is_prime_field() && c.front() == '-';
      if (negative) c.erase(0, 1);
      if (out.empty()) {
        if (negative) out += '-';
      } else {
        out += negative ? " - " : " + ";
      }
      if (i == 0 || c != "1") out += c;
      if (i >= 1) out += 'x';
      if (i >= 2) out += '^' + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  FieldSpec spec_;
  std::vector<FieldValue> coeffs_;
};

struct DivRem {
  Polynomial quotient;
  Polynomial remainder;
};

inline DivRem divrem(const Polynomial& a, const Polynomial& b) {
  require_same_field(a.spec(), b.spec());
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  const auto& spec = a.spec();
  std::vector<FieldValue> rem(a.coefficients().begin(), a.coefficients().end());
  const int db = b.degree();
  const FieldValue lead_inv = b.leading().inverse();
  std::vector<FieldValue> quot(a.degree() >= db ? a.degree() - db + 1 : 0, FieldValue::zero(spec));
  for (int i = a.degree(); i >= db; --i) {
    const FieldValue c = rem[i] * lead_inv;
    quot[i - db] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b.coeff(j);
  }
  return {Polynomial(spec, std::move(quot)), Polynomial(spec, std::move(rem))};
}

/// Monic gcd; gcd(0, 0) is 0.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  require_same_field(a.spec(), b.spec());
  while (!b.is_zero()) {
    Polynomial r = divrem(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

inline Polynomial derivative(const Polynomial& a) {
  std::vector<FieldValue> cs;
  for (int i = 1; i <= a.degree(); ++i) {
    cs.push_back(a.coeff(i) * FieldValue(a.spec(), i));
  }
  return Polynomial(a.spec(), std::move(cs));
}

inline Polynomial power(const Polynomial& a, unsigned exponent) {
  Polynomial result = Polynomial::constant(FieldValue::one(a.spec()));
  for (unsigned i = 0; i < exponent; ++i) result = result * a;
  return result;
}

enum class PolyOp { Add, Mul, DivRem, Gcd, Derivative };

/// Single entry point over the basic ring operations; derivative ignores b.
inline std::variant<Polynomial, DivRem> poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op) {
  require_same_field(a.spec(), b.spec());
  switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Mul: return a * b;
    case PolyOp::DivRem: return divrem(a, b);
    case PolyOp::Gcd: return gcd(a, b);
    case PolyOp::Derivative: return derivative(a);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Roots

struct RootMultiset {
  std::vector<std::pair<FieldValue, unsigned>> roots;  // canonical field order
  std::size_t unfactoredDegree = 0;
  Polynomial cofactor;  // monic, no roots in the field
};

namespace detail {

/// Divides f by (x - r) as long as r is a root; returns the multiplicity.
inline unsigned deflate(Polynomial& f, const FieldValue& r) {
  unsigned m = 0;
  while (f.degree() >= 1 && f.evaluate(r).is_zero()) {
    f = divrem(f, Polynomial::linear_factor(r)).quotient;
    ++m;
  }
  return m;
}

inline constexpr long long kMaxTrialDivision = 1'000'000;

/// Positive divisors of |n| (n != 0) by trial division.
inline std::vector<BigInt> divisors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (d > kMaxTrialDivision) {
      fail(ErrorCode::ResourceLimit, "coefficient too large for rational root search");
    }
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

/// All roots in the field with multiplicities. Exhaustive over F_p; rational
/// root theorem on the primitive integer form over Q.
inline RootMultiset find_roots(const Polynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "find_roots of zero");
  const auto& spec = f.spec();
  Polynomial rest = f;
  RootMultiset out;
  if (spec.is_prime_field()) {
    for (std::uint64_t a = 0; a < spec.characteristic() && rest.degree() >= 1; ++a) {
      FieldValue r(spec, static_cast<long long>(a));
      if (unsigned m = detail::deflate(rest, r)) out.roots.emplace_back(r, m);
    }
  } else {
    FieldValue zero = FieldValue::zero(spec);
    if (unsigned m = detail::deflate(rest, zero)) out.roots.emplace_back(zero, m);
    if (rest.degree() >= 1) {
      BigInt lcm_den = 1;
      for (const auto& c : rest.coefficients()) {
        lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(c.rational()));
      }
      const BigInt c0 = boost::multiprecision::numerator(BigRational(rest.constant_term().rational() * lcm_den));
      const BigInt cd = boost::multiprecision::numerator(BigRational(rest.leading().rational() * lcm_den));
      const auto nums = detail::divisors(c0);
      const auto dens = detail::divisors(cd);
      std::vector<BigRational> candidates;
      for (const auto& a : nums) {
        for (const auto& b : dens) {
          candidates.emplace_back(a, b);
          candidates.emplace_back(-a, b);
        }
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      for (const auto& q : candidates) {
        if (rest.degree() < 1) break;
        FieldValue r = FieldValue::from_rational(spec, q);
        if (unsigned m = detail::deflate(rest, r)) out.roots.emplace_back(r, m);
      }
      std::sort(out.roots.begin(), out.roots.end(),
                [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
    }
  }
  out.unfactoredDegree = static_cast<std::size_t>(std::max(rest.degree(), 0));
  out.cofactor = rest.monic();
  return out;
}

struct DlfVerdict {
  bool dlf = false;
  std::vector<FieldValue> roots;           // distinct roots found, canonical order
  std::optional<FieldValue> repeatedRoot;  // smallest root of multiplicity > 1
  std::size_t unfactoredDegree = 0;

  std::string witness() const {
    if (dlf) {
      std::string s = "roots";
      for (const auto& r : roots) s += " " + r.to_string();
      return s;
    }
    if (repeatedRoot) return "repeated root " + repeatedRoot->to_string();
    return "unfactored degree " + std::to_string(unfactoredDegree);
  }
};

/// True iff f is a product of pairwise distinct linear factors over its field.
inline DlfVerdict is_dlf(const Polynomial& f) {
  if (f.degree() < 1) fail(ErrorCode::ConstantPolynomial, "dlf test needs degree >= 1");
  const RootMultiset rm = find_roots(f);
  DlfVerdict v;
  v.unfactoredDegree = rm.unfactoredDegree;
  for (const auto& [r, m] : rm.roots) {
    v.roots.push_back(r);
    if (m > 1 && !v.repeatedRoot) v.repeatedRoot = r;
  }
  v.dlf = !v.repeatedRoot && v.unfactoredDegree == 0;
  return v;
}

namespace detail {

/// Product of the distinct irreducible factors (monic), f nonzero.
inline Polynomial radical(const Polynomial& f) {
  const auto& spec = f.spec();
  if (f.degree() <= 0) return Polynomial::constant(FieldValue::one(spec));
  const Polynomial df = derivative(f);
  if (df.is_zero()) {
    // f = h(x^p) = (h's coefficient-wise p-th root)(x)^p; a^p = a in F_p.
    const std::size_t p = spec.characteristic();
    std::vector<FieldValue> cs;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(f.degree()); i += p) cs.push_back(f.coeff(i));
    return radical(Polynomial(spec, std::move(cs)));
  }
  const Polynomial g = gcd(f, df);
  const Polynomial w = divrem(f, g).quotient;
  const Polynomial rg = radical(g);
  // lcm(w, rad g)
  return divrem(w * rg, gcd(w, rg)).quotient.monic();
}

}  // namespace detail

/// Product of the distinct irreducible factors of f, normalized to g(0) = 1.
inline Polynomial squarefree_part(const Polynomial& f) {
  if (f.degree() < 1) fail(ErrorCode::ConstantPolynomial, "squarefree part needs degree >= 1");
  if (f.constant_term().is_zero()) fail(ErrorCode::ZeroConstantTerm, "f(0) = 0");
  return detail::radical(f).unit_constant();
}

// ---------------------------------------------------------------------------
// Laurent polynomials

class LaurentElement {
 public:
  explicit LaurentElement(const FieldSpec& spec) : spec_(spec) {}

  LaurentElement(const FieldSpec& spec, std::map<std::int64_t, FieldValue> terms) : spec_(spec) {
    for (auto& [e, c] : terms) {
      require_same_field(spec_, c.spec());
      if (!c.is_zero()) terms_.emplace(e, c);
    }
  }

  const FieldSpec& spec() const { return spec_; }
  const std::map<std::int64_t, FieldValue>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

 private:
  FieldSpec spec_;
  std::map<std::int64_t, FieldValue> terms_;
};

struct LaurentGenerator {
  Polynomial monic;      // unique monic generator with f(0) != 0
  Polynomial canonical;  // unique generator with f(0) = 1
};

/// Generator data of the ideal (g) of F[x, x^-1].
inline LaurentGenerator laurent_normalize(const LaurentElement& g) {
  if (g.is_zero()) fail(ErrorCode::ZeroElement, "zero Laurent element");
  const std::int64_t low = g.terms().begin()->first;
  const std::int64_t high = g.terms().rbegin()->first;
  if (low == high) fail(ErrorCode::UnitElement, "monomial generates the whole ring");
  std::vector<FieldValue> cs(static_cast<std::size_t>(high - low + 1), FieldValue::zero(g.spec()));
  for (const auto& [e, c] : g.terms()) cs[static_cast<std::size_t>(e - low)] = c;
  Polynomial shifted(g.spec(), std::move(cs));
  return {shifted.monic(), shifted.unit_constant()};
}

// ---------------------------------------------------------------------------
// CRT bookkeeping for F[x]/(f) = prod F[x]/(f_i^{m_i})

struct CrtReport {
  std::size_t totalDimension = 0;
  std::vector<std::size_t> blockDimensions;
  std::size_t maximalIdeals = 0;
  bool splitSemisimple = false;  // isomorphic to F^m
};

inline CrtReport crt_profile(const Polynomial& f,
                             const std::vector<std::pair<Polynomial, unsigned>>& factorization) {
  if (f.degree() < 1) fail(ErrorCode::ConstantPolynomial, "crt profile needs degree >= 1");
  Polynomial product = Polynomial::constant(FieldValue::one(f.spec()));
  CrtReport report;
  bool all_linear_simple = true;
  for (std::size_t i = 0; i < factorization.size(); ++i) {
    const auto& [fi, mi] = factorization[i];
    require_same_field(f.spec(), fi.spec());
    if (fi.degree() < 1 || mi == 0) {
      fail(ErrorCode::ProductMismatch, "factor " + std::to_string(i) + " is constant or has multiplicity 0");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gcd(fi, factorization[j].first).degree() != 0) {
        fail(ErrorCode::NotCoprime,
             "factors " + std::to_string(j) + " and " + std::to_string(i) + " share a factor");
      }
    }
    product = product * power(fi, mi);
    report.blockDimensions.push_back(static_cast<std::size_t>(fi.degree()) * mi);
    all_linear_simple = all_linear_simple && fi.degree() == 1 && mi == 1;
  }
  if (!(product.monic() == f.monic())) {
    fail(ErrorCode::ProductMismatch, "factor powers multiply to " + product.to_string());
  }
  report.totalDimension = static_cast<std::size_t>(f.degree());
  report.maximalIdeals = factorization.size();
  report.splitSemisimple = all_linear_simple;
  return report;
}

/// Profile using the linear factorization from find_roots; f must split.
inline CrtReport crt_profile(const Polynomial& f) {
  const RootMultiset rm = find_roots(f);
  if (rm.unfactoredDegree != 0) {
    fail(ErrorCode::ProductMismatch, "polynomial does not split into linear factors");
  }
  std::vector<std::pair<Polynomial, unsigned>> factors;
  for (const auto& [r, m] : rm.roots) factors.emplace_back(Polynomial::linear_factor(r), m);
  return crt_profile(f, factors);
}

}  // namespace lpa
