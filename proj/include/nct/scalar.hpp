#ifndef NCT_SCALAR_HPP
#define NCT_SCALAR_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace nct {

using Rat = mpq_class;

inline Rat ratOf(long p, long q = 1) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

// Gaussian rational: the exact scalar backend. The floating mirror is
// std::complex<double>; conversion is explicit via toComplex().
struct GRat {
  Rat re{0}, im{0};

  GRat() = default;
  GRat(long v) : re(v) {}  // NOLINT: integer literals are scalars
  GRat(Rat r) : re(std::move(r)) {}
  GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool isZero() const { return re == 0 && im == 0; }
  bool isReal() const { return im == 0; }

  GRat operator-() const { return GRat(-re, -im); }

  GRat& operator+=(const GRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GRat& operator-=(const GRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GRat& operator*=(const GRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GRat& operator/=(const GRat& o) {
    Rat n = o.re * o.re + o.im * o.im;
    if (n == 0) throw std::domain_error("GRat: division by zero");
    Rat r = (re * o.re + im * o.im) / n;
    Rat i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
};

inline GRat operator+(GRat a, const GRat& b) { return a += b; }
inline GRat operator-(GRat a, const GRat& b) { return a -= b; }
inline GRat operator*(GRat a, const GRat& b) { return a *= b; }
inline GRat operator/(GRat a, const GRat& b) { return a /= b; }
inline bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }

inline GRat conj(const GRat& a) { return GRat(a.re, -a.im); }

inline const GRat& grOne() {
  static const GRat one(1);
  return one;
}
inline const GRat& grI() {
  static const GRat i(Rat(0), Rat(1));
  return i;
}

inline std::complex<double> toComplex(const GRat& a) {
  return {a.re.get_d(), a.im.get_d()};
}

// "p/q" or plain integer string.
inline std::string ratToString(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Parses "p/q" or a decimal literal ("2", "-0.25", "1e-3") exactly.
inline Rat ratFromString(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  // decimal form: [+-]digits[.digits][e[+-]digits]
  size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_digit = false;
  while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) {
    digits += s[pos++];
    seen_digit = true;
  }
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) {
      digits += s[pos++];
      ++frac_len;
      seen_digit = true;
    }
  }
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      eneg = s[pos] == '-';
      ++pos;
    }
    if (pos >= s.size()) throw std::invalid_argument("bad exponent in '" + s + "'");
    long e = 0;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) {
      e = e * 10 + (s[pos++] - '0');
      if (e > 1000000) throw std::invalid_argument("exponent overflow in '" + s + "'");
    }
    exp10 = eneg ? -e : e;
  }
  if (!seen_digit || pos != s.size())
    throw std::invalid_argument("bad numeric literal '" + s + "'");
  mpz_class mant(digits.empty() ? "0" : digits);
  if (neg) mant = -mant;
  long p10 = exp10 - frac_len;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(p10 < 0 ? -p10 : p10));
  Rat r = p10 >= 0 ? Rat(mant * scale) : Rat(mant, scale);
  r.canonicalize();
  return r;
}

}  // namespace nct

#endif
