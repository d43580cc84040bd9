#ifndef NCT_POLY_HPP
#define NCT_POLY_HPP

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nct/scalar.hpp"
#include "nct/word.hpp"

namespace nct {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<GRat> {
  static bool isZero(const GRat& x) { return x.isZero(); }
  static GRat conj(const GRat& x) { return nct::conj(x); }
  static GRat one() { return GRat(1); }
  static GRat fromInt(long v) { return GRat(v); }
};

template <>
struct ScalarOps<std::complex<double>> {
  static bool isZero(const std::complex<double>& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> fromInt(long v) { return {static_cast<double>(v), 0.0}; }
};

// Finitely supported S-linear combination of words over a fixed alphabet
// of n letters. Immutable in spirit: all operations return new values.
// Zero coefficients are never stored.
template <class S>
class Polynomial {
 public:
  using Terms = std::map<Word, S, DeglexLess>;

  explicit Polynomial(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Polynomial: alphabet size must be >= 1");
  }

  static Polynomial zero(int n) { return Polynomial(n); }
  static Polynomial unit(int n) { return monomial(n, Word::unit(), ScalarOps<S>::one()); }
  static Polynomial letter(int n, int i) {
    if (i < 0 || i >= n) throw std::invalid_argument("Polynomial::letter: index out of range");
    return monomial(n, Word::letter(i), ScalarOps<S>::one());
  }
  static Polynomial monomial(int n, const Word& w, const S& c) {
    Polynomial p(n);
    if (w.maxLetter() >= n) throw std::invalid_argument("Polynomial::monomial: word uses letters beyond alphabet");
    if (!ScalarOps<S>::isZero(c)) p.terms_.emplace(w, c);
    return p;
  }

  int alphabetSize() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  size_t termCount() const { return terms_.size(); }

  // degree of the zero polynomial is a distinguished "none"
  std::optional<int> degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.degree();
  }

  S coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? S{} : it->second;
  }

  void addTerm(const Word& w, const S& c) {
    if (ScalarOps<S>::isZero(c)) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (ScalarOps<S>::isZero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    requireSameAlphabet(o);
    for (const auto& [w, c] : o.terms_) addTerm(w, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    requireSameAlphabet(o);
    for (const auto& [w, c] : o.terms_) addTerm(w, -c);
    return *this;
  }
  Polynomial& operator*=(const S& c) {
    if (ScalarOps<S>::isZero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, v] : terms_) v *= c;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r(a.n_);
    for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, -c);
    return r;
  }
  friend Polynomial operator*(Polynomial a, const S& c) { return a *= c; }
  friend Polynomial operator*(const S& c, Polynomial a) { return a *= c; }

  // bilinear extension of word concatenation
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.requireSameAlphabet(b);
    Polynomial r(a.n_);
    for (const auto& [u, cu] : a.terms_)
      for (const auto& [v, cv] : b.terms_) r.addTerm(u.concat(v), cu * cv);
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void requireSameAlphabet(const Polynomial& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Polynomial: alphabet size mismatch");
  }

  int n_;
  Terms terms_;
};

using XPoly = Polynomial<GRat>;                 // exact backend
using CPoly = Polynomial<std::complex<double>>; // floating mirror

// words reversed, coefficients conjugated
template <class S>
Polynomial<S> involution(const Polynomial<S>& p) {
  Polynomial<S> r(p.alphabetSize());
  for (const auto& [w, c] : p.terms()) r.addTerm(w.reversed(), ScalarOps<S>::conj(c));
  return r;
}

template <class S>
bool isHermitian(const Polynomial<S>& p) {
  return involution(p) == p;
}

template <class S>
Polynomial<S> homogeneousPart(const Polynomial<S>& p, int d) {
  if (d < 0) throw std::invalid_argument("homogeneousPart: degree must be >= 0");
  Polynomial<S> r(p.alphabetSize());
  for (const auto& [w, c] : p.terms())
    if (w.degree() == d) r.addTerm(w, c);
  return r;
}

template <class S>
bool isHomogeneous(const Polynomial<S>& p) {
  auto d = p.degree();
  if (!d) return true;
  return p.terms().begin()->first.degree() == *d;
}

// each word w scaled by 2^deg(w); (NP)(a) = P(2a)
template <class S>
Polynomial<S> numberOperator(const Polynomial<S>& p) {
  Polynomial<S> r(p.alphabetSize());
  for (const auto& [w, c] : p.terms()) {
    S s = c;
    for (int i = 0; i < w.degree(); ++i) s += s;
    r.addTerm(w, s);
  }
  return r;
}

// algebra-homomorphic substitution, one substituent per letter
template <class S>
Polynomial<S> substitute(const Polynomial<S>& p, std::span<const Polynomial<S>> subs) {
  if (static_cast<int>(subs.size()) != p.alphabetSize())
    throw std::invalid_argument("substitute: need one substituent per letter");
  int m = subs.empty() ? 1 : subs[0].alphabetSize();
  for (const auto& q : subs)
    if (q.alphabetSize() != m) throw std::invalid_argument("substitute: substituents over mixed alphabets");
  Polynomial<S> r(m);
  for (const auto& [w, c] : p.terms()) {
    Polynomial<S> prod = Polynomial<S>::monomial(m, Word::unit(), c);
    for (int l : w.letters()) prod = prod * subs[static_cast<size_t>(l)];
    r += prod;
  }
  return r;
}

template <class S>
Polynomial<S> substitute(const Polynomial<S>& p, const std::vector<Polynomial<S>>& subs) {
  return substitute(p, std::span<const Polynomial<S>>(subs));
}

struct Multilinearization {
  XPoly poly;                   // multilinear in sum(multidegree) fresh letters
  std::vector<int> multidegree; // of the input, per original letter
};

// Splits each letter of a homogeneous polynomial into fresh variables and
// keeps the multidegree-(1,...,1) part. The recovery identity
// P = (1/prod k_i!) * Q(x_1,..,x_1,...,x_n,..,x_n) holds exactly.
Multilinearization multilinearize(const XPoly& p);

inline CPoly toComplexPoly(const XPoly& p) {
  CPoly r(p.alphabetSize());
  for (const auto& [w, c] : p.terms()) r.addTerm(w, toComplex(c));
  return r;
}

inline double coeffNorm(const CPoly& p) {
  double s = 0;
  for (const auto& [w, c] : p.terms()) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace nct

#endif
