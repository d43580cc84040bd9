#ifndef NCT_GENMAT_HPP
#define NCT_GENMAT_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "nct/linalg_exact.hpp"
#include "nct/poly.hpp"
#include "nct/rng.hpp"

namespace nct {

// Word-product cache over any matrix-like type with operator*.
template <class M>
class WordCache {
 public:
  WordCache(std::vector<M> letters, M id) : letters_(std::move(letters)) {
    memo_.emplace(Word::unit(), std::move(id));
  }
  const M& get(const Word& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    const M& prefix = get(w.dropLast());
    M prod = prefix * letters_[static_cast<size_t>(w.at(w.degree() - 1))];
    return memo_.emplace(w, std::move(prod)).first->second;
  }

 private:
  std::vector<M> letters_;
  std::map<Word, M, DeglexLess> memo_;
};

// ---- matrix tuples -------------------------------------------------------

struct MatrixTupleX {
  int k = 0;
  std::vector<Mat<GRat>> mats;
  bool selfadjoint = false;
};

struct MatrixTupleC {
  int k = 0;
  std::vector<Eigen::MatrixXcd> mats;
  bool selfadjoint = false;
};

// hermitian tuples with Gaussian-rational entries, numerators in [-20,20]
MatrixTupleX randomSelfAdjointTupleX(int k, int n, uint64_t seed);
// complex (non-self-adjoint) rational tuple, for the cross-check evaluation
MatrixTupleX randomComplexTupleX(int k, int n, uint64_t seed);
// hermitian gaussian tuples for the floating backend (unit scale)
MatrixTupleC randomSelfAdjointTupleC(int k, int n, uint64_t seed, double entry_stddev = 1.0);

bool isSelfAdjoint(const MatrixTupleX& t);
bool isSelfAdjoint(const MatrixTupleC& t, double tol = 1e-12);

// algebra-homomorphic evaluation; unit word -> identity
Mat<GRat> evalPoly(const XPoly& p, const MatrixTupleX& t);
Eigen::MatrixXcd evalPoly(const CPoly& p, const MatrixTupleC& t);
Eigen::MatrixXcd evalPoly(const XPoly& p, const MatrixTupleC& t);

// ---- the standard polynomial --------------------------------------------

// j_k: alternating sum over S_2k of X_sigma(1)...X_sigma(2k), over 2k letters
XPoly standardPoly(int k);

// ---- identity ideal truncations ------------------------------------------

// Exact basis of { P of degree <= m : P vanishes on all self-adjoint k x k
// tuples }, computed as the exact kernel of stacked evaluation maps at
// random rational self-adjoint tuples with fresh-sample re-verification.
struct IdentityBasis {
  int k = 0, n = 0, m = 0;
  long sample_count = 0;
  std::vector<Word> word_basis;                 // deglex words of degree <= m
  std::vector<std::vector<GRat>> vectors;       // reduced echelon, *-closed span
  std::vector<XPoly> hermitian_generators;      // same span, hermitian gens

  int dimension() const { return static_cast<int>(vectors.size()); }
  std::vector<XPoly> polys() const;
};

IdentityBasis identityBasis(int k, int n, int m, uint64_t seed);

// true iff P lies in the span of identityBasis(k, n, deg P); cross-checked
// by exact evaluation at one random complex (non-self-adjoint) tuple
bool isIdentity(const XPoly& p, int k, uint64_t seed);
bool isIdentity(const XPoly& p, const IdentityBasis& basis);

// max |entry| of eval(P, t) at a random self-adjoint tuple whose matrices
// are normalized to unit Frobenius norm
double identityWitnessMagnitude(const XPoly& p, int k, uint64_t seed);

// ---- generic matrices -----------------------------------------------------

// polynomial in the commuting matrix-entry variables xi_ij^(l)
struct CommutativePoly {
  std::map<std::vector<int>, GRat> terms;

  bool isZero() const { return terms.empty(); }
  void addTerm(const std::vector<int>& expo, const GRat& c);
  CommutativePoly& operator+=(const CommutativePoly& o);
  CommutativePoly& operator-=(const CommutativePoly& o);
  friend CommutativePoly operator+(CommutativePoly a, const CommutativePoly& b) { return a += b; }
  friend CommutativePoly operator-(CommutativePoly a, const CommutativePoly& b) { return a -= b; }
  friend CommutativePoly operator*(const CommutativePoly& a, const CommutativePoly& b);
  friend bool operator==(const CommutativePoly& a, const CommutativePoly& b) {
    return a.terms == b.terms;
  }
};

// flat index of xi_ij^(l) in k x k generic matrices
inline int genericVarIndex(int l, int i, int j, int k) { return (l * k + i) * k + j; }

// conjugate-linear extension of (xi_ij^(l))* = xi_ji^(l)
CommutativePoly genericInvolution(const CommutativePoly& p, int n, int k);

// exact symbolic evaluation at Y_l = (xi_ij^(l)); the result is the zero
// matrix iff P is an identity of k x k matrices
Mat<CommutativePoly> evalGeneric(const XPoly& p, int k);

bool isZeroGenericMatrix(const Mat<CommutativePoly>& m);

}  // namespace nct

#endif
