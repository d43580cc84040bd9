#include "doctest.h"

#include "nct/genmat.hpp"
#include "nct/parse.hpp"
#include "nct/rng.hpp"

using namespace nct;

namespace {

XPoly rxp(const std::string& s, int n = 0) {
  return parsePolynomial(s, n > 0 ? std::optional<int>(n) : std::nullopt);
}

Mat<GRat> grmat2(std::initializer_list<long> entries) {
  Mat<GRat> m(2, 2);
  auto it = entries.begin();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = GRat(*it++);
  return m;
}

// Hall identity [[x1,x2]^2, x1]
XPoly hallIdentity() {
  XPoly c = rxp("x1*x2 - x2*x1");
  XPoly c2 = c * c;
  XPoly x1 = XPoly::letter(2, 0);
  return c2 * x1 - x1 * c2;
}

}  // namespace

TEST_CASE("eval on matrix tuples") {
  MatrixTupleX t;
  t.k = 2;
  t.selfadjoint = true;
  t.mats = {grmat2({1, 0, 0, -1}), grmat2({0, 1, 1, 0})};
  CHECK(evalPoly(XPoly::unit(2), t) == Mat<GRat>::identity(2, GRat(1)));
  MatrixTupleX same;
  same.k = 2;
  same.mats = {t.mats[0], t.mats[0]};
  CHECK(isZeroMat(evalPoly(rxp("x1*x2 - x2*x1"), same)));
  // commutator of diag(1,-1) and the flip matrix
  Mat<GRat> e = evalPoly(standardPoly(1), t);
  CHECK(e(0, 0) == GRat(0));
  CHECK(e(0, 1) == GRat(2));
  CHECK(e(1, 0) == GRat(-2));
  CHECK(e(1, 1) == GRat(0));
  CHECK_THROWS_AS(evalPoly(rxp("x1*x2*x3"), t), std::invalid_argument);
}

TEST_CASE("standard polynomial") {
  CHECK(standardPoly(1) == rxp("x1*x2 - x2*x1"));
  XPoly j2 = standardPoly(2);
  CHECK(j2.termCount() == 24);
  for (const auto& [w, c] : j2.terms()) {
    CHECK(w.degree() == 4);
    CHECK((c == GRat(1) || c == GRat(-1)));
  }
  // multilinear and alternating: a repeated argument kills it
  CHECK(substitute(j2, {rxp("x1", 3), rxp("x1", 3), rxp("x2", 3), rxp("x3", 3)}).isZero());
  CHECK_THROWS_AS(standardPoly(5), std::domain_error);
}

TEST_CASE("identity_basis: abelianization kernel at k=1") {
  IdentityBasis b = identityBasis(1, 2, 2, 0);
  REQUIRE(b.dimension() == 1);
  CHECK(b.polys()[0] == rxp("x1*x2 - x2*x1"));
  // 7 words minus 6 commutative monomials
  CHECK(b.word_basis.size() == 7);
}

TEST_CASE("identity_basis: no identities of 2x2 matrices below degree 4") {
  CHECK(identityBasis(2, 2, 3, 0).dimension() == 0);
}

TEST_CASE("identity_basis: degree-5 identities of 2x2 matrices contain Hall") {
  IdentityBasis b = identityBasis(2, 2, 5, 0);
  CHECK(b.dimension() >= 1);
  CHECK(isIdentity(hallIdentity(), b));
  // the basis is seed independent
  IdentityBasis b2 = identityBasis(2, 2, 5, 12345);
  CHECK(b.vectors == b2.vectors);
  CHECK(b.hermitian_generators == b2.hermitian_generators);
  // every reported vector really vanishes, on a tuple the sampler never saw
  MatrixTupleX fresh = randomSelfAdjointTupleX(2, 2, 0xfeedbeef);
  for (const auto& p : b.polys()) CHECK(isZeroMat(evalPoly(p, fresh)));
}

TEST_CASE("identity basis vectors are homogeneous-part closed") {
  IdentityBasis b = identityBasis(2, 2, 5, 7);
  MatrixTupleX fresh = randomSelfAdjointTupleX(2, 2, 0xabcdef01);
  for (const auto& p : b.polys())
    for (int d = 0; d <= 5; ++d) {
      XPoly part = homogeneousPart(p, d);
      if (!part.isZero()) CHECK(isZeroMat(evalPoly(part, fresh)));
    }
}

TEST_CASE("identity ideal is stable under substitution") {
  IdentityBasis b = identityBasis(2, 2, 5, 3);
  REQUIRE(b.dimension() >= 1);
  XPoly p = b.polys()[0];
  // substitute letters by letters (degree preserved), stays an identity
  XPoly q = substitute(p, {rxp("x2", 2), rxp("x1", 2)});
  CHECK(isIdentity(q, 2, 11));
}

TEST_CASE("identities of (k+1)x(k+1) hold on padded k x k tuples") {
  IdentityBasis b = identityBasis(2, 2, 5, 1);
  // scalars embedded in the top-left corner of 2x2 with a zero row/column
  Rng rng(99);
  for (const auto& p : b.polys()) {
    MatrixTupleX t;
    t.k = 2;
    for (int l = 0; l < 2; ++l) {
      Mat<GRat> m(2, 2);
      m(0, 0) = GRat(ratOf(rng.uniformInt(-9, 9)));
      t.mats.push_back(std::move(m));
    }
    CHECK(isZeroMat(evalPoly(p, t)));
  }
}

TEST_CASE("squares of identity elements stay in the ideal") {
  // J_k is a two-sided ideal: sums of squares of its elements lie in it,
  // and adding commutators only moves within J_k + C_cyc
  XPoly c12 = rxp("x1*x2 - x2*x1");
  XPoly p2 = c12 * GRat(ratOf(1, 2), ratOf(1, 3));  // complex multiple stays in the span
  XPoly sos = involution(c12) * c12 + involution(p2) * p2;
  CHECK(isIdentity(sos, 1, 5));
  XPoly comm = rxp("x1*x1*x2 - x2*x1*x1");
  XPoly s = sos + comm + involution(comm);
  REQUIRE(isHermitian(s));
  // s - (its commutator part) is the identity component
  CHECK(isIdentity(s - comm - involution(comm), 1, 6));
}

TEST_CASE("is_identity") {
  CHECK(isIdentity(standardPoly(2), 2, 0));
  CHECK_FALSE(isIdentity(standardPoly(2), 3, 0));
  CHECK(isIdentity(rxp("x1*x2 - x2*x1"), 1, 0));
  CHECK(isIdentity(XPoly::zero(2), 2, 0));
  // witness magnitude for non-identities is visible
  CHECK(identityWitnessMagnitude(standardPoly(1), 2, 0) > 1e-6);
}

TEST_CASE("eval_generic") {
  CHECK(isZeroGenericMatrix(evalGeneric(rxp("x1*x2 - x2*x1"), 1)));
  CHECK(isZeroGenericMatrix(evalGeneric(standardPoly(2), 2)));
  // x1 x2 at k=1 is the product of the two scalar variables
  Mat<CommutativePoly> m = evalGeneric(rxp("x1*x2"), 1);
  REQUIRE(m.rows() == 1);
  CommutativePoly expect;
  expect.addTerm({1, 1}, GRat(1));
  CHECK(m(0, 0) == expect);
  // not an identity: nonzero symbolic matrix
  CHECK_FALSE(isZeroGenericMatrix(evalGeneric(rxp("x1*x2 - x2*x1"), 2)));
  CHECK_THROWS_AS(evalGeneric(standardPoly(4), 3), std::domain_error);
}

TEST_CASE("generic involution") {
  // (xi_ij)* = xi_ji, conjugate-linear, and an involution
  Mat<CommutativePoly> y = evalGeneric(rxp("x1*x2", 2), 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CommutativePoly p = y(i, j);
      CHECK(genericInvolution(genericInvolution(p, 2, 2), 2, 2) == p);
    }
  CommutativePoly v;
  std::vector<int> e(8, 0);
  e[static_cast<size_t>(genericVarIndex(0, 0, 1, 2))] = 1;
  v.addTerm(e, grI());
  CommutativePoly vs = genericInvolution(v, 2, 2);
  std::vector<int> et(8, 0);
  et[static_cast<size_t>(genericVarIndex(0, 1, 0, 2))] = 1;
  CommutativePoly expect;
  expect.addTerm(et, -grI());
  CHECK(vs == expect);
}

TEST_CASE("envelope limits error out") {
  CHECK_THROWS_AS(identityBasis(5, 2, 2, 0), std::domain_error);
  CHECK_THROWS_AS(identityBasis(2, 5, 2, 0), std::domain_error);
  CHECK_THROWS_AS(identityBasis(2, 2, 9, 0), std::domain_error);
}
