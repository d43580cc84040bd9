#include "doctest.h"

#include "nct/norms.hpp"
#include "nct/parse.hpp"
#include "nct/rng.hpp"

using namespace nct;

namespace {

XPoly rxp(const std::string& s, int n = 0) {
  return parsePolynomial(s, n > 0 ? std::optional<int>(n) : std::nullopt);
}

CPoly randomElement(Rng& rng, int n) {
  CPoly p(n);
  for (const Word& w : wordsUpToDegree(n, 2))
    p.addTerm(w, std::complex<double>(rng.gaussian(), rng.gaussian()) * 0.5);
  return p;
}

}  // namespace

TEST_CASE("exponent functions") {
  CHECK(phiExponent(2) == 1);
  CHECK(phiExponent(4) == 2);
  CHECK(phiExponent(6) == 4);
  CHECK(phiExponent(7) == 8);  // odd rule
  CHECK(phiExponent(8) == 8);
  CHECK(psiExponent(4) == 4);
  CHECK(psiExponent(8) == 8);
  auto [q4, qp4] = theoremExponents(4);
  CHECK(q4 == 4);
  CHECK(qp4 == 8);
  auto [q8, qp8] = theoremExponents(8);
  CHECK(q8 == 8);
  CHECK(qp8 == 32);
  // q' = phi(p+4) for even p, q = psi(p) on multiples of four
  for (long p = 2; p <= 16; p += 2) {
    if (p % 4 == 0) {
      auto [q, qp] = theoremExponents(p);
      CHECK(qp == phiExponent(p + 4));
      CHECK(q == psiExponent(p));
    } else {
      CHECK_THROWS_AS(theoremExponents(p), std::domain_error);
    }
  }
  CHECK_THROWS_AS(phiExponent(0), std::domain_error);
  CHECK_THROWS_AS(psiExponent(3), std::domain_error);
}

TEST_CASE("p-norms") {
  // the unit has norm one everywhere
  MatrixTupleC t = randomSelfAdjointTupleC(3, 2, 17);
  for (long p : {2, 4, 8}) CHECK(pNorm(t, CPoly::unit(2), p) == doctest::Approx(1.0));

  // diag(1,-1) has all p-norms one
  MatrixTupleC z;
  z.k = 2;
  z.selfadjoint = true;
  Eigen::MatrixXcd zm(2, 2);
  zm << 1, 0, 0, -1;
  z.mats = {zm};
  CHECK(pNorm(z, toComplexPoly(rxp("x1")), 4) == doctest::Approx(1.0));

  // semicircular second moment
  TruncatedTrace sc = toFloat(semicircularTrace(1, 4));
  CHECK(pNorm(sc, toComplexPoly(rxp("x1")), 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(pNorm(sc, toComplexPoly(rxp("x1")), 6), std::out_of_range);
  CHECK_THROWS_AS(pNorm(sc, toComplexPoly(rxp("x1")), 3), std::domain_error);

  // invariance under involution and absolute homogeneity
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    CPoly a = randomElement(rng, 2);
    double na = pNorm(t, a, 4);
    CHECK(pNorm(t, involution(a), 4) == doctest::Approx(na).epsilon(1e-10));
    std::complex<double> lam(rng.gaussian(), rng.gaussian());
    CPoly la = a;
    la *= lam;
    CHECK(pNorm(t, la, 4) == doctest::Approx(std::abs(lam) * na).epsilon(1e-10));
  }
}

TEST_CASE("matrix p-norm equals the scaled Schatten norm") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    int k = static_cast<int>(rng.uniformInt(2, 5));
    MatrixTupleC t = randomSelfAdjointTupleC(k, 2, rng.next());
    CPoly a = randomElement(rng, 2);
    for (long p : {2, 4, 6, 8}) {
      double via_powers = pNorm(t, a, p);
      double via_eigs = schattenPNorm(evalPoly(a, t), p, k);
      CHECK(via_powers == doctest::Approx(via_eigs).epsilon(1e-10));
    }
  }
}

TEST_CASE("two-factor Cauchy-Schwarz achieves equality at a = b*") {
  Rng rng(41);
  MatrixTupleC t = randomSelfAdjointTupleC(3, 2, rng.next());
  CPoly a = randomElement(rng, 2);
  Eigen::MatrixXcd av = evalPoly(a, t);
  double lhs = std::abs((av * av.adjoint()).trace() / 3.0);
  double rhs = schattenPNorm(av, 2, 3) * schattenPNorm(av.adjoint(), 2, 3);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("norm monotonicity backs the b = 1 special cases") {
  // ||a||_p <= ||a||_q for p <= q under a normalized trace
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    int k = static_cast<int>(rng.uniformInt(2, 5));
    MatrixTupleC t = randomSelfAdjointTupleC(k, 2, rng.next());
    Eigen::MatrixXcd a = evalPoly(randomElement(rng, 2), t);
    for (long p : {2, 4, 6, 8}) {
      CHECK(schattenPNorm(a, p, k) <= schattenPNorm(a, phiExponent(p + 4), k) * (1 + 1e-12));
      if (p == 4 || p == 8)
        CHECK(schattenPNorm(a, p, k) <= schattenPNorm(a, psiExponent(p), k) * (1 + 1e-12));
    }
  }
}

TEST_CASE("identity elements give equality in the sum lemma") {
  // a_i = 1: lhs = s^r = rhs
  int s = 3, r = 4, k = 2;
  MatrixTupleC t = randomSelfAdjointTupleC(k, 2, 3);
  Eigen::MatrixXcd sum = static_cast<double>(s) * Eigen::MatrixXcd::Identity(k, k);
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(k, k);
  for (int i = 0; i < r; ++i) power = power * sum;
  double lhs = std::abs(power.trace() / static_cast<double>(k));
  double rhs = std::pow(static_cast<double>(s), static_cast<double>(r));
  CHECK(lhs == doctest::Approx(rhs));
}

TEST_CASE("verifier suites pass on moderate trial counts") {
  ViolationReport cs = verifyCauchySchwarz(6, 200, 1);
  CHECK(cs.pass);
  CHECK(cs.trials == 200);
  ViolationReport sum = verifySumLemma(6, 4, 200, 2);
  CHECK(sum.pass);
  ViolationReport hoe = verifyHoelder({2, 4, 6, 8}, 200, 3);
  CHECK(hoe.pass);
  ViolationReport mink = verifyMinkowski({4, 8}, 200, 4);
  CHECK(mink.pass);
  // slacks are strictly nonpositive: these are genuine inequalities
  CHECK(cs.worst_slack <= 1e-9);
  CHECK(sum.worst_slack <= 1e-9);
  CHECK(hoe.worst_slack <= 1e-9);
  CHECK(mink.worst_slack <= 1e-9);
}

TEST_CASE("kernel vectors are null for every defined p-norm") {
  // a 2x2 matrix model truncated at degree 8 has kernel vectors already at
  // order 2; their p-norms vanish for p = 2 and p = 4
  MatrixTupleC t = randomSelfAdjointTupleC(2, 2, 55);
  TruncatedTrace tau = traceFromMatrices(t, 8);
  auto kernel = traceKernel(tau, 2, 1e-9);
  REQUIRE(!kernel.empty());
  std::vector<Word> words = wordsUpToDegree(2, 2);
  for (const auto& v : kernel) {
    CPoly p(2);
    for (size_t j = 0; j < words.size(); ++j) p.addTerm(words[j], v[static_cast<long>(j)]);
    CHECK(pNorm(tau, p, 2) <= 1e-6);
    CHECK(pNorm(tau, p, 4) <= 1e-4);  // fourth root of a ~1e-16 moment
  }
}

TEST_CASE("trace_reduction") {
  // identity tuple, d = 1, n = 1: quotient is the span of the unit
  MatrixTupleC ones;
  ones.k = 2;
  ones.selfadjoint = true;
  ones.mats = {Eigen::MatrixXcd::Identity(2, 2)};
  TraceReduction r = traceReduction(traceFromMatrices(ones, 2), 1);
  REQUIRE(r.quotient_basis.size() == 1);
  CHECK(r.quotient_basis[0] == Word::unit());
  CHECK(r.min_eig > 1e-9);
  // x1 is identified with the unit
  CHECK(std::abs(r.representation(0, 1) - std::complex<double>(1.0, 0.0)) < 1e-9);

  // semicircular at order 2: trivial kernel, full quotient
  TraceReduction rs = traceReduction(toFloat(semicircularTrace(2, 4)), 2);
  CHECK(rs.quotient_basis.size() == 7);
  CHECK(rs.eliminated.empty());
  CHECK(rs.min_eig > 1e-6);

  // zero tuple: x1 is sent to zero
  MatrixTupleC zero;
  zero.k = 2;
  zero.selfadjoint = true;
  zero.mats = {Eigen::MatrixXcd::Zero(2, 2)};
  TraceReduction rz = traceReduction(traceFromMatrices(zero, 2), 1);
  REQUIRE(rz.quotient_basis.size() == 1);
  CHECK(rz.quotient_basis[0] == Word::unit());
  CHECK(std::abs(rz.representation(0, 1)) < 1e-9);
}
