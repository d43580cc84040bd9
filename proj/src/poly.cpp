#include "nct/poly.hpp"

namespace nct {

Multilinearization multilinearize(const XPoly& p) {
  if (p.isZero()) throw std::invalid_argument("multilinearize: zero polynomial has no multidegree");
  const int n = p.alphabetSize();
  std::vector<int> mdeg = p.terms().begin()->first.multidegree(n);
  for (const auto& [w, c] : p.terms())
    if (w.multidegree(n) != mdeg)
      throw std::invalid_argument("multilinearize: input is not homogeneous of a single multidegree");

  int m = 0;
  std::vector<int> offset(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    offset[static_cast<size_t>(i)] = m;
    m += mdeg[static_cast<size_t>(i)];
  }
  if (m == 0) throw std::invalid_argument("multilinearize: constant polynomial");

  // split letter i into its group of fresh variables
  std::vector<XPoly> subs;
  for (int i = 0; i < n; ++i) {
    XPoly s(m);
    for (int t = 0; t < mdeg[static_cast<size_t>(i)]; ++t)
      s += XPoly::letter(m, offset[static_cast<size_t>(i)] + t);
    if (mdeg[static_cast<size_t>(i)] == 0) s = XPoly::zero(m);
    subs.push_back(std::move(s));
  }
  XPoly full = substitute(p, subs);

  // keep the multidegree-(1,...,1) part
  Multilinearization out{XPoly::zero(m), mdeg};
  for (const auto& [w, c] : full.terms()) {
    if (w.degree() != m) continue;
    std::vector<int> counts = w.multidegree(m);
    bool multilinear = true;
    for (int cval : counts)
      if (cval != 1) {
        multilinear = false;
        break;
      }
    if (multilinear) out.poly.addTerm(w, c);
  }
  return out;
}

}  // namespace nct
