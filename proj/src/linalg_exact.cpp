#include "nct/linalg_exact.hpp"

namespace nct {

// Symmetric elimination: pick a positive diagonal pivot, form the Schur
// complement, repeat. A hermitian PSD matrix with a zero diagonal entry has
// the whole corresponding row zero, and a negative diagonal entry refutes.
bool exactPsdCheck(Mat<GRat> a) {
  int n = a.rows();
  std::vector<bool> active(static_cast<size_t>(n), true);
  for (;;) {
    int pivot = -1;
    for (int i = 0; i < n; ++i) {
      if (!active[static_cast<size_t>(i)]) continue;
      const GRat& d = a(i, i);
      if (!(d.im == 0)) return false;  // not hermitian
      if (d.re < 0) return false;
      if (d.re > 0 && pivot < 0) pivot = i;
    }
    if (pivot < 0) {
      // all remaining diagonal entries are zero
      for (int i = 0; i < n; ++i) {
        if (!active[static_cast<size_t>(i)]) continue;
        for (int j = 0; j < n; ++j)
          if (active[static_cast<size_t>(j)] && !a(i, j).isZero()) return false;
      }
      return true;
    }
    GRat inv_d = GRat(1) / a(pivot, pivot);
    active[static_cast<size_t>(pivot)] = false;
    for (int i = 0; i < n; ++i) {
      if (!active[static_cast<size_t>(i)] || a(i, pivot).isZero()) continue;
      GRat f = a(i, pivot) * inv_d;
      for (int j = 0; j < n; ++j)
        if (active[static_cast<size_t>(j)]) a(i, j) -= f * a(pivot, j);
    }
    for (int j = 0; j < n; ++j)
      if (active[static_cast<size_t>(j)]) a(pivot, j) = GRat(0);
  }
}

}  // namespace nct
