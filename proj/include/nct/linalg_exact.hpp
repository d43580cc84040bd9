#ifndef NCT_LINALG_EXACT_HPP
#define NCT_LINALG_EXACT_HPP

#include <concepts>
#include <stdexcept>
#include <vector>

#include "nct/scalar.hpp"

namespace nct {

template <class S>
struct FieldOps;

template <>
struct FieldOps<Rat> {
  static bool isZero(const Rat& x) { return x == 0; }
  static Rat conj(const Rat& x) { return x; }
  static Rat inv(const Rat& x) { return Rat(1) / x; }
  static Rat one() { return Rat(1); }
};

template <>
struct FieldOps<GRat> {
  static bool isZero(const GRat& x) { return x.isZero(); }
  static GRat conj(const GRat& x) { return nct::conj(x); }
  static GRat inv(const GRat& x) { return GRat(1) / x; }
  static GRat one() { return GRat(1); }
};

// Minimal dense matrix for the exact backends (rational / Gaussian
// rational / commutative-polynomial entries). The floating layer uses
// Eigen; this type only has to support ring arithmetic.
template <class S>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int k, const S& one) {
    Mat m(k, k);
    for (int i = 0; i < k; ++i) m(i, i) = one;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  Mat& operator+=(const Mat& o) {
    checkSameShape(o);
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    checkSameShape(o);
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if constexpr (requires(const S& s) { { s.isZero() } -> std::convertible_to<bool>; }) {
          if (aik.isZero()) continue;
        }
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  Mat scaled(const S& c) const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * c;
    return r;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void checkSameShape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat: shape mismatch");
  }
  int rows_ = 0, cols_ = 0;
  std::vector<S> data_;
};

template <class S>
Mat<S> adjointOf(const Mat<S>& m) {
  Mat<S> r(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(j, i) = FieldOps<S>::conj(m(i, j));
  return r;
}

template <class S>
bool isZeroMat(const Mat<S>& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!FieldOps<S>::isZero(m(i, j))) return false;
  return true;
}

template <class S>
S traceOf(const Mat<S>& m) {
  S t{};
  for (int i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// In-place reduced row echelon form over an exact field. Columns are
// visited in the order given by col_order (defaults to natural order).
// Returns the pivot columns in elimination order.
template <class S>
std::vector<int> rref(Mat<S>& a, const std::vector<int>* col_order = nullptr) {
  std::vector<int> order;
  if (col_order) {
    order = *col_order;
  } else {
    order.resize(static_cast<size_t>(a.cols()));
    for (int j = 0; j < a.cols(); ++j) order[static_cast<size_t>(j)] = j;
  }
  std::vector<int> pivots;
  int row = 0;
  for (int oc : order) {
    if (row >= a.rows()) break;
    int pr = -1;
    for (int i = row; i < a.rows(); ++i)
      if (!FieldOps<S>::isZero(a(i, oc))) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(pr, j), a(row, j));
    S piv_inv = FieldOps<S>::inv(a(row, oc));
    for (int j = 0; j < a.cols(); ++j) a(row, j) *= piv_inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || FieldOps<S>::isZero(a(i, oc))) continue;
      S f = a(i, oc);
      for (int j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(oc);
    ++row;
  }
  return pivots;
}

// Nullspace basis of a (as column vectors), via RREF. One basis vector per
// free column, normalized with a 1 in the free coordinate.
template <class S>
std::vector<std::vector<S>> nullspace(Mat<S> a, const std::vector<int>* col_order = nullptr) {
  std::vector<int> pivots = rref(a, col_order);
  std::vector<int> pivot_row_of(static_cast<size_t>(a.cols()), -1);
  for (size_t r = 0; r < pivots.size(); ++r) pivot_row_of[static_cast<size_t>(pivots[r])] = static_cast<int>(r);
  std::vector<std::vector<S>> basis;
  for (int j = 0; j < a.cols(); ++j) {
    if (pivot_row_of[static_cast<size_t>(j)] >= 0) continue;
    std::vector<S> v(static_cast<size_t>(a.cols()));
    v[static_cast<size_t>(j)] = FieldOps<S>::one();
    for (int pc = 0; pc < a.cols(); ++pc) {
      int r = pivot_row_of[static_cast<size_t>(pc)];
      if (r >= 0) v[static_cast<size_t>(pc)] = -a(r, j);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Exact PSD test for a hermitian matrix over Gaussian rationals, by
// symmetric Gaussian elimination: a hermitian PSD matrix with a zero
// diagonal entry must have the whole corresponding row zero.
bool exactPsdCheck(Mat<GRat> a);

}  // namespace nct

#endif
