#include "nct/cyclic.hpp"

#include <stdexcept>

namespace nct {

Word canonicalRotation(const Word& w) {
  int d = w.degree();
  if (d <= 1) return w;
  // Booth's algorithm on the doubled word
  const auto& s = w.letters();
  std::vector<int> f(static_cast<size_t>(2 * d), -1);
  int k = 0;
  for (int j = 1; j < 2 * d; ++j) {
    int sj = s[static_cast<size_t>(j % d)];
    int i = f[static_cast<size_t>(j - k - 1)];
    while (i != -1 && sj != s[static_cast<size_t>((k + i + 1) % d)]) {
      if (sj < s[static_cast<size_t>((k + i + 1) % d)]) k = j - i - 1;
      i = f[static_cast<size_t>(i)];
    }
    if (i == -1 && sj != s[static_cast<size_t>((k + i + 1) % d)]) {
      if (sj < s[static_cast<size_t>((k + i + 1) % d)]) k = j;
      f[static_cast<size_t>(j - k)] = -1;
    } else {
      f[static_cast<size_t>(j - k)] = i + 1;
    }
  }
  return w.rotated(k);
}

std::pair<XPoly, XPoly> hermitianSplit(const XPoly& p) {
  XPoly ps = involution(p);
  GRat half(Rat(1, 2));
  GRat minus_half_i(Rat(0), Rat(-1, 2));  // 1/(2i) = -i/2
  XPoly p1 = (p + ps) * half;
  XPoly p2 = (p - ps) * minus_half_i;
  return {std::move(p1), std::move(p2)};
}

std::shared_ptr<const ClassIndex> ClassIndex::build(int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("ClassIndex: need n >= 1, m >= 0");
  auto idx = std::shared_ptr<ClassIndex>(new ClassIndex());
  idx->n_ = n;
  idx->m_ = m;
  for (const Word& w : wordsUpToDegree(n, m)) {
    if (canonicalRotation(w) != w) continue;  // one representative per class
    idx->lookup_.emplace(w, static_cast<int>(idx->classes_.size()));
    idx->classes_.push_back(w);
  }
  int count = static_cast<int>(idx->classes_.size());
  idx->pairing_.resize(static_cast<size_t>(count));
  idx->re_slot_.assign(static_cast<size_t>(count), -1);
  idx->im_slot_.assign(static_cast<size_t>(count), -1);
  for (int c = 0; c < count; ++c) {
    Word star = canonicalRotation(idx->classes_[static_cast<size_t>(c)].reversed());
    idx->pairing_[static_cast<size_t>(c)] = idx->classOfCanonical(star);
  }
  int slot = 0;
  for (int c = 0; c < count; ++c) {
    int partner = idx->pairing_[static_cast<size_t>(c)];
    if (partner == c) {
      idx->re_slot_[static_cast<size_t>(c)] = slot++;
    } else if (c < partner) {
      idx->re_slot_[static_cast<size_t>(c)] = slot++;
      idx->im_slot_[static_cast<size_t>(c)] = slot++;
    }
  }
  idx->real_dim_ = slot;
  return idx;
}

int ClassIndex::classOfCanonical(const Word& canonical) const {
  auto it = lookup_.find(canonical);
  if (it == lookup_.end())
    throw std::out_of_range("ClassIndex: word of degree beyond truncation: " + canonical.str());
  return it->second;
}

}  // namespace nct
