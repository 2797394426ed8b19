#include "oforge/perm.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace oforge {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
#ifndef NDEBUG
  std::vector<int> seen(img_.size(), 0);
  for (int v : img_) {
    assert(v >= 1 && v <= static_cast<int>(img_.size()));
    assert(!seen[v - 1]++);
  }
#endif
}

Perm Perm::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return Perm(std::move(img));
}

Perm Perm::transposition(int n, int a, int b) {
  Perm p = identity(n);
  std::swap(p.img_[a - 1], p.img_[b - 1]);
  return p;
}

bool Perm::is_identity() const {
  for (int k = 1; k <= n(); ++k)
    if (img_[k - 1] != k) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> img(img_.size());
  for (int k = 1; k <= n(); ++k) img[img_[k - 1] - 1] = k;
  return Perm(std::move(img));
}

std::string Perm::str() const {
  std::string s = "[";
  for (int k = 1; k <= n(); ++k) {
    if (k > 1) s += " ";
    s += std::to_string(img_[k - 1]);
  }
  return s + "]";
}

Perm operator*(const Perm& s, const Perm& t) {
  assert(s.n() == t.n());
  std::vector<int> img(s.img_.size());
  for (int k = 1; k <= s.n(); ++k) img[k - 1] = s(t(k));
  return Perm(std::move(img));
}

std::vector<Perm> all_perms(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::vector<Perm> out;
  do {
    out.push_back(Perm(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

std::vector<Perm> adjacent_transpositions(int n) {
  std::vector<Perm> out;
  for (int a = 1; a < n; ++a) out.push_back(Perm::transposition(n, a, a + 1));
  return out;
}

Perm block_perm(const Perm& sigma, const std::vector<int>& sizes) {
  assert(sigma.n() == static_cast<int>(sizes.size()));
  int k = sigma.n();
  // Offsets in the permuted concatenation, where position j holds block
  // sigma(j).
  std::vector<int> S(k + 1, 0);
  for (int j = 1; j <= k; ++j) S[j] = S[j - 1] + sizes[sigma(j) - 1];
  Perm inv = sigma.inverse();
  std::vector<int> img;
  img.reserve(S[k]);
  for (int p = 1; p <= k; ++p) {
    int j = inv(p);
    for (int r = 1; r <= sizes[p - 1]; ++r) img.push_back(S[j - 1] + r);
  }
  return Perm(std::move(img));
}

}  // namespace oforge
