#pragma once

#include <string>
#include <vector>

namespace oforge {

// Permutation of {1..n}. Elements act on the right: (x * sigma) * tau
// == x * (sigma.then_right(tau)), and for an operation x with n inputs,
// input k of x*sigma is input sigma(k) of x.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);  // images[k-1] = sigma(k)
  static Perm identity(int n);
  static Perm transposition(int n, int a, int b);

  int n() const { return static_cast<int>(img_.size()); }
  int operator()(int k) const { return img_[k - 1]; }
  bool is_identity() const;

  Perm inverse() const;
  std::string str() const;  // "[2 1 3]"
  // Product st with (st)(k) = s(t(k)); satisfies (x*s)*t == x*(s given t).
  friend Perm operator*(const Perm& s, const Perm& t);

  bool operator==(const Perm&) const = default;

 private:
  std::vector<int> img_;
};

// All permutations of {1..n} in lexicographic order of their image vectors.
std::vector<Perm> all_perms(int n);

// Adjacent transpositions (1 2), (2 3), ... (n-1 n); generators of S_n.
std::vector<Perm> adjacent_transpositions(int n);

// The permutation of {1..n1+...+nk} that permutes k consecutive blocks of the
// given sizes the way sigma permutes {1..k}: block j of the result is block
// sigma(j) of the source. Satisfies
//   compose(u*sigma; v_1..v_k) == compose(u; v_sigma(1)..v_sigma(k)) * result.
Perm block_perm(const Perm& sigma, const std::vector<int>& sizes);

}  // namespace oforge
