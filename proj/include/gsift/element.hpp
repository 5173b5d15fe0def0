#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsift {

enum class ElementKind : uint8_t { permutation, matrix };

// A black-box group element: a permutation of {0,...,n-1} or an invertible
// n x n matrix over GF(p), p prime. One flat payload keeps elements cheap to
// hash and compare regardless of kind.
class Element {
 public:
  Element() = default;

  // images[i] = image of point i (0-based)
  static Element permutation(std::vector<uint32_t> images);
  static Element identity_permutation(uint32_t degree);
  // row-major entries, reduced mod prime
  static Element matrix(uint32_t dim, uint32_t prime, std::vector<uint32_t> entries);
  static Element identity_matrix(uint32_t dim, uint32_t prime);
  static Element identity_like(const Element& g);

  ElementKind kind() const { return kind_; }
  uint32_t degree() const { return n_; }  // points, or matrix dimension
  uint32_t field() const { return p_; }   // 0 for permutations
  const std::vector<uint32_t>& data() const { return v_; }
  bool is_identity() const;
  uint64_t hash() const;
  std::string str() const;

  friend bool operator==(const Element& a, const Element& b) {
    return a.kind_ == b.kind_ && a.n_ == b.n_ && a.p_ == b.p_ && a.v_ == b.v_;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
  // arbitrary total order; used for canonical picks, not for math
  friend bool operator<(const Element& a, const Element& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.p_ != b.p_) return a.p_ < b.p_;
    return a.v_ < b.v_;
  }

 private:
  Element(ElementKind k, uint32_t n, uint32_t p, std::vector<uint32_t> v)
      : kind_(k), n_(n), p_(p), v_(std::move(v)) {}

  ElementKind kind_ = ElementKind::permutation;
  uint32_t n_ = 0;
  uint32_t p_ = 0;
  std::vector<uint32_t> v_;
};

// ab means "apply a, then b" for permutations: (ab)[i] = b[a[i]]. For
// matrices it is the ordinary product ab, which matches that convention for
// row vectors acting on the right.
Element multiply(const Element& a, const Element& b);
Element inverse(const Element& a);

struct ElementHash {
  uint64_t operator()(const Element& g) const { return g.hash(); }
};

}  // namespace gsift
