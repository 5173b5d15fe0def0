#include "gsift/element.hpp"

#include <sstream>
#include <stdexcept>

namespace gsift {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// extended Euclid; p prime and 0 < a < p
uint32_t field_inverse(uint32_t a, uint32_t p) {
  int64_t t = 0, new_t = 1;
  int64_t r = p, new_r = a;
  while (new_r != 0) {
    int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::domain_error("field element not invertible");
  if (t < 0) t += p;
  return static_cast<uint32_t>(t);
}

}  // namespace

Element Element::permutation(std::vector<uint32_t> images) {
  uint32_t n = static_cast<uint32_t>(images.size());
  require(n > 0, "empty permutation");
  std::vector<bool> seen(n, false);
  for (uint32_t x : images) {
    require(x < n, "permutation image out of range");
    require(!seen[x], "permutation repeats an image");
    seen[x] = true;
  }
  return Element(ElementKind::permutation, n, 0, std::move(images));
}

Element Element::identity_permutation(uint32_t degree) {
  std::vector<uint32_t> v(degree);
  for (uint32_t i = 0; i < degree; ++i) v[i] = i;
  return Element(ElementKind::permutation, degree, 0, std::move(v));
}

Element Element::matrix(uint32_t dim, uint32_t prime, std::vector<uint32_t> entries) {
  require(dim > 0, "empty matrix");
  require(prime >= 2, "matrix field needs a prime modulus");
  require(prime < (1u << 20), "matrix modulus too large");
  require(entries.size() == static_cast<size_t>(dim) * dim, "matrix entry count mismatch");
  for (uint32_t& x : entries) x %= prime;
  return Element(ElementKind::matrix, dim, prime, std::move(entries));
}

Element Element::identity_matrix(uint32_t dim, uint32_t prime) {
  std::vector<uint32_t> v(static_cast<size_t>(dim) * dim, 0);
  for (uint32_t i = 0; i < dim; ++i) v[static_cast<size_t>(i) * dim + i] = 1;
  return Element::matrix(dim, prime, std::move(v));
}

Element Element::identity_like(const Element& g) {
  return g.kind() == ElementKind::permutation ? identity_permutation(g.degree())
                                              : identity_matrix(g.degree(), g.field());
}

bool Element::is_identity() const {
  if (kind_ == ElementKind::permutation) {
    for (uint32_t i = 0; i < n_; ++i)
      if (v_[i] != i) return false;
    return true;
  }
  for (uint32_t i = 0; i < n_; ++i)
    for (uint32_t j = 0; j < n_; ++j)
      if (v_[static_cast<size_t>(i) * n_ + j] != (i == j ? 1u : 0u)) return false;
  return true;
}

uint64_t Element::hash() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(static_cast<uint64_t>(kind_));
  mix(n_);
  mix(p_);
  for (uint32_t x : v_) mix(x);
  return h;
}

std::string Element::str() const {
  std::ostringstream out;
  if (kind_ == ElementKind::permutation) {
    out << "perm[";
    for (uint32_t i = 0; i < n_; ++i) out << (i ? " " : "") << v_[i] + 1;
    out << "]";
  } else {
    out << "mat" << n_ << "/GF(" << p_ << ")[";
    for (size_t i = 0; i < v_.size(); ++i) out << (i ? " " : "") << v_[i];
    out << "]";
  }
  return out.str();
}

Element multiply(const Element& a, const Element& b) {
  if (a.kind() != b.kind() || a.degree() != b.degree() || a.field() != b.field())
    throw std::invalid_argument("multiplying incompatible elements");
  uint32_t n = a.degree();
  if (a.kind() == ElementKind::permutation) {
    std::vector<uint32_t> v(n);
    const auto& av = a.data();
    const auto& bv = b.data();
    for (uint32_t i = 0; i < n; ++i) v[i] = bv[av[i]];
    return Element::permutation(std::move(v));
  }
  uint64_t p = a.field();
  const auto& av = a.data();
  const auto& bv = b.data();
  std::vector<uint32_t> v(static_cast<size_t>(n) * n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t k = 0; k < n; ++k) {
      uint64_t aik = av[static_cast<size_t>(i) * n + k];
      if (aik == 0) continue;
      uint64_t acc;
      for (uint32_t j = 0; j < n; ++j) {
        acc = v[static_cast<size_t>(i) * n + j] + aik * bv[static_cast<size_t>(k) * n + j];
        v[static_cast<size_t>(i) * n + j] = static_cast<uint32_t>(acc % p);
      }
    }
  }
  return Element::matrix(n, a.field(), std::move(v));
}

Element inverse(const Element& a) {
  uint32_t n = a.degree();
  if (a.kind() == ElementKind::permutation) {
    std::vector<uint32_t> v(n);
    for (uint32_t i = 0; i < n; ++i) v[a.data()[i]] = i;
    return Element::permutation(std::move(v));
  }
  // Gauss-Jordan over GF(p)
  uint64_t p = a.field();
  std::vector<uint32_t> m = a.data();
  std::vector<uint32_t> inv = Element::identity_matrix(n, a.field()).data();
  auto at = [n](std::vector<uint32_t>& v, uint32_t i, uint32_t j) -> uint32_t& {
    return v[static_cast<size_t>(i) * n + j];
  };
  for (uint32_t col = 0; col < n; ++col) {
    uint32_t pivot = col;
    while (pivot < n && at(m, pivot, col) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    if (pivot != col) {
      for (uint32_t j = 0; j < n; ++j) {
        std::swap(at(m, pivot, j), at(m, col, j));
        std::swap(at(inv, pivot, j), at(inv, col, j));
      }
    }
    uint64_t scale = field_inverse(at(m, col, col), a.field());
    for (uint32_t j = 0; j < n; ++j) {
      at(m, col, j) = static_cast<uint32_t>(at(m, col, j) * scale % p);
      at(inv, col, j) = static_cast<uint32_t>(at(inv, col, j) * scale % p);
    }
    for (uint32_t row = 0; row < n; ++row) {
      if (row == col) continue;
      uint64_t f = at(m, row, col);
      if (f == 0) continue;
      for (uint32_t j = 0; j < n; ++j) {
        at(m, row, j) = static_cast<uint32_t>((at(m, row, j) + (p - at(m, col, j)) * f) % p);
        at(inv, row, j) = static_cast<uint32_t>((at(inv, row, j) + (p - at(inv, col, j)) * f) % p);
      }
    }
  }
  return Element::matrix(n, a.field(), std::move(inv));
}

}  // namespace gsift
