#ifndef GHK_MULTIINDEX_HPP
#define GHK_MULTIINDEX_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <numeric>
#include <span>
#include <vector>

#include "ghk/errors.hpp"
#include "ghk/scalar.hpp"

namespace ghk {

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

/// Binomial coefficient, zero when k > n.
inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Tuple of naturals (m_1, ..., m_n), n >= 1.
class MultiIndex {
public:
  explicit MultiIndex(std::vector<unsigned> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw dimension_mismatch("a multi-index needs at least one part");
  }
  MultiIndex(std::initializer_list<unsigned> parts) : MultiIndex(std::vector<unsigned>(parts)) {}

  std::size_t size() const { return parts_.size(); }
  unsigned operator[](std::size_t i) const { return parts_[i]; }
  std::span<const unsigned> parts() const { return parts_; }

  /// |m| = m_1 + ... + m_n.
  unsigned length() const { return std::accumulate(parts_.begin(), parts_.end(), 0u); }

  /// m! = m_1! ... m_n!.
  BigInt factorial() const {
    BigInt r = 1;
    for (unsigned p : parts_) r *= ghk::factorial(p);
    return r;
  }

  /// x^m = x_1^{m_1} ... x_n^{m_n}.
  Scalar power(std::span<const Scalar> x) const {
    if (x.size() != parts_.size()) throw dimension_mismatch("multi-index power: dimension mismatch");
    Scalar r = Scalar::one(x.front().mode());
    for (std::size_t i = 0; i < parts_.size(); ++i) r *= x[i].pow(parts_[i]);
    return r;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
  friend class CompositionRange;
  std::vector<unsigned> parts_;
};

inline unsigned mi_length(const MultiIndex& m) { return m.length(); }
inline BigInt mi_factorial(const MultiIndex& m) { return m.factorial(); }

/// All multi-indices of n parts with length M, in lexicographically
/// descending order: (M,0,...,0) first, (0,...,0,M) last.
class CompositionRange {
public:
  class iterator {
  public:
    using value_type = MultiIndex;
    using difference_type = std::ptrdiff_t;
    using reference = const MultiIndex&;
    using pointer = const MultiIndex*;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++() {
      advance();
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      advance();
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

  private:
    friend class CompositionRange;
    iterator(unsigned total, std::size_t n) : current_(initial(total, n)), done_(false) {}

    static std::vector<unsigned> initial(unsigned total, std::size_t n) {
      std::vector<unsigned> p(n, 0);
      p[0] = total;
      return p;
    }

    // Move the tail mass plus one unit from the rightmost non-zero
    // non-final part into its right neighbour.
    void advance() {
      auto& p = current_.parts_;
      const std::size_t n = p.size();
      const unsigned tail = p[n - 1];
      p[n - 1] = 0;
      std::size_t i = n - 1;
      while (i > 0 && p[i - 1] == 0) --i;
      if (i == 0) {
        done_ = true;
        return;
      }
      --p[i - 1];
      p[i] = tail + 1;
    }

    MultiIndex current_{0};
    bool done_ = true;
  };

  CompositionRange(unsigned total, std::size_t n) : total_(total), n_(n) {
    if (n == 0) throw dimension_mismatch("compositions need n >= 1");
  }
  iterator begin() const { return iterator(total_, n_); }
  iterator end() const { return iterator(); }

private:
  unsigned total_;
  std::size_t n_;
};

inline CompositionRange compositions(unsigned total, std::size_t n) { return CompositionRange(total, n); }

/// Multinomial coefficient m! / (m_1! ... m_n!).
inline BigInt multinomial(unsigned m, const MultiIndex& parts) {
  if (parts.length() != m) throw dimension_mismatch("multinomial: parts do not sum to m");
  return factorial(m) / parts.factorial();
}

/// Rising factorial a(a+1)...(a+j-1); 1 for j = 0.
inline Scalar pochhammer(const Scalar& a, unsigned j) {
  Scalar r = Scalar::one(a.mode());
  for (unsigned k = 0; k < j; ++k) r *= a + Scalar::from_int(k, a.mode());
  return r;
}

} // namespace ghk

#endif
