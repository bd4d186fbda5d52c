#ifndef PARIKH_VECTORS_HPP
#define PARIKH_VECTORS_HPP

#include <compare>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace parikh {

/// Vector of natural-number counts indexed by a fixed symbol ordering.
/// The tag keeps variable-indexed and terminal-indexed vectors apart at
/// compile time; they are never interchangeable.
template <typename Tag>
struct CountVector {
  std::vector<int> counts;

  CountVector() = default;
  explicit CountVector(std::size_t dim) : counts(dim, 0) {}
  CountVector(std::initializer_list<int> init) : counts(init) {}

  static CountVector zero(std::size_t dim) { return CountVector(dim); }

  static CountVector unit(std::size_t dim, std::size_t index) {
    CountVector v(dim);
    v.counts.at(index) = 1;
    return v;
  }

  std::size_t size() const { return counts.size(); }
  int operator[](std::size_t i) const { return counts[i]; }
  int& operator[](std::size_t i) { return counts[i]; }

  int sum() const { return std::accumulate(counts.begin(), counts.end(), 0); }
  bool is_zero() const { return sum() == 0; }

  CountVector& operator+=(const CountVector& other) {
    if (counts.size() != other.counts.size())
      throw std::invalid_argument("count vector dimension mismatch");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    return *this;
  }

  /// Entrywise difference; all entries must stay nonnegative.
  CountVector& operator-=(const CountVector& other) {
    if (counts.size() != other.counts.size())
      throw std::invalid_argument("count vector dimension mismatch");
    for (std::size_t i = 0; i < counts.size(); ++i) {
      counts[i] -= other.counts[i];
      if (counts[i] < 0) throw std::invalid_argument("count vector underflow");
    }
    return *this;
  }

  friend CountVector operator+(CountVector a, const CountVector& b) { return a += b; }
  friend CountVector operator-(CountVector a, const CountVector& b) { return a -= b; }

  auto operator<=>(const CountVector&) const = default;
};

struct VarDim {};
struct TermDim {};

/// Parikh projection onto the variable alphabet.
using VarVector = CountVector<VarDim>;
/// Parikh projection onto the terminal alphabet.
using TermVector = CountVector<TermDim>;

/// Renders "(0,2)" style vector literals, also used as DOT node names.
template <typename Tag>
std::string to_string(const CountVector<Tag>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v[i]);
  }
  out += ")";
  return out;
}

}  // namespace parikh

#endif
