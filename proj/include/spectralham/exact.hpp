#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spectralham/graph.hpp"

namespace spectralham {

enum class MatrixKind { adjacency, signless_laplacian };

const char* to_string(MatrixKind kind);

/// Exact rational with positive denominator, always in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num) : num_(num) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

class TimeBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Deadline {
 public:
  Deadline() = default;
  static Deadline after(std::chrono::duration<double> budget);

  bool expired() const;
  void check(const char* what) const;

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

/// Dense symmetric matrix of 64-bit integers, row-major.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t n = 0) : n_(n), data_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  bool is_symmetric() const;

 private:
  std::size_t n_;
  std::vector<std::int64_t> data_;
};

/// Q(G) = D + A or A(G).
IntMatrix graph_matrix(const Graph& g, MatrixKind kind);

struct Inertia {
  std::size_t positive = 0;
  std::size_t zero = 0;
  std::size_t negative = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Exact inertia of a symmetric integer matrix.
///
/// Fraction-free (Bareiss) symmetric elimination over arbitrary-precision
/// integers. Pivots are taken from the diagonal of the trailing block; when
/// that diagonal is entirely zero but an off-diagonal entry (i,j) is not,
/// row/column j is added to row/column i first (a unimodular congruence),
/// which makes the (i,i) entry nonzero. The working entries remain minors of
/// the transformed matrix, so every division is exact, and the sign of each
/// pivot of the LDL^T factor is sign(D_r) * sign(D_{r-1}).
Inertia integer_inertia(const IntMatrix& m, const Deadline& deadline = {});

/// Inertia of K - t I, for K = Q(G) or A(G), evaluated as den*K - num*I.
Inertia shifted_inertia(const Graph& g, MatrixKind kind, const Rational& t,
                        const Deadline& deadline = {});

}  // namespace spectralham
