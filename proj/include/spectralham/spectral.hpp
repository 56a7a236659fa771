#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectralham/exact.hpp"
#include "spectralham/graph.hpp"

namespace spectralham {

struct SpectralConfig {
  double tol = 1e-9;
  std::size_t max_matvecs = 1'000'000;
  /// LOBPCG iterations on one component before the dense fallback.
  std::size_t iteration_limit = 4000;
  /// Components up to this size fall back to dense Jacobi.
  std::size_t dense_limit = 600;
};

/// Largest eigenvalue with a certified enclosure lo <= lambda_max <= hi.
///
/// lo is the Rayleigh quotient of `vector` (rounded down); hi is the
/// Collatz-Wielandt bound max_v (Mx)_v / x_v of each component's positive
/// iterate (rounded up). `vector` is scaled so its largest entry is 1.
struct EigenEstimate {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double residual = 0.0;
  std::vector<double> vector;
  bool converged = false;
  std::size_t matvecs = 0;
  std::string engine;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

EigenEstimate extreme_eigen(const Graph& g, MatrixKind kind, const SpectralConfig& cfg = {});
EigenEstimate q_max(const Graph& g, const SpectralConfig& cfg = {});
EigenEstimate lambda_max(const Graph& g, const SpectralConfig& cfg = {});

IntMatrix signless_laplacian(const Graph& g);

/// <Mx, x> for M = Q(G) or A(G).
double quadratic_form(const Graph& g, MatrixKind kind, std::span<const double> x);
/// <Qx, x> / <x, x>; throws std::invalid_argument on the zero vector.
double rayleigh(const Graph& g, std::span<const double> x);
double rayleigh(const Graph& g, MatrixKind kind, std::span<const double> x);
/// <Q(g1)x, x> - <Q(g2)x, x>; the graphs must have the same order.
double quadratic_form_delta(const Graph& g1, const Graph& g2, std::span<const double> x);

/// 2e/(n-1) + n - 2, an upper bound on q for every graph of order n >= 2.
double fy_bound(const Graph& g);
/// e/n + n for a balanced bipartite graph on 2n vertices.
double ln_bipartite_bound(const Graph& g);

/// max_v |(q - d(v)) f_v - sum_{u ~ v} f_u| for a Q-estimate.
double eigen_identity_residual(const Graph& g, const EigenEstimate& est);

/// |(q - d(u))(f_u - f_v) - [(d(u) - d(v)) f_v + sum_{N(u)\N(v)} f - sum_{N(v)\N(u)} f]|.
double eigvec_difference_residual(const Graph& g, const EigenEstimate& est, Vertex u, Vertex v);

enum class Relation { less, equal, greater, undecided };
enum class CompareMethod { exact_inertia, certified_interval, exact_count, isomorphism };

const char* to_string(Relation r);
const char* to_symbol(Relation r);
const char* to_string(CompareMethod m);

struct ThresholdVerdict {
  Relation relation = Relation::undecided;
  /// Exact threshold when one exists (integer/rational comparisons).
  std::optional<Rational> threshold;
  double threshold_value = 0.0;
  CompareMethod method = CompareMethod::certified_interval;
  /// Distance between the certified interval and the threshold (0 if they meet).
  double margin = 0.0;
  std::string detail;

  bool at_least() const { return relation == Relation::greater || relation == Relation::equal; }
};

enum class ComparePolicy {
  exact,      ///< exact inertia whenever the order is within the cap
  automatic,  ///< certified interval when its margin exceeds `margin`, else exact
};

struct CompareConfig {
  ComparePolicy policy = ComparePolicy::exact;
  std::size_t exact_cap = 600;
  double tol = 1e-9;
  double margin = 1e-6;
  Deadline deadline;
};

class UndecidableComparison : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relation of the largest eigenvalue of Q(G) or A(G) to t. Never throws on
/// undecidability; reports Relation::undecided instead.
ThresholdVerdict try_compare_threshold(const Graph& g, MatrixKind kind, const Rational& t,
                                       const CompareConfig& cfg = {});

/// As above for Q(G); throws UndecidableComparison when neither the exact
/// path nor the certified interval settles the relation.
ThresholdVerdict compare_q_threshold(const Graph& g, const Rational& t, const CompareConfig& cfg = {});
ThresholdVerdict compare_lambda_threshold(const Graph& g, const Rational& t,
                                          const CompareConfig& cfg = {});

/// Relation of a to b from certified intervals.
ThresholdVerdict compare_estimates(const EigenEstimate& a, const EigenEstimate& b);

/// Cyclic Jacobi on a dense symmetric matrix (row-major). Eigenvalues come
/// back in decreasing order; vectors[i] belongs to values[i].
struct DenseEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};
DenseEigen jacobi_eigen(std::vector<double> a, std::size_t n);

}  // namespace spectralham
