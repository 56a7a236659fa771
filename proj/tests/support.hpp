#pragma once

// Test-side generators and independent oracles.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "spectralham/exact.hpp"
#include "spectralham/graph.hpp"

namespace testing_support {

using namespace spectralham;

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) es.push_back({u, v});
  return make_graph(n, es);
}

inline Graph random_connected_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 1; i < n; ++i) {
    const Vertex a = order[i];
    const Vertex b = order[std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)];
    adj[a][b] = adj[b][a] = true;
  }
  std::bernoulli_distribution coin(p);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) adj[u][v] = adj[v][u] = true;
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (adj[u][v]) es.push_back({u, v});
  return make_graph(n, es);
}

inline std::vector<Vertex> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Integer matrix of Q(G) or A(G) as plain vectors.
inline std::vector<std::vector<mpz_class>> dense(const Graph& g, MatrixKind kind) {
  const std::size_t n = g.order();
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, 0));
  for (Vertex u = 0; u < n; ++u) {
    if (kind == MatrixKind::signless_laplacian) m[u][u] = static_cast<unsigned long>(g.degree(u));
    for (Vertex v = 0; v < n; ++v)
      if (u != v && g.adjacent(u, v)) m[u][v] = 1;
  }
  return m;
}

/// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier; c[i] is the
/// coefficient of x^i.
inline std::vector<mpz_class> charpoly(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  std::vector<mpz_class> c(n + 1, 0);
  c[n] = 1;
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    // m <- a*m + c[n-k+1] I
    std::vector<std::vector<mpz_class>> am(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) am[i][j] += a[i][l] * m[l][j];
      }
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = std::move(am);
    mpz_class trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) trace += a[i][l] * m[l][i];
    c[n - k] = -trace / static_cast<unsigned long>(k);
  }
  return c;
}

struct RootCount {
  std::size_t above = 0;
  std::size_t equal = 0;
};

/// Roots above / equal to t of a real-rooted polynomial: Descartes' rule is
/// exact after the Taylor shift x -> y + t.
inline RootCount roots_relative_to(const std::vector<mpz_class>& c, const mpq_class& t) {
  std::vector<mpq_class> s(c.begin(), c.end());
  const std::size_t n = s.size() - 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n - 1; j >= i && j < n; --j) s[j] += t * s[j + 1];
  RootCount r;
  std::size_t lead = 0;
  while (lead < s.size() && s[lead] == 0) ++lead;
  r.equal = lead;
  int last = 0;
  for (std::size_t i = lead; i < s.size(); ++i) {
    const int sign = sgn(s[i]);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++r.above;
    last = sign;
  }
  return r;
}

/// Bisection bracket [lo, hi] of the largest eigenvalue, hi - lo <= width.
inline std::pair<mpq_class, mpq_class> bisect_largest(const Graph& g, MatrixKind kind, double width) {
  const auto poly = charpoly(dense(g, kind));
  mpq_class lo = kind == MatrixKind::adjacency ? mpq_class(-1) : mpq_class(0);
  std::size_t maxdeg = 0;
  for (Vertex v = 0; v < g.order(); ++v) maxdeg = std::max(maxdeg, g.degree(v));
  mpq_class hi = 2 * static_cast<unsigned long>(maxdeg) + 1;
  // Exact hit when the top eigenvalue is an integer (common for the closed forms).
  for (long v = static_cast<long>(2 * maxdeg); v >= 0; --v) {
    RootCount rc = roots_relative_to(poly, mpq_class(v));
    if (rc.above == 0 && rc.equal > 0) return {mpq_class(v), mpq_class(v)};
    if (rc.above > 0) break;
  }
  const mpq_class w(width);
  while (hi - lo > w) {
    mpq_class mid = (lo + hi) / 2;
    RootCount rc = roots_relative_to(poly, mid);
    if (rc.above > 0) {
      lo = mid;
    } else if (rc.equal > 0) {
      return {mid, mid};
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

/// Naive Hamiltonicity: every cyclic order starting at vertex 0.
inline bool brute_force_hamiltonian(const Graph& g) {
  const std::size_t n = g.order();
  if (n < 3) return false;
  std::vector<Vertex> rest(n - 1);
  std::iota(rest.begin(), rest.end(), Vertex{1});
  do {
    Vertex prev = 0;
    bool ok = true;
    for (Vertex v : rest) {
      if (!g.adjacent(prev, v)) {
        ok = false;
        break;
      }
      prev = v;
    }
    if (ok && g.adjacent(prev, 0)) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

}  // namespace testing_support
