#include "spectralham/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace spectralham {

namespace {

// Unit roundoff of the long double accumulators, rounded up generously.
constexpr long double kUnit = 1.0L / 9223372036854775808.0L;  // 2^-63

struct Component {
  std::vector<Vertex> vertices;
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> nbrs;
  std::vector<double> diag;

  std::size_t size() const { return vertices.size(); }

  void apply(std::span<const double> x, std::vector<long double>& y) const {
    y.assign(size(), 0.0L);
    for (std::size_t i = 0; i < size(); ++i) {
      long double acc = static_cast<long double>(diag[i]) * x[i];
      for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) acc += x[nbrs[k]];
      y[i] = acc;
    }
  }

  /// Bound on the accumulated rounding error of row i of apply().
  long double row_error(std::span<const double> x, std::size_t i) const {
    long double abs_sum = std::fabs(static_cast<long double>(diag[i]) * x[i]);
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) abs_sum += std::fabs(static_cast<long double>(x[nbrs[k]]));
    return static_cast<long double>(offsets[i + 1] - offsets[i] + 2) * abs_sum * kUnit;
  }
};

std::vector<Component> split_components(const Graph& g, MatrixKind kind) {
  auto label = component_labels(g);
  std::size_t count = g.order() == 0 ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<Component> comps(count);
  std::vector<std::uint32_t> local(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    local[v] = static_cast<std::uint32_t>(comps[label[v]].vertices.size());
    comps[label[v]].vertices.push_back(v);
  }
  for (Component& c : comps) {
    c.offsets.push_back(0);
    for (Vertex v : c.vertices) {
      const Bitset& nb = g.neighbors(v);
      for (auto u = nb.find_first(); u != Bitset::npos; u = nb.find_next(u)) c.nbrs.push_back(local[u]);
      c.offsets.push_back(c.nbrs.size());
      c.diag.push_back(kind == MatrixKind::signless_laplacian ? static_cast<double>(g.degree(v)) : 0.0);
    }
  }
  return comps;
}

struct Bounds {
  long double rho = 0;
  double lo = 0;
  double hi = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  bool positive = false;

  double width() const { return hi - lo; }
};

double round_down(long double v) {
  return std::nextafter(static_cast<double>(v), -std::numeric_limits<double>::infinity());
}
double round_up(long double v) {
  return std::nextafter(static_cast<double>(v), std::numeric_limits<double>::infinity());
}

Bounds certify(const Component& c, std::span<const double> x, std::vector<long double>& mx) {
  c.apply(x, mx);
  const std::size_t n = c.size();
  long double xx = 0, xmx = 0, abs_xmx = 0, num_err = 0;
  bool positive = true;
  std::vector<long double> err(n);
  for (std::size_t i = 0; i < n; ++i) {
    err[i] = c.row_error(x, i);
    xx += static_cast<long double>(x[i]) * x[i];
    xmx += x[i] * mx[i];
    abs_xmx += std::fabs(x[i] * mx[i]);
    num_err += std::fabs(static_cast<long double>(x[i])) * err[i];
    if (!(x[i] > 0)) positive = false;
  }
  Bounds b;
  if (xx == 0) return b;
  const long double dn = static_cast<long double>(n);
  b.rho = xmx / xx;
  long double slack = (num_err + 2 * dn * kUnit * abs_xmx) / xx + std::fabs(b.rho) * 4 * dn * kUnit;
  b.lo = round_down(b.rho - slack);
  long double rr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    long double r = mx[i] - b.rho * x[i];
    rr += r * r;
  }
  b.residual = static_cast<double>(std::sqrt(rr / xx));
  b.positive = positive;
  if (positive) {
    long double cw = -std::numeric_limits<long double>::infinity();
    for (std::size_t i = 0; i < n; ++i) cw = std::max(cw, (mx[i] + err[i]) / x[i]);
    b.hi = round_up(cw * (1 + 4 * kUnit));
  }
  return b;
}

double dot(std::span<const double> a, std::span<const double> b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

struct ComponentResult {
  Bounds bounds;
  std::vector<double> x;
  bool converged = false;
  std::size_t matvecs = 0;
  std::string engine;
};

void fix_sign(std::vector<double>& x) {
  double s = std::accumulate(x.begin(), x.end(), 0.0);
  if (s < 0)
    for (double& v : x) v = -v;
}

/// Locally optimal block iteration on span{x, residual, previous step}.
ComponentResult lobpcg(const Component& c, std::vector<double> x, const SpectralConfig& cfg,
                       std::size_t iteration_limit) {
  const std::size_t n = c.size();
  ComponentResult best;
  best.engine = "lobpcg";
  std::vector<long double> mxl;
  std::vector<double> p;
  std::size_t since_improved = 0;
  double best_width = std::numeric_limits<double>::infinity();
  std::size_t matvecs = 0;

  for (std::size_t it = 0; it < iteration_limit && matvecs < cfg.max_matvecs; ++it) {
    double xn = norm(x);
    for (double& v : x) v /= xn;
    if (!p.empty()) {
      for (double& v : p) v /= xn;
    }
    Bounds b = certify(c, x, mxl);
    ++matvecs;
    if (b.positive && b.width() < best_width) {
      best_width = b.width();
      best.bounds = b;
      best.x = x;
      since_improved = 0;
    } else if (++since_improved > (best_width <= cfg.tol ? 4u : 60u)) {
      break;
    }
    if (b.positive && b.width() <= cfg.tol * 1e-3) break;
    if (best.x.empty() && it + 1 == iteration_limit) {
      best.bounds = b;
      best.x = x;
    }

    std::vector<double> mx(n);
    for (std::size_t i = 0; i < n; ++i) mx[i] = static_cast<double>(mxl[i]);
    std::vector<std::vector<double>> basis{x};
    std::vector<std::vector<double>> images{mx};
    auto add_direction = [&](std::vector<double> d) {
      double d0 = norm(d);
      if (d0 == 0) return;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) {
          double proj = dot(v, d);
          for (std::size_t i = 0; i < n; ++i) d[i] -= proj * v[i];
        }
      }
      double dn = norm(d);
      if (dn <= 1e-13 * d0 || dn == 0) return;
      for (double& v : d) v /= dn;
      std::vector<long double> img;
      c.apply(d, img);
      ++matvecs;
      std::vector<double> imgd(n);
      for (std::size_t i = 0; i < n; ++i) imgd[i] = static_cast<double>(img[i]);
      basis.push_back(std::move(d));
      images.push_back(std::move(imgd));
    };
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<double>(mxl[i] - b.rho * x[i]);
    add_direction(std::move(r));
    if (!p.empty()) add_direction(p);
    const std::size_t m = basis.size();
    if (m == 1) break;
    std::vector<double> h(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t bb = 0; bb < m; ++bb) h[a * m + bb] = dot(basis[a], images[bb]);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t bb = a + 1; bb < m; ++bb) {
        double s = 0.5 * (h[a * m + bb] + h[bb * m + a]);
        h[a * m + bb] = h[bb * m + a] = s;
      }
    DenseEigen small = jacobi_eigen(std::move(h), m);
    const auto& coef = small.vectors.front();
    std::vector<double> next(n, 0.0), step(n, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t i = 0; i < n; ++i) {
        next[i] += coef[a] * basis[a][i];
        if (a > 0) step[i] += coef[a] * basis[a][i];
      }
    }
    if (std::accumulate(next.begin(), next.end(), 0.0) < 0) {
      for (double& v : next) v = -v;
      for (double& v : step) v = -v;
    }
    x = std::move(next);
    p = std::move(step);
  }
  best.matvecs = matvecs;
  best.converged = best_width <= cfg.tol;
  if (best.x.empty()) {
    best.x = x;
    best.bounds = certify(c, x, mxl);
  }
  return best;
}

ComponentResult solve_component(const Component& c, const SpectralConfig& cfg) {
  const std::size_t n = c.size();
  if (n == 1) {
    ComponentResult r;
    r.x = {1.0};
    r.bounds.rho = c.diag[0];
    r.bounds.lo = r.bounds.hi = c.diag[0];
    r.bounds.residual = 0;
    r.bounds.positive = true;
    r.converged = true;
    r.engine = "trivial";
    return r;
  }
  auto dense_start = [&]() {
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      a[i * n + i] = c.diag[i];
      for (std::size_t k = c.offsets[i]; k < c.offsets[i + 1]; ++k) a[i * n + c.nbrs[k]] = 1.0;
    }
    std::vector<double> v = jacobi_eigen(std::move(a), n).vectors.front();
    fix_sign(v);
    return v;
  };
  ComponentResult result;
  if (n <= 24) {
    result = lobpcg(c, dense_start(), cfg, 200);
    result.engine = "jacobi";
    if (result.converged) return result;
  }
  result = lobpcg(c, std::vector<double>(n, 1.0), cfg, cfg.iteration_limit);
  if (result.converged || n > cfg.dense_limit) return result;
  ComponentResult dense = lobpcg(c, dense_start(), cfg, 200);
  dense.engine = "jacobi";
  dense.matvecs += result.matvecs;
  if (dense.converged || dense.bounds.width() < result.bounds.width()) return dense;
  return result;
}

}  // namespace

DenseEigen jacobi_eigen(std::vector<double> a, std::size_t n) {
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      total += a[i * n + i] * a[i * n + i];
      for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    }
    if (off <= 1e-32 * (total + off) || off == 0) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const double cs = 1 / std::sqrt(t * t + 1);
        const double sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = cs * akp - sn * akq;
          a[k * n + q] = sn * akp + cs * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = cs * apk - sn * aqk;
          a[q * n + k] = sn * apk + cs * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = cs * vkp - sn * vkq;
          v[k * n + q] = sn * vkp + cs * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a[i * n + i] > a[j * n + j]; });
  DenseEigen out;
  for (std::size_t idx : order) {
    out.values.push_back(a[idx * n + idx]);
    std::vector<double> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k * n + idx];
    out.vectors.push_back(std::move(col));
  }
  return out;
}

EigenEstimate extreme_eigen(const Graph& g, MatrixKind kind, const SpectralConfig& cfg) {
  if (g.order() == 0) throw std::invalid_argument("spectral radius of the empty graph");
  if (!(cfg.tol > 0)) throw std::invalid_argument("tolerance must be positive");
  auto comps = split_components(g, kind);
  EigenEstimate est;
  est.converged = true;
  est.lo = -std::numeric_limits<double>::infinity();
  est.hi = -std::numeric_limits<double>::infinity();
  std::size_t best = comps.size();
  std::vector<ComponentResult> results;
  results.reserve(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    results.push_back(solve_component(comps[i], cfg));
    const ComponentResult& r = results.back();
    est.converged = est.converged && r.converged;
    est.matvecs += r.matvecs;
    est.lo = std::max(est.lo, r.bounds.lo);
    est.hi = std::max(est.hi, r.bounds.positive ? r.bounds.hi
                                                : static_cast<double>(r.bounds.rho) + r.bounds.residual);
    if (best == comps.size() || r.bounds.rho > results[best].bounds.rho) best = i;
  }
  const ComponentResult& top = results[best];
  est.value = static_cast<double>(top.bounds.rho);
  est.residual = top.bounds.residual;
  est.engine = top.engine;
  est.vector.assign(g.order(), 0.0);
  double mx = *std::max_element(top.x.begin(), top.x.end());
  for (std::size_t i = 0; i < top.x.size(); ++i) est.vector[comps[best].vertices[i]] = top.x[i] / mx;
  return est;
}

EigenEstimate q_max(const Graph& g, const SpectralConfig& cfg) {
  return extreme_eigen(g, MatrixKind::signless_laplacian, cfg);
}

EigenEstimate lambda_max(const Graph& g, const SpectralConfig& cfg) {
  return extreme_eigen(g, MatrixKind::adjacency, cfg);
}

IntMatrix signless_laplacian(const Graph& g) { return graph_matrix(g, MatrixKind::signless_laplacian); }

double quadratic_form(const Graph& g, MatrixKind kind, std::span<const double> x) {
  if (x.size() != g.order()) throw std::invalid_argument("vector length differs from graph order");
  long double s = 0;
  if (kind == MatrixKind::signless_laplacian) {
    for (Vertex v = 0; v < g.order(); ++v) s += static_cast<long double>(g.degree(v)) * x[v] * x[v];
  }
  for (const Edge& e : g.edges()) s += 2.0L * x[e.u] * x[e.v];
  return static_cast<double>(s);
}

double rayleigh(const Graph& g, MatrixKind kind, std::span<const double> x) {
  long double xx = 0;
  for (double v : x) xx += static_cast<long double>(v) * v;
  if (xx == 0) throw std::invalid_argument("Rayleigh quotient of the zero vector");
  return static_cast<double>(quadratic_form(g, kind, x) / xx);
}

double rayleigh(const Graph& g, std::span<const double> x) {
  return rayleigh(g, MatrixKind::signless_laplacian, x);
}

double quadratic_form_delta(const Graph& g1, const Graph& g2, std::span<const double> x) {
  if (g1.order() != g2.order()) throw std::invalid_argument("graphs have different vertex sets");
  return quadratic_form(g1, MatrixKind::signless_laplacian, x) -
         quadratic_form(g2, MatrixKind::signless_laplacian, x);
}

double fy_bound(const Graph& g) {
  if (g.order() < 2) throw std::invalid_argument("bound needs n >= 2");
  const double n = static_cast<double>(g.order());
  return 2.0 * static_cast<double>(g.size()) / (n - 1) + n - 2;
}

double ln_bipartite_bound(const Graph& g) {
  if (!balanced_bipartition(g)) {
    throw std::invalid_argument("bound needs a balanced bipartite graph");
  }
  const double half = static_cast<double>(g.order()) / 2;
  return static_cast<double>(g.size()) / half + half;
}

double eigen_identity_residual(const Graph& g, const EigenEstimate& est) {
  if (est.vector.size() != g.order()) throw std::invalid_argument("estimate carries no vector");
  const auto& f = est.vector;
  long double worst = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    long double sum = 0;
    const Bitset& nb = g.neighbors(v);
    for (auto u = nb.find_first(); u != Bitset::npos; u = nb.find_next(u)) sum += f[u];
    long double lhs = (static_cast<long double>(est.value) - g.degree(v)) * f[v];
    worst = std::max(worst, std::fabs(lhs - sum));
  }
  return static_cast<double>(worst);
}

double eigvec_difference_residual(const Graph& g, const EigenEstimate& est, Vertex u, Vertex v) {
  if (est.vector.size() != g.order()) throw std::invalid_argument("estimate carries no vector");
  if (u == v) throw std::invalid_argument("vertices must differ");
  const auto& f = est.vector;
  const long double du = static_cast<long double>(g.degree(u));
  const long double dv = static_cast<long double>(g.degree(v));
  long double lhs = (static_cast<long double>(est.value) - du) * (f[u] - f[v]);
  long double rhs = (du - dv) * f[v];
  Bitset only_u = g.neighbors(u) - g.neighbors(v);
  Bitset only_v = g.neighbors(v) - g.neighbors(u);
  for (auto s = only_u.find_first(); s != Bitset::npos; s = only_u.find_next(s)) rhs += f[s];
  for (auto t = only_v.find_first(); t != Bitset::npos; t = only_v.find_next(t)) rhs -= f[t];
  return static_cast<double>(std::fabs(lhs - rhs));
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::less: return "less";
    case Relation::equal: return "equal";
    case Relation::greater: return "greater";
    case Relation::undecided: return "undecided";
  }
  return "?";
}

const char* to_symbol(Relation r) {
  switch (r) {
    case Relation::less: return "<";
    case Relation::equal: return "=";
    case Relation::greater: return ">";
    case Relation::undecided: return "?";
  }
  return "?";
}

const char* to_string(CompareMethod m) {
  switch (m) {
    case CompareMethod::exact_inertia: return "exact-inertia";
    case CompareMethod::certified_interval: return "certified-interval";
    case CompareMethod::exact_count: return "exact-count";
    case CompareMethod::isomorphism: return "isomorphism";
  }
  return "?";
}

namespace {

double interval_margin(const EigenEstimate& est, double t) {
  if (t < est.lo) return est.lo - t;
  if (t > est.hi) return t - est.hi;
  return 0.0;
}

}  // namespace

ThresholdVerdict try_compare_threshold(const Graph& g, MatrixKind kind, const Rational& t,
                                       const CompareConfig& cfg) {
  ThresholdVerdict verdict;
  verdict.threshold = t;
  verdict.threshold_value = t.value();
  SpectralConfig scfg;
  scfg.tol = cfg.tol;
  EigenEstimate est = extreme_eigen(g, kind, scfg);
  verdict.margin = interval_margin(est, t.value());
  const bool interval_decides = est.converged && verdict.margin > 0;
  auto from_interval = [&]() {
    verdict.method = CompareMethod::certified_interval;
    verdict.relation = t.value() < est.lo ? Relation::greater : Relation::less;
  };
  std::ostringstream detail;
  detail.precision(17);
  detail << "interval [" << est.lo << ", " << est.hi << "]";

  if (cfg.policy == ComparePolicy::automatic && interval_decides && verdict.margin > cfg.margin) {
    from_interval();
    verdict.detail = detail.str();
    return verdict;
  }
  if (g.order() <= cfg.exact_cap) {
    try {
      Inertia in = shifted_inertia(g, kind, t, cfg.deadline);
      verdict.method = CompareMethod::exact_inertia;
      if (in.positive > 0) {
        verdict.relation = Relation::greater;
      } else if (in.zero > 0) {
        verdict.relation = Relation::equal;
      } else {
        verdict.relation = Relation::less;
      }
      detail << "; inertia (+" << in.positive << ", 0:" << in.zero << ", -" << in.negative << ")";
      verdict.detail = detail.str();
      return verdict;
    } catch (const TimeBudgetExceeded& e) {
      detail << "; " << e.what();
    }
  } else {
    detail << "; order " << g.order() << " above exact cap " << cfg.exact_cap;
  }
  if (interval_decides) {
    from_interval();
  } else {
    verdict.relation = Relation::undecided;
    detail << "; undecidable at tol " << cfg.tol;
  }
  verdict.detail = detail.str();
  return verdict;
}

ThresholdVerdict compare_q_threshold(const Graph& g, const Rational& t, const CompareConfig& cfg) {
  ThresholdVerdict v = try_compare_threshold(g, MatrixKind::signless_laplacian, t, cfg);
  if (v.relation == Relation::undecided) throw UndecidableComparison(v.detail);
  return v;
}

ThresholdVerdict compare_lambda_threshold(const Graph& g, const Rational& t, const CompareConfig& cfg) {
  ThresholdVerdict v = try_compare_threshold(g, MatrixKind::adjacency, t, cfg);
  if (v.relation == Relation::undecided) throw UndecidableComparison(v.detail);
  return v;
}

ThresholdVerdict compare_estimates(const EigenEstimate& a, const EigenEstimate& b) {
  ThresholdVerdict v;
  v.method = CompareMethod::certified_interval;
  v.threshold_value = b.value;
  std::ostringstream detail;
  detail.precision(17);
  detail << "[" << a.lo << ", " << a.hi << "] vs [" << b.lo << ", " << b.hi << "]";
  v.detail = detail.str();
  if (!a.converged || !b.converged) {
    v.relation = Relation::undecided;
    v.detail += "; unconverged estimate";
  } else if (a.hi < b.lo) {
    v.relation = Relation::less;
    v.margin = b.lo - a.hi;
  } else if (a.lo > b.hi) {
    v.relation = Relation::greater;
    v.margin = a.lo - b.hi;
  } else {
    v.relation = Relation::undecided;
  }
  return v;
}

}  // namespace spectralham
