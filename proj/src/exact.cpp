#include "spectralham/exact.hpp"

#include <charconv>
#include <numeric>

#include <gmpxx.h>

namespace spectralham {

const char* to_string(MatrixKind kind) {
  return kind == MatrixKind::adjacency ? "adjacency" : "signless_laplacian";
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Deadline Deadline::after(std::chrono::duration<double> budget) {
  Deadline d;
  d.at_ = std::chrono::steady_clock::now() +
          std::chrono::duration_cast<std::chrono::steady_clock::duration>(budget);
  return d;
}

bool Deadline::expired() const { return at_ && std::chrono::steady_clock::now() > *at_; }

void Deadline::check(const char* what) const {
  if (expired()) throw TimeBudgetExceeded(std::string("time budget exceeded during ") + what);
}

bool IntMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

IntMatrix graph_matrix(const Graph& g, MatrixKind kind) {
  IntMatrix m(g.order());
  for (const Edge& e : g.edges()) {
    m(e.u, e.v) = 1;
    m(e.v, e.u) = 1;
  }
  if (kind == MatrixKind::signless_laplacian) {
    for (Vertex v = 0; v < g.order(); ++v) m(v, v) = static_cast<std::int64_t>(g.degree(v));
  }
  return m;
}

namespace {

class SymmetricWork {
 public:
  explicit SymmetricWork(const IntMatrix& m) : n_(m.size()), cells_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) cells_[i * n_ + j] = static_cast<long>(m(i, j));
  }

  mpz_class& at(std::size_t i, std::size_t j) {
    return i <= j ? cells_[i * n_ + j] : cells_[j * n_ + i];
  }

 private:
  std::size_t n_;
  std::vector<mpz_class> cells_;
};

}  // namespace

Inertia integer_inertia(const IntMatrix& m, const Deadline& deadline) {
  if (!m.is_symmetric()) throw std::invalid_argument("inertia needs a symmetric matrix");
  const std::size_t n = m.size();
  SymmetricWork a(m);
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  Inertia out;
  mpz_class prev = 1;
  int prev_sign = 1;
  mpz_class tmp;
  std::vector<mpz_class*> col;

  while (!active.empty()) {
    deadline.check("exact inertia");
    std::size_t slot = active.size();
    for (std::size_t s = 0; s < active.size(); ++s) {
      if (sgn(a.at(active[s], active[s])) != 0) {
        slot = s;
        break;
      }
    }
    if (slot == active.size()) {
      // Zero diagonal: look for a nonzero off-diagonal pair.
      std::size_t si = active.size(), sj = active.size();
      for (std::size_t s = 0; s < active.size() && si == active.size(); ++s) {
        for (std::size_t t = s + 1; t < active.size(); ++t) {
          if (sgn(a.at(active[s], active[t])) != 0) {
            si = s;
            sj = t;
            break;
          }
        }
      }
      if (si == active.size()) {
        out.zero += active.size();
        break;
      }
      const std::size_t i = active[si];
      const std::size_t j = active[sj];
      mpz_class aij = a.at(i, j);
      mpz_class aii = a.at(i, i);
      mpz_class ajj = a.at(j, j);
      for (std::size_t b : active) {
        if (b != i) a.at(i, b) += a.at(j, b);
      }
      a.at(i, i) = aii + 2 * aij + ajj;
      slot = si;
    }

    const std::size_t p = active[slot];
    active[slot] = active.back();
    active.pop_back();
    mpz_class pivot = a.at(p, p);
    const int pivot_sign = sgn(pivot);
    if (pivot_sign * prev_sign > 0) {
      ++out.positive;
    } else {
      ++out.negative;
    }

    col.resize(active.size());
    for (std::size_t s = 0; s < active.size(); ++s) col[s] = &a.at(active[s], p);
    for (std::size_t s = 0; s < active.size(); ++s) {
      const std::size_t i = active[s];
      for (std::size_t t = s; t < active.size(); ++t) {
        mpz_class& cell = a.at(i, active[t]);
        mpz_mul(tmp.get_mpz_t(), pivot.get_mpz_t(), cell.get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), col[s]->get_mpz_t(), col[t]->get_mpz_t());
        mpz_divexact(cell.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pivot;
    prev_sign = pivot_sign;
  }
  return out;
}

Inertia shifted_inertia(const Graph& g, MatrixKind kind, const Rational& t,
                        const Deadline& deadline) {
  IntMatrix m = graph_matrix(g, kind);
  const std::int64_t den = t.den();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) m(i, j) *= den;
    m(i, i) -= t.num();
  }
  return integer_inertia(m, deadline);
}

}  // namespace spectralham
