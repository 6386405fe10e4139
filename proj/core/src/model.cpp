#include "blv/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <type_traits>

namespace blv {

namespace {

void check_size(std::size_t got, int n, const char* what) {
  if (got != static_cast<std::size_t>(n))
    throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(n) +
                                ", got " + std::to_string(got));
}

// Exact solve of mu K = mu, sum mu = 1 by Gaussian elimination over the
// rationals. Throws if the solution is not unique.
std::vector<Rational> solve_invariant(const std::vector<std::vector<KernelEntry>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n > 512)
    throw std::invalid_argument(
        "invariant measure solve supports at most 512 states; supply mu explicitly");

  // Unknowns mu_0..mu_{n-1}; n balance equations plus the normalization.
  const int m = n + 1;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + 1, Rational(0)));
  for (int x = 0; x < n; ++x) {
    for (const auto& e : rows[x]) a[e.to][x] += e.p;
    a[x][x] -= 1;
  }
  for (int x = 0; x < n; ++x) a[n][x] = 1;
  a[n][n] = 1;

  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < n && rank < m; ++col) {
    int sel = -1;
    for (int r = rank; r < m; ++r)
      if (a[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[rank], a[sel]);
    Rational inv = a[rank][col];
    for (int c = col; c <= n; ++c) a[rank][c] /= inv;
    for (int r = 0; r < m; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rational factor = a[r][col];
      for (int c = col; c <= n; ++c) a[r][c] -= factor * a[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < m; ++r)
    if (a[r][n] != 0) throw std::runtime_error("invariant measure system is inconsistent");
  if (rank < n)
    throw std::invalid_argument(
        "invariant measure is not unique (kernel is reducible); supply mu explicitly");

  std::vector<Rational> mu(n, Rational(0));
  for (int r = 0; r < rank; ++r) mu[pivot_col[r]] = a[r][n];
  return mu;
}

}  // namespace

Model Model::from_dense(std::vector<std::string> labels,
                        const std::vector<std::vector<Rational>>& kernel,
                        std::optional<std::vector<Rational>> mu) {
  const int n = static_cast<int>(kernel.size());
  std::vector<std::vector<KernelEntry>> rows(n);
  for (int x = 0; x < n; ++x) {
    check_size(kernel[x].size(), n, "kernel row");
    for (int y = 0; y < n; ++y) {
      const Rational& p = kernel[x][y];
      if (p < 0)
        throw std::invalid_argument("kernel entry (" + std::to_string(x) + "," +
                                    std::to_string(y) + ") is negative");
      if (p != 0) rows[x].push_back({y, p, to_double(p)});
    }
  }
  return from_rows(std::move(labels), std::move(rows), std::move(mu));
}

Model Model::from_rows(std::vector<std::string> labels,
                       std::vector<std::vector<KernelEntry>> rows,
                       std::optional<std::vector<Rational>> mu) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw std::invalid_argument("model needs at least one state");
  check_size(labels.size(), n, "labels");

  for (int x = 0; x < n; ++x) {
    auto& row = rows[x];
    std::sort(row.begin(), row.end(), [](const KernelEntry& a, const KernelEntry& b) {
      return a.to < b.to;
    });
    Rational sum(0);
    int prev = -1;
    for (auto& e : row) {
      if (e.to < 0 || e.to >= n)
        throw std::invalid_argument("kernel row " + std::to_string(x) + " targets state " +
                                    std::to_string(e.to) + " out of range");
      if (e.to == prev)
        throw std::invalid_argument("kernel row " + std::to_string(x) + " has duplicate target " +
                                    std::to_string(e.to));
      prev = e.to;
      if (e.p <= 0)
        throw std::invalid_argument("kernel row " + std::to_string(x) +
                                    " has a non-positive sparse entry");
      e.pd = to_double(e.p);
      sum += e.p;
    }
    if (sum != 1)
      throw std::invalid_argument("kernel row " + std::to_string(x) + " sums to " +
                                  to_string(sum) + ", expected 1");
  }

  Model m;
  m.labels_ = std::move(labels);
  m.rows_ = std::move(rows);
  m.finalize(std::move(mu));
  return m;
}

void Model::finalize(std::optional<std::vector<Rational>> mu) {
  const int n = size();

  if (mu) {
    check_size(mu->size(), n, "mu");
    Rational total(0);
    for (int x = 0; x < n; ++x) {
      if ((*mu)[x] < 0) throw std::invalid_argument("mu(" + std::to_string(x) + ") is negative");
      total += (*mu)[x];
    }
    if (total != 1) throw std::invalid_argument("mu sums to " + to_string(total) + ", expected 1");
    // Exact stationarity: (mu K)(y) == mu(y) for every y.
    std::vector<Rational> push(n, Rational(0));
    for (int x = 0; x < n; ++x)
      for (const auto& e : rows_[x]) push[e.to] += (*mu)[x] * e.p;
    for (int y = 0; y < n; ++y)
      if (push[y] != (*mu)[y])
        throw std::invalid_argument("mu is not invariant: (mu K)(" + std::to_string(y) + ") = " +
                                    to_string(push[y]) + " != " + to_string((*mu)[y]));
    mu_ = std::move(*mu);
  } else {
    mu_ = solve_invariant(rows_);
  }

  mu_d_.resize(n);
  for (int x = 0; x < n; ++x) mu_d_[x] = to_double(mu_[x]);

  // Detailed balance, checked exactly edge by edge (both orientations).
  reversible_ = true;
  for (int x = 0; x < n && reversible_; ++x)
    for (const auto& e : rows_[x]) {
      if (e.to == x) continue;
      if (mu_[x] * e.p != mu_[e.to] * kernel(e.to, x)) {
        reversible_ = false;
        break;
      }
    }

  // Strong connectivity of the kernel graph.
  auto reaches_all = [&](bool reverse) {
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    std::vector<std::vector<int>> radj;
    if (reverse) {
      radj.assign(n, {});
      for (int x = 0; x < n; ++x)
        for (const auto& e : rows_[x]) radj[e.to].push_back(x);
    }
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      auto visit = [&](int y) {
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          queue.push_back(y);
        }
      };
      if (reverse)
        for (int y : radj[x]) visit(y);
      else
        for (const auto& e : rows_[x]) visit(e.to);
    }
    return count == n;
  };
  ergodic_ = reaches_all(false) && reaches_all(true);
}

Rational Model::kernel(int x, int y) const {
  const auto& row = rows_[x];
  auto it = std::lower_bound(row.begin(), row.end(), y,
                             [](const KernelEntry& e, int target) { return e.to < target; });
  if (it != row.end() && it->to == y) return it->p;
  return Rational(0);
}

std::vector<double> apply_kernel(const Model& m, std::span<const double> f) {
  const int n = m.size();
  check_size(f.size(), n, "function");
  std::vector<double> out(n, 0.0);
  for (int x = 0; x < n; ++x) {
    double acc = 0.0;
    for (const auto& e : m.row(x)) acc += e.pd * f[e.to];
    out[x] = acc;
  }
  return out;
}

std::vector<double> apply_generator(const Model& m, std::span<const double> f) {
  std::vector<double> out = apply_kernel(m, f);
  for (int x = 0; x < m.size(); ++x) out[x] -= f[x];
  return out;
}

namespace {

// Smallest N with e^{-t} sum_{k > N} t^k / k! < 1e-14, bounded through the
// geometric tail estimate evaluated in log space (safe for large t).
int poisson_truncation(double t) {
  if (t <= 0.0) return 0;
  const double log_eps = std::log(1e-14);
  for (int N = std::max(1, static_cast<int>(std::ceil(t)));; ++N) {
    double r = t / (N + 2);
    if (r >= 1.0) continue;
    double log_tail = -t + (N + 1) * std::log(t) - std::lgamma(N + 2.0) - std::log1p(-r);
    if (log_tail < log_eps) return N;
  }
}

}  // namespace

std::vector<double> semigroup_apply(const Model& m, double t, std::span<const double> f) {
  if (!(t >= 0.0)) throw std::invalid_argument("semigroup_apply: t must be >= 0");
  check_size(f.size(), m.size(), "function");
  std::vector<double> cur(f.begin(), f.end());
  if (t == 0.0) return cur;

  const int N = poisson_truncation(t);
  const double log_t = std::log(t);
  std::vector<double> out(m.size(), 0.0);
  double w0 = std::exp(-t);
  for (int x = 0; x < m.size(); ++x) out[x] = w0 * cur[x];
  for (int k = 1; k <= N; ++k) {
    cur = apply_kernel(m, cur);
    double w = std::exp(-t + k * log_t - std::lgamma(k + 1.0));
    if (w == 0.0) continue;
    for (int x = 0; x < m.size(); ++x) out[x] += w * cur[x];
  }
  return out;
}

namespace {

template <class S>
std::vector<S> carre_impl(const Model& m, std::span<const S> f, std::span<const S> g) {
  const int n = m.size();
  check_size(f.size(), n, "function");
  check_size(g.size(), n, "function");
  std::vector<S> out(n, S(0));
  for (int x = 0; x < n; ++x) {
    S acc(0);
    for (const auto& e : m.row(x)) {
      if (e.to == x) continue;
      S df = f[e.to] - f[x];
      S dg = g[e.to] - g[x];
      if constexpr (std::is_same_v<S, double>)
        acc += e.pd * df * dg;
      else
        acc += e.p * df * dg;
    }
    if constexpr (std::is_same_v<S, double>)
      out[x] = 0.5 * acc;
    else
      out[x] = acc / 2;
  }
  return out;
}

template <class S>
S mu_integral_impl(const Model& m, std::span<const S> f) {
  check_size(f.size(), m.size(), "function");
  S acc(0);
  for (int x = 0; x < m.size(); ++x) {
    if constexpr (std::is_same_v<S, double>)
      acc += m.mu_d(x) * f[x];
    else
      acc += m.mu(x) * f[x];
  }
  return acc;
}

}  // namespace

std::vector<double> carre_du_champ(const Model& m, std::span<const double> f,
                                   std::span<const double> g) {
  return carre_impl<double>(m, f, g);
}

std::vector<Rational> carre_du_champ(const Model& m, std::span<const Rational> f,
                                     std::span<const Rational> g) {
  return carre_impl<Rational>(m, f, g);
}

double dirichlet_form(const Model& m, std::span<const double> f, std::span<const double> g) {
  auto gamma = carre_du_champ(m, f, g);
  return mu_integral_impl<double>(m, gamma);
}

Rational dirichlet_form(const Model& m, std::span<const Rational> f, std::span<const Rational> g) {
  auto gamma = carre_du_champ(m, f, g);
  return mu_integral_impl<Rational>(m, gamma);
}

double mu_integral(const Model& m, std::span<const double> f) {
  return mu_integral_impl<double>(m, f);
}

Rational mu_integral(const Model& m, std::span<const Rational> f) {
  return mu_integral_impl<Rational>(m, f);
}

}  // namespace blv
