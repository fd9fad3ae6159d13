#include "sawlab/series.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "sawlab/error.hpp"
#include "sawlab/kernels.hpp"

namespace sawlab {

TruncatedSeries TruncatedSeries::constant(int order, long value) {
  TruncatedSeries s(order);
  s.coeffs[0] = value;
  return s;
}

TruncatedSeries TruncatedSeries::monomial(int order, int exponent) {
  TruncatedSeries s(order);
  if (exponent <= order) s.coeffs[static_cast<std::size_t>(exponent)] = 1;
  return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  ensure(o.coeffs.size() == coeffs.size(), "series order mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  ensure(a.coeffs.size() == b.coeffs.size(), "series order mismatch");
  const std::size_t n = a.coeffs.size();
  TruncatedSeries out(a.order());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (!b.coeffs[j].is_zero()) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return out;
}

PolynomialSystem weighted_system(const ConfigCfg& g) {
  const GrammarSkeleton& sk = g.skeleton;
  PolynomialSystem sys;
  std::vector<int> unknown(sk.nonterminal_count(), -1);
  for (std::size_t nt = 0; nt < sk.nonterminal_count(); ++nt)
    if (sk.productive[nt]) {
      unknown[nt] = static_cast<int>(sys.names.size());
      sys.names.push_back(sk.name(static_cast<int>(nt)));
    }
  for (std::size_t nt = 0; nt < sk.nonterminal_count(); ++nt) {
    if (!sk.productive[nt]) continue;
    Monomial m;
    m.weight = sk.nt_weight[nt];
    if (!sk.boring[nt])
      for (const auto& alts : sk.slots[nt]) {
        m.factors.emplace_back();
        for (int a : alts) m.factors.back().push_back(unknown[static_cast<std::size_t>(a)]);
      }
    sys.equations.push_back({std::move(m)});
  }
  for (int r : sk.roots) sys.output.push_back(unknown[static_cast<std::size_t>(r)]);
  return sys;
}

TruncatedSeries Solution::output(const PolynomialSystem& sys) const {
  TruncatedSeries f(values.empty() ? 0 : values[0].order());
  for (int u : sys.output) f += values[static_cast<std::size_t>(u)];
  return f;
}

Solution solve_truncated(const PolynomialSystem& sys, int order, const Limits& limits, Execution exec,
                         const std::function<void(const std::vector<TruncatedSeries>&)>& on_sweep) {
  require(order >= 1, "solve_truncated: order must be at least 1");
  Solution sol;
  sol.values.assign(sys.size(), TruncatedSeries(order));
  std::vector<TruncatedSeries> next(sys.size(), TruncatedSeries(order));
  for (;;) {
    if (sol.sweeps >= limits.max_iterations)
      fail(ErrorKind::NonStabilization, "solve_truncated: coefficients still changing after " +
                                            std::to_string(limits.max_iterations) + " sweeps");
    if (exec == Execution::Parallel)
      kernels::kleene_sweep_parallel(sys, sol.values, next);
    else
      kernels::kleene_sweep_serial(sys, sol.values, next);
    ++sol.sweeps;
    const bool settled = next == sol.values;
    std::swap(next, sol.values);
    if (on_sweep) on_sweep(sol.values);
    if (settled) return sol;
  }
}

namespace {

TruncatedSeries factor_sum(const std::vector<int>& factor, const std::vector<TruncatedSeries>& x, int order) {
  TruncatedSeries sum(order);
  for (int u : factor) sum += x[static_cast<std::size_t>(u)];
  return sum;
}

// For every monomial, the coefficient series of each factor's derivative: z^w times the
// product of the other factors, evaluated at x.
std::vector<std::vector<std::vector<TruncatedSeries>>> partials(const PolynomialSystem& sys,
                                                                const std::vector<TruncatedSeries>& x, int order) {
  std::vector<std::vector<std::vector<TruncatedSeries>>> out(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i)
    for (const Monomial& m : sys.equations[i]) {
      std::vector<TruncatedSeries> sums;
      for (const auto& f : m.factors) sums.push_back(factor_sum(f, x, order));
      // prefix and suffix products give every "all but one" product in linear time
      const std::size_t k = sums.size();
      std::vector<TruncatedSeries> prefix(k + 1, TruncatedSeries::monomial(order, m.weight)),
          suffix(k + 1, TruncatedSeries::constant(order, 1));
      for (std::size_t j = 0; j < k; ++j) prefix[j + 1] = prefix[j] * sums[j];
      for (std::size_t j = k; j-- > 0;) suffix[j] = sums[j] * suffix[j + 1];
      std::vector<TruncatedSeries> d;
      for (std::size_t j = 0; j < k; ++j) d.push_back(prefix[j] * suffix[j + 1]);
      out[i].push_back(std::move(d));
    }
  return out;
}

}  // namespace

Solution solve_newton(const PolynomialSystem& sys, int order, const Limits& limits) {
  require(order >= 1, "solve_newton: order must be at least 1");
  Solution sol;
  sol.values.assign(sys.size(), TruncatedSeries(order));
  std::vector<TruncatedSeries> fx(sys.size(), TruncatedSeries(order));
  std::size_t inner = 0;
  for (;;) {
    kernels::kleene_sweep_serial(sys, sol.values, fx);
    if (fx == sol.values) return sol;
    if (sol.sweeps >= limits.max_iterations)
      fail(ErrorKind::NonStabilization, "solve_newton: coefficients still changing after " +
                                            std::to_string(limits.max_iterations) + " steps");
    ++sol.sweeps;
    // residual b = F(x) - x is nonnegative because every iterate stays below the least solution
    std::vector<TruncatedSeries> b(sys.size(), TruncatedSeries(order));
    for (std::size_t i = 0; i < sys.size(); ++i)
      for (std::size_t k = 0; k <= static_cast<std::size_t>(order); ++k) {
        b[i].coeffs[k] = fx[i].coeffs[k] - sol.values[i].coeffs[k];
        ensure(b[i].coeffs[k] >= 0, "solve_newton: iterate above the least solution");
      }
    const auto d = partials(sys, sol.values, order);
    // least solution of delta = b + J(x) delta
    std::vector<TruncatedSeries> delta = b, next(sys.size(), TruncatedSeries(order));
    for (;;) {
      if (++inner > limits.max_iterations)
        fail(ErrorKind::NonStabilization, "solve_newton: linearized system did not settle after " +
                                              std::to_string(limits.max_iterations) + " sweeps");
      for (std::size_t i = 0; i < sys.size(); ++i) {
        TruncatedSeries acc = b[i];
        for (std::size_t m = 0; m < sys.equations[i].size(); ++m) {
          const auto& factors = sys.equations[i][m].factors;
          for (std::size_t j = 0; j < factors.size(); ++j) acc += d[i][m][j] * factor_sum(factors[j], delta, order);
        }
        next[i] = std::move(acc);
      }
      if (next == delta) break;
      std::swap(next, delta);
    }
    for (std::size_t i = 0; i < sys.size(); ++i) sol.values[i] += delta[i];
  }
}

std::vector<BigInt> saw_coefficients(const ConeTypeSystem& system, int order, const Limits& limits, Execution exec,
                                     Solver solver) {
  const ConfigCfg g = build_config_cfg(system, limits);
  const PolynomialSystem sys = weighted_system(g);
  const Solution sol = solver == Solver::Newton ? solve_newton(sys, order, limits) : solve_truncated(sys, order, limits, exec);
  const TruncatedSeries f = sol.output(sys);
  ensure(f.coeffs[0].is_zero(), "SAW series has a nonzero constant term");
  return {f.coeffs.begin() + 1, f.coeffs.end()};
}

ConnectiveEstimate connective_estimate(const std::vector<BigInt>& coeffs) {
  ConnectiveEstimate est;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    require(coeffs[i] >= 1, "connective_estimate: zero coefficient at n = " + std::to_string(i + 1));
    const long double c = coeffs[i].convert_to<long double>();
    est.root_estimates.push_back(static_cast<double>(std::pow(c, 1.0L / static_cast<long double>(i + 1))));
    if (i + 1 < coeffs.size())
      est.ratio_estimates.push_back(static_cast<double>(coeffs[i + 1].convert_to<long double>() / c));
  }
  return est;
}

std::string series_table(const std::vector<BigInt>& coeffs) {
  const ConnectiveEstimate est = connective_estimate(coeffs);
  std::ostringstream out;
  out << "n\tc_n\troot_est\tratio_est\n" << std::fixed << std::setprecision(9);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out << (i + 1) << '\t' << coeffs[i] << '\t' << est.root_estimates[i] << '\t';
    if (i == 0)
      out << '-';
    else
      out << est.ratio_estimates[i - 1];
    out << '\n';
  }
  return out.str();
}

}  // namespace sawlab
