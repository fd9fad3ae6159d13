#pragma once

#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sawlab/grammar.hpp"
#include "sawlab/limits.hpp"

namespace sawlab {

using BigInt = boost::multiprecision::cpp_int;

enum class Execution { Serial, Parallel };

// c_0..c_N, arithmetic truncated at z^N.
struct TruncatedSeries {
  std::vector<BigInt> coeffs;

  TruncatedSeries() = default;
  explicit TruncatedSeries(int order) : coeffs(static_cast<std::size_t>(order) + 1) {}
  static TruncatedSeries constant(int order, long value);
  static TruncatedSeries monomial(int order, int exponent);

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  TruncatedSeries& operator+=(const TruncatedSeries& o);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  bool operator==(const TruncatedSeries&) const = default;
};

// z^weight * prod over factors of (sum of the listed unknowns)
struct Monomial {
  int weight = 0;
  std::vector<std::vector<int>> factors;
};

struct PolynomialSystem {
  std::vector<std::string> names;
  std::vector<std::vector<Monomial>> equations;  // unknown = sum of its monomials
  std::vector<int> output;                       // F = sum of these unknowns

  std::size_t size() const { return equations.size(); }
};

PolynomialSystem weighted_system(const ConfigCfg& g);

struct Solution {
  std::vector<TruncatedSeries> values;
  std::size_t sweeps = 0;

  TruncatedSeries output(const PolynomialSystem& sys) const;
};

// Least solution by Jacobi-style Kleene iteration from zero. `on_sweep` sees every iterate.
Solution solve_truncated(const PolynomialSystem& sys, int order, const Limits& limits = {},
                         Execution exec = Execution::Parallel,
                         const std::function<void(const std::vector<TruncatedSeries>&)>& on_sweep = {});

// Newton iteration: each step adds the least solution of the linearized system at the
// current iterate, found by Kleene iteration. Same least solution as solve_truncated;
// `sweeps` counts Newton steps.
Solution solve_newton(const PolynomialSystem& sys, int order, const Limits& limits = {});

enum class Solver { Kleene, Newton };

// c_1..c_N of the SAW generating function at the root vertex.
std::vector<BigInt> saw_coefficients(const ConeTypeSystem& system, int order, const Limits& limits = {},
                                     Execution exec = Execution::Parallel, Solver solver = Solver::Kleene);

struct ConnectiveEstimate {
  std::vector<double> root_estimates;   // c_n^(1/n), n = 1..N
  std::vector<double> ratio_estimates;  // c_(n+1)/c_n, n = 1..N-1
};

ConnectiveEstimate connective_estimate(const std::vector<BigInt>& coeffs);

// Rows "n, c_n, c_n^(1/n), c_n/c_(n-1)"; the first row has "-" for the ratio.
std::string series_table(const std::vector<BigInt>& coeffs);

}  // namespace sawlab
