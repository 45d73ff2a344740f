#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tricontract/errors.hpp"

namespace tricontract {

// Default absolute tolerance for floating-point comparisons throughout the
// library. All quantities of interest are O(10), so this sits far below any
// meaningful gap.
inline constexpr double kAbsTol = 1e-9;

// Upper edge of the box [0,G]^3 used for axiom grids, random sampling, and
// the bisection bracket of continuity_modulus.
inline constexpr double kAxiomGridBound = 10.0;

// Iteration cap for the modulus bisection. 2^-200 of the bracket underflows
// any practical tolerance long before this is reached.
inline constexpr int kBisectionCap = 200;

enum class PhiFamily { Sum, Max, PNorm, SqrtSumSquared };

// One member of the admissible class of triangle functionals
// [0,inf)^3 -> [0,inf): symmetric, continuous, non-decreasing, bounded below
// by k*a for some k > 0, and vanishing exactly at the origin.
//
// Only the four built-in families are constructible; their admissibility is
// guaranteed by construction rather than by sampling.
struct PhiSpec {
  PhiFamily family = PhiFamily::Sum;
  int p = 0;  // exponent, PNorm only, integer >= 2

  static PhiSpec sum() { return PhiSpec{PhiFamily::Sum, 0}; }
  static PhiSpec max() { return PhiSpec{PhiFamily::Max, 0}; }
  static PhiSpec sqrt_sum_squared() { return PhiSpec{PhiFamily::SqrtSumSquared, 0}; }
  static PhiSpec pnorm(int p) {
    if (p < 2) {
      throw domain_error("pnorm exponent must be an integer >= 2, got " +
                         std::to_string(p));
    }
    return PhiSpec{PhiFamily::PNorm, p};
  }

  friend bool operator==(const PhiSpec&, const PhiSpec&) = default;
};

// Textual form used by the CLI and the file formats:
//   sum | max | pnorm:<p> | sqrtsq
inline std::string to_string(const PhiSpec& spec) {
  switch (spec.family) {
    case PhiFamily::Sum: return "sum";
    case PhiFamily::Max: return "max";
    case PhiFamily::PNorm: return "pnorm:" + std::to_string(spec.p);
    case PhiFamily::SqrtSumSquared: return "sqrtsq";
  }
  throw domain_error("unknown phi family");
}

inline PhiSpec parse_phi_spec(const std::string& text) {
  if (text == "sum") return PhiSpec::sum();
  if (text == "max") return PhiSpec::max();
  if (text == "sqrtsq") return PhiSpec::sqrt_sum_squared();
  if (text.rfind("pnorm:", 0) == 0) {
    const std::string arg = text.substr(6);
    std::size_t used = 0;
    int p = 0;
    try {
      p = std::stoi(arg, &used);
    } catch (const std::exception&) {
      throw parse_error("invalid pnorm exponent '" + arg + "'");
    }
    if (used != arg.size()) {
      throw parse_error("invalid pnorm exponent '" + arg + "'");
    }
    return PhiSpec::pnorm(p);
  }
  throw parse_error("unknown phi spec '" + text +
                    "' (expected sum | max | pnorm:<p> | sqrtsq)");
}

namespace detail {

inline void require_phi_argument(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw domain_error(std::string("phi argument ") + name +
                       " must be finite and >= 0, got " + std::to_string(v));
  }
}

// x^p for integer p >= 1 by repeated multiplication.
inline double ipow(double x, int p) {
  double acc = 1.0;
  for (int i = 0; i < p; ++i) acc *= x;
  return acc;
}

}  // namespace detail

// Evaluates the functional named by `spec` at (a, b, c).
//
//   Sum             a + b + c
//   Max             max{a, b, c}
//   PNorm           (a^p + b^p + c^p)^(1/p)
//   SqrtSumSquared  (sqrt(a) + sqrt(b) + sqrt(c))^2
inline double phi_eval(const PhiSpec& spec, double a, double b, double c) {
  detail::require_phi_argument(a, "a");
  detail::require_phi_argument(b, "b");
  detail::require_phi_argument(c, "c");
  switch (spec.family) {
    case PhiFamily::Sum:
      return a + b + c;
    case PhiFamily::Max:
      return std::max(a, std::max(b, c));
    case PhiFamily::PNorm: {
      const double s = detail::ipow(a, spec.p) + detail::ipow(b, spec.p) +
                       detail::ipow(c, spec.p);
      return spec.p == 2 ? std::sqrt(s) : std::pow(s, 1.0 / spec.p);
    }
    case PhiFamily::SqrtSumSquared: {
      const double s = std::sqrt(a) + std::sqrt(b) + std::sqrt(c);
      return s * s;
    }
  }
  throw domain_error("unknown phi family");
}

// A constant k > 0 with k*a <= phi(a,b,c) for all a,b,c >= 0. For every
// built-in family the value 1 is sound:
//   a <= a+b+c,  a <= max{a,b,c},  a <= (a^p+...)^(1/p),  a = sqrt(a)^2 <=
//   (sqrt(a)+sqrt(b)+sqrt(c))^2.
// Sound, not necessarily the largest valid constant.
inline double phi_lower_bound_k(const PhiSpec&) { return 1.0; }

// The concrete inputs that exposed an axiom failure: the triple under test,
// the triple it was compared against (permutation, perturbation, or origin),
// and the observed functional values (unused slots zero).
struct PhiCounterexample {
  std::array<double, 3> input{};
  std::array<double, 3> compared{};
  std::array<double, 3> values{};
};

struct PhiAxiomReport {
  bool symmetric_ok = true;
  bool monotone_ok = true;
  bool lower_bound_ok = true;
  bool zero_iff_ok = true;
  bool continuity_sampled_ok = true;
  std::optional<PhiCounterexample> counterexample;
  std::size_t samples_used = 0;

  bool all_ok() const {
    return symmetric_ok && monotone_ok && lower_bound_ok && zero_iff_ok &&
           continuity_sampled_ok;
  }
};

using TripleFunction = std::function<double(double, double, double)>;

namespace detail {

inline bool nearly_equal(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

struct AxiomChecker {
  const TripleFunction& f;
  double k;
  PhiAxiomReport report;

  void fail(bool PhiAxiomReport::* flag, const std::array<double, 3>& input,
            const std::array<double, 3>& compared,
            const std::array<double, 3>& values) {
    report.*flag = false;
    if (!report.counterexample) {
      report.counterexample = PhiCounterexample{input, compared, values};
    }
  }

  void check_symmetry(double a, double b, double c) {
    const double base = f(a, b, c);
    const std::array<std::array<double, 3>, 5> perms = {{
        {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
    for (const auto& q : perms) {
      const double v = f(q[0], q[1], q[2]);
      if (!nearly_equal(base, v)) {
        fail(&PhiAxiomReport::symmetric_ok, {a, b, c}, q, {base, v, 0.0});
        return;
      }
    }
  }

  void check_monotone(const std::array<double, 3>& lo,
                      const std::array<double, 3>& hi) {
    const double vlo = f(lo[0], lo[1], lo[2]);
    const double vhi = f(hi[0], hi[1], hi[2]);
    if (vhi < vlo - kAbsTol) {
      fail(&PhiAxiomReport::monotone_ok, lo, hi, {vlo, vhi, 0.0});
    }
  }

  void check_lower_bound(double a, double b, double c) {
    const double v = f(a, b, c);
    const double m = std::max(a, std::max(b, c));
    if (k * m > v + kAbsTol) {
      fail(&PhiAxiomReport::lower_bound_ok, {a, b, c}, {a, b, c}, {v, k * m, 0.0});
    }
  }

  void check_zero_iff(double a, double b, double c) {
    const double v = f(a, b, c);
    const double m = std::max(a, std::max(b, c));
    if (m <= 1e-12) {
      if (v != 0.0) {
        fail(&PhiAxiomReport::zero_iff_ok, {a, b, c}, {0, 0, 0}, {v, 0.0, 0.0});
      }
    } else if (v <= 1e-12) {
      fail(&PhiAxiomReport::zero_iff_ok, {a, b, c}, {0, 0, 0}, {v, m, 0.0});
    }
  }
};

}  // namespace detail

// Tests the class axioms for an arbitrary functional against a claimed lower
// bound constant. Symmetry, monotonicity, the k-lower-bound, and the zero
// condition are checked on a uniform grid over [0,G]^3 plus random samples;
// continuity is checked by a sampled modulus (deviations between nearby
// inputs must shrink as the inputs approach each other). The sampled
// continuity check is a heuristic, not a proof.
//
// A failing axiom is a report, not an error.
inline PhiAxiomReport check_phi_axioms(const TripleFunction& f, double claimed_k,
                                       std::size_t grid_size,
                                       std::size_t random_samples,
                                       std::uint64_t seed) {
  if (grid_size < 2) {
    throw domain_error("grid_size must be >= 2");
  }
  const double G = kAxiomGridBound;
  const double step = G / static_cast<double>(grid_size - 1);

  detail::AxiomChecker checker{f, claimed_k, {}};
  std::size_t samples = 0;

  std::vector<double> ticks(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    ticks[i] = static_cast<double>(i) * step;
  }

  // Exhaustive grid pass.
  for (double a : ticks) {
    for (double b : ticks) {
      for (double c : ticks) {
        ++samples;
        checker.check_symmetry(a, b, c);
        checker.check_lower_bound(a, b, c);
        checker.check_zero_iff(a, b, c);
        if (a + step <= G + 1e-12) checker.check_monotone({a, b, c}, {a + step, b, c});
        if (b + step <= G + 1e-12) checker.check_monotone({a, b, c}, {a, b + step, c});
        if (c + step <= G + 1e-12) checker.check_monotone({a, b, c}, {a, b, c + step});
      }
    }
  }

  // Randomized pass.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(0.0, G);
  std::uniform_real_distribution<double> bump(0.0, 1.0);
  for (std::size_t s = 0; s < random_samples; ++s) {
    ++samples;
    const double a = box(rng), b = box(rng), c = box(rng);
    checker.check_symmetry(a, b, c);
    checker.check_lower_bound(a, b, c);
    checker.check_zero_iff(a, b, c);
    checker.check_monotone(
        {a, b, c},
        {std::min(a + bump(rng), G), std::min(b + bump(rng), G), std::min(c + bump(rng), G)});
  }

  // Sampled continuity modulus: max |f(u) - f(v)| over pairs with
  // |u - v|_inf <= h, for geometrically shrinking h. The worst built-in
  // scaling is O(sqrt(h)) near the axes, so the deviation at the smallest
  // scale must fall well below the deviation at h = 1.
  const int scale_count = 11;
  const std::size_t pairs_per_scale =
      std::max<std::size_t>(64, random_samples / 16);
  std::vector<double> deviation(scale_count, 0.0);
  for (int j = 0; j < scale_count; ++j) {
    const double h = std::ldexp(1.0, -j);
    std::uniform_real_distribution<double> delta(-h, h);
    for (std::size_t s = 0; s < pairs_per_scale; ++s) {
      ++samples;
      std::array<double, 3> u{box(rng), box(rng), box(rng)};
      std::array<double, 3> v{};
      for (int t = 0; t < 3; ++t) {
        v[t] = std::min(std::max(u[t] + delta(rng), 0.0), G);
      }
      deviation[j] = std::max(
          deviation[j], std::abs(f(u[0], u[1], u[2]) - f(v[0], v[1], v[2])));
    }
  }
  // Each per-scale deviation is an independently sampled maximum, so the
  // sequence is noisy scale to scale; the robust signal is the shrink from
  // the coarsest scale to the finest. A discontinuity keeps the deviation
  // pinned at the jump size at every scale it is sampled.
  const bool continuity_ok =
      deviation.back() <= 0.25 * deviation.front() + 1e-12;
  if (!continuity_ok) {
    checker.fail(&PhiAxiomReport::continuity_sampled_ok, {deviation.front(), 0, 0},
                 {deviation.back(), 0, 0}, {0, 0, 0});
  }

  checker.report.samples_used = samples;
  return checker.report;
}

inline PhiAxiomReport check_phi_axioms(const PhiSpec& spec, std::size_t grid_size,
                                       std::size_t random_samples,
                                       std::uint64_t seed) {
  return check_phi_axioms(
      [&spec](double a, double b, double c) { return phi_eval(spec, a, b, c); },
      phi_lower_bound_k(spec), grid_size, random_samples, seed);
}

// A delta > 0 with phi(2*delta, 2*delta, 2*delta) < eps*k/alpha, found by
// bisection on the monotone scalar function t -> phi(2t,2t,2t). Any map whose
// certificate carries this phi, k, and alpha then satisfies
// d(x0, x) < delta  =>  d(Tx0, Tx) < eps.
inline double continuity_modulus(const PhiSpec& spec, double k, double alpha,
                                 double eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw domain_error("alpha must lie in (0,1)");
  }
  if (!(eps > 0.0)) throw domain_error("eps must be > 0");
  if (!(k > 0.0)) throw domain_error("k must be > 0");

  const double target = eps * k / alpha;
  const auto g = [&spec](double t) { return phi_eval(spec, 2 * t, 2 * t, 2 * t); };

  if (g(kAxiomGridBound) < target) return kAxiomGridBound;

  double lo = 0.0;           // g(lo) < target
  double hi = kAxiomGridBound;  // g(hi) >= target
  for (int i = 0; i < kBisectionCap; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Halving the strict point keeps the inequality comfortably strict.
  const double delta = 0.5 * lo;
  if (!(delta > 0.0) || !(g(delta) < target)) {
    throw numeric_error("modulus bisection failed to produce a strict delta");
  }
  return delta;
}

}  // namespace tricontract
