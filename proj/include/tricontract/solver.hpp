#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "tricontract/analysis.hpp"
#include "tricontract/errors.hpp"
#include "tricontract/metric.hpp"
#include "tricontract/phi.hpp"

namespace tricontract {

inline constexpr std::size_t kDefaultMaxIterations = 1'000'000;

template <class Point>
struct FixedPointReached {
  Point point;
};

template <class Point>
struct Period2Detected {
  Point first;
  Point second;
};

template <class Point>
struct ToleranceReached {
  Point point;
  double bound = 0.0;
};

struct BudgetExhausted {};

template <class Point>
using IterationVerdict =
    std::variant<FixedPointReached<Point>, Period2Detected<Point>,
                 ToleranceReached<Point>, BudgetExhausted>;

// The recorded Picard orbit x0, x1 = T x0, ... together with the triangle
// functional values d_i = phi(d(x_i,x_{i+1}), d(x_{i+1},x_{i+2}),
// d(x_i,x_{i+2})), recorded while the three points are pairwise distinct.
// Under a contracting certificate the d_i decay geometrically:
// d_{i+1} <= alpha_star * d_i.
template <class Point>
struct IterationTrace {
  Point start{};
  std::vector<Point> steps;
  double d0 = 0.0;
  std::vector<double> d_seq;
  IterationVerdict<Point> verdict = BudgetExhausted{};

  bool reached_fixed_point() const {
    return std::holds_alternative<FixedPointReached<Point>>(verdict);
  }
  const Point* fixed_point() const {
    const auto* v = std::get_if<FixedPointReached<Point>>(&verdict);
    return v ? &v->point : nullptr;
  }
};

using FiniteTrace = IterationTrace<std::string>;
using EuclideanTrace = IterationTrace<std::vector<double>>;

// The guaranteed distance between the n-th iterate and every later one:
// alpha^(n-1) * d0 / ((1-alpha) * k), n >= 1. Under a contracting
// certificate, d(x_n, x_{n+p}) never exceeds this for any p >= 1.
inline double cauchy_tail_bound(double alpha, double k, double d0,
                                std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw domain_error("alpha must lie in (0,1)");
  }
  if (!(k > 0.0)) throw domain_error("k must be > 0");
  if (!(d0 >= 0.0)) throw domain_error("d0 must be >= 0");
  if (n < 1) throw domain_error("n must be >= 1");
  return std::pow(alpha, static_cast<double>(n - 1)) * d0 / ((1.0 - alpha) * k);
}

// The least n >= 1 whose tail bound drops below eps; 1 when d0 = 0. The
// closed-form estimate is adjusted by direct evaluation so the result is the
// exact argmin regardless of logarithm rounding.
inline std::size_t a_priori_iteration_count(double alpha, double k, double d0,
                                            double eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw domain_error("alpha must lie in (0,1)");
  }
  if (!(k > 0.0)) throw domain_error("k must be > 0");
  if (!(d0 >= 0.0)) throw domain_error("d0 must be >= 0");
  if (!(eps > 0.0)) throw domain_error("eps must be > 0");
  if (d0 == 0.0) return 1;

  const double base = d0 / ((1.0 - alpha) * k);
  double guess = 1.0;
  if (base >= eps) {
    guess = 1.0 + std::ceil(std::log(eps / base) / std::log(alpha));
  }
  std::size_t n = guess < 1.0 ? 1 : static_cast<std::size_t>(guess);
  while (cauchy_tail_bound(alpha, k, d0, n) >= eps) ++n;
  while (n > 1 && cauchy_tail_bound(alpha, k, d0, n - 1) < eps) --n;
  return n;
}

namespace detail {

template <class Point>
bool points_equal(const Point& a, const Point& b) {
  return a == b;
}

// d_i values along a recorded orbit, for consecutive i while the triple
// (x_i, x_{i+1}, x_{i+2}) is pairwise distinct.
template <class Space>
std::vector<double> orbit_d_sequence(const Space& space, const PhiSpec& phi,
                                     const std::vector<typename Space::point_type>& steps) {
  std::vector<double> d_seq;
  for (std::size_t i = 0; i + 2 < steps.size(); ++i) {
    const auto& x = steps[i];
    const auto& y = steps[i + 1];
    const auto& z = steps[i + 2];
    if (points_equal(x, y) || points_equal(y, z) || points_equal(x, z)) break;
    d_seq.push_back(phi_eval(phi, space.distance(x, y), space.distance(y, z),
                             space.distance(x, z)));
  }
  return d_seq;
}

}  // namespace detail

// Runs the Picard iteration x_{n+1} = T x_n from x0 under a contracting
// certificate.
//
// On a finite space the orbit must terminate: it stops at the first n with
// T x_n = x_n (fixed point) or T(T x_n) = x_n != T x_n (the period-2
// obstruction). Both conditions are checked before each d_i is computed, so
// the degenerate branches are explicit.
//
// On a Euclidean space the orbit stops at the first n >= 1 whose Cauchy tail
// bound alpha^(n-1) * d0 / ((1-alpha) * k) drops below eps, returning x_n and
// the bound; d0 comes from the first three iterates, and if those are not
// pairwise distinct the degenerate case resolves directly (x1 = x0 gives a
// fixed point, x2 = x0 != x1 gives period 2). Exceeding max_iter yields
// BudgetExhausted.
template <class Space>
IterationTrace<typename Space::point_type> picard_iterate(
    const Space& space, const SelfMap& map,
    const typename Space::point_type& x0, const ContractionCertificate& cert,
    double eps, std::size_t max_iter = kDefaultMaxIterations) {
  using Point = typename Space::point_type;

  if (!cert.contracting) {
    throw domain_error(
        "picard_iterate requires a contracting certificate (alpha_star < 1)");
  }
  if (!(eps > 0.0)) throw domain_error("eps must be > 0");

  IterationTrace<Point> trace;
  trace.start = x0;
  trace.steps.push_back(x0);

  if constexpr (Space::is_finite_space) {
    (void)space.index_of(x0);
    for (std::size_t i = 0; i < max_iter; ++i) {
      const Point x = trace.steps.back();
      const Point tx = map.apply(space, x);
      trace.steps.push_back(tx);
      if (detail::points_equal(tx, x)) {
        trace.verdict = FixedPointReached<Point>{x};
        break;
      }
      if (detail::points_equal(map.apply(space, tx), x)) {
        trace.verdict = Period2Detected<Point>{x, tx};
        break;
      }
    }
  } else {
    const double alpha = cert.alpha_star;
    const double k = phi_lower_bound_k(cert.phi);

    // First three iterates settle the degenerate branches and give d0.
    const Point x1 = map.apply(space, x0);
    if (detail::points_equal(x1, x0)) {
      trace.steps.push_back(x1);
      trace.verdict = FixedPointReached<Point>{x0};
      return trace;
    }
    trace.steps.push_back(x1);
    const Point x2 = map.apply(space, x1);
    if (detail::points_equal(x2, x0)) {
      trace.verdict = Period2Detected<Point>{x0, x1};
      return trace;
    }
    trace.steps.push_back(x2);
    if (detail::points_equal(x2, x1)) {
      trace.verdict = FixedPointReached<Point>{x1};
      trace.d_seq = detail::orbit_d_sequence(space, cert.phi, trace.steps);
      return trace;
    }

    const double d0 = phi_eval(cert.phi, space.distance(x0, x1),
                               space.distance(x1, x2), space.distance(x0, x2));
    trace.d0 = d0;

    for (std::size_t n = 1;; ++n) {
      const double bound = (d0 == 0.0) ? 0.0 : cauchy_tail_bound(alpha, k, d0, n);
      if (bound < eps) {
        while (trace.steps.size() <= n) {
          trace.steps.push_back(map.apply(space, trace.steps.back()));
        }
        trace.verdict = ToleranceReached<Point>{trace.steps[n], bound};
        break;
      }
      if (n >= max_iter) {
        trace.verdict = BudgetExhausted{};
        break;
      }
      while (trace.steps.size() <= n + 1) {
        const Point next = map.apply(space, trace.steps.back());
        const Point& last = trace.steps.back();
        if (detail::points_equal(next, last)) {
          trace.steps.push_back(next);
          trace.verdict = FixedPointReached<Point>{last};
          trace.d_seq = detail::orbit_d_sequence(space, cert.phi, trace.steps);
          return trace;
        }
        trace.steps.push_back(next);
      }
    }
  }

  trace.d_seq = detail::orbit_d_sequence(space, cert.phi, trace.steps);
  trace.d0 = trace.d_seq.empty() ? 0.0 : trace.d_seq.front();
  return trace;
}

namespace detail {

// Uniform draw from the closed ball of the given radius around the origin:
// a Gaussian direction scaled to U^(1/dim) of the radius.
inline std::vector<double> sample_in_ball(std::mt19937_64& rng,
                                          std::size_t dimension, double radius) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(dimension);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& c : x) {
      c = gauss(rng);
      norm2 += c * c;
    }
  } while (norm2 == 0.0);
  const double scale =
      radius * std::pow(unit(rng), 1.0 / static_cast<double>(dimension)) /
      std::sqrt(norm2);
  for (auto& c : x) c *= scale;
  return x;
}

}  // namespace detail

// Monte Carlo estimate of the contraction constant of an affine map on a
// Euclidean space: the maximum inequality ratio over random pairwise-distinct
// triples drawn uniformly from the ball of the given radius. This is a LOWER
// bound on the true constant, never a certificate. Deterministic per seed.
inline double sampled_alpha_estimate(const EuclideanSpace& space,
                                     const SelfMap& map, const PhiSpec& phi,
                                     std::size_t samples, double radius,
                                     std::uint64_t seed) {
  if (samples < 1) throw domain_error("samples must be >= 1");
  if (!(radius > 0.0)) throw domain_error("radius must be > 0");
  if (map.kind() != SelfMap::Kind::Affine) {
    throw domain_error("sampled_alpha_estimate requires an affine map");
  }

  std::mt19937_64 rng(seed);
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> x, y, z;
    double dxy = 0.0, dyz = 0.0, dxz = 0.0;
    int redraws = 0;
    for (;;) {
      x = detail::sample_in_ball(rng, space.dimension, radius);
      y = detail::sample_in_ball(rng, space.dimension, radius);
      z = detail::sample_in_ball(rng, space.dimension, radius);
      dxy = space.distance(x, y);
      dyz = space.distance(y, z);
      dxz = space.distance(x, z);
      if (dxy > 0.0 && dyz > 0.0 && dxz > 0.0) break;
      if (++redraws > 100) {
        throw numeric_error("could not draw a pairwise-distinct triple");
      }
    }
    const auto tx = map.apply(space, x);
    const auto ty = map.apply(space, y);
    const auto tz = map.apply(space, z);
    const double pre = phi_eval(phi, dxy, dyz, dxz);
    const double img = phi_eval(phi, space.distance(tx, ty),
                                space.distance(ty, tz), space.distance(tx, tz));
    best = std::max(best, img / pre);
  }
  return best;
}

// Empirical check of the continuity guarantee: computes the modulus
// delta = continuity_modulus(phi, k, alpha, eps), samples points x with
// d(x0, x) < delta, and reports whether every sample lands with
// d(Tx0, Tx) < eps.
inline bool continuity_probe(const EuclideanSpace& space, const SelfMap& map,
                             const PhiSpec& phi, double k, double alpha,
                             double eps, const std::vector<double>& x0,
                             std::size_t samples, std::uint64_t seed) {
  const double delta = continuity_modulus(phi, k, alpha, eps);
  std::mt19937_64 rng(seed);
  const auto tx0 = map.apply(space, x0);
  for (std::size_t s = 0; s < samples; ++s) {
    auto offset = detail::sample_in_ball(rng, space.dimension, delta);
    std::vector<double> x(space.dimension);
    for (std::size_t i = 0; i < space.dimension; ++i) {
      x[i] = x0[i] + offset[i];
    }
    if (!(space.distance(x0, x) < delta)) continue;  // boundary draw
    if (!(space.distance(tx0, map.apply(space, x)) < eps)) return false;
  }
  return true;
}

}  // namespace tricontract
