#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tricontract/errors.hpp"
#include "tricontract/metric.hpp"
#include "tricontract/phi.hpp"

namespace tricontract {

// alpha_star must clear 1 by this margin before a map counts as contracting:
// the admissible constants live in [0,1), and ratios that land exactly on 1
// must classify as non-contracting.
inline constexpr double kContractionStrictness = 1e-9;

// The functional values of one unordered triple of pairwise-distinct points:
// phi over the image distances, phi over the preimage distances, and their
// ratio. This is the instrumentation behind certification and violation
// listing. Points are sorted by label.
struct TripleEvaluation {
  std::array<std::string, 3> points{};
  double phi_image = 0.0;
  double phi_preimage = 0.0;
  double ratio = 0.0;
};

// The result of certifying the triangle-contraction inequality on a finite
// space: the minimal admissible constant (the maximum image/preimage ratio
// over all triples), a triple achieving it, and the verdict.
struct ContractionCertificate {
  PhiSpec phi;
  double alpha_star = 0.0;
  std::array<std::string, 3> witness{};
  bool contracting = false;
  std::size_t triples_checked = 0;

  // A certificate wrapping an externally estimated alpha (e.g. a Monte Carlo
  // lower bound on a Euclidean space). It carries no witness and proves
  // nothing; it only lets the solver run with the estimated constant.
  static ContractionCertificate assumed(PhiSpec phi, double alpha,
                                        std::size_t samples = 0) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
      throw domain_error("assumed contraction constant must lie in [0,1)");
    }
    ContractionCertificate cert;
    cert.phi = phi;
    cert.alpha_star = alpha;
    cert.contracting = true;
    cert.triples_checked = samples;
    return cert;
  }
};

struct PeriodicityReport {
  std::vector<std::string> fixed_points;    // Tx = x
  std::vector<std::string> period2_points;  // T(Tx) = x and Tx != x
};

namespace detail {

inline std::array<std::string, 3> sorted_triple(std::string a, std::string b,
                                                std::string c) {
  std::array<std::string, 3> t{std::move(a), std::move(b), std::move(c)};
  std::sort(t.begin(), t.end());
  return t;
}

inline void require_analysis_preconditions(const FiniteMetricSpace& space,
                                           const SelfMap& map) {
  if (space.size() < 3) {
    throw domain_error("contraction analysis needs at least 3 points, got " +
                       std::to_string(space.size()));
  }
  map.require_total(space);
}

}  // namespace detail

// Evaluates phi over the image and preimage distances of every unordered
// triple of pairwise-distinct points, in index order with labels sorted
// within each triple. Preimages of distinct points in a valid metric have
// strictly positive pairwise distances, so the preimage value is positive;
// a zero denominator is reported as a metric defect.
inline std::vector<TripleEvaluation> evaluate_triples(
    const FiniteMetricSpace& space, const SelfMap& map, const PhiSpec& phi) {
  detail::require_analysis_preconditions(space, map);

  const std::size_t n = space.size();
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) {
    image[i] = space.index_of(map.apply(space, space.labels()[i]));
  }

  std::vector<TripleEvaluation> rows;
  rows.reserve(n * (n - 1) * (n - 2) / 6);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        TripleEvaluation row;
        row.points = detail::sorted_triple(space.labels()[i], space.labels()[j],
                                           space.labels()[k]);
        row.phi_preimage = phi_eval(phi, space.distance_by_index(i, j),
                                    space.distance_by_index(j, k),
                                    space.distance_by_index(i, k));
        row.phi_image = phi_eval(phi, space.distance_by_index(image[i], image[j]),
                                 space.distance_by_index(image[j], image[k]),
                                 space.distance_by_index(image[i], image[k]));
        if (!(row.phi_preimage > 0.0)) {
          throw metric_error(
              "distinct points " + row.points[0] + ", " + row.points[1] + ", " +
                  row.points[2] + " have a zero triangle functional",
              "positivity", {row.points[0], row.points[1], row.points[2]});
        }
        row.ratio = row.phi_image / row.phi_preimage;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

// Certifies the triangle-contraction inequality by exhaustive enumeration of
// unordered triples. alpha_star is the exact maximum ratio (the infimum of
// admissible constants); ties on the maximum are broken toward the
// lexicographically least sorted triple so reports are deterministic.
inline ContractionCertificate certify(const FiniteMetricSpace& space,
                                      const SelfMap& map, const PhiSpec& phi) {
  const auto rows = evaluate_triples(space, map, phi);

  ContractionCertificate cert;
  cert.phi = phi;
  cert.triples_checked = rows.size();
  bool first = true;
  for (const auto& row : rows) {
    const bool better =
        first || row.ratio > cert.alpha_star ||
        (row.ratio == cert.alpha_star && row.points < cert.witness);
    if (better) {
      cert.alpha_star = row.ratio;
      cert.witness = row.points;
      first = false;
    }
  }
  cert.contracting = cert.alpha_star < 1.0 - kContractionStrictness;
  return cert;
}

// Lists every unordered triple violating the contraction inequality at the
// given constant: phi(images) > alpha * phi(preimages) + kAbsTol. An empty
// result means the map satisfies the inequality for this alpha.
inline std::vector<TripleEvaluation> check_contraction(
    const FiniteMetricSpace& space, const SelfMap& map, const PhiSpec& phi,
    double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw domain_error("contraction constant must lie in [0,1)");
  }
  std::vector<TripleEvaluation> violations;
  for (auto& row : evaluate_triples(space, map, phi)) {
    if (row.phi_image > alpha * row.phi_preimage + kAbsTol) {
      violations.push_back(std::move(row));
    }
  }
  return violations;
}

// Exhaustive scan for fixed points (Tx = x) and points of prime period 2
// (T(Tx) = x with Tx != x). Output preserves the space's label order.
inline PeriodicityReport periodicity_report(const FiniteMetricSpace& space,
                                            const SelfMap& map) {
  map.require_total(space);
  PeriodicityReport report;
  for (const auto& label : space.labels()) {
    const std::string once = map.apply(space, label);
    if (once == label) {
      report.fixed_points.push_back(label);
    } else if (map.apply(space, once) == label) {
      report.period2_points.push_back(label);
    }
  }
  return report;
}

// The perimeter criterion: certification with phi = sum, i.e. the classical
// contracting-perimeters test. Named separately so reports can reference it.
inline ContractionCertificate petrov_perimeter_check(
    const FiniteMetricSpace& space, const SelfMap& map) {
  return certify(space, map, PhiSpec::sum());
}

struct SquaredDistanceResult {
  ContractionCertificate certificate;  // phi = pnorm:2
  double beta = 0.0;                   // alpha_star^2, the squared-distance constant
};

// The squared-distance criterion: certification with the Euclidean 2-norm
// functional, returning both the certificate and beta = alpha_star^2, the
// constant of the sum-of-squared-distances inequality (alpha = sqrt(beta)).
inline SquaredDistanceResult corollary_squared_check(
    const FiniteMetricSpace& space, const SelfMap& map) {
  SquaredDistanceResult result;
  result.certificate = certify(space, map, PhiSpec::pnorm(2));
  result.beta = result.certificate.alpha_star * result.certificate.alpha_star;
  return result;
}

}  // namespace tricontract
