#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tricontract/errors.hpp"
#include "tricontract/phi.hpp"

namespace tricontract {

// Tolerance for the triangle-inequality check: a violation means
// d(i,k) > d(i,j) + d(j,k) + kTriangleTol. Example distances are small
// integers, so an absolute slack is appropriate.
inline constexpr double kTriangleTol = 1e-9;

// A finite metric space: an ordered list of distinct point labels and a full
// square distance matrix. Construction checks structure only (shape, label
// distinctness, finite entries); the metric axioms themselves are the job of
// validate_metric, so that invalid matrices can still be inspected and
// reported on.
class FiniteMetricSpace {
public:
  using point_type = std::string;
  static constexpr bool is_finite_space = true;

  FiniteMetricSpace(std::vector<std::string> labels,
                    std::vector<std::vector<double>> dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {
    if (labels_.empty()) {
      throw structure_error("a metric space needs at least one point");
    }
    const std::size_t n = labels_.size();
    if (dist_.size() != n) {
      throw structure_error("distance matrix has " + std::to_string(dist_.size()) +
                            " rows for " + std::to_string(n) + " points");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (dist_[i].size() != n) {
        throw structure_error("distance matrix row " + std::to_string(i) +
                              " has " + std::to_string(dist_[i].size()) +
                              " entries, expected " + std::to_string(n));
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(dist_[i][j])) {
          throw structure_error("distance (" + labels_[i] + ", " + labels_[j] +
                                ") is not finite");
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, inserted] = index_.emplace(labels_[i], i);
      if (!inserted) {
        throw structure_error("duplicate point label '" + labels_[i] + "'");
      }
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<double>>& matrix() const { return dist_; }

  bool contains(const std::string& label) const {
    return index_.find(label) != index_.end();
  }

  std::size_t index_of(const std::string& label) const {
    const auto it = index_.find(label);
    if (it == index_.end()) {
      throw lookup_error("unknown point label '" + label + "'");
    }
    return it->second;
  }

  double distance_by_index(std::size_t i, std::size_t j) const {
    return dist_[i][j];
  }

  double distance(const std::string& p, const std::string& q) const {
    return dist_[index_of(p)][index_of(q)];
  }

private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> dist_;
  std::map<std::string, std::size_t> index_;
};

// R^n with the usual Euclidean distance. All metric axioms hold by
// construction.
struct EuclideanSpace {
  using point_type = std::vector<double>;
  static constexpr bool is_finite_space = false;

  std::size_t dimension = 1;

  double distance(const point_type& p, const point_type& q) const {
    if (p.size() != dimension || q.size() != dimension) {
      throw structure_error("point dimension does not match the space");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < dimension; ++i) {
      const double d = p[i] - q[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
};

// A total self-map of a space: a lookup table on a finite space, or an
// affine map x -> A*x + b on a Euclidean space.
class SelfMap {
public:
  enum class Kind { Table, Affine };

  static SelfMap table(std::map<std::string, std::string> entries) {
    SelfMap m;
    m.kind_ = Kind::Table;
    m.table_ = std::move(entries);
    return m;
  }

  static SelfMap affine(std::vector<std::vector<double>> A,
                        std::vector<double> b) {
    const std::size_t n = b.size();
    if (A.size() != n) {
      throw structure_error("affine map: matrix has " + std::to_string(A.size()) +
                            " rows for offset of dimension " + std::to_string(n));
    }
    for (const auto& row : A) {
      if (row.size() != n) {
        throw structure_error("affine map: matrix is not square");
      }
    }
    SelfMap m;
    m.kind_ = Kind::Affine;
    m.matrix_ = std::move(A);
    m.offset_ = std::move(b);
    return m;
  }

  Kind kind() const { return kind_; }
  const std::map<std::string, std::string>& table() const { return table_; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }
  const std::vector<double>& offset() const { return offset_; }

  std::string apply(const FiniteMetricSpace& space, const std::string& p) const {
    if (kind_ != Kind::Table) {
      throw domain_error("an affine map cannot act on a finite space");
    }
    if (!space.contains(p)) {
      throw lookup_error("unknown point label '" + p + "'");
    }
    const auto it = table_.find(p);
    if (it == table_.end()) {
      throw lookup_error("map is not defined at point '" + p + "'");
    }
    if (!space.contains(it->second)) {
      throw lookup_error("map sends '" + p + "' to unknown label '" +
                         it->second + "'");
    }
    return it->second;
  }

  std::vector<double> apply(const EuclideanSpace& space,
                            const std::vector<double>& x) const {
    if (kind_ != Kind::Affine) {
      throw domain_error("a table map cannot act on a Euclidean space");
    }
    if (x.size() != space.dimension || offset_.size() != space.dimension) {
      throw structure_error("point dimension does not match the space");
    }
    std::vector<double> y(space.dimension, 0.0);
    for (std::size_t i = 0; i < space.dimension; ++i) {
      double acc = offset_[i];
      for (std::size_t j = 0; j < space.dimension; ++j) {
        acc += matrix_[i][j] * x[j];
      }
      y[i] = acc;
    }
    return y;
  }

  // Throws unless every label of the space has an image inside the space.
  void require_total(const FiniteMetricSpace& space) const {
    if (kind_ != Kind::Table) {
      throw domain_error("an affine map cannot act on a finite space");
    }
    for (const auto& label : space.labels()) {
      apply(space, label);
    }
  }

private:
  Kind kind_ = Kind::Table;
  std::map<std::string, std::string> table_;
  std::vector<std::vector<double>> matrix_;
  std::vector<double> offset_;
};

inline double distance(const FiniteMetricSpace& space, const std::string& p,
                       const std::string& q) {
  return space.distance(p, q);
}

inline double distance(const EuclideanSpace& space, const std::vector<double>& p,
                       const std::vector<double>& q) {
  return space.distance(p, q);
}

inline std::string apply_map(const SelfMap& map, const FiniteMetricSpace& space,
                             const std::string& p) {
  return map.apply(space, p);
}

inline std::vector<double> apply_map(const SelfMap& map, const EuclideanSpace& space,
                                     const std::vector<double>& x) {
  return map.apply(space, x);
}

struct MetricViolation {
  std::string axiom;                // symmetry | zero_diagonal | positivity | triangle
  std::vector<std::string> points;  // the labels involved (two or three)
  std::vector<double> observed;     // the offending values
};

struct MetricValidationReport {
  bool symmetric_ok = true;
  bool zero_diagonal_ok = true;
  bool positivity_ok = true;
  bool triangle_ok = true;
  std::vector<MetricViolation> violations;

  bool all_ok() const {
    return symmetric_ok && zero_diagonal_ok && positivity_ok && triangle_ok;
  }
};

// Checks all four metric axioms exhaustively: zero diagonal and symmetry as
// written (exact), strict positivity off the diagonal, and the triangle
// inequality over all ordered triples with kTriangleTol slack.
inline MetricValidationReport validate_metric(const FiniteMetricSpace& space) {
  MetricValidationReport report;
  const auto& d = space.matrix();
  const auto& labels = space.labels();
  const std::size_t n = space.size();

  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] != 0.0) {
      report.zero_diagonal_ok = false;
      report.violations.push_back({"zero_diagonal", {labels[i]}, {d[i][i]}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i][j] != d[j][i]) {
        report.symmetric_ok = false;
        report.violations.push_back(
            {"symmetry", {labels[i], labels[j]}, {d[i][j], d[j][i]}});
      }
      if (!(d[i][j] > 0.0)) {
        report.positivity_ok = false;
        report.violations.push_back(
            {"positivity", {labels[i], labels[j]}, {d[i][j]}});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (d[i][k] > d[i][j] + d[j][k] + kTriangleTol) {
          report.triangle_ok = false;
          report.violations.push_back({"triangle",
                                       {labels[i], labels[j], labels[k]},
                                       {d[i][k], d[i][j], d[j][k]}});
        }
      }
    }
  }
  return report;
}

// A random valid finite metric space: i.i.d. edge weights in [1,2] on the
// complete graph, then an all-pairs shortest-path repair pass. Weights in
// [1,2] already satisfy the triangle inequality (2 <= 1+1); the repair is
// kept as a safety invariant for any future weight range. Deterministic per
// seed. Labels are P0, P1, ...
inline FiniteMetricSpace random_finite_metric(std::size_t n, std::uint64_t seed) {
  if (n < 3) {
    throw domain_error("random_finite_metric needs n >= 3, got " +
                       std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(1.0, 2.0);

  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = weight(rng);
      d[i][j] = w;
      d[j][i] = w;
    }
  }
  // Floyd-Warshall repair.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }

  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = "P" + std::to_string(i);
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

// A uniformly random total table map on the space. Deterministic per seed.
inline SelfMap random_self_map(const FiniteMetricSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
  std::map<std::string, std::string> entries;
  for (const auto& label : space.labels()) {
    entries[label] = space.labels()[pick(rng)];
  }
  return SelfMap::table(std::move(entries));
}

}  // namespace tricontract
