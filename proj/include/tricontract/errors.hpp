#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tricontract {

// Base class for everything this library throws.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A value outside an operation's stated domain (negative distance budget,
// alpha not in [0,1), too few points, ...).
class domain_error : public error {
public:
  using error::error;
};

// A label or point that does not belong to the space it was used with.
class lookup_error : public error {
public:
  using error::error;
};

// Malformed containers: ragged matrix, label/matrix size mismatch,
// duplicate labels, dimension mismatch.
class structure_error : public error {
public:
  using error::error;
};

// Distance data that violates a metric axiom. Carries the axiom name and
// the labels of the offending points so reports can name the witness.
class metric_error : public error {
public:
  metric_error(const std::string& message, std::string axiom,
               std::vector<std::string> points)
      : error(message), axiom_(std::move(axiom)), points_(std::move(points)) {}

  const std::string& axiom() const { return axiom_; }
  const std::vector<std::string>& points() const { return points_; }

private:
  std::string axiom_;
  std::vector<std::string> points_;
};

// An input document that does not conform to the expected format.
// `position` is the byte offset when the underlying parser reports one.
class parse_error : public error {
public:
  explicit parse_error(const std::string& message, std::size_t position = 0)
      : error(message), position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// An iterative numeric routine that failed to converge within its cap.
class numeric_error : public error {
public:
  using error::error;
};

}  // namespace tricontract
