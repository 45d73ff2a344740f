// Euclidean workflow: estimate the contraction constant of an affine map by
// sampling, wrap it in an assumed certificate, and iterate until the Cauchy
// tail bound drops below the tolerance.

#include <iostream>
#include <vector>

#include <tricontract/tricontract.hpp>

int main() {
  using namespace tricontract;

  const EuclideanSpace line{1};
  // x -> x/2: contracts every distance by exactly one half.
  const SelfMap halving = SelfMap::affine({{0.5}}, {0.0});
  const PhiSpec phi = PhiSpec::sum();

  const double alpha_hat =
      sampled_alpha_estimate(line, halving, phi, 20000, 10.0, 42);
  std::cout << "sampled alpha (lower bound, not a certificate): "
            << format_number(alpha_hat) << "\n";

  const auto cert = ContractionCertificate::assumed(phi, alpha_hat, 20000);
  const double eps = 1e-3;
  const EuclideanTrace trace = picard_iterate(line, halving, {1.0}, cert, eps);

  std::cout << "iterates recorded: " << trace.steps.size() << "\n";
  std::cout << "d0 = " << format_number(trace.d0) << "\n";
  if (const auto* tol =
          std::get_if<ToleranceReached<std::vector<double>>>(&trace.verdict)) {
    std::cout << "stopped at x = " << format_number(tol->point[0])
              << " with tail bound " << format_number(tol->bound) << " < "
              << format_number(eps) << "\n";
    const std::size_t n_expected =
        a_priori_iteration_count(alpha_hat, phi_lower_bound_k(phi), trace.d0, eps);
    std::cout << "a-priori count for this d0: " << n_expected << "\n";
  }

  const bool cont = continuity_probe(line, halving, phi, 1.0, alpha_hat, 1e-3,
                                     {0.25}, 5000, 7);
  std::cout << "continuity probe at eps=1e-3: " << (cont ? "ok" : "FAILED")
            << "\n";
  return 0;
}
