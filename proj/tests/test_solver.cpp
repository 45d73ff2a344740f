#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <tricontract/fixtures.hpp>
#include <tricontract/solver.hpp>

using namespace tricontract;
using Catch::Matchers::WithinAbs;

namespace {

// x -> x/2 on the line: every distance halves, so the contraction constant
// is exactly 1/2 under every built-in functional.
const EuclideanSpace kLine{1};
const SelfMap kHalving = SelfMap::affine({{0.5}}, {0.0});

}  // namespace

TEST_CASE("tail bound arithmetic", "[solver]") {
  CHECK(cauchy_tail_bound(0.5, 1.0, 1.0, 1) == 2.0);
  // Each extra step halves the bound at alpha = 1/2.
  for (std::size_t n = 1; n < 20; ++n) {
    CHECK_THAT(cauchy_tail_bound(0.5, 1.0, 1.0, n + 1),
               WithinAbs(cauchy_tail_bound(0.5, 1.0, 1.0, n) / 2, 1e-15));
  }
  CHECK(cauchy_tail_bound(0.5, 1.0, 0.0, 5) == 0.0);
  CHECK(cauchy_tail_bound(0.9, 2.0, 1.0, 1) == Catch::Approx(5.0));

  CHECK_THROWS_AS(cauchy_tail_bound(0.5, 1.0, 1.0, 0), domain_error);
  CHECK_THROWS_AS(cauchy_tail_bound(1.0, 1.0, 1.0, 1), domain_error);
  CHECK_THROWS_AS(cauchy_tail_bound(0.5, 0.0, 1.0, 1), domain_error);
  CHECK_THROWS_AS(cauchy_tail_bound(0.5, 1.0, -1.0, 1), domain_error);
}

TEST_CASE("a-priori iteration count", "[solver]") {
  // 2^(1-n)*2 < 1e-3 first holds at n = 12; check the bracketing bounds.
  CHECK(a_priori_iteration_count(0.5, 1.0, 1.0, 1e-3) == 12);
  CHECK(cauchy_tail_bound(0.5, 1.0, 1.0, 11) >= 1e-3);
  CHECK(cauchy_tail_bound(0.5, 1.0, 1.0, 12) < 1e-3);

  CHECK(a_priori_iteration_count(0.5, 1.0, 0.0, 1e-3) == 1);
  // Bound already below eps at the first step.
  CHECK(a_priori_iteration_count(0.5, 1.0, 1.0, 10.0) == 1);
  // Slower contraction never needs fewer steps.
  CHECK(a_priori_iteration_count(0.9, 1.0, 1.0, 1e-3) >=
        a_priori_iteration_count(0.5, 1.0, 1.0, 1e-3));

  CHECK_THROWS_AS(a_priori_iteration_count(1.0, 1.0, 1.0, 1e-3), domain_error);
  CHECK_THROWS_AS(a_priori_iteration_count(0.5, 1.0, 1.0, 0.0), domain_error);
}

TEST_CASE("a-priori count is the exact argmin", "[solver][property]") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> alpha_dist(0.01, 0.99);
  std::uniform_real_distribution<double> d0_dist(0.0, 100.0);
  std::uniform_real_distribution<double> log_eps(-9.0, 0.0);
  for (int trial = 0; trial < 2'000; ++trial) {
    const double alpha = alpha_dist(rng);
    const double d0 = d0_dist(rng);
    const double eps = std::pow(10.0, log_eps(rng));
    const std::size_t n = a_priori_iteration_count(alpha, 1.0, d0, eps);
    INFO("alpha " << alpha << " d0 " << d0 << " eps " << eps << " n " << n);
    REQUIRE(n >= 1);
    REQUIRE(cauchy_tail_bound(alpha, 1.0, d0, n) < eps);
    if (n > 1) REQUIRE(cauchy_tail_bound(alpha, 1.0, d0, n - 1) >= eps);
  }
}

TEST_CASE("orbits on the five-point instance", "[solver]") {
  const ParsedDocument doc = example_2_1();
  const auto cert = certify(doc.space, *doc.map, PhiSpec::max());
  REQUIRE(cert.contracting);

  const FiniteTrace trace =
      picard_iterate(doc.space, *doc.map, std::string("A"), cert, 1e-6);
  CHECK(trace.start == "A");
  CHECK(trace.steps == std::vector<std::string>{"A", "C", "E", "E"});
  REQUIRE(trace.reached_fixed_point());
  CHECK(*trace.fixed_point() == "E");

  // steps[i+1] = T(steps[i]) along the whole orbit.
  for (std::size_t i = 0; i + 1 < trace.steps.size(); ++i) {
    CHECK(doc.map->apply(doc.space, trace.steps[i]) == trace.steps[i + 1]);
  }

  // Every start point reaches the same fixed point.
  for (const auto& start : doc.space.labels()) {
    const auto t = picard_iterate(doc.space, *doc.map, start, cert, 1e-6);
    REQUIRE(t.reached_fixed_point());
    CHECK(*t.fixed_point() == "E");
  }
}

TEST_CASE("orbits on the four-point instance", "[solver]") {
  const ParsedDocument doc = example_2_2();
  const auto cert = certify(doc.space, *doc.map, PhiSpec::sqrt_sum_squared());
  REQUIRE(cert.contracting);

  const auto from_a =
      picard_iterate(doc.space, *doc.map, std::string("A"), cert, 1e-6);
  CHECK(from_a.steps == std::vector<std::string>{"A", "C", "C"});
  CHECK(*from_a.fixed_point() == "C");

  const auto from_b =
      picard_iterate(doc.space, *doc.map, std::string("B"), cert, 1e-6);
  CHECK(*from_b.fixed_point() == "D");

  // Starting on a fixed point terminates immediately.
  const auto from_c =
      picard_iterate(doc.space, *doc.map, std::string("C"), cert, 1e-6);
  CHECK(from_c.steps == std::vector<std::string>{"C", "C"});
  CHECK(from_c.d_seq.empty());
  CHECK(from_c.d0 == 0.0);
}

TEST_CASE("period-2 orbits are detected, not looped", "[solver]") {
  // A <-> B swap with C feeding in; contracting under the perimeter
  // functional (image perimeter 2 vs preimage 3) yet without fixed points.
  const FiniteMetricSpace s({"A", "B", "C"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const SelfMap T = SelfMap::table({{"A", "B"}, {"B", "A"}, {"C", "A"}});

  const auto cert = certify(s, T, PhiSpec::sum());
  REQUIRE(cert.contracting);
  CHECK_THAT(cert.alpha_star, WithinAbs(2.0 / 3.0, 1e-12));

  const auto report = periodicity_report(s, T);
  CHECK(report.fixed_points.empty());
  CHECK(report.period2_points == std::vector<std::string>{"A", "B"});

  const auto from_a = picard_iterate(s, T, std::string("A"), cert, 1e-6);
  const auto* p2 = std::get_if<Period2Detected<std::string>>(&from_a.verdict);
  REQUIRE(p2 != nullptr);
  CHECK(p2->first == "A");
  CHECK(p2->second == "B");

  const auto from_c = picard_iterate(s, T, std::string("C"), cert, 1e-6);
  CHECK(std::holds_alternative<Period2Detected<std::string>>(from_c.verdict));
  CHECK(from_c.steps.front() == "C");
}

TEST_CASE("solver preconditions", "[solver]") {
  const ParsedDocument doc = example_2_2();
  const auto bad = certify(doc.space, *doc.map, PhiSpec::max());
  REQUIRE_FALSE(bad.contracting);
  const auto good = certify(doc.space, *doc.map, PhiSpec::sqrt_sum_squared());

  CHECK_THROWS_AS(
      picard_iterate(doc.space, *doc.map, std::string("A"), bad, 1e-6),
      domain_error);
  CHECK_THROWS_AS(
      picard_iterate(doc.space, *doc.map, std::string("A"), good, 0.0),
      domain_error);
  CHECK_THROWS_AS(
      picard_iterate(doc.space, *doc.map, std::string("Z"), good, 1e-6),
      lookup_error);
}

TEST_CASE("euclidean orbit stops exactly at the a-priori count", "[solver]") {
  const auto cert = ContractionCertificate::assumed(PhiSpec::sum(), 0.5);
  const EuclideanTrace trace =
      picard_iterate(kLine, kHalving, {1.0}, cert, 1e-3);

  // x0=1, x1=1/2, x2=1/4: d0 = 1/2 + 1/4 + 3/4 = 3/2.
  CHECK_THAT(trace.d0, WithinAbs(1.5, 1e-15));

  const auto* tol =
      std::get_if<ToleranceReached<std::vector<double>>>(&trace.verdict);
  REQUIRE(tol != nullptr);
  const std::size_t n = trace.steps.size() - 1;
  CHECK(n == a_priori_iteration_count(0.5, 1.0, trace.d0, 1e-3));
  CHECK(std::abs(tol->point[0]) < 1e-3);
  CHECK(tol->point == trace.steps.back());
  CHECK(tol->bound < 1e-3);
  CHECK(cauchy_tail_bound(0.5, 1.0, trace.d0, n - 1) >= 1e-3);

  // d_i halves with each step.
  for (std::size_t i = 0; i + 1 < trace.d_seq.size(); ++i) {
    CHECK_THAT(trace.d_seq[i + 1], WithinAbs(trace.d_seq[i] / 2, 1e-12));
  }
}

TEST_CASE("euclidean degenerate starts resolve directly", "[solver]") {
  const auto cert = ContractionCertificate::assumed(PhiSpec::sum(), 0.5);

  // The origin is the fixed point of the halving map.
  const auto fixed = picard_iterate(kLine, kHalving, {0.0}, cert, 1e-3);
  const auto* fp =
      std::get_if<FixedPointReached<std::vector<double>>>(&fixed.verdict);
  REQUIRE(fp != nullptr);
  CHECK(fp->point == std::vector<double>{0.0});

  // x -> -x flips forever: period 2 from any nonzero start.
  const SelfMap negate = SelfMap::affine({{-1.0}}, {0.0});
  const auto swap = picard_iterate(kLine, negate, {1.0}, cert, 1e-3);
  const auto* p2 =
      std::get_if<Period2Detected<std::vector<double>>>(&swap.verdict);
  REQUIRE(p2 != nullptr);
  CHECK(p2->first == std::vector<double>{1.0});
  CHECK(p2->second == std::vector<double>{-1.0});

  // Tiny budget: the bound cannot drop far enough in time.
  const auto starved =
      picard_iterate(kLine, kHalving, {1.0}, cert, 1e-30, 3);
  CHECK(std::holds_alternative<BudgetExhausted>(starved.verdict));
}

TEST_CASE("sampled contraction estimates", "[solver]") {
  const double est =
      sampled_alpha_estimate(kLine, kHalving, PhiSpec::sum(), 10'000, 10.0, 1);
  CHECK_THAT(est, WithinAbs(0.5, 1e-9));

  // Same seed, same estimate; the sampler is deterministic.
  CHECK(sampled_alpha_estimate(kLine, kHalving, PhiSpec::sum(), 500, 10.0, 9) ==
        sampled_alpha_estimate(kLine, kHalving, PhiSpec::sum(), 500, 10.0, 9));

  // The identity preserves distances: every ratio is exactly 1.
  const SelfMap identity = SelfMap::affine({{1.0}}, {0.0});
  CHECK(sampled_alpha_estimate(kLine, identity, PhiSpec::max(), 1'000, 5.0,
                               3) == 1.0);

  // Plane rotation is an isometry under the 2-norm functional.
  const EuclideanSpace plane{2};
  const double c = std::cos(0.7), s = std::sin(0.7);
  const SelfMap rot = SelfMap::affine({{c, -s}, {s, c}}, {0, 0});
  CHECK_THAT(sampled_alpha_estimate(plane, rot, PhiSpec::pnorm(2), 2'000, 3.0,
                                    4),
             WithinAbs(1.0, 1e-9));

  CHECK_THROWS_AS(
      sampled_alpha_estimate(kLine, kHalving, PhiSpec::sum(), 0, 10.0, 1),
      domain_error);
  CHECK_THROWS_AS(
      sampled_alpha_estimate(kLine, kHalving, PhiSpec::sum(), 10, 0.0, 1),
      domain_error);
  const SelfMap table = SelfMap::table({{"A", "A"}});
  CHECK_THROWS_AS(
      sampled_alpha_estimate(kLine, table, PhiSpec::sum(), 10, 1.0, 1),
      domain_error);
}

TEST_CASE("continuity probe validates the modulus", "[solver]") {
  for (double eps : {0.1, 1e-3, 1e-6}) {
    INFO("eps " << eps);
    const double delta = continuity_modulus(PhiSpec::sum(), 1.0, 0.5, eps);
    CHECK(phi_eval(PhiSpec::sum(), 2 * delta, 2 * delta, 2 * delta) <
          eps * 1.0 / 0.5);
    CHECK(continuity_probe(kLine, kHalving, PhiSpec::sum(), 1.0, 0.5, eps,
                           {0.25}, 2'000, 11));
  }
}

TEST_CASE("main theorem dichotomy on random instances", "[solver][property]") {
  std::size_t certified = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const std::size_t n = 3 + (seed % 4);
    const FiniteMetricSpace s = random_finite_metric(n, seed);
    const SelfMap T = random_self_map(s, seed * 31 + 7);

    for (const auto& phi : {PhiSpec::sum(), PhiSpec::max()}) {
      const auto cert = certify(s, T, phi);
      if (!cert.contracting) continue;
      ++certified;

      const auto report = periodicity_report(s, T);
      std::set<std::string> reached;
      for (const auto& start : s.labels()) {
        const auto trace = picard_iterate(s, T, start, cert, 1e-6, 1'000);
        INFO("seed " << seed << " start " << start << " phi "
                     << to_string(phi));
        // Finite contracting orbits always terminate: no cycles of length
        // three or more, no exhausted budgets.
        REQUIRE_FALSE(std::holds_alternative<BudgetExhausted>(trace.verdict));

        if (const auto* fp = trace.fixed_point()) {
          reached.insert(*fp);
          REQUIRE_FALSE(report.fixed_points.empty());
        } else {
          REQUIRE(std::holds_alternative<Period2Detected<std::string>>(
              trace.verdict));
          REQUIRE_FALSE(report.period2_points.empty());
        }

        // Decay along the recorded d-sequence.
        for (std::size_t i = 0; i + 1 < trace.d_seq.size(); ++i) {
          REQUIRE(trace.d_seq[i + 1] <= cert.alpha_star * trace.d_seq[i] + 1e-9);
        }

        // In-trace tail-bound soundness with k = 1.
        if (trace.d0 > 0.0) {
          for (std::size_t a = 1; a < trace.steps.size(); ++a) {
            const double bound =
                cauchy_tail_bound(cert.alpha_star, 1.0, trace.d0, a);
            for (std::size_t b = a + 1; b < trace.steps.size(); ++b) {
              REQUIRE(s.distance(trace.steps[a], trace.steps[b]) <=
                      bound + 1e-9);
            }
          }
        }
      }

      if (report.period2_points.empty()) {
        // Every orbit found a fixed point and at most two exist.
        REQUIRE(reached.size() <= 2);
        REQUIRE_FALSE(reached.empty());
      } else {
        REQUIRE(report.fixed_points.empty());
      }
    }
  }
  // The generator produces enough contracting instances to make this suite
  // meaningful.
  REQUIRE(certified >= 20);
}
