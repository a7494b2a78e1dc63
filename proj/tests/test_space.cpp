#include <doctest.h>

#include <atomic>
#include <functional>

#include "fixtures.hpp"
#include "rgfn/error.hpp"
#include "rgfn/excursion.hpp"
#include "rgfn/parallel.hpp"
#include "rgfn/quadrature.hpp"

using namespace rgfn;

TEST_CASE("substream matches the reference derivation bit for bit") {
  // tests/oracles/generate.py, substream_outputs
  Rng a = substream(42, 7);
  CHECK(a() == 0x11a904479c05b3daULL);
  CHECK(a() == 0xcffd69429302c462ULL);
  CHECK(a() == 0x79e6a4245def3af9ULL);
  Rng b = substream(0, 0);
  CHECK(b() == 0x99ec5f36cb75f2b4ULL);
}

TEST_CASE("substreams differ across index and seed, uniform stays in [0, 1)") {
  Rng a = substream(1, 0), b = substream(1, 1), c = substream(2, 0);
  const auto va = a(), vb = b(), vc = c();
  CHECK(va != vb);
  CHECK(va != vc);
  Rng u = substream(9, 9);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    sum += x;
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("parallel_reduce gives the same integer result for any worker count") {
  auto run = [](unsigned workers) {
    return parallel_reduce(
        std::uint64_t{10007}, workers, std::uint64_t{0},
        [](std::uint64_t i, std::uint64_t& acc) { acc += substream(5, i)() % 1000; },
        [](std::uint64_t& total, const std::uint64_t& local) { total += local; });
  };
  const auto one = run(1);
  CHECK(run(2) == one);
  CHECK(run(3) == one);
  CHECK(run(8) == one);
}

TEST_CASE("parallel_reduce propagates exceptions from workers") {
  auto boom = [](unsigned workers) {
    parallel_for(100, workers, [](std::uint64_t i) {
      if (i == 57) throw ValidationError("boom");
    });
  };
  CHECK_THROWS_AS(boom(1), ValidationError);
  CHECK_THROWS_AS(boom(4), ValidationError);
}

TEST_CASE("wrap_pointed_dag: linear chain") {
  const PointedDag dag = wrap_pointed_dag({{"s0", "x", "sf"}, {{0, 1}, {1, 2}}, 2});
  CHECK(dag.size() == 2);
  CHECK(dag.terminating() == std::vector<StateIndex>{1});
  CHECK(dag.edges() == std::vector<Edge>{{0, 1}, {1, 0}});
}

TEST_CASE("wrap_pointed_dag: diamond, every path from s0 returns to s0") {
  const PointedDag dag = wrap_pointed_dag(
      {{"s0", "a", "b", "x1", "x2", "sf"},
       {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 5}, {4, 5}},
       5});
  CHECK(dag.size() == 5);
  CHECK(dag.terminating() == std::vector<StateIndex>{3, 4});
  CHECK(dag.has_edge(3, 0));
  CHECK(dag.has_edge(4, 0));
  CHECK(dag.edges() == fixtures::diamond_dag().edges());

  // Exhaustive path check: walk every path; each must reach s0.
  std::size_t paths = 0;
  std::function<void(StateIndex, std::size_t)> walk = [&](StateIndex s, std::size_t depth) {
    REQUIRE(depth <= dag.size());
    for (StateIndex c : dag.children(s)) {
      if (c == kInitialState) {
        ++paths;
        continue;
      }
      walk(c, depth + 1);
    }
  };
  walk(kInitialState, 0);
  CHECK(paths == 3);
}

TEST_CASE("wrap_pointed_dag: sf in the middle shifts later indices") {
  const PointedDag dag = wrap_pointed_dag({{"s0", "sf", "x"}, {{0, 2}, {2, 1}}, 1});
  CHECK(dag.names() == std::vector<std::string>{"s0", "x"});
  CHECK(dag.edges() == std::vector<Edge>{{0, 1}, {1, 0}});
}

TEST_CASE("wrap_pointed_dag rejects invalid inputs") {
  // unreachable state
  CHECK_THROWS_AS(wrap_pointed_dag({{"s0", "x", "y", "sf"}, {{0, 1}, {1, 3}, {2, 3}}, 3}),
                  ValidationError);
  // already wrapped: an edge into s0
  CHECK_THROWS_AS(wrap_pointed_dag({{"s0", "x", "sf"}, {{0, 1}, {1, 2}, {1, 0}}, 2}), ValidationError);
  // cycle
  CHECK_THROWS_AS(
      wrap_pointed_dag({{"s0", "a", "b", "sf"}, {{0, 1}, {1, 2}, {2, 1}, {2, 3}}, 3}),
      ValidationError);
  // dead end that never reaches sf
  CHECK_THROWS_AS(wrap_pointed_dag({{"s0", "a", "x", "sf"}, {{0, 1}, {0, 2}, {2, 3}}, 3}),
                  ValidationError);
  // sf with an out-edge
  CHECK_THROWS_AS(wrap_pointed_dag({{"s0", "x", "sf"}, {{0, 1}, {1, 2}, {2, 1}}, 2}), ValidationError);
}

TEST_CASE("PointedDag validates its invariants") {
  // X must equal the set of states with an edge into s0
  CHECK_THROWS_AS(PointedDag({"s0", "x"}, {{0, 1}, {1, 0}}, {}), ValidationError);
  CHECK_THROWS_AS(PointedDag({"s0", "x", "y"}, {{0, 1}, {1, 2}, {2, 0}}, {1, 2}), ValidationError);
  // s0 cannot terminate
  CHECK_THROWS_AS(PointedDag({"s0", "x"}, {{0, 1}, {1, 0}, {0, 0}}, {0, 1}), ValidationError);
  // non-wrap cycle
  CHECK_THROWS_AS(PointedDag({"s0", "a", "b"}, {{0, 1}, {1, 2}, {2, 1}, {2, 0}}, {2}),
                  ValidationError);
  // unreachable state
  CHECK_THROWS_AS(PointedDag({"s0", "x", "y"}, {{0, 1}, {1, 0}, {2, 0}}, {1, 2}), ValidationError);
  // terminating states may keep other children
  const PointedDag ok({"s0", "x", "y"}, {{0, 1}, {1, 2}, {1, 0}, {2, 0}}, {1, 2});
  CHECK(ok.children(1) == std::vector<StateIndex>{0, 2});
  CHECK(ok.index_of("y") == 2);
  CHECK_FALSE(ok.index_of("zz").has_value());
  CHECK(ok.topological_order().front() == kInitialState);
}

TEST_CASE("check_irreducible on the spec examples") {
  CHECK(check_irreducible(fixtures::diamond_dag()));
  CHECK(check_irreducible(fixtures::two_cycle_dag()));
  const std::vector<Edge> disjoint{{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  CHECK_FALSE(check_irreducible(4, disjoint));
}

TEST_CASE("check_irreducible agrees with brute-force reachability on random graphs") {
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    Rng rng = substream(77, trial);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 12);
    const double density = 0.05 + 0.3 * rng.uniform();
    std::vector<Edge> edges;
    for (StateIndex i = 0; i < n; ++i)
      for (StateIndex j = 0; j < n; ++j)
        if (rng.uniform() < density) edges.push_back({i, j});
    // Warshall closure as the oracle.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (StateIndex i = 0; i < n; ++i) reach[i][i] = true;
    for (const Edge& e : edges) reach[e.from][e.to] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    bool all = true;
    for (const auto& row : reach)
      for (bool v : row) all = all && v;
    CHECK(check_irreducible(n, edges) == all);
  }
}

TEST_CASE("check_finitely_absorbing on the spec examples") {
  const auto diamond = check_finitely_absorbing(fixtures::diamond_dag(), fixtures::diamond_kernel(), 10);
  CHECK(diamond.harris);
  REQUIRE(diamond.steps.has_value());
  CHECK(*diamond.steps == 3);

  // s0 -> a, a -> a (0.5), a -> x (0.5), x -> s0
  const DiscreteKernel loop(3, {{0, 1, 1.0}, {1, 1, 0.5}, {1, 2, 0.5}, {2, 0, 1.0}});
  const auto looped = check_finitely_absorbing(loop, 50);
  CHECK_FALSE(looped.harris);
  CHECK_FALSE(looped.steps.has_value());

  // Layered DAG: s0 -> {l1a, l1b} -> {l2a, l2b} -> {x1, x2} -> s0
  const PointedDag layered({"s0", "l1a", "l1b", "l2a", "l2b", "x1", "x2"},
                           {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 0}, {6, 0}},
                           {5, 6});
  const DiscreteKernel lk(7, {{0, 1, 0.3}, {0, 2, 0.7}, {1, 3, 0.5}, {1, 4, 0.5}, {2, 4, 1.0},
                              {3, 5, 1.0}, {4, 5, 0.2}, {4, 6, 0.8}, {5, 0, 1.0}, {6, 0, 1.0}});
  const auto res = check_finitely_absorbing(layered, lk, 20);
  CHECK(res.harris);
  REQUIRE(res.steps.has_value());
  CHECK(*res.steps == 4);
  // Matrix-power oracle: one step from s0, then s0 made absorbing.
  const Eigen::MatrixXd p = lk.dense();
  Eigen::MatrixXd absorbing = p;
  absorbing.row(0).setZero();
  absorbing(0, 0) = 1.0;
  const Eigen::RowVectorXd after3 = p.row(0) * absorbing * absorbing;
  const Eigen::RowVectorXd after4 = after3 * absorbing;
  CHECK(after4(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(after3(0) < 1.0 - 1e-3);

  // Too small a budget is a negative answer, not an error.
  CHECK_FALSE(check_finitely_absorbing(layered, lk, 3).harris);
}

TEST_CASE("finite absorption bound holds for every simulated excursion") {
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const auto inst = fixtures::random_instance(10, 100 + trial);
    const auto res = check_finitely_absorbing(inst.dag, inst.kernel, inst.dag.size());
    REQUIRE(res.harris);
    std::uint64_t longest = 0;
    for (std::uint64_t i = 0; i < 20000; ++i) {
      Rng rng = substream(trial, i);
      const auto ex = run_excursion(inst.kernel, rng, 1000);
      REQUIRE(ex.has_value());
      longest = std::max(longest, ex->length);
    }
    CHECK(longest <= *res.steps);
  }
}

TEST_CASE("random instances are valid wrapped DAGs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = fixtures::random_instance(2 + seed % 9, seed);
    CHECK(check_irreducible(inst.dag));
    CHECK(validate_kernel(inst.kernel, inst.dag).empty());
  }
}

TEST_CASE("quadrature rules integrate polynomials") {
  const auto simpson = simpson_rule(0.0, 2.0, 101);
  CHECK(simpson.integrate([](double x) { return x * x * x; }) == doctest::Approx(4.0).epsilon(1e-13));
  const auto trap = trapezoid_rule(0.0, 1.0, 512);
  CHECK(trap.integrate([](double x) { return 3.0 * x + 1.0; }) == doctest::Approx(2.5).epsilon(1e-13));
  CHECK_THROWS(simpson_rule(0.0, 1.0, 100));
}

TEST_CASE("ContinuousSpace1D validates its reference density") {
  CHECK_NOTHROW(ContinuousSpace1D(0.0, 1.0));
  CHECK_NOTHROW(ContinuousSpace1D(0.0, 1.0, [](double x) { return 2.0 * x; }));
  CHECK_THROWS_AS(ContinuousSpace1D(1.0, 0.0), ValidationError);
  CHECK(ContinuousSpace1D(0.0, 1.0, [](double x) { return x; }).reference_mass() ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(ContinuousSpace1D(0.0, 1.0, [](double x) { return x - 0.5; }), ValidationError);
  CHECK_THROWS_AS(ContinuousSpace1D(0.0, 1.0, [](double) { return 0.0; }), ValidationError);
}
