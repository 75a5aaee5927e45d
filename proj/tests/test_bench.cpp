#include <doctest.h>

#include <chrono>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "sdoe/bench/dataset_objective.hpp"
#include "sdoe/bench/functions.hpp"
#include "sdoe/bench/grid_dataset.hpp"
#include "sdoe/bench/objective.hpp"
#include "sdoe/bench/subprocess.hpp"

using namespace sdoe;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

GridDataset tiny_grid() {
  GridDataset g;
  g.points = Mat(3, 1);
  g.points << 0.0, 1.0, 2.0;
  g.outputs = Vec(3);
  g.outputs << 5.0, 4.0, 6.0;
  g.consumed.assign(3, 0);
  return g;
}

}  // namespace

TEST_CASE("linear scale maps endpoints and midpoints") {
  Interval from{-10.0, 10.0}, to{-3.0, 3.0};
  CHECK(linear_scale(10.0, from, to) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(linear_scale(-10.0, from, to) == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(linear_scale(0.0, from, to) == doctest::Approx(0.0).epsilon(1e-15));
  // Round trip through the inverse map.
  const double x = 3.7;
  CHECK(linear_scale(linear_scale(x, from, to), to, from) ==
        doctest::Approx(x).epsilon(1e-12));
  CHECK_THROWS_AS(linear_scale(1.0, Interval{2.0, 2.0}, to), ContractError);
}

TEST_CASE("ackley has its documented values and a floor at zero") {
  CHECK(raw_ackley(v2(0.0, 0.0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(raw_ackley(v2(1.0, 1.0)) ==
        doctest::Approx(3.6253849384403627).epsilon(1e-9));
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    Vec x = v2(rng.uniform(-32.768, 32.768), rng.uniform(-32.768, 32.768));
    CHECK(raw_ackley(x) >= 0.0);
  }
  CHECK_THROWS_AS(raw_ackley(v2(40.0, 0.0)), ContractError);
  CHECK(std::isfinite(raw_ackley(v2(40.0, 0.0), false)));
  CHECK_THROWS_AS(raw_ackley(v1(0.0)), ContractError);
}

TEST_CASE("booth has its documented values") {
  CHECK(raw_booth(v2(1.0, 3.0)) == 0.0);
  CHECK(raw_booth(v2(0.0, 0.0)) == 74.0);
  CHECK(raw_booth(v2(-10.0, -10.0)) == 2594.0);
  CHECK_THROWS_AS(raw_booth(v2(11.0, 0.0)), ContractError);
}

TEST_CASE("benchmark lookup exposes domains and optima") {
  const BenchFunction& a = bench_function("ackley");
  CHECK(a.dim == 2);
  CHECK(a.domain.lo == -32.768);
  CHECK(a.domain.hi == 32.768);
  CHECK(a.raw_optimum == v2(0.0, 0.0));
  CHECK(a.raw_optimum_value == 0.0);
  const BenchFunction& b = bench_function("booth");
  CHECK(b.domain.hi == 10.0);
  CHECK(b.raw_optimum == v2(1.0, 3.0));
  CHECK_THROWS_AS(bench_function("rosenbrock"), ConfigError);
}

TEST_CASE("synthetic objectives pin the probe minimum to the domain floor") {
  SyntheticObjective obj("booth");
  CHECK(obj.dim() == 2);
  // The normalized optimum sits at (or just below) -3: the probe grid may
  // miss the exact analytic minimum but never by much.
  CHECK(*obj.normalized_optimum() <= -3.0 + 1e-12);
  CHECK(*obj.normalized_optimum() >= -3.01);

  // Scanning the same probe resolution recovers -3 exactly at the grid
  // minimum, adjacent to the image of the analytic optimum (1,3) -> (0.3,0.9).
  double best = 1e9;
  Vec best_x = v2(0, 0);
  const int g = 256;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      Vec x = v2(-3.0 + 6.0 * i / (g - 1), -3.0 + 6.0 * j / (g - 1));
      const double y = obj.evaluate(x);
      CHECK(y >= -3.0);
      CHECK(y <= 3.0 + 1e-12);
      if (y < best) {
        best = y;
        best_x = x;
      }
    }
  }
  CHECK(best == -3.0);
  CHECK((best_x - v2(0.3, 0.9)).cwiseAbs().maxCoeff() <= 6.0 / 255.0 + 1e-12);
  CHECK(obj.evaluations_used() == g * g);
  obj.reset_state();
  CHECK(obj.evaluations_used() == 0);
}

TEST_CASE("synthetic objectives clip proposals into the domain") {
  SyntheticObjective obj("booth");
  Mat proposed(2, 2);
  proposed << 5.0, -7.0, 0.5, 0.5;
  BatchResult res = obj.evaluate_batch(proposed);
  CHECK(res.points(0, 0) == 3.0);
  CHECK(res.points(0, 1) == -3.0);
  CHECK(res.points.row(1) == proposed.row(1));
  CHECK(res.values[0] == obj.evaluate(v2(3.0, -3.0)));
}

TEST_CASE("shifts relocate the optimum without changing its value") {
  SyntheticObjective obj("ackley", v2(0.7, -0.4));
  Vec argmin = obj.normalized_argmin();
  CHECK(argmin[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(argmin[1] == doctest::Approx(-0.4).epsilon(1e-12));
  // The shifted function still bottoms out at the raw optimum value.
  CHECK(obj.raw_at(argmin) == doctest::Approx(0.0).epsilon(1e-9));
  SyntheticObjective booth("booth", v2(0.25, -1.5));
  CHECK(std::abs(booth.raw_at(booth.normalized_argmin())) <= 1e-9);

  // A shifted instance is a translation of the unshifted one in raw units.
  SyntheticObjective base("ackley");
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    Vec z = v2(rng.uniform(-2, 2), rng.uniform(-2, 2));
    Vec zs = z + v2(0.7, -0.4);
    CHECK(obj.raw_at(zs) == doctest::Approx(base.raw_at(z)).epsilon(1e-9));
  }
}

TEST_CASE("shifts that push the optimum outside the domain are rejected") {
  CHECK_THROWS_AS(SyntheticObjective("booth", v2(0.0, 2.5)), ContractError);
  CHECK_THROWS_AS(SyntheticObjective("ackley", v2(-3.5, 0.0)), ContractError);
  CHECK_THROWS_AS(SyntheticObjective("booth", v1(1.0)), ContractError);
}

TEST_CASE("nearest-neighbor projection walks the documented examples") {
  GridDataset g = tiny_grid();
  Mat batch(1, 1);
  batch << 0.6;
  auto idx = nn_project_batch(batch, g);
  CHECK(idx == std::vector<Eigen::Index>{1});
  CHECK(g.consumed[1] == 1);

  g = tiny_grid();
  Mat batch2(2, 1);
  batch2 << 0.6, 0.9;
  idx = nn_project_batch(batch2, g);
  // The second row would also map to 1, but 1 is consumed by the first row.
  CHECK(idx == std::vector<Eigen::Index>{1, 0});
}

TEST_CASE("nearest-neighbor distance ties go to the lowest index") {
  GridDataset g;
  g.points = Mat(2, 1);
  g.points << 0.0, 1.0;
  g.outputs = Vec::Zero(2);
  g.consumed.assign(2, 0);
  Mat batch(1, 1);
  batch << 0.5;
  CHECK(nn_project_batch(batch, g) == std::vector<Eigen::Index>{0});
}

TEST_CASE("projection refuses batches larger than the remaining pool") {
  GridDataset g = tiny_grid();
  Mat batch(4, 1);
  batch << 0.0, 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(nn_project_batch(batch, g), ContractError);
  // A failed call must not leave partial consumption behind.
  CHECK(g.unconsumed_count() == 3);
}

TEST_CASE("projection matches an exhaustive reference on random instances") {
  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const int r = 5 + rng.uniform_int(0, 45);
    const int d = 1 + rng.uniform_int(0, 2);
    GridDataset g;
    g.points = Mat(r, d);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < d; ++j) g.points(i, j) = rng.uniform(-3, 3);
    g.outputs = Vec::Zero(r);
    g.consumed.assign(r, 0);
    const int b = 1 + rng.uniform_int(0, 4);
    Mat batch(b, d);
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < d; ++j) batch(i, j) = rng.uniform(-4, 4);

    std::vector<char> taken(r, 0);
    std::vector<Eigen::Index> want;
    for (int i = 0; i < b; ++i) {
      Eigen::Index best = -1;
      double best_d = 0.0;
      for (Eigen::Index k = 0; k < r; ++k) {
        if (taken[k]) continue;
        const double dist =
            (g.points.row(k) - batch.row(i)).squaredNorm();
        if (best < 0 || dist < best_d) {
          best = k;
          best_d = dist;
        }
      }
      taken[best] = 1;
      want.push_back(best);
    }
    CHECK(nn_project_batch(batch, g) == want);
  }
}

TEST_CASE("pregenerated datasets survive a save/load round trip") {
  test::TempDir tmp("sdoe-grid");
  GridDataset g;
  g.points = Mat(3, 2);
  g.points << 0.1, -0.2, 1.0 / 3.0, 2594.0, -1e-7, 0.0;
  g.outputs = Vec(3);
  g.outputs << 1.5, -2.25, 0.1;
  g.consumed.assign(3, 0);
  const std::string path = tmp.file("grid.csv");
  save_pregen_dataset(g, path);
  GridDataset r = load_pregen_dataset(path);
  CHECK(r.points == g.points);  // 17 significant digits: bit-exact
  CHECK(r.outputs == g.outputs);
  CHECK(r.unconsumed_count() == 3);
}

TEST_CASE("dataset parse errors carry the offending line") {
  test::TempDir tmp("sdoe-parse");
  const std::string path = tmp.file("bad.csv");

  test::spit(path, "d=2\n0.1,0.2,1.5\n0.3,0.4\n");
  try {
    load_pregen_dataset(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }

  test::spit(path, "dims=2\n0.1,0.2,1.5\n");
  CHECK_THROWS_AS(load_pregen_dataset(path), ParseError);

  test::spit(path, "d=2\n0.1,abc,1.5\n");
  CHECK_THROWS_AS(load_pregen_dataset(path), ParseError);

  test::spit(path, "d=2\n0.1,nan,1.5\n");
  CHECK_THROWS_AS(load_pregen_dataset(path), ParseError);

  test::spit(path, "d=2\n");
  CHECK_THROWS_AS(load_pregen_dataset(path), ParseError);

  CHECK_THROWS_AS(load_pregen_dataset(tmp.file("missing.csv")), ParseError);

  // Blank lines and CRLF endings are tolerated.
  test::spit(path, "d=1\r\n\r\n0.5,1.0\r\n");
  GridDataset g = load_pregen_dataset(path);
  CHECK(g.size() == 1);
  CHECK(g.points(0, 0) == 0.5);
}

TEST_CASE("dataset objectives normalize inputs and outputs onto the domain") {
  GridDataset raw;
  raw.points = Mat(4, 2);
  raw.points << 0.0, 10.0, 2.0, 30.0, 4.0, 20.0, 1.0, 15.0;
  raw.outputs = Vec(4);
  raw.outputs << 7.0, 3.0, 11.0, 5.0;
  raw.consumed.assign(4, 0);
  DatasetObjective obj(raw, "pool", /*maximize=*/false);

  const GridDataset& g = obj.normalized_grid();
  CHECK(g.points.col(0).minCoeff() == -3.0);
  CHECK(g.points.col(0).maxCoeff() == 3.0);
  CHECK(g.points.col(1).minCoeff() == -3.0);
  CHECK(g.points.col(1).maxCoeff() == 3.0);
  // Raw row 1 had the smallest output: it becomes the best row at exactly -3.
  CHECK(obj.best_row() == 1);
  CHECK(g.outputs[1] == -3.0);
  CHECK(g.outputs.maxCoeff() == 3.0);
  CHECK(*obj.normalized_optimum() == -3.0);
  CHECK(obj.fixed_candidates() == &g.points);
}

TEST_CASE("maximization datasets are negated into minimization") {
  GridDataset raw;
  raw.points = Mat(3, 1);
  raw.points << 0.0, 1.0, 2.0;
  raw.outputs = Vec(3);
  raw.outputs << 1.0, 9.0, 4.0;  // 9 is the best when maximizing
  raw.consumed.assign(3, 0);
  DatasetObjective obj(raw, "pool", /*maximize=*/true);
  CHECK(obj.best_row() == 1);
  CHECK(obj.normalized_grid().outputs[1] == -3.0);
}

TEST_CASE("dataset evaluation serves stored rows exactly once") {
  GridDataset raw;
  raw.points = Mat(3, 1);
  raw.points << 0.0, 1.0, 2.0;
  raw.outputs = Vec(3);
  raw.outputs << 5.0, 4.0, 6.0;
  raw.consumed.assign(3, 0);
  DatasetObjective obj(raw, "pool", false);
  const GridDataset& g = obj.normalized_grid();

  Mat proposed(2, 1);
  proposed << g.points(1, 0) + 0.01, g.points(1, 0) + 0.02;
  BatchResult res = obj.evaluate_batch(proposed);
  CHECK(res.points.row(0) == g.points.row(1));
  CHECK(res.points.row(1) == g.points.row(2));  // nearest unconsumed fallback
  CHECK(res.values[0] == g.outputs[1]);
  CHECK(res.values[1] == g.outputs[2]);
  CHECK(obj.evaluations_used() == 2);
  CHECK(obj.remaining() == 1);

  obj.reset_state();
  CHECK(obj.remaining() == 3);
  CHECK(obj.evaluations_used() == 0);

  // Degenerate input columns cannot be normalized.
  GridDataset flat;
  flat.points = Mat::Constant(3, 1, 2.0);
  flat.outputs = raw.outputs;
  flat.consumed.assign(3, 0);
  CHECK_THROWS_AS(DatasetObjective(flat, "flat", false), ConfigError);
}

TEST_CASE("subprocess objectives talk a line protocol") {
  SubprocessSpec spec;
  spec.command = "while read a b; do echo \"$a\"; done";  // f(x) = x1
  spec.dim = 2;
  spec.timeout_ms = 5000;
  SubprocessObjective obj(spec);
  CHECK(obj.child_alive());
  CHECK(obj.evaluate(v2(1.25, -2.0)) == 1.25);
  CHECK(obj.evaluate(v2(-0.5, 3.0)) == -0.5);
  CHECK(obj.evaluations_used() == 2);
  // Out-of-domain proposals are clipped before being sent.
  CHECK(obj.evaluate(v2(7.0, 0.0)) == 3.0);
  CHECK(!obj.normalized_optimum().has_value());
}

TEST_CASE("subprocess replies must be finite numbers") {
  SubprocessSpec spec;
  spec.command = "while read l; do echo nan; done";
  spec.dim = 1;
  SubprocessObjective obj(spec);
  try {
    obj.evaluate(v1(0.0));
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.raw_reply == "nan");
  }

  SubprocessSpec bad;
  bad.command = "while read l; do echo not-a-number; done";
  bad.dim = 1;
  SubprocessObjective obj2(bad);
  CHECK_THROWS_AS(obj2.evaluate(v1(0.0)), EvalError);
}

TEST_CASE("subprocess death and silence raise eval errors") {
  SubprocessSpec dead;
  dead.command = "exit 0";
  dead.dim = 1;
  SubprocessObjective obj(dead);
  CHECK_THROWS_AS(obj.evaluate(v1(0.0)), EvalError);

  SubprocessSpec slow;
  slow.command = "exec sleep 30";
  slow.dim = 1;
  slow.timeout_ms = 200;
  const auto t0 = std::chrono::steady_clock::now();
  SubprocessObjective obj2(slow);
  CHECK_THROWS_AS(obj2.evaluate(v1(0.0)), EvalError);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  CHECK(elapsed < 3000);  // the deadline fired, not a full wait
}
