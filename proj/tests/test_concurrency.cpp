#include <gtest/gtest.h>

#include <future>
#include <sstream>

#include "aet/decomposition.hpp"
#include "aet/volterra.hpp"
#include "cli/commands.hpp"
#include "test_helpers.hpp"

namespace {

using aet::Complex;
using aet::Rational;

TEST(Concurrency, SharedTableQueriesMatchSequential) {
  const auto table = aet::phi_table(fixture::mod4(), 2000, aet::NumericMode::exact);
  const auto constants = aet::to_exact(aet::compute_constants(fixture::mod4(), {}));
  std::vector<Rational> xs;
  for (int i = 4; i <= 800; ++i) {
    xs.emplace_back(i, 4);
    xs.back().canonicalize();
  }
  const auto sequential = aet::decompose_batch<Rational>(xs, table, constants);

  std::vector<std::future<std::vector<aet::DecompositionReport<Rational>>>> parts;
  const std::size_t chunk = xs.size() / 4 + 1;
  for (std::size_t start = 0; start < xs.size(); start += chunk) {
    const std::size_t count = std::min(chunk, xs.size() - start);
    parts.push_back(std::async(std::launch::async, [&, start, count] {
      return aet::decompose_batch<Rational>(std::span(xs).subspan(start, count), table, constants);
    }));
  }
  std::size_t i = 0;
  for (auto& part : parts) {
    for (const auto& row : part.get()) {
      ASSERT_EQ(row.x, sequential[i].x);
      ASSERT_EQ(row.e2.value, sequential[i].e2.value);
      ASSERT_EQ(row.residual, sequential[i].residual);
      ++i;
    }
  }
  EXPECT_EQ(i, xs.size());
}

TEST(Concurrency, IndependentSolves) {
  const auto table = aet::phi_table(fixture::zeta(), 12);
  const auto constants = aet::compute_constants(fixture::zeta(), {});
  const aet::F1Function f1(table.coefficients(), constants, 12);
  const aet::E2Function e2f(table, constants.c_f, 12);
  const aet::PiecewiseFunction e2{[&](double x) { return e2f(x); },
                                  [&](double x) { return e2f.left_limit(x); },
                                  [&](double x) { return e2f.right_limit(x); }};
  auto solve = [&](double shift) {
    return aet::solve_from_e2(e2, 10.0, 1e-3, {2.5, f1(2.5) * 2.5 + shift}).values;
  };
  auto a = std::async(std::launch::async, solve, 0.0);
  auto b = std::async(std::launch::async, solve, 1.0);
  const auto ra = a.get();
  const auto rb = b.get();
  EXPECT_EQ(ra, solve(0.0));
  EXPECT_EQ(rb, solve(1.0));
}

TEST(Concurrency, ParallelCliRunsAreIdentical) {
  const std::vector<std::string> args = {"decompose", "--product", "zeta", "--x", "1:60:0.5",
                                         "--mode", "exact", "--format", "json"};
  auto once = [&] {
    std::ostringstream out, err;
    aet::cli::run_main(args, out, err);
    return out.str();
  };
  auto a = std::async(std::launch::async, once);
  auto b = std::async(std::launch::async, once);
  const auto ra = a.get();
  EXPECT_FALSE(ra.empty());
  EXPECT_EQ(ra, b.get());
}

}  // namespace
