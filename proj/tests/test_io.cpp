#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aet/io.hpp"
#include "test_helpers.hpp"

namespace {

namespace fs = std::filesystem;
using aet::Complex;
using aet::ErrorCode;
using aet::NumericMode;
using aet::Rational;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("aet_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(ProductJson, Zeta) {
  const auto spec = aet::parse_product(R"({"kind":"zeta"})");
  EXPECT_EQ(spec.kind(), aet::ProductKind::zeta);
}

TEST(ProductJson, DirichletFromKronecker) {
  const auto spec = aet::parse_product(R"({"kind":"dirichlet","kronecker":-4})");
  EXPECT_EQ(spec.character().modulus, 4u);
  EXPECT_EQ(spec.character()(3), Complex(-1));
}

TEST(ProductJson, DirichletFromValues) {
  const auto spec =
      aet::parse_product(R"({"kind":"dirichlet","modulus":5,"values":[0,1,[0,1],[0,-1],-1]})");
  EXPECT_FALSE(spec.character().is_real);
  EXPECT_EQ(spec.character()(2), Complex(0, 1));
}

TEST(ProductJson, Custom) {
  const auto spec = aet::parse_product(
      R"({"kind":"custom","degree":2,"roots":{"2":[[1,0],[0.5,0]],"3":[[0,1],[0,-1]]},"default":"one"})");
  EXPECT_EQ(spec.degree(), 2u);
  EXPECT_EQ(spec.default_rule(), aet::DefaultRule::one);
  EXPECT_EQ(spec.roots_at(3), (std::vector<Complex>{Complex(0, 1), Complex(0, -1)}));
  EXPECT_EQ(spec.roots_at(5), (std::vector<Complex>{1.0, 1.0}));
}

TEST(ProductJson, RoundTrip) {
  for (const auto& spec : {fixture::zeta(), fixture::mod4(), fixture::square(),
                           aet::parse_product(R"({"kind":"dirichlet","modulus":5,"values":[0,1,[0,1],[0,-1],-1]})")}) {
    const std::string text = aet::serialize_product(spec);
    const auto again = aet::parse_product(text);
    EXPECT_EQ(aet::serialize_product(again), text);
    EXPECT_EQ(aet::spec_hash(again), aet::spec_hash(spec));
  }
}

TEST(ProductJson, HashDistinguishesProducts) {
  EXPECT_NE(aet::spec_hash(fixture::zeta()), aet::spec_hash(fixture::mod4()));
  EXPECT_NE(aet::spec_hash(fixture::mod4()), aet::spec_hash(fixture::mod3()));
  EXPECT_EQ(aet::spec_hash(fixture::zeta()).size(), 16u);
  // Same character through either description.
  EXPECT_EQ(aet::spec_hash(aet::parse_product(R"({"kind":"dirichlet","modulus":4,"values":[0,1,0,-1]})")),
            aet::spec_hash(fixture::mod4()));
}

TEST(ProductJson, Errors) {
  const auto code = [](const char* text) {
    return error_code_of([&] { aet::parse_product(text); });
  };
  EXPECT_EQ(code(R"({"kind":"zeta","extra":1})"), ErrorCode::InvalidProduct);
  EXPECT_EQ(code(R"({"kind":"nope"})"), ErrorCode::InvalidProduct);
  EXPECT_EQ(code(R"(not json)"), ErrorCode::InvalidProduct);
  EXPECT_EQ(code(R"({"kind":"custom","degree":1,"roots":{"4":[[1,0]]}})"), ErrorCode::InvalidProduct);
  EXPECT_EQ(code(R"({"kind":"dirichlet","modulus":4,"values":[0,1,1,-1]})"), ErrorCode::WrongSupport);
  EXPECT_EQ(error_code_of([] { aet::load_product("/nonexistent/product.json"); }), ErrorCode::IoError);
}

TEST(TableCsv, Format) {
  std::ostringstream out;
  aet::write_table_csv(aet::phi_table(fixture::zeta(), 4, NumericMode::exact), out);
  EXPECT_EQ(out.str(), "n,alpha,phi,cumulative\n1,1,1,1\n2,-1,1,2\n3,-1,2,4\n4,0,2,6\n");
  std::ostringstream sq;
  aet::write_table_csv(aet::phi_table(fixture::square(), 3, NumericMode::exact), sq);
  EXPECT_NE(sq.str().find("2,-3/2,1/2,3/2"), std::string::npos);
}

TEST(TableCache, RoundTripExact) {
  const auto dir = scratch_dir("exact");
  const auto table = aet::phi_table(fixture::square(), 500, NumericMode::exact);
  aet::write_table_cache(table, dir / "t.csv");
  const auto back = aet::read_table_cache(dir / "t.csv", fixture::square(), 500, NumericMode::exact);
  for (std::size_t n = 1; n <= 500; ++n) {
    ASSERT_EQ(back.phi_exact()[n], table.phi_exact()[n]);
    ASSERT_EQ(back.cumulative_exact()[n], table.cumulative_exact()[n]);
    ASSERT_EQ(back.coefficients().alpha_exact()[n], table.coefficients().alpha_exact()[n]);
  }
  fs::remove_all(dir);
}

TEST(TableCache, RoundTripFloatBitExact) {
  const auto dir = scratch_dir("float");
  const auto table = aet::phi_table(fixture::mod4(), 2000);
  aet::write_table_cache(table, dir / "t.csv");
  const auto back = aet::read_table_cache(dir / "t.csv", fixture::mod4(), 2000, NumericMode::floating);
  for (std::size_t n = 1; n <= 2000; ++n) {
    ASSERT_EQ(back.phi()[n], table.phi()[n]);
    ASSERT_EQ(back.cumulative()[n], table.cumulative()[n]);
    ASSERT_EQ(back.coefficients().alpha()[n], table.coefficients().alpha()[n]);
  }
  fs::remove_all(dir);
}

TEST(TableCache, MismatchAndMissing) {
  const auto dir = scratch_dir("mismatch");
  aet::write_table_cache(aet::phi_table(fixture::zeta(), 50), dir / "t.csv");
  EXPECT_EQ(error_code_of([&] { aet::read_table_cache(dir / "t.csv", fixture::mod4(), 50, NumericMode::floating); }),
            ErrorCode::CacheMismatch);
  EXPECT_EQ(error_code_of([&] { aet::read_table_cache(dir / "t.csv", fixture::zeta(), 49, NumericMode::floating); }),
            ErrorCode::CacheMismatch);
  EXPECT_EQ(error_code_of([&] { aet::read_table_cache(dir / "t.csv", fixture::zeta(), 50, NumericMode::exact); }),
            ErrorCode::CacheMismatch);
  EXPECT_EQ(error_code_of([&] { aet::read_table_cache(dir / "none.csv", fixture::zeta(), 50, NumericMode::floating); }),
            ErrorCode::IoError);
  fs::remove_all(dir);
}

TEST(TableCache, LoadOrBuildWarmEqualsCold) {
  const auto dir = scratch_dir("warm");
  const auto cold = aet::load_or_build_table(fixture::zeta(), 300, NumericMode::exact, dir);
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1u);
  const auto warm = aet::load_or_build_table(fixture::zeta(), 300, NumericMode::exact, dir);
  std::ostringstream a, b;
  aet::write_table_csv(cold, a);
  aet::write_table_csv(warm, b);
  EXPECT_EQ(a.str(), b.str());
  const auto uncached = aet::load_or_build_table(fixture::zeta(), 300, NumericMode::exact, std::nullopt);
  std::ostringstream c;
  aet::write_table_csv(uncached, c);
  EXPECT_EQ(a.str(), c.str());
  fs::remove_all(dir);
}

}  // namespace
