#include <gtest/gtest.h>

#include <random>

#include "tacfit/errors.hpp"
#include "tacfit/json_io.hpp"
#include "tacfit/strategy_library.hpp"

using namespace tacfit;

namespace {

const std::filesystem::path kData = TACFIT_DATA_DIR;

std::vector<double> profile_of(const StrategyLibrary& lib, std::string_view name) {
  const StrategyTemplate* t = lib.find(name);
  EXPECT_NE(t, nullptr) << name;
  const auto& v = t->profile.values();
  return {v.begin(), v.end()};
}

}  // namespace

TEST(BuiltinLibrary, ReferenceProfiles) {
  const StrategyLibrary lib = builtin_canonical();
  ASSERT_EQ(lib.size(), 5u);
  EXPECT_EQ(profile_of(lib, "High Pressing"),
            (std::vector<double>{0.70, 0.80, 0.60, 0.90, 0.90, 0.50, 0.80, 0.70, 0.80, 0.60, 0.90,
                                 0.70, 0.80, 0.80}));
  EXPECT_EQ(profile_of(lib, "Fast Counterattack"),
            (std::vector<double>{0.90, 0.60, 0.50, 0.90, 0.50, 0.60, 0.70, 0.80, 0.70, 0.80, 0.60,
                                 0.70, 0.80, 0.60}));
  EXPECT_EQ(profile_of(lib, "Positional Defense"),
            (std::vector<double>{0.40, 0.90, 0.80, 0.30, 0.20, 0.30, 0.70, 0.60, 0.60, 0.90, 0.80,
                                 0.60, 0.50, 0.70}));
  EXPECT_EQ(profile_of(lib, "Build-up Play"),
            (std::vector<double>{0.80, 0.50, 0.70, 0.50, 0.40, 0.60, 0.70, 0.60, 0.80, 0.70, 0.80,
                                 0.80, 0.60, 0.80}));
  EXPECT_EQ(profile_of(lib, "Gegenpressing"),
            (std::vector<double>{0.70, 0.80, 0.60, 0.80, 0.90, 0.50, 0.80, 0.70, 0.80, 0.60, 0.90,
                                 0.70, 0.80, 0.80}));
  for (std::size_t i = 0; i < lib.size(); ++i) {
    EXPECT_EQ(lib[i].id, i);
    EXPECT_TRUE(lib[i].canonical);
  }
}

TEST(BuiltinLibrary, PressingVariantsDifferOnlyInTransition) {
  const StrategyLibrary lib = builtin_canonical();
  const AttributeVector& hp = lib.find("High Pressing")->profile;
  const AttributeVector& gp = lib.find("Gegenpressing")->profile;
  for (AttributeId id : kAllAttributes) {
    if (id == AttributeId::A4) {
      EXPECT_NE(hp[id], gp[id]);
    } else {
      EXPECT_EQ(hp[id], gp[id]) << key(id);
    }
  }
}

TEST(LibraryFiles, CanonicalFileMatchesBuiltin) {
  const LoadedLibrary loaded = load_library(kData / "strategies_canonical.json");
  EXPECT_TRUE(loaded.warnings.empty());
  EXPECT_EQ(loaded.library, builtin_canonical());
}

TEST(LibraryFiles, FullFileHasTwentyWithCanonicalSubset) {
  const LoadedLibrary loaded = load_library(kData / "strategies_full.json");
  const StrategyLibrary& lib = loaded.library;
  ASSERT_EQ(lib.size(), 20u);
  std::size_t canonical = 0;
  for (const StrategyTemplate& t : lib) {
    if (!t.canonical) continue;
    ++canonical;
    const StrategyTemplate* ref = builtin_canonical().find(t.name);
    ASSERT_NE(ref, nullptr) << t.name;
    EXPECT_EQ(t.profile, ref->profile);
  }
  EXPECT_EQ(canonical, 5u);
  for (const StrategyTemplate& t : lib) {
    for (double v : t.profile.values()) {
      EXPECT_GE(v, kCanonicalFloor) << t.name;
      EXPECT_LE(v, kCanonicalCeiling) << t.name;
    }
  }
}

TEST(LibraryValidation, DuplicateNames) {
  StrategyTemplate a{.name = "X", .profile = AttributeVector::filled(0.5)};
  EXPECT_THROW(StrategyLibrary::make({a, a}), DuplicateName);
}

TEST(LibraryValidation, CanonicalRangeAndWarnings) {
  StrategyTemplate low{.name = "Low", .profile = AttributeVector::filled(0.5).with(AttributeId::A3, 0.1)};
  low.canonical = true;
  EXPECT_THROW(StrategyLibrary::make({low}), OutOfRange);
  low.canonical = false;
  std::vector<std::string> warnings;
  EXPECT_NO_THROW(StrategyLibrary::make({low}, &warnings));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("A3"), std::string::npos);
}

TEST(LibraryParsing, FieldPathInErrors) {
  const char* text = R"([{"name": "X", "category": "pressing", "profile": {"A1": 0.5}}])";
  try {
    parse_library(text);
    FAIL() << "expected ShapeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.field().rfind("strategies[0].profile", 0), 0u) << e.field();
  }
  EXPECT_THROW(parse_library(R"([{"name": "X", "category": "chaos", "profile": {}}])"), Error);
  EXPECT_THROW(parse_library("not json"), ParseError);
}

TEST(Perturbation, DeterministicClampedAndFlagged) {
  const StrategyTemplate hp = builtin_canonical()[0];
  std::mt19937_64 a(41), b(41);
  const StrategyTemplate pa = perturb_template(hp, 0.05, a);
  const StrategyTemplate pb = perturb_template(hp, 0.05, b);
  EXPECT_EQ(pa.profile, pb.profile);
  EXPECT_FALSE(pa.canonical);
  EXPECT_EQ(pa.name, hp.name);

  std::mt19937_64 wide(3);
  for (int i = 0; i < 200; ++i) {
    const StrategyTemplate p = perturb_template(hp, 5.0, wide);
    for (double v : p.profile.values()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Perturbation, ZeroSigmaIsIdentityAndNegativeRejected) {
  const StrategyTemplate hp = builtin_canonical()[0];
  std::mt19937_64 rng(1);
  EXPECT_EQ(perturb_template(hp, 0.0, rng).profile, hp.profile);
  EXPECT_THROW(perturb_template(hp, -0.1, rng), NegativeSigma);
}

TEST(Intensity, MeanOfTransitionAndPress) {
  EXPECT_DOUBLE_EQ(builtin_canonical().find("Gegenpressing")->intensity(), 0.85);
  EXPECT_DOUBLE_EQ(builtin_canonical().find("Positional Defense")->intensity(), 0.25);
}
