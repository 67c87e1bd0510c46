#include <gtest/gtest.h>

#include <cmath>

#include "tacfit/attribute_space.hpp"
#include "tacfit/errors.hpp"

using namespace tacfit;

TEST(AttributeIds, FourteenOrderedKeys) {
  ASSERT_EQ(kAllAttributes.size(), 14u);
  for (std::size_t i = 0; i < kAllAttributes.size(); ++i) {
    EXPECT_EQ(index_of(kAllAttributes[i]), i);
    EXPECT_EQ(attribute_at(i), kAllAttributes[i]);
    EXPECT_EQ(key(kAllAttributes[i]), "A" + std::to_string(i + 1));
    EXPECT_EQ(parse_attribute_key(key(kAllAttributes[i])), kAllAttributes[i]);
  }
  EXPECT_FALSE(parse_attribute_key("A0"));
  EXPECT_FALSE(parse_attribute_key("A15"));
  EXPECT_FALSE(parse_attribute_key("a1"));
  EXPECT_THROW(attribute_at(14), OutOfRange);
}

TEST(AttributeIds, CategoryGroups) {
  using A = AttributeId;
  for (A id : {A::A1, A::A2, A::A3, A::A4, A::A5, A::A6}) {
    EXPECT_EQ(category(id), AttributeCategory::kTechnical) << key(id);
  }
  for (A id : {A::A8, A::A12, A::A13}) {
    EXPECT_EQ(category(id), AttributeCategory::kPhysical) << key(id);
  }
  for (A id : {A::A7, A::A9, A::A10, A::A11, A::A14}) {
    EXPECT_EQ(category(id), AttributeCategory::kPsychological) << key(id);
  }
  EXPECT_EQ(display_name(A::A8), "Residual Energy");
}

TEST(AttributeVector, RejectsOutOfRangeAndNaming) {
  std::array<double, 14> v;
  v.fill(0.5);
  v[0] = 1.05;
  try {
    AttributeVector::make(v);
    FAIL() << "expected OutOfRange";
  } catch (const OutOfRange& e) {
    EXPECT_EQ(e.field(), "A1");
  }
  const AttributeVector clamped = AttributeVector::make(v, RangePolicy::kClamp);
  EXPECT_EQ(clamped[AttributeId::A1], 1.0);
}

TEST(AttributeVector, WrongArity) {
  EXPECT_THROW(AttributeVector::make({0.1, 0.2, 0.3}), WrongArity);
}

TEST(AttributeVector, RejectsNaN) {
  EXPECT_THROW(AttributeVector::filled(std::nan("")), OutOfRange);
}

TEST(PartialVector, ProjectionKeepsMaskedValues) {
  using A = AttributeId;
  const AttributeVector build_up = AttributeVector::make(
      {0.80, 0.50, 0.70, 0.50, 0.40, 0.60, 0.70, 0.60, 0.80, 0.70, 0.80, 0.80, 0.60, 0.80});
  const AttributeMask mask{A::A1, A::A2, A::A4, A::A5, A::A8};
  const PartialAttributeVector p = project(build_up, mask);
  EXPECT_EQ(p.active_values(), (std::vector<double>{0.80, 0.50, 0.50, 0.40, 0.60}));
  EXPECT_FALSE(p.active(A::A3));
  EXPECT_THROW(p.at(A::A3), InactiveAttribute);
  EXPECT_FALSE(p.get(A::A3));
  EXPECT_THROW(p.to_full(), ShapeMismatch);
  EXPECT_THROW(project(p, AttributeMask{A::A3}), InactiveAttribute);
  EXPECT_THROW(project(build_up, AttributeMask{}), EmptyMask);
}

TEST(PartialVector, ValueCountMustMatchMask) {
  using A = AttributeId;
  EXPECT_THROW(PartialAttributeVector::make(AttributeMask{A::A1, A::A2}, {0.5}), WrongArity);
  EXPECT_THROW(PartialAttributeVector::make(AttributeMask{}, {}), EmptyMask);
}

TEST(Categorical, DefaultAnchors) {
  EXPECT_EQ(from_categorical(CategoricalLevel::kHigh), 0.85);
  EXPECT_EQ(from_categorical(CategoricalLevel::kMedium), 0.50);
  EXPECT_EQ(from_categorical(CategoricalLevel::kLow), 0.20);
  EXPECT_EQ(parse_level("Hoch"), CategoricalLevel::kHigh);
  EXPECT_EQ(parse_level("Mittel"), CategoricalLevel::kMedium);
  EXPECT_EQ(parse_level("Niedrig"), CategoricalLevel::kLow);
  EXPECT_EQ(parse_level("High"), CategoricalLevel::kHigh);
  EXPECT_THROW(parse_level("Very High"), UnknownLevel);
}

TEST(Categorical, AnchorShiftBounded) {
  CategoricalAnchors ok{0.95, 0.40, 0.10};
  EXPECT_NO_THROW(ok.validate());
  EXPECT_NEAR(from_categorical(CategoricalLevel::kHigh, ok), 0.95, 0.0);
  CategoricalAnchors too_far{0.70, 0.50, 0.20};
  EXPECT_THROW(too_far.validate(), OutOfRange);
  CategoricalAnchors inverted{0.85, 0.50, 0.55};
  EXPECT_ANY_THROW(inverted.validate());
}

TEST(MatchState, Validation) {
  EXPECT_NO_THROW(MatchState::make(0.5, 0));
  EXPECT_THROW(MatchState::make(1.5, 0), OutOfRange);
  EXPECT_THROW(MatchState::make(0.5, 2), OutOfRange);
  EXPECT_THROW(MatchState::make(0.5, 0, -0.1), OutOfRange);
}

TEST(ParamSet, Defaults) {
  const ParamSet p;
  EXPECT_EQ(p.tau_e, 0.50);
  EXPECT_EQ(p.gamma_e, 1.50);
  EXPECT_EQ(p.gamma_g, 1.00);
  EXPECT_EQ(p.tau_t, 0.25);
  EXPECT_EQ(p.gamma_t, 2.00);
  EXPECT_EQ(p.alpha, 0.20);
  EXPECT_NO_THROW(p.validate());
  ParamSet bad;
  bad.alpha = 1.5;
  EXPECT_THROW(bad.validate(), OutOfRange);
  bad = {};
  bad.gamma_e = -1.0;
  EXPECT_ANY_THROW(bad.validate());
}
