#include <tdc/time_value.hpp>

#include <gtest/gtest.h>

#include <random>

using tdc::TimeValue;

TEST(TimeValue, ParsesIntegersDecimalsAndFractions) {
  EXPECT_EQ(TimeValue::parse("12"), TimeValue(12));
  EXPECT_EQ(TimeValue::parse("-3"), TimeValue(-3));
  EXPECT_EQ(TimeValue::parse("12.25"), TimeValue(49, 4));
  EXPECT_EQ(TimeValue::parse("1/3"), TimeValue(1, 3));
  EXPECT_TRUE(TimeValue::parse("inf").is_pos_inf());
  EXPECT_TRUE(TimeValue::parse("+inf").is_pos_inf());
  EXPECT_TRUE(TimeValue::parse("-inf").is_neg_inf());
}

TEST(TimeValue, RejectsMalformedText) {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "--1", "1e5"}) {
    EXPECT_THROW(TimeValue::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(TimeValue, PrintsCanonicalForms) {
  EXPECT_EQ(TimeValue(7).to_string(), "7");
  EXPECT_EQ(TimeValue(49, 4).to_string(), "12.25");
  EXPECT_EQ(TimeValue(-1, 2).to_string(), "-0.5");
  EXPECT_EQ(TimeValue(1, 3).to_string(), "1/3");
  EXPECT_EQ(TimeValue::infinity().to_string(), "inf");
  EXPECT_EQ(TimeValue::negative_infinity().to_string(), "-inf");
}

TEST(TimeValue, TextRoundTrip) {
  for (auto v : {TimeValue(0), TimeValue(-5), TimeValue(3, 7), TimeValue(101, 100), TimeValue::infinity()}) {
    EXPECT_EQ(TimeValue::parse(v.to_string()), v);
  }
}

TEST(TimeValue, ArithmeticIsExact) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::int64_t> num(-100000, 100000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  for (int i = 0; i < 2000; ++i) {
    const TimeValue a(num(rng), den(rng));
    const TimeValue b(num(rng), den(rng));
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ((a - b) + b, a);
    if (!b.is_zero()) {
      EXPECT_EQ((a * b) / b, a);
    }
  }
  EXPECT_EQ(TimeValue(1, 10) + TimeValue(2, 10), TimeValue(3, 10));
}

TEST(TimeValue, InfinityArithmetic) {
  const auto inf = TimeValue::infinity();
  EXPECT_TRUE((inf + TimeValue(5)).is_pos_inf());
  EXPECT_TRUE((TimeValue(5) - inf).is_neg_inf());
  EXPECT_TRUE((-inf).is_neg_inf());
  EXPECT_THROW(inf - inf, std::domain_error);
  EXPECT_THROW(inf + TimeValue::negative_infinity(), std::domain_error);
}

TEST(TimeValue, OrderingIsTotal) {
  EXPECT_LT(TimeValue::negative_infinity(), TimeValue(-1000000));
  EXPECT_LT(TimeValue(1, 3), TimeValue(34, 100));
  EXPECT_LT(TimeValue(1000000), TimeValue::infinity());
  EXPECT_EQ(TimeValue(2, 4), TimeValue(1, 2));
  EXPECT_EQ(tdc::min(TimeValue(3), TimeValue(1, 2)), TimeValue(1, 2));
}

TEST(TimeValue, FloorAndSign) {
  EXPECT_EQ(TimeValue(7, 2).floor(), 3);
  EXPECT_EQ(TimeValue(-7, 2).floor(), -4);
  EXPECT_EQ(TimeValue(-4).floor(), -4);
  EXPECT_TRUE(TimeValue(-1, 3).is_negative());
  EXPECT_TRUE(TimeValue(1, 3).is_positive());
  EXPECT_TRUE(TimeValue(0).is_zero());
  EXPECT_EQ(TimeValue(-5, 2).abs(), TimeValue(5, 2));
}
