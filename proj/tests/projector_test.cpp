#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "okun/estimator.hpp"
#include "okun/manifest.hpp"
#include "okun/projector.hpp"
#include "support/synthetic.hpp"

namespace okun {
namespace {

CountryDataset us_fixture() {
    const auto m = load_manifest(std::string(OKUN_FIXTURES_DIR) + "/manifest.json");
    return load_country(m.country("us"));
}

TEST(GdpPath, ConstantIncrement) {
    const auto flat = gdp_path({ConstantIncrement{0.0}, 2010, 47000.0, 2050});
    for (double v : flat.values()) EXPECT_EQ(v, 47000.0);

    const auto lin = gdp_path({ConstantIncrement{591.5}, 2010, 47000.0, 2050});
    EXPECT_EQ(lin.size(), 41u);
    EXPECT_DOUBLE_EQ(lin.back(), 47000.0 + 23660.0);
    for (Year y = 2012; y <= 2050; ++y) EXPECT_NEAR(lin.at(y) - 2 * lin.at(y - 1) + lin.at(y - 2), 0.0, 1e-9);
}

TEST(GdpPath, Exponential) {
    const auto ex = gdp_path({Exponential{0.0209}, 2010, 47000.0, 2050});
    const auto rate = implied_growth_rate(ex);
    for (double v : rate.values()) EXPECT_NEAR(v, 2.09, 1e-10);
}

TEST(GdpPath, Errors) {
    EXPECT_THROW((void)gdp_path({ConstantIncrement{-1000.0}, 2010, 5000.0, 2020}), DomainError);
    EXPECT_THROW((void)gdp_path({Exponential{0.02}, 2010, 0.0, 2020}), DomainError);
    EXPECT_THROW((void)gdp_path({Exponential{0.02}, 2010, 10.0, 2009}), AlignmentError);
    EXPECT_EQ(gdp_path({Exponential{0.02}, 2010, 10.0, 2010}).size(), 1u);
}

TEST(ImpliedGrowthRate, InertialPath) {
    const auto path = gdp_path({ConstantIncrement{591.5}, 2010, 47000.0, 2100});
    const auto rate = implied_growth_rate(path);
    for (Year y = rate.start_year() + 1; y <= rate.end_year(); ++y) EXPECT_LT(rate.at(y), rate.at(y - 1));
    // ln(1 + x) = x + O(x^2): |100 ln(G_t/G_{t-1}) - 100 C/G_{t-1}| <= 100 (C/G_{t-1})^2
    for (Year y = rate.start_year(); y <= rate.end_year(); ++y) {
        const double x = 591.5 / path.at(y - 1);
        EXPECT_LE(std::abs(rate.at(y) - 100.0 * x), 100.0 * x * x);
    }
}

TEST(ProjectRate, SpliceRules) {
    const auto d = us_fixture();
    const auto r = fit_model(d, FitConfig{});
    const auto& g = d.gdp_per_capita;
    EXPECT_THROW((void)project_rate(r.model, d, {ConstantIncrement{591.5}, 2009, g.back(), 2050}), AlignmentError);
    EXPECT_THROW((void)project_rate(r.model, d, {ConstantIncrement{591.5}, 2010, g.back() * 1.01, 2050}),
                 AlignmentError);

    const auto p = project_rate(r.model, d, {ConstantIncrement{591.5}, 2010, g.back(), 2010});
    ASSERT_EQ(p.rate.size(), 1u);
    EXPECT_NEAR(p.rate.front(), r.predicted.at(2010), 1e-9);
}

TEST(ProjectRate, UsLinearScenarioNear25) {
    const auto d = us_fixture();
    const auto r = fit_model(d, FitConfig{});
    const auto p = project_rate(r.model, d, {ConstantIncrement{591.5}, 2010, d.gdp_per_capita.back(), 2050});
    EXPECT_NEAR(p.rate.at(2010), r.predicted.at(2010), 1e-9);
    EXPECT_NEAR(p.rate.back(), 25.0, 3.0);
    EXPECT_FALSE(p.any_clipped());
}

TEST(ProjectRate, ThresholdScenarioIsFlat) {
    const auto d = us_fixture();
    const auto r = fit_model(d, FitConfig{});
    const double rate = threshold(r.model.segment2) / 100.0;
    const auto p = project_rate(r.model, d, {Exponential{rate}, 2010, d.gdp_per_capita.back(), 2060});
    for (double v : p.rate.values()) EXPECT_NEAR(v, p.rate.front(), 1e-6);
}

TEST(ProjectRate, ClipsAndFlags) {
    std::mt19937_64 rng(1);
    const auto g = testing::synthetic_gdp(1960, 2010, 1e4, 2.0, 1.0, rng);
    const auto m = chain_segments(RateKind::Unemployment, 0, 1980, {-0.4, 1.0, 1961, 5.0}, -0.1, 3.0, g);
    const auto p = project_rate(m, g, {ConstantIncrement{0.0}, 2010, g.back(), 2100});
    EXPECT_TRUE(p.any_clipped());
    EXPECT_EQ(p.rate.back(), 100.0);
    EXPECT_FALSE(p.clipped.front());
}

TEST(ProjectRate, AboveThresholdMonotone) {
    std::mt19937_64 rng(2);
    const auto g = testing::synthetic_gdp(1960, 2010, 1e4, 2.0, 2.0, rng);
    const auto emp = chain_segments(RateKind::Employment, 0, 1985, {0.3, -0.5, 1961, 60.0}, 0.45, -0.8, g);
    const auto unemp = chain_segments(RateKind::Unemployment, 1, 1985, {-0.4, 1.1, 1961, 5.0}, -0.465, 0.866, g);
    for (const auto& m : {emp, unemp}) {
        const double r = threshold(m.segment2) / 100.0 + 0.005;
        const auto p = project_rate(m, g, {Exponential{r}, 2010, g.back(), 2060});
        for (Year y = 2011 + m.lag; y <= 2060; ++y) {
            if (m.target == RateKind::Employment)
                ASSERT_GT(p.rate.at(y), p.rate.at(y - 1));
            else
                ASSERT_LT(p.rate.at(y), p.rate.at(y - 1));
        }
    }
}

TEST(CounterfactualTrend, Identities) {
    std::mt19937_64 rng(3);
    const auto g = testing::synthetic_gdp(1950, 2010, 1e4, 2.0, 2.0, rng);
    const auto same = chain_segments(RateKind::Unemployment, 0, 1979, {-0.4, 0.9, 1951, 3.3}, -0.465, 0.9, g);
    const auto a = counterfactual_trend(same, g, {1979, 2010});
    const auto b = predict_level(same, g, {1979, 2010});
    for (Year y = 1979; y <= 2010; ++y) EXPECT_NEAR(a.at(y), b.at(y), 1e-12);

    const auto m = chain_segments(RateKind::Unemployment, 0, 1979, {-0.406, 1.113, 1951, 3.3}, -0.465, 0.866, g);
    const auto cf = counterfactual_trend(m, g, {1979, 2010});
    const auto pred = predict_level(m, g, {1979, 2010});
    for (Year y = 1979; y <= 2010; ++y) EXPECT_NEAR(cf.at(y) - pred.at(y), (1.113 - 0.866) * (y - 1979), 1e-9);
    EXPECT_THROW((void)counterfactual_trend(m, g, {1978, 2010}), AlignmentError);
}

TEST(CounterfactualTrend, UsFixtureOldTrendIsHigher) {
    const auto d = us_fixture();
    const auto r = fit_model(d, FitConfig{});
    const auto cf = counterfactual_trend(r.model, d);
    const Year ts = r.model.break_year;
    double prev_gap = 0.0;
    for (Year y = ts + 1; y <= cf.end_year(); ++y) {
        const double gap = cf.at(y) - r.predicted.at(y);
        EXPECT_GT(gap, 0.0);
        EXPECT_GT(gap, prev_gap);
        prev_gap = gap;
    }
}

}  // namespace
}  // namespace okun
