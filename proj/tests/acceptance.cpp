// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "okun/okun.hpp"
#include "support/cli.hpp"
#include "support/synthetic.hpp"

namespace fs = std::filesystem;
using namespace okun;

namespace {

// Tolerances, pinned.
constexpr double kThresholdTol = 0.005;
constexpr int kReplications = 100;
constexpr int kRequiredHits = 90;
constexpr double kNoiseSd = 0.2;
constexpr double kSlopeTol = 0.05;
constexpr double kExactTol = 1e-6;
constexpr double kIdentTimeLimit = 5.0;
constexpr double kRoundTripTol = 1e-12;
constexpr double kScaleTol = 1e-8;
constexpr double kContinuityTol = 1e-9;
constexpr double kOrthoTol = 1e-8;
constexpr double kInvarianceTimeLimit = 1.0;
constexpr double kFixtureSlopeTol = 0.02;
constexpr double kRealSlopeTol = 0.08;
constexpr double kUsMinR2 = 0.84;
constexpr double kJapanMinR2 = 0.90;
constexpr double kProjectionTarget = 25.0;
constexpr double kProjectionTol = 3.0;
constexpr double kFlatTol = 1e-6;
constexpr double kCorrSlopeTol = 0.05;
constexpr double kCorrR2Tol = 0.03;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunManifest fixture_manifest() { return load_manifest(std::string(OKUN_FIXTURES_DIR) + "/manifest.json"); }

FitConfig target_cfg(RateKind k) {
    FitConfig c;
    c.target = k;
    return c;
}

CountryDataset employment_dataset(const testing::SyntheticData& d) {
    return make_dataset("synthetic", d.gdp, d.measured, std::nullopt);
}

Outcome thresholds() {
    struct Case {
        Segment seg;
        RateKind kind;
        double expected;
    };
    const Case cases[] = {{{-0.465, 0.866}, RateKind::Unemployment, 1.86},
                          {{0.41, -0.81}, RateKind::Employment, 1.98},
                          {{0.44, -0.56}, RateKind::Employment, 1.27},
                          {{0.25, -0.30}, RateKind::Employment, 1.20}};
    Outcome o;
    for (const auto& c : cases) {
        const double t = threshold(c.seg, c.kind);
        o.pass = o.pass && std::abs(t - c.expected) <= kThresholdTol;
        o.detail += fmt("%.4f(%.2f) ", t, c.expected);
    }
    return o;
}

Outcome identifiability() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20110720);
    std::uniform_real_distribution<double> slope(0.02, 0.50), trend(-1.11, 1.11);
    std::uniform_int_distribution<Year> brk(1975, 1995);
    int break_hits = 0, slope_hits = 0, exact = 0, runs = 0;
    double worst_exact = 0.0;
    while (runs < kReplications) {
        testing::SyntheticSpec spec;
        spec.slope1 = slope(rng);
        spec.slope2 = slope(rng);
        spec.trend1 = trend(rng);
        spec.trend2 = trend(rng);
        spec.break_year = brk(rng);
        spec.noise_sd = kNoiseSd;
        const auto d = testing::generate(spec, rng);
        const auto v = d.clean.values();
        if (*std::min_element(v.begin(), v.end()) < 0.0 || *std::max_element(v.begin(), v.end()) > 100.0) continue;
        ++runs;

        const auto noisy = fit_model(employment_dataset(d), target_cfg(RateKind::Employment));
        if (std::abs(noisy.model.break_year - spec.break_year) <= 1) ++break_hits;
        if (std::abs(noisy.model.segment1.slope - spec.slope1) <= kSlopeTol &&
            std::abs(noisy.model.segment2.slope - spec.slope2) <= kSlopeTol)
            ++slope_hits;

        const auto clean = fit_model(make_dataset("clean", d.gdp, d.clean, std::nullopt),
                                     target_cfg(RateKind::Employment));
        const double err = std::max({std::abs(clean.model.segment1.slope - spec.slope1),
                                     std::abs(clean.model.segment1.trend - spec.trend1),
                                     std::abs(clean.model.segment2.slope - spec.slope2),
                                     std::abs(clean.model.segment2.trend - spec.trend2)});
        worst_exact = std::max(worst_exact, err);
        if (clean.model.break_year == spec.break_year && clean.model.lag == 0 && err <= kExactTol) ++exact;
    }
    const double secs = seconds_since(t0);
    return {break_hits >= kRequiredHits && slope_hits >= kRequiredHits && exact == kReplications &&
                secs < kIdentTimeLimit,
            fmt("break±1 %d/%d, slopes±%.2f %d/%d, noise-free exact %d/%d (max err %.1e), %.2fs", break_hits,
                kReplications, kSlopeTol, slope_hits, kReplications, exact, kReplications, worst_exact, secs)};
}

Outcome invariance() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7);
    double round_trip = 0.0, scale = 0.0, continuity = 0.0, ortho = 0.0;

    std::uniform_real_distribution<double> val(-50.0, 100.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> v(static_cast<std::size_t>(2 + i % 60));
        for (double& x : v) x = val(rng);
        const AnnualSeries s(1950, v, Unit::PercentPoints);
        const auto back = cumsum(diff(s), s.start_year(), s.front());
        for (Year y = back.start_year(); y <= back.end_year(); ++y)
            round_trip = std::max(round_trip, std::abs(back.at(y) - s.at(y)));
    }

    std::uniform_real_distribution<double> factor(1e-3, 1e3);
    for (int i = 0; i < 10; ++i) {
        testing::SyntheticSpec spec;
        spec.noise_sd = 0.3;
        spec.lag = i % 2;
        const auto d = testing::generate(spec, rng);
        std::vector<double> g(d.gdp.values().begin(), d.gdp.values().end());
        const double c = factor(rng);
        for (double& x : g) x *= c;
        const auto a = fit_model(employment_dataset(d), target_cfg(RateKind::Employment));
        const auto b = fit_model(make_dataset("scaled", {d.gdp.start_year(), g, Unit::CurrencyPerCapita}, d.measured,
                                              std::nullopt),
                                 target_cfg(RateKind::Employment));
        if (a.model.break_year != b.model.break_year || a.model.lag != b.model.lag) scale = INFINITY;
        scale = std::max({scale, std::abs(a.model.segment1.slope - b.model.segment1.slope),
                          std::abs(a.model.segment1.trend - b.model.segment1.trend),
                          std::abs(a.model.segment2.slope - b.model.segment2.slope),
                          std::abs(a.model.segment2.trend - b.model.segment2.trend),
                          std::abs(a.r_squared - b.r_squared), std::abs(a.std_error - b.std_error)});

        const auto& m = a.model;
        const double seg1_at_break = evaluate(m.segment1, d.gdp, m.break_year, m.lag);
        const double level_at_break = predict_level(m, d.gdp, {m.break_year, m.break_year}).front();
        continuity = std::max({continuity, std::abs(seg1_at_break - m.segment2.anchor_value),
                               std::abs(level_at_break - seg1_at_break)});

        // Orthogonality of each segment's residuals to its own regressors.
        const auto window = a.window();
        const YearRange parts[] = {{window.first, m.break_year - 1}, {m.break_year, window.last}};
        const Segment* segs[] = {&m.segment1, &m.segment2};
        for (int p = 0; p < 2; ++p) {
            const Segment& s = *segs[p];
            double r1 = 0, r2 = 0, rr = 0, x11 = 0, x22 = 0;
            for (Year t = parts[p].first; t <= parts[p].last; ++t) {
                const double x1 = 100.0 * std::log(d.gdp.at(t - m.lag) / d.gdp.at(s.anchor_year - m.lag));
                const double x2 = t - s.anchor_year;
                const double r = d.measured.at(t) - (s.anchor_value + s.slope * x1 + s.trend * x2);
                r1 += r * x1;
                r2 += r * x2;
                rr += r * r;
                x11 += x1 * x1;
                x22 += x2 * x2;
            }
            ortho = std::max({ortho, std::abs(r1) / std::sqrt(rr * x11), std::abs(r2) / std::sqrt(rr * x22)});
        }
    }
    const double secs = seconds_since(t0);
    return {round_trip <= kRoundTripTol && scale <= kScaleTol && continuity <= kContinuityTol && ortho <= kOrthoTol &&
                secs < kInvarianceTimeLimit,
            fmt("round-trip %.1e, scale %.1e, continuity %.1e, orthogonality %.1e, %.2fs", round_trip, scale,
                continuity, ortho, secs)};
}

Outcome fit_replication(const RunManifest& m, double slope_tol) {
    const auto us = fit_model(load_country(m.country("us")), target_cfg(RateKind::Unemployment));
    const auto jp = fit_model(load_country(m.country("japan")), target_cfg(RateKind::Employment));
    const auto& s2 = us.model.segment2;
    const bool pass = us.model.break_year >= 1978 && us.model.break_year <= 1980 &&
                      std::abs(s2.slope - (-0.465)) <= slope_tol && us.r_squared >= kUsMinR2 &&
                      jp.r_squared >= kJapanMinR2;
    return {pass, fmt("US break %d, slope2 %.4f (-0.465±%.2f), trend2 %.4f, R² %.3f; Japan R² %.3f se %.3f",
                      us.model.break_year, s2.slope, slope_tol, s2.trend, us.r_squared, jp.r_squared, jp.std_error)};
}

Outcome projection() {
    const auto data = load_country(fixture_manifest().country("us"));
    const auto& g = data.gdp_per_capita;
    const double u0 = data.rate(RateKind::Unemployment).at(1951);
    const auto m = chain_segments(RateKind::Unemployment, 0, 1979, {-0.406, 1.113, 1951, u0}, -0.465, 0.866, g);

    const auto lin = project_rate(m, g, {ConstantIncrement{591.5}, g.end_year(), g.back(), 2050});
    const double u2050 = lin.rate.at(2050);

    const double r = threshold(m.segment2) / 100.0;
    const auto flat = project_rate(m, g, {Exponential{r}, g.end_year(), g.back(), 2050});
    double dev = 0.0;
    for (double v : flat.rate.values()) dev = std::max(dev, std::abs(v - flat.rate.front()));

    return {std::abs(u2050 - kProjectionTarget) <= kProjectionTol && dev <= kFlatTol,
            fmt("u(2050) %.2f (25±3) from G_2010 %.0f; threshold scenario max deviation %.1e", u2050, g.back(), dev)};
}

Outcome correlation() {
    const auto data = load_country(fixture_manifest().country("us"));
    const auto c = okun_correlation(data.rate(RateKind::Employment), data.rate(RateKind::Unemployment));
    return {std::abs(c.slope - 1.24) <= kCorrSlopeTol && std::abs(c.r_squared - 0.88) <= kCorrR2Tol,
            fmt("slope %.4f (1.24±%.2f), R² %.4f (0.88±%.2f), n %zu", c.slope, kCorrSlopeTol, c.r_squared, kCorrR2Tol,
                c.n)};
}

Outcome determinism() {
    const std::string manifest = std::string(OKUN_FIXTURES_DIR) + "/manifest.json";
    testing::ScratchDir a, b;
    for (const auto* dir : {&a, &b}) {
        for (const char* country : {"us", "japan", "uk", "france"}) {
            const std::string common = std::string(" --manifest ") + manifest + " --country " + country + " --out " +
                                       dir->str();
            for (const std::string& cmd : {"fit" + common, "project --scenario linear" + common,
                                           "project --scenario exponential" + common, "figures" + common}) {
                const auto r = testing::run_cli(cmd);
                if (r.exit_code != 0) return {false, cmd + ": " + r.err};
            }
        }
    }
    int files = 0, differing = 0;
    for (const auto& e : fs::recursive_directory_iterator(a.path)) {
        if (!e.is_regular_file()) continue;
        ++files;
        if (testing::read_file(e.path()) != testing::read_file(b.path / fs::relative(e.path(), a.path))) ++differing;
    }
    return {files > 0 && differing == 0, fmt("%d files compared, %d differ", files, differing)};
}

}  // namespace

int main() {
    report(1, "threshold arithmetic", thresholds);
    report(2, "synthetic identifiability", identifiability);
    report(3, "round-trip and invariance", invariance);
    report(4, "fit replication (fixtures)", [] { return fit_replication(fixture_manifest(), kFixtureSlopeTol); });
    if (const char* real = std::getenv("OKUN_REAL_DATA_MANIFEST"); real && *real)
        report(4, "fit replication (real data)", [real] { return fit_replication(load_manifest(real), kRealSlopeTol); });
    else
        std::printf("[SKIP] 4. fit replication (real data): OKUN_REAL_DATA_MANIFEST not set\n");
    report(5, "projection", projection);
    report(6, "okun correlation", correlation);
    report(7, "CLI determinism", determinism);
    return failures == 0 ? 0 : 1;
}
