// okun: fit integrated Okun's-law models, project rates and emit plot data.
//
//   okun fit      --manifest M --country ID [--target T] [--break-from Y --break-to Y] [--lags 0,1] [--out DIR]
//   okun project  --manifest M --country ID --scenario NAME [--horizon Y] [--target T] [--out DIR]
//   okun figures  --manifest M --country ID [--target T] [--out DIR]
//
// Exit codes: 0 success, 1 user/data error, 2 internal error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "okun/okun.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string manifest;
    std::string country;
    std::string target;
    std::string out;
    std::optional<okun::Year> break_from;
    std::optional<okun::Year> break_to;
    std::vector<int> lags;
    std::string scenario;
    std::optional<okun::Year> horizon;
};

void print_error(const std::string& category, const std::string& message) {
    nlohmann::json j;
    j["error"] = {{"category", category}, {"message", message}};
    std::cerr << j.dump() << '\n';
}

// All contents are staged to temporaries first so a failure leaves no
// partially written outputs behind.
void write_outputs(const fs::path& dir, const std::vector<okun::OutputFile>& files) {
    fs::create_directories(dir);
    std::vector<std::pair<fs::path, fs::path>> staged;
    try {
        for (const auto& f : files) {
            const fs::path final_path = dir / f.name;
            fs::path tmp = final_path;
            tmp += ".tmp";
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << f.content;
            out.close();
            if (!out) throw okun::ConfigurationError("cannot write " + tmp.string());
            staged.emplace_back(tmp, final_path);
        }
    } catch (...) {
        for (const auto& [tmp, _] : staged) fs::remove(tmp);
        throw;
    }
    for (const auto& [tmp, final_path] : staged) fs::rename(tmp, final_path);
}

struct Loaded {
    okun::RunManifest manifest;
    okun::CountryDataset data;
    okun::FitConfig cfg;
    fs::path out_dir;
};

Loaded load(const Options& o) {
    okun::RunManifest manifest = okun::load_manifest(o.manifest);
    const okun::CountryEntry& entry = manifest.country(o.country);
    okun::FitConfig cfg = entry.fit;
    if (!o.target.empty()) cfg.target = okun::rate_kind_from_string(o.target);
    if (o.break_from) cfg.break_grid.first = *o.break_from;
    if (o.break_to) cfg.break_grid.last = *o.break_to;
    if (!o.lags.empty()) cfg.lag_candidates = o.lags;
    cfg.validate();
    okun::CountryDataset data = okun::load_country(entry);
    const fs::path out_dir = o.out.empty() ? manifest.output_dir : fs::path(o.out);
    return {std::move(manifest), std::move(data), cfg, out_dir};
}

std::string stem(const Options& o, const okun::FitConfig& cfg) {
    return o.country + "_" + std::string(okun::to_string(cfg.target));
}

void cmd_fit(const Options& o) {
    const Loaded l = load(o);
    const okun::FitReport report = okun::fit_model(l.data, l.cfg);
    const std::string base = stem(o, l.cfg);
    write_outputs(l.out_dir, {{base + "_fit.json", okun::fit_report_json(report, l.data).dump(2) + "\n"},
                              {base + "_predicted.csv", okun::predicted_csv(report, l.data)}});
}

void cmd_project(const Options& o) {
    const Loaded l = load(o);
    const okun::ScenarioDef& def = l.manifest.scenario(o.scenario);
    const okun::FitReport report = okun::fit_model(l.data, l.cfg);
    const okun::GrowthScenario s = okun::make_scenario(def, l.data, report.model, o.horizon);
    const okun::Projection p = okun::project_rate(report.model, l.data, s);
    write_outputs(l.out_dir, {{stem(o, l.cfg) + "_" + o.scenario + "_projection.csv", okun::projection_csv(p)}});
}

void cmd_figures(const Options& o) {
    const Loaded l = load(o);
    const okun::FitReport report = okun::fit_model(l.data, l.cfg);
    write_outputs(l.out_dir / o.country, okun::figure_files(report, l.data, l.manifest));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integrated Okun's-law fitting, projection and plot data"};
    app.require_subcommand(1);
    Options o;

    const auto common = [&o](CLI::App* sub) {
        sub->add_option("--manifest", o.manifest, "run manifest (JSON)")->required();
        sub->add_option("--country", o.country, "country id in the manifest")->required();
        sub->add_option("--target", o.target, "unemployment or employment (default from manifest)")
            ->check(CLI::IsMember({"unemployment", "employment"}));
        sub->add_option("--out", o.out, "output directory (default from manifest)");
    };

    CLI::App* fit = app.add_subcommand("fit", "fit the two-segment model and write report + predicted series");
    common(fit);
    fit->add_option("--break-from", o.break_from, "first candidate break year");
    fit->add_option("--break-to", o.break_to, "last candidate break year");
    fit->add_option("--lags", o.lags, "candidate GDP lags, e.g. 0,1")->delimiter(',');

    CLI::App* project = app.add_subcommand("project", "project the rate under a growth scenario");
    common(project);
    project->add_option("--scenario", o.scenario, "scenario name in the manifest")->required();
    project->add_option("--horizon", o.horizon, "last projected year (default from scenario)");

    CLI::App* figures = app.add_subcommand("figures", "write plot-data TSV files");
    common(figures);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*fit) cmd_fit(o);
        else if (*project) cmd_project(o);
        else if (*figures) cmd_figures(o);
    } catch (const okun::Error& e) {
        print_error(e.category(), e.what());
        return 1;
    } catch (const fs::filesystem_error& e) {
        print_error("io", e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 2;
    }
    return 0;
}
