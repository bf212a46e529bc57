#include "lincue/artifacts.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include "lincue/csv.hpp"
#include "lincue/io_util.hpp"

namespace lincue {

namespace {

using nlohmann::ordered_json;

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// Histogram values carry full precision so densities integrate back to 1
// from the file itself.
std::string fmt_exact(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void require_artifact(const std::string& path) {
    if (!file_exists(path)) throw MissingArtifactError("missing prerequisite artifact: " + path);
}

}  // namespace

std::vector<StatsRow> compute_stats_rows(const FeatureMatrix& matrix) {
    std::vector<StatsRow> rows;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const std::vector<double> fake = matrix.column_for_label(f, Label::Fake);
        const std::vector<double> real = matrix.column_for_label(f, Label::Real);
        StatsRow row;
        row.feature = feature_names()[f];
        const OvlResult o = ovl(kde_fit(fake), kde_fit(real), row.feature);
        row.ovl = o.value;
        row.scale = o.scale;
        const TestResult kw = kruskal_wallis(fake, real);
        row.kw_h = kw.statistic;
        row.kw_p = kw.p_value;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

void write_histogram_csv(const FeatureMatrix& matrix, std::size_t feature, const std::string& path) {
    const std::vector<double> fake = matrix.column_for_label(feature, Label::Fake);
    const std::vector<double> real = matrix.column_for_label(feature, Label::Real);

    std::vector<double> pooled = fake;
    pooled.insert(pooled.end(), real.begin(), real.end());
    double lo = *std::min_element(pooled.begin(), pooled.end());
    double hi = *std::max_element(pooled.begin(), pooled.end());
    if (lo == hi) {  // constant feature: give the bins a token width
        const double pad = std::max(0.5, std::fabs(lo) * 1e-3);
        lo -= pad;
        hi += pad;
    }
    constexpr int kBins = 20;
    const double width = (hi - lo) / kBins;

    auto densities = [&](const std::vector<double>& values) {
        std::vector<double> out(kBins, 0.0);
        for (double v : values) {
            int b = static_cast<int>((v - lo) / width);
            b = std::clamp(b, 0, kBins - 1);  // right edge joins the last bin
            out[static_cast<std::size_t>(b)] += 1.0;
        }
        for (double& d : out) d /= static_cast<double>(values.size()) * width;
        return out;
    };
    const std::vector<double> dens_fake = densities(fake);
    const std::vector<double> dens_real = densities(real);

    const DensityEstimate kde_f = kde_fit(fake);
    const DensityEstimate kde_r = kde_fit(real);

    std::string out = "bin_left,bin_right,density_fake,density_real,kde_fake,kde_real\n";
    for (int b = 0; b < kBins; ++b) {
        const double left = lo + width * b;
        const double right = b + 1 == kBins ? hi : lo + width * (b + 1);
        const double center = 0.5 * (left + right);
        out += fmt_exact(left) + "," + fmt_exact(right) + "," +
               fmt_exact(dens_fake[static_cast<std::size_t>(b)]) + "," +
               fmt_exact(dens_real[static_cast<std::size_t>(b)]) + "," +
               fmt_exact(kde_f.evaluate(center)) + "," + fmt_exact(kde_r.evaluate(center)) + "\n";
    }
    write_file_atomic(path, out);
}

}  // namespace

void write_stats_artifacts(const FeatureMatrix& matrix, const std::vector<StatsRow>& rows,
                           const std::string& outdir) {
    std::vector<StatsRow> sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const StatsRow& a, const StatsRow& b) { return a.ovl < b.ovl; });

    ordered_json j;
    j["features"] = ordered_json::array();
    std::string csv_out = "feature,ovl,scale,kw_h,kw_p\n";
    for (const auto& row : sorted) {
        ordered_json r;
        r["feature"] = row.feature;
        r["ovl"] = row.ovl;
        r["scale"] = ovl_scale_name(row.scale);
        r["kw_h"] = row.kw_h;
        r["kw_p"] = row.kw_p;
        j["features"].push_back(std::move(r));
        csv_out += row.feature + "," + fmt6(row.ovl) + "," + ovl_scale_name(row.scale) + "," +
                   fmt6(row.kw_h) + "," + fmt6(row.kw_p) + "\n";
    }
    write_file_atomic(join_path(outdir, "stats.json"), j.dump(2) + "\n");
    write_file_atomic(join_path(outdir, "stats.csv"), csv_out);

    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        write_histogram_csv(matrix, f, join_path(outdir, "hist_" + feature_names()[f] + ".csv"));
    }
}

void write_selection_artifacts(const SelectionReport& report, const std::string& outdir) {
    std::vector<FeatureReport> by_importance = report.rows;
    std::stable_sort(by_importance.begin(), by_importance.end(),
                     [](const FeatureReport& a, const FeatureReport& b) {
                         return a.rf_importance > b.rf_importance;
                     });

    ordered_json j;
    j["features"] = ordered_json::array();
    for (const auto& row : by_importance) {
        ordered_json r;
        r["feature"] = row.feature;
        r["rf_importance"] = row.rf_importance;
        r["ovl"] = row.ovl;
        r["ovl_scale"] = ovl_scale_name(row.ovl_scale);
        r["kw_h"] = row.kw_h;
        r["kw_p"] = row.kw_p;
        r["appears_on_iteration"] = row.rfe_first_iteration;
        r["boruta_hits"] = row.boruta_hits;
        r["boruta_zone"] = boruta_zone_name(row.boruta_zone);
        r["boruta_scale"] = boruta_scale_name(row.boruta_zone);
        j["features"].push_back(std::move(r));
    }
    j["spearman_importance_ovl"] = {{"rho", report.spearman_importance_ovl},
                                    {"p", report.spearman_importance_ovl_p}};
    j["spearman_importance_ovl_sparse_excluded"] = {{"rho", report.spearman_importance_ovl_excl},
                                                    {"p", report.spearman_importance_ovl_excl_p}};
    j["excluded_features"] = report.excluded_features;
    write_file_atomic(join_path(outdir, "selection_report.json"), j.dump(2) + "\n");

    std::string csv_out =
        "feature,rf_significance,appears_on_iteration,boruta_hits,boruta_scale,ovl,scale\n";
    for (const auto& row : by_importance) {
        csv_out += row.feature + "," + fmt6(row.rf_importance) + "," +
                   std::to_string(row.rfe_first_iteration) + "," + std::to_string(row.boruta_hits) +
                   "," + boruta_scale_name(row.boruta_zone) + "," + fmt6(row.ovl) + "," +
                   ovl_scale_name(row.ovl_scale) + "\n";
    }
    write_file_atomic(join_path(outdir, "selection_report.csv"), csv_out);
}

void write_eval_artifacts(const EvalGrid& grid, const std::string& outdir) {
    const std::size_t n_sizes = grid.subsets.size();

    // eval_grid.csv: one row per subset size plus the per-classifier averages
    std::string csv_out = "n_features";
    for (const auto& c : grid.classifiers) csv_out += ",accuracy_" + c + ",f1_" + c;
    csv_out += "\n";
    auto cell_at = [&](std::size_t c, std::size_t s) -> const EvalCell& {
        return grid.cells[c * n_sizes + s];
    };
    for (std::size_t s = 0; s < n_sizes; ++s) {
        csv_out += std::to_string(s + 1);
        for (std::size_t c = 0; c < grid.classifiers.size(); ++c) {
            csv_out += "," + fmt6(cell_at(c, s).mean_accuracy) + "," + fmt6(cell_at(c, s).mean_f1);
        }
        csv_out += "\n";
    }
    csv_out += "average";
    for (const auto& summary : grid.summaries)
        csv_out += "," + fmt6(summary.average_accuracy) + "," + fmt6(summary.average_f1);
    csv_out += "\n";
    write_file_atomic(join_path(outdir, "eval_grid.csv"), csv_out);

    std::string max_out =
        "classifier,max_accuracy,features_at_max_accuracy,max_f1,features_at_max_f1\n";
    for (const auto& s : grid.summaries) {
        max_out += s.classifier + "," + fmt6(s.max_accuracy) + "," +
                   std::to_string(s.features_at_max_accuracy) + "," + fmt6(s.max_f1) + "," +
                   std::to_string(s.features_at_max_f1) + "\n";
    }
    write_file_atomic(join_path(outdir, "eval_max.csv"), max_out);

    ordered_json j;
    j["classifiers"] = grid.classifiers;
    j["subsets"] = grid.subsets;
    j["cells"] = ordered_json::array();
    for (const auto& cell : grid.cells) {
        ordered_json c;
        c["classifier"] = cell.classifier;
        c["n_features"] = cell.subset_size;
        c["mean_accuracy"] = cell.mean_accuracy;
        c["mean_f1"] = cell.mean_f1;
        c["mean_precision"] = cell.mean_precision;
        c["mean_recall"] = cell.mean_recall;
        c["chosen_params"] = cell.chosen_params;
        c["folds"] = ordered_json::array();
        for (const auto& m : cell.fold_metrics) {
            c["folds"].push_back({{"accuracy", m.accuracy},
                                  {"precision", m.precision},
                                  {"recall", m.recall},
                                  {"f1", m.f1},
                                  {"tp", m.tp},
                                  {"tn", m.tn},
                                  {"fp", m.fp},
                                  {"fn", m.fn}});
        }
        j["cells"].push_back(std::move(c));
    }
    j["summaries"] = ordered_json::array();
    for (const auto& s : grid.summaries) {
        j["summaries"].push_back({{"classifier", s.classifier},
                                  {"max_accuracy", s.max_accuracy},
                                  {"features_at_max_accuracy", s.features_at_max_accuracy},
                                  {"max_f1", s.max_f1},
                                  {"features_at_max_f1", s.features_at_max_f1},
                                  {"average_accuracy", s.average_accuracy},
                                  {"average_f1", s.average_f1}});
    }
    write_file_atomic(join_path(outdir, "eval_detail.json"), j.dump(2) + "\n");
}

void write_summary_report(const std::string& outdir) {
    const std::string stats_path = join_path(outdir, "stats.json");
    const std::string selection_path = join_path(outdir, "selection_report.json");
    const std::string max_path = join_path(outdir, "eval_max.csv");
    require_artifact(stats_path);
    require_artifact(selection_path);
    require_artifact(max_path);

    const ordered_json stats = ordered_json::parse(read_file(stats_path));
    const ordered_json selection = ordered_json::parse(read_file(selection_path));
    const auto max_rows = csv::parse_file(max_path);

    // key-feature intersection: top-3 RF importance, RFE F3, KW-significant
    std::vector<std::string> top3_rf;
    std::set<std::string> rfe_f3, kw_significant;
    for (const auto& row : selection.at("features")) {
        const std::string name = row.at("feature").get<std::string>();
        if (top3_rf.size() < 3) top3_rf.push_back(name);  // rows are importance-sorted
        if (row.at("appears_on_iteration").get<int>() <= 3) rfe_f3.insert(name);
        if (row.at("kw_p").get<double>() < 0.05) kw_significant.insert(name);
    }
    std::vector<std::string> intersection;
    for (const auto& name : top3_rf) {
        if (rfe_f3.count(name) && kw_significant.count(name)) intersection.push_back(name);
    }
    std::sort(intersection.begin(), intersection.end());

    ordered_json j;
    j["ovl_ranking"] = stats.at("features");
    j["selection"] = selection;
    j["classifier_maxima"] = ordered_json::array();
    for (std::size_t r = 1; r < max_rows.size(); ++r) {
        const auto& f = max_rows[r].fields;
        j["classifier_maxima"].push_back({{"classifier", f.at(0)},
                                          {"max_accuracy", std::stod(f.at(1))},
                                          {"features_at_max_accuracy", std::stoi(f.at(2))},
                                          {"max_f1", std::stod(f.at(3))},
                                          {"features_at_max_f1", std::stoi(f.at(4))}});
    }
    j["key_features"] = {{"top3_rf_importance", top3_rf},
                         {"rfe_first_three", std::vector<std::string>(rfe_f3.begin(), rfe_f3.end())},
                         {"kw_significant", std::vector<std::string>(kw_significant.begin(),
                                                                     kw_significant.end())},
                         {"intersection", intersection}};
    write_file_atomic(join_path(outdir, "report.json"), j.dump(2) + "\n");

    std::string md = "# Analysis summary\n\n";
    md += "## Overlapping coefficients (ascending)\n\n";
    md += "| feature | OVL | scale | KW H | KW p |\n|---|---|---|---|---|\n";
    for (const auto& row : stats.at("features")) {
        md += "| " + row.at("feature").get<std::string>() + " | " +
              fmt6(row.at("ovl").get<double>()) + " | " + row.at("scale").get<std::string>() +
              " | " + fmt6(row.at("kw_h").get<double>()) + " | " +
              fmt6(row.at("kw_p").get<double>()) + " |\n";
    }
    md += "\n## Feature selection\n\n";
    md += "| feature | RF importance | appears on iteration | Boruta hits | Boruta scale |\n";
    md += "|---|---|---|---|---|\n";
    for (const auto& row : selection.at("features")) {
        md += "| " + row.at("feature").get<std::string>() + " | " +
              fmt6(row.at("rf_importance").get<double>()) + " | " +
              std::to_string(row.at("appears_on_iteration").get<int>()) + " | " +
              std::to_string(row.at("boruta_hits").get<int>()) + " | " +
              row.at("boruta_scale").get<std::string>() + " |\n";
    }
    const auto& rho_all = selection.at("spearman_importance_ovl");
    const auto& rho_excl = selection.at("spearman_importance_ovl_sparse_excluded");
    md += "\nSpearman rho between RF importance and OVL: " +
          fmt6(rho_all.at("rho").get<double>()) + " (p = " + fmt6(rho_all.at("p").get<double>()) +
          ").\n";
    md += "Excluding the sparse count cues (";
    const auto excluded = selection.at("excluded_features").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < excluded.size(); ++i) md += (i ? ", " : "") + excluded[i];
    md += "): " + fmt6(rho_excl.at("rho").get<double>()) +
          " (p = " + fmt6(rho_excl.at("p").get<double>()) + ").\n";

    md += "\n## Classifier maxima\n\n";
    md += "| classifier | max accuracy | # features | max F1 | # features |\n|---|---|---|---|---|\n";
    for (std::size_t r = 1; r < max_rows.size(); ++r) {
        const auto& f = max_rows[r].fields;
        md += "| " + f.at(0) + " | " + fmt6(std::stod(f.at(1))) + " | " + f.at(2) + " | " +
              fmt6(std::stod(f.at(3))) + " | " + f.at(4) + " |\n";
    }

    md += "\n## Key features\n\n";
    md += "Intersection of the top-3 RF-importance features, the three-feature RFE set, and the "
          "Kruskal-Wallis-significant features (p < 0.05): ";
    if (intersection.empty()) {
        md += "(empty)\n";
    } else {
        for (std::size_t i = 0; i < intersection.size(); ++i) md += (i ? ", " : "") + intersection[i];
        md += "\n";
    }
    write_file_atomic(join_path(outdir, "report.md"), md);
}

}  // namespace lincue
