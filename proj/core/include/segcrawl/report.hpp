#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "segcrawl/bench.hpp"
#include "segcrawl/types.hpp"

namespace segcrawl {

inline constexpr std::string_view kTimingHeader = "group_id,start_ms,end_ms,duration_ms";

/// Benchmark table as CSV: header "experiment,<label>...", one row per trial
/// numbered from 1, then an "average" row. Values are 3-decimal fixed point.
/// Throws InvalidInputError for an empty summary (no file is created).
std::string render_table(const BenchSummary& summary);
void emit_table(const BenchSummary& summary, const std::filesystem::path& out);

/// Per-group timing CSV in group_id order; duration_ms is end_ms - start_ms.
std::string render_timing_table(std::span<const GroupTiming> timings);
void emit_timing_table(std::span<const GroupTiming> timings, const std::filesystem::path& out);

/// A bench summary CSV read back: column labels and their average-row values.
struct SummaryTable {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> trials;  // trials[row][column]
    std::vector<double> averages;

    /// Index of `label` or npos.
    std::size_t column(std::string_view label) const;
};

/// Throws InvalidInputError on a malformed table.
SummaryTable parse_summary_csv(std::string_view text);
SummaryTable load_summary_csv(const std::filesystem::path& path);

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct PlotOptions {
    std::string title;
    std::string x_label = "x";
    std::string y_label = "y";
    int width = 640;
    int height = 400;
};

/// Self-contained SVG line chart: one polyline per series, a marker on every
/// point, labeled axes and a legend. Byte-identical output for identical input.
/// Throws InvalidInputError if there are no series or a series has no points.
std::string render_plot(std::span<const PlotSeries> series, const PlotOptions& options = {});
void emit_plot(std::span<const PlotSeries> series, const std::filesystem::path& out,
               const PlotOptions& options = {});

/// Writes `text` to `out`, creating parent directories. Throws OutputError.
void write_text_file(const std::filesystem::path& out, std::string_view text);

}  // namespace segcrawl
