#include "segcrawl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "segcrawl/errors.hpp"

namespace segcrawl {
namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.emplace_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(const std::string& field, std::size_t line_no) {
    if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) {
        throw InvalidInputError("summary CSV line " + std::to_string(line_no) + ": bad number '" +
                                field + "'");
    }
    return value;
}

}  // namespace

void write_text_file(const std::filesystem::path& out, std::string_view text) {
    std::error_code ec;
    if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path(), ec);
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) throw OutputError("cannot write " + out.string());
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!file) throw OutputError("write failed: " + out.string());
}

std::string render_table(const BenchSummary& summary) {
    if (summary.cells.empty()) throw InvalidInputError("emit_table: summary has no cells");
    std::size_t rows = 0;
    for (const auto& cell : summary.cells) rows = std::max(rows, cell.trials.size());

    std::string out = "experiment";
    for (const auto& cell : summary.cells) out += "," + cell.label;
    out += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        out += std::to_string(r + 1);
        for (const auto& cell : summary.cells) {
            out += ',';
            if (r < cell.trials.size()) out += format_fixed(cell.trials[r]);
        }
        out += '\n';
    }
    out += "average";
    for (const auto& cell : summary.cells) out += "," + format_fixed(cell.mean);
    out += '\n';
    return out;
}

void emit_table(const BenchSummary& summary, const std::filesystem::path& out) {
    write_text_file(out, render_table(summary));
}

std::string render_timing_table(std::span<const GroupTiming> timings) {
    std::vector<GroupTiming> sorted(timings.begin(), timings.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const GroupTiming& a, const GroupTiming& b) { return a.group_id < b.group_id; });
    std::string out(kTimingHeader);
    out += '\n';
    for (const auto& t : sorted) {
        out += std::to_string(t.group_id) + "," + std::to_string(t.start.count()) + "," +
               std::to_string(t.end.count()) + "," + std::to_string((t.end - t.start).count()) + "\n";
    }
    return out;
}

void emit_timing_table(std::span<const GroupTiming> timings, const std::filesystem::path& out) {
    write_text_file(out, render_timing_table(timings));
}

std::size_t SummaryTable::column(std::string_view label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    return it == labels.end() ? std::string_view::npos : static_cast<std::size_t>(it - labels.begin());
}

SummaryTable parse_summary_csv(std::string_view text) {
    SummaryTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool have_average = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (line_no == 1) {
            if (fields.front() != "experiment") {
                throw InvalidInputError("summary CSV must start with an \"experiment\" header");
            }
            table.labels.assign(fields.begin() + 1, fields.end());
            continue;
        }
        if (fields.size() != table.labels.size() + 1) {
            throw InvalidInputError("summary CSV line " + std::to_string(line_no) +
                                    ": wrong number of fields");
        }
        std::vector<double> values;
        for (std::size_t i = 1; i < fields.size(); ++i) values.push_back(parse_number(fields[i], line_no));
        if (fields.front() == "average") {
            table.averages = std::move(values);
            have_average = true;
        } else {
            table.trials.push_back(std::move(values));
        }
    }
    if (table.labels.empty()) throw InvalidInputError("summary CSV has no columns");
    if (!have_average) throw InvalidInputError("summary CSV has no \"average\" row");
    return table;
}

SummaryTable load_summary_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_summary_csv(buffer.str());
}

}  // namespace segcrawl
