#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "segcrawl/types.hpp"

namespace segcrawl {

/// {"url":...,"index":...,"rule":...,"value":...,"segment":...}
std::string record_to_json_line(const TargetedRecord& record);
/// {"url":...,"index":...,"status":...}
std::string error_to_json_line(const ErrorEntry& error);

/// One JSON object per line, LF terminated.
std::string render_records_jsonl(std::span<const TargetedRecord> records);
std::string render_errors_jsonl(std::span<const ErrorEntry> errors);

void write_records_jsonl(std::span<const TargetedRecord> records, const std::filesystem::path& out);
void write_errors_jsonl(std::span<const ErrorEntry> errors, const std::filesystem::path& out);

}  // namespace segcrawl
