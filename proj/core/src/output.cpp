#include "segcrawl/output.hpp"

#include "json.hpp"
#include "segcrawl/report.hpp"

namespace segcrawl {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string dump_line(const ordered_json& obj) {
    return obj.dump(-1, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

}  // namespace

std::string record_to_json_line(const TargetedRecord& record) {
    ordered_json obj;
    obj["url"] = record.url;
    obj["index"] = record.dataset_index;
    obj["rule"] = record.rule_name;
    obj["value"] = record.value;
    obj["segment"] = record.segment_id;
    return dump_line(obj);
}

std::string error_to_json_line(const ErrorEntry& error) {
    ordered_json obj;
    obj["url"] = error.url;
    obj["index"] = error.dataset_index;
    obj["status"] = error.status.to_string();
    return dump_line(obj);
}

std::string render_records_jsonl(std::span<const TargetedRecord> records) {
    std::string out;
    for (const auto& r : records) out += record_to_json_line(r);
    return out;
}

std::string render_errors_jsonl(std::span<const ErrorEntry> errors) {
    std::string out;
    for (const auto& e : errors) out += error_to_json_line(e);
    return out;
}

void write_records_jsonl(std::span<const TargetedRecord> records, const std::filesystem::path& out) {
    write_text_file(out, render_records_jsonl(records));
}

void write_errors_jsonl(std::span<const ErrorEntry> errors, const std::filesystem::path& out) {
    write_text_file(out, render_errors_jsonl(errors));
}

}  // namespace segcrawl
