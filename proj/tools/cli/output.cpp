#include "output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#ifndef EVLAB_VERSION
#define EVLAB_VERSION "0.0.0"
#endif

namespace evlab::cli {

std::string format_number(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("format_number: non-finite value in output");
    if (value == 0.0) value = 0.0;  // drop the sign of negative zero
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return {buf.data(), res.ptr};
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvTable::add_row(const std::vector<double>& row) {
    if (row.size() != columns_) throw std::logic_error("CsvTable: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) text_ += ',';
        text_ += format_number(row[i]);
    }
    text_ += '\n';
    ++rows_;
}

OutputSet::OutputSet(std::filesystem::path dir, Format format, bool force)
    : dir_(std::move(dir)), format_(format), force_(force) {}

void OutputSet::add_csv(const std::string& name, const CsvTable& table) {
    if (wants_csv()) pending_.emplace_back(name, table.text());
}

namespace {

Json files_entry(const std::vector<std::pair<std::string, std::string>>& files) {
    auto arr = Json::array();
    for (const auto& [name, text] : files) arr.push_back({{"name", name}, {"bytes", text.size()}});
    return arr;
}

}  // namespace

void OutputSet::finish(const std::string& command, const Json& inputs, const Json& outputs,
                       const std::vector<std::string>& warnings) {
    if (wants_json()) {
        Json summary;
        summary["command"] = command;
        summary["inputs"] = inputs;
        summary["outputs"] = outputs;
        summary["warnings"] = warnings;
        pending_.emplace_back(command + ".json", summary.dump(2) + "\n");
    }
    Json manifest;
    manifest["artifact"] = "evlab";
    manifest["version"] = EVLAB_VERSION;
    manifest["command"] = command;
    manifest["inputs"] = inputs;
    manifest["files"] = files_entry(pending_);
    pending_.emplace_back(command + ".manifest.json", manifest.dump(2) + "\n");

    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw UsageError("cannot create output directory " + dir_.string() + ": " + ec.message());
    if (!force_) {
        for (const auto& [name, text] : pending_) {
            if (std::filesystem::exists(dir_ / name)) {
                throw UsageError("refusing to overwrite " + (dir_ / name).string() + " (pass --force)");
            }
        }
    }
    for (const auto& [name, text] : pending_) {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) throw std::runtime_error("failed to write " + path.string());
        written_.push_back(path);
    }
    pending_.clear();
}

}  // namespace evlab::cli
