#pragma once

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace evlab::cli {

using Json = nlohmann::ordered_json;

/// Shortest text with 17 significant digits, '.' separator, locale-free.
std::string format_number(double value);

/// Numeric CSV table with a single header row.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(const std::vector<double>& row);
    std::size_t rows() const noexcept { return rows_; }
    const std::string& text() const noexcept { return text_; }

private:
    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string text_;
};

enum class Format { csv, json, both };

/// Collects the files of one run and writes them together, refusing to
/// replace existing files unless forced.
class OutputSet {
public:
    OutputSet(std::filesystem::path dir, Format format, bool force);

    bool wants_csv() const noexcept { return format_ != Format::json; }
    bool wants_json() const noexcept { return format_ != Format::csv; }

    void add_csv(const std::string& name, const CsvTable& table);
    /// Summary and manifest files are named after the command.
    void finish(const std::string& command, const Json& inputs, const Json& outputs,
                const std::vector<std::string>& warnings);

    const std::vector<std::filesystem::path>& written() const noexcept { return written_; }

private:
    std::filesystem::path dir_;
    Format format_;
    bool force_;
    std::vector<std::pair<std::string, std::string>> pending_;
    std::vector<std::filesystem::path> written_;
};

/// Thrown for conditions that are the caller's fault (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace evlab::cli
