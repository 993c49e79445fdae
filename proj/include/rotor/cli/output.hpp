#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rotor::cli {

/// Shortest text that reads back to the same double.
std::string format_double(double v);

using Cell = std::variant<long, double, std::string>;

struct Table {
    explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}

    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    std::string to_csv() const;
    /// Array of objects, keys in column order.
    nlohmann::ordered_json to_json() const;
};

std::string sha256_hex(std::string_view data);

struct WrittenFile {
    std::string name;
    std::string sha256;
    std::size_t bytes = 0;
};

/// Writes files into one directory via temp file + rename, remembering digests.
class OutputDirectory {
public:
    explicit OutputDirectory(std::filesystem::path dir);

    void write(const std::string& name, std::string_view content);
    /// `stem`.csv or `stem`.json depending on `format`.
    void write_table(const std::string& stem, const Table& table, const std::string& format);

    const std::filesystem::path& path() const noexcept { return dir_; }
    const std::vector<WrittenFile>& files() const noexcept { return files_; }

private:
    std::filesystem::path dir_;
    std::vector<WrittenFile> files_;
};

} // namespace rotor::cli
