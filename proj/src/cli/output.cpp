#include "rotor/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <openssl/evp.h>
#include <unistd.h>

namespace rotor::cli {

std::string format_double(double v)
{
    if (v == 0.0)
        v = 0.0; // drop the sign of negative zero
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc())
        throw std::runtime_error("float formatting failed");
    return std::string(buf, ptr);
}

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw std::logic_error("row width does not match header");
    rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c)
{
    if (const long* i = std::get_if<long>(&c))
        return std::to_string(*i);
    if (const double* d = std::get_if<double>(&c))
        return format_double(*d);
    return std::get<std::string>(c);
}

} // namespace

std::string Table::to_csv() const
{
    std::string out;
    for (std::size_t j = 0; j < columns.size(); ++j)
        out += (j ? "," : "") + columns[j];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j)
                out += ',';
            out += cell_text(row[j]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json Table::to_json() const
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t j = 0; j < row.size(); ++j) {
            const Cell& c = row[j];
            if (const std::string* s = std::get_if<std::string>(&c); s && s->empty())
                obj[columns[j]] = nullptr;
            else
                std::visit([&](const auto& v) { obj[columns[j]] = v; }, c);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

std::string sha256_hex(std::string_view data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

OutputDirectory::OutputDirectory(std::filesystem::path dir) : dir_(std::move(dir))
{
    std::filesystem::create_directories(dir_);
}

void OutputDirectory::write(const std::string& name, std::string_view content)
{
    const std::filesystem::path target = dir_ / name;
    const std::filesystem::path tmp = dir_ / ("." + name + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
    files_.push_back({name, sha256_hex(content), content.size()});
}

void OutputDirectory::write_table(const std::string& stem, const Table& table, const std::string& format)
{
    if (format == "json")
        write(stem + ".json", table.to_json().dump(2) + "\n");
    else
        write(stem + ".csv", table.to_csv());
}

} // namespace rotor::cli
