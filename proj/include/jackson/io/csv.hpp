#ifndef JACKSON_IO_CSV_HPP
#define JACKSON_IO_CSV_HPP

#include <jackson/common.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <variant>

namespace jackson::io {

inline constexpr int csv_schema_version = 1;

/// 12 significant digits; inf and nan spelled out.
inline std::string fmt(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

using Cell = std::variant<double, long long, std::string>;

inline std::string cell_text(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c)) return fmt(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

/// Writes a CSV table to a temporary sibling and renames it into place on
/// close(). The first line is a comment describing the columns; every row
/// starts with the schema_version column.
class CsvWriter {
public:
    CsvWriter(std::filesystem::path path, const std::string& description, std::vector<std::string> columns)
        : path_(std::move(path)), tmp_(path_), columns_(std::move(columns))
    {
        tmp_ += ".tmp." + std::to_string(::getpid());
        out_.open(tmp_);
        if (!out_) throw rejection("cannot write " + tmp_.string());
        out_ << "# " << description << "; columns:";
        for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? ", " : " ") << columns_[i];
        out_ << "\nschema_version";
        for (const auto& c : columns_) out_ << "," << c;
        out_ << "\n";
    }

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    ~CsvWriter()
    {
        if (!closed_) {
            out_.close();
            std::error_code ec;
            std::filesystem::remove(tmp_, ec);
        }
    }

    void row(const std::vector<Cell>& cells)
    {
        if (cells.size() != columns_.size()) throw rejection("CsvWriter: row width does not match the header");
        out_ << csv_schema_version;
        for (const auto& c : cells) out_ << "," << cell_text(c);
        out_ << "\n";
        ++rows_;
    }

    std::size_t rows() const { return rows_; }
    const std::filesystem::path& path() const { return path_; }

    void close()
    {
        out_.close();
        if (!out_) throw rejection("write failed for " + tmp_.string());
        std::filesystem::rename(tmp_, path_);
        closed_ = true;
    }

private:
    std::filesystem::path path_, tmp_;
    std::vector<std::string> columns_;
    std::ofstream out_;
    std::size_t rows_ = 0;
    bool closed_ = false;
};

/// Creates `dir` if needed: a temporary sibling is created and renamed so
/// readers never see a half-made directory.
inline void ensure_output_dir(const std::filesystem::path& dir)
{
    namespace fs = std::filesystem;
    if (fs::is_directory(dir)) return;
    if (fs::exists(dir)) throw rejection(dir.string() + " exists and is not a directory");
    if (dir.has_parent_path()) fs::create_directories(dir.parent_path());
    fs::path tmp = dir;
    tmp += ".tmp." + std::to_string(::getpid());
    fs::create_directory(tmp);
    std::error_code ec;
    fs::rename(tmp, dir, ec);
    if (ec) {
        fs::remove(tmp);
        if (!fs::is_directory(dir)) throw rejection("cannot create " + dir.string() + ": " + ec.message());
    }
}

} // namespace jackson::io

#endif
