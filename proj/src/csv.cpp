#include "hsjump/csv.hpp"

#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace hsjump {

std::string format_num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void ensure_dir(const std::string& path) {
    std::filesystem::create_directories(path);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     uint64_t seed, uint64_t config_hash)
    : path_(path), n_cols_(columns.size()) {
    const auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    out_.open(path);
    if (!out_) throw std::runtime_error("cannot open " + path);
    out_ << "# version = " << kVersion << "\n";
    out_ << "# seed = " << seed << "\n";
    std::ostringstream hex;
    hex << std::hex << config_hash;
    out_ << "# config_hash = " << hex.str() << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_cols_) throw std::invalid_argument("csv row arity mismatch");
    for (size_t i = 0; i < values.size(); ++i)
        out_ << format_num(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    if (values.size() != n_cols_) throw std::invalid_argument("csv row arity mismatch");
    for (size_t i = 0; i < values.size(); ++i)
        out_ << values[i] << (i + 1 < values.size() ? "," : "\n");
}

} // namespace hsjump
