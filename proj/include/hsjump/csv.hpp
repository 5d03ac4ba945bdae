#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace hsjump {

inline constexpr const char* kVersion = "hsjump 0.1.0";

// CSV writer with a provenance header: every data artifact records the seed,
// the canonical config hash and the tool version, and nothing run-dependent
// beyond that, so identical runs are byte-identical.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              uint64_t seed, uint64_t config_hash);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream out_;
    size_t n_cols_;
};

std::string format_num(double v);
void ensure_dir(const std::string& path);

} // namespace hsjump
