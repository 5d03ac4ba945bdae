#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hsjump/kernel.hpp"

namespace hsjump {

// Flat [section] key = value configuration. The canonical serialization
// (sorted sections and keys, 17 significant digits) is the single source of
// truth for hashing and round-trips.
struct Config {
    std::map<std::string, std::map<std::string, std::string>> sections;

    bool has(const std::string& sec, const std::string& key) const;
    std::string get(const std::string& sec, const std::string& key) const;
    std::string get_or(const std::string& sec, const std::string& key,
                       const std::string& dflt) const;
    double get_num(const std::string& sec, const std::string& key) const;
    double get_num_or(const std::string& sec, const std::string& key, double dflt) const;
    long get_int_or(const std::string& sec, const std::string& key, long dflt) const;
    void set(const std::string& sec, const std::string& key, const std::string& v);
    void set_num(const std::string& sec, const std::string& key, double v);

    static Config parse(const std::string& text);
    static Config load(const std::string& path);
    std::string canonical() const;
    void save(const std::string& path) const;
};

uint64_t config_hash(const Config& c);

// Builds the kernel spec from the [kernel] section; cross-field constraints
// are enforced and the decay exponent p is recomputed, never read.
KernelSpec kernel_from_config(const Config& c);
Config kernel_to_config(const KernelSpec& s);

} // namespace hsjump
