#pragma once

#include <string>
#include <vector>

namespace hsjump {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
};

struct AcceptanceOptions {
    uint64_t seed = 20240801;
    std::string out_dir = "out/acceptance";
    int threads = 0;
    // full path counts; the suite honors these as stated in the criteria
    long paths_exit = 100000;
    long paths_suite = 20000;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

} // namespace hsjump
