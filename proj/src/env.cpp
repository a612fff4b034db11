#include "fppsim/env.hpp"

#include <nlohmann/json.hpp>

namespace fpp {

std::string to_string(WeightMode mode) {
    switch (mode) {
        case WeightMode::IID: return "iid";
        case WeightMode::Periodic: return "periodic";
        case WeightMode::Debug: return "debug";
    }
    return "?";
}

WeightMode weight_mode_from_string(const std::string& s) {
    if (s == "iid") return WeightMode::IID;
    if (s == "periodic") return WeightMode::Periodic;
    if (s == "debug") return WeightMode::Debug;
    throw std::invalid_argument("unknown weight mode: " + s);
}

std::string Environment::descriptor_json() const {
    nlohmann::json j;
    j["mode"] = to_string(mode_);
    j["n"] = n_;
    j["seed"] = seed_;
    return j.dump();
}

Environment Environment::from_descriptor_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    return Environment(weight_mode_from_string(j.at("mode").get<std::string>()),
                       j.at("n").get<int>(), j.at("seed").get<std::uint64_t>());
}

Environment sample_environment(WeightMode mode, int n, std::uint64_t seed) {
    return Environment(mode, n, seed);
}

CoupledEnvironment couple(int n, std::uint64_t seed) {
    return CoupledEnvironment{Environment(WeightMode::IID, n, seed),
                              Environment(WeightMode::Periodic, n, seed), n};
}

}  // namespace fpp
