#include "allocbandit/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace allocbandit {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' expects a number, got '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config: key '" + key + "' expects a number, got '" + value + "'");
    return v;
}

long parse_long(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long v;
    try {
        v = std::stol(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config: key '" + key + "' expects an integer, got '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    unsigned long long v;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' expects an unsigned integer, got '" +
                                    value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config: key '" + key + "' expects an unsigned integer, got '" +
                                    value + "'");
    return static_cast<std::uint64_t>(v);
}

} // namespace

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw std::invalid_argument("config: empty item in list '" + text + "'");
        out.push_back(parse_double("list", item));
    }
    if (out.empty())
        throw std::invalid_argument("config: empty list");
    return out;
}

ExperimentConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: expected key = value, got '" + line + "'");
        if (kv.count(key))
            throw std::invalid_argument("config: duplicate key '" + key + "'");
        kv[key] = value;
    }

    static const std::map<std::string, PolicyKind> kPolicies = {
        {"single", PolicyKind::SingleArm},
        {"exclusive", PolicyKind::Exclusive},
        {"multi", PolicyKind::MultiArm},
        {"lcs-approx", PolicyKind::LcsApprox},
    };
    static const char* kKnownKeys[] = {"policy", "c",           "n", "reps", "seed", "arms",
                                       "arm_family", "K", "m",  "r", "checkpoints", "inject_fault"};
    for (const auto& [key, value] : kv) {
        bool known = false;
        for (const char* k : kKnownKeys)
            known = known || key == k;
        if (!known)
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    auto required = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument(std::string("config: missing required key '") + key + "'");
        return it->second;
    };

    ExperimentConfig config;
    {
        const std::string& p = required("policy");
        auto it = kPolicies.find(p);
        if (it == kPolicies.end())
            throw std::invalid_argument("config: unknown policy '" + p + "'");
        config.policy = it->second;
    }
    if (config.policy != PolicyKind::LcsApprox)
        config.c = parse_double("c", required("c"));
    else if (kv.count("c"))
        config.c = parse_double("c", kv.at("c")); // accepted, unused
    config.horizon = parse_long("n", required("n"));
    config.replications = static_cast<int>(parse_long("reps", required("reps")));
    config.seed = parse_u64("seed", required("seed"));

    const bool has_arms = kv.count("arms") > 0;
    const bool has_family = kv.count("arm_family") > 0;
    if (has_arms == has_family)
        throw std::invalid_argument("config: exactly one of 'arms' and 'arm_family' is required");
    if (has_arms) {
        config.arms.kind = ArmSpec::Kind::Explicit;
        config.arms.values = parse_double_list(kv.at("arms"));
        for (const char* k : {"K", "m", "r"})
            if (kv.count(k))
                throw std::invalid_argument(std::string("config: key '") + k +
                                            "' only applies to arm_family specs");
    } else {
        const std::string& family = kv.at("arm_family");
        if (family == "linear") {
            config.arms.kind = ArmSpec::Kind::Linear;
            config.arms.linear_count = static_cast<int>(parse_long("K", required("K")));
            config.arms.linear_m = static_cast<int>(parse_long("m", required("m")));
            if (kv.count("r"))
                throw std::invalid_argument("config: key 'r' only applies to arm_family = hard");
        } else if (family == "hard") {
            config.arms.kind = ArmSpec::Kind::Hard;
            config.arms.hard_r = static_cast<int>(parse_long("r", required("r")));
            for (const char* k : {"K", "m"})
                if (kv.count(k))
                    throw std::invalid_argument(std::string("config: key '") + k +
                                                "' only applies to arm_family = linear");
        } else {
            throw std::invalid_argument("config: unknown arm_family '" + family + "'");
        }
    }

    if (auto it = kv.find("checkpoints"); it != kv.end()) {
        if (it->second == "pow2")
            config.checkpoints = CheckpointRule::PowersOfTwo;
        else if (it->second == "final")
            config.checkpoints = CheckpointRule::FinalOnly;
        else
            throw std::invalid_argument("config: checkpoints must be 'pow2' or 'final'");
    }
    if (auto it = kv.find("inject_fault"); it != kv.end()) {
        if (it->second == "none")
            config.fault = FaultInjection::None;
        else if (it->second == "overflow")
            config.fault = FaultInjection::Overflow;
        else
            throw std::invalid_argument("config: inject_fault must be 'none' or 'overflow'");
    }

    validate_config(config);
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace allocbandit
