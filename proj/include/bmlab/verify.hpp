#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bmlab/io.hpp"

namespace bmlab {

enum class VerifyStatus { Pass, Fail, Undecided };
std::string to_string(VerifyStatus s);

struct VerifyOptions {
    std::uint64_t seed = 1;
    // Overrides the claim's default fields when set.
    std::optional<std::vector<int>> fields;
    // Sample count for sampled claims.
    int samples = 0;  // 0 means the claim default
};

struct VerifyReport {
    std::string claim;
    VerifyStatus status = VerifyStatus::Pass;
    std::string summary;
    json counts = json::object();
    json witnesses = json::array();  // non-empty whenever status is Fail
    double seconds = 0;
};

struct ClaimInfo {
    std::string id;
    std::string description;
};

const std::vector<ClaimInfo>& claims();
// Runs one registered claim; UnknownClaim for an unregistered id.  Bound
// exhaustion inside a claim yields Undecided rather than an exception.
VerifyReport verify(const std::string& id, const VerifyOptions& opts = {});
json to_json(const VerifyReport& r);

}  // namespace bmlab
