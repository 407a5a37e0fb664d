#pragma once

#include <string>

#include "json.hpp"

namespace levellab {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// Uniform JSON envelope for CLI subcommands. Verdict semantics: PASS means
// every asserted property held, FAIL means at least one violated property
// (details carry the first witness), ERROR means the run could not complete.
struct ReportEnvelope {
  std::string command;
  ordered_json config;
  std::string verdict = "PASS";
  ordered_json details;

  ordered_json to_json() const {
    ordered_json j;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["config"] = config;
    j["verdict"] = verdict;
    j["details"] = details;
    return j;
  }
};

inline int exit_code_for(const std::string& verdict) {
  if (verdict == "PASS") return 0;
  if (verdict == "FAIL") return 1;
  return 2;
}

}  // namespace levellab
