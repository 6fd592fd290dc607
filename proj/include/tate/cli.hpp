#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace tate::cli {

struct Config {
    int precision = 20;
    double tol = 1e-12;
    long prime_bound = 100000;
    long enum_bound = 10000;
};

enum class OutputMode { Text, Json };

/**
 * A validated batch request: one subcommand plus a flat parameter map.
 * Every subcommand declares its schema; unknown keys are rejected before
 * dispatch.
 */
struct CommandRequest {
    std::string subcommand;
    std::map<std::string, std::string> params;
    OutputMode mode = OutputMode::Text;
    Config config;
};

/** Inputs echo + result payload + a note naming the computed identity. */
struct ResultDocument {
    std::string subcommand;
    nlohmann::ordered_json inputs;
    nlohmann::ordered_json result;
    std::string note;
};

// Schema-validate and route to exactly one module operation.
// Throws std::invalid_argument on schema violations and domain errors
// surfaced by modules (with context prepended).
ResultDocument dispatch(const CommandRequest& req);

// Deterministic serialization; identical documents produce identical bytes.
std::string emit(const ResultDocument& doc, OutputMode mode);

// Layered configuration: defaults < config file < TATE_* environment
// variables < explicit flag overrides.
Config load_config(const std::string& config_path,
                   const std::map<std::string, std::string>& flag_overrides);

// The routing table: module operation -> subcommand that reaches it.
const std::map<std::string, std::string>& operation_routes();
std::vector<std::string> subcommand_names();

}  // namespace tate::cli
