#pragma once

#include "superell/galois_ring.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace superell {

using Json = nlohmann::ordered_json;

// Everything a command needs, resolved and validated from one config.
struct JobContext {
    FieldPtr Fq;
    SuperellipticCurve curve;
    AutGroupPtr H;
    u32 conductor;
    CycloFieldPtr K;
    FieldElement omega; // image of zeta in F_q, fixed per run
    u32 precision;      // series length; at least 2 genus + 3
    u64 cap;
    u32 workers; // scheduling only; never serialized
    std::vector<RelationTerm> relation;
    std::vector<u32> multiplicities;
};

struct JobOverrides {
    std::optional<u32> precision;
    std::optional<u64> cap;
    std::optional<u32> workers;
};

// Builds the tower, curve, group, and cyclotomic scale from a config
// document. Throws ConfigError naming the violated invariant.
JobContext load_job(const Json& config, const JobOverrides& overrides = {});

// Serialization: field elements and polynomials as low-degree-first arrays,
// cyclotomic coordinates as {num, den} strings.
Json elem_json(const FieldElement& e);
Json fqpoly_json(const FqPoly& f);
Json cyclo_json(const CycloNum& c);
Json cyclopoly_json(const CycloPoly& P);
Json fqmatrix_json(const FqMatrix& M);

// The "inputs" block shared by every report (no scheduling knobs).
Json context_inputs(const JobContext& ctx);

struct CommandResult {
    Json report;
    int exit_code = 0;
};

struct CommandOptions {
    u32 nu = 1; // count: table depth
};

// One of: validate count zeta lfun cartier gamma verify-idem
// verify-corollary embedding-check. Throws ConfigError for unusable configs;
// MathError surfaces as exit code 1 at the CLI boundary. A report is always
// produced; exit_code 1 marks a computed-but-violated identity.
CommandResult run_command(const std::string& cmd, const JobContext& ctx,
                          const CommandOptions& opt = {});

// genus-bound works from three integers, no config.
CommandResult genus_bound_command(u32 m, u32 n_p, u32 g);

} // namespace superell
