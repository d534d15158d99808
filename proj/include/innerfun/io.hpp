#pragma once

#include <string>
#include <variant>
#include <vector>

#include "innerfun/diagnostics.hpp"
#include "innerfun/entropy.hpp"

namespace innerfun {

/// Malformed/out-of-range user input; the CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

/// {"model": "disc"|"half-plane", "zeros": [{"re","im","mult"[, "gap"]}],
///  "tail_bound": float?, "metadata": {...}}
Json zeroset_to_json(const ZeroSet& zs);
ZeroSet zeroset_from_json(const Json& j);

/// {"atoms": [{"angle_turns": string-or-float, "mass": float}]}
Json measure_to_json(const SingularMeasure& mu);
SingularMeasure measure_from_json(const Json& j);

/// {"arcs": [[start, end], ...]} in turns; strings may carry exact rationals.
Json boundary_to_json(const BoundarySet& e);
BoundarySet boundary_from_json(const Json& j);

/// Dispatch of the generator-spec schema {"kind": ..., "params": {...},
/// "seed": int?}; cantor_like yields a boundary set, everything else zeros.
std::variant<ZeroSet, BoundarySet> run_generator_spec(const Json& spec);

Json report_to_json(const Report& rep);
Json eta_curve_to_json(const EtaCurve& curve);

/// Reproducibility header: tool version, full config, input digests.
Json make_provenance(const std::string& command, const Json& config,
                     const std::vector<std::string>& input_paths);

std::string format_sig17(double x);
/// '#'-prefixed provenance lines, then an RFC-4180 body (LF endings).
std::string eta_curve_to_csv(const EtaCurve& curve, const Json& provenance);

struct SublevelRow {
  double re, im, modulus;
  bool in_set;
};
std::string sublevel_to_csv(const std::vector<SublevelRow>& rows, const Json& provenance);

}  // namespace innerfun
