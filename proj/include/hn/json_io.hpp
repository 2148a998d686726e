#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hn/lattice.hpp"
#include "hn/multifilt.hpp"
#include "hn/polygon.hpp"

namespace hn {

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kInputVersion = "hn-input/1";
inline constexpr const char* kResultVersion = "hn-result/1";

// Parsed object description: exactly one payload is set.
struct InputDocument {
  std::string kind;  // "multifilt_fp" | "lattice"
  std::optional<MultiFiltSpace> multifilt;
  std::optional<EuclideanLattice> lattice;
};

InputDocument parse_input(const std::string& text);
InputDocument input_from_multifilt(const MultiFiltSpace& x);
InputDocument input_from_lattice(const EuclideanLattice& l);
std::string serialize_input(const InputDocument& doc);

// Exact slope rendering: {"rational": "a/b"} or
// {"neg_half_log_of": "a/b"[, "root": n]} (value -log(a/b)/(2n)).
nlohmann::ordered_json slope_json(const ExactSlope& s, int digits);
nlohmann::ordered_json degree_json(const ExactDegree& d, int digits);
ExactSlope slope_from_json(const nlohmann::json& j);

struct ComputeOptions {
  int digits = 12;
  bool include_timing = false;
  DestabConfig fp_cfg;
  LatticeDestabConfig lattice_cfg;
};

struct ComputeOutput {
  nlohmann::ordered_json result;
  Polygon polygon;
  DiracMeasure measure;
  bool oracle_failed = false;  // result then carries the failure marker and partial chain
};

// Runs the full computation (sequence, filtration, polygon, measure) and
// assembles the result document. Throws input_error on invalid payloads;
// a destabilizer failure yields a partial document with oracle_failed set
// instead of throwing.
ComputeOutput compute_document(const InputDocument& doc, const ComputeOptions& opt);

}  // namespace hn
