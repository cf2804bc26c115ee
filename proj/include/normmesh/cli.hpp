#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "normmesh/serialize.hpp"
#include "normmesh/sets.hpp"

namespace normmesh::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { dims, bounds, mesh, embed, distort, entropy };

struct ScheduleSpec {
  std::uint64_t s = 3;
  std::uint64_t k = 1;
  std::string c_hat = "1";
};

struct RunConfig {
  Command command = Command::dims;
  std::optional<std::string> set_kind;  // box | ball | sphere | cloud
  std::vector<double> params;
  std::optional<std::string> cloud_path;
  std::size_t n = 1;
  std::size_t d = 1;
  std::optional<std::uint64_t> p;
  std::optional<ScheduleSpec> schedule;
  std::size_t resolution = 101;
  std::uint64_t seed = 0;
  std::size_t trials = 32;
  double eps = 0.5;
  std::optional<std::uint64_t> nbar;
  std::optional<std::uint64_t> k;
  std::optional<std::string> c_hat;
  std::optional<std::string> out;
  std::string format = "json";
  bool timestamp = true;
};

/// Builds the compact set described by the config (kind, params, resolution).
CompactSet make_set(const RunConfig& config);

/// Parses "1.5" or "exp(4)".
GrowthConstant parse_growth_constant(const std::string& text);

/// Runs one command and returns the report. Throws normmesh::Error.
Json execute(const RunConfig& config);

/// Full front end: parses argv, runs, writes the report, maps errors to exit
/// codes (0 ok, 2 invalid input, 3 invariant violation).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace normmesh::cli
