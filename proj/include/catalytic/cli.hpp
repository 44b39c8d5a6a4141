#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "catalytic/catalyst.hpp"
#include "catalytic/density.hpp"

namespace catalytic::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kInvariantFailure = 1;
inline constexpr int kUsageError = 2;

struct RunConfig {
  std::string subcommand;  // protocol | demo | audit | state
  std::string rho = "pure0";
  std::string sigma = "mixed";
  Shape shape{2};
  std::size_t n = 3;
  std::vector<std::size_t> n_list;
  std::vector<double> alpha_list{0.25, 0.5, 0.75, 0.9, 1.0};
  double K = 1.0;
  double alpha = 1.0;  // audit continuity exponent
  std::string eta = "zero";
  std::string measure = "entropy";
  DistanceMethod method = DistanceMethod::automatic;
  std::size_t dense_cap = kDefaultDenseCap;
  std::string output;
  std::string json_dump;
  std::uint64_t seed = 7;
  int threads = 1;
  // state subcommand
  std::string state_action;  // validate | convert
  std::string state_source;
  std::string state_format = "auto";
};

// n = 2..10, then powers of two up to 2^16.
std::vector<std::size_t> default_n_list();

// pure0 | mixed | random:<seed>[:<rank>] | path to a JSON state file.
DensityMatrix resolve_state(const std::string& source, const Shape& shape);

int cmd_protocol(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_demo(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_state(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catalytic::cli
