#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hpl/serialize.hpp"

namespace hpl::cli {

enum ExitCode { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

struct GenerateOptions {
  std::uint64_t seed = 0;
  int z_order = 4;
  int eps_order = 4;
  IdealKind ideal = IdealKind::triangular;
  int pieces = 3;
  int span = 4;      // degrees per summand
  int max_rank = 3;  // rank bound per degree of a summand
};

/// Deterministic instance bundle: summands X_i ~ Y_i, their sums X ~ Y, a twist
/// alpha of X in the requested ideal and the filtered complex "fc".
Bundle generate_bundle(const GenerateOptions& opts);

/// Checks every object of the bundle, or only `what` when nonempty. Sets `ok`.
json verify_bundle(const Bundle& b, const std::string& what, bool& ok);

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hpl::cli
