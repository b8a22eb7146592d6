#pragma once

#include "osd/geometry.h"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace osd {

struct VerifyConfig {
  std::optional<PolygonDomain> domain;  // unit square when empty
  int lmax = 8;
  int quad_order = 8;
  std::uint64_t seed = 1;
  std::size_t max_chain = 10;
  int n = 4;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string summary;
};

/// whitney, jensen, doubling, projection, poincare, lemma24, chain-diff,
/// partition; bit i of the verify exit code is suite i.
const std::vector<std::string>& suite_names();

/// Throws InputError for an unknown name.
SuiteResult run_suite(const std::string& name, const VerifyConfig& config);

PolygonDomain unit_square_domain();

/// Anchor chains of the layer decomposition at scale n together with all
/// their contiguous sub-chains of length <= max_len, both directions,
/// without duplicates.
std::vector<Chain> layer_chains(const WhitneyDecomposition& w, int n, std::size_t max_len);

}  // namespace osd
