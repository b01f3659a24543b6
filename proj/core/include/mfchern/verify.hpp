#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mfchern/hochschild.hpp"

namespace mfc {

struct CheckReport {
  std::string name;      // check/setup
  std::string anchor;    // the identity being checked
  std::string instance;  // what was sampled
  bool pass = false;
  std::string residual;  // first nonzero residual, empty on pass
  std::uint64_t seed = 0;
  int instances = 0;
};

struct SuiteSizes {
  int chains = 200;     // random Hochschild chains per setup
  int instances = 100;  // random cochains per setup for the other checks
  int max_tensor = 3;
  int u_trunc = 3;
  int max_power = 3;    // j in the curvature power identity
  int retract_i = 3;
  int retract_u = 4;
};

// a scheme with a few objects to sample morphisms between
struct VerifySetup {
  std::string name;
  SchemePtr X;
  std::vector<CechObject> objects;
};

// A1: Koszul (x,x) on (𝔸¹, x²), its shift and a curved object with ν = x² + x
// A2: Koszul (x,y;x,y) on (𝔸², x² + y²) and its shift
// P1: O(1), O(-1) on ℙ¹ with w = 0
std::vector<VerifySetup> standard_setups();

using Rng = std::mt19937_64;

// ≤ max_terms monomial terms of degree ≤ max_deg, random tuple, entry, form mask and u power
CechCochain random_cochain(Rng& rng, BundlePtr tgt, BundlePtr src, int u_trunc, int max_terms = 3, int max_deg = 2);
// one parity-homogeneous cyclic string of tensor degree ≤ max_tensor; empty chain when sampling failed
CechChain random_chain(Rng& rng, const CechCategory& cat, int max_tensor);

std::vector<std::string> suite_names();
// names may contain "all"; unknown names throw std::invalid_argument.
// Reports come back sorted by name.
std::vector<CheckReport> run_suite(const std::vector<std::string>& names, std::uint64_t seed,
                                   const SuiteSizes& sizes = {});

std::string report_str(const std::vector<CheckReport>& reports);

}  // namespace mfc
