#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gcs/observables.hpp"

namespace gcs {

struct VerifyCase {
  std::string name;
  nlohmann::json params;
  double residual;
  double tolerance;
  bool pass;
};

/// A reference closed-form series that disagrees with the index-space result.
struct Erratum {
  FamilyKind family;
  Observable observable;
  Complex alpha;
  double reference;
  double generic;
  double rederived;
  std::string note;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCase> cases;
  std::vector<Erratum> errata;

  bool all_pass() const;
  nlohmann::json to_json() const;
};

/// Runs every basis, coherent-state and observable invariant check.
VerifyReport run_verification(double tol = kDefaultTolerance);

/// The closed-form comparison alone: one case per (family, observable) for the
/// rederived series, plus errata for reference-series mismatches.
void verify_closed_forms(VerifyReport& report, double tol = kDefaultTolerance);

/// Known misprint descriptions, keyed by family and observable; empty if none known.
std::string known_misprint(FamilyKind family, Observable obs);

}  // namespace gcs
