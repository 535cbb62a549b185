#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmtlab/ensemble_spec.hpp"
#include "rmtlab/spacing_law.hpp"

namespace rmtlab {

/// One named sub-check. `relation` is how value is compared with threshold ("<", "<=", "==", ">").
struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;
  double threshold = 0.0;
  bool pass = false;

  friend bool operator==(const Check&, const Check&) = default;
};

/// Goodness-of-fit figures of a sampled spacing stream against an analytic law.
struct FitSummary {
  std::string law;  // spec of the law tested against
  double ks_d = 0.0;
  double ks_sqrt_n = 0.0;
  double ks_threshold = 0.0;  // bound on sqrt(n) D
  double chi_square = 0.0;
  int dof = 0;
  double chi_square_threshold = 0.0;
  double empirical_mean = 0.0;
  double analytic_mean = 0.0;
  double mean_tolerance = 0.0;
  std::uint64_t support_violations = 0;
  double max_eigen_spacing_error = 0.0;

  friend bool operator==(const FitSummary&, const FitSummary&) = default;
};

/// Self-describing result: every check carries its value and the threshold it was held to.
/// pass is true iff every check passes.
struct VerificationReport {
  std::string subject;  // "ensemble", "invariance", "divergence_probe"
  std::string ensemble;
  std::map<std::string, double> params;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::optional<FitSummary> fit;
  std::vector<Check> checks;
  bool pass = false;

  const Check* find(std::string_view name) const;
  void add_check(std::string name, double value, std::string relation, double threshold);

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Stream -> {KS against the law's CDF, chi-square against its bin probabilities,
/// mean against mean_spacing, support violations, eigen-solve consistency}.
/// Requires n >= 1000.
VerificationReport verify_ensemble(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed);

/// As verify_ensemble but testing the samples of `spec` against a different law.
VerificationReport verify_against(const EnsembleSpec& spec, const SpacingLaw& law,
                                  std::size_t n, std::uint64_t seed);

/// Relative drift bound used by the invariance checks.
inline constexpr double kInvarianceTolerance = 1e-10;

/// Random matrices transformed by random group elements:
///   U(2) conjugation of general complex matrices preserves C1, C2, C3, C4;
///   SO(2) rotation of Hermitian matrices preserves y;
///   GL(2, C) similarity of general complex matrices preserves complex C1, C2.
/// Drift is |after - before| / max(|before|, scale), scale = ||M||_F (linear invariants)
/// or ||M||_F^2 (quadratic ones). Requires trials >= 100.
VerificationReport invariance_suite(std::size_t trials, std::uint64_t seed);

struct ProbeRow {
  double cutoff = 0.0;
  double integral = 0.0;         // real-spectrum PT measure over gamma, nu <= cutoff
  double nu_zero_integral = 0.0; // |R| = 0 reduction over gamma <= cutoff
};

/// Integrates the real-spectrum PT measure
///   gamma nu sin(theta) sqrt(gamma^2 - nu^2) e^{-pi (e^2 + gamma^2 - nu^2)}, gamma >= nu,
/// with e and the angles done in closed form (factor 8 pi^2) and (gamma, nu) by nested
/// quadrature. The nu = 0 column integrates 4 pi gamma^2 e^{-pi gamma^2}, which tends to 1.
/// Requires at least two strictly increasing positive cutoffs.
std::vector<ProbeRow> divergence_probe(const std::vector<double>& cutoffs);

/// Checks on a probe table: strictly increasing estimates, I(2L)/I(L) > 1.5 wherever 2L is
/// also a cutoff, and convergence of the nu = 0 column.
VerificationReport evaluate_probe(const std::vector<ProbeRow>& rows);

/// Stable-key-order JSON document; doubles round-trip exactly.
std::string to_json(const VerificationReport& report, int indent = 2);
VerificationReport report_from_json(std::string_view text);

}  // namespace rmtlab
