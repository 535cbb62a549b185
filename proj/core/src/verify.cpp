#include "rmtlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/matrix.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/stats.hpp"

namespace rmtlab {

namespace {

using std::numbers::pi;
using json = nlohmann::ordered_json;

constexpr std::size_t kMinVerifySamples = 1000;
constexpr std::size_t kMinInvarianceTrials = 100;
constexpr double kMeanStandardErrors = 5.0;
constexpr double kEigenConsistency = 1e-10;
constexpr double kProbeGrowth = 1.5;
constexpr double kNuZeroLimitTolerance = 1e-8;

bool compare(double value, const std::string& relation, double threshold) {
  if (relation == "<") return value < threshold;
  if (relation == "<=") return value <= threshold;
  if (relation == "==") return value == threshold;
  if (relation == ">") return value > threshold;
  if (relation == ">=") return value >= threshold;
  throw InvalidArgument("unknown relation '" + relation + "'");
}

void finalize(VerificationReport& r) {
  r.pass = !r.checks.empty() &&
           std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
}

double drift(cplx before, cplx after, double scale) {
  return std::abs(after - before) / std::max({std::abs(before), scale, kAbsoluteFloor});
}

double drift(double before, double after, double scale) {
  return drift(cplx{before}, cplx{after}, scale);
}

Matrix2C random_complex_matrix(Rng& rng) {
  return {cplx{rng.normal(), rng.normal()}, cplx{rng.normal(), rng.normal()},
          cplx{rng.normal(), rng.normal()}, cplx{rng.normal(), rng.normal()}};
}

}  // namespace

const Check* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

void VerificationReport::add_check(std::string name, double value, std::string relation,
                                   double threshold) {
  const bool ok = compare(value, relation, threshold);
  checks.push_back({std::move(name), value, std::move(relation), threshold, ok});
  finalize(*this);
}

VerificationReport verify_ensemble(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed) {
  return verify_against(spec, SpacingLaw(spec), n, seed);
}

VerificationReport verify_against(const EnsembleSpec& spec, const SpacingLaw& law,
                                  std::size_t n, std::uint64_t seed) {
  if (n < kMinVerifySamples) {
    throw InvalidArgument("verify: n must be at least 1000");
  }
  const auto samples = stream(spec, n, seed);

  std::vector<double> spacings;
  spacings.reserve(n);
  double eigen_error = 0.0;
  for (const auto& s : samples) {
    spacings.push_back(s.spacing);
    const double solved = eigenpair(s.matrix).spacing;
    eigen_error = std::max(eigen_error, std::abs(solved - s.spacing) / std::max(1.0, s.spacing));
  }

  FitSummary fit;
  fit.law = law.spec().describe();

  const Support sup = law.support();
  fit.support_violations = static_cast<std::uint64_t>(std::count_if(
      spacings.begin(), spacings.end(), [&](double s) { return s < sup.lo || s > sup.hi; }));

  const Moments m = moments(spacings);
  fit.empirical_mean = m.mean;
  fit.analytic_mean = law.mean_spacing();
  fit.mean_tolerance = kMeanStandardErrors * std::sqrt(m.variance / static_cast<double>(n));

  Histogram hist = default_histogram(law);
  hist.add(spacings);
  const ChiSquareResult chi = chi_square(hist, law);
  fit.chi_square = chi.statistic;
  fit.dof = chi.dof;
  fit.chi_square_threshold = chi_square_threshold(chi.dof);

  std::sort(spacings.begin(), spacings.end());
  fit.ks_d = ks_statistic(spacings, [&law](double s) { return law.cdf(s); });
  fit.ks_sqrt_n = fit.ks_d * std::sqrt(static_cast<double>(n));
  fit.ks_threshold = kKsCritical;
  fit.max_eigen_spacing_error = eigen_error;

  VerificationReport r;
  r.subject = "ensemble";
  r.ensemble = std::string(kind_name(spec.kind));
  r.params = spec.params;
  r.n = n;
  r.seed = seed;
  r.fit = fit;
  r.add_check("ks_sqrt_n", fit.ks_sqrt_n, "<", fit.ks_threshold);
  r.add_check("chi_square", fit.chi_square, "<=", fit.chi_square_threshold);
  r.add_check("mean_abs_error", std::abs(fit.empirical_mean - fit.analytic_mean), "<=",
              fit.mean_tolerance);
  r.add_check("support_violations", static_cast<double>(fit.support_violations), "==", 0.0);
  r.add_check("eigen_spacing_error", eigen_error, "<=", kEigenConsistency);
  return r;
}

VerificationReport invariance_suite(std::size_t trials, std::uint64_t seed) {
  if (trials < kMinInvarianceTrials) {
    throw InvalidArgument("invariance_suite: trials must be at least 100");
  }
  Rng rng(seed);
  double u_c1 = 0.0, u_c2 = 0.0, u_c3 = 0.0, u_c4 = 0.0;
  double so2_y = 0.0, so2_y_abs = 0.0;
  double gl_c1 = 0.0, gl_c2 = 0.0;

  for (std::size_t t = 0; t < trials; ++t) {
    {
      const Matrix2C m = random_complex_matrix(rng);
      const Matrix2C u = random_group_element(GroupKind::Unitary2, rng);
      const double scale = m.frobenius_norm();
      const auto before = invariants(pauli_decompose(m));
      const auto after = invariants(pauli_decompose(transform(m, u, TransformMode::Conjugation)));
      u_c1 = std::max(u_c1, drift(before.c1, after.c1, scale));
      u_c2 = std::max(u_c2, drift(before.c2, after.c2, scale * scale));
      u_c3 = std::max(u_c3, drift(before.c3, after.c3, scale * scale));
      u_c4 = std::max(u_c4, drift(before.c4, after.c4, scale * scale));
    }
    {
      const HermitianParams p{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
      const Matrix2C h = compose_hermitian(p);
      const Matrix2C o = random_group_element(GroupKind::SpecialOrthogonal2Embedded, rng);
      const auto after = invariants(pauli_decompose(transform(h, o, TransformMode::Conjugation)));
      so2_y = std::max(so2_y, drift(p.y, after.c3_hermitian, h.frobenius_norm()));
      so2_y_abs = std::max(so2_y_abs, std::abs(after.c3_hermitian - p.y));
    }
    {
      const Matrix2C m = random_complex_matrix(rng);
      const Matrix2C g = random_group_element(GroupKind::GL2C, rng);
      const double scale = m.frobenius_norm();
      const auto before = invariants(pauli_decompose(m));
      const auto after = invariants(pauli_decompose(transform(m, g, TransformMode::Similarity)));
      gl_c1 = std::max(gl_c1, drift(before.c1, after.c1, scale));
      gl_c2 = std::max(gl_c2, drift(before.c2, after.c2, scale * scale));
    }
  }

  VerificationReport r;
  r.subject = "invariance";
  r.n = trials;
  r.seed = seed;
  r.add_check("unitary_c1_drift", u_c1, "<", kInvarianceTolerance);
  r.add_check("unitary_c2_drift", u_c2, "<", kInvarianceTolerance);
  r.add_check("unitary_c3_drift", u_c3, "<", kInvarianceTolerance);
  r.add_check("unitary_c4_drift", u_c4, "<", kInvarianceTolerance);
  r.add_check("so2_y_drift", so2_y, "<", kInvarianceTolerance);
  r.add_check("so2_y_abs_drift", so2_y_abs, "<", 1e-12);
  r.add_check("gl2c_c1_drift", gl_c1, "<", kInvarianceTolerance);
  r.add_check("gl2c_c2_drift", gl_c2, "<", kInvarianceTolerance);
  return r;
}

std::vector<ProbeRow> divergence_probe(const std::vector<double>& cutoffs) {
  if (cutoffs.size() < 2) {
    throw InvalidArgument("divergence_probe: need at least two cutoffs");
  }
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > 0.0) || !std::isfinite(cutoffs[i]) ||
        (i > 0 && !(cutoffs[i] > cutoffs[i - 1]))) {
      throw InvalidArgument("divergence_probe: cutoffs must be positive and strictly increasing");
    }
  }

  // e: int e^{-pi e^2} = 1; theta: int sin = 2; phi, eta: (2 pi)^2.
  const double angular = 8.0 * pi * pi;
  // Inner nu-integral in t = sqrt(gamma^2 - nu^2), where nu dnu = -t dt turns
  // nu sqrt(gamma^2 - nu^2) e^{-pi (gamma^2 - nu^2)} dnu into t^2 e^{-pi t^2} dt on [0, gamma].
  auto inner = [](double gamma) {
    return integrate([](double t) { return t * t * std::exp(-pi * t * t); }, 0.0, gamma, 1e-12)
        .value;
  };
  auto outer = [&](double a, double b) {
    return angular *
           integrate([&](double gamma) { return gamma * inner(gamma); }, a, b, 1e-12).value;
  };
  auto nu_zero = [](double a, double b) {
    return 4.0 * pi *
           integrate([](double g) { return g * g * std::exp(-pi * g * g); }, a, b, 1e-13).value;
  };

  std::vector<ProbeRow> rows;
  double prev = 0.0;
  double total = 0.0;
  double total_nu_zero = 0.0;
  for (double cutoff : cutoffs) {
    total += outer(prev, cutoff);
    total_nu_zero += nu_zero(prev, cutoff);
    rows.push_back({cutoff, total, total_nu_zero});
    prev = cutoff;
  }
  return rows;
}

VerificationReport evaluate_probe(const std::vector<ProbeRow>& rows) {
  VerificationReport r;
  r.subject = "divergence_probe";
  r.n = rows.size();
  if (rows.size() < 2) {
    throw InvalidArgument("evaluate_probe: need at least two rows");
  }

  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    min_step = std::min(min_step, rows[i].integral - rows[i - 1].integral);
  }
  r.add_check("min_increment", min_step, ">", 0.0);

  for (const auto& lo : rows) {
    for (const auto& hi : rows) {
      if (hi.cutoff == 2.0 * lo.cutoff) {
        r.add_check("growth_ratio_" + std::to_string(static_cast<int>(lo.cutoff)),
                    hi.integral / lo.integral, ">", kProbeGrowth);
      }
    }
  }

  const auto& last = rows.back();
  r.add_check("nu_zero_limit_error", std::abs(last.nu_zero_integral - 1.0), "<",
              kNuZeroLimitTolerance);
  return r;
}

std::string to_json(const VerificationReport& report, int indent) {
  json j;
  j["subject"] = report.subject;
  j["ensemble"] = report.ensemble;
  j["params"] = json::object();
  for (const auto& [k, v] : report.params) {
    j["params"][k] = v;
  }
  j["n"] = report.n;
  j["seed"] = report.seed;
  if (report.fit) {
    const FitSummary& f = *report.fit;
    json fj;
    fj["law"] = f.law;
    fj["ks_d"] = f.ks_d;
    fj["ks_sqrt_n"] = f.ks_sqrt_n;
    fj["ks_threshold"] = f.ks_threshold;
    fj["chi_square"] = f.chi_square;
    fj["dof"] = f.dof;
    fj["chi_square_threshold"] = f.chi_square_threshold;
    fj["empirical_mean"] = f.empirical_mean;
    fj["analytic_mean"] = f.analytic_mean;
    fj["mean_tolerance"] = f.mean_tolerance;
    fj["support_violations"] = f.support_violations;
    fj["max_eigen_spacing_error"] = f.max_eigen_spacing_error;
    j["fit"] = fj;
  } else {
    j["fit"] = nullptr;
  }
  j["checks"] = json::array();
  for (const auto& c : report.checks) {
    json cj;
    cj["name"] = c.name;
    cj["value"] = c.value;
    cj["relation"] = c.relation;
    cj["threshold"] = c.threshold;
    cj["pass"] = c.pass;
    j["checks"].push_back(cj);
  }
  j["pass"] = report.pass;
  return j.dump(indent) + "\n";
}

VerificationReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("report_from_json: ") + e.what());
  }
  try {
    VerificationReport r;
    r.subject = j.at("subject").get<std::string>();
    r.ensemble = j.at("ensemble").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) {
      r.params[k] = v.get<double>();
    }
    r.n = j.at("n").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("fit").is_null()) {
      const auto& fj = j.at("fit");
      FitSummary f;
      f.law = fj.at("law").get<std::string>();
      f.ks_d = fj.at("ks_d").get<double>();
      f.ks_sqrt_n = fj.at("ks_sqrt_n").get<double>();
      f.ks_threshold = fj.at("ks_threshold").get<double>();
      f.chi_square = fj.at("chi_square").get<double>();
      f.dof = fj.at("dof").get<int>();
      f.chi_square_threshold = fj.at("chi_square_threshold").get<double>();
      f.empirical_mean = fj.at("empirical_mean").get<double>();
      f.analytic_mean = fj.at("analytic_mean").get<double>();
      f.mean_tolerance = fj.at("mean_tolerance").get<double>();
      f.support_violations = fj.at("support_violations").get<std::uint64_t>();
      f.max_eigen_spacing_error = fj.at("max_eigen_spacing_error").get<double>();
      r.fit = f;
    }
    for (const auto& cj : j.at("checks")) {
      r.checks.push_back({cj.at("name").get<std::string>(), cj.at("value").get<double>(),
                          cj.at("relation").get<std::string>(), cj.at("threshold").get<double>(),
                          cj.at("pass").get<bool>()});
    }
    r.pass = j.at("pass").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("report_from_json: ") + e.what());
  }
}

}  // namespace rmtlab
