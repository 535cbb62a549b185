#include "cli.hpp"

#include <CLI11.hpp>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/spacing_law.hpp"
#include "rmtlab/verify.hpp"

namespace rmtlab::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 1;
constexpr const char* kSeedEnv = "RMT_LAB_SEED";

struct Options {
  std::string ensemble;
  std::vector<std::string> params;
  std::string against;
  std::vector<std::string> against_params;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::string grid;
  std::string out;
  std::string format;
  unsigned workers = 1;
  std::size_t trials = 1000;
  std::vector<double> cutoffs{2.0, 4.0, 8.0, 16.0};
};

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

EnsembleSpec build_spec(const std::string& name, const std::vector<std::string>& params) {
  EnsembleSpec spec;
  spec.kind = parse_kind(name);
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidArgument("parameter '" + p + "' is not of the form name=value");
    }
    const std::string key = p.substr(0, eq);
    const std::string text = p.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw InvalidArgument("parameter '" + key + "' has non-numeric value '" + text + "'");
    }
    spec.params[key] = value;
  }
  spec.validate();
  return spec;
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) {
    return *o.seed;
  }
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    const std::string text(env);
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw InvalidArgument(std::string(kSeedEnv) + " is not an unsigned integer");
    }
    return v;
  }
  return kDefaultSeed;
}

std::vector<double> parse_grid(const std::string& grid) {
  double start = 0.0;
  double stop = 0.0;
  long points = 0;
  char tail = 0;
  if (std::sscanf(grid.c_str(), "%lf:%lf:%ld%c", &start, &stop, &points, &tail) != 3 ||
      points < 1 || !std::isfinite(start) || !std::isfinite(stop)) {
    throw InvalidArgument("grid '" + grid + "' is not start:stop:points with points >= 1");
  }
  if (start < 0.0 || stop < start) {
    throw InvalidArgument("grid must satisfy 0 <= start <= stop");
  }
  std::vector<double> s(static_cast<std::size_t>(points));
  for (long i = 0; i < points; ++i) {
    s[static_cast<std::size_t>(i)] =
        points == 1 ? start : start + (stop - start) * static_cast<double>(i) / (points - 1);
  }
  return s;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw InvalidArgument("cannot open output file '" + o.out + "'");
  }
  f << text;
  f.flush();
  if (!f) {
    throw InvalidArgument("failed writing output file '" + o.out + "'");
  }
}

std::string sample_csv(const EnsembleSpec& spec, const std::vector<MatrixSample>& samples) {
  std::ostringstream os;
  if (is_pt_kind(spec.kind)) {
    os << "e,gamma,nu,theta,phi,eta,lambda1_re,lambda1_im,lambda2_re,lambda2_im,s\n";
  } else {
    os << "e,x,y,z,lambda1,lambda2,s\n";
  }
  for (const auto& m : samples) {
    const Spectrum sp = eigenpair(m.matrix);
    if (const auto* p = std::get_if<PTParams>(&m.params)) {
      os << fmt_real(p->e) << ',' << fmt_real(p->gamma) << ',' << fmt_real(p->nu) << ','
         << fmt_real(p->theta) << ',' << fmt_real(p->phi) << ',' << fmt_real(p->eta) << ','
         << fmt_real(sp.lambda1.real()) << ',' << fmt_real(sp.lambda1.imag()) << ','
         << fmt_real(sp.lambda2.real()) << ',' << fmt_real(sp.lambda2.imag()) << ','
         << fmt_real(m.spacing) << '\n';
    } else {
      const auto& h = std::get<HermitianParams>(m.params);
      os << fmt_real(h.e) << ',' << fmt_real(h.x) << ',' << fmt_real(h.y) << ','
         << fmt_real(h.z) << ',' << fmt_real(sp.lambda1.real()) << ','
         << fmt_real(sp.lambda2.real()) << ',' << fmt_real(m.spacing) << '\n';
    }
  }
  return os.str();
}

std::string sample_json(const EnsembleSpec& spec, std::uint64_t seed,
                        const std::vector<MatrixSample>& samples) {
  json j;
  j["ensemble"] = std::string(kind_name(spec.kind));
  j["params"] = json::object();
  for (const auto& [k, v] : spec.params) {
    j["params"][k] = v;
  }
  j["seed"] = seed;
  j["samples"] = json::array();
  for (const auto& m : samples) {
    const Spectrum sp = eigenpair(m.matrix);
    json row;
    if (const auto* p = std::get_if<PTParams>(&m.params)) {
      row["e"] = p->e;
      row["gamma"] = p->gamma;
      row["nu"] = p->nu;
      row["theta"] = p->theta;
      row["phi"] = p->phi;
      row["eta"] = p->eta;
    } else {
      const auto& h = std::get<HermitianParams>(m.params);
      row["e"] = h.e;
      row["x"] = h.x;
      row["y"] = h.y;
      row["z"] = h.z;
    }
    row["lambda1"] = {sp.lambda1.real(), sp.lambda1.imag()};
    row["lambda2"] = {sp.lambda2.real(), sp.lambda2.imag()};
    row["s"] = m.spacing;
    j["samples"].push_back(row);
  }
  return j.dump(2) + "\n";
}

std::string grid_output(const SpacingLaw& law, const std::vector<double>& grid, bool density,
                        const std::string& format) {
  const char* column = density ? "pdf" : "cdf";
  if (format == "json") {
    json j;
    j["law"] = law.spec().describe();
    j["rows"] = json::array();
    for (double s : grid) {
      const double v = density ? law.pdf(s) : law.cdf(s);
      json row;
      row["s"] = s;
      row[column] = std::isfinite(v) ? json(v) : json("inf");
      j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "s," << column << '\n';
  for (double s : grid) {
    os << fmt_real(s) << ',' << fmt_real(density ? law.pdf(s) : law.cdf(s)) << '\n';
  }
  return os.str();
}

std::string report_output(const VerificationReport& r, const std::string& format) {
  if (format == "csv") {
    std::ostringstream os;
    os << "check,value,relation,threshold,pass\n";
    for (const auto& c : r.checks) {
      os << c.name << ',' << fmt_real(c.value) << ',' << c.relation << ','
         << fmt_real(c.threshold) << ',' << (c.pass ? "true" : "false") << '\n';
    }
    os << "overall,,,," << (r.pass ? "true" : "false") << '\n';
    return os.str();
  }
  return to_json(r);
}

std::string catalog_output(const std::string& format) {
  if (format == "json") {
    json j = json::array();
    for (EnsembleKind k : all_ensemble_kinds()) {
      json e;
      e["name"] = std::string(kind_name(k));
      e["matrix"] = is_pt_kind(k) ? "pt_symmetric" : "hermitian";
      e["params"] = json::array();
      for (const auto& d : parameter_domains(k)) {
        e["params"].push_back({{"name", d.name}, {"domain", d.domain}});
      }
      e["law"] = std::string(law_description(k));
      e["golden_seed"] = golden_seed(k);
      j.push_back(e);
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (EnsembleKind k : all_ensemble_kinds()) {
    os << kind_name(k) << "  [" << (is_pt_kind(k) ? "pt_symmetric" : "hermitian") << "]";
    const auto domains = parameter_domains(k);
    if (!domains.empty()) {
      os << "  params:";
      for (const auto& d : domains) {
        os << ' ' << d.name << ' ' << d.domain << ';';
      }
    }
    os << "\n    " << law_description(k) << "\n    golden seed " << golden_seed(k) << '\n';
  }
  os << "aliases: gapped_goe -> planar, truncated_gue -> pt_gamma_slice\n";
  return os.str();
}

void require(bool condition, const std::string& message) {
  if (!condition) {
    throw InvalidArgument(message);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sample, evaluate and verify 2x2 random-matrix ensembles with reduced symmetry",
               "rmt_lab"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_ensemble = [&o](CLI::App* sub) {
    sub->add_option("--ensemble", o.ensemble, "Ensemble name (see catalog)")->required();
    sub->add_option("--param", o.params, "Ensemble parameter name=value (repeatable)")
        ->take_all()
        ->allow_extra_args(false);
  };
  auto add_output = [&o](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output path (default: stdout)");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* sample = app.add_subcommand("sample", "Draw matrices and write their spacings");
  add_ensemble(sample);
  sample->add_option("--n", o.n, "Number of draws")->required();
  sample->add_option("--seed", o.seed, "Seed (fallback: $RMT_LAB_SEED, then 1)");
  sample->add_option("--workers", o.workers, "Partitioned generator count")
      ->check(CLI::Range(1u, 256u));

  auto* pdf = app.add_subcommand("pdf", "Evaluate a spacing density on a grid");
  add_ensemble(pdf);
  pdf->add_option("--grid", o.grid, "start:stop:points")->required();

  auto* cdf = app.add_subcommand("cdf", "Evaluate a spacing CDF on a grid");
  add_ensemble(cdf);
  cdf->add_option("--grid", o.grid, "start:stop:points")->required();

  auto* verify = app.add_subcommand("verify", "Sample an ensemble and test it against its law");
  add_ensemble(verify);
  o.n = 0;
  verify->add_option("--n", o.n, "Number of draws (default 100000, min 1000)");
  verify->add_option("--seed", o.seed, "Seed (fallback: $RMT_LAB_SEED, then 1)");
  verify->add_option("--against", o.against, "Test against this ensemble's law instead");
  verify->add_option("--against-param", o.against_params, "Parameter of the --against law")
      ->take_all()
      ->allow_extra_args(false);

  auto* invariance = app.add_subcommand("invariance", "Run the group-invariance suite");
  invariance->add_option("--trials", o.trials, "Trials per group (min 100)");
  invariance->add_option("--seed", o.seed, "Seed (fallback: $RMT_LAB_SEED, then 1)");

  auto* probe = app.add_subcommand("probe", "Integrate the PT measure under growing cutoffs");
  probe->add_option("--cutoffs", o.cutoffs, "Increasing cutoffs")->delimiter(',');

  auto* catalog = app.add_subcommand("catalog", "List ensembles and parameter domains");

  for (auto* sub : {sample, pdf, cdf, verify, invariance, probe, catalog}) {
    add_output(sub);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nusage: rmt_lab {sample|pdf|cdf|verify|invariance|probe|catalog} "
        << "[options]; see --help\n";
    return kExitUsage;
  }

  if (o.format.empty()) {
    o.format = (verify->parsed() || invariance->parsed()) ? "json" : "csv";
  }

  try {
    if (sample->parsed()) {
      const EnsembleSpec spec = build_spec(o.ensemble, o.params);
      const std::uint64_t seed = resolve_seed(o);
      const auto samples = stream_parallel(spec, o.n, seed, o.workers);
      emit(o, o.format == "json" ? sample_json(spec, seed, samples) : sample_csv(spec, samples),
           out);
      return kExitOk;
    }
    if (pdf->parsed() || cdf->parsed()) {
      const SpacingLaw law(build_spec(o.ensemble, o.params));
      emit(o, grid_output(law, parse_grid(o.grid), pdf->parsed(), o.format), out);
      return kExitOk;
    }
    if (verify->parsed()) {
      const EnsembleSpec spec = build_spec(o.ensemble, o.params);
      const std::size_t n = o.n == 0 ? 100000 : o.n;
      require(n >= 1000, "--n must be at least 1000 for verify");
      const std::uint64_t seed = resolve_seed(o);
      const VerificationReport r =
          o.against.empty()
              ? verify_ensemble(spec, n, seed)
              : verify_against(spec, SpacingLaw(build_spec(o.against, o.against_params)), n, seed);
      emit(o, report_output(r, o.format), out);
      return r.pass ? kExitOk : kExitVerificationFailed;
    }
    if (invariance->parsed()) {
      require(o.trials >= 100, "--trials must be at least 100");
      const VerificationReport r = invariance_suite(o.trials, resolve_seed(o));
      emit(o, report_output(r, o.format), out);
      return r.pass ? kExitOk : kExitVerificationFailed;
    }
    if (probe->parsed()) {
      const auto rows = divergence_probe(o.cutoffs);
      const VerificationReport r = evaluate_probe(rows);
      if (o.format == "json") {
        json j = json::parse(to_json(r));
        j["rows"] = json::array();
        for (const auto& row : rows) {
          j["rows"].push_back({{"cutoff", row.cutoff},
                               {"integral", row.integral},
                               {"nu_zero_integral", row.nu_zero_integral}});
        }
        emit(o, j.dump(2) + "\n", out);
      } else {
        std::ostringstream os;
        os << "cutoff,integral,nu_zero_integral\n";
        for (const auto& row : rows) {
          os << fmt_real(row.cutoff) << ',' << fmt_real(row.integral) << ','
             << fmt_real(row.nu_zero_integral) << '\n';
        }
        emit(o, os.str(), out);
      }
      return r.pass ? kExitOk : kExitVerificationFailed;
    }
    if (catalog->parsed()) {
      emit(o, catalog_output(o.format), out);
      return kExitOk;
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DiagnosticsError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rmtlab::cli
