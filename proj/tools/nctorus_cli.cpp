// Command-line interface: runs the verification suites and emits
// machine-diffable JSON/CSV reports. Every command is deterministic:
// identical configuration produces byte-identical output files.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage/parameter error.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nctorus/axioms.hpp"
#include "nctorus/classify.hpp"
#include "nctorus/report.hpp"
#include "nctorus/spectra.hpp"

namespace fs = std::filesystem;
using namespace nctorus;

namespace {

struct CommonConfig {
  int n_max = 6;
  std::string spin = "0,0";
  bool all_spins = false;
  double lambda_turns = generic_lambda_turns();
  double phi = 0.0;
  double psi = 0.0;
  double theta = 0.0;
  std::string tau1 = "1";
  std::string tau2 = "i";
  std::string tau0 = "0";
  std::string eps_const = "0";
  double tolerance = 1e-12;
  int mask_depth = -1;
  std::string out = ".";
  std::string format = "text";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Complex parse_complex(std::string s) {
  std::erase_if(s, [](char c) { return c == ' '; });
  if (s.empty()) throw UsageError("empty complex literal");
  auto to_double = [](const std::string& t) {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw UsageError("bad numeric literal: " + t);
    return v;
  };
  if (s.front() == '(') {
    const auto comma = s.find(',');
    if (comma == std::string::npos || s.back() != ')')
      throw UsageError("bad complex literal: " + s);
    return {to_double(s.substr(1, comma - 1)),
            to_double(s.substr(comma + 1, s.size() - comma - 2))};
  }
  const bool has_i = s.back() == 'i' || s.back() == 'I';
  if (!has_i) return {to_double(s), 0.0};
  s.pop_back();
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      const double re = to_double(s.substr(0, k));
      const std::string im = s.substr(k);
      if (im == "+") return {re, 1.0};
      if (im == "-") return {re, -1.0};
      return {re, to_double(im)};
    }
  }
  if (s.empty() || s == "+") return {0.0, 1.0};
  if (s == "-") return {0.0, -1.0};
  return {0.0, to_double(s)};
}

HalfOffset parse_offset(const std::string& t) {
  if (t == "0") return HalfOffset::zero;
  if (t == "0.5" || t == "1/2" || t == "half" || t == "h") return HalfOffset::half;
  throw UsageError("bad spin offset '" + t + "' (use 0 or 0.5)");
}

SpinStructure parse_spin(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("bad --spin '" + s + "' (use e.g. 0,0.5)");
  return {parse_offset(s.substr(0, comma)), parse_offset(s.substr(comma + 1))};
}

const char* file_label(HalfOffset e) { return e == HalfOffset::half ? "h" : "0"; }

std::string spin_file_tag(SpinStructure spin) {
  return std::string(file_label(spin.eps_mu)) + "-" + file_label(spin.eps_nu);
}

struct ResolvedConfig {
  std::vector<SpinStructure> spins;
  PhaseAngle lambda;
  RealStructureParams rparams;
  DiracParams dparams;
};

ResolvedConfig resolve(const CommonConfig& c) {
  ResolvedConfig r;
  if (c.all_spins)
    r.spins = all_spin_structures();
  else
    r.spins = {parse_spin(c.spin)};
  if (c.n_max < 1 || c.n_max > 25) throw UsageError("--n-max must be in [1, 25]");
  r.lambda = PhaseAngle(c.lambda_turns);
  r.rparams = {c.phi, c.psi, c.theta};
  r.dparams.tau1 = parse_complex(c.tau1);
  r.dparams.tau2 = parse_complex(c.tau2);
  r.dparams.tau0 = parse_complex(c.tau0);
  r.dparams.eps_const = parse_complex(c.eps_const);
  return r;
}

Json complex_json(Complex z) {
  Json a = Json::array();
  a.push(z.real());
  a.push(z.imag());
  return a;
}

Json config_echo(const std::string& command, const CommonConfig& c, const ResolvedConfig& r) {
  Json spins = Json::array();
  for (SpinStructure s : r.spins) spins.push(s.label());
  Json j = Json::object();
  j.set("command", command)
      .set("n_max", c.n_max)
      .set("spins", std::move(spins))
      .set("lambda_turns", c.lambda_turns)
      .set("phi", c.phi)
      .set("psi", c.psi)
      .set("theta", c.theta)
      .set("tau1", complex_json(r.dparams.tau1))
      .set("tau2", complex_json(r.dparams.tau2))
      .set("tau0", complex_json(r.dparams.tau0))
      .set("eps_const", complex_json(r.dparams.eps_const))
      .set("tolerance", c.tolerance)
      .set("mask_depth_override", c.mask_depth);
  return j;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

/// Runs fn(0..count-1) on a small pool capped by NCT_SPIN_THREADS.
/// The first exception thrown by any job is rethrown on the caller's thread.
void run_jobs(std::size_t count, const std::function<void(std::size_t)>& fn) {
  std::size_t cap = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("NCT_SPIN_THREADS"))
    cap = static_cast<std::size_t>(std::max(1L, std::atol(env)));
  cap = std::min(cap == 0 ? std::size_t{1} : cap, count);
  if (cap <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(cap);
  for (std::size_t t = 0; t < cap; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

bool parallel_case(const RealStructureParams& rp) {
  return dirac_case(rp) != DiracCase::linear;
}

// ---------------------------------------------------------------------------

int cmd_verify(const CommonConfig& cfg) {
  const ResolvedConfig rc = resolve(cfg);
  const bool single = rc.spins.size() == 1;

  std::vector<AxiomReport> reports(rc.spins.size());
  run_jobs(rc.spins.size(), [&](std::size_t i) {
    const SpectralTripleBundle b =
        make_bundle(Truncation(cfg.n_max, rc.spins[i]), rc.lambda, rc.rparams, rc.dparams);
    reports[i] = run_axiom_suite(b, cfg.tolerance, cfg.mask_depth);
  });

  Json checks = Json::array();
  bool all_pass = true;
  for (std::size_t i = 0; i < rc.spins.size(); ++i) {
    for (const CheckRecord& c : reports[i].checks) {
      Json row = Json::object();
      const std::string name =
          single ? c.name : "spin" + rc.spins[i].label() + "/" + c.name;
      row.set("name", name)
          .set("residual", c.residual)
          .set("tolerance", c.tolerance)
          .set("pass", c.pass)
          .set("mask_depth", c.mask_depth);
      checks.push(std::move(row));
      all_pass = all_pass && c.pass;
    }
  }

  Json notes = Json::array();
  if (parallel_case(rc.rparams))
    notes.push(
        "exponential class (phi or psi nonzero): algebraic checks alone do not select the "
        "admissible Dirac families; run `hochschild` and `resolvent` for the deciding "
        "diagnostics");

  Json report = Json::object();
  report.set("tool_version", kToolVersion)
      .set("config_echo", config_echo("verify", cfg, rc))
      .set("checks", std::move(checks))
      .set("all_pass", all_pass)
      .set("notes", std::move(notes));
  const std::string text = report.dump();
  write_file(fs::path(cfg.out) / "verify_report.json", text);

  if (cfg.format == "json") {
    std::cout << text;
  } else {
    for (std::size_t i = 0; i < rc.spins.size(); ++i) {
      std::cout << "spin " << rc.spins[i].label() << ":\n";
      for (const CheckRecord& c : reports[i].checks)
        std::cout << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  residual "
                  << format_g17(c.residual) << "  (depth " << c.mask_depth << ")\n";
    }
    std::cout << (all_pass ? "VERIFY PASSED" : "VERIFY FAILED") << "\n";
  }
  return all_pass ? 0 : 1;
}

int cmd_spectrum(const CommonConfig& cfg, bool with_hochschild) {
  const ResolvedConfig rc = resolve(cfg);

  if (with_hochschild) {
    const Complex denom = std::conj(rc.dparams.tau1) * rc.dparams.tau2 -
                          rc.dparams.tau1 * std::conj(rc.dparams.tau2);
    if (std::abs(denom) < 1e-12)
      throw UsageError("degenerate prefactor: tau1 tau2* = tau1* tau2 (pick e.g. --tau2 i)");
  }

  struct PerSpin {
    SpectrumTable table;
    std::string csv;
  };
  std::vector<PerSpin> results(rc.spins.size());
  run_jobs(rc.spins.size(), [&](std::size_t i) {
    const SpectralTripleBundle b =
        make_bundle(Truncation(cfg.n_max, rc.spins[i]), rc.lambda, rc.rparams, rc.dparams);
    results[i].table = dirac_spectrum_blocks(b);
    results[i].csv = spectrum_to_csv(results[i].table);
  });

  Json tables = Json::array();
  bool all_pass = true;
  for (std::size_t i = 0; i < rc.spins.size(); ++i) {
    const std::string file = "spectrum_spin-" + spin_file_tag(rc.spins[i]) + ".csv";
    write_file(fs::path(cfg.out) / file, results[i].csv);
    Json first = Json::array();
    for (double a : distinct_abs_eigenvalues(results[i].table, 10)) first.push(a);
    Json row = Json::object();
    row.set("spin", rc.spins[i].label())
        .set("n_max", cfg.n_max)
        .set("kernel_dim", kernel_dimension(results[i].table))
        .set("first_distinct_abs_eigenvalues", std::move(first))
        .set("csv", file);
    tables.push(std::move(row));
  }

  Json checks = Json::array();
  if (with_hochschild) {
    const SpectralTripleBundle b =
        make_bundle(Truncation(cfg.n_max, rc.spins.front()), rc.lambda, rc.rparams, rc.dparams);
    const double tol = 1e-10;
    double residual = 0.0;
    std::string name;
    if (dirac_case(rc.rparams) == DiracCase::linear) {
      const HochschildCycle c =
          canonical_volume_cycle(rc.lambda, rc.dparams.tau1, rc.dparams.tau2);
      residual =
          interior_residual(hochschild_image(b, c) - b.gamma, interior_mask(b.map, 4));
      name = "hochschild_volume_cycle";
    } else {
      residual = interior_residual(hochschild_image(b, spurious_test_cycle(rc.lambda)),
                                   interior_mask(b.map, 4));
      name = "hochschild_c0_vanishes";
    }
    Json row = Json::object();
    row.set("name", name)
        .set("residual", residual)
        .set("tolerance", tol)
        .set("pass", residual <= tol)
        .set("mask_depth", 4);
    checks.push(std::move(row));
    all_pass = all_pass && residual <= tol;
  }

  Json report = Json::object();
  report.set("tool_version", kToolVersion)
      .set("config_echo", config_echo("spectrum", cfg, rc))
      .set("checks", std::move(checks))
      .set("tables", std::move(tables));
  const std::string text = report.dump();
  write_file(fs::path(cfg.out) / "spectrum_summary.json", text);

  if (cfg.format == "json") {
    std::cout << text;
  } else if (cfg.format == "csv") {
    for (const PerSpin& r : results) std::cout << r.csv;
  } else {
    for (std::size_t i = 0; i < rc.spins.size(); ++i)
      std::cout << "spin " << rc.spins[i].label() << ": dim "
                << results[i].table.total_multiplicity() << ", kernel "
                << kernel_dimension(results[i].table) << ", spectral radius "
                << format_g17(std::abs(results[i].table.eigenvalues.back())) << "\n";
  }
  return all_pass ? 0 : 1;
}

int cmd_classify(const CommonConfig& cfg, int shift_window, int sample_halfwidth,
                 bool with_counterexample) {
  const ResolvedConfig rc = resolve(cfg);
  const auto& spins = all_spin_structures();

  std::vector<IntertwinerVerdict> flat(spins.size() * spins.size());
  run_jobs(flat.size(), [&](std::size_t idx) {
    IntertwinerProblem pr;
    pr.source = {spins[idx / spins.size()], RealStructureParams{}};
    pr.target = {spins[idx % spins.size()], RealStructureParams{}};
    pr.lambda = rc.lambda;
    pr.shift_window = shift_window;
    pr.sample_halfwidth = sample_halfwidth;
    flat[idx] = intertwiner_verdict(pr);
  });

  Json matrix = Json::array();
  Json pairs = Json::array();
  for (std::size_t i = 0; i < spins.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < spins.size(); ++j) {
      const IntertwinerVerdict& v = flat[i * spins.size() + j];
      row.push(v.equivalent);
      Json p = Json::object();
      p.set("source", spins[i].label()).set("target", spins[j].label());
      p.set("equivalent", v.equivalent);
      Json adm = Json::array();
      for (const ShiftCandidate& c : v.shifts.admissible) {
        Json a = Json::object();
        a.set("k", c.k).set("l", c.l).set("deviation", c.deviation);
        adm.push(std::move(a));
      }
      p.set("admissible_shifts", std::move(adm));
      if (v.equivalent) {
        p.set("w_plus", complex_json(v.w_plus));
        p.set("w_minus", complex_json(v.w_minus));
        p.set("certificate_residual", v.certificate_residual);
      }
      if (!v.note.empty()) p.set("note", v.note);
      pairs.push(std::move(p));
    }
    matrix.push(std::move(row));
  }

  Json warnings = Json::array();
  if (rational_angle(rc.lambda)) warnings.push("rational angle: lambda not generic");

  Json report = Json::object();
  report.set("tool_version", kToolVersion)
      .set("config_echo", config_echo("classify", cfg, rc))
      .set("verdict_matrix", std::move(matrix))
      .set("pairs", std::move(pairs));

  if (with_counterexample) {
    const BasisIndexMap map(Truncation(cfg.n_max, SpinStructure{}));
    const CounterexampleReport ce = counterexample_unconstrained_w(map, rc.lambda);
    Json c = Json::object();
    c.set("intertwine_residual", ce.intertwine_residual)
        .set("gamma_commute_defect", ce.gamma_commute_defect)
        .set("algebra_commutator_residual", std::max(ce.alg_residual_u, ce.alg_residual_v))
        .set("gamma_anticommute_residual", ce.gamma_anticommute_residual)
        .set("unitarity_residual", ce.unitarity_residual);
    report.set("counterexample", std::move(c));
    std::cout << "counterexample W: intertwine residual "
              << format_g17(ce.intertwine_residual) << ", gamma-commutation defect "
              << format_g17(ce.gamma_commute_defect) << ", algebra commutator residual "
              << format_g17(std::max(ce.alg_residual_u, ce.alg_residual_v)) << "\n";
  }
  report.set("warnings", std::move(warnings));

  const std::string text = report.dump();
  write_file(fs::path(cfg.out) / "classify_report.json", text);

  if (cfg.format == "json") {
    std::cout << text;
  } else {
    if (rational_angle(rc.lambda))
      std::cout << "warning: rational angle: lambda not generic\n";
    std::cout << "verdict matrix (rows: source, cols: target):\n";
    for (std::size_t i = 0; i < spins.size(); ++i) {
      std::cout << "  " << spins[i].label() << " :";
      for (std::size_t j = 0; j < spins.size(); ++j)
        std::cout << ' ' << (flat[i * spins.size() + j].equivalent ? 'Y' : '.');
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_hochschild(const CommonConfig& cfg, int depth, double tol) {
  const ResolvedConfig rc = resolve(cfg);
  if (depth > cfg.n_max) throw UsageError("--depth must not exceed --n-max");
  const SpectralTripleBundle b =
      make_bundle(Truncation(cfg.n_max, rc.spins.front()), rc.lambda, rc.rparams, rc.dparams);

  double residual = 0.0;
  std::string check_name, verdict;
  if (dirac_case(rc.rparams) == DiracCase::linear) {
    const HochschildCycle c =
        canonical_volume_cycle(rc.lambda, rc.dparams.tau1, rc.dparams.tau2);
    residual = interior_residual(hochschild_image(b, c) - b.gamma, interior_mask(b.map, depth));
    check_name = "volume_cycle_vs_grading";
    verdict = residual <= tol ? "SATISFIED" : "NOT_REPRODUCED";
  } else {
    residual =
        interior_residual(hochschild_image(b, spurious_test_cycle(rc.lambda)),
                          interior_mask(b.map, depth));
    check_name = "nontrivial_cycle_image_vanishes";
    verdict = residual <= 1e-12 ? "CANNOT_BE_SATISFIED" : "INCONCLUSIVE";
  }
  const bool pass = (verdict == "SATISFIED" || verdict == "CANNOT_BE_SATISFIED");

  Json checks = Json::array();
  Json row = Json::object();
  row.set("name", check_name)
      .set("residual", residual)
      .set("tolerance", dirac_case(rc.rparams) == DiracCase::linear ? tol : 1e-12)
      .set("pass", pass)
      .set("mask_depth", depth);
  checks.push(std::move(row));

  Json report = Json::object();
  report.set("tool_version", kToolVersion)
      .set("config_echo", config_echo("hochschild", cfg, rc))
      .set("checks", std::move(checks))
      .set("verdict", verdict);
  const std::string text = report.dump();
  write_file(fs::path(cfg.out) / "hochschild_report.json", text);

  if (cfg.format == "json")
    std::cout << text;
  else
    std::cout << check_name << ": residual " << format_g17(residual) << ", verdict " << verdict
              << "\n";
  return pass ? 0 : 1;
}

int cmd_resolvent(const CommonConfig& cfg, std::vector<double> radii, std::vector<int> n_maxes) {
  const ResolvedConfig rc = resolve(cfg);
  if (radii.empty()) radii = {0.5, 1.5, 2.5, 3.5};
  if (n_maxes.empty()) n_maxes = {4, 6, 8};
  const ResolventTrend tr =
      resolvent_trend(rc.lambda, rc.rparams, rc.dparams, rc.spins.front(), radii, n_maxes);

  Json jradii = Json::array();
  for (double r : radii) jradii.push(r);
  Json rows = Json::array();
  for (std::size_t i = 0; i < n_maxes.size(); ++i) {
    Json counts = Json::array();
    for (long c : tr.per_truncation[i].counts) counts.push(c);
    Json row = Json::object();
    row.set("n_max", n_maxes[i])
        .set("counts", std::move(counts))
        .set("max_abs_eigenvalue", tr.per_truncation[i].max_abs);
    rows.push(std::move(row));
  }

  Json report = Json::object();
  report.set("tool_version", kToolVersion)
      .set("config_echo", config_echo("resolvent", cfg, rc))
      .set("radii", std::move(jradii))
      .set("tables", std::move(rows))
      .set("verdict", to_string(tr.verdict));
  const std::string text = report.dump();
  write_file(fs::path(cfg.out) / "resolvent_report.json", text);

  if (cfg.format == "json") {
    std::cout << text;
  } else {
    std::cout << "N(R) per truncation:\n";
    for (std::size_t i = 0; i < n_maxes.size(); ++i) {
      std::cout << "  n_max " << n_maxes[i] << ":";
      for (long c : tr.per_truncation[i].counts) std::cout << ' ' << c;
      std::cout << "  (max |e| " << format_g17(tr.per_truncation[i].max_abs) << ")\n";
    }
    std::cout << "verdict: " << to_string(tr.verdict) << "\n";
  }
  return 0;
}

void add_common_options(CLI::App* cmd, CommonConfig& cfg) {
  cmd->add_option("--n-max", cfg.n_max, "Lattice half-width (1..25)")->capture_default_str();
  cmd->add_option("--spin", cfg.spin, "Spin structure offsets, e.g. 0,0 or 0,0.5")
      ->capture_default_str();
  cmd->add_flag("--all-spins", cfg.all_spins, "Run all four spin structures");
  cmd->add_option("--lambda-turns,--lambda", cfg.lambda_turns,
                  "Deformation angle in turns (angle / 2 pi)")
      ->capture_default_str();
  cmd->add_option("--phi", cfg.phi, "Reality-structure phase phi (radians)")
      ->capture_default_str();
  cmd->add_option("--psi", cfg.psi, "Reality-structure phase psi (radians)")
      ->capture_default_str();
  cmd->add_option("--theta", cfg.theta, "Global phase theta (radians)")->capture_default_str();
  cmd->add_option("--tau1", cfg.tau1, "Dirac coefficient tau1 (complex, e.g. 1, i, 1+2i)")
      ->capture_default_str();
  cmd->add_option("--tau2", cfg.tau2, "Dirac coefficient tau2")->capture_default_str();
  cmd->add_option("--tau0", cfg.tau0, "Dirac coefficient tau0 (exponential cases)")
      ->capture_default_str();
  cmd->add_option("--eps-const", cfg.eps_const, "Dirac constant eps")->capture_default_str();
  cmd->add_option("--tolerance", cfg.tolerance, "Residual tolerance")->capture_default_str();
  cmd->add_option("--mask-depth", cfg.mask_depth,
                  "Interior mask depth override for the shift-expression checks (-1 = per-check)")
      ->capture_default_str();
  cmd->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  cmd->add_option("--format", cfg.format, "Stdout rendering: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant spectral triples on the noncommutative torus: "
               "verification, spectra, and classification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file (sections per command)");

  CommonConfig verify_cfg, spectrum_cfg, classify_cfg, hochschild_cfg, resolvent_cfg;
  bool spectrum_hochschild = false;
  bool classify_counterexample = false;
  int classify_shift_window = 3;
  int classify_sample_halfwidth = 3;
  int hochschild_depth = 4;
  double hochschild_tol = 1e-10;
  std::vector<double> resolvent_radii;
  std::vector<int> resolvent_nmaxes;

  CLI::App* verify = app.add_subcommand("verify", "Run the axiom residual suite");
  add_common_options(verify, verify_cfg);

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "Dirac spectra as CSV tables plus a JSON summary");
  add_common_options(spectrum, spectrum_cfg);
  spectrum->add_flag("--hochschild", spectrum_hochschild,
                     "Also evaluate the Hochschild cycle check");

  CLI::App* classify =
      app.add_subcommand("classify", "Pairwise (in)equivalence of the four reality structures");
  add_common_options(classify, classify_cfg);
  classify->add_option("--shift-window", classify_shift_window, "Coefficient scan half-width K")
      ->capture_default_str();
  classify->add_option("--sample-halfwidth", classify_sample_halfwidth,
                       "Constraint sample half-width")
      ->capture_default_str();
  classify->add_flag("--counterexample", classify_counterexample,
                     "Also run the unconstrained intertwiner counterexample");

  CLI::App* hochschild = app.add_subcommand("hochschild", "Hochschild cycle condition report");
  add_common_options(hochschild, hochschild_cfg);
  hochschild->add_option("--depth", hochschild_depth, "Interior mask depth")
      ->capture_default_str();
  hochschild->add_option("--cycle-tolerance", hochschild_tol,
                         "Tolerance for the volume-cycle residual")
      ->capture_default_str();

  CLI::App* resolvent =
      app.add_subcommand("resolvent", "Eigenvalue-growth trend across truncations");
  add_common_options(resolvent, resolvent_cfg);
  resolvent->add_option("--radii", resolvent_radii, "Counting radii (default 0.5 1.5 2.5 3.5)");
  resolvent->add_option("--n-maxes", resolvent_nmaxes,
                        "Truncations for the trend (default 4 6 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(verify_cfg);
    if (spectrum->parsed()) return cmd_spectrum(spectrum_cfg, spectrum_hochschild);
    if (classify->parsed())
      return cmd_classify(classify_cfg, classify_shift_window, classify_sample_halfwidth,
                          classify_counterexample);
    if (hochschild->parsed())
      return cmd_hochschild(hochschild_cfg, hochschild_depth, hochschild_tol);
    if (resolvent->parsed())
      return cmd_resolvent(resolvent_cfg, resolvent_radii, resolvent_nmaxes);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
