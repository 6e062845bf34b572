#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jetkernel/document.hpp"
#include "jetkernel/dsl.hpp"
#include "jetkernel/errors.hpp"
#include "jetkernel/report.hpp"
#include "jetkernel/suites.hpp"

namespace fs = std::filesystem;
using namespace jetkernel;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerificationFailed = 2;

struct Common {
  std::string out;
};

nlohmann::json operator_input(const MatrixOperator& op) { return to_json(OperatorDocument::from_operator(op)); }

/// Writes the report (or prints it when no --out was given) and returns the exit code.
int finish(const Common& common, const std::string& kind, const Outcome& outcome, bool is_verification) {
  ExperimentReport report{kind, outcome.inputs, outcome.results};
  report.results["passed"] = outcome.passed;
  report.results["summary"] = outcome.summary;
  if (common.out.empty()) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    write_report(common.out, report);
  }
  std::cerr << kind << ": " << outcome.summary << "\n";
  return is_verification && !outcome.passed ? kVerificationFailed : kOk;
}

fs::path sibling(const std::string& out, const std::string& suffix) {
  fs::path p(out);
  return p.parent_path() / (p.stem().string() + suffix);
}

int run_kernel(const Common& common, const std::string& op_path, std::size_t nmax, std::size_t plateau) {
  const MatrixOperator op = load_operator(op_path);
  const KernelReport rep = kernel_scan(op, nmax, plateau, true);
  Outcome outcome;
  outcome.inputs = {{"operator", operator_input(op)}, {"nmax", nmax}, {"plateau", plateau}};
  outcome.results = kernel_report_json(rep, true);
  if (rep.dims.back() == 0) {
    const auto cert = zero_kernel_certificate(op, nmax);
    if (cert) outcome.results["certificate"] = certificate_json(*cert);
  }
  outcome.summary = "dims " + nlohmann::json(rep.dims).dump() +
                    (rep.stabilized_at ? ", plateau from degree " + std::to_string(*rep.stabilized_at) : ", no plateau");
  if (common.out.empty()) {
    std::cout << dims_csv(rep);
    std::cerr << "kernel: " << outcome.summary << "\n";
    return kOk;
  }
  write_file_atomic(sibling(common.out, ".csv"), dims_csv(rep));
  return finish(common, "kernel", outcome, false);
}

int run_scan_family(const Common& common, const FamilyScanConfig& config) {
  const Outcome outcome = scan_family(config);
  if (!common.out.empty()) {
    // one dims table per sample
    for (const auto& item : outcome.results["items"]) {
      KernelReport rep;
      rep.dims = item["dims"].get<std::vector<std::size_t>>();
      if (!item["stabilized_at"].is_null()) rep.stabilized_at = item["stabilized_at"].get<std::size_t>();
      write_file_atomic(sibling(common.out, "_sample" + std::to_string(item["index"].get<std::size_t>()) + ".csv"),
                        dims_csv(rep));
    }
  }
  return finish(common, "scan-family", outcome, false);
}

std::vector<Scalar> parse_t_values(const FieldSpec& field, const std::vector<std::string>& texts) {
  if (texts.empty()) return default_t_values(field);
  std::vector<Scalar> ts;
  for (const auto& t : texts) ts.push_back(parse_scalar(field, t));
  return ts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial kernels of matrix differential operators: exact scans, family sampling, verification suites"};
  app.require_subcommand(1);
  Common common;

  std::string op_path, dir_path, suite, mode = "universal";
  std::size_t nmax = 12, plateau = 3, r = 2, nvars = 1, order = 2, coefdeg = 2, samples = 0, adeg = 1;
  std::uint64_t seed = 7;
  std::optional<std::uint64_t> jitter_seed;
  long bound = 10;
  std::vector<std::uint64_t> primes;
  std::vector<std::string> t_values;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", common.out, "report path (JSON; CSV tables next to it)"); };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", samples, "number of seeded samples");
    sub->add_option("--seed", seed, "sampling seed");
    sub->add_option("--bound", bound, "coefficients drawn from [-bound, bound]")->check(CLI::NonNegativeNumber);
  };
  auto add_shape = [&](CLI::App* sub) {
    sub->add_option("--r", r, "rank")->check(CLI::PositiveNumber);
    sub->add_option("--nvars", nvars, "number of variables")->check(CLI::PositiveNumber);
    sub->add_option("--order", order, "operator order bound N");
    sub->add_option("--coefdeg", coefdeg, "coefficient degree bound M");
  };

  auto* kernel = app.add_subcommand("kernel", "kernel dimensions of one operator by degree");
  kernel->add_option("--op", op_path, ".dop or .json operator file")->required()->check(CLI::ExistingFile);
  kernel->add_option("--nmax", nmax, "largest scanned degree");
  kernel->add_option("--plateau", plateau, "plateau length that marks stabilization")->check(CLI::PositiveNumber);
  add_out(kernel);

  auto* scan = app.add_subcommand("scan-family", "kernel scans over seeded members of an operator family");
  scan->add_option("--family,--mode", mode,
                   "universal | constant-coefficient | triangular-unit | zero-constant-term-triangular | "
                   "zero-constant-term-perturbation | subspace-l");
  add_shape(scan);
  add_sampling(scan);
  scan->add_option("--nmax", nmax, "largest scanned degree");
  scan->add_option("--plateau", plateau, "plateau length")->check(CLI::PositiveNumber);
  scan->add_option("--jitter", jitter_seed, "perturb every coefficient by a seeded value in {-1,0,1}");
  add_out(scan);

  auto* verify = app.add_subcommand("verify", "run a seeded verification suite");
  verify->add_option("--suite", suite,
                     "lem2411: triangular with nonzero polynomial diagonal has zero kernel\n"
                     "lem1121: d^[1] diagonal with constant-killing lower part has the constants as kernel\n"
                     "prop1124: perturbations of diag(d^[1]) without order-0 terms keep that kernel\n"
                     "subspaceL: no order-0 term and no x1-derivatives gives dims(n) >= r(n+1)\n"
                     "basechange: jet presentations over F_p agree with reductions from Q\n"
                     "jetcorr: operator action factors through the Taylor jet")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  std::optional<std::size_t> v_r, v_nvars, v_order, v_nmax;
  verify->add_option("--r", v_r, "largest rank")->check(CLI::PositiveNumber);
  verify->add_option("--nvars", v_nvars, "largest number of variables")->check(CLI::PositiveNumber);
  verify->add_option("--order", v_order, "order bound N");
  verify->add_option("--coefdeg", coefdeg, "coefficient degree bound M");
  verify->add_option("--nmax", v_nmax, "largest scanned degree");
  verify->add_option("--primes", primes, "primes (basechange)")->delimiter(',');
  add_sampling(verify);
  add_out(verify);

  auto* semicont = app.add_subcommand("semicont", "kernel dimension of D0 + t D1 over sampled t");
  semicont->add_option("--op", op_path, "base operator D0")->required()->check(CLI::ExistingFile);
  semicont->add_option("--dir", dir_path, "direction D1 (default: identity)")->check(CLI::ExistingFile);
  semicont->add_option("--t", t_values, "t values (default 0..9)")->delimiter(',');
  semicont->add_option("--nmax", nmax, "degree")->default_val(6);
  add_out(semicont);

  auto* modp = app.add_subcommand("modp", "kernel dimensions after reduction modulo primes");
  modp->add_option("--op", op_path, "operator over Q (default: seeded constant-kernel samples)")
      ->check(CLI::ExistingFile);
  modp->add_option("--primes", primes, "primes")->delimiter(',');
  modp->add_option("--nmax", nmax, "degree")->default_val(6);
  add_sampling(modp);
  add_out(modp);

  auto* conjugate = app.add_subcommand("conjugate", "conjugate by a seeded unitriangular matrix and transport kernels");
  conjugate->add_option("--op", op_path, "operator over Q")->required()->check(CLI::ExistingFile);
  conjugate->add_option("--seed", seed, "seed of the unitriangular matrix");
  conjugate->add_option("--adeg", adeg, "entry degree bound of the matrix");
  conjugate->add_option("--nmax", nmax, "largest degree")->default_val(6);
  add_out(conjugate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*kernel) return run_kernel(common, op_path, nmax, plateau);

    if (*scan) {
      FamilyScanConfig config;
      config.mode = parse_family_mode(mode);
      config.r = r;
      config.nvars = nvars;
      config.order = order;
      config.coef_degree = coefdeg;
      config.samples = samples == 0 ? 50 : samples;
      config.seed = seed;
      config.bound = bound;
      config.nmax = scan->count("--nmax") ? nmax : 25;
      config.plateau = plateau;
      config.jitter_seed = jitter_seed;
      return run_scan_family(common, config);
    }

    if (*verify) {
      SuiteConfig config;
      config.suite = suite;
      config.samples = samples;
      config.seed = seed;
      config.bound = bound;
      config.r = v_r.value_or(0);
      config.nvars = v_nvars.value_or(0);
      config.order = v_order;
      config.coef_degree = coefdeg;
      config.nmax = v_nmax;
      config.primes = primes;
      return finish(common, "verify", run_suite(config), true);
    }

    if (*semicont) {
      const MatrixOperator base = load_operator(op_path);
      const MatrixOperator direction = dir_path.empty()
                                           ? MatrixOperator::identity(base.field(), base.nvars(), base.rank())
                                           : load_operator(dir_path);
      return finish(common, "semicont",
                    semicontinuity_study(base, direction, parse_t_values(base.field(), t_values), nmax), false);
    }

    if (*modp) {
      if (primes.empty()) primes = {2, 3, 5, 7, 11, 13};
      std::vector<MatrixOperator> ops;
      if (op_path.empty()) {
        ops = modp_default_operators(samples == 0 ? 30 : samples, seed, bound);
      } else {
        ops.push_back(load_operator(op_path));
      }
      Outcome outcome = modp_study(ops, nmax, primes);
      if (op_path.empty()) {
        outcome.inputs["generator"] = {{"samples", ops.size()}, {"seed", seed}, {"bound", bound}};
      } else {
        outcome.inputs["operator"] = operator_input(ops.front());
      }
      return finish(common, "modp", outcome, true);
    }

    if (*conjugate) {
      const MatrixOperator op = load_operator(op_path);
      Outcome outcome = conjugation_study(op, seed, adeg, nmax);
      outcome.inputs["operator"] = operator_input(op);
      return finish(common, "conjugate", outcome, true);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
