// Command-line front end: classify state files, generate canonical state
// families, symmetrize product states and run the randomized verification
// suites. All reports are JSON by default (--text for a plain summary) and
// deterministic for a fixed seed up to the trailing timing_ms field.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "symsep/families.hpp"
#include "symsep/io.hpp"
#include "symsep/mixed.hpp"
#include "symsep/permanent.hpp"
#include "symsep/random.hpp"
#include "symsep/separability.hpp"
#include "symsep/symmetry.hpp"
#include "symsep/verify.hpp"

namespace {

using symsep::io::Json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void emit(const Json& report, bool text_mode, const std::string& text) {
  if (text_mode)
    std::cout << text;
  else
    std::cout << report.dump(2) << "\n";
}

Json input_json(const symsep::io::StateFile& file, const std::string& path) {
  const symsep::Dims dims = std::visit(
      [](const auto& v) {
        if constexpr (requires { v.dims; })
          return v.dims;
        else
          return v.dims();
      },
      file.value);
  Json j;
  j["path"] = path;
  j["kind"] = file.kind;
  j["parties"] = static_cast<long long>(dims.size());
  Json jd = Json::array();
  for (symsep::Index d : dims) jd.push_back(static_cast<long long>(d));
  j["dims"] = jd;
  return j;
}

// Permutation invariance, antisymmetry and translation eigenanalysis;
// null for states whose parties have unequal dimensions.
Json symmetry_json(const symsep::PureState<double>& psi) {
  if (!symsep::homogeneous(psi.dims)) return Json(nullptr);
  Json j;
  j["permutation_invariant"] = symsep::is_permutation_invariant(psi);
  j["antisymmetric"] = symsep::is_antisymmetric(psi);
  j["translation"] = psi.parties() >= 2
                         ? symsep::io::translation_to_json(symsep::translation_analyze(psi))
                         : Json(nullptr);
  return j;
}

std::string classification_text(const symsep::Classification<double>& c) {
  std::ostringstream oss;
  oss << "verdict: " << symsep::verdict_string(c.verdict) << "\n";
  if (c.witness) {
    oss << "witness cut:";
    for (int p : c.witness->side_a()) oss << " " << p + 1;
    oss << " |";
    for (int p : c.witness->side_b()) oss << " " << p + 1;
    oss << "\n";
  }
  for (const auto& ev : c.evidence) {
    oss << "  cut {";
    for (std::size_t i = 0; i < ev.cut.side_a().size(); ++i)
      oss << (i ? "," : "") << ev.cut.side_a()[i] + 1;
    oss << "}:{";
    for (std::size_t i = 0; i < ev.cut.side_b().size(); ++i)
      oss << (i ? "," : "") << ev.cut.side_b()[i] + 1;
    oss << "} schmidt_rank " << ev.rank << "\n";
  }
  return oss.str();
}

symsep::PureState<double> to_pure(const symsep::io::StateFile& file) {
  if (const auto* pure = std::get_if<symsep::PureState<double>>(&file.value)) return *pure;
  if (const auto* prod = std::get_if<symsep::ProductState<double>>(&file.value))
    return symsep::tensor_product(*prod);
  throw symsep::InvalidInput("this command needs a pure or product state file");
}

int run_classify(const std::string& path, double tol, bool text_mode) {
  const auto start = Clock::now();
  const symsep::io::StateFile file = symsep::io::load_state_file(path);
  const symsep::PureState<double> psi = to_pure(file);
  symsep::require_normalized(psi, "classify");

  const Json symmetry = symmetry_json(psi);
  const symsep::Classification<double> c = symsep::classify(psi, tol);

  Json report;
  report["schema_version"] = symsep::io::kSchemaVersion;
  report["command"] = "classify";
  report["input"] = input_json(file, path);
  report["tol"] = tol;
  report["symmetry"] = symmetry;
  report["classification"] = symsep::io::classification_to_json(c);
  report["timing_ms"] = elapsed_ms(start);

  std::ostringstream text;
  text << "parties: " << psi.parties() << "\n" << classification_text(c);
  emit(report, text_mode, text.str());
  return 0;
}

int run_symmetrize(const std::string& path, const std::string& out_path, double tol,
                   bool text_mode) {
  const auto start = Clock::now();
  const symsep::io::StateFile file = symsep::io::load_state_file(path);
  const auto* phi = std::get_if<symsep::ProductState<double>>(&file.value);
  if (phi == nullptr) throw symsep::InvalidInput("symmetrize needs a product state file");

  const symsep::SymmetrizedState<double> sym = symsep::symmetrize(*phi);
  const symsep::MarcusReport<double> marcus =
      symsep::marcus_bounds_check(symsep::gram_from_factors(*phi));
  const symsep::Result2Report<double> r2 = symsep::verify_result2(*phi, tol);

  // The emitted file holds the normalized direction of the symmetrized
  // state; norm_squared carries its original length.
  symsep::PureState<double> unit = sym.state;
  unit.amplitudes /= std::sqrt(sym.norm_squared);
  const symsep::io::StateFile out{"pure", unit};

  Json report;
  report["schema_version"] = symsep::io::kSchemaVersion;
  report["command"] = "symmetrize";
  report["input"] = input_json(file, path);
  report["norm_squared"] = sym.norm_squared;
  report["gram_permanent"] = marcus.perm;
  report["result2"] = Json{{"holds", r2.holds},
                           {"nonzero", r2.nonzero},
                           {"factors_identical", r2.factors_identical}};
  report["classification"] = symsep::io::classification_to_json(r2.classification);
  report["symmetrized_state"] = symsep::io::state_to_json(unit);
  report["output_path"] = out_path.empty() ? Json(nullptr) : Json(out_path);
  report["timing_ms"] = elapsed_ms(start);

  if (!out_path.empty()) symsep::io::save_state_file(out, out_path);

  std::ostringstream text;
  text << "norm_squared: " << sym.norm_squared << "\n"
       << "gram_permanent: " << marcus.perm << "\n"
       << classification_text(r2.classification);
  emit(report, text_mode, text.str());
  return 0;
}

int run_generate(const std::string& family, int n, symsep::Index d, int k, std::uint64_t seed,
                 const std::string& out_path) {
  if (n < 1) throw symsep::InvalidInput("party count must be >= 1");
  if (d < 1) throw symsep::InvalidInput("local dimension must be >= 1");
  const symsep::Index limit = symsep::guard::max_state_dim();
  symsep::Index total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > limit / d)  // overflow-safe total * d > limit
      throw symsep::GuardExceeded("requested state exceeds the size limit");
    total *= d;
  }

  symsep::Rng rng(seed);
  symsep::io::StateFile file;
  if (family == "ghz") {
    file = {"pure", symsep::ghz_state(n, d)};
  } else if (family == "w" || family == "dicke") {
    if (d != 2) throw symsep::InvalidInput("w and dicke are qubit families (local dimension 2)");
    file = {"pure", family == "w" ? symsep::w_state(n) : symsep::dicke_state(n, k)};
  } else if (family == "random-symmetric") {
    file = {"pure", rng.random_symmetric(n, d)};
  } else if (family == "random-product") {
    file = {"product", rng.random_product(n, d)};
  } else if (family == "slater") {
    file = {"pure",
            symsep::slater_state(symsep::ProductState<double>(rng.random_orthonormal(n, d)))};
  } else if (family == "translation-eigenstate") {
    file = {"pure", symsep::translation_eigenstate(n, d, k, rng)};
  } else {
    throw symsep::InvalidInput("unknown family: " + family);
  }

  if (out_path.empty())
    std::cout << symsep::io::serialize(file);
  else
    symsep::io::save_state_file(file, out_path);
  return 0;
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed, bool text_mode) {
  const auto start = Clock::now();
  const std::vector<symsep::verify::PropertyResult> results =
      symsep::verify::run_suite(suite, trials, seed);
  const bool ok = symsep::verify::all_pass(results);

  Json report;
  report["schema_version"] = symsep::io::kSchemaVersion;
  report["command"] = "verify";
  report["suite"] = suite;
  report["trials"] = trials;
  report["seed"] = seed;
  report["all_pass"] = ok;
  Json props = Json::array();
  std::ostringstream text;
  int passed = 0;
  for (const auto& r : results) {
    props.push_back(Json{{"suite", r.suite},
                         {"name", r.name},
                         {"trials", r.trials},
                         {"worst_margin", r.worst_margin},
                         {"pass", r.pass},
                         {"detail", r.detail}});
    passed += r.pass ? 1 : 0;
    text << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << "/" << r.name
         << " trials=" << r.trials << " worst_margin=" << r.worst_margin << " (" << r.detail
         << ")\n";
  }
  report["properties"] = props;
  report["timing_ms"] = elapsed_ms(start);
  text << "summary: " << passed << "/" << results.size() << " properties passed\n";

  emit(report, text_mode, text.str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric-state entanglement toolkit: classification, symmetrization and "
               "randomized verification of the symmetric/separable dichotomy"};
  app.require_subcommand(1);
  app.fallthrough();

  double tol = 1e-10;
  std::uint64_t seed = 0;
  app.add_option("--tol", tol, "relative Schmidt-rank tolerance")->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  auto* json_flag = app.add_flag("--json", "JSON output (default)");
  auto* text_flag = app.add_flag("--text", "plain-text output");
  json_flag->excludes(text_flag);
  text_flag->excludes(json_flag);

  auto* classify_cmd = app.add_subcommand("classify", "classify a state file across all cuts");
  std::string classify_path;
  classify_cmd->add_option("file", classify_path, "StateFile to classify")->required();

  auto* generate_cmd = app.add_subcommand("generate", "generate a canonical state family");
  std::string family, generate_out;
  int gen_n = 3, gen_k = 1;
  symsep::Index gen_d = 2;
  generate_cmd
      ->add_option("family", family,
                   "ghz | w | dicke | random-symmetric | random-product | slater | "
                   "translation-eigenstate")
      ->required();
  generate_cmd->add_option("-n,--parties", gen_n, "party count")->capture_default_str();
  generate_cmd->add_option("-d,--local-dim", gen_d, "local dimension")->capture_default_str();
  generate_cmd->add_option("-k,--index", gen_k, "excitation count (dicke) or phase index "
                                                "(translation-eigenstate)")
      ->capture_default_str();
  generate_cmd->add_option("-o,--output", generate_out, "write to file instead of stdout");

  auto* symmetrize_cmd =
      app.add_subcommand("symmetrize", "symmetrize a product state and classify the result");
  std::string symmetrize_path, symmetrize_out;
  symmetrize_cmd->add_option("file", symmetrize_path, "product StateFile")->required();
  symmetrize_cmd->add_option("-o,--output", symmetrize_out,
                             "write the symmetrized state to this file");

  auto* verify_cmd = app.add_subcommand("verify", "run randomized property suites");
  std::string suite = "all";
  int trials = symsep::verify::kDefaultTrials;
  verify_cmd->add_option("--suite", suite, "permanent | result1 | result2 | mixed | all")
      ->capture_default_str();
  verify_cmd->add_option("--trials", trials, "trials per property")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const bool text_mode = text_flag->count() > 0;
  try {
    if (classify_cmd->parsed()) return run_classify(classify_path, tol, text_mode);
    if (generate_cmd->parsed()) return run_generate(family, gen_n, gen_d, gen_k, seed, generate_out);
    if (symmetrize_cmd->parsed())
      return run_symmetrize(symmetrize_path, symmetrize_out, tol, text_mode);
    if (verify_cmd->parsed()) return run_verify(suite, trials, seed, text_mode);
  } catch (const symsep::GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const symsep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
