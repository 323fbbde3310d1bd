#include "blochlu/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "blochlu/decide.hpp"
#include "blochlu/io.hpp"
#include "blochlu/rng.hpp"
#include "blochlu/selftest.hpp"
#include "blochlu/version.hpp"

namespace blochlu {

namespace {

std::uint64_t env_or_default_seed() {
  if (const char* env = std::getenv("BLOCHLU_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw Error(ErrorCode::BadValue,
                  "BLOCHLU_SEED is not an unsigned integer: " +
                      std::string(env));
    return v;
  }
  return 12345;
}

Scheme scheme_from_flag(const std::string& flag, int n_qubits) {
  if (flag == "auto") return default_scheme(n_qubits);
  if (flag == "12") return Scheme::TwoQubit12;
  if (flag == "90") return Scheme::ThreeQubit90;
  if (flag == "gram") return Scheme::GramGeneric;
  throw Error(ErrorCode::BadValue, "unknown scheme flag: " + flag);
}

void emit(std::ostream& out, const std::string& text,
          const std::string& out_path) {
  if (out_path.empty())
    out << text;
  else
    write_text_file(out_path, text);
}

void print_genericity(std::ostream& out, const GenericityReport& g,
                      const char* prefix) {
  out << prefix << "generic: " << (g.generic ? "true" : "false") << "\n";
  for (const FamilyRank& f : g.families)
    out << prefix << "rank " << f.label << ": " << f.rank << " (dim "
        << f.dimension << ")\n";
}

int cmd_extract(std::ostream& out, const std::string& state_path,
                const std::string& out_path, const Tolerances& tol) {
  const DensityState s = read_state_file(state_path, tol);
  emit(out, tensors_to_json(extract_tensors(s, tol)), out_path);
  return 0;
}

int cmd_invariants(std::ostream& out, const std::string& state_path,
                   const std::string& scheme_flag, bool extended,
                   const Tolerances& tol, double rank_tol) {
  const DensityState s = read_state_file(state_path, tol);
  const BlochTensors t = extract_tensors(s, tol);
  const Scheme scheme = scheme_from_flag(scheme_flag, t.n_qubits);
  const InvariantVector iv = invariants_for(t, scheme, extended);
  out << "version: " << kVersion << "\n";
  out << "scheme: " << scheme_name(iv.scheme)
      << (iv.extended ? " (extended)" : "") << "\n";
  out << "n_qubits: " << iv.n_qubits << "\n";
  out << "atol: " << fmt17(tol.atol) << "\n";
  out << "rtol: " << fmt17(tol.rtol) << "\n";
  print_genericity(out, genericity(t, rank_tol), "");
  out << "entries: " << iv.size() << "\n";
  for (std::size_t i = 0; i < iv.size(); ++i)
    out << iv.labels[i] << " = " << fmt17(iv.values[i]) << "\n";
  return 0;
}

int cmd_compare(std::ostream& out, const std::string& path_a,
                const std::string& path_b, const DecideConfig& cfg,
                bool witness) {
  const DensityState a = read_state_file(path_a, cfg.tolerances);
  const DensityState b = read_state_file(path_b, cfg.tolerances);
  const Decision d = decide_equivalence(a, b, cfg);
  out << "verdict: " << verdict_name(d.verdict) << "\n";
  out << "detail: " << d.detail << "\n";
  if (d.residual) out << "residual: " << fmt17(*d.residual) << "\n";
  if (d.separating) {
    out << "separating: " << d.separating->label << "\n";
    out << "value_a: " << fmt17(d.separating->value_a) << "\n";
    out << "value_b: " << fmt17(d.separating->value_b) << "\n";
    out << "gap: " << fmt17(d.separating->gap) << "\n";
  }
  if (d.certified_by_invariants_only)
    out << "certified_by_invariants_only: true\n";
  out << "generic_a: " << (d.genericity_a.generic ? "true" : "false") << "\n";
  out << "generic_b: " << (d.genericity_b.generic ? "true" : "false") << "\n";
  if (witness && d.witness) {
    out << "witness:\n";
    out << unitary_to_json(*d.witness);
  }
  switch (d.verdict) {
    case Verdict::Equivalent: return 0;
    case Verdict::Inequivalent: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 3;
}

int cmd_apply(std::ostream& out, const std::string& state_path,
              const std::string& out_path, const std::string& unitary_path,
              std::uint64_t seed, const Tolerances& tol) {
  const DensityState s = read_state_file(state_path, tol);
  LocalUnitary lu;
  if (!unitary_path.empty()) {
    lu = read_unitary_file(unitary_path, tol);
  } else {
    Rng rng(seed);
    lu = random_local_unitary(s.n_qubits, rng);
  }
  const DensityState moved = apply_local_unitary(s, lu, tol);
  write_state_file(out_path, moved);
  const std::string lu_path = out_path + ".unitary.json";
  write_unitary_file(lu_path, lu);
  out << "state: " << out_path << "\n";
  out << "unitary: " << lu_path << "\n";
  return 0;
}

int cmd_random(std::ostream& out, int n_qubits, int rank, std::uint64_t seed,
               const std::string& out_path) {
  Rng rng(seed);
  if (rank == 0) rank = 1 << n_qubits;
  const DensityState s = random_density(n_qubits, rank, rng);
  emit(out, state_to_json(s), out_path);
  return 0;
}

int cmd_words(std::ostream& out, int n_qubits, const std::string& family,
              const std::string& check, const std::string& eval,
              const std::string& state_path, const Tolerances& tol) {
  if (!check.empty()) {
    try {
      const Word w = parse_word(check);
      out << "admissible: " << w.str() << "\n";
    } catch (const Error& e) {
      out << "inadmissible: " << e.what() << "\n";
    }
    return 0;
  }
  if (!eval.empty()) {
    if (state_path.empty())
      throw Error(ErrorCode::BadValue, "--eval needs --state");
    const DensityState s = read_state_file(state_path, tol);
    const BlochTensors t = extract_tensors(s, tol);
    const Word w = parse_word(eval);
    const RVector v = evaluate_word(w, t);
    out << w.str() << " =";
    for (Eigen::Index k = 0; k < v.size(); ++k) out << " " << fmt17(v[k]);
    out << "\n";
    return 0;
  }
  const std::vector<OrbitSet> families = families_for(n_qubits);
  if (family.empty()) {
    for (const OrbitSet& f : families)
      out << f.label << ": " << f.words.size() << " words\n";
    return 0;
  }
  for (const OrbitSet& f : families) {
    if (f.label != family) continue;
    for (const Word& w : f.words) out << w.str() << "\n";
    return 0;
  }
  std::string known;
  for (const OrbitSet& f : families)
    known += (known.empty() ? "" : ", ") + f.label;
  throw Error(ErrorCode::BadValue,
              "unknown family " + family + "; available: " + known);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"canonical local-unitary invariants of multi-qubit states"};
  app.name("blochlu");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Tolerances tol;
  app.add_option("--atol", tol.atol, "absolute tolerance")
      ->capture_default_str();
  app.add_option("--rtol", tol.rtol, "relative tolerance")
      ->capture_default_str();

  std::string state_path, path_b, out_path, unitary_path;
  std::string scheme_flag = "auto", family, check_word_text, eval_word_text;
  bool extended = false, witness = false;
  int n_qubits = 2, rank = 0, trials = 20;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double inv_rtol = DecideConfig{}.invariant_rtol;
  double inv_atol = DecideConfig{}.invariant_atol;

  CLI::App* extract = app.add_subcommand(
      "extract", "write the Bloch tensors of a state");
  extract->add_option("state", state_path, "state file")->required();
  extract->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* invariants = app.add_subcommand(
      "invariants", "evaluate the canonical invariant list");
  invariants->add_option("state", state_path, "state file")->required();
  invariants->add_option("--scheme", scheme_flag,
                         "auto, 12, 90, or gram")
      ->check(CLI::IsMember({"auto", "12", "90", "gram"}))
      ->capture_default_str();
  invariants->add_flag("--extended", extended,
                       "append the symmetric completions (90 only)");

  CLI::App* compare = app.add_subcommand(
      "compare", "decide local-unitary equivalence of two states");
  compare->add_option("state_a", state_path, "first state file")->required();
  compare->add_option("state_b", path_b, "second state file")->required();
  compare->add_option("--invariant-rtol", inv_rtol,
                      "relative comparison tolerance")
      ->capture_default_str();
  compare->add_option("--invariant-atol", inv_atol,
                      "absolute comparison tolerance")
      ->capture_default_str();
  compare->add_flag("--extended", extended, "compare extended lists (N=3)");
  compare->add_flag("--witness", witness, "print the verified witness");

  CLI::App* apply = app.add_subcommand(
      "apply", "conjugate a state by a local unitary");
  apply->add_option("state", state_path, "state file")->required();
  apply->add_option("--out", out_path, "output state path")->required();
  apply->add_option("--unitary", unitary_path,
                    "unitary file (default: random from seed)");
  apply->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
    seed_given = true;
  });

  CLI::App* random = app.add_subcommand("random", "sample a random state");
  random->add_option("--qubits", n_qubits, "qubit count")->required();
  random->add_option("--rank", rank, "rank (default full)");
  random->add_option("--out", out_path, "output path (default stdout)");
  random->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
    seed_given = true;
  });

  CLI::App* words = app.add_subcommand(
      "words", "list, check, or evaluate invariant words");
  words->add_option("--qubits", n_qubits, "qubit count")
      ->capture_default_str();
  words->add_option("--family", family, "orbit family label");
  words->add_option("--check", check_word_text, "word to check");
  words->add_option("--eval", eval_word_text, "word to evaluate");
  words->add_option("--state", path_b, "state file for --eval");

  CLI::App* selftest = app.add_subcommand(
      "selftest", "run the randomized property suites");
  selftest->add_option("--trials", trials, "trials per suite")
      ->capture_default_str();
  selftest->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
    seed_given = true;
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("blochlu");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }

  try {
    if (!seed_given) seed = env_or_default_seed();
    if (app.got_subcommand(extract))
      return cmd_extract(out, state_path, out_path, tol);
    if (app.got_subcommand(invariants))
      return cmd_invariants(out, state_path, scheme_flag, extended, tol,
                            DecideConfig{}.rank_tol);
    if (app.got_subcommand(compare)) {
      DecideConfig cfg;
      cfg.tolerances = tol;
      cfg.invariant_rtol = inv_rtol;
      cfg.invariant_atol = inv_atol;
      cfg.extended = extended;
      return cmd_compare(out, state_path, path_b, cfg, witness);
    }
    if (app.got_subcommand(apply))
      return cmd_apply(out, state_path, out_path, unitary_path, seed, tol);
    if (app.got_subcommand(random))
      return cmd_random(out, n_qubits, rank, seed, out_path);
    if (app.got_subcommand(words))
      return cmd_words(out, n_qubits, family, check_word_text, eval_word_text,
                       path_b, tol);
    if (app.got_subcommand(selftest))
      return run_selftest(trials, seed, out) == 0 ? 0 : 3;
    err << "error: no command selected\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace blochlu
