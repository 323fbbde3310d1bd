#include "blochlu/selftest.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "blochlu/decide.hpp"
#include "blochlu/io.hpp"
#include "blochlu/rng.hpp"

namespace blochlu {

namespace {

struct Suite {
  std::string name;
  int checks = 0;
  int failures = 0;
  std::ostream& out;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      out << name << ": FAIL " << what << "\n";
    }
  }
  void done() {
    out << name << ": " << (failures ? "fail" : "pass") << " (" << checks
        << " checks)\n";
  }
};

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void states_suite(Suite& s, int trials, Rng& rng) {
  for (int k = 0; k < trials; ++k) {
    const int rank = 1 + static_cast<int>(rng.bits() % 4);
    const DensityState rho = random_density(2, rank, rng);
    s.check(std::abs(rho.matrix.trace().real() - 1.0) < 1e-12,
            "random density trace");
    const LocalUnitary lu = random_local_unitary(2, rng);
    bool ok = true;
    try {
      apply_local_unitary(rho, lu);
    } catch (const Error&) {
      ok = false;
    }
    s.check(ok, "conjugated density validates");

    const Eigen::Matrix2cd u = lu.factors[0], v = lu.factors[1];
    const Rotation3 ou = su2_to_so3(u), ov = su2_to_so3(v);
    s.check((su2_to_so3(u * v) - ou * ov).cwiseAbs().maxCoeff() < 1e-12,
            "double cover is a homomorphism");
    const Eigen::Matrix2cd lifted = so3_to_su2(ou);
    s.check((su2_to_so3(lifted) - ou).cwiseAbs().maxCoeff() < 1e-12,
            "rotation lift round trip");
  }
}

void tensors_suite(Suite& s, int trials, Rng& rng) {
  for (int k = 0; k < trials; ++k) {
    const int n = (k % 3 == 2) ? 3 : 2;
    const DensityState rho = random_density(n, 1 << n, rng);
    const BlochTensors t = extract_tensors(rho);
    const DensityState back = reconstruct_density(t);
    s.check(max_abs(back.matrix - rho.matrix) < 1e-10,
            "extract/reconstruct round trip");
    if (n == 2) {
      const LocalUnitary lu = random_local_unitary(2, rng);
      const BlochTensors tp = extract_tensors(apply_local_unitary(rho, lu));
      const Rotation3 o1 = su2_to_so3(lu.factors[0]);
      const Rotation3 o2 = su2_to_so3(lu.factors[1]);
      s.check((tp.single(1) - o1 * t.single(1)).norm() < 1e-10,
              "single-qubit vector rotates");
      s.check(
          (tp.pair(1, 2) - o1 * t.pair(1, 2) * o2.transpose()).cwiseAbs()
                  .maxCoeff() < 1e-10,
          "pair tensor transforms on both sides");
    }
  }
}

void words_suite(Suite& s, int trials, Rng& rng) {
  for (int n = 2; n <= 4; ++n)
    for (const OrbitSet& fam : families_for(n))
      for (const Word& w : fam.words)
        s.check(parse_word(w.str()) == w,
                "parse round trip for " + w.str());
  const auto orbits = two_qubit_orbits();
  const auto listed = enumerate_words(2, {1});
  bool same = listed.size() == orbits[0].words.size();
  if (same)
    for (const Word& w : orbits[0].words) {
      bool found = false;
      for (const Word& e : listed) found = found || e == w;
      same = same && found;
    }
  s.check(same, "enumeration reproduces the first orbit family");
  if (trials > 0) {
    const DensityState rho = random_density(2, 4, rng);
    const BlochTensors t = extract_tensors(rho);
    const Eigen::Matrix3d a = t.pair(1, 2);
    const RVector direct = a * a.transpose() * t.single(1);
    const RVector via = evaluate_word(parse_word("(T12 T12')^1 T1"), t);
    s.check((direct - via).norm() < 1e-14, "evaluator matches direct algebra");
  }
}

void invariants_suite(Suite& s, int trials, Rng& rng) {
  for (int k = 0; k < trials; ++k) {
    const int n = (k % 5 == 4) ? 3 : 2;
    const DensityState rho = random_density(n, 1 << n, rng);
    const LocalUnitary lu = random_local_unitary(n, rng);
    const BlochTensors t = extract_tensors(rho);
    const BlochTensors tp = extract_tensors(apply_local_unitary(rho, lu));
    const Scheme scheme = default_scheme(n);
    const MatchReport mr =
        compare_invariants(invariants_for(t, scheme),
                           invariants_for(tp, scheme), 1e-8, 1e-12);
    s.check(mr.matched, "invariants stay fixed under local rotation");
    if (n == 2) {
      // the third operator power is a combination of the lower three
      const Eigen::Matrix3d m = t.pair(1, 2) * t.pair(1, 2).transpose();
      const std::vector<double> p = power_sums(m, 3);
      const Elementary3 e = elementary_from_power(p[0], p[1], p[2]);
      const Eigen::Vector3d t1 = t.single(1);
      const double lhs = t1.dot(m * m * m * t1);
      const double rhs = e.e1 * t1.dot(m * m * t1) - e.e2 * t1.dot(m * t1) +
                         e.e3 * t1.dot(t1);
      s.check(std::abs(lhs - rhs) < 1e-9, "operator cube reduces");
    }
  }
}

void decisions_suite(Suite& s, int trials, Rng& rng) {
  for (int k = 0; k < trials; ++k) {
    const DensityState rho = random_density(2, 4, rng);
    const LocalUnitary lu = random_local_unitary(2, rng);
    const Decision d = decide_equivalence(rho, apply_local_unitary(rho, lu));
    s.check(d.verdict == Verdict::Equivalent && d.witness.has_value() &&
                d.residual.value_or(1.0) <= 1e-7,
            "transported state is recognized with a witness");
    const DensityState other = random_density(2, 4, rng);
    const Decision d2 = decide_equivalence(rho, other);
    s.check(d2.verdict == Verdict::Inequivalent,
            "independent states are separated");
  }
}

void io_suite(Suite& s, int trials, Rng& rng) {
  for (int k = 0; k < std::min(trials, 5); ++k) {
    const DensityState rho = random_density(2, 4, rng);
    const DensityState back = parse_state_json(state_to_json(rho));
    s.check(max_abs(back.matrix - rho.matrix) == 0.0,
            "state serialization round trip");
    const BlochTensors t = extract_tensors(rho);
    const BlochTensors tback = parse_tensors_json(tensors_to_json(t));
    bool same = tback.n_qubits == t.n_qubits;
    for (const auto& [mask, flat] : t.tensors)
      same = same && tback.has(mask) && (tback.vec(mask) - flat).norm() == 0.0;
    s.check(same, "tensor serialization round trip");
  }
}

}  // namespace

int run_selftest(int trials, std::uint64_t seed, std::ostream& out) {
  if (trials <= 0) {
    out << "selftest: no trials requested\n";
    return 0;
  }
  Rng rng(seed);
  int failures = 0;
  const auto run = [&](const char* name, auto fn) {
    Suite s{name, 0, 0, out};
    fn(s);
    s.done();
    failures += s.failures;
  };
  run("states", [&](Suite& s) { states_suite(s, trials, rng); });
  run("tensors", [&](Suite& s) { tensors_suite(s, trials, rng); });
  run("words", [&](Suite& s) { words_suite(s, trials, rng); });
  run("invariants", [&](Suite& s) { invariants_suite(s, trials, rng); });
  run("decisions", [&](Suite& s) { decisions_suite(s, trials, rng); });
  run("io", [&](Suite& s) { io_suite(s, trials, rng); });
  if (failures == 0)
    out << "selftest: all suites passed\n";
  else
    out << "selftest: " << failures << " check(s) failed\n";
  return failures;
}

}  // namespace blochlu
