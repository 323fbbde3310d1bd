// invariants.hpp -- canonical invariant schemes and genericity diagnostics.
#pragma once

#include <string>
#include <vector>

#include "blochlu/bloch.hpp"
#include "blochlu/words.hpp"

namespace blochlu {

enum class Scheme { TwoQubit12, ThreeQubit90, GramGeneric };

std::string scheme_name(Scheme s);

// Ordered, labeled list of real invariant values. Labels are canonical
// word-pair strings (e.g. "<T1,(T12 T12')^2 T12 T2>") or trace expressions
// ("tr(T12 T12')^3"), identical across runs and platforms.
struct InvariantVector {
  Scheme scheme = Scheme::GramGeneric;
  int n_qubits = 0;
  bool extended = false;
  std::vector<std::string> labels;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

// The fixed 12-entry list for a 2-qubit state: <T1,(T12 T12')^b T1>,
// <T2,(T12' T12)^b T2>, <T1,(T12 T12')^b T12 T2> for b = 0,1,2, then
// tr(T12 T12')^a for a = 1,2,3. Requires N = 2 (WrongQubitCount).
InvariantVector two_qubit_invariants(const BlochTensors& t);

// The fixed 90-entry list for a 3-qubit state, grouped as: (a) the 9 pair
// entries of the (1,2) marginal; (b) tr(Tij Tij')^b for the three pairs,
// b = 1..3; (c) <Ti,(Ti|jk Ti|jk')^k Ti> per pivot, k = 0..8; (d)
// <T23,(T1|23' T1|23)^k T23>, k = 0..8; (e) <T23,(T1|23' T1|23)^k T1|23' T1>,
// k = 0..8; (f) tr(Ti|jk' Ti|jk)^l per pivot, l = 1..9. Powers past the
// minimal degree are kept deliberately. `extended` appends the 54
// symmetric completions: pair groups (1,3) and (2,3), and the (d)/(e)
// analogues for pivots 2 and 3. Requires N = 3 (WrongQubitCount).
InvariantVector three_qubit_invariants(const BlochTensors& t,
                                       bool extended = false);

// Orbit families used by the Gram scheme: two_qubit_orbits for N = 2,
// three_qubit_orbits for N = 3, four_qubit_families for N = 4.
std::vector<OrbitSet> families_for(int n_qubits);

// All inner products <v_i, v_j>, i <= j, of each family's evaluated word
// vectors, concatenated in family order; labels are "<word_i,word_j>".
// Throws DimensionMismatch if a family mixes target dimensions.
InvariantVector gram_invariants(const std::vector<OrbitSet>& families,
                                const BlochTensors& t);
InvariantVector gram_invariants(const BlochTensors& t);

// Scheme used by `auto` dispatch: 12 for N = 2, 90 for N = 3, Gram above.
Scheme default_scheme(int n_qubits);
InvariantVector invariants_for(const BlochTensors& t, Scheme scheme,
                               bool extended = false);

struct FamilyRank {
  std::string label;
  Eigen::Index dimension = 0;  // 3^k target dimension
  int rank = 0;
  std::vector<double> singular_values;  // descending
};

// generic iff every R^3-valued family has numerical rank 3; larger
// families are reported for diagnostics only.
struct GenericityReport {
  std::vector<FamilyRank> families;
  bool generic = false;
  double rank_tol = 0.0;
};

// Stacks each family's evaluated vectors as columns and reports singular
// values and rank (sigma > rank_tol * max(1, sigma_max)). N in {2,3,4}.
GenericityReport genericity(const BlochTensors& t, double rank_tol = 1e-10);

}  // namespace blochlu
