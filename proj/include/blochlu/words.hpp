// words.hpp -- symbolic polynomial words in the Bloch tensors.
//
// A word denotes a vector built from folded tensors: a chain of fold-matrix
// atoms applied right-to-left to a seed vector. Seeds are realigned tensors
// (T23 read as a 9-vector) or, for the three-qubit orbit families, a product
// of pair atoms realigned after multiplication ([T23 T23' T23]). Words with
// disjoint targets juxtapose into outer products, which is how multi-index
// families arise. Canonical strings compress leading operator powers, e.g.
// "(T12 T12')^2 T12 T2".
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blochlu/bloch.hpp"

namespace blochlu {

// One folded-tensor symbol. pivot == sub marks a vector (realigned) atom;
// otherwise the atom is the fold of T_sub with rows over pivot.
struct Atom {
  Mask sub = 0;
  Mask pivot = 0;

  bool is_vector() const { return pivot == sub; }
  Mask cols() const { return sub & ~pivot; }
  Atom transposed() const { return Atom{sub, static_cast<Mask>(sub & ~pivot)}; }
  bool operator==(const Atom&) const = default;
};

std::string atom_to_string(const Atom& atom);

// chain applied right-to-left to the seed. An empty seed_chain means the seed
// is the plain realigned vector of T_seed_sub; a nonempty seed_chain is a
// pair-typed matrix product realigned to R^9 after evaluation.
struct Run {
  std::vector<Atom> chain;
  Mask seed_sub = 0;
  std::vector<Atom> seed_chain;

  Mask target() const;
  bool operator==(const Run&) const = default;
};

// Runs in display order; their targets must be pairwise disjoint. The value
// of a multi-run word is the outer product realigned over the ascending
// union of targets. `chain` holds operators acting on that combined vector;
// a single-run word keeps its operators on the run instead.
struct Word {
  std::vector<Atom> chain;
  std::vector<Run> runs;

  Mask target() const;
  std::string str() const;
  bool operator==(const Word& other) const {
    return chain == other.chain && runs == other.runs;
  }
};

// Single-run convenience constructors.
Word vec_word(Mask subset);
Word chain_word(std::vector<Atom> chain, Mask seed_sub);

// True when every junction composes, seeds are well-formed, and run targets
// are disjoint.
bool admissible(const Word& w);
// Empty on success; otherwise a message naming the failing junction.
std::optional<std::string> check_word(const Word& w);

// Parses the CLI surface syntax: whitespace-separated atoms T1, T12, T12',
// T1|23, T1|23', optional (...)^k power groups and [...] realigned-product
// groups. Throws ParseError naming the failing token or junction position.
Word parse_word(const std::string& text);

// Value of the word on a tensor set; throws MissingTensor for absent
// subsets and PreconditionViolated for inadmissible words.
RVector evaluate_word(const Word& w, const BlochTensors& t);

struct OrbitSet {
  std::string label;
  Mask target = 0;
  std::vector<Word> words;
};

// The two 6-word single-qubit families of a 2-qubit system, spanning-set
// order: seeds first, then ascending operator powers.
std::vector<OrbitSet> two_qubit_orbits();

// The three R^3 families (15 words each) and three R^9 families (45 words
// each) of a 3-qubit system; operator powers are capped at the
// Cayley-Hamilton degree of the acting matrix.
std::vector<OrbitSet> three_qubit_orbits();

// Per-qubit R^3 families (6 words) plus single-pivot complement families
// (54 words, R^27) of a 4-qubit system.
std::vector<OrbitSet> four_qubit_families();

// All admissible words for the family targeting the index sequence `target`
// (bipartition with its complement), orbit powers below `degree_cap`
// (0 selects the Cayley-Hamilton bound of the target dimension).
// Deduplicated, sorted lexicographically by canonical string.
std::vector<Word> enumerate_words(int n_qubits, const std::vector<int>& target,
                                  int degree_cap = 0);

}  // namespace blochlu
