#include "blochlu/words.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>

namespace blochlu {

namespace {

std::string digits(Mask m) {
  std::string s;
  for (int q : mask_qubits(m)) s += static_cast<char>('0' + q);
  return s;
}

Eigen::Index pow3(int k) {
  Eigen::Index p = 1;
  while (k-- > 0) p *= 3;
  return p;
}

}  // namespace

std::string atom_to_string(const Atom& a) {
  if (a.is_vector()) return "T" + digits(a.sub);
  const Mask rows = a.pivot;
  const Mask cols = a.cols();
  const int nr = std::popcount(rows), nc = std::popcount(cols);
  if (nr == 1 && nc == 1) {
    const int r = mask_qubits(rows)[0], c = mask_qubits(cols)[0];
    return r < c ? "T" + digits(rows) + digits(cols)
                 : "T" + digits(cols) + digits(rows) + "'";
  }
  if (nr < nc || (nr == nc && digits(rows) < digits(cols)))
    return "T" + digits(rows) + "|" + digits(cols);
  return "T" + digits(cols) + "|" + digits(rows) + "'";
}

namespace {

// Canonical chain string; a leading (A A^t) pattern is shown as a power.
std::string chain_to_string(const std::vector<Atom>& chain) {
  std::size_t reps = 0;
  if (chain.size() >= 2 && chain[1] == chain[0].transposed()) {
    while (2 * (reps + 1) <= chain.size() && chain[2 * reps] == chain[0] &&
           chain[2 * reps + 1] == chain[1])
      ++reps;
  }
  std::string s;
  std::size_t start = 0;
  if (reps >= 1) {
    s = "(" + atom_to_string(chain[0]) + " " + atom_to_string(chain[1]) +
        ")^" + std::to_string(reps);
    start = 2 * reps;
  }
  for (std::size_t i = start; i < chain.size(); ++i) {
    if (!s.empty()) s += " ";
    s += atom_to_string(chain[i]);
  }
  return s;
}

std::string run_to_string(const Run& r) {
  std::string s = chain_to_string(r.chain);
  std::string seed;
  if (r.seed_chain.empty())
    seed = "T" + digits(r.seed_sub);
  else
    seed = "[" + chain_to_string(r.seed_chain) + "]";
  if (!s.empty()) s += " ";
  return s + seed;
}

}  // namespace

Mask Run::target() const {
  if (!chain.empty()) return chain.front().pivot;
  if (!seed_chain.empty()) return seed_chain.front().sub;
  return seed_sub;
}

Mask Word::target() const {
  if (!chain.empty()) return chain.front().pivot;
  Mask m = 0;
  for (const Run& r : runs) m |= r.target();
  return m;
}

std::string Word::str() const {
  std::string s = chain_to_string(chain);
  for (const Run& r : runs) {
    if (!s.empty()) s += " ";
    s += run_to_string(r);
  }
  return s;
}

Word vec_word(Mask subset) {
  Word w;
  w.runs.push_back(Run{{}, subset, {}});
  return w;
}

Word chain_word(std::vector<Atom> chain, Mask seed_sub) {
  Word w;
  w.runs.push_back(Run{std::move(chain), seed_sub, {}});
  return w;
}

namespace {

bool atom_shape_ok(const Atom& a) {
  return a.sub != 0 && a.pivot != 0 && (a.pivot & ~a.sub) == 0;
}

}  // namespace

std::optional<std::string> check_word(const Word& w) {
  if (w.runs.empty()) return "word has no runs";
  Mask used = 0;
  for (const Run& r : w.runs) {
    Mask seed_target;
    if (!r.seed_chain.empty()) {
      const Mask pair = r.seed_chain.front().sub;
      if (std::popcount(pair) != 2)
        return "realigned seed must act over a qubit pair";
      Mask expect = 0;
      for (auto it = r.seed_chain.rbegin(); it != r.seed_chain.rend(); ++it) {
        if (!atom_shape_ok(*it) || it->is_vector() || it->sub != pair)
          return "realigned seed contains a non-pair atom";
        if (it != r.seed_chain.rbegin() && it->cols() != expect)
          return "realigned seed junction fails at " + atom_to_string(*it);
        expect = it->pivot;
      }
      if (r.seed_chain.front().pivot == r.seed_chain.back().cols())
        return "realigned product must map one pair qubit to the other";
      seed_target = pair;
    } else {
      if (r.seed_sub == 0) return "empty seed";
      seed_target = r.seed_sub;
    }
    Mask cur = seed_target;
    for (auto it = r.chain.rbegin(); it != r.chain.rend(); ++it) {
      if (!atom_shape_ok(*it)) return "malformed atom";
      if (it->is_vector())
        return "vector atom " + atom_to_string(*it) + " in matrix position";
      if (it->cols() != cur)
        return "junction fails: " + atom_to_string(*it) + " has columns {" +
               digits(it->cols()) + "} but acts on {" + digits(cur) + "}";
      cur = it->pivot;
    }
    if (cur & used) return "run targets overlap at {" + digits(cur & used) + "}";
    used |= cur;
  }
  Mask cur = used;
  for (auto it = w.chain.rbegin(); it != w.chain.rend(); ++it) {
    if (!atom_shape_ok(*it) || it->is_vector()) return "malformed word chain";
    if (it->cols() != cur)
      return "junction fails: " + atom_to_string(*it) + " has columns {" +
             digits(it->cols()) + "} but acts on {" + digits(cur) + "}";
    cur = it->pivot;
  }
  return std::nullopt;
}

bool admissible(const Word& w) { return !check_word(w).has_value(); }

// ---- parsing ----

namespace {

struct Token {
  enum Kind { AtomTok, LParen, RParen, LBracket, RBracket } kind = AtomTok;
  // atom pieces
  std::vector<int> part1, part2;
  bool has_bar = false;
  bool transposed = false;
  int power = 1;  // attached to RParen via ^
  std::string text;
  std::size_t offset = 0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> toks;
  std::size_t i = 0;
  const auto fail = [&](const std::string& msg, std::size_t at) {
    throw Error(ErrorCode::ParseError,
                msg + " at offset " + std::to_string(at) + " in \"" + text + "\"");
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    Token t;
    t.offset = i;
    if (c == '(') { t.kind = Token::LParen; t.text = "("; ++i; }
    else if (c == '[') { t.kind = Token::LBracket; t.text = "["; ++i; }
    else if (c == ']') { t.kind = Token::RBracket; t.text = "]"; ++i; }
    else if (c == ')') {
      t.kind = Token::RParen; t.text = ")"; ++i;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) fail("power marker '^' without digits", start);
        if (i - start > 4) fail("power out of range", start);
        t.power = std::stoi(text.substr(start, i - start));
      }
    } else if (c == 'T') {
      ++i;
      Mask seen = 0;
      const auto digits_here = [&](std::vector<int>& out) {
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          const int q = text[i] - '0';
          if (q == 0) fail("qubit digits run from 1", i);
          const Mask bit = Mask{1} << (q - 1);
          if (seen & bit) fail("repeated qubit digit", i);
          seen |= bit;
          out.push_back(q);
          ++i;
        }
      };
      digits_here(t.part1);
      if (t.part1.empty()) fail("atom 'T' without qubit digits", t.offset);
      if (i < text.size() && text[i] == '|') {
        t.has_bar = true;
        ++i;
        digits_here(t.part2);
        if (t.part2.empty()) fail("'|' without qubit digits", t.offset);
      }
      if (i < text.size() && text[i] == '\'') { t.transposed = true; ++i; }
      t.text = text.substr(t.offset, i - t.offset);
    } else {
      fail(std::string("unexpected character '") + c + "'", i);
    }
    toks.push_back(std::move(t));
  }
  return toks;
}

struct Item {
  bool is_bracket = false;          // realigned-product group
  Token atom;                       // when !is_bracket
  std::vector<Token> bracket_atoms; // when is_bracket
};

void parse_fail(const std::string& msg) {
  throw Error(ErrorCode::ParseError, msg);
}

// Expands (...)^k groups and collects [...] groups into single items.
std::vector<Item> expand_items(const std::vector<Token>& toks, std::size_t& i,
                               Token::Kind terminator, bool at_top) {
  std::vector<Item> items;
  while (i < toks.size()) {
    const Token& t = toks[i];
    if (!at_top && t.kind == terminator) return items;
    switch (t.kind) {
      case Token::AtomTok:
        items.push_back(Item{false, t, {}});
        ++i;
        break;
      case Token::LParen: {
        ++i;
        std::vector<Item> inner = expand_items(toks, i, Token::RParen, false);
        if (i >= toks.size() || toks[i].kind != Token::RParen)
          parse_fail("unterminated '('");
        const int power = toks[i].power;
        ++i;
        for (int rep = 0; rep < power; ++rep)
          items.insert(items.end(), inner.begin(), inner.end());
        break;
      }
      case Token::LBracket: {
        ++i;
        Item group;
        group.is_bracket = true;
        std::vector<Item> inner = expand_items(toks, i, Token::RBracket, false);
        if (i >= toks.size() || toks[i].kind != Token::RBracket)
          parse_fail("unterminated '['");
        ++i;
        for (const Item& it : inner) {
          if (it.is_bracket) parse_fail("nested '[' groups are not supported");
          group.bracket_atoms.push_back(it.atom);
        }
        if (group.bracket_atoms.empty()) parse_fail("empty '[]' group");
        items.push_back(std::move(group));
        break;
      }
      default:
        parse_fail(std::string("unbalanced '") + (t.kind == Token::RParen ? ")" : "]") + "'");
    }
  }
  if (!at_top) parse_fail("unterminated group");
  return items;
}

std::optional<Atom> as_matrix_atom(const Token& t) {
  if (t.has_bar) {
    const Mask rows = mask_from_qubits(t.part1);
    const Mask cols = mask_from_qubits(t.part2);
    if ((rows & cols) != 0 || std::popcount(rows) != static_cast<int>(t.part1.size()) ||
        std::popcount(cols) != static_cast<int>(t.part2.size()))
      return std::nullopt;
    Atom a{static_cast<Mask>(rows | cols), t.transposed ? cols : rows};
    return a;
  }
  if (t.part1.size() != 2 || t.part1[0] == t.part1[1]) return std::nullopt;
  const Mask row = Mask{1} << (t.part1[0] - 1);
  const Mask col = Mask{1} << (t.part1[1] - 1);
  Atom a{static_cast<Mask>(row | col), t.transposed ? col : row};
  return a;
}

std::optional<Mask> as_vector_subset(const Token& t) {
  if (t.has_bar || t.transposed) return std::nullopt;
  for (std::size_t k = 1; k < t.part1.size(); ++k)
    if (t.part1[k] <= t.part1[k - 1]) return std::nullopt;
  return mask_from_qubits(t.part1);
}

Run bracket_to_seed(const Item& item) {
  Run r;
  std::vector<Atom> atoms;
  for (const Token& t : item.bracket_atoms) {
    auto a = as_matrix_atom(t);
    if (!a || std::popcount(a->sub) != 2)
      parse_fail("'" + t.text + "' is not a pair atom inside '[]'");
    atoms.push_back(*a);
  }
  if (atoms.size() == 1) {
    // single pair atom realigns to the plain tensor vector
    r.seed_sub = atoms[0].sub;
  } else {
    r.seed_chain = std::move(atoms);
  }
  return r;
}

}  // namespace

Word parse_word(const std::string& text) {
  const std::vector<Token> toks = tokenize(text);
  std::size_t pos = 0;
  std::vector<Item> items = expand_items(toks, pos, Token::AtomTok, true);
  if (items.empty()) parse_fail("empty word");

  // Build runs right-to-left. A matrix atom chains onto the current run when
  // its columns match; onto the union of run targets as a word-level chain;
  // otherwise a vector-capable atom opens a new run (outer product).
  Word w;
  std::vector<Run> runs_rev;
  std::optional<Run> cur;
  std::vector<Atom> word_chain_rev;
  bool in_word_chain = false;
  struct Fallback { std::size_t junction; std::string detail; };
  std::optional<Fallback> first_fallback;

  const auto union_target = [&]() {
    Mask m = cur ? cur->target() : Mask{0};
    for (const Run& r : runs_rev) m |= r.target();
    return m;
  };

  for (std::size_t k = items.size(); k-- > 0;) {
    const Item& item = items[k];
    const std::size_t position = k + 1;
    if (in_word_chain) {
      if (item.is_bracket)
        parse_fail("'[]' group cannot extend the operator chain (junction " +
                   std::to_string(position + 1) + ")");
      const auto a = as_matrix_atom(item.atom);
      if (!a || a->cols() != word_chain_rev.back().pivot)
        parse_fail("junction " + std::to_string(position + 1) + " fails: '" +
                   item.atom.text + "' does not compose");
      word_chain_rev.push_back(*a);
      continue;
    }
    if (!cur) {
      if (item.is_bracket) {
        cur = bracket_to_seed(item);
      } else if (auto vs = as_vector_subset(item.atom)) {
        cur = Run{{}, *vs, {}};
      } else {
        parse_fail("'" + item.atom.text + "' at position " +
                   std::to_string(position) + " cannot seed a word");
      }
      continue;
    }
    if (item.is_bracket) {
      runs_rev.push_back(*cur);
      cur = bracket_to_seed(item);
      continue;
    }
    const auto mat = as_matrix_atom(item.atom);
    if (mat && mat->cols() == cur->target()) {
      cur->chain.insert(cur->chain.begin(), *mat);
      continue;
    }
    if (mat && !runs_rev.empty()) {
      Mask all = union_target();
      if (mat->cols() == all) {
        runs_rev.push_back(*cur);
        cur.reset();
        word_chain_rev.push_back(*mat);
        in_word_chain = true;
        continue;
      }
    }
    if (auto vs = as_vector_subset(item.atom)) {
      if (mat && !first_fallback)
        first_fallback = Fallback{
            position + 1, "'" + item.atom.text + "' has columns {" +
                              digits(mat->cols()) + "} but acts on {" +
                              digits(cur->target()) + "}"};
      runs_rev.push_back(*cur);
      cur = Run{{}, *vs, {}};
      continue;
    }
    parse_fail("junction " + std::to_string(position + 1) + " fails: '" +
               item.atom.text + "' has columns {" +
               (mat ? digits(mat->cols()) : std::string("?")) +
               "} but acts on {" + digits(cur->target()) + "}");
  }
  if (cur) runs_rev.push_back(*cur);
  w.runs.assign(runs_rev.rbegin(), runs_rev.rend());
  w.chain.assign(word_chain_rev.rbegin(), word_chain_rev.rend());
  // canonical form: a single-run word keeps its operators on the run
  if (w.runs.size() == 1 && !w.chain.empty()) {
    auto& chain = w.runs.front().chain;
    chain.insert(chain.begin(), w.chain.begin(), w.chain.end());
    w.chain.clear();
  }
  if (auto err = check_word(w)) {
    if (first_fallback)
      parse_fail("junction " + std::to_string(first_fallback->junction) +
                 " fails: " + first_fallback->detail);
    parse_fail(*err);
  }
  return w;
}

// ---- evaluation ----

namespace {

RVector evaluate_run(const Run& r, const BlochTensors& t) {
  RVector v;
  if (!r.seed_chain.empty()) {
    Eigen::Matrix3d prod = Eigen::Matrix3d::Identity();
    for (const Atom& a : r.seed_chain)
      prod = prod * fold(t, a.sub, a.pivot).matrix;
    const std::vector<int> pair = mask_qubits(r.seed_chain.front().sub);
    const bool rows_low =
        r.seed_chain.front().pivot == (Mask{1} << (pair[0] - 1));
    v.resize(9);
    for (int row = 0; row < 3; ++row)
      for (int col = 0; col < 3; ++col) {
        if (rows_low)
          v[3 * row + col] = prod(row, col);
        else
          v[3 * col + row] = prod(row, col);
      }
  } else {
    v = t.vec(r.seed_sub);
  }
  for (auto it = r.chain.rbegin(); it != r.chain.rend(); ++it)
    v = (fold(t, it->sub, it->pivot).matrix * v).eval();
  return v;
}

}  // namespace

RVector evaluate_word(const Word& w, const BlochTensors& t) {
  if (auto err = check_word(w))
    throw Error(ErrorCode::PreconditionViolated, "inadmissible word: " + *err);
  std::vector<RVector> values;
  values.reserve(w.runs.size());
  Mask union_mask = 0;
  for (const Run& r : w.runs) {
    values.push_back(evaluate_run(r, t));
    union_mask |= r.target();
  }
  RVector v;
  if (w.runs.size() == 1) {
    v = std::move(values.front());
  } else {
    const std::vector<int> qubits = mask_qubits(union_mask);
    const int arity = static_cast<int>(qubits.size());
    // per-run digit positions within the ascending union
    std::vector<std::vector<int>> positions(w.runs.size());
    for (std::size_t r = 0; r < w.runs.size(); ++r)
      for (int q : mask_qubits(w.runs[r].target()))
        positions[r].push_back(static_cast<int>(
            std::find(qubits.begin(), qubits.end(), q) - qubits.begin()));
    v.resize(pow3(arity));
    std::vector<int> alpha(arity);
    for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
      Eigen::Index rem = idx;
      for (int u = arity - 1; u >= 0; --u) {
        alpha[u] = static_cast<int>(rem % 3);
        rem /= 3;
      }
      double prod = 1.0;
      for (std::size_t r = 0; r < w.runs.size(); ++r) {
        Eigen::Index sub_idx = 0;
        for (int p : positions[r]) sub_idx = sub_idx * 3 + alpha[p];
        prod *= values[r][sub_idx];
      }
      v[idx] = prod;
    }
  }
  for (auto it = w.chain.rbegin(); it != w.chain.rend(); ++it)
    v = (fold(t, it->sub, it->pivot).matrix * v).eval();
  return v;
}

// ---- families ----

namespace {

Atom mat_atom(Mask sub, Mask pivot) { return Atom{sub, pivot}; }

// Prepends m copies of (op op^t) to a single-run word.
Word with_power(const Atom& op, int m, Run base) {
  for (int rep = 0; rep < m; ++rep) {
    base.chain.insert(base.chain.begin(), op.transposed());
    base.chain.insert(base.chain.begin(), op);
  }
  Word w;
  w.runs.push_back(std::move(base));
  return w;
}

// Realigned (T_pair T_pair^t)^beta T_pair seed over `pair`.
Run beta_seed(Mask pair, int beta) {
  Run r;
  if (beta == 0) {
    r.seed_sub = pair;
    return r;
  }
  const std::vector<int> q = mask_qubits(pair);
  const Atom a = mat_atom(pair, Mask{1} << (q[0] - 1));
  for (int rep = 0; rep < beta; ++rep) {
    r.seed_chain.push_back(a);
    r.seed_chain.push_back(a.transposed());
  }
  r.seed_chain.push_back(a);
  return r;
}

Run prefixed(Atom front, Run base) {
  base.chain.insert(base.chain.begin(), front);
  return base;
}

}  // namespace

std::vector<OrbitSet> two_qubit_orbits() {
  std::vector<OrbitSet> out;
  const Mask full = 0b11;
  for (int i = 1; i <= 2; ++i) {
    const Mask me = Mask{1} << (i - 1);
    const Mask other = full & ~me;
    const Atom f = mat_atom(full, me);
    OrbitSet set;
    set.label = "O" + digits(me);
    set.target = me;
    std::vector<Run> seeds = {Run{{}, me, {}}, prefixed(f, Run{{}, other, {}})};
    for (int m = 0; m <= 2; ++m)
      for (const Run& s : seeds) set.words.push_back(with_power(f, m, s));
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<OrbitSet> three_qubit_orbits() {
  std::vector<OrbitSet> out;
  const Mask full = 0b111;
  // R^3 families, one per pivot
  for (int i = 1; i <= 3; ++i) {
    const Mask me = Mask{1} << (i - 1);
    const Mask pair = full & ~me;
    const Atom f = mat_atom(full, me);
    OrbitSet set;
    set.label = "O" + digits(me) + "|" + digits(pair);
    set.target = me;
    std::vector<Run> seeds = {Run{{}, me, {}}};
    for (int beta = 0; beta <= 3; ++beta)
      seeds.push_back(prefixed(f, beta_seed(pair, beta)));
    for (int m = 0; m <= 2; ++m)
      for (const Run& s : seeds) set.words.push_back(with_power(f, m, s));
    out.push_back(std::move(set));
  }
  // R^9 families, one per partition
  for (int i = 1; i <= 3; ++i) {
    const Mask me = Mask{1} << (i - 1);
    const Mask pair = full & ~me;
    const Atom ft = mat_atom(full, pair);  // T_{i|jk}^t
    OrbitSet set;
    set.label = "O" + digits(pair) + "|" + digits(me);
    set.target = pair;
    std::vector<Run> seeds;
    for (int beta = 0; beta <= 3; ++beta) seeds.push_back(beta_seed(pair, beta));
    seeds.push_back(prefixed(ft, Run{{}, me, {}}));
    for (int m = 0; m <= 8; ++m)
      for (const Run& s : seeds) set.words.push_back(with_power(ft, m, s));
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<OrbitSet> four_qubit_families() {
  std::vector<OrbitSet> out;
  const Mask full = 0b1111;
  for (int i = 1; i <= 4; ++i) {
    const Mask me = Mask{1} << (i - 1);
    const Mask rest = full & ~me;
    const Atom f = mat_atom(full, me);
    OrbitSet set;
    set.label = "O" + digits(me) + "|" + digits(rest);
    set.target = me;
    std::vector<Run> seeds = {Run{{}, me, {}}, prefixed(f, Run{{}, rest, {}})};
    for (int m = 0; m <= 2; ++m)
      for (const Run& s : seeds) set.words.push_back(with_power(f, m, s));
    out.push_back(std::move(set));
  }
  for (int i = 1; i <= 4; ++i) {
    const Mask me = Mask{1} << (i - 1);
    const Mask rest = full & ~me;
    const Atom ft = mat_atom(full, rest);
    OrbitSet set;
    set.label = "O" + digits(rest) + "|" + digits(me);
    set.target = rest;
    std::vector<Run> seeds = {Run{{}, rest, {}}, prefixed(ft, Run{{}, me, {}})};
    for (int m = 0; m < 27; ++m)
      for (const Run& s : seeds) set.words.push_back(with_power(ft, m, s));
    out.push_back(std::move(set));
  }
  return out;
}

namespace {

// Spanning seed vectors available over a subset, used as fold targets.
std::vector<Run> pool_runs(Mask subset) {
  const int size = std::popcount(subset);
  std::vector<Run> runs;
  if (size == 2) {
    for (int beta = 0; beta <= 3; ++beta) runs.push_back(beta_seed(subset, beta));
  } else {
    runs.push_back(Run{{}, subset, {}});
  }
  return runs;
}

// Generator words of the single-index family <O_i>, before orbit powers.
std::vector<Run> seed_runs(int n_qubits, int index) {
  const Mask full = (Mask{1} << n_qubits) - 1;
  const Mask me = Mask{1} << (index - 1);
  const Atom f = mat_atom(full, me);
  std::vector<Run> runs = {Run{{}, me, {}}};
  for (const Run& p : pool_runs(full & ~me)) runs.push_back(prefixed(f, p));
  return runs;
}

}  // namespace

std::vector<Word> enumerate_words(int n_qubits,
                                  const std::vector<int>& target,
                                  int degree_cap) {
  if (n_qubits < 2 || n_qubits > 4)
    throw Error(ErrorCode::UnsupportedQubitCount,
                "enumeration covers 2 to 4 qubits, got " +
                    std::to_string(n_qubits));
  const Mask full = (Mask{1} << n_qubits) - 1;
  const Mask tm = mask_from_qubits(target);
  if (target.empty() || std::popcount(tm) != static_cast<int>(target.size()) ||
      (tm & ~full) != 0 || tm == full)
    throw Error(ErrorCode::BadPartition,
                "target must be distinct indices forming a proper subset");
  const int tsize = static_cast<int>(target.size());
  if (degree_cap <= 0) degree_cap = static_cast<int>(pow3(tsize));

  std::vector<Word> generators;
  if (tsize == 1) {
    for (const Run& r : seed_runs(n_qubits, target[0])) {
      Word w;
      w.runs.push_back(r);
      generators.push_back(std::move(w));
    }
  } else {
    for (const Run& r : pool_runs(tm)) {
      Word w;
      w.runs.push_back(r);
      generators.push_back(std::move(w));
    }
    // cross seeds through the complement fold
    const Mask cm = full & ~tm;
    const Atom ft = mat_atom(full, tm);
    if (std::popcount(cm) == 1) {
      for (const Run& s : seed_runs(n_qubits, mask_qubits(cm)[0])) {
        Word w;
        w.runs.push_back(prefixed(ft, s));
        generators.push_back(std::move(w));
      }
    } else {
      for (const Run& p : pool_runs(cm)) {
        Word w;
        w.runs.push_back(prefixed(ft, p));
        generators.push_back(std::move(w));
      }
    }
    // outer products over set partitions of the target with blocks of size
    // <= 2, blocks ordered by earliest appearance in the given sequence
    std::vector<std::vector<std::vector<int>>> splits;
    if (tsize == 2) {
      splits.push_back({{target[0]}, {target[1]}});
    } else if (tsize == 3) {
      splits.push_back({{target[0]}, {target[1]}, {target[2]}});
      splits.push_back({{target[0]}, {target[1], target[2]}});
      splits.push_back({{target[1]}, {target[0], target[2]}});
      splits.push_back({{target[2]}, {target[0], target[1]}});
    }
    for (const auto& split : splits) {
      std::vector<std::vector<Run>> choices;
      for (const auto& block : split) {
        if (block.size() == 1)
          choices.push_back(seed_runs(n_qubits, block[0]));
        else
          choices.push_back(pool_runs(mask_from_qubits(block)));
      }
      std::vector<std::size_t> pick(choices.size(), 0);
      for (;;) {
        Word w;
        for (std::size_t b = 0; b < choices.size(); ++b)
          w.runs.push_back(choices[b][pick[b]]);
        generators.push_back(std::move(w));
        std::size_t b = choices.size();
        while (b-- > 0) {
          if (++pick[b] < choices[b].size()) break;
          pick[b] = 0;
          if (b == 0) goto split_done;
        }
      }
    split_done:;
    }
  }

  const Atom op = mat_atom(full, tm);
  std::set<std::string> seen;
  std::vector<Word> words;
  for (int m = 0; m < degree_cap; ++m) {
    for (const Word& g : generators) {
      Word w = g;
      if (w.runs.size() == 1) {
        for (int rep = 0; rep < m; ++rep) {
          w.runs.front().chain.insert(w.runs.front().chain.begin(),
                                      op.transposed());
          w.runs.front().chain.insert(w.runs.front().chain.begin(), op);
        }
      } else {
        for (int rep = 0; rep < m; ++rep) {
          w.chain.insert(w.chain.begin(), op.transposed());
          w.chain.insert(w.chain.begin(), op);
        }
      }
      if (seen.insert(w.str()).second) words.push_back(std::move(w));
    }
  }
  std::sort(words.begin(), words.end(),
            [](const Word& a, const Word& b) { return a.str() < b.str(); });
  return words;
}

}  // namespace blochlu
