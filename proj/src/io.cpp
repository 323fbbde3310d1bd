#include "blochlu/io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace blochlu {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) {
  throw Error(ErrorCode::ParseError, msg);
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) bad("malformed JSON document");
  return j;
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field \"") + name + "\"");
  return *it;
}

std::vector<double> real_vector(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) bad(where + " must contain numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

// re/im grids of equal square shape; row-length errors name the row.
CMatrix complex_grid(const json& j, const std::string& where) {
  const json& re = field(j, "re");
  const json& im = field(j, "im");
  if (!re.is_array() || !im.is_array())
    bad(where + ".re and .im must be arrays of rows");
  if (re.size() != im.size())
    bad(where + ": re has " + std::to_string(re.size()) + " rows, im has " +
        std::to_string(im.size()));
  const Eigen::Index rows = static_cast<Eigen::Index>(re.size());
  CMatrix m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto vre = real_vector(re[static_cast<std::size_t>(r)],
                                 where + ".re row " + std::to_string(r));
    const auto vim = real_vector(im[static_cast<std::size_t>(r)],
                                 where + ".im row " + std::to_string(r));
    if (static_cast<Eigen::Index>(vre.size()) != rows ||
        static_cast<Eigen::Index>(vim.size()) != rows)
      throw Error(ErrorCode::BadDimension,
                  where + " row " + std::to_string(r) +
                      " does not match the row count");
    for (Eigen::Index c = 0; c < rows; ++c)
      m(r, c) = Cplx(vre[static_cast<std::size_t>(c)],
                     vim[static_cast<std::size_t>(c)]);
  }
  return m;
}

CVector complex_vector(const json& j, const std::string& where) {
  const auto re = real_vector(field(j, "re"), where + ".re");
  const auto im = real_vector(field(j, "im"), where + ".im");
  if (re.size() != im.size())
    bad(where + ": re and im lengths differ");
  CVector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t k = 0; k < re.size(); ++k)
    v(static_cast<Eigen::Index>(k)) = Cplx(re[k], im[k]);
  return v;
}

ordered_json grid_json(const CMatrix& m) {
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json rre = ordered_json::array(), rim = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rre.push_back(m(r, c).real());
      rim.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rre));
    im.push_back(std::move(rim));
  }
  return ordered_json{{"re", std::move(re)}, {"im", std::move(im)}};
}

// flat tensor (last qubit fastest) -> nested arrays, one level per qubit
ordered_json nest_tensor(const RVector& flat, int depth, Eigen::Index offset,
                         Eigen::Index stride) {
  ordered_json out = ordered_json::array();
  if (depth == 1) {
    for (Eigen::Index k = 0; k < 3; ++k) out.push_back(flat[offset + k]);
    return out;
  }
  for (Eigen::Index k = 0; k < 3; ++k)
    out.push_back(
        nest_tensor(flat, depth - 1, offset + k * stride, stride / 3));
  return out;
}

void flatten_tensor(const json& j, int depth, RVector& flat,
                    Eigen::Index offset, Eigen::Index stride,
                    const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    bad(where + " must nest triples " + std::to_string(depth) + " deep");
  for (std::size_t k = 0; k < 3; ++k) {
    if (depth == 1) {
      if (!j[k].is_number()) bad(where + " must contain numbers");
      flat[offset + static_cast<Eigen::Index>(k)] = j[k].get<double>();
    } else {
      flatten_tensor(j[k], depth - 1, flat,
                     offset + static_cast<Eigen::Index>(k) * stride,
                     stride / 3, where);
    }
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadValue, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::BadValue, "write failed for " + path);
}

DensityState parse_state_json(const std::string& text, const Tolerances& tol) {
  const json j = parse_json(text);
  if (!j.is_object()) bad("state file must be a JSON object");
  const json& nq = field(j, "n_qubits");
  if (!nq.is_number_integer()) bad("n_qubits must be an integer");
  const int n = nq.get<int>();
  if (n < 1 || n > 12)
    throw Error(ErrorCode::BadDimension,
                "n_qubits out of range: " + std::to_string(n));
  const Eigen::Index dim = Eigen::Index{1} << n;

  DensityState s;
  if (j.contains("matrix")) {
    s = validate_density(complex_grid(j["matrix"], "matrix"), tol);
  } else if (j.contains("pure")) {
    s = pure_state_density(complex_vector(j["pure"], "pure"), tol);
  } else if (j.contains("ensemble")) {
    const json& e = j["ensemble"];
    const auto weights = real_vector(field(e, "weights"), "ensemble.weights");
    const json& pures = field(e, "pures");
    if (!pures.is_array() || pures.size() != weights.size())
      bad("ensemble.pures must match ensemble.weights in length");
    if (weights.empty()) bad("ensemble.weights is empty");
    double sum = 0;
    for (double w : weights) {
      if (!(w > 0))
        throw Error(ErrorCode::BadValue, "ensemble weights must be positive");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw Error(ErrorCode::BadValue,
                  "ensemble weights sum to " + fmt17(sum) + ", expected 1");
    CMatrix rho = CMatrix::Zero(dim, dim);
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const DensityState part = pure_state_density(
          complex_vector(pures[k], "ensemble.pures[" + std::to_string(k) + "]"),
          tol);
      if (part.dim() != dim)
        throw Error(ErrorCode::BadDimension,
                    "ensemble.pures[" + std::to_string(k) +
                        "] does not match n_qubits");
      rho += (weights[k] / sum) * part.matrix;
    }
    s = validate_density(rho, tol);
  } else {
    bad("state file needs one of \"matrix\", \"pure\", \"ensemble\"");
  }
  if (s.n_qubits != n)
    throw Error(ErrorCode::BadDimension,
                "payload implies " + std::to_string(s.n_qubits) +
                    " qubits, n_qubits says " + std::to_string(n));
  return s;
}

DensityState read_state_file(const std::string& path, const Tolerances& tol) {
  return parse_state_json(read_text_file(path), tol);
}

std::string state_to_json(const DensityState& s) {
  ordered_json j;
  j["n_qubits"] = s.n_qubits;
  j["matrix"] = grid_json(s.matrix);
  return j.dump(2) + "\n";
}

void write_state_file(const std::string& path, const DensityState& s) {
  write_text_file(path, state_to_json(s));
}

std::string tensors_to_json(const BlochTensors& t) {
  ordered_json j;
  j["n_qubits"] = t.n_qubits;
  ordered_json ts = ordered_json::object();
  for (const auto& [mask, flat] : t.tensors) {
    const int depth = std::popcount(mask);
    const Eigen::Index stride = flat.size() / 3;
    ts[subset_label(mask)] = nest_tensor(flat, depth, 0, stride);
  }
  j["tensors"] = std::move(ts);
  return j.dump(2) + "\n";
}

BlochTensors parse_tensors_json(const std::string& text) {
  const json j = parse_json(text);
  const json& nq = field(j, "n_qubits");
  if (!nq.is_number_integer()) bad("n_qubits must be an integer");
  BlochTensors t;
  t.n_qubits = nq.get<int>();
  if (t.n_qubits < 1 || t.n_qubits > 6)
    throw Error(ErrorCode::BadDimension,
                "n_qubits out of range: " + std::to_string(t.n_qubits));
  const json& ts = field(j, "tensors");
  if (!ts.is_object()) bad("tensors must be an object");
  for (const auto& [key, value] : ts.items()) {
    if (key.size() < 2 || key[0] != 'T') bad("bad tensor key \"" + key + "\"");
    std::vector<int> qubits;
    for (std::size_t k = 1; k < key.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(key[k])))
        bad("bad tensor key \"" + key + "\"");
      qubits.push_back(key[k] - '0');
      if (qubits.back() < 1 || qubits.back() > t.n_qubits)
        bad("tensor key \"" + key + "\" exceeds n_qubits");
    }
    const Mask mask = mask_from_qubits(qubits);
    if (std::popcount(mask) != static_cast<int>(qubits.size()))
      bad("tensor key \"" + key + "\" repeats a qubit");
    Eigen::Index size = 1;
    for (std::size_t k = 0; k < qubits.size(); ++k) size *= 3;
    RVector flat(size);
    flatten_tensor(value, static_cast<int>(qubits.size()), flat, 0, size / 3,
                   "tensors." + key);
    t.tensors[mask] = std::move(flat);
  }
  return t;
}

std::string unitary_to_json(const LocalUnitary& lu) {
  ordered_json j;
  j["n_qubits"] = lu.n_qubits();
  ordered_json fs = ordered_json::array();
  for (const auto& f : lu.factors) fs.push_back(grid_json(f));
  j["factors"] = std::move(fs);
  return j.dump(2) + "\n";
}

LocalUnitary parse_unitary_json(const std::string& text,
                                const Tolerances& tol) {
  const json j = parse_json(text);
  const json& fs = field(j, "factors");
  if (!fs.is_array() || fs.empty()) bad("factors must be a nonempty array");
  LocalUnitary lu;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const CMatrix m =
        complex_grid(fs[k], "factors[" + std::to_string(k) + "]");
    if (m.rows() != 2)
      throw Error(ErrorCode::BadDimension,
                  "factors[" + std::to_string(k) + "] must be 2x2");
    lu.factors.push_back(m);
  }
  check_local_unitary(lu, tol);
  return lu;
}

LocalUnitary read_unitary_file(const std::string& path,
                               const Tolerances& tol) {
  return parse_unitary_json(read_text_file(path), tol);
}

void write_unitary_file(const std::string& path, const LocalUnitary& lu) {
  write_text_file(path, unitary_to_json(lu));
}

}  // namespace blochlu
