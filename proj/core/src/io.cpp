#include "qwd/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qwd/errors.hpp"
#include "qwd/rng.hpp"

namespace qwd {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

CMatrix matrix_from(const json& j) {
  try {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
      throw InvalidInput("matrix JSON needs \"dim\" and \"entries\"");
    const int n = j.at("dim").get<int>();
    const json& rows = j.at("entries");
    if (n < 1 || !rows.is_array() || static_cast<int>(rows.size()) != n)
      throw InvalidInput("matrix JSON: \"entries\" must hold dim rows");
    CMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
      const json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw InvalidInput("matrix JSON: row " + std::to_string(r) + " must hold dim entries");
      for (int c = 0; c < n; ++c) {
        const json& z = row[static_cast<std::size_t>(c)];
        if (z.is_number()) {
          m(r, c) = z.get<double>();
        } else if (z.is_array() && z.size() == 2) {
          m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
        } else {
          throw InvalidInput("matrix JSON: entry (" + std::to_string(r) + ", " + std::to_string(c) +
                             ") must be [re, im]");
        }
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("matrix JSON: ") + e.what());
  }
}

json matrix_to(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"entries", std::move(rows)}};
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidInput(what + ": '" + s + "' is not a number");
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_number(s, what);
  if (v != static_cast<int>(v)) throw InvalidInput(what + ": '" + s + "' is not an integer");
  return static_cast<int>(v);
}

bool split_prefix(const std::string& s, const std::string& prefix, std::string& rest) {
  if (s.rfind(prefix + ":", 0) != 0) return false;
  rest = s.substr(prefix.size() + 1);
  return true;
}

}  // namespace

CMatrix parse_matrix_json(const std::string& text) { return matrix_from(parse(text)); }

std::string matrix_to_json(const CMatrix& m) { return matrix_to(m).dump(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InvalidInput("failed writing '" + path + "'");
}

CMatrix load_matrix(const std::string& path) {
  try {
    return parse_matrix_json(read_file(path));
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void save_matrix(const std::string& path, const CMatrix& m) { write_file(path, matrix_to_json(m) + "\n"); }

DensityMatrix load_state(const std::string& path) {
  try {
    return DensityMatrix(load_matrix(path));
  } catch (const NotHermitian& e) {
    throw NotHermitian(path + ": " + e.what());
  } catch (const NotPsd& e) {
    throw NotPsd(path + ": " + e.what());
  } catch (const NotDensity& e) {
    throw NotDensity(path + ": " + e.what());
  }
}

ObservableSet parse_observables_json(const std::string& text) {
  const json j = parse(text);
  std::vector<HermitianMatrix> obs;
  if (j.is_array()) {
    for (const auto& item : j) obs.emplace_back(matrix_from(item));
  } else {
    obs.emplace_back(matrix_from(j));
  }
  if (obs.empty()) throw InvalidInput("observable list is empty");
  return ObservableSet(std::move(obs));
}

ObservableSet load_observables(const std::string& path) {
  try {
    return parse_observables_json(read_file(path));
  } catch (const DimensionMismatch& e) {
    throw DimensionMismatch(path + ": " + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::string observables_to_json(const ObservableSet& a) {
  json arr = json::array();
  for (const auto& o : a) arr.push_back(matrix_to(o.matrix()));
  return arr.dump();
}

ChannelSpec parse_channel_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("kraus") || !j.at("kraus").is_array())
    throw InvalidInput("channel JSON needs a \"kraus\" array");
  std::vector<CMatrix> k;
  for (const auto& item : j.at("kraus")) k.push_back(matrix_from(item));
  return ChannelSpec(std::move(k));
}

ChannelSpec load_channel(const std::string& path) {
  try {
    return parse_channel_json(read_file(path));
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::string channel_to_json(const ChannelSpec& phi) {
  json arr = json::array();
  for (const auto& k : phi.kraus()) arr.push_back(matrix_to(k));
  return json{{"kraus", std::move(arr)}}.dump();
}

ChannelSpec channel_from_selector(const std::string& selector, int dim) {
  std::string rest;
  if (selector == "identity") return ChannelSpec::identity(dim);
  if (split_prefix(selector, "unitary", rest)) return ChannelSpec::unitary(load_matrix(rest));
  if (split_prefix(selector, "depolarizing", rest))
    return ChannelSpec::depolarizing(parse_number(rest, "depolarizing"));
  if (split_prefix(selector, "dephasing", rest))
    return ChannelSpec::dephasing(parse_number(rest, "dephasing"));
  if (split_prefix(selector, "file", rest)) return load_channel(rest);
  throw InvalidInput("unknown channel '" + selector +
                     "' (expected identity, unitary:<file>, depolarizing:<p>, dephasing:<p> or file:<path>)");
}

ObservableSet observables_from_selector(const std::string& selector, int dim, std::uint64_t seed,
                                        std::uint64_t stream) {
  std::string rest;
  if (selector == "symmetric") {
    if (dim != 2) throw DimensionMismatch("the symmetric cost is defined for qubits (dim 2) only");
    return qubit_paulis();
  }
  if (split_prefix(selector, "pauli-products", rest)) {
    const int n = parse_int(rest, "pauli-products");
    if (n < 1 || n > 3) throw InvalidInput("pauli-products:<n> supports n = 1, 2, 3");
    if (dim != (1 << n))
      throw DimensionMismatch("pauli-products:" + rest + " needs dim " + std::to_string(1 << n) +
                              ", got " + std::to_string(dim));
    return pauli_product_set(n);
  }
  if (split_prefix(selector, "random", rest)) {
    const int k = parse_int(rest, "random");
    if (k < 1) throw InvalidInput("random:<k> needs k ≥ 1");
    RngStream rng(seed, stream);
    return random_observables(dim, k, rng);
  }
  if (split_prefix(selector, "file", rest)) {
    ObservableSet a = load_observables(rest);
    if (a.dim() != dim)
      throw DimensionMismatch(rest + ": observables have dim " + std::to_string(a.dim()) +
                              ", states have dim " + std::to_string(dim));
    return a;
  }
  throw InvalidInput("unknown cost '" + selector +
                     "' (expected symmetric, pauli-products:<n>, random:<k> or file:<path>)");
}

}  // namespace qwd
