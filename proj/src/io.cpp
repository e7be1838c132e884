#include "symsep/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace symsep::io {

namespace {

// --- parsing helpers ------------------------------------------------------

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw InvalidInput(std::string("missing field '") + name + "'");
  return *it;
}

Index positive_int(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw InvalidInput(std::string(what) + " must be a positive integer");
  return static_cast<Index>(j.get<long long>());
}

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw InvalidInput(std::string(what) + " must be finite");
  return x;
}

Complex<double> parse_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidInput("complex numbers are stored as [re, im] pairs");
  return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

VectorX<double> parse_vector(const Json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw InvalidInput(std::string(what) + " must be a nonempty array");
  VectorX<double> v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) v[i] = parse_complex(j[static_cast<std::size_t>(i)]);
  return v;
}

Dims parse_dims(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("dims must be a nonempty array");
  Dims dims;
  dims.reserve(j.size());
  const Index limit = guard::max_state_dim();
  Index total = 1;
  for (const Json& d : j) {
    dims.push_back(positive_int(d, "local dimension"));
    if (total > limit / dims.back())  // overflow-safe total * d > limit
      throw GuardExceeded("state dimension exceeds the configured limit");
    total *= dims.back();
  }
  return dims;
}

// Structural only: operations that need unit norm enforce it themselves.
PureState<double> parse_pure(const Dims& dims, const Json& j) {
  VectorX<double> amps = parse_vector(field(j, "amplitudes"), "amplitudes");
  if (amps.size() != product_of(dims))
    throw InvalidInput("amplitude count does not match product of dims");
  return PureState<double>(dims, std::move(amps));
}

ProductState<double> parse_product(const Dims& dims, const Json& j) {
  const Json& jf = field(j, "factors");
  if (!jf.is_array() || jf.empty()) throw InvalidInput("factors must be a nonempty array");
  if (jf.size() != dims.size())
    throw InvalidInput("factor count does not match the number of parties");
  std::vector<VectorX<double>> factors;
  factors.reserve(jf.size());
  for (std::size_t i = 0; i < jf.size(); ++i) {
    factors.push_back(parse_vector(jf[i], "factor"));
    if (factors.back().size() != dims[i])
      throw InvalidInput("factor length does not match the declared local dimension");
  }
  return ProductState<double>(std::move(factors));
}

Ensemble<double> parse_ensemble(const Dims& dims, const Json& j) {
  const Json& jm = field(j, "members");
  if (!jm.is_array() || jm.empty()) throw InvalidInput("members must be a nonempty array");
  std::vector<double> weights;
  std::vector<Ensemble<double>::Member> members;
  weights.reserve(jm.size());
  members.reserve(jm.size());
  for (const Json& m : jm) {
    if (!m.is_object()) throw InvalidInput("ensemble members must be objects");
    weights.push_back(finite_number(field(m, "weight"), "weight"));
    const std::string kind = field(m, "kind").get<std::string>();
    if (kind == "pure")
      members.emplace_back(parse_pure(dims, m));
    else if (kind == "product")
      members.emplace_back(parse_product(dims, m));
    else
      throw InvalidInput("ensemble member kind must be 'pure' or 'product'");
  }
  return Ensemble<double>(std::move(weights), std::move(members));
}

// --- serialization helpers ------------------------------------------------

Json complex_json(const Complex<double>& z) { return Json::array({z.real(), z.imag()}); }

Json vector_json(const VectorX<double>& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

Json dims_json(const Dims& dims) {
  Json out = Json::array();
  for (Index d : dims) out.push_back(static_cast<long long>(d));
  return out;
}

Json header_json(const std::string& kind, const Dims& dims) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["dims"] = dims_json(dims);
  return j;
}

Json parties_json(const std::vector<int>& zero_based) {
  Json out = Json::array();
  for (int p : zero_based) out.push_back(p + 1);
  return out;
}

}  // namespace

StateFile parse_state_file(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {  // parse errors and numeric overflow alike
    throw InvalidInput(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("top-level value must be an object");
  if (positive_int(field(j, "schema_version"), "schema_version") != kSchemaVersion)
    throw InvalidInput("unsupported schema_version");
  const Json& jk = field(j, "kind");
  if (!jk.is_string()) throw InvalidInput("kind must be a string");
  const std::string kind = jk.get<std::string>();
  const Dims dims = parse_dims(field(j, "dims"));

  StateFile out;
  out.kind = kind;
  if (kind == "pure")
    out.value = parse_pure(dims, j);
  else if (kind == "product")
    out.value = parse_product(dims, j);
  else if (kind == "ensemble")
    out.value = parse_ensemble(dims, j);
  else
    throw InvalidInput("kind must be 'pure', 'product' or 'ensemble'");
  return out;
}

Json state_to_json(const PureState<double>& psi) {
  Json j = header_json("pure", psi.dims);
  j["amplitudes"] = vector_json(psi.amplitudes);
  return j;
}

Json state_to_json(const ProductState<double>& phi) {
  Json j = header_json("product", phi.dims());
  Json factors = Json::array();
  for (const auto& f : phi.factors) factors.push_back(vector_json(f));
  j["factors"] = factors;
  return j;
}

Json state_to_json(const Ensemble<double>& e) {
  Json j = header_json("ensemble", e.dims());
  Json members = Json::array();
  for (std::size_t i = 0; i < e.size(); ++i) {
    Json m;
    m["weight"] = e.weights[i];
    if (const auto* pure = std::get_if<PureState<double>>(&e.members[i])) {
      m["kind"] = "pure";
      m["amplitudes"] = vector_json(pure->amplitudes);
    } else {
      m["kind"] = "product";
      Json factors = Json::array();
      for (const auto& f : std::get<ProductState<double>>(e.members[i]).factors)
        factors.push_back(vector_json(f));
      m["factors"] = factors;
    }
    members.push_back(std::move(m));
  }
  j["members"] = members;
  return j;
}

std::string serialize(const StateFile& file) {
  const Json j = std::visit([](const auto& v) { return state_to_json(v); }, file.value);
  return j.dump(2) + "\n";
}

StateFile load_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_file(buf.str());
}

void save_state_file(const StateFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << serialize(file);
  if (!out) throw Error("write failed: " + path);
}

Json bipartition_to_json(const Bipartition& cut) {
  Json j;
  j["side_a"] = parties_json(cut.side_a());
  j["side_b"] = parties_json(cut.side_b());
  return j;
}

Json classification_to_json(const Classification<double>& c) {
  Json j;
  j["verdict"] = verdict_string(c.verdict);
  j["witness"] = c.witness ? bipartition_to_json(*c.witness) : Json(nullptr);
  if (c.factors) {
    Json factors = Json::array();
    for (const auto& f : c.factors->factors) factors.push_back(vector_json(f));
    j["factors"] = factors;
  } else {
    j["factors"] = nullptr;
  }
  Json cuts = Json::array();
  for (const auto& ev : c.evidence) {
    Json e = bipartition_to_json(ev.cut);
    e["schmidt_rank"] = ev.rank;
    Json sv = Json::array();
    for (double s : ev.singular_values) sv.push_back(s);
    e["singular_values"] = sv;
    cuts.push_back(std::move(e));
  }
  j["cuts"] = cuts;
  return j;
}

Json translation_to_json(const TranslationReport<double>& t) {
  Json j;
  j["is_eigenstate"] = t.is_eigenstate;
  j["theta"] = t.theta;
  j["residual"] = t.residual;
  return j;
}

}  // namespace symsep::io
