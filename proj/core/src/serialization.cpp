#include "relhom/serialization.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace relhom {

namespace {

using nlohmann::json;

json scalar_to_json(const Scalar& s) {
  if (s.field().is_prime_field()) return static_cast<long>(s.residue());
  const mpq_class& q = s.rational();
  if (q.get_den() == 1) {
    if (q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
  }
  return q.get_str();  // "a/b"
}

Scalar scalar_from_json(const json& j, const Field& f) {
  if (j.is_number_integer()) return Scalar(f, j.get<long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (f.is_prime_field()) {
      try {
        return Scalar(f, std::stol(s));
      } catch (const std::exception&) {
        throw InputParseError("bad residue literal: " + s);
      }
    }
    try {
      mpq_class q(s);
      q.canonicalize();
      return Scalar::from_rational(q);
    } catch (const std::invalid_argument&) {
      throw InputParseError("bad rational literal: " + s);
    }
  }
  throw InputParseError("scalar entries must be integers or strings");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const Field& f, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw InputParseError("matrix has wrong row count");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw InputParseError("matrix has wrong column count");
    for (std::size_t c = 0; c < cols; ++c) m.set(i, c, scalar_from_json(j[i][c], f));
  }
  return m;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputParseError("invalid JSON");
  return j;
}

Field field_from_json(const json& j) {
  std::string kind = j.value("field", "Fp");
  if (kind == "Q") return Field::rationals();
  if (kind == "Fp") {
    if (!j.contains("p")) throw InputParseError("prime field needs \"p\"");
    long p = j["p"].get<long>();
    if (p < 2) throw InputParseError("p must be a prime >= 2");
    try {
      return Field::prime(static_cast<std::uint32_t>(p));
    } catch (const std::invalid_argument& e) {
      throw InputParseError(e.what());
    }
  }
  throw InputParseError("field must be \"Fp\" or \"Q\"");
}

AlgebraPtr ring_from_json_object(const json& j) {
  Field f = field_from_json(j);
  std::size_t dim = j.at("dim").get<std::size_t>();
  std::size_t unit = j.value("unit", 0);
  std::vector<std::string> names;
  if (j.contains("basis_names")) names = j["basis_names"].get<std::vector<std::string>>();
  const json& mult = j.at("mult");
  if (!mult.is_array() || mult.size() != dim) throw InputParseError("mult table has wrong size");
  FiniteLocalAlgebra::MultTable table(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!mult[i].is_array() || mult[i].size() != dim)
      throw InputParseError("mult table has wrong size");
    table[i].resize(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      if (!mult[i][c].is_array() || mult[i][c].size() != dim)
        throw InputParseError("mult table entry has wrong length");
      for (std::size_t l = 0; l < dim; ++l)
        table[i][c].push_back(scalar_from_json(mult[i][c][l], f));
    }
  }
  return FiniteLocalAlgebra::from_structure_constants(f, dim, table, unit, std::move(names));
}

AlgebraPtr ring_from_json_value(const json& j, const Field& field) {
  if (j.is_string()) {
    std::string name = j.get<std::string>();
    if (!is_preset_name(name)) throw UnknownPreset("unknown preset: " + name);
    return preset_ring(name, field);
  }
  if (j.is_object()) return ring_from_json_object(j);
  throw InputParseError("\"ring\" must be a preset name or an inline ring object");
}

ModulePtr module_from_json_value(const json& j, const Field& field, AlgebraPtr ring) {
  if (!ring) ring = ring_from_json_value(j.at("ring"), field);
  std::size_t dim = j.at("dim").get<std::size_t>();
  const json& actions = j.at("actions");
  if (!actions.is_array() || actions.size() != ring->dim())
    throw InputParseError("need one action matrix per ring basis element");
  std::vector<Matrix> acts;
  for (std::size_t i = 0; i < ring->dim(); ++i)
    acts.push_back(matrix_from_json(actions[i], ring->field(), dim, dim));
  try {
    return FDModule::create(ring, dim, std::move(acts));
  } catch (const ModuleInvariantError& e) {
    throw InputParseError(std::string("module file violates an invariant: ") + e.what());
  }
}

}  // namespace

std::string ring_to_json(const AlgebraPtr& R) {
  json j;
  if (R->field().is_prime_field()) {
    j["field"] = "Fp";
    j["p"] = R->field().characteristic();
  } else {
    j["field"] = "Q";
  }
  j["dim"] = R->dim();
  j["basis_names"] = R->basis_names();
  j["unit"] = R->unit_index();
  json mult = json::array();
  for (std::size_t i = 0; i < R->dim(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < R->dim(); ++c) {
      json entry = json::array();
      Matrix prod = R->basis_product(i, c);
      for (std::size_t l = 0; l < R->dim(); ++l) entry.push_back(scalar_to_json(prod.at(l, 0)));
      row.push_back(std::move(entry));
    }
    mult.push_back(std::move(row));
  }
  j["mult"] = std::move(mult);
  return j.dump(2);
}

AlgebraPtr ring_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.is_object()) throw InputParseError("ring file must hold a JSON object");
  return ring_from_json_object(j);
}

std::string module_to_json(const ModulePtr& M, const std::string& ring_name) {
  json j;
  if (!ring_name.empty()) {
    j["ring"] = ring_name;
  } else {
    j["ring"] = json::parse(ring_to_json(M->ring()));
  }
  j["dim"] = M->dim();
  json actions = json::array();
  for (std::size_t i = 0; i < M->ring()->dim(); ++i) actions.push_back(matrix_to_json(M->action(i)));
  j["actions"] = std::move(actions);
  return j.dump(2);
}

ModulePtr module_from_json(const std::string& text, const Field& field) {
  json j = parse(text);
  return module_from_json_value(j, field, nullptr);
}

ShortExactSequence ses_from_json(const std::string& text, const Field& field) {
  json j = parse(text);
  AlgebraPtr ring = ring_from_json_value(j.at("ring"), field);
  ModulePtr sub = module_from_json_value(j.at("sub"), field, ring);
  ModulePtr mid = module_from_json_value(j.at("mid"), field, ring);
  ModulePtr quot = module_from_json_value(j.at("quot"), field, ring);
  Matrix inject = matrix_from_json(j.at("inject"), ring->field(), mid->dim(), sub->dim());
  Matrix surject = matrix_from_json(j.at("surject"), ring->field(), quot->dim(), mid->dim());
  try {
    ShortExactSequence ses{ModuleHom(sub, mid, std::move(inject)),
                           ModuleHom(mid, quot, std::move(surject))};
    ses.verify();
    return ses;
  } catch (const ModuleInvariantError& e) {
    throw InputParseError(std::string("sequence maps are not R-linear: ") + e.what());
  }
}

ModuleHom inclusion_from_json(const std::string& text, const Field& field) {
  json j = parse(text);
  AlgebraPtr ring = ring_from_json_value(j.at("ring"), field);
  ModulePtr sub = module_from_json_value(j.at("sub"), field, ring);
  ModulePtr ambient = module_from_json_value(j.at("ambient"), field, ring);
  Matrix m = matrix_from_json(j.at("matrix"), ring->field(), ambient->dim(), sub->dim());
  try {
    return ModuleHom(sub, ambient, std::move(m));
  } catch (const ModuleInvariantError& e) {
    throw InputParseError(std::string("inclusion is not R-linear: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputParseError("cannot write file: " + path);
  out << content;
}

}  // namespace relhom
