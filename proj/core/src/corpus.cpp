#include "relhom/corpus.hpp"

namespace relhom {

namespace {

AlgebraPtr square_zero_2vars(const Field& f) {
  // k[X,Y]/(X,Y)^2: basis {1, x, y}, every product of two radical elements zero
  const std::size_t d = 3;
  std::vector<std::vector<std::vector<long>>> mult(
      d, std::vector<std::vector<long>>(d, std::vector<long>(d, 0)));
  auto set = [&](std::size_t i, std::size_t j, std::size_t l) { mult[i][j][l] = 1; };
  for (std::size_t j = 0; j < d; ++j) {
    set(0, j, j);
    if (j != 0) set(j, 0, j);
  }
  return FiniteLocalAlgebra::from_int_table(f, d, mult, 0, {"1", "x", "y"});
}

AlgebraPtr truncated_poly(const Field& f, std::size_t n) {
  // k[x]/(x^n), basis {1, x, ..., x^{n-1}}
  std::vector<std::vector<std::vector<long>>> mult(
      n, std::vector<std::vector<long>>(n, std::vector<long>(n, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i + j < n) mult[i][j][i + j] = 1;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
  return FiniteLocalAlgebra::from_int_table(f, n, mult, 0, names);
}

AlgebraPtr field_preset(const Field& f) {
  return FiniteLocalAlgebra::from_int_table(f, 1, {{{1}}}, 0, {"1"});
}

std::string normalize_preset(const std::string& name) {
  // accept truncated_poly(3) as a spelling of truncated_poly_3
  std::string out = name;
  for (char& c : out) {
    if (c == '(') c = '_';
  }
  if (!out.empty() && out.back() == ')') out.pop_back();
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"square_zero_2vars", "truncated_poly_2", "truncated_poly_3", "truncated_poly_4",
          "field"};
}

bool is_preset_name(const std::string& name) {
  std::string n = normalize_preset(name);
  for (const auto& p : preset_names())
    if (p == n) return true;
  return false;
}

AlgebraPtr preset_ring(const std::string& name, const Field& f) {
  std::string n = normalize_preset(name);
  if (n == "square_zero_2vars") return square_zero_2vars(f);
  if (n == "truncated_poly_2") return truncated_poly(f, 2);
  if (n == "truncated_poly_3") return truncated_poly(f, 3);
  if (n == "truncated_poly_4") return truncated_poly(f, 4);
  if (n == "field") return field_preset(f);
  throw UnknownPreset("unknown preset: " + name);
}

ModuleHom residue_surjection(const AlgebraPtr& R) {
  return ModuleHom(free_module(R, 1), residue_field_module(R), R->residue_row(), false);
}

const ModulePtr& Corpus::module(const std::string& name) const {
  auto it = modules.find(name);
  if (it == modules.end()) throw UnknownPreset("unknown corpus module: " + name);
  return it->second;
}

std::vector<std::string> Corpus::module_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : modules) out.push_back(k);
  return out;
}

Corpus build_corpus(const std::string& preset, const Field& f) {
  Corpus c;
  c.preset = normalize_preset(preset);
  c.ring = preset_ring(preset, f);

  ModulePtr R = free_module(c.ring, 1);
  ModulePtr k = residue_field_module(c.ring);
  ModuleHom res_map = residue_surjection(c.ring);
  Submodule m = kernel(res_map);
  ModulePtr omega = canonical_module(c.ring);
  ModulePtr omega2 = tensor_module(omega, omega).module;

  c.modules = {{"R", R},
               {"k", k},
               {"m", m.module},
               {"omega", omega},
               {"omega_tensor_omega", omega2}};

  // 0 -> m -> R -> k -> 0
  c.sequences.emplace("m_in_R", ShortExactSequence{m.inclusion, res_map});

  // split 0 -> omega -> omega + k -> k -> 0
  DirectSum s = direct_sum(omega, k);
  c.sequences.emplace("split_omega_k", ShortExactSequence{s.incl_left, s.proj_right});

  if (c.preset == "square_zero_2vars") {
    // 0 -> R/xR -> omega -> k -> 0: the cyclic submodule generated by the
    // dual basis vector of y inside omega = Hom_k(R, k)
    Matrix gen(f, 3, 1);
    gen.set_int(2, 0, 1);
    Submodule sub = submodule_spanned_by(omega, gen);
    QuotientModule quo = quotient_by(omega, gen);
    c.sequences.emplace("cyclic_in_omega", ShortExactSequence{sub.inclusion, quo.projection});
  }
  if (c.preset.rfind("truncated_poly", 0) == 0) {
    // 0 -> socle -> R -> R/socle -> 0 with socle = x^{n-1} R
    Matrix gen(f, c.ring->dim(), 1);
    gen.set_int(c.ring->dim() - 1, 0, 1);
    Submodule soc = submodule_spanned_by(R, gen);
    QuotientModule quo = quotient_by(R, gen);
    c.sequences.emplace("socle_in_R", ShortExactSequence{soc.inclusion, quo.projection});
  }
  for (auto& [name, ses] : c.sequences) ses.verify();
  return c;
}

}  // namespace relhom
