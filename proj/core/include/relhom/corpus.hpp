#pragma once

#include <map>
#include <string>

#include "relhom/homalg.hpp"
#include "relhom/semidualizing.hpp"

namespace relhom {

class UnknownPreset : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Named preset rings: the square-zero example ring k[X,Y]/(X,Y)^2, the
/// Gorenstein controls k[x]/(x^n) for n in {2,3,4}, and the degenerate field.
std::vector<std::string> preset_names();
bool is_preset_name(const std::string& name);
AlgebraPtr preset_ring(const std::string& name, const Field& f);

/// A preset ring together with its named study modules and named short exact
/// sequences, the raw material for the verification battery.
struct Corpus {
  std::string preset;
  AlgebraPtr ring;
  std::map<std::string, ModulePtr> modules;            // R, k, m, omega, omega_tensor_omega
  std::map<std::string, ShortExactSequence> sequences;  // m_in_R, split_omega_k, ...

  const ModulePtr& module(const std::string& name) const;
  std::vector<std::string> module_names() const;
};

Corpus build_corpus(const std::string& preset, const Field& f);

/// The residue surjection R -> k as a module map.
ModuleHom residue_surjection(const AlgebraPtr& R);

}  // namespace relhom
