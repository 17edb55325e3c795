#pragma once

#include <string>

#include "relhom/corpus.hpp"

namespace relhom {

class InputParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ring file format:
///   { "field": "Fp"|"Q", "p": 5, "dim": 3, "basis_names": ["1","x","y"],
///     "mult": [[[c,...],...],...], "unit": 0 }
/// with entries integers (mod p) or rational strings "a/b".
std::string ring_to_json(const AlgebraPtr& R);
AlgebraPtr ring_from_json(const std::string& text);

/// Module file format:
///   { "ring": "square_zero_2vars" | <inline ring object>, "dim": n,
///     "actions": [matrix, ...] }
/// with matrices row-major nested arrays. Preset ring names resolve against
/// `field` (used only when "ring" is a name).
std::string module_to_json(const ModulePtr& M, const std::string& ring_name = "");
ModulePtr module_from_json(const std::string& text, const Field& field);

/// Short exact sequence file: { "ring": ..., "sub": module, "mid": module,
/// "quot": module, "inject": matrix, "surject": matrix }.
ShortExactSequence ses_from_json(const std::string& text, const Field& field);

/// Inclusion file: { "ring": ..., "sub": module, "ambient": module,
/// "matrix": matrix }.
ModuleHom inclusion_from_json(const std::string& text, const Field& field);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace relhom
