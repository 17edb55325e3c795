// Command-line front end: ring validation, resolutions, (relative) Tor/Ext,
// semidualizing certification, long exact sequences, purity, and the
// theorem-verification harness with machine-readable reports.

#include <algorithm>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "relhom/purity.hpp"
#include "relhom/serialization.hpp"
#include "relhom/verify.hpp"

namespace {

using namespace relhom;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct GlobalOptions {
  std::string preset = "square_zero_2vars";
  std::uint32_t p = 5;
  std::string field_kind = "Fp";
  std::size_t bound = 6;
  std::uint64_t seed = 0x5eed2012;
  std::string out_path;

  Field field() const { return field_kind == "Q" ? Field::rationals() : Field::prime(p); }
};

/// Resolves "preset:<name>" against the active preset corpus, otherwise loads
/// a module file.
ModulePtr resolve_module(const GlobalOptions& g, const std::string& spec) {
  if (spec.rfind("preset:", 0) == 0) {
    Corpus corpus = build_corpus(g.preset, g.field());
    return corpus.module(spec.substr(7));
  }
  return module_from_json(read_text_file(spec), g.field());
}

void emit(const GlobalOptions& g, const std::string& table, const std::string& json_text) {
  std::cout << table;
  if (!g.out_path.empty()) write_text_file(g.out_path, json_text);
}

std::string dims_table(const std::string& label, const std::vector<std::size_t>& dims) {
  std::string s = label + "\n degree:";
  for (std::size_t i = 0; i < dims.size(); ++i) s += "\t" + std::to_string(i);
  s += "\n dim:   ";
  for (std::size_t d : dims) s += "\t" + std::to_string(d);
  return s + "\n";
}

nlohmann::json dims_json(const std::vector<std::size_t>& dims) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t d : dims) j.push_back(d);
  return j;
}

RelTorFlavor parse_flavor(const std::string& s) {
  if (s == "fc-m") return RelTorFlavor::fc_m;
  if (s == "pc-m") return RelTorFlavor::pc_m;
  if (s == "m-fc") return RelTorFlavor::m_fc;
  if (s == "m-pc") return RelTorFlavor::m_pc;
  throw InputParseError("unknown flavor: " + s);
}

RelTorStrategy parse_strategy(const std::string& s) {
  if (s == "direct") return RelTorStrategy::direct;
  if (s == "formula") return RelTorStrategy::formula;
  if (s == "cross-check") return RelTorStrategy::cross_check;
  throw InputParseError("unknown strategy: " + s);
}

int run_ring_validate(const GlobalOptions& g, const std::string& target) {
  AlgebraPtr ring;
  if (is_preset_name(target)) {
    ring = preset_ring(target, g.field());
  } else {
    ring = ring_from_json(read_text_file(target));
  }
  std::cout << "ring valid: dim " << ring->dim() << " over " << ring->field().name()
            << ", maximal ideal of dimension " << ring->maximal_ideal_basis().cols()
            << ", radical nilpotency index " << ring->radical_nilpotency_index() << "\n";
  nlohmann::json j;
  j["valid"] = true;
  j["dim"] = ring->dim();
  j["field"] = ring->field().name();
  j["maximal_ideal_dim"] = ring->maximal_ideal_basis().cols();
  emit(g, "", j.dump(2));
  return kExitOk;
}

int run_resolve(const GlobalOptions& g, const std::string& spec, std::size_t length,
                bool betti_only) {
  ModulePtr M = resolve_module(g, spec);
  ResolutionCache cache;
  auto res = cache.get(M, length);
  res->validate();
  std::string label =
      betti_only ? "betti numbers of " + spec : "minimal free resolution of " + spec;
  emit(g, dims_table(label, res->betti), dims_json(res->betti).dump(2));
  if (!betti_only) {
    for (std::size_t i = 0; i < res->differentials.size(); ++i)
      std::cout << " d_" << (i + 1) << ": R^" << res->betti[i + 1] << " -> R^" << res->betti[i]
                << "\n";
  }
  return kExitOk;
}

int run_tor_ext(const GlobalOptions& g, const std::string& op, const std::string& specM,
                const std::string& specN, std::size_t degree) {
  ModulePtr M = resolve_module(g, specM);
  ModulePtr N = resolve_module(g, specN);
  ResolutionCache cache;
  auto dims = op == "tor" ? tor_dims(cache, M, N, degree) : ext_dims(cache, M, N, degree);
  emit(g, dims_table(op + "(" + specM + ", " + specN + ")", dims), dims_json(dims).dump(2));
  return kExitOk;
}

int run_reltor(const GlobalOptions& g, const std::string& specM, const std::string& specN,
               const std::string& specC, const std::string& flavor, std::size_t degree,
               const std::string& strategy) {
  ModulePtr M = resolve_module(g, specM);
  ModulePtr N = resolve_module(g, specN);
  ModulePtr C = resolve_module(g, specC);
  ResolutionCache cache;
  RelativeEngine engine(cache, C, std::max(g.bound, degree + 1));
  auto dims = engine.rel_tor_dims(parse_flavor(flavor), M, N, degree, parse_strategy(strategy));
  emit(g,
       dims_table("relative Tor " + flavor + "(" + specM + ", " + specN + ") with C=" + specC,
                  dims),
       dims_json(dims).dump(2));
  return kExitOk;
}

int run_semidualizing(const GlobalOptions& g, const std::string& specC, std::size_t bound) {
  ModulePtr C = resolve_module(g, specC);
  ResolutionCache cache;
  auto check = is_semidualizing(cache, C, bound);
  nlohmann::json j;
  j["semidualizing"] = check.ok;
  if (check.ok) {
    std::cout << "certificate: homothety bijective, Ext^i(C,C) = 0 for 1 <= i <= " << bound
              << "\n";
    j["bound"] = check.certificate.bound;
  } else {
    std::cout << "refused: " << check.refusal << "\n";
    j["refusal"] = check.refusal;
  }
  emit(g, "", j.dump(2));
  return check.ok ? kExitOk : kExitCheckFailed;
}

int run_classes(const GlobalOptions& g, const std::string& specM, const std::string& specC,
                std::size_t bound) {
  ModulePtr M = resolve_module(g, specM);
  ModulePtr C = resolve_module(g, specC);
  ResolutionCache cache;
  auto check = is_semidualizing(cache, C, bound);
  if (!check.ok) {
    std::cerr << "C is not semidualizing: " << check.refusal << "\n";
    return kExitInputError;
  }
  auto a = in_auslander_class(cache, C, M, bound);
  auto b = in_bass_class(cache, C, M, bound);
  auto verdict = [](const ClassVerdict& v) {
    switch (v.kind) {
      case ClassVerdictKind::in_class: return std::string("IN (") + v.detail + ")";
      case ClassVerdictKind::out: return std::string("OUT (") + v.detail + ")";
      case ClassVerdictKind::unknown_at_bound:
        return std::string("UNKNOWN-AT-BOUND ") + std::to_string(v.bound);
    }
    return std::string("?");
  };
  std::cout << "Auslander class: " << verdict(a) << "\n";
  std::cout << "Bass class:      " << verdict(b) << "\n";
  nlohmann::json j;
  j["auslander"] = verdict(a);
  j["bass"] = verdict(b);
  emit(g, "", j.dump(2));
  return kExitOk;
}

int run_fcpd(const GlobalOptions& g, const std::string& specM, const std::string& specC,
             std::size_t bound) {
  ModulePtr M = resolve_module(g, specM);
  ModulePtr C = resolve_module(g, specC);
  ResolutionCache cache;
  RelativeEngine engine(cache, C, bound);
  HomologicalDim fc = engine.fc_pd(M, bound);
  HomologicalDim pc = engine.pc_pd(M, bound);
  std::cout << "fc-pd = " << fc.str() << ", pc-pd = " << pc.str() << "\n";
  if (!(fc == pc)) {
    std::cerr << "fc-pd and pc-pd disagree\n";
    return kExitCheckFailed;
  }
  nlohmann::json j;
  j["fc_pd"] = fc.str();
  j["pc_pd"] = pc.str();
  emit(g, "", j.dump(2));
  return kExitOk;
}

int run_les(const GlobalOptions& g, const std::string& ses_path, const std::string& specN,
            std::size_t length) {
  ShortExactSequence ses = ses_from_json(read_text_file(ses_path), g.field());
  ModulePtr N = resolve_module(g, specN);
  ResolutionCache cache;
  ChainComplex les = horseshoe_les(cache, ses, N, length);
  auto rep = les.is_exact();
  std::cout << "long exact sequence through degree " << length << ": "
            << (rep.exact ? "exact at every spot" : "NOT EXACT") << "\n";
  nlohmann::json j;
  j["exact"] = rep.exact;
  nlohmann::json dims = nlohmann::json::array();
  for (int s = les.lo(); s <= les.hi(); ++s) dims.push_back(les.module_at(s)->dim());
  j["spot_dims"] = std::move(dims);
  emit(g, "", j.dump(2));
  return rep.exact ? kExitOk : kExitCheckFailed;
}

int run_purity(const GlobalOptions& g, const std::string& inclusion_path) {
  ModuleHom inclusion = inclusion_from_json(read_text_file(inclusion_path), g.field());
  auto cert = is_pure_submodule(inclusion);
  nlohmann::json j;
  j["pure"] = cert.has_value();
  if (cert) {
    cert->verify();
    std::cout << "pure (split): retraction found and verified\n";
  } else {
    std::cout << "not pure: no retraction exists (finite length, pure = split)\n";
  }
  emit(g, "", j.dump(2));
  return kExitOk;
}

int run_corpus(const GlobalOptions& g) {
  nlohmann::json j;
  for (const auto& name : preset_names()) {
    Corpus corpus = build_corpus(name, g.field());
    std::cout << name << " (dim " << corpus.ring->dim() << "):";
    nlohmann::json mods = nlohmann::json::array();
    for (const auto& mod : corpus.module_names()) {
      std::cout << " " << mod << "(" << corpus.module(mod)->dim() << ")";
      mods.push_back(mod);
    }
    std::cout << "\n";
    j[name] = std::move(mods);
  }
  emit(g, "", j.dump(2));
  return kExitOk;
}

int run_verify(const GlobalOptions& g) {
  VerifyOptions opts;
  opts.preset = g.preset;
  opts.field = g.field();
  opts.bound = g.bound;
  opts.seed = g.seed;
  VerificationReport report = verify_battery(opts);
  std::cout << report.to_table();
  if (!g.out_path.empty()) write_text_file(g.out_path, report.to_json());
  return report.all_pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact relative homological algebra over finite-dimensional local algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  GlobalOptions g;
  app.add_option("--preset", g.preset, "active preset ring for preset: module specs")
      ->default_val("square_zero_2vars");
  app.add_option("--p", g.p, "prime for F_p coefficients")->default_val(5);
  app.add_option("--field", g.field_kind, "coefficient field: Fp or Q")
      ->check(CLI::IsMember({"Fp", "Q"}))
      ->default_val("Fp");
  app.add_option("--bound", g.bound, "vanishing bound for certificates")->default_val(6);
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_option("--out", g.out_path, "write a JSON report to this path");

  // ring validate <file|preset>
  auto* ring = app.add_subcommand("ring", "ring table operations");
  auto* validate = ring->add_subcommand("validate", "validate a ring file or preset");
  std::string ring_target;
  validate->add_option("target", ring_target, "ring file or preset name")->required();

  std::string spec_m, spec_n, spec_c, flavor = "fc-m", strategy = "cross-check", ses_path,
                                      inclusion_path;
  std::size_t length = 6, degree = 0, sbound = 6;

  auto* resolve = app.add_subcommand("resolve", "minimal free resolution");
  resolve->add_option("module", spec_m)->required();
  resolve->add_option("--length", length)->default_val(6);

  auto* betti = app.add_subcommand("betti", "Betti numbers");
  betti->add_option("module", spec_m)->required();
  betti->add_option("--length", length)->default_val(6);

  auto* tor_cmd = app.add_subcommand("tor", "absolute Tor dimensions");
  tor_cmd->add_option("M", spec_m)->required();
  tor_cmd->add_option("N", spec_n)->required();
  tor_cmd->add_option("--degree", degree)->default_val(4);

  auto* ext_cmd = app.add_subcommand("ext", "absolute Ext dimensions");
  ext_cmd->add_option("M", spec_m)->required();
  ext_cmd->add_option("N", spec_n)->required();
  ext_cmd->add_option("--degree", degree)->default_val(4);

  auto* reltor = app.add_subcommand("reltor", "relative Tor with respect to C");
  reltor->add_option("M", spec_m)->required();
  reltor->add_option("N", spec_n)->required();
  reltor->add_option("--with", spec_c, "semidualizing module C")->required();
  reltor->add_option("--flavor", flavor)->check(CLI::IsMember({"fc-m", "pc-m", "m-fc", "m-pc"}));
  reltor->add_option("--degree", degree)->default_val(4);
  reltor->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"direct", "formula", "cross-check"}));

  auto* semi = app.add_subcommand("semidualizing", "certify a semidualizing module");
  semi->add_option("C", spec_c)->required();
  semi->add_option("--bound", sbound)->default_val(6);

  auto* classes = app.add_subcommand("classes", "Auslander/Bass class membership");
  classes->add_option("M", spec_m)->required();
  classes->add_option("--with", spec_c)->required();
  classes->add_option("--bound", sbound)->default_val(6);

  auto* fcpd = app.add_subcommand("fcpd", "F_C- and P_C-projective dimension");
  fcpd->add_option("M", spec_m)->required();
  fcpd->add_option("--with", spec_c)->required();
  fcpd->add_option("--bound", sbound)->default_val(6);

  auto* les = app.add_subcommand("les", "Tor long exact sequence of a short exact sequence");
  les->add_option("ses-file", ses_path)->required();
  les->add_option("N", spec_n)->required();
  les->add_option("--length", length)->default_val(6);

  auto* purity = app.add_subcommand("purity", "purity (splitness) of an inclusion");
  purity->add_option("inclusion-file", inclusion_path)->required();

  app.add_subcommand("corpus", "list preset rings and their named modules");
  app.add_subcommand("verify-paper", "run the full theorem battery and emit a report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_ring_validate(g, ring_target);
    if (resolve->parsed()) return run_resolve(g, spec_m, length, false);
    if (betti->parsed()) return run_resolve(g, spec_m, length, true);
    if (tor_cmd->parsed()) return run_tor_ext(g, "tor", spec_m, spec_n, degree);
    if (ext_cmd->parsed()) return run_tor_ext(g, "ext", spec_m, spec_n, degree);
    if (reltor->parsed()) return run_reltor(g, spec_m, spec_n, spec_c, flavor, degree, strategy);
    if (semi->parsed()) return run_semidualizing(g, spec_c, sbound);
    if (classes->parsed()) return run_classes(g, spec_m, spec_c, sbound);
    if (fcpd->parsed()) return run_fcpd(g, spec_m, spec_c, sbound);
    if (les->parsed()) return run_les(g, ses_path, spec_n, length);
    if (purity->parsed()) return run_purity(g, inclusion_path);
    if (app.get_subcommand("corpus")->parsed()) return run_corpus(g);
    if (app.get_subcommand("verify-paper")->parsed()) return run_verify(g);
    if (ring->parsed()) {
      std::cerr << "ring needs a subcommand (validate)\n";
      return kExitInputError;
    }
  } catch (const InputParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const UnknownPreset& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const AlgebraError& e) {
    std::cerr << "ring axiom violated [" << axiom_name(e.axiom()) << " witness ("
              << e.witness()[0] << "," << e.witness()[1] << "," << e.witness()[2]
              << ")]: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NotExactError& e) {
    std::cerr << "sequence error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NotInjectiveError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const CrossCheckMismatch& e) {
    std::cerr << "cross-check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}
