#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "taumod/suite.hpp"

using namespace taumod;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2 };

struct Options {
  std::string file;
  std::string module, morphism, map, left, right, property, kind, corpus = "default", output, witness_dir;
  std::uint64_t seed = 0;
  unsigned ext = 1, q = 3, d = 2;
  std::size_t n = 0, rank = 1, ring = 0, count = 20;
  bool json_out = false, timings = false;
};

void emit(const Options& o, const json& machine, const std::string& human) {
  std::string text = o.json_out ? canonical_dump(machine) : human;
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw InputError("", "cannot write " + o.output);
  out << text;
}

template <class T>
const T& pick(const std::map<std::string, T>& items, const std::string& name, const std::string& what,
              const std::string& flag) {
  if (!name.empty()) {
    auto it = items.find(name);
    if (it == items.end()) throw InputError("", "no " + what + " named \"" + name + "\"");
    return it->second;
  }
  if (items.size() != 1)
    throw InputError("", "the document has " + std::to_string(items.size()) + " " + what + "s; choose one with " + flag);
  return items.begin()->second;
}

const ModulePtr& pick_module(const Environment& env, const std::string& name) {
  return pick(env.modules, name, "module", "--module");
}
const ModuleMorphism& pick_morphism(const Environment& env, const std::string& name) {
  return pick(env.morphisms, name, "morphism", "--morphism");
}

int finish(const Options& o, const VerifyReport& rep, const std::string& human) {
  emit(o, rep.to_json(o.timings), human);
  return rep.failed() ? kFail : kPass;
}

std::string yes_no(bool b) { return b ? "true\n" : "false\n"; }

int cmd_check(const Options& o) {
  const Environment env = load_environment(o.file);
  if (o.property == "nil-iso") {
    const auto& f = pick_morphism(env, o.morphism);
    VerifyReport rep("nil-iso");
    if (!is_nil_isomorphism(f))
      rep.fail("kernel or cokernel is not nilpotent",
               {{"kernel", kernel(f).module->dim()}, {"cokernel", cokernel(f).module->dim()}});
    return finish(o, rep, yes_no(!rep.failed()));
  }
  const auto& m = pick_module(env, o.module);
  if (o.property == "flat") {
    auto rep = check_flat(m);
    return finish(o, rep, yes_no(!rep.failed()) + (rep.failed() ? rep.detail + "\n" : ""));
  }
  if (o.property == "projective") {
    auto rep = check_projective_over_S(m);
    return finish(o, rep, yes_no(!rep.failed()) + (rep.failed() ? rep.detail + "\n" : ""));
  }
  VerifyReport rep(o.property);
  const bool holds = o.property == "unit" ? m->is_unit() : m->is_nilpotent();
  if (!holds) rep.fail("module is not " + o.property, {{"dim", m->dim()}});
  return finish(o, rep, yes_no(holds));
}

json ideal_json(const Ideal& i) {
  json out = json::array();
  for (std::size_t k = 0; k < i.dim(); ++k) out.push_back(vector_json(*i.parent()->field(), i.space().vector(k)));
  return out;
}

int cmd_fitting(const Options& o) {
  const Environment env = load_environment(o.file);
  const auto& m = pick_module(env, o.module);
  const auto& s = m->s();
  const Ideal i = fitting_ideal(m, o.n, o.seed);
  const Ideal c = ideal_contract(*s, i);
  const bool extended = ideal_extend(*s, c) == i;
  json out = {{"n", o.n}, {"dim", i.dim()}, {"basis", ideal_json(i)}, {"contraction", ideal_json(c)},
              {"extended", extended}};
  std::ostringstream h;
  h << "Fitt_" << o.n << ": dimension " << i.dim() << " over F_" << s->field()->q() << (i.is_zero() ? " (zero)" : "")
    << (i.is_whole() ? " (unit ideal)" : "") << "\n"
    << "extended from Lambda: " << (extended ? "true" : "false") << "\n";
  emit(o, out, h.str());
  return kPass;
}

std::string matrix_text(const GaloisField& f, const Matrix& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << f.format(m(i, j));
    out << "]\n";
  }
  return out.str();
}

int cmd_solutions(const Options& o) {
  const Environment env = load_environment(o.file);
  const auto& m = pick_module(env, o.module);
  auto sol = solutions(m, o.ext);
  const auto& f = *m->field();
  json out = {{"ext", o.ext},
              {"dim", sol.dim()},
              {"orbit", sol.orbit},
              {"sigma", matrix_json(f, sol.sigma)},
              {"basis", matrix_json(f, sol.basis)}};
  out["free_rank"] = sol.free_rank ? json(*sol.free_rank) : json();
  std::ostringstream h;
  h << "Sol over R (x) F_" << f.q() << "^" << o.ext << ": dimension " << sol.dim() << " over F_" << f.q() << "\n";
  if (sol.free_rank) h << "free over Lambda of rank " << *sol.free_rank << "\n";
  h << "sigma:\n" << matrix_text(f, sol.sigma);
  emit(o, out, h.str());
  return kPass;
}

int cmd_charpoly(const Options& o) {
  const Environment env = load_environment(o.file);
  const auto& m = pick_module(env, o.module);
  auto cp = galois_charpoly(m);
  const auto& lam = *m->s()->lambda();
  json coeffs = json::array();
  for (auto& c : cp.coeffs) coeffs.push_back(vector_json(*lam.field(), c));
  const std::string text = format_poly_over(lam, cp.coeffs);
  emit(o, {{"charpoly", text}, {"coefficients", coeffs}, {"ext", cp.sol.extension_degree}, {"rank", cp.rank}},
       text + "\n");
  return kPass;
}

int write_module(const Options& o, const std::string& name, const ModulePtr& m, json extra, const std::string& human) {
  DocumentWriter w;
  w.add_module(name, m);
  if (!extra.empty()) w.set("result", std::move(extra));
  if (o.json_out || !o.output.empty()) {
    Options j = o;
    j.json_out = true;
    emit(j, w.document(), "");
  } else {
    std::cout << human << canonical_dump(w.document());
  }
  return kPass;
}

int cmd_descend(const Options& o) {
  const Environment env = load_environment(o.file);
  auto d = artinian_descend(pick_module(env, o.module), o.seed);
  const auto& f = *d.iso.source()->field();
  return write_module(o, "descended", d.descended,
                      {{"iso", matrix_json(f, d.iso.matrix())},
                       {"power", d.power},
                       {"relations_over_section", d.relations_over_section}},
                      "M/mM has dimension " + std::to_string(d.descended->dim()) + "; M is isomorphic to (M/mM) (x) R\n");
}

int cmd_tensor(const Options& o) {
  const Environment env = load_environment(o.file);
  auto t = tensor(pick_module(env, o.left), pick_module(env, o.right));
  return write_module(o, "tensor", t, json::object(), "");
}

int cmd_dual(const Options& o) {
  const Environment env = load_environment(o.file);
  auto d = dual(pick_module(env, o.module));
  return write_module(o, "dual", d.dual, json::object(), "");
}

int cmd_kernel(const Options& o, bool is_kernel) {
  const Environment env = load_environment(o.file);
  const auto& f = pick_morphism(env, o.morphism);
  ModulePtr m = is_kernel ? kernel(f).module : cokernel(f).module;
  const std::string what = is_kernel ? "kernel" : "cokernel";
  const bool unit = m->is_unit();
  write_module(o, what, m, {{"unit", unit}, {"dim", m->dim()}},
               what + " has dimension " + std::to_string(m->dim()) + ", unit: " + (unit ? "true" : "false") + "\n");
  return f.source()->is_unit() && f.target()->is_unit() && !unit ? kFail : kPass;
}

int cmd_pullback(const Options& o) {
  const Environment env = load_environment(o.file);
  const auto& g = pick(env.maps, o.map, "map", "--map");
  std::vector<ModulePtr> ms;
  std::vector<ModuleMorphism> fs;
  for (auto& [_, m] : env.modules)
    if (same_algebra(m->s()->r(), g.source())) ms.push_back(m);
  for (auto& [_, f] : env.morphisms)
    if (same_algebra(f.source()->s()->r(), g.source())) fs.push_back(f);
  auto rep = check_pullback(g, ms, fs);
  return finish(o, rep, std::string(to_string(rep.verdict)) + (rep.detail.empty() ? "" : ": " + rep.detail) + "\n");
}

int cmd_verify_axioms(const Options& o) {
  try {
    const Environment env = load_environment(o.file);
    json counts = {{"fields", env.fields.size()},   {"algebras", env.algebras.size()},
                   {"tensor_algebras", env.tensors.size()}, {"modules", env.modules.size()},
                   {"morphisms", env.morphisms.size()}, {"maps", env.maps.size()}};
    std::ostringstream h;
    h << "all axioms hold: " << env.fields.size() << " fields, " << env.algebras.size() << " algebras, "
      << env.tensors.size() << " tensor algebras, " << env.modules.size() << " modules, " << env.morphisms.size()
      << " morphisms, " << env.maps.size() << " maps\n";
    emit(o, {{"ok", true}, {"counts", counts}}, h.str());
    return kPass;
  } catch (const InputError& e) {
    if (!e.axiom()) throw;
    emit(o, {{"ok", false}, {"pointer", e.pointer()}, {"error", e.what()}}, std::string("axiom failure ") + e.what() + "\n");
    return kFail;
  }
}

void write_witnesses(const Options& o, const std::vector<SuiteResult>& results) {
  std::size_t total = 0;
  for (auto& r : results) total += r.witnesses.size();
  if (total == 0) return;
  const std::string dir = o.witness_dir.empty() ? "tauctl-witnesses" : o.witness_dir;
  std::filesystem::create_directories(dir);
  for (auto& r : results)
    for (auto& w : r.witnesses) {
      std::ofstream out(std::filesystem::path(dir) / w.file);
      out << canonical_dump(w.document);
    }
  std::cerr << total << " witness files written to " << dir << "\n";
}

int cmd_verify_theorems(const Options& o) {
  std::vector<SuiteResult> results;
  if (o.corpus == "default")
    results = run_default_suite(o.seed);
  else
    results = run_file_suite(load_environment(o.corpus), o.seed);
  std::string human = format_suite_report(results);
  if (o.timings) {
    std::ostringstream t;
    for (auto& r : results) t << r.name << ": " << r.seconds << " s\n";
    human += t.str();
  }
  emit(o, suite_report_json(results, o.timings), human);
  write_witnesses(o, results);
  for (auto& r : results)
    if (!r.ok()) return kFail;
  return kPass;
}

int cmd_gen(const Options& o) {
  DocumentWriter w;
  if (o.kind == "carlitz") {
    auto f = make_field(o.q, 1);
    auto r = field_extension_algebra(f, o.d);
    auto c = carlitz_crystal(Poly(f, {0, 1}), o.d, primitive_element(*r));
    w.add_module("carlitz", c.module);
    w.set("note", "Carlitz crystal over F" + std::to_string(o.q) + "[t]/(t) (x) F_" + std::to_string(o.q) + "^" +
                      std::to_string(o.d) + ", tau(v) = (t - theta) F(v), theta the smallest generator");
  } else {
    const auto rings = corpus_rings();
    if (o.ring >= rings.size()) throw InputError("", "--ring must be below " + std::to_string(rings.size()));
    const auto& s = rings[o.ring].s;
    if (o.kind == "unit") {
      w.add_module("M", random_unit(s, o.rank, o.seed));
    } else if (o.kind == "nilpotent") {
      w.add_module("M", random_nilpotent(s, o.rank, o.seed));
    } else if (o.kind == "one") {
      w.add_module("one", unit_object(s));
    } else if (o.kind == "corpus") {
      auto corpus = unit_corpus(rings, o.count, o.seed);
      for (std::size_t i = 0; i < corpus.size(); ++i) w.add_module("M" + std::to_string(i), corpus[i].module);
    } else if (o.kind == "morphism") {
      Rng rng(o.seed);
      auto a = random_unit(s, o.rank, rng()), b = random_unit(s, 1, rng());
      auto f = random_morphism(direct_sum(a, b), direct_sum(b, a), rng);
      w.add_module("A", f.source());
      w.add_module("B", f.target());
      w.add_morphism("f", f, "A", "B");
    } else {
      throw InputError("", "unknown kind \"" + o.kind + "\"");
    }
  }
  Options j = o;
  j.json_out = true;
  emit(j, w.document(), "");
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tauctl: tau-modules over finite algebras"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c, bool needs_file) {
    if (needs_file) c->add_option("file", o.file, "input document")->required();
    c->add_flag("--json", o.json_out, "machine-readable output");
    c->add_option("-o,--output", o.output, "write output to a file");
    c->add_option("--seed", o.seed, "random seed");
    return c;
  };

  auto check = common(app.add_subcommand("check", "test a property of a module or morphism"), false);
  check->add_option("property", o.property)->required()->check(
      CLI::IsMember({"unit", "nilpotent", "flat", "projective", "nil-iso"}));
  check->add_option("file", o.file, "input document")->required();
  check->add_option("--module", o.module);
  check->add_option("--morphism", o.morphism);

  auto fitting = common(app.add_subcommand("fitting", "n-th Fitting ideal"), true);
  fitting->add_option("--n", o.n)->required();
  fitting->add_option("--module", o.module);

  auto sol = common(app.add_subcommand("solutions", "fixed points of tau over R (x) F_{q^n}"), true);
  sol->add_option("--ext", o.ext)->check(CLI::PositiveNumber);
  sol->add_option("--module", o.module);

  auto cp = common(app.add_subcommand("charpoly", "characteristic polynomial of Frobenius on solutions"), true);
  cp->add_option("--module", o.module);

  auto desc = common(app.add_subcommand("descend", "M/mM and the isomorphism M = (M/mM) (x) R"), true);
  desc->add_option("--module", o.module);

  auto ten = common(app.add_subcommand("tensor", "tensor product of two modules"), true);
  ten->add_option("--left", o.left)->required();
  ten->add_option("--right", o.right)->required();

  auto du = common(app.add_subcommand("dual", "dual of a free unit module"), true);
  du->add_option("--module", o.module);

  auto ker = common(app.add_subcommand("kernel", "kernel of a morphism"), true);
  ker->add_option("--morphism", o.morphism);
  auto coker = common(app.add_subcommand("cokernel", "cokernel of a morphism"), true);
  coker->add_option("--morphism", o.morphism);

  auto pull = common(app.add_subcommand("pullback", "exactness, faithfulness, conservativity of base change"), true);
  pull->add_option("--map", o.map);

  auto axioms = common(app.add_subcommand("verify-axioms", "load and validate every object"), true);

  auto theorems = common(app.add_subcommand("verify-theorems", "run the theorem suites"), false);
  theorems->add_option("--corpus", o.corpus, "\"default\" or a document path");
  theorems->add_option("--witness-dir", o.witness_dir, "where witness files for failures go");
  theorems->add_flag("--timings", o.timings, "include wall times (not deterministic)");

  auto gen = common(app.add_subcommand("gen", "generate modules"), false);
  gen->add_option("--kind", o.kind)->required()->check(
      CLI::IsMember({"unit", "nilpotent", "one", "corpus", "morphism", "carlitz"}));
  gen->add_option("--ring", o.ring, "index into the built-in ring list");
  gen->add_option("--rank", o.rank);
  gen->add_option("--count", o.count);
  gen->add_option("--q", o.q, "prime for --kind carlitz");
  gen->add_option("--d", o.d, "degree of R for --kind carlitz");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    if (*check) return cmd_check(o);
    if (*fitting) return cmd_fitting(o);
    if (*sol) return cmd_solutions(o);
    if (*cp) return cmd_charpoly(o);
    if (*desc) return cmd_descend(o);
    if (*ten) return cmd_tensor(o);
    if (*du) return cmd_dual(o);
    if (*ker) return cmd_kernel(o, true);
    if (*coker) return cmd_kernel(o, false);
    if (*pull) return cmd_pullback(o);
    if (*axioms) return cmd_verify_axioms(o);
    if (*theorems) return cmd_verify_theorems(o);
    if (*gen) return cmd_gen(o);
  } catch (const InputError& e) {
    std::cerr << "input error " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
