#include "taumod/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace taumod {

using nlohmann::json;

namespace {

std::string child(const std::string& ptr, const std::string& key) {
  std::string esc;
  for (char c : key) {
    if (c == '~') esc += "~0";
    else if (c == '/') esc += "~1";
    else esc += c;
  }
  return ptr + "/" + esc;
}

std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const json& need(const json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object()) throw InputError(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(ptr, "missing key \"" + key + "\"");
  return *it;
}

std::uint64_t need_uint(const json& obj, const std::string& key, const std::string& ptr) {
  const json& v = need(obj, key, ptr);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw InputError(child(ptr, key), "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string need_string(const json& obj, const std::string& key, const std::string& ptr) {
  const json& v = need(obj, key, ptr);
  if (!v.is_string()) throw InputError(child(ptr, key), "expected a string");
  return v.get<std::string>();
}

Elem parse_element(const GaloisField& f, const json& v, const std::string& ptr) {
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x < 0 || x >= static_cast<std::int64_t>(f.q())) throw InputError(ptr, "field element out of range");
    return static_cast<Elem>(x);
  }
  if (v.is_array()) {
    if (v.size() > f.a()) throw InputError(ptr, "too many coefficients for the field");
    std::vector<std::uint32_t> c;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer() || v[i].get<std::int64_t>() < 0 || v[i].get<std::int64_t>() >= f.p())
        throw InputError(child(ptr, i), "coefficient must be an integer in [0, p)");
      c.push_back(v[i].get<std::uint32_t>());
    }
    return f.from_coeffs(c);
  }
  throw InputError(ptr, "expected a field element (integer code or coefficient list)");
}

Vec parse_vector(const GaloisField& f, const json& v, std::size_t n, const std::string& ptr) {
  if (!v.is_array() || v.size() != n) throw InputError(ptr, "expected a vector of length " + std::to_string(n));
  Vec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = parse_element(f, v[i], child(ptr, i));
  return out;
}

Matrix parse_matrix(const FieldPtr& f, const json& v, std::size_t rows, std::size_t cols, const std::string& ptr) {
  if (!v.is_array() || v.size() != rows)
    throw InputError(ptr, "expected a " + std::to_string(rows) + " x " + std::to_string(cols) + " matrix");
  Matrix out(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Vec r = parse_vector(*f, v[i], cols, child(ptr, i));
    std::copy(r.begin(), r.end(), out.row_ptr(i));
  }
  return out;
}

template <class T>
const T& lookup(const std::map<std::string, T>& m, const std::string& name, const std::string& what,
                const std::string& ptr) {
  auto it = m.find(name);
  if (it == m.end()) throw InputError(ptr, "unknown " + what + " \"" + name + "\"");
  return it->second;
}

class Parser {
 public:
  explicit Parser(const json& doc) : doc_(doc) {}

  Environment run() {
    if (!doc_.is_object()) throw InputError("", "document must be a JSON object");
    for (auto& [key, _] : doc_.items())
      if (!known_.count(key)) throw InputError(child("", key), "unknown top-level key");
    for (auto& [name, v] : section("fields").items()) parse_field(name, v);
    for (auto& [name, _] : section("algebras").items()) algebra(name, child("/algebras", name));
    for (auto& [name, v] : section("tensor_algebras").items()) {
      const std::string ptr = child("/tensor_algebras", name);
      auto l = algebra(need_string(v, "lambda", ptr), child(ptr, "lambda"));
      auto r = algebra(need_string(v, "r", ptr), child(ptr, "r"));
      if (!same_field(l->field(), r->field())) throw InputError(ptr, "Lambda and R over different fields");
      env_.tensors.emplace(name, TensorAlgebra::make(l, r));
    }
    for (auto& [name, v] : section("maps").items()) parse_map(name, v);
    for (auto& [name, v] : section("modules").items()) parse_module(name, v);
    for (auto& [name, v] : section("morphisms").items()) parse_morphism(name, v);
    for (auto& [name, v] : section("ideals").items()) parse_ideal(name, v);
    return std::move(env_);
  }

 private:
  const json& section(const std::string& key) {
    static const json empty = json::object();
    auto it = doc_.find(key);
    if (it == doc_.end()) return empty;
    if (!it->is_object()) throw InputError(child("", key), "expected an object of named entries");
    return *it;
  }

  void parse_field(const std::string& name, const json& v) {
    const std::string ptr = child("/fields", name);
    const auto p = need_uint(v, "p", ptr);
    const auto a = v.contains("a") ? need_uint(v, "a", ptr) : 1;
    std::optional<std::vector<std::uint32_t>> modulus;
    if (v.contains("modulus")) modulus = v["modulus"].get<std::vector<std::uint32_t>>();
    try {
      env_.fields.emplace(name, make_field(static_cast<std::uint32_t>(p), static_cast<unsigned>(a), modulus));
    } catch (const Error& e) {
      throw InputError(ptr, e.what(), true);
    }
  }

  AlgebraPtr algebra(const std::string& name, const std::string& ref_ptr) {
    if (auto it = env_.algebras.find(name); it != env_.algebras.end()) return it->second;
    const json& all = section("algebras");
    if (!all.contains(name)) throw InputError(ref_ptr, "unknown algebra \"" + name + "\"");
    if (!visiting_.insert(name).second) throw InputError(ref_ptr, "algebra \"" + name + "\" refers to itself");
    const std::string ptr = child("/algebras", name);
    const json& v = all[name];
    AlgebraPtr out;
    try {
      out = build_algebra(v, ptr);
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      throw InputError(ptr, e.what(), true);
    }
    visiting_.erase(name);
    env_.algebras.emplace(name, out);
    return out;
  }

  AlgebraPtr build_algebra(const json& v, const std::string& ptr) {
    const std::string label = v.contains("label") ? need_string(v, "label", ptr) : std::string();
    if (v.contains("kind")) {
      const std::string kind = need_string(v, "kind", ptr);
      if (kind == "product" || kind == "tensor") {
        auto l = algebra(need_string(v, "left", ptr), child(ptr, "left"));
        auto r = algebra(need_string(v, "right", ptr), child(ptr, "right"));
        return kind == "product" ? product_algebra(l, r) : tensor_product_algebra(l, r);
      }
      const FieldPtr& f = lookup(env_.fields, need_string(v, "field", ptr), "field", child(ptr, "field"));
      if (kind == "prime") return prime_algebra(f);
      if (kind == "extension") return field_extension_algebra(f, static_cast<unsigned>(need_uint(v, "degree", ptr)));
      if (kind == "truncated")
        return truncated_polynomial_algebra(f, static_cast<unsigned>(need_uint(v, "vars", ptr)),
                                            static_cast<unsigned>(need_uint(v, "bound", ptr)));
      if (kind == "poly_quotient") {
        const json& c = need(v, "poly", ptr);
        if (!c.is_array()) throw InputError(child(ptr, "poly"), "expected a coefficient list");
        return poly_quotient_algebra(Poly(f, parse_vector(*f, c, c.size(), child(ptr, "poly"))), label);
      }
      throw InputError(child(ptr, "kind"), "unknown algebra kind \"" + kind + "\"");
    }
    const FieldPtr& f = lookup(env_.fields, need_string(v, "field", ptr), "field", child(ptr, "field"));
    const std::size_t d = need_uint(v, "dim", ptr);
    const json& mul = need(v, "mul", ptr);
    const std::string mptr = child(ptr, "mul");
    if (!mul.is_array() || mul.size() != d) throw InputError(mptr, "expected dim x dim x dim structure constants");
    std::vector<Vec> products(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!mul[i].is_array() || mul[i].size() != d) throw InputError(child(mptr, i), "expected dim x dim products");
      for (std::size_t j = 0; j < d; ++j) products[i * d + j] = parse_vector(*f, mul[i][j], d, child(child(mptr, i), j));
    }
    const Vec one = parse_vector(*f, need(v, "one", ptr), d, child(ptr, "one"));
    return FiniteAlgebra::make(f, d, products, one, label);
  }

  void parse_map(const std::string& name, const json& v) {
    const std::string ptr = child("/maps", name);
    auto src = algebra(need_string(v, "source", ptr), child(ptr, "source"));
    auto tgt = algebra(need_string(v, "target", ptr), child(ptr, "target"));
    Matrix mat = parse_matrix(src->field(), need(v, "mat", ptr), tgt->dim(), src->dim(), child(ptr, "mat"));
    try {
      env_.maps.emplace(name, AlgebraMap::make(src, tgt, std::move(mat)));
    } catch (const Error& e) {
      throw InputError(ptr, e.what(), true);
    }
  }

  void parse_module(const std::string& name, const json& v) {
    const std::string ptr = child("/modules", name);
    const std::string sname = need_string(v, "tensor_algebra", ptr);
    const TensorPtr& s = lookup(env_.tensors, sname, "tensor algebra", child(ptr, "tensor_algebra"));
    const std::size_t n = need_uint(v, "dim", ptr);
    const json& act = need(v, "act", ptr);
    const std::string aptr = child(ptr, "act");
    if (!act.is_object()) throw InputError(aptr, "expected an object keyed e_0 .. e_{dim S - 1}");
    for (auto& [key, _] : act.items()) {
      bool ok = key.size() > 2 && key.rfind("e_", 0) == 0 && key.find_first_not_of("0123456789", 2) == std::string::npos;
      if (!ok || std::stoul(key.substr(2)) >= s->dim()) throw InputError(child(aptr, key), "unexpected action key");
    }
    std::vector<Matrix> mats;
    for (std::size_t k = 0; k < s->dim(); ++k) {
      const std::string key = "e_" + std::to_string(k);
      mats.push_back(parse_matrix(s->field(), need(act, key, aptr), n, n, child(aptr, key)));
    }
    Matrix tau = parse_matrix(s->field(), need(v, "tau", ptr), n, n, child(ptr, "tau"));
    try {
      env_.modules.emplace(name, TauModule::make(s, n, std::move(mats), std::move(tau)));
    } catch (const Error& e) {
      throw InputError(ptr, e.what(), true);
    }
  }

  void parse_morphism(const std::string& name, const json& v) {
    const std::string ptr = child("/morphisms", name);
    const ModulePtr& src = lookup(env_.modules, need_string(v, "source", ptr), "module", child(ptr, "source"));
    const ModulePtr& tgt = lookup(env_.modules, need_string(v, "target", ptr), "module", child(ptr, "target"));
    Matrix mat = parse_matrix(src->field(), need(v, "mat", ptr), tgt->dim(), src->dim(), child(ptr, "mat"));
    try {
      env_.morphisms.emplace(name, ModuleMorphism::make(src, tgt, std::move(mat)));
    } catch (const Error& e) {
      throw InputError(ptr, e.what(), true);
    }
  }

  void parse_ideal(const std::string& name, const json& v) {
    const std::string ptr = child("/ideals", name);
    const TensorPtr& s = lookup(env_.tensors, need_string(v, "tensor_algebra", ptr), "tensor algebra",
                                child(ptr, "tensor_algebra"));
    const json& gens = need(v, "generators", ptr);
    if (!gens.is_array()) throw InputError(child(ptr, "generators"), "expected a list of elements of S");
    std::vector<Vec> g;
    for (std::size_t i = 0; i < gens.size(); ++i)
      g.push_back(parse_vector(*s->field(), gens[i], s->dim(), child(child(ptr, "generators"), i)));
    env_.ideals.emplace(name, std::make_pair(s, Ideal::generated_by(s->s(), g)));
  }

  const json& doc_;
  Environment env_;
  std::set<std::string> visiting_;
  const std::set<std::string> known_ = {"fields", "algebras", "tensor_algebras", "modules", "morphisms",
                                        "maps",   "ideals",   "witness",         "note",      "result"};
};

}  // namespace

const ModulePtr& Environment::module(const std::string& name) const { return lookup(modules, name, "module", "/modules"); }
const ModuleMorphism& Environment::morphism(const std::string& name) const {
  return lookup(morphisms, name, "morphism", "/morphisms");
}
const AlgebraMap& Environment::map(const std::string& name) const { return lookup(maps, name, "map", "/maps"); }
const TensorPtr& Environment::tensor(const std::string& name) const {
  return lookup(tensors, name, "tensor algebra", "/tensor_algebras");
}

Environment parse_environment(const json& doc) { return Parser(doc).run(); }

Environment load_environment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_environment(doc);
}

// Writing -------------------------------------------------------------------

json element_json(const GaloisField& f, Elem x) {
  auto c = f.coeffs(x);
  c.resize(f.a(), 0);
  return c;
}

json vector_json(const GaloisField& f, const Vec& v) {
  json out = json::array();
  for (auto x : v) out.push_back(element_json(f, x));
  return out;
}

json matrix_json(const GaloisField& f, const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(f, Vec(m.row_ptr(i), m.row_ptr(i) + m.cols())));
  return out;
}

std::string DocumentWriter::add_field(const FieldPtr& f) {
  for (auto& [g, name] : fields_)
    if (same_field(f, g)) return name;
  std::string name = "F" + std::to_string(f->q());
  if (doc_.contains("fields") && doc_["fields"].contains(name)) name += "_" + std::to_string(fields_.size());
  fields_.emplace_back(f, name);
  doc_["fields"][name] = {{"p", f->p()}, {"a", f->a()}, {"modulus", f->modulus()}};
  return name;
}

std::string DocumentWriter::add_algebra(const AlgebraPtr& a) {
  for (auto& [b, name] : algebras_)
    if (same_algebra(a, b)) return name;
  const std::string field = add_field(a->field());
  const std::string name = "A" + std::to_string(algebras_.size());
  algebras_.emplace_back(a, name);
  json mul = json::array();
  for (auto& row : a->structure_constants()) {
    json r = json::array();
    for (auto& v : row) r.push_back(vector_json(*a->field(), v));
    mul.push_back(std::move(r));
  }
  doc_["algebras"][name] = {{"field", field},
                            {"dim", a->dim()},
                            {"label", a->label()},
                            {"mul", std::move(mul)},
                            {"one", vector_json(*a->field(), a->one())}};
  return name;
}

std::string DocumentWriter::add_tensor(const TensorPtr& s) {
  for (auto& [t, name] : tensors_)
    if (same_tensor(s, t)) return name;
  const std::string l = add_algebra(s->lambda()), r = add_algebra(s->r());
  const std::string name = "S" + std::to_string(tensors_.size());
  tensors_.emplace_back(s, name);
  doc_["tensor_algebras"][name] = {{"lambda", l}, {"r", r}};
  return name;
}

std::string DocumentWriter::add_module(const std::string& name, const ModulePtr& m) {
  const std::string s = add_tensor(m->s());
  const auto& f = *m->field();
  json act = json::object();
  for (std::size_t k = 0; k < m->acts().size(); ++k) act["e_" + std::to_string(k)] = matrix_json(f, m->act(k));
  doc_["modules"][name] = {{"tensor_algebra", s}, {"dim", m->dim()}, {"act", std::move(act)}, {"tau", matrix_json(f, m->tau())}};
  return name;
}

std::string DocumentWriter::add_morphism(const std::string& name, const ModuleMorphism& f, const std::string& source,
                                         const std::string& target) {
  doc_["morphisms"][name] = {{"source", source}, {"target", target}, {"mat", matrix_json(*f.source()->field(), f.matrix())}};
  return name;
}

std::string DocumentWriter::add_map(const std::string& name, const AlgebraMap& g) {
  const std::string src = add_algebra(g.source()), tgt = add_algebra(g.target());
  doc_["maps"][name] = {{"source", src}, {"target", tgt}, {"mat", matrix_json(*g.source()->field(), g.matrix())}};
  return name;
}

std::string DocumentWriter::add_ideal(const std::string& name, const TensorPtr& s, const Ideal& i) {
  json gens = json::array();
  for (std::size_t k = 0; k < i.dim(); ++k) gens.push_back(vector_json(*s->field(), i.space().vector(k)));
  doc_["ideals"][name] = {{"tensor_algebra", add_tensor(s)}, {"generators", std::move(gens)}};
  return name;
}

namespace {

bool scalars(const json& j) {
  for (auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

// arrays of scalars, or of short scalar arrays (field elements), stay on one line
bool flat_array(const json& j) {
  for (auto& x : j)
    if (x.is_object() || (x.is_array() && !scalars(x))) return false;
  return true;
}

void dump_to(std::ostringstream& out, const json& j, std::size_t indent) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (auto& [k, v] : j.items()) {
      if (!first) out << ",\n";
      first = false;
      out << inner << json(k).dump() << ": ";
      dump_to(out, v, indent + 2);
    }
    out << "\n" << pad << "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out << "[]";
    } else if (flat_array(j)) {
      out << "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out << (i ? ", " : "");
        if (j[i].is_array()) {
          out << "[";
          for (std::size_t k = 0; k < j[i].size(); ++k) out << (k ? ", " : "") << j[i][k].dump();
          out << "]";
        } else {
          out << j[i].dump();
        }
      }
      out << "]";
    } else {
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out << inner;
        dump_to(out, j[i], indent + 2);
        out << (i + 1 < j.size() ? ",\n" : "\n");
      }
      out << pad << "]";
    }
  } else {
    out << j.dump();
  }
}

}  // namespace

std::string canonical_dump(const json& j) {
  std::ostringstream out;
  dump_to(out, j, 0);
  out << "\n";
  return out.str();
}

}  // namespace taumod
