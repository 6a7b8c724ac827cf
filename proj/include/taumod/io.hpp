#pragma once

#include <map>
#include <string>

#include "json.hpp"
#include "taumod/module.hpp"

namespace taumod {

/// Malformed input; `pointer` is the JSON pointer of the offending value.
/// `axiom` marks well-formed data that violates an algebra or module axiom.
class InputError : public Error {
 public:
  InputError(const std::string& pointer, const std::string& what, bool axiom = false)
      : Error(pointer.empty() ? what : "at " + pointer + ": " + what), pointer_(pointer), axiom_(axiom) {}
  const std::string& pointer() const { return pointer_; }
  bool axiom() const { return axiom_; }

 private:
  std::string pointer_;
  bool axiom_;
};

/// Named objects of one input document, validated on load.
struct Environment {
  std::map<std::string, FieldPtr> fields;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, TensorPtr> tensors;
  std::map<std::string, ModulePtr> modules;
  std::map<std::string, ModuleMorphism> morphisms;
  std::map<std::string, AlgebraMap> maps;
  std::map<std::string, std::pair<TensorPtr, Ideal>> ideals;

  const ModulePtr& module(const std::string& name) const;
  const ModuleMorphism& morphism(const std::string& name) const;
  const AlgebraMap& map(const std::string& name) const;
  const TensorPtr& tensor(const std::string& name) const;
};

Environment parse_environment(const nlohmann::json& doc);
Environment load_environment(const std::string& path);

/// Builds a document, naming shared fields/algebras/rings automatically.
class DocumentWriter {
 public:
  std::string add_field(const FieldPtr& f);
  std::string add_algebra(const AlgebraPtr& a);
  std::string add_tensor(const TensorPtr& s);
  std::string add_module(const std::string& name, const ModulePtr& m);
  std::string add_morphism(const std::string& name, const ModuleMorphism& f, const std::string& source,
                           const std::string& target);
  std::string add_map(const std::string& name, const AlgebraMap& g);
  std::string add_ideal(const std::string& name, const TensorPtr& s, const Ideal& i);
  void set(const std::string& key, nlohmann::json value) { doc_[key] = std::move(value); }
  const nlohmann::json& document() const { return doc_; }

 private:
  nlohmann::json doc_ = nlohmann::json::object();
  std::vector<std::pair<FieldPtr, std::string>> fields_;
  std::vector<std::pair<AlgebraPtr, std::string>> algebras_;
  std::vector<std::pair<TensorPtr, std::string>> tensors_;
};

nlohmann::json element_json(const GaloisField& f, Elem x);
nlohmann::json vector_json(const GaloisField& f, const Vec& v);
nlohmann::json matrix_json(const GaloisField& f, const Matrix& m);

/// Stable text form: two-space indentation, arrays of scalars on one line.
std::string canonical_dump(const nlohmann::json& j);

}  // namespace taumod
