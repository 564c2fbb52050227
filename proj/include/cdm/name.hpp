#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cdm {

class NameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A vertex name: either an atom or a derived name, i.e. a nonempty finite
/// set of (name, suffix) pairs. Suffix 0 stands for the empty suffix.
///
/// Names are held in their canonical text form: atoms verbatim, derived names
/// as `{u,v.1,w.2}` with parts sorted, so equality and ordering are string
/// operations and derived names compare equal iff their part sets are equal.
class Name {
 public:
  using Part = std::pair<Name, int>;

  Name() = default;
  /// Parses either form; throws NameError on malformed text.
  explicit Name(const std::string& text);
  static Name atom(const std::string& id);
  static Name derived(std::vector<Part> parts);
  /// Shorthand for the one-part name {base.suffix}.
  static Name derived(const Name& base, int suffix) { return derived({{base, suffix}}); }

  bool is_derived() const { return !text_.empty() && text_.front() == '{'; }
  const std::string& str() const { return text_; }
  /// Parts of a derived name; throws for atoms.
  std::vector<Part> parts() const;

  friend bool operator==(const Name& a, const Name& b) { return a.text_ == b.text_; }
  friend auto operator<=>(const Name& a, const Name& b) { return a.text_ <=> b.text_; }

 private:
  std::string text_;
};

/// Applies R* to a derived name: every part base is renamed by `rename`.
/// Atoms are renamed directly.
Name rename_star(const Name& name, const std::function<Name(const Name&)>& rename);

/// True iff `name` is a derived name whose parts all lie in `bases` with suffix <= bound.
bool derived_over(const Name& name, const std::function<bool(const Name&)>& in_bases, int bound);

/// True for identifiers usable as atoms.
bool valid_atom(const std::string& id);

}  // namespace cdm

template <>
struct std::hash<cdm::Name> {
  std::size_t operator()(const cdm::Name& n) const noexcept { return std::hash<std::string>{}(n.str()); }
};
