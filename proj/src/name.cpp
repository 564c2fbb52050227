#include "cdm/name.hpp"

#include <algorithm>
#include <cctype>

namespace cdm {

namespace {

bool atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
}

std::string part_text(const Name::Part& part) {
  if (part.second == 0) return part.first.str();
  return part.first.str() + "." + std::to_string(part.second);
}

// Splits the body of "{...}" on top-level commas.
std::vector<std::string> split_top_level(const std::string& body) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : body) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (depth < 0) throw NameError("unbalanced braces in name");
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw NameError("unbalanced braces in name");
  out.push_back(cur);
  return out;
}

Name::Part parse_part(const std::string& text) {
  if (text.empty()) throw NameError("empty name part");
  std::size_t base_end = text.size();
  if (text.front() == '{') {
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '{') ++depth;
      if (text[i] == '}' && --depth == 0) {
        base_end = i + 1;
        break;
      }
    }
  } else {
    base_end = text.find('.');
    if (base_end == std::string::npos) base_end = text.size();
  }
  Name base(text.substr(0, base_end));
  if (base_end == text.size()) return {base, 0};
  if (text[base_end] != '.' || base_end + 1 == text.size()) throw NameError("bad suffix in '" + text + "'");
  std::string digits = text.substr(base_end + 1);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw NameError("bad suffix in '" + text + "'");
  }
  int suffix = std::stoi(digits);
  if (suffix < 1) throw NameError("suffixes start at 1 in '" + text + "'");
  return {base, suffix};
}

}  // namespace

bool valid_atom(const std::string& id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), atom_char);
}

Name::Name(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw NameError("derived name must end with '}': " + text);
    std::vector<Part> parts;
    for (const auto& piece : split_top_level(text.substr(1, text.size() - 2))) parts.push_back(parse_part(piece));
    *this = derived(std::move(parts));
  } else {
    if (!valid_atom(text)) throw NameError("invalid vertex name '" + text + "'");
    text_ = text;
  }
}

Name Name::atom(const std::string& id) {
  if (!valid_atom(id)) throw NameError("invalid vertex name '" + id + "'");
  Name n;
  n.text_ = id;
  return n;
}

Name Name::derived(std::vector<Part> parts) {
  if (parts.empty()) throw NameError("derived names need at least one part");
  std::vector<std::string> texts;
  texts.reserve(parts.size());
  for (const auto& p : parts) {
    if (p.second < 0) throw NameError("negative suffix");
    texts.push_back(part_text(p));
  }
  std::sort(texts.begin(), texts.end());
  texts.erase(std::unique(texts.begin(), texts.end()), texts.end());
  Name n;
  n.text_ = "{";
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (i) n.text_ += ',';
    n.text_ += texts[i];
  }
  n.text_ += '}';
  return n;
}

std::vector<Name::Part> Name::parts() const {
  if (!is_derived()) throw NameError("atom '" + text_ + "' has no parts");
  std::vector<Part> out;
  for (const auto& piece : split_top_level(text_.substr(1, text_.size() - 2))) out.push_back(parse_part(piece));
  return out;
}

Name rename_star(const Name& name, const std::function<Name(const Name&)>& rename) {
  if (!name.is_derived()) return rename(name);
  auto parts = name.parts();
  for (auto& p : parts) p.first = rename(p.first);
  return Name::derived(std::move(parts));
}

bool derived_over(const Name& name, const std::function<bool(const Name&)>& in_bases, int bound) {
  if (!name.is_derived()) return false;
  for (const auto& [base, suffix] : name.parts()) {
    if (suffix > bound || !in_bases(base)) return false;
  }
  return true;
}

}  // namespace cdm
