#include "cdm/permutation.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cdm {

std::vector<int> ports_of(PortSet s) {
  std::vector<int> out;
  for (int p = 0; p < kMaxPorts; ++p) {
    if (has_port(s, p)) out.push_back(p);
  }
  return out;
}

PortSet make_port_set(std::span<const int> ports) {
  PortSet s = 0;
  for (int p : ports) s |= port_bit(p);
  return s;
}

Permutation::Permutation(int dim, std::span<const int> image) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw PermutationError("dimension out of range: " + std::to_string(dim));
  }
  if (static_cast<int>(image.size()) != dim + 2) {
    throw PermutationError("permutation needs " + std::to_string(dim + 2) + " images, got " +
                           std::to_string(image.size()));
  }
  unsigned seen = 0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    int v = image[i];
    if (v < 0 || v >= dim + 2 || ((seen >> v) & 1u)) {
      throw PermutationError("not a bijection of the port alphabet");
    }
    seen |= 1u << v;
    image_[i] = static_cast<std::uint8_t>(v);
  }
  compute_sign();
}

void Permutation::compute_sign() {
  // parity via cycle decomposition
  unsigned visited = 0;
  int transpositions = 0;
  for (int i = 0; i < size(); ++i) {
    if ((visited >> i) & 1u) continue;
    int len = 0;
    for (int j = i; !((visited >> j) & 1u); j = image_[static_cast<std::size_t>(j)]) {
      visited |= 1u << j;
      ++len;
    }
    transpositions += len - 1;
  }
  sign_ = (transpositions % 2 == 0) ? 1 : -1;
}

Permutation Permutation::identity(int dim) {
  std::vector<int> img(static_cast<std::size_t>(dim + 2));
  std::iota(img.begin(), img.end(), 0);
  return Permutation(dim, img);
}

Permutation Permutation::transposition(int dim, int i, int j) {
  std::vector<int> img(static_cast<std::size_t>(dim + 2));
  std::iota(img.begin(), img.end(), 0);
  std::swap(img.at(static_cast<std::size_t>(i)), img.at(static_cast<std::size_t>(j)));
  return Permutation(dim, img);
}

std::vector<Permutation> Permutation::all(int dim) {
  std::vector<int> img(static_cast<std::size_t>(dim + 2));
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(dim, img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

namespace {

struct ParityTables {
  std::vector<Permutation> even;
  std::vector<Permutation> odd;
};

const ParityTables& parity_tables(int dim) {
  static std::mutex mu;
  static std::map<int, ParityTables> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(dim);
  if (it == cache.end()) {
    ParityTables t;
    for (auto& p : Permutation::all(dim)) (p.is_even() ? t.even : t.odd).push_back(p);
    it = cache.emplace(dim, std::move(t)).first;
  }
  return it->second;
}

}  // namespace

const std::vector<Permutation>& Permutation::even(int dim) { return parity_tables(dim).even; }
const std::vector<Permutation>& Permutation::odd(int dim) { return parity_tables(dim).odd; }

PortSet Permutation::apply(PortSet s) const {
  PortSet out = 0;
  for (int p = 0; p < size(); ++p) {
    if (has_port(s, p)) out |= port_bit((*this)(p));
  }
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out = *this;
  for (int i = 0; i < size(); ++i) out.image_[image_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
  return out;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (dim_ != rhs.dim_) throw PermutationError("composing permutations of different dimension");
  Permutation out = *this;
  for (int i = 0; i < size(); ++i) out.image_[static_cast<std::size_t>(i)] = image_[rhs.image_[static_cast<std::size_t>(i)]];
  out.sign_ = sign_ * rhs.sign_;
  return out;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (image_[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

bool Permutation::is_transposition() const {
  int moved = 0;
  for (int i = 0; i < size(); ++i) moved += image_[static_cast<std::size_t>(i)] != i;
  return moved == 2;
}

std::vector<int> Permutation::images() const {
  return std::vector<int>(image_.begin(), image_.begin() + size());
}

std::string Permutation::to_string() const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (i) out += ',';
    out += std::to_string(image_[static_cast<std::size_t>(i)]);
  }
  return out;
}

Permutation Permutation::parse(int dim, const std::string& text) {
  std::vector<int> img;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw PermutationError("bad permutation entry '" + item + "'");
      img.push_back(v);
    } catch (const std::logic_error&) {
      throw PermutationError("bad permutation entry '" + item + "'");
    }
  }
  return Permutation(dim, img);
}

}  // namespace cdm
