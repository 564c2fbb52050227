#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdm {

/// Largest supported spatial dimension. Ports are 0..n+1, so a port set fits in 16 bits.
inline constexpr int kMaxDim = 6;
inline constexpr int kMaxPorts = kMaxDim + 2;

using PortSet = std::uint16_t;

inline int port_count(PortSet s) { return __builtin_popcount(s); }
inline bool has_port(PortSet s, int p) { return (s >> p) & 1u; }
inline PortSet port_bit(int p) { return static_cast<PortSet>(1u << p); }
std::vector<int> ports_of(PortSet s);
PortSet make_port_set(std::span<const int> ports);
/// All n+2 ports of dimension n.
inline PortSet full_port_set(int dim) { return static_cast<PortSet>((1u << (dim + 2)) - 1u); }

class PermutationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bijection of the port alphabet {0,...,n+1}.
///
/// Gluings are the odd permutations, vertex rotations the even ones.
/// Composition follows function notation: (a * b)(p) == a(b(p)).
class Permutation {
 public:
  Permutation() = default;
  /// Throws PermutationError unless `image` is a bijection of {0,...,dim+1}.
  Permutation(int dim, std::span<const int> image);
  Permutation(int dim, std::initializer_list<int> image)
      : Permutation(dim, std::span<const int>(image.begin(), image.size())) {}

  static Permutation identity(int dim);
  /// The transposition s_ij; s_ii is the identity.
  static Permutation transposition(int dim, int i, int j);
  /// Every permutation of {0..dim+1} in lexicographic order of images.
  static std::vector<Permutation> all(int dim);
  /// The (dim+2)!/2 even permutations, lexicographic.
  static const std::vector<Permutation>& even(int dim);
  /// The (dim+2)!/2 odd permutations, lexicographic.
  static const std::vector<Permutation>& odd(int dim);

  int dim() const { return dim_; }
  int size() const { return dim_ + 2; }
  int operator()(int p) const { return image_[static_cast<std::size_t>(p)]; }
  PortSet apply(PortSet s) const;

  Permutation inverse() const;
  Permutation operator*(const Permutation& rhs) const;

  /// +1 for even, -1 for odd.
  int sign() const { return sign_; }
  bool is_even() const { return sign_ > 0; }
  bool is_odd() const { return sign_ < 0; }
  bool is_identity() const;
  /// True iff this is s_ij for some i != j.
  bool is_transposition() const;

  std::vector<int> images() const;
  /// Comma separated one-line images, e.g. "1,0,2,3".
  std::string to_string() const;
  static Permutation parse(int dim, const std::string& text);

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.dim_ == b.dim_ && a.image_ == b.image_;
  }
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.image_ <=> b.image_;
  }

 private:
  void compute_sign();

  int dim_ = 0;
  std::array<std::uint8_t, kMaxPorts> image_{};
  int sign_ = 1;
};

}  // namespace cdm
