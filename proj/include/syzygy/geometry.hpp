#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace syzygy {

using BigInt = boost::multiprecision::cpp_int;

/// Raised for malformed or inconsistent user input (bad classes, bad setups).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Binomial coefficient with C(n, k) = 0 unless 0 <= k <= n.
BigInt binomial(std::int64_t n, std::int64_t k);

enum class VarietyKind { projective_space, product, grassmannian_2_4 };

/// One of the supported polarized homogeneous varieties: P^n, P^s x P^t, Gr(2,4).
class VarietySpec {
 public:
  /// P^1.
  VarietySpec() : VarietySpec(VarietyKind::projective_space, 1, 0) {}

  static VarietySpec projective_space(int n);
  static VarietySpec product(int s, int t);
  static VarietySpec grassmannian_2_4();

  /// Parses `pn:<n>`, `pp:<s>,<t>` or `gr24`.
  static VarietySpec parse(std::string_view text);

  VarietyKind kind() const { return kind_; }
  int dim() const;
  int picard_rank() const { return kind_ == VarietyKind::product ? 2 : 1; }

  /// Dimension of P^n, or the factor dimensions s and t of a product.
  int n() const { return a_; }
  int s() const { return a_; }
  int t() const { return b_; }

  std::string to_string() const;

  friend bool operator==(const VarietySpec&, const VarietySpec&) = default;

 private:
  VarietySpec(VarietyKind kind, int a, int b) : kind_(kind), a_(a), b_(b) {}

  VarietyKind kind_;
  int a_;
  int b_;
};

/// Integer coordinates in the Picard lattice: multiples of the hyperplane
/// (or Pluecker) class, or a bidegree on a product.
class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

  /// Comma-separated integers, e.g. "3" or "-2,1".
  static DivisorClass parse(std::string_view text);

  /// The class c * (1, ..., 1).
  static DivisorClass uniform(int picard_rank, std::int64_t c);

  const std::vector<std::int64_t>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }

  std::string to_string() const;

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(std::int64_t k, DivisorClass a);
  friend DivisorClass operator-(DivisorClass a) { return -1 * std::move(a); }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

/// Throws InputError unless `c` has one coordinate per Picard generator of `v`.
void check_class(const VarietySpec& v, const DivisorClass& c);

/// Exact number of global sections. Zero whenever a coordinate is negative.
BigInt h0(const VarietySpec& v, const DivisorClass& c);

/// h0 of O(m) on Gr(2,4) for m >= 0: (m+1)(m+2)^2(m+3)/12.
BigInt grassmannian_sections(std::int64_t m);

DivisorClass canonical_class(const VarietySpec& v);

enum class Positivity { very_ample, globally_generated_only, not_globally_generated };

Positivity positivity(const VarietySpec& v, const DivisorClass& c);

std::string_view to_string(Positivity p);

}  // namespace syzygy
