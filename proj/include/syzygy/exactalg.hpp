#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace syzygy {

bool is_prime_u32(std::uint32_t n);

/// Integers modulo a prime 2^20 < p < 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  std::uint32_t reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// Two fixed 31-bit primes used unless overridden.
inline constexpr std::array<std::uint32_t, 2> kDefaultPrimes{2147483647u, 2147483629u};

struct MatrixEntry {
  std::uint32_t row;
  std::uint32_t col;
  std::int64_t value;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Sparse matrix with integer entries, stored as row-major sorted triplets
/// without zeros or duplicate positions. Field operations read the entries
/// modulo the field's prime.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::uint32_t rows, std::uint32_t cols) : rows_(rows), cols_(cols) {}

  /// Sorts, sums entries at equal positions and drops zeros. Throws
  /// std::out_of_range on an index outside the shape.
  static SparseMatrix from_entries(std::uint32_t rows, std::uint32_t cols,
                                   std::vector<MatrixEntry> entries);

  static SparseMatrix identity(std::uint32_t n);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<MatrixEntry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  /// Entries reduced to [1, p-1]; positions that vanish mod p are dropped.
  SparseMatrix reduced(const PrimeField& f) const;
  SparseMatrix transposed() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  std::vector<MatrixEntry> entries_;
};

struct RankOptions {
  /// Switch to dense elimination once the active submatrix is this dense.
  double dense_threshold = 0.2;
  /// Largest active submatrix (rows * cols) the dense fallback may allocate.
  std::size_t dense_max_entries = std::size_t{1} << 26;
};

/// Exact rank over the field, by sparse elimination with Markowitz-style
/// pivoting and a dense fallback.
std::size_t rank(const SparseMatrix& m, const PrimeField& f, const RankOptions& options = {});

enum class Certainty { agreed_two_primes, prime_sensitive };

std::string_view to_string(Certainty c);

/// The weaker of two tags.
inline Certainty weakest(Certainty a, Certainty b) {
  return (a == Certainty::prime_sensitive || b == Certainty::prime_sensitive)
             ? Certainty::prime_sensitive
             : Certainty::agreed_two_primes;
}

struct CertifiedRank {
  std::size_t rank = 0;
  Certainty certainty = Certainty::agreed_two_primes;
};

/// Rank modulo two primes. On disagreement the larger rank is returned, since
/// each modular rank is a lower bound for the rational rank.
CertifiedRank certified_rank(const SparseMatrix& m, const PrimeField& f1, const PrimeField& f2,
                             const RankOptions& options = {});

/// Product modulo p. Throws std::invalid_argument on a shape mismatch.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& f);

/// Debug dump: `rows cols prime nnz` then one `row col value` line per entry.
void write_dump(std::ostream& out, const SparseMatrix& m, const PrimeField& f);
SparseMatrix read_dump(std::istream& in, std::uint32_t* prime = nullptr);

}  // namespace syzygy
