#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "syzygy/bounds.hpp"
#include "syzygy/exactalg.hpp"
#include "syzygy/geometry.hpp"

namespace syzygy {

/// C(n, k) as a 64-bit integer, saturating at UINT64_MAX.
std::uint64_t binomial_u64(std::int64_t n, std::int64_t k);

/// Colexicographic rank of a strictly increasing index subset. Throws
/// std::overflow_error if the rank does not fit in 64 bits.
std::uint64_t colex_rank(std::span<const std::uint32_t> subset);

/// Inverse of colex_rank for subsets of the given size.
std::vector<std::uint32_t> colex_unrank(std::uint64_t rank, std::size_t size);

/// Explicit monomial basis of H0(X, c) on P^n or P^s x P^t. Exponent vectors
/// have one entry per homogeneous coordinate (the s-block precedes the
/// t-block on products) and are listed in graded-lexicographic order.
class MonomialBasis {
 public:
  /// Throws InputError for Gr(2,4). Classes with a negative coordinate give
  /// the empty basis.
  static MonomialBasis build(const VarietySpec& v, const DivisorClass& c);

  std::size_t size() const { return count_; }
  int num_vars() const { return num_vars_; }
  const DivisorClass& divisor_class() const { return class_; }

  std::span<const int> exponents(std::size_t i) const {
    return {exps_.data() + i * static_cast<std::size_t>(num_vars_),
            static_cast<std::size_t>(num_vars_)};
  }

  /// Position of an exponent vector, or nullopt if it is not in the basis.
  std::optional<std::size_t> index_of(std::span<const int> exps) const;

 private:
  DivisorClass class_;
  std::vector<int> block_sizes_;
  std::vector<std::int64_t> block_degrees_;
  int num_vars_ = 0;
  std::size_t count_ = 0;
  std::vector<int> exps_;
};

/// Raised when a Koszul term exceeds the configured size cap.
class ResourceRefusal : public std::runtime_error {
 public:
  ResourceRefusal(int p, int q, const BigInt& size, std::uint64_t cap);

  int p() const { return p_; }
  int q() const { return q_; }

 private:
  int p_;
  int q_;
};

struct KoszulOptions {
  std::array<std::uint32_t, 2> primes = kDefaultPrimes;
  /// Worker threads for rank computations; 0 means hardware concurrency.
  unsigned threads = 0;
  /// Largest middle term dim(wedge^p V (x) H0(B + qL)) a cell may use.
  std::uint64_t size_cap = 5'000'000;
  RankOptions rank;
  /// Multiply every assembled differential block by the next one and count
  /// products that are not zero.
  bool check_complex = false;
};

struct KpqDim {
  BigInt dim;
  Certainty certainty = Certainty::agreed_two_primes;
};

/// Matrix of the Koszul map wedge^p V (x) H0(twist) -> wedge^{p-1} V (x) H0(twist + L_d),
/// (S, m) -> sum_j (-1)^j (S \ {s_j}, v_{s_j} m). Columns and rows are indexed by
/// colex_rank(S) * h0 + monomial index. Entries are the integers +-1.
SparseMatrix koszul_differential(const Embedding& e, int p, const DivisorClass& twist);

/// Koszul cohomology of R(X, B; L_d) = sum_m H0(B + mL_d), computed weight by
/// weight for the torus acting on the homogeneous coordinates. Caches the
/// rank of every differential it touches. Not safe for concurrent use.
class KoszulEngine {
 public:
  KoszulEngine(Embedding e, KoszulOptions options = {});

  const Embedding& embedding() const { return embedding_; }
  const KoszulOptions& options() const { return options_; }
  /// dim V = h0(L_d).
  std::uint32_t ambient_dim() const { return ambient_dim_; }

  /// dim wedge^p V (x) H0(B + qL).
  BigInt term_dim(int p, int q) const;

  /// Rank of wedge^p V (x) H0(B + qL) -> wedge^{p-1} V (x) H0(B + (q+1)L).
  CertifiedRank differential_rank(int p, int q);

  /// dim K_{p,q}(X, B; L_d). Throws ResourceRefusal above the size cap.
  KpqDim kpq(int p, int q);

  std::size_t blocks_assembled() const { return blocks_assembled_; }
  std::size_t prime_disagreements() const { return prime_disagreements_; }
  std::size_t complex_failures() const { return complex_failures_; }

 private:
  const MonomialBasis& basis(const DivisorClass& c);
  CertifiedRank compute_rank(int p, int q);

  Embedding embedding_;
  KoszulOptions options_;
  PrimeField field1_;
  PrimeField field2_;
  std::uint32_t ambient_dim_ = 0;
  std::map<std::vector<std::int64_t>, MonomialBasis> bases_;
  std::map<std::pair<int, int>, CertifiedRank> ranks_;
  std::size_t blocks_assembled_ = 0;
  std::size_t prime_disagreements_ = 0;
  std::size_t complex_failures_ = 0;
};

KpqDim kpq_dim(const Embedding& e, int p, int q, const KoszulOptions& options = {});

struct BettiCell {
  int p = 0;
  int q = 0;
  /// Empty when the cell was refused.
  std::optional<BigInt> dim;
  Certainty certainty = Certainty::agreed_two_primes;
  std::string note;
};

struct BettiTable {
  Embedding embedding;
  int p_limit = 0;
  int q_max = 0;
  std::array<std::uint32_t, 2> primes{};
  /// Ordered by q, then p.
  std::vector<BettiCell> cells;

  const BettiCell* find(int p, int q) const;
  /// p with a computed, nonzero K_{p,q}.
  std::set<int> support(int q) const;
};

struct BettiStats {
  std::size_t blocks = 0;
  std::size_t prime_disagreements = 0;
  std::size_t complex_failures = 0;
};

/// Cells 0 <= p <= p_limit, 0 <= q <= q_max. A negative p_limit means dim V;
/// a negative q_max means n + 1.
BettiTable betti_table(const Embedding& e, int p_limit = -1, int q_max = -1,
                       const KoszulOptions& options = {}, BettiStats* stats = nullptr);

struct DualityViolation {
  int p, q;
  BigInt dim;
  int p_dual, q_dual;
  BigInt dim_dual;
};

struct RangeMismatch {
  int p, q;
  int p_dual, q_dual;
  std::string reason;
};

struct DualityReport {
  std::vector<DualityViolation> violations;
  std::vector<RangeMismatch> mismatches;
  std::size_t cells_compared = 0;
};

/// Compares K_{p,q}(B) with K_{r_d-p-n, n-q}(B') for every computed cell with
/// 1 <= q <= n. Throws InputError unless t_dual is for the same X, A, d and
/// B' = dual_twist(B).
DualityReport duality_check(const BettiTable& t, const BettiTable& t_dual);

/// Strands m <= p_limit where sum_q (-1)^q dim K_{m-q,q} differs from
/// sum_q (-1)^q C(dim V, m-q) h0(B + qL). Strands touching a refused cell are skipped.
std::vector<int> euler_violations(const BettiTable& t);

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Verdict v);

struct Discrepancy {
  int p;
  /// "missing" (in the interval, zero) or "extra" (nonzero outside the interval).
  std::string kind;
};

struct VerificationReport {
  RangePrediction prediction;
  BigInt lower;
  BigInt upper;
  bool degenerate = false;
  std::set<int> computed_support;
  Verdict containment = Verdict::inconclusive;
  /// Support equals [lower, upper]; empty unless the whole row was computed.
  std::optional<bool> equality;
  std::vector<Discrepancy> discrepancies;

  /// Containment, plus equality when the prediction is sharp.
  Verdict overall() const;
};

VerificationReport verify(const RangePrediction& prediction, const BettiTable& table);

}  // namespace syzygy
