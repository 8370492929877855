#pragma once

#include <span>
#include <string>
#include <vector>

#include "syzygy/geometry.hpp"

namespace syzygy {

/// X embedded by L_d = d*A, with the module twisted by B.
struct Embedding {
  VarietySpec variety;
  DivisorClass A;
  DivisorClass B;
  std::int64_t d = 1;

  DivisorClass L() const { return d * A; }

  /// Throws InputError unless classes fit the variety, A is very ample and d >= 1.
  void validate() const;
};

/// B = K_X + b*A + P with b as large as possible.
struct AdjointDecomposition {
  std::int64_t b = 0;
  DivisorClass P;
  /// b >= n+1 and P globally generated.
  bool adjoint_shape = false;
};

AdjointDecomposition decompose_adjoint(const VarietySpec& v, const DivisorClass& A,
                                       const DivisorClass& B);

struct PolarizedSetup {
  Embedding embedding;
  int q = 1;

  /// Embedding checks, 1 <= q <= n, and the adjoint shape of B.
  void validate() const;
};

/// Divisor classes of an adapted complete intersection:
/// [-K_X - (n-q)A + B, A, ..., A] with n-q copies of A.
struct AdaptedCI {
  std::vector<DivisorClass> divisors;
};

struct RangePrediction {
  int q = 0;
  BigInt n_d;
  BigInt N_d;
  BigInt p_min;
  BigInt p_max;
  bool sharp = false;
  bool effective_ok = false;
  bool expansion_gap_ok = false;
  /// B' = L_d - B + K_X has the adjoint shape K_X + b'A + P' with b' >= n+1.
  bool dual_shape_ok = false;

  friend bool operator==(const RangePrediction&, const RangePrediction&) = default;
};

/// h0 of L on the complete intersection of divisors in |H_1|, ..., |H_c|,
/// by inclusion-exclusion over the Koszul resolution of its ideal.
BigInt phi(const VarietySpec& v, std::span<const DivisorClass> H, const DivisorClass& L);

/// Throws InputError if the first divisor class is not very ample.
AdaptedCI adapted_ci(const PolarizedSetup& setup);

struct DualTwist {
  DivisorClass B_dual;
  AdjointDecomposition decomposition;
};

/// B' = d*A - B + K_X.
DualTwist dual_twist(const Embedding& e);

/// L_d - n*A - B is very ample.
bool effective_conditions(const Embedding& e);

RangePrediction predict_range(const PolarizedSetup& setup);

/// Closed-form ranges for the three families, each evaluated from its own
/// binomial (or f(m)) formula. Throw InputError outside the family's regime.
RangePrediction closed_form_projective(int n, std::int64_t k, int q, std::int64_t d);
RangePrediction closed_form_product(int s, int t, std::int64_t u, std::int64_t v, int q,
                                    std::int64_t d);
RangePrediction closed_form_grassmannian(std::int64_t k, int q, std::int64_t d);

}  // namespace syzygy
