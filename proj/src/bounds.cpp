#include "syzygy/bounds.hpp"

#include <algorithm>
#include <limits>

namespace syzygy {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Classes of the complete intersection adapted to (X, B, A, n, q), unchecked.
std::vector<DivisorClass> adapted_classes(const VarietySpec& v, const DivisorClass& A,
                                          const DivisorClass& B, int q) {
  const int n = v.dim();
  std::vector<DivisorClass> out;
  out.push_back(-canonical_class(v) - (n - q) * A + B);
  for (int i = 0; i < n - q; ++i) out.push_back(A);
  return out;
}

void check_q(int q, int n) {
  if (q < 1 || q > n) {
    throw InputError("q = " + std::to_string(q) + " outside [1, " + std::to_string(n) + "]");
  }
}

}  // namespace

void Embedding::validate() const {
  check_class(variety, A);
  check_class(variety, B);
  if (positivity(variety, A) != Positivity::very_ample) {
    throw InputError("polarization A = " + A.to_string() + " is not very ample");
  }
  if (d < 1) throw InputError("d must be positive, got " + std::to_string(d));
}

AdjointDecomposition decompose_adjoint(const VarietySpec& v, const DivisorClass& A,
                                       const DivisorClass& B) {
  check_class(v, A);
  check_class(v, B);
  const DivisorClass rest = B - canonical_class(v);
  std::int64_t b = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < rest.size(); ++i) b = std::min(b, floor_div(rest[i], A[i]));
  AdjointDecomposition out;
  out.b = b;
  out.P = rest - b * A;
  out.adjoint_shape = b >= v.dim() + 1 && positivity(v, out.P) != Positivity::not_globally_generated;
  return out;
}

void PolarizedSetup::validate() const {
  embedding.validate();
  check_q(q, embedding.variety.dim());
  auto dec = decompose_adjoint(embedding.variety, embedding.A, embedding.B);
  if (!dec.adjoint_shape) {
    throw InputError("B = " + embedding.B.to_string() + " is not of the form K_X + bA + P with b >= " +
                     std::to_string(embedding.variety.dim() + 1) +
                     " and P globally generated (largest b is " + std::to_string(dec.b) + ")");
  }
}

BigInt phi(const VarietySpec& v, std::span<const DivisorClass> H, const DivisorClass& L) {
  check_class(v, L);
  for (const auto& h : H) check_class(v, h);
  if (H.size() >= 63) throw InputError("too many divisors for inclusion-exclusion");
  BigInt total = 0;
  const std::uint64_t subsets = std::uint64_t{1} << H.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    DivisorClass c = L;
    int sign = 1;
    for (std::size_t j = 0; j < H.size(); ++j) {
      if (mask >> j & 1U) {
        c -= H[j];
        sign = -sign;
      }
    }
    if (sign > 0) {
      total += h0(v, c);
    } else {
      total -= h0(v, c);
    }
  }
  return total;
}

AdaptedCI adapted_ci(const PolarizedSetup& setup) {
  setup.validate();
  const auto& e = setup.embedding;
  AdaptedCI ci{adapted_classes(e.variety, e.A, e.B, setup.q)};
  if (positivity(e.variety, ci.divisors.front()) != Positivity::very_ample) {
    throw InputError("first divisor " + ci.divisors.front().to_string() + " of the adapted complete intersection is not very ample");
  }
  return ci;
}

DualTwist dual_twist(const Embedding& e) {
  check_class(e.variety, e.A);
  check_class(e.variety, e.B);
  DualTwist out;
  out.B_dual = e.L() - e.B + canonical_class(e.variety);
  out.decomposition = decompose_adjoint(e.variety, e.A, out.B_dual);
  return out;
}

bool effective_conditions(const Embedding& e) {
  const int n = e.variety.dim();
  return positivity(e.variety, e.L() - n * e.A - e.B) == Positivity::very_ample;
}

RangePrediction predict_range(const PolarizedSetup& setup) {
  setup.validate();
  const auto& e = setup.embedding;
  const auto& v = e.variety;
  const int n = v.dim();
  const int q = setup.q;
  const DivisorClass L = e.L();
  const BigInt sections = h0(v, L);
  const DualTwist dual = dual_twist(e);

  RangePrediction out;
  out.q = q;
  out.n_d = phi(v, adapted_classes(v, e.A, e.B, q), L);

  // N_d through the adapted intersection for (X, B', A, n, n-q), and directly as
  // phi((d-q)A - B, A, ..., A; L_d). The two are the same classes.
  const auto dual_ci = adapted_classes(v, e.A, dual.B_dual, n - q);
  out.N_d = phi(v, dual_ci, L);
  std::vector<DivisorClass> direct{(e.d - q) * e.A - e.B};
  for (int i = 0; i < q; ++i) direct.push_back(e.A);
  if (phi(v, direct, L) != out.N_d || direct != dual_ci) {
    throw std::logic_error("inconsistent N_d between the two presentations");
  }

  if (q < n) {
    out.p_min = out.n_d - q;
    out.p_max = sections - out.N_d - q - 1;
  } else {
    // K_{p,n}(B) is dual to K_{r_d-p-n,0}(B'), nonzero iff 0 <= r_d - p - n <= r(B').
    out.p_min = sections - h0(v, dual.B_dual) - n;
    out.p_max = sections - n - 1;
  }
  out.sharp = q == n;
  out.effective_ok = effective_conditions(e);
  out.expansion_gap_ok = sections - out.n_d > n;
  out.dual_shape_ok = dual.decomposition.adjoint_shape;
  return out;
}

RangePrediction closed_form_projective(int n, std::int64_t k, int q, std::int64_t d) {
  if (n < 1) throw InputError("projective family needs n >= 1");
  if (k < 0) throw InputError("projective family needs k >= 0");
  if (d < 1) throw InputError("d must be positive");
  check_q(q, n);
  RangePrediction out;
  out.q = q;
  out.n_d = binomial(q + d, d) - binomial(d - (k + q + 1) + q, q);
  out.N_d = binomial(d + n - q, n - q) - binomial(k + n, n - q);
  const BigInt sections = binomial(d + n, n);
  out.p_min = out.n_d - q;
  out.p_max = sections - out.N_d - q - 1;
  out.sharp = q == n;
  out.effective_ok = d - n - k >= 1;
  out.expansion_gap_ok = sections - out.n_d > n;
  out.dual_shape_ok = d - k >= n + 1;
  return out;
}

RangePrediction closed_form_product(int s, int t, std::int64_t u, std::int64_t v, int q,
                                    std::int64_t d) {
  if (s < 1 || t < 1) throw InputError("product family needs s, t >= 1");
  if (u < t || v < s) {
    throw InputError("product family needs B = (u, v) with u >= t and v >= s");
  }
  if (d < 1) throw InputError("d must be positive");
  const int n = s + t;
  check_q(q, n);
  auto g = [&](std::int64_t a, std::int64_t b) { return binomial(a + s, s) * binomial(b + t, t); };

  RangePrediction out;
  out.q = q;
  out.n_d = 0;
  for (int i = 0; i <= n - q; ++i) {
    BigInt term = binomial(n - q, i) *
                  (g(d - i, d - i) - g(d - i - u - q + t - 1, d - i - v - q + s - 1));
    out.n_d += (i % 2 == 0) ? term : BigInt(-term);
  }
  out.N_d = 0;
  for (int i = 0; i <= q; ++i) {
    BigInt term = binomial(q, i) * (g(d - i, d - i) - g(q + u - i, q + v - i));
    out.N_d += (i % 2 == 0) ? term : BigInt(-term);
  }
  const BigInt sections = g(d, d);
  out.p_min = out.n_d - q;
  out.p_max = sections - out.N_d - q - 1;
  out.sharp = q == n;
  out.effective_ok = d - n - u >= 1 && d - n - v >= 1;
  out.expansion_gap_ok = sections - out.n_d > n;
  out.dual_shape_ok = std::min(d - u, d - v) >= n + 1;
  return out;
}

RangePrediction closed_form_grassmannian(std::int64_t k, int q, std::int64_t d) {
  if (k < 1) throw InputError("Gr(2,4) family needs k >= 1");
  if (d < 1) throw InputError("d must be positive");
  check_q(q, 4);
  auto f = grassmannian_sections;

  RangePrediction out;
  out.q = q;
  out.n_d = 0;
  for (int i = 0; i <= 4 - q; ++i) {
    BigInt term = binomial(4 - q, i) * (f(d - i) - f(d - i - k - q));
    out.n_d += (i % 2 == 0) ? term : BigInt(-term);
  }
  out.N_d = 0;
  for (int i = 0; i <= q; ++i) {
    BigInt term = binomial(q, i) * (f(d - i) - f(k + q - i));
    out.N_d += (i % 2 == 0) ? term : BigInt(-term);
  }
  const BigInt sections = f(d);
  out.p_min = out.n_d - q;
  out.p_max = sections - out.N_d - q - 1;
  out.sharp = q == 4;
  out.effective_ok = d - 4 - k >= 1;
  out.expansion_gap_ok = sections - out.n_d > 4;
  out.dual_shape_ok = d - k >= 5;
  return out;
}

}  // namespace syzygy
