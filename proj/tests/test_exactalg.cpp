#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "syzygy/exactalg.hpp"

using namespace syzygy;

namespace {

const PrimeField F1(kDefaultPrimes[0]);
const PrimeField F2(kDefaultPrimes[1]);

SparseMatrix permute(const SparseMatrix& m, const std::vector<std::uint32_t>& rp,
                     const std::vector<std::uint32_t>& cp) {
  std::vector<MatrixEntry> entries;
  for (const auto& e : m.entries()) entries.push_back({rp[e.row], cp[e.col], e.value});
  return SparseMatrix::from_entries(m.rows(), m.cols(), std::move(entries));
}

std::vector<std::uint32_t> shuffled(std::uint32_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0U);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

}  // namespace

TEST_SUITE("exactalg") {
  TEST_CASE("primality") {
    CHECK(is_prime_u32(2));
    CHECK(is_prime_u32(2147483647U));
    CHECK(is_prime_u32(2147483629U));
    CHECK_FALSE(is_prime_u32(1));
    CHECK_FALSE(is_prime_u32(2147483649U));
    CHECK_FALSE(is_prime_u32(3215031751U));  // strong pseudoprime to bases 2, 3, 5, 7
    std::vector<bool> sieve(20000, true);
    for (std::uint32_t i = 2; i < sieve.size(); ++i) {
      if (sieve[i])
        for (std::uint32_t j = 2 * i; j < sieve.size(); j += i) sieve[j] = false;
      CHECK(is_prime_u32(i) == static_cast<bool>(sieve[i]));
    }
  }

  TEST_CASE("field construction") {
    CHECK_THROWS_AS(PrimeField(2147483645U), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(101U), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(4294967291U), std::invalid_argument);
    for (std::uint32_t a : {1U, 2U, 12345U, 2147483646U}) CHECK(F1.mul(a, F1.inv(a)) == 1);
    CHECK(F1.reduce(-1) == 2147483646U);
    CHECK(F1.add(2147483646U, 5U) == 4U);
    CHECK(F1.sub(3U, 5U) == 2147483645U);
  }

  TEST_CASE("construction normalizes entries") {
    auto m = SparseMatrix::from_entries(2, 2, {{1, 1, 3}, {0, 1, 2}, {1, 1, -3}, {0, 1, 1}, {0, 0, 0}});
    CHECK(m.nnz() == 1);
    CHECK(m.entries().front() == MatrixEntry{0, 1, 3});
    CHECK_THROWS_AS(SparseMatrix::from_entries(2, 2, {{2, 0, 1}}), std::out_of_range);
    CHECK(SparseMatrix::from_entries(3, 3, {{0, 0, 2147483647}}).reduced(F1).is_zero());
  }

  TEST_CASE("identity and zero") {
    CHECK(rank(SparseMatrix::identity(3), F1) == 3);
    CHECK(rank(SparseMatrix(7, 4), F1) == 0);
    CHECK(rank(SparseMatrix(0, 5), F1) == 0);
    const auto c = certified_rank(SparseMatrix::identity(11), F1, F2);
    CHECK(c.rank == 11);
    CHECK(c.certainty == Certainty::agreed_two_primes);
    CHECK_THROWS(certified_rank(SparseMatrix::identity(2), F1, F1));
  }

  TEST_CASE("rank matches dense elimination on random sparse matrices") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 50; ++trial) {
      const auto m = oracle::random_matrix(rng, 40, 60, 0.05, -5, 5);
      CHECK(rank(m, F1) == oracle::dense_rank_mod(oracle::to_dense(m), F1.modulus()));
    }
  }

  TEST_CASE("sparse and dense strategies agree") {
    std::mt19937_64 rng(7);
    RankOptions sparse_only;
    sparse_only.dense_threshold = 2.0;
    RankOptions dense_early;
    dense_early.dense_threshold = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
      const auto m = trial % 2 ? oracle::random_matrix(rng, 50, 45, 0.1, -3, 3)
                               : oracle::low_rank_matrix(rng, 50, 45, 1 + trial % 20);
      const auto expected = oracle::dense_rank_mod(oracle::to_dense(m), F2.modulus());
      CHECK(rank(m, F2) == expected);
      CHECK(rank(m, F2, sparse_only) == expected);
      CHECK(rank(m, F2, dense_early) == expected);
    }
  }

  TEST_CASE("certified rank matches rational rank") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint32_t rows = 5 + trial, cols = 30 - trial;
      const auto m = trial % 3 == 0 ? oracle::low_rank_matrix(rng, rows, cols, 3)
                                    : oracle::random_matrix(rng, rows, cols, 0.3, -3, 3);
      const auto c = certified_rank(m, F1, F2);
      CHECK(c.rank == oracle::bareiss_rank(oracle::to_dense(m)));
      CHECK(c.certainty == Certainty::agreed_two_primes);
    }
  }

  TEST_CASE("prime sensitivity is reported") {
    const std::int64_t p = kDefaultPrimes[0];
    const auto m = SparseMatrix::from_entries(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1 + p}});
    const auto c = certified_rank(m, F1, F2);
    CHECK(c.rank == 2);
    CHECK(c.certainty == Certainty::prime_sensitive);
    CHECK(weakest(Certainty::agreed_two_primes, Certainty::prime_sensitive) == Certainty::prime_sensitive);
    CHECK(to_string(Certainty::agreed_two_primes) == "agreed-two-primes");
  }

  TEST_CASE("rank is invariant under transposition and permutation") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
      const std::uint32_t rows = 10 + trial % 30, cols = 12 + (trial * 7) % 30;
      const auto m = oracle::random_matrix(rng, rows, cols, 0.12, -2, 2);
      const auto r = rank(m, F1);
      CHECK(rank(m.transposed(), F1) == r);
      CHECK(rank(permute(m, shuffled(rows, rng), shuffled(cols, rng)), F1) == r);
    }
  }

  TEST_CASE("rank is deterministic") {
    std::mt19937_64 rng(1);
    const auto m = oracle::random_matrix(rng, 300, 280, 0.02, -1, 1);
    const auto r = rank(m, F1);
    for (int i = 0; i < 3; ++i) CHECK(rank(m, F1) == r);
  }

  TEST_CASE("multiply") {
    std::mt19937_64 rng(5);
    const auto m = oracle::random_matrix(rng, 12, 9, 0.3, -4, 4);
    CHECK(multiply(SparseMatrix::identity(12), m, F1) == m.reduced(F1));
    CHECK(multiply(m, SparseMatrix(9, 6), F1).is_zero());
    CHECK_THROWS_AS(multiply(m, m, F1), std::invalid_argument);
    const auto a = oracle::random_matrix(rng, 8, 7, 0.4, -3, 3);
    const auto b = oracle::random_matrix(rng, 7, 5, 0.4, -3, 3);
    const auto ab = oracle::to_dense(multiply(a, b, F1));
    const auto da = oracle::to_dense(a), db = oracle::to_dense(b);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 5; ++j) {
        std::int64_t s = 0;
        for (int k = 0; k < 7; ++k) s += da[i][k] * db[k][j];
        CHECK(ab[i][j] == static_cast<std::int64_t>(F1.reduce(s)));
      }
  }

  TEST_CASE("dump round trip") {
    std::mt19937_64 rng(11);
    const auto m = oracle::random_matrix(rng, 15, 20, 0.2, -3, 3);
    std::stringstream s;
    write_dump(s, m, F2);
    const std::string text = s.str();
    CHECK(text.rfind("15 20 2147483629 " + std::to_string(m.nnz()) + "\n", 0) == 0);
    std::uint32_t prime = 0;
    CHECK(read_dump(s, &prime) == m.reduced(F2));
    CHECK(prime == F2.modulus());
    std::stringstream bad("2 2 7 1\n5 0 1\n");
    CHECK_THROWS(read_dump(bad));
  }
}
