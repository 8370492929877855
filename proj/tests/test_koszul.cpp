#include "doctest.h"

#include <random>

#include "brute_koszul.hpp"
#include "oracles.hpp"
#include "syzygy/koszul.hpp"

using namespace syzygy;

namespace {

Embedding pn(int n, std::int64_t B, std::int64_t d) {
  return {VarietySpec::projective_space(n), DivisorClass({1}), DivisorClass({B}), d};
}

Embedding pp(int s, int t, std::int64_t u, std::int64_t v, std::int64_t d) {
  return {VarietySpec::product(s, t), DivisorClass({1, 1}), DivisorClass({u, v}), d};
}

KoszulOptions single_thread() {
  KoszulOptions o;
  o.threads = 1;
  return o;
}

std::set<int> interval(int lo, int hi) {
  std::set<int> out;
  for (int p = lo; p <= hi; ++p) out.insert(p);
  return out;
}

}  // namespace

TEST_SUITE("koszul") {
  TEST_CASE("monomial basis examples") {
    const auto b = MonomialBasis::build(VarietySpec::projective_space(1), DivisorClass({2}));
    REQUIRE(b.size() == 3);
    const std::vector<std::vector<int>> expected{{2, 0}, {1, 1}, {0, 2}};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto e = b.exponents(i);
      CHECK(std::vector<int>(e.begin(), e.end()) == expected[i]);
    }
    CHECK(MonomialBasis::build(VarietySpec::projective_space(2), DivisorClass({1})).size() == 3);
    CHECK(MonomialBasis::build(VarietySpec::product(1, 1), DivisorClass({1, 1})).size() == 4);
    CHECK(MonomialBasis::build(VarietySpec::projective_space(2), DivisorClass({-1})).size() == 0);
    CHECK_THROWS_AS(MonomialBasis::build(VarietySpec::grassmannian_2_4(), DivisorClass({1})), InputError);
  }

  TEST_CASE("monomial bases are complete, sorted and indexable") {
    const std::vector<std::pair<VarietySpec, DivisorClass>> cases{
        {VarietySpec::projective_space(3), DivisorClass({4})},
        {VarietySpec::projective_space(1), DivisorClass({9})},
        {VarietySpec::product(1, 2), DivisorClass({2, 3})},
        {VarietySpec::product(2, 2), DivisorClass({0, 2})}};
    for (const auto& [v, c] : cases) {
      const auto b = MonomialBasis::build(v, c);
      CHECK(BigInt(b.size()) == h0(v, c));
      const int s_len = v.kind() == VarietyKind::product ? v.s() + 1 : b.num_vars();
      for (std::size_t i = 0; i < b.size(); ++i) {
        const auto e = b.exponents(i);
        int first = 0, second = 0;
        for (int k = 0; k < b.num_vars(); ++k) (k < s_len ? first : second) += e[static_cast<std::size_t>(k)];
        CHECK(first == c[0]);
        if (c.size() == 2) CHECK(second == c[1]);
        CHECK(b.index_of(e) == i);
        if (i > 0) {
          const auto prev = b.exponents(i - 1);
          CHECK(std::lexicographical_compare(e.begin(), e.end(), prev.begin(), prev.end()));
        }
      }
      std::vector<int> off(static_cast<std::size_t>(b.num_vars()), 0);
      off[0] = static_cast<int>(c[0]) + 1;
      CHECK_FALSE(b.index_of(off).has_value());
    }
  }

  TEST_CASE("monomial bases are deterministic") {
    const auto a = MonomialBasis::build(VarietySpec::product(2, 1), DivisorClass({3, 2}));
    const auto b = MonomialBasis::build(VarietySpec::product(2, 1), DivisorClass({3, 2}));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(std::equal(a.exponents(i).begin(), a.exponents(i).end(), b.exponents(i).begin()));
  }

  TEST_CASE("colex ranking round trips") {
    CHECK(colex_rank(std::vector<std::uint32_t>{}) == 0);
    CHECK(colex_rank(std::vector<std::uint32_t>{0, 1, 2}) == 0);
    CHECK(colex_rank(std::vector<std::uint32_t>{0, 1, 3}) == 1);
    CHECK_THROWS(colex_rank(std::vector<std::uint32_t>{2, 1}));
    // Every k-subset of {0..11} gets a distinct rank in [0, C(12, k)).
    for (int k = 0; k <= 12; ++k) {
      const auto all = oracle::subsets(12, k);
      std::set<std::uint64_t> seen;
      for (const auto& s : all) {
        const std::vector<std::uint32_t> u(s.begin(), s.end());
        const auto r = colex_rank(u);
        CHECK(r < binomial_u64(12, k));
        seen.insert(r);
        CHECK(colex_unrank(r, u.size()) == u);
      }
      CHECK(seen.size() == all.size());
    }
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 500; ++trial) {
      std::set<std::uint32_t> pick;
      const std::size_t size = 1 + trial % 6;
      while (pick.size() < size) pick.insert(static_cast<std::uint32_t>(rng() % 400));
      const std::vector<std::uint32_t> s(pick.begin(), pick.end());
      CHECK(colex_unrank(colex_rank(s), s.size()) == s);
    }
    std::vector<std::uint32_t> huge(12);
    for (std::uint32_t i = 0; i < 12; ++i) huge[i] = 488 + i;
    CHECK_THROWS_AS(colex_rank(huge), std::overflow_error);
  }

  TEST_CASE("binomial table") {
    CHECK(binomial_u64(15, 9) == 5005);
    CHECK(binomial_u64(5, 7) == 0);
    CHECK(binomial_u64(500, 250) == UINT64_MAX);
  }

  TEST_CASE("differential examples") {
    const auto d1 = koszul_differential(pn(1, 0, 2), 1, DivisorClass({0}));
    CHECK(d1 == SparseMatrix::identity(3));
    CHECK(rank(d1, PrimeField(kDefaultPrimes[0])) == 3);

    const auto d2 = koszul_differential(pn(2, 0, 2), 2, DivisorClass({0}));
    CHECK(d2.rows() == 36);
    CHECK(d2.cols() == 15);
    for (const auto& e : d2.entries()) CHECK((e.value == 1 || e.value == -1));
    CHECK(rank(d2, PrimeField(kDefaultPrimes[0])) == oracle::bareiss_rank(oracle::to_dense(d2)));
    CHECK(oracle::bareiss_rank(oracle::to_dense(d2)) == 15);
    CHECK_THROWS_AS(koszul_differential(pn(2, 0, 2), 0, DivisorClass({0})), InputError);
  }

  TEST_CASE("consecutive differentials compose to zero") {
    const PrimeField f1(kDefaultPrimes[0]), f2(kDefaultPrimes[1]);
    const std::vector<Embedding> setups{pn(1, 0, 2), pn(1, 1, 3), pn(2, 0, 2), pp(1, 1, 1, 0, 1)};
    for (const auto& e : setups)
      for (int p = 2; p <= 4; ++p)
        for (int q = 0; q <= 2; ++q) {
          const DivisorClass twist = e.B + q * e.L();
          const auto first = koszul_differential(e, p, twist);
          const auto second = koszul_differential(e, p - 1, twist + e.L());
          CHECK(multiply(second, first, f1).is_zero());
          CHECK(multiply(second, first, f2).is_zero());
        }
  }

  TEST_CASE("differential ranks match the brute-force complex") {
    const std::vector<std::pair<Embedding, oracle::BruteKoszul>> cases{
        {pn(1, 0, 3), oracle::BruteKoszul({2}, 3, {0})},
        {pn(2, 1, 2), oracle::BruteKoszul({3}, 2, {1})},
        {pp(1, 1, 0, 1, 1), oracle::BruteKoszul({2, 2}, 1, {0, 1})}};
    const PrimeField f(kDefaultPrimes[1]);
    for (const auto& [e, brute] : cases)
      for (int p = 1; p <= 3; ++p)
        for (int q = 0; q <= 1; ++q)
          CHECK(rank(koszul_differential(e, p, e.B + q * e.L()), f) == brute.rank_of(p, q));
  }

  TEST_CASE("kpq examples") {
    CHECK(kpq_dim(pn(1, 0, 2), 1, 1).dim == 1);
    CHECK(kpq_dim(pn(2, 0, 2), 1, 1).dim == 6);
    CHECK(kpq_dim(pn(2, 0, 2), 1, 1).certainty == Certainty::agreed_two_primes);
    CHECK(kpq_dim(pn(2, 0, 2), 0, 0).dim == 1);
    for (const auto& e : {pn(1, 0, 3), pn(2, 0, 2), pn(2, 1, 3), pp(1, 1, 1, 1, 1)}) {
      const int n = e.variety.dim();
      KoszulEngine engine(e);
      for (int p = 0; p <= 6; ++p) CHECK(engine.kpq(p, n + 2).dim == 0);
    }
  }

  TEST_CASE("kpq matches the brute-force oracle") {
    const std::vector<std::pair<Embedding, oracle::BruteKoszul>> cases{
        {pn(1, 0, 2), oracle::BruteKoszul({2}, 2, {0})},
        {pn(1, 0, 4), oracle::BruteKoszul({2}, 4, {0})},
        {pn(1, 2, 3), oracle::BruteKoszul({2}, 3, {2})},
        {pn(2, 0, 2), oracle::BruteKoszul({3}, 2, {0})},
        {pn(2, 1, 1), oracle::BruteKoszul({3}, 1, {1})},
        {pp(1, 1, 0, 0, 1), oracle::BruteKoszul({2, 2}, 1, {0, 0})},
        {pp(1, 1, 2, 1, 1), oracle::BruteKoszul({2, 2}, 1, {2, 1})},
        {pp(1, 2, 0, 0, 1), oracle::BruteKoszul({2, 3}, 1, {0, 0})}};
    for (const auto& [e, brute] : cases) {
      KoszulEngine engine(e, single_thread());
      const int N = static_cast<int>(brute.V.size());
      for (int q = 0; q <= e.variety.dim() + 1; ++q)
        for (int p = 0; p <= N; ++p) {
          if (brute.term_dim(p, q) > 700) continue;
          INFO(e.variety.to_string(), " B=", e.B.to_string(), " d=", e.d, " p=", p, " q=", q);
          CHECK(engine.kpq(p, q).dim == brute.kpq(p, q));
        }
    }
  }

  TEST_CASE("betti table examples") {
    const auto t1 = betti_table(pn(1, 0, 3));
    CHECK(t1.support(1) == std::set<int>{1, 2});
    const auto t2 = betti_table(pn(2, 0, 2));
    CHECK(t2.support(1) == std::set<int>{1, 2, 3});
    CHECK(t2.support(2).empty());
    CHECK(t2.support(0) == std::set<int>{0});
    CHECK(*t2.find(2, 1)->dim == 8);
    CHECK(*t2.find(3, 1)->dim == 3);
    const auto t3 = betti_table(pn(2, 0, 3), -1, 2);
    CHECK(t3.support(2) == std::set<int>{7});
    CHECK(t3.p_limit == 10);
    for (const auto& c : t3.cells) {
      REQUIRE(c.dim.has_value());
      CHECK(*c.dim >= 0);
    }
  }

  TEST_CASE("tables do not depend on the worker count") {
    KoszulOptions one = single_thread();
    KoszulOptions many;
    many.threads = 4;
    const auto a = betti_table(pp(1, 1, 1, 0, 2), 6, 3, one);
    const auto b = betti_table(pp(1, 1, 1, 0, 2), 6, 3, many);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) CHECK(a.cells[i].dim == b.cells[i].dim);
  }

  TEST_CASE("complex check and prime agreement") {
    KoszulOptions o;
    o.check_complex = true;
    BettiStats stats;
    betti_table(pn(2, 0, 3), 10, 3, o, &stats);
    CHECK(stats.blocks > 0);
    CHECK(stats.complex_failures == 0);
    CHECK(stats.prime_disagreements == 0);
  }

  TEST_CASE("duality examples") {
    const auto e = pn(2, 0, 3);
    Embedding dual = e;
    dual.B = dual_twist(e).B_dual;
    const auto report = duality_check(betti_table(e, -1, 2), betti_table(dual, -1, 2));
    CHECK(report.violations.empty());
    CHECK(report.mismatches.empty());
    CHECK(report.cells_compared == 22);

    const auto e1 = pn(1, 0, 4);
    Embedding d1 = e1;
    d1.B = DivisorClass({2});
    CHECK(dual_twist(e1).B_dual == d1.B);
    const auto r1 = duality_check(betti_table(e1, -1, 1), betti_table(d1, -1, 1));
    CHECK(r1.violations.empty());
    CHECK(r1.mismatches.empty());
  }

  TEST_CASE("duality reports range mismatches separately") {
    const auto e = pn(2, 0, 3);
    Embedding dual = e;
    dual.B = dual_twist(e).B_dual;
    const auto report = duality_check(betti_table(e, 3, 2), betti_table(dual, 3, 2));
    CHECK(report.violations.empty());
    CHECK_FALSE(report.mismatches.empty());
    const auto curve = betti_table(pn(1, 0, 3), 2, 1);
    CHECK_THROWS_AS(duality_check(curve, curve), InputError);
    CHECK_THROWS_AS(duality_check(betti_table(e, 3, 2), betti_table(pn(2, 0, 4), 3, 2)), InputError);
  }

  TEST_CASE("duality flags a corrupted cell") {
    const auto e = pn(1, 0, 3);
    Embedding dual = e;
    dual.B = dual_twist(e).B_dual;
    auto t = betti_table(e, -1, 1);
    const auto td = betti_table(dual, -1, 1);
    for (auto& c : t.cells)
      if (c.p == 1 && c.q == 1) *c.dim += 1;
    const auto report = duality_check(t, td);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].p == 1);
  }

  TEST_CASE("Euler characteristic of each strand") {
    for (const auto& e : {pn(1, 0, 4), pn(2, 0, 2), pn(2, 1, 2), pp(1, 1, 0, 1, 1)}) {
      const auto t = betti_table(e);
      CHECK(euler_violations(t).empty());
    }
    auto t = betti_table(pn(1, 0, 3));
    *t.cells[static_cast<std::size_t>(t.p_limit + 1 + 2)].dim += 1;  // K_{2,1}
    CHECK(euler_violations(t) == std::vector<int>{3});
  }

  TEST_CASE("verify examples") {
    const auto t = betti_table(pn(2, 0, 3), -1, 2);
    const auto r = verify(predict_range({pn(2, 0, 3), 2}), t);
    CHECK(r.lower == 7);
    CHECK(r.upper == 7);
    CHECK(r.containment == Verdict::pass);
    CHECK(r.equality == true);
    CHECK(r.overall() == Verdict::pass);

    const auto t5 = betti_table(pn(1, 0, 5), -1, 1);
    const auto r5 = verify(predict_range({pn(1, 0, 5), 1}), t5);
    CHECK(r5.computed_support == interval(1, 4));
    CHECK(r5.equality == true);
    CHECK(r5.overall() == Verdict::pass);

    RangePrediction degenerate;
    degenerate.q = 1;
    degenerate.p_min = 5;
    degenerate.p_max = 3;
    const auto rd = verify(degenerate, t5);
    CHECK(rd.degenerate);
    CHECK(rd.containment == Verdict::pass);
  }

  TEST_CASE("verify reports missing, extra and uncovered cells") {
    const auto t = betti_table(pn(1, 0, 5), -1, 1);
    RangePrediction wide;
    wide.q = 1;
    wide.p_min = 1;
    wide.p_max = 5;
    wide.sharp = true;
    const auto r = verify(wide, t);
    CHECK(r.containment == Verdict::fail);
    REQUIRE_FALSE(r.discrepancies.empty());
    CHECK(r.discrepancies.front().kind == "missing");
    CHECK(r.discrepancies.front().p == 5);

    RangePrediction narrow = wide;
    narrow.p_max = 3;
    const auto rn = verify(narrow, t);
    CHECK(rn.containment == Verdict::pass);
    CHECK(rn.equality == false);
    CHECK(rn.overall() == Verdict::fail);
    narrow.sharp = false;
    CHECK(verify(narrow, t).overall() == Verdict::pass);

    const auto partial = betti_table(pn(1, 0, 5), 2, 1);
    const auto rp = verify(predict_range({pn(1, 0, 5), 1}), partial);
    CHECK(rp.containment == Verdict::inconclusive);
    CHECK_FALSE(rp.equality.has_value());
  }

  TEST_CASE("size cap refuses cells without failing the table") {
    KoszulOptions o;
    o.size_cap = 100;
    const auto t = betti_table(pn(2, 0, 2), -1, -1, o);
    const auto* big = t.find(3, 1);
    REQUIRE(big != nullptr);
    CHECK_FALSE(big->dim.has_value());
    CHECK(big->note.find("K_{3,1}") != std::string::npos);
    CHECK(t.find(0, 0)->dim == 1);
    KoszulEngine engine(pn(2, 0, 2), o);
    CHECK_THROWS_AS(engine.kpq(3, 1), ResourceRefusal);
    CHECK_THROWS_AS(betti_table(Embedding{VarietySpec::grassmannian_2_4(), DivisorClass({1}), DivisorClass({1}), 5}),
                    InputError);
  }
}
