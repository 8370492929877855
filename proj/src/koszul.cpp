#include "syzygy/koszul.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>
#include <unordered_map>

namespace syzygy {

namespace {

constexpr std::int64_t kTableSize = 512;

const std::vector<std::uint64_t>& binomial_table() {
  static const std::vector<std::uint64_t> table = [] {
    std::vector<std::uint64_t> t(kTableSize * kTableSize, 0);
    for (std::int64_t n = 0; n < kTableSize; ++n) {
      t[n * kTableSize] = 1;
      for (std::int64_t k = 1; k <= n; ++k) {
        const std::uint64_t a = t[(n - 1) * kTableSize + k - 1];
        const std::uint64_t b = t[(n - 1) * kTableSize + k];
        t[n * kTableSize + k] = (a > std::numeric_limits<std::uint64_t>::max() - b)
                                    ? std::numeric_limits<std::uint64_t>::max()
                                    : a + b;
      }
    }
    return t;
  }();
  return table;
}

// Compositions of `degree` into `parts` parts in lexicographically decreasing order.
void append_compositions(int parts, std::int64_t degree, std::vector<std::vector<int>>& out) {
  std::vector<int> current(static_cast<std::size_t>(parts), 0);
  auto rec = [&](auto&& self, int pos, std::int64_t remaining) -> void {
    if (pos == parts - 1) {
      current[static_cast<std::size_t>(pos)] = static_cast<int>(remaining);
      out.push_back(current);
      return;
    }
    for (std::int64_t a = remaining; a >= 0; --a) {
      current[static_cast<std::size_t>(pos)] = static_cast<int>(a);
      self(self, pos + 1, remaining - a);
    }
  };
  rec(rec, 0, degree);
}

std::uint64_t checked_u64(const BigInt& x, const char* what) {
  if (x > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
  }
  return x.convert_to<std::uint64_t>();
}

// Variable blocks of the homogeneous coordinate ring and the degree each
// block carries for a given class.
std::vector<int> block_sizes(const VarietySpec& v) {
  switch (v.kind()) {
    case VarietyKind::projective_space: return {v.n() + 1};
    case VarietyKind::product: return {v.s() + 1, v.t() + 1};
    case VarietyKind::grassmannian_2_4: break;
  }
  throw InputError("no monomial model for " + v.to_string() +
                   "; exact Koszul cohomology is available on pn and pp only");
}

// Packs a weight vector into one integer. Each coordinate of block b lies in
// [0, totals[b]].
class WeightPacker {
 public:
  WeightPacker(const std::vector<int>& sizes, const std::vector<std::int64_t>& totals) {
    __int128 span = 1;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      for (int i = 0; i < sizes[b]; ++i) {
        radix_.push_back(static_cast<std::uint64_t>(totals[b] + 1));
        span *= totals[b] + 1;
        if (span > static_cast<__int128>(std::numeric_limits<std::uint64_t>::max())) {
          throw std::overflow_error("weight space too large to index");
        }
      }
    }
  }

  std::uint64_t pack(std::span<const int> w) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < w.size(); ++i) key = key * radix_[i] + static_cast<std::uint64_t>(w[i]);
    return key;
  }

 private:
  std::vector<std::uint64_t> radix_;
};

// Permutations of variables inside a block act on every Koszul term and map
// weight spaces to each other isomorphically. Representatives have each block
// sorted in decreasing order.
bool is_canonical(std::span<const int> w, const std::vector<int>& sizes) {
  std::size_t off = 0;
  for (int size : sizes) {
    for (int i = 1; i < size; ++i) {
      if (w[off + i - 1] < w[off + i]) return false;
    }
    off += static_cast<std::size_t>(size);
  }
  return true;
}

std::uint64_t orbit_size(std::span<const int> w, const std::vector<int>& sizes) {
  std::uint64_t total = 1;
  std::size_t off = 0;
  for (int size : sizes) {
    // size! / prod(multiplicity!) built up as a product of binomials.
    std::uint64_t placed = 0;
    for (int i = 0; i < size;) {
      int j = i;
      while (j < size && w[off + j] == w[off + i]) ++j;
      const auto run = static_cast<std::uint64_t>(j - i);
      placed += run;
      total *= binomial_u64(static_cast<std::int64_t>(placed), static_cast<std::int64_t>(run));
      i = j;
    }
    off += static_cast<std::size_t>(size);
  }
  return total;
}

struct Element {
  std::uint64_t subset;
  std::uint32_t mono;
};

struct WeightGroup {
  std::uint64_t key = 0;
  std::uint64_t multiplicity = 0;
  std::vector<Element> elements;
};

// Rows are positions in wedge^{p-1} V (x) H0(target), compressed to the rows
// that are actually hit; `hit` receives their global indices in local order.
SparseMatrix assemble_block(std::span<const Element> columns, std::uint32_t p,
                            const MonomialBasis& V, const MonomialBasis& source,
                            const MonomialBasis& target, std::vector<std::uint64_t>* hit) {
  struct Triplet {
    std::uint64_t row;
    std::uint32_t col;
    std::int8_t sign;
  };
  std::vector<Triplet> triplets;
  triplets.reserve(columns.size() * p);
  const int nv = V.num_vars();
  std::vector<int> exps(static_cast<std::size_t>(nv));
  const std::uint64_t target_size = target.size();

  for (std::uint32_t c = 0; c < columns.size(); ++c) {
    const auto subset = colex_unrank(columns[c].subset, p);
    const auto m = source.exponents(columns[c].mono);
    // rank(S \ {s_j}) = sum_{i<j} C(s_i, i+1) + sum_{i>j} C(s_i, i)
    std::uint64_t upper = 0;
    for (std::uint32_t i = 1; i < p; ++i) upper += binomial_u64(subset[i], i);
    std::uint64_t lower = 0;
    for (std::uint32_t j = 0; j < p; ++j) {
      if (j > 0) {
        upper -= binomial_u64(subset[j], j);
        lower += binomial_u64(subset[j - 1], j);
      }
      const auto v = V.exponents(subset[j]);
      for (int k = 0; k < nv; ++k) exps[static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(k)] + v[static_cast<std::size_t>(k)];
      const auto idx = target.index_of(exps);
      if (!idx) throw std::logic_error("product monomial missing from target basis");
      triplets.push_back({(lower + upper) * target_size + *idx, c,
                          static_cast<std::int8_t>(j % 2 == 0 ? 1 : -1)});
    }
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  std::vector<MatrixEntry> entries;
  entries.reserve(triplets.size());
  std::uint32_t local = 0;
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    if (i > 0 && triplets[i].row != triplets[i - 1].row) ++local;
    if (hit && (i == 0 || triplets[i].row != triplets[i - 1].row)) hit->push_back(triplets[i].row);
    entries.push_back({local, triplets[i].col, triplets[i].sign});
  }
  const std::uint32_t n_rows = triplets.empty() ? 0 : local + 1;
  return SparseMatrix::from_entries(n_rows, static_cast<std::uint32_t>(columns.size()),
                                    std::move(entries));
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

std::uint64_t binomial_u64(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (n < kTableSize) return binomial_table()[static_cast<std::size_t>(n * kTableSize + k)];
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (result > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t colex_rank(std::span<const std::uint32_t> subset) {
  std::uint64_t r = 0;
  for (std::size_t j = 0; j < subset.size(); ++j) {
    if (j > 0 && subset[j] <= subset[j - 1]) throw std::invalid_argument("subset not strictly increasing");
    const std::uint64_t term = binomial_u64(subset[j], static_cast<std::int64_t>(j + 1));
    if (term == std::numeric_limits<std::uint64_t>::max() || __builtin_add_overflow(r, term, &r)) {
      throw std::overflow_error("colex rank does not fit in 64 bits");
    }
  }
  return r;
}

std::vector<std::uint32_t> colex_unrank(std::uint64_t rank, std::size_t size) {
  std::vector<std::uint32_t> subset(size);
  for (std::size_t j = size; j-- > 0;) {
    const auto k = static_cast<std::int64_t>(j + 1);
    // Largest x with C(x, k) <= rank.
    std::uint32_t x = static_cast<std::uint32_t>(j);
    while (binomial_u64(x + 1, k) <= rank) ++x;
    subset[j] = x;
    rank -= binomial_u64(x, k);
  }
  return subset;
}

MonomialBasis MonomialBasis::build(const VarietySpec& v, const DivisorClass& c) {
  check_class(v, c);
  MonomialBasis b;
  b.class_ = c;
  b.block_sizes_ = block_sizes(v);
  b.block_degrees_ = c.coords();
  for (int s : b.block_sizes_) b.num_vars_ += s;
  if (std::any_of(c.coords().begin(), c.coords().end(), [](auto x) { return x < 0; })) return b;

  std::vector<std::vector<std::vector<int>>> per_block(b.block_sizes_.size());
  for (std::size_t i = 0; i < b.block_sizes_.size(); ++i) {
    append_compositions(b.block_sizes_[i], b.block_degrees_[i], per_block[i]);
  }
  if (per_block.size() == 1) {
    for (const auto& e : per_block[0]) b.exps_.insert(b.exps_.end(), e.begin(), e.end());
    b.count_ = per_block[0].size();
  } else {
    for (const auto& e0 : per_block[0]) {
      for (const auto& e1 : per_block[1]) {
        b.exps_.insert(b.exps_.end(), e0.begin(), e0.end());
        b.exps_.insert(b.exps_.end(), e1.begin(), e1.end());
      }
    }
    b.count_ = per_block[0].size() * per_block[1].size();
  }
  return b;
}

std::optional<std::size_t> MonomialBasis::index_of(std::span<const int> exps) const {
  if (exps.size() != static_cast<std::size_t>(num_vars_) || count_ == 0) return std::nullopt;
  std::size_t index = 0;
  std::size_t off = 0;
  for (std::size_t b = 0; b < block_sizes_.size(); ++b) {
    const int k = block_sizes_[b];
    std::int64_t remaining = block_degrees_[b];
    std::uint64_t block_index = 0;
    for (int i = 0; i < k; ++i) {
      const int a = exps[off + static_cast<std::size_t>(i)];
      if (a < 0 || a > remaining) return std::nullopt;
      if (i < k - 1 && remaining - a >= 1) {
        const std::int64_t m = k - i - 1;
        block_index += binomial_u64(remaining - a - 1 + m, m);
      }
      remaining -= a;
    }
    if (remaining != 0) return std::nullopt;
    const std::uint64_t block_count = binomial_u64(block_degrees_[b] + k - 1, k - 1);
    index = index * block_count + block_index;
    off += static_cast<std::size_t>(k);
  }
  return index;
}

ResourceRefusal::ResourceRefusal(int p, int q, const BigInt& size, std::uint64_t cap)
    : std::runtime_error("K_{" + std::to_string(p) + "," + std::to_string(q) + "} refused: middle term has " +
                         size.str() + " basis elements, above the cap of " + std::to_string(cap)),
      p_(p),
      q_(q) {}

SparseMatrix koszul_differential(const Embedding& e, int p, const DivisorClass& twist) {
  e.validate();
  if (p < 1) throw InputError("Koszul differential needs p >= 1");
  const auto V = MonomialBasis::build(e.variety, e.L());
  const auto source = MonomialBasis::build(e.variety, twist);
  const auto target = MonomialBasis::build(e.variety, twist + e.L());
  const std::uint64_t n_cols = checked_u64(BigInt(binomial_u64(V.size(), p)) * source.size(), "source");
  const std::uint64_t n_rows =
      checked_u64(BigInt(binomial_u64(V.size(), p - 1)) * target.size(), "target");
  if (n_cols > std::numeric_limits<std::uint32_t>::max() || n_rows > std::numeric_limits<std::uint32_t>::max()) {
    throw std::overflow_error("differential too large for a single matrix");
  }
  std::vector<Element> columns;
  columns.reserve(n_cols);
  const std::uint64_t subsets = binomial_u64(V.size(), p);
  for (std::uint64_t s = 0; s < subsets; ++s) {
    for (std::uint32_t m = 0; m < source.size(); ++m) columns.push_back({s, m});
  }
  std::vector<std::uint64_t> hit;
  SparseMatrix local = assemble_block(columns, static_cast<std::uint32_t>(p), V, source, target, &hit);
  std::vector<MatrixEntry> entries;
  entries.reserve(local.nnz());
  for (const auto& en : local.entries()) {
    entries.push_back({static_cast<std::uint32_t>(hit[en.row]), en.col, en.value});
  }
  return SparseMatrix::from_entries(static_cast<std::uint32_t>(n_rows), static_cast<std::uint32_t>(n_cols),
                                    std::move(entries));
}

KoszulEngine::KoszulEngine(Embedding e, KoszulOptions options)
    : embedding_(std::move(e)),
      options_(options),
      field1_(options.primes[0]),
      field2_(options.primes[1]) {
  embedding_.validate();
  block_sizes(embedding_.variety);
  if (field1_ == field2_) throw InputError("the two primes must differ");
  const BigInt n = h0(embedding_.variety, embedding_.L());
  if (n >= kTableSize) throw InputError("dim V = " + n.str() + " is too large for exact computation");
  ambient_dim_ = n.convert_to<std::uint32_t>();
}

const MonomialBasis& KoszulEngine::basis(const DivisorClass& c) {
  auto it = bases_.find(c.coords());
  if (it == bases_.end()) it = bases_.emplace(c.coords(), MonomialBasis::build(embedding_.variety, c)).first;
  return it->second;
}

BigInt KoszulEngine::term_dim(int p, int q) const {
  if (p < 0 || static_cast<std::uint32_t>(p) > ambient_dim_) return 0;
  return BigInt(binomial_u64(ambient_dim_, p)) * h0(embedding_.variety, embedding_.B + q * embedding_.L());
}

CertifiedRank KoszulEngine::differential_rank(int p, int q) {
  auto key = std::make_pair(p, q);
  if (auto it = ranks_.find(key); it != ranks_.end()) return it->second;
  CertifiedRank r = compute_rank(p, q);
  ranks_.emplace(key, r);
  return r;
}

CertifiedRank KoszulEngine::compute_rank(int p, int q) {
  if (p < 1 || static_cast<std::uint32_t>(p) > ambient_dim_) return {};
  const DivisorClass L = embedding_.L();
  const auto& V = basis(L);
  const auto& source = basis(embedding_.B + q * L);
  const auto& target = basis(embedding_.B + (q + 1) * L);
  const auto& target2 = basis(embedding_.B + (q + 2) * L);
  if (source.size() == 0 || target.size() == 0) return {};

  const auto sizes = block_sizes(embedding_.variety);
  std::vector<std::int64_t> totals;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    totals.push_back(static_cast<std::int64_t>(p) * L[b] + source.divisor_class()[b]);
  }
  const WeightPacker packer(sizes, totals);
  const int nv = V.num_vars();

  // Bucket the source basis by canonical weight.
  std::unordered_map<std::uint64_t, std::size_t> group_of;
  std::vector<WeightGroup> groups;
  std::vector<std::uint32_t> subset(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) subset[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
  std::vector<int> ws(static_cast<std::size_t>(nv)), w(static_cast<std::size_t>(nv));
  const std::uint64_t n_subsets = binomial_u64(ambient_dim_, p);
  for (std::uint64_t rank = 0; rank < n_subsets; ++rank) {
    std::fill(ws.begin(), ws.end(), 0);
    for (auto i : subset) {
      const auto v = V.exponents(i);
      for (int k = 0; k < nv; ++k) ws[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(k)];
    }
    for (std::uint32_t m = 0; m < source.size(); ++m) {
      const auto e = source.exponents(m);
      for (int k = 0; k < nv; ++k) w[static_cast<std::size_t>(k)] = ws[static_cast<std::size_t>(k)] + e[static_cast<std::size_t>(k)];
      if (!is_canonical(w, sizes)) continue;
      const std::uint64_t key = packer.pack(w);
      auto [it, inserted] = group_of.emplace(key, groups.size());
      if (inserted) groups.push_back({key, orbit_size(w, sizes), {}});
      groups[it->second].elements.push_back({rank, m});
    }
    // Next subset in colex order.
    std::size_t i = 0;
    while (i + 1 < subset.size() && subset[i] + 1 == subset[i + 1]) ++i;
    if (i < subset.size()) ++subset[i];
    for (std::size_t j = 0; j < i; ++j) subset[j] = static_cast<std::uint32_t>(j);
  }
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.key < b.key; });

  struct BlockResult {
    CertifiedRank rank;
    bool complex_ok = true;
  };
  std::vector<BlockResult> results(groups.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t g; (g = next.fetch_add(1)) < groups.size();) {
      const auto& group = groups[g];
      std::vector<std::uint64_t> hit;
      SparseMatrix block = assemble_block(group.elements, static_cast<std::uint32_t>(p), V, source,
                                          target, options_.check_complex ? &hit : nullptr);
      results[g].rank = certified_rank(block, field1_, field2_, options_.rank);
      if (options_.check_complex && p >= 2 && target2.size() > 0) {
        std::vector<Element> next_cols;
        next_cols.reserve(hit.size());
        for (auto row : hit) {
          next_cols.push_back({row / target.size(), static_cast<std::uint32_t>(row % target.size())});
        }
        SparseMatrix after = assemble_block(next_cols, static_cast<std::uint32_t>(p - 1), V, target,
                                            target2, nullptr);
        results[g].complex_ok = multiply(after, block, field1_).is_zero() &&
                                multiply(after, block, field2_).is_zero();
      }
    }
  };
  const unsigned workers = worker_count(options_.threads, groups.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  CertifiedRank total;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    total.rank += results[g].rank.rank * groups[g].multiplicity;
    total.certainty = weakest(total.certainty, results[g].rank.certainty);
    if (results[g].rank.certainty == Certainty::prime_sensitive) ++prime_disagreements_;
    if (!results[g].complex_ok) ++complex_failures_;
  }
  blocks_assembled_ += groups.size();
  return total;
}

KpqDim KoszulEngine::kpq(int p, int q) {
  const BigInt middle = term_dim(p, q);
  if (middle > options_.size_cap) throw ResourceRefusal(p, q, middle, options_.size_cap);
  if (middle == 0) return {};
  const CertifiedRank out = differential_rank(p, q);
  const CertifiedRank in = differential_rank(p + 1, q - 1);
  KpqDim result;
  result.dim = middle - out.rank - in.rank;
  result.certainty = weakest(out.certainty, in.certainty);
  if (result.dim < 0) throw std::logic_error("negative Koszul cohomology dimension");
  return result;
}

KpqDim kpq_dim(const Embedding& e, int p, int q, const KoszulOptions& options) {
  KoszulEngine engine(e, options);
  return engine.kpq(p, q);
}

const BettiCell* BettiTable::find(int p, int q) const {
  if (p < 0 || q < 0 || p > p_limit || q > q_max) return nullptr;
  const auto idx = static_cast<std::size_t>(q) * static_cast<std::size_t>(p_limit + 1) + static_cast<std::size_t>(p);
  return idx < cells.size() ? &cells[idx] : nullptr;
}

std::set<int> BettiTable::support(int q) const {
  std::set<int> out;
  for (const auto& c : cells) {
    if (c.q == q && c.dim && *c.dim > 0) out.insert(c.p);
  }
  return out;
}

BettiTable betti_table(const Embedding& e, int p_limit, int q_max, const KoszulOptions& options,
                       BettiStats* stats) {
  KoszulEngine engine(e, options);
  BettiTable table;
  table.embedding = e;
  table.p_limit = p_limit < 0 ? static_cast<int>(engine.ambient_dim()) : p_limit;
  table.q_max = q_max < 0 ? e.variety.dim() + 1 : q_max;
  table.primes = options.primes;
  for (int q = 0; q <= table.q_max; ++q) {
    for (int p = 0; p <= table.p_limit; ++p) {
      BettiCell cell;
      cell.p = p;
      cell.q = q;
      try {
        auto r = engine.kpq(p, q);
        cell.dim = r.dim;
        cell.certainty = r.certainty;
      } catch (const ResourceRefusal& refusal) {
        cell.note = refusal.what();
      }
      table.cells.push_back(std::move(cell));
    }
  }
  if (stats) {
    stats->blocks = engine.blocks_assembled();
    stats->prime_disagreements = engine.prime_disagreements();
    stats->complex_failures = engine.complex_failures();
  }
  return table;
}

DualityReport duality_check(const BettiTable& t, const BettiTable& t_dual) {
  const auto& e = t.embedding;
  const auto& ed = t_dual.embedding;
  if (!(e.variety == ed.variety) || e.A != ed.A || e.d != ed.d) {
    throw InputError("duality check needs tables for the same variety, polarization and d");
  }
  const DivisorClass expected = dual_twist(e).B_dual;
  if (ed.B != expected) {
    throw InputError("dual table has B = " + ed.B.to_string() + " but the dual twist is " + expected.to_string());
  }
  const int n = e.variety.dim();
  const BigInt N = h0(e.variety, e.L());
  const int r_d = N.convert_to<int>() - 1;

  DualityReport report;
  for (const auto& cell : t.cells) {
    if (cell.q < 1 || cell.q > n) continue;
    const int p_dual = r_d - cell.p - n;
    const int q_dual = n - cell.q;
    if (!cell.dim) {
      report.mismatches.push_back({cell.p, cell.q, p_dual, q_dual, "cell not computed"});
      continue;
    }
    BigInt dual_dim = 0;
    if (p_dual >= 0) {
      const BettiCell* other = t_dual.find(p_dual, q_dual);
      if (!other) {
        report.mismatches.push_back({cell.p, cell.q, p_dual, q_dual, "reflected cell outside the dual table's range"});
        continue;
      }
      if (!other->dim) {
        report.mismatches.push_back({cell.p, cell.q, p_dual, q_dual, "reflected cell not computed"});
        continue;
      }
      dual_dim = *other->dim;
    }
    ++report.cells_compared;
    if (dual_dim != *cell.dim) report.violations.push_back({cell.p, cell.q, *cell.dim, p_dual, q_dual, dual_dim});
  }
  return report;
}

std::vector<int> euler_violations(const BettiTable& t) {
  const auto& e = t.embedding;
  if (h0(e.variety, e.B - e.L()) != 0) {
    throw InputError("Euler check needs H0(B - L) = 0 so that every strand starts in row q = 0");
  }
  const BigInt N = h0(e.variety, e.L());
  const auto n_vars = N.convert_to<std::int64_t>();
  std::vector<int> bad;
  for (int m = 0; m <= t.p_limit; ++m) {
    BigInt lhs = 0;
    BigInt rhs = 0;
    bool complete = true;
    for (int q = 0; q <= m; ++q) {
      const int p = m - q;
      const BigInt term = binomial(n_vars, p) * h0(e.variety, e.B + q * e.L());
      rhs += (q % 2 == 0) ? term : BigInt(-term);
      if (q > t.q_max) continue;
      const BettiCell* cell = t.find(p, q);
      if (!cell || !cell->dim) {
        complete = false;
        break;
      }
      lhs += (q % 2 == 0) ? *cell->dim : BigInt(-*cell->dim);
    }
    if (complete && lhs != rhs) bad.push_back(m);
  }
  return bad;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return {};
}

Verdict VerificationReport::overall() const {
  if (containment != Verdict::pass) return containment;
  if (prediction.sharp && equality == false) return Verdict::fail;
  return Verdict::pass;
}

VerificationReport verify(const RangePrediction& prediction, const BettiTable& table) {
  VerificationReport report;
  report.prediction = prediction;
  report.lower = prediction.p_min < 1 ? BigInt(1) : prediction.p_min;
  report.upper = prediction.p_max;
  report.degenerate = report.upper < report.lower;
  const int q = prediction.q;
  report.computed_support = table.support(q);

  const BigInt N = h0(table.embedding.variety, table.embedding.L());
  bool row_complete = q >= 0 && q <= table.q_max && N <= table.p_limit;
  if (row_complete) {
    for (int p = 0; p <= table.p_limit; ++p) {
      if (!table.find(p, q)->dim) row_complete = false;
    }
  }

  if (report.degenerate) {
    report.containment = Verdict::pass;
  } else if (report.upper > table.p_limit || q < 0 || q > table.q_max) {
    report.containment = Verdict::inconclusive;
  } else {
    bool zero_seen = false;
    bool uncovered = false;
    const int lo = report.lower.convert_to<int>();
    const int hi = report.upper.convert_to<int>();
    for (int p = lo; p <= hi; ++p) {
      const BettiCell* cell = table.find(p, q);
      if (!cell || !cell->dim) {
        uncovered = true;
      } else if (*cell->dim == 0) {
        zero_seen = true;
        report.discrepancies.push_back({p, "missing"});
      }
    }
    report.containment = zero_seen ? Verdict::fail : uncovered ? Verdict::inconclusive : Verdict::pass;
  }
  for (int p : report.computed_support) {
    if (report.degenerate || p < report.lower || p > report.upper) report.discrepancies.push_back({p, "extra"});
  }
  std::sort(report.discrepancies.begin(), report.discrepancies.end(),
            [](const auto& a, const auto& b) { return a.p < b.p; });
  if (row_complete) {
    std::set<int> interval;
    if (!report.degenerate) {
      const BigInt hi = report.upper < N ? report.upper : N;
      for (BigInt p = report.lower; p <= hi; ++p) interval.insert(p.convert_to<int>());
      report.equality = report.upper <= N && interval == report.computed_support;
    } else {
      report.equality = report.computed_support.empty();
    }
  }
  return report;
}

}  // namespace syzygy
