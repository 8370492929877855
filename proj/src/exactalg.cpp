#include "syzygy/exactalg.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

namespace syzygy {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

// Reduces a row of pending sums, each below 2^64, to canonical residues.
void reduce_row(std::uint64_t* row, std::size_t len, std::uint64_t p) {
  for (std::size_t k = 0; k < len; ++k) row[k] %= p;
}

// Dense row echelon rank. Rows accumulate up to three unreduced products
// (each below p^2 < 2^62) before a full reduction.
std::size_t dense_rank(std::vector<std::uint64_t>& a, std::size_t n_rows, std::size_t n_cols,
                       const PrimeField& f) {
  const std::uint64_t p = f.modulus();
  constexpr int kMaxPending = 3;
  std::vector<int> pending(n_rows, 0);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n_cols && r < n_rows; ++c) {
    std::size_t pivot = n_rows;
    for (std::size_t i = r; i < n_rows; ++i) {
      auto& x = a[i * n_cols + c];
      x %= p;
      if (x != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == n_rows) continue;
    if (pivot != r) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * n_cols),
                       a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * n_cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * n_cols));
      std::swap(pending[pivot], pending[r]);
    }
    std::uint64_t* prow = &a[r * n_cols];
    reduce_row(prow + c, n_cols - c, p);
    pending[r] = 0;
    const std::uint64_t inv = f.inv(static_cast<std::uint32_t>(prow[c]));
    for (std::size_t k = c; k < n_cols; ++k) prow[k] = prow[k] * inv % p;

    for (std::size_t i = r + 1; i < n_rows; ++i) {
      std::uint64_t* row = &a[i * n_cols];
      const std::uint64_t x = row[c] % p;
      row[c] = 0;
      if (x == 0) continue;
      const std::uint64_t factor = p - x;
      for (std::size_t k = c + 1; k < n_cols; ++k) row[k] += factor * prow[k];
      if (++pending[i] == kMaxPending) {
        reduce_row(row + c + 1, n_cols - c - 1, p);
        pending[i] = 0;
      }
    }
    ++r;
  }
  return r;
}

using Row = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

class SparseEliminator {
 public:
  SparseEliminator(const SparseMatrix& m, const PrimeField& f, const RankOptions& options)
      : f_(f), options_(options), rows_(m.rows()), col_count_(m.cols(), 0), col_rows_(m.cols()) {
    for (const auto& e : m.entries()) {
      const std::uint32_t v = f.reduce(e.value);
      if (v != 0) rows_[e.row].emplace_back(e.col, v);
    }
    active_.assign(rows_.size(), false);
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) continue;
      active_[r] = true;
      ++active_rows_;
      for (auto [c, v] : rows_[r]) {
        inc(c);
        col_rows_[c].push_back(r);
      }
    }
    for (std::uint32_t c = 0; c < col_count_.size(); ++c) {
      if (col_count_[c]) heap_.emplace(col_count_[c], c);
    }
  }

  std::size_t run() {
    std::size_t rank = 0;
    while (active_rows_ > 0 && active_cols_ > 0) {
      const double area = static_cast<double>(active_rows_) * static_cast<double>(active_cols_);
      if (static_cast<double>(nnz_) >= options_.dense_threshold * area &&
          area <= static_cast<double>(options_.dense_max_entries)) {
        return rank + dense_tail();
      }
      const std::uint32_t col = next_pivot_column();
      const std::uint32_t pivot = choose_pivot_row(col);
      eliminate(pivot, col);
      ++rank;
    }
    return rank;
  }

 private:
  void inc(std::uint32_t c) {
    if (col_count_[c]++ == 0) ++active_cols_;
    ++nnz_;
  }
  void dec(std::uint32_t c) {
    if (--col_count_[c] == 0) --active_cols_;
    --nnz_;
  }

  static bool contains(const Row& row, std::uint32_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::uint32_t c) { return e.first < c; });
    return it != row.end() && it->first == col;
  }

  std::uint32_t next_pivot_column() {
    while (true) {
      auto [count, c] = heap_.top();
      heap_.pop();
      if (count != 0 && count == col_count_[c]) return c;
    }
  }

  std::uint32_t choose_pivot_row(std::uint32_t col) {
    auto& list = col_rows_[col];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::erase_if(list, [&](std::uint32_t r) { return !active_[r] || !contains(rows_[r], col); });
    std::uint32_t best = list.front();
    for (auto r : list) {
      if (rows_[r].size() < rows_[best].size()) best = r;
    }
    return best;
  }

  void eliminate(std::uint32_t pivot, std::uint32_t col) {
    Row prow = std::move(rows_[pivot]);
    rows_[pivot].clear();
    active_[pivot] = false;
    --active_rows_;
    std::uint32_t lead = 0;
    for (auto [c, v] : prow) {
      dec(c);
      if (c == col) lead = v;
      else heap_.emplace(col_count_[c], c);
    }
    const std::uint32_t inv = f_.inv(lead);
    for (auto& e : prow) e.second = f_.mul(e.second, inv);

    const std::vector<std::uint32_t> targets = col_rows_[col];
    col_rows_[col].clear();
    for (auto r : targets) {
      if (r == pivot || !active_[r]) continue;
      axpy(r, prow, col);
    }
  }

  // rows_[r] -= a * prow where a is rows_[r]'s entry in `col`; prow[col] == 1.
  void axpy(std::uint32_t r, const Row& prow, std::uint32_t col) {
    Row& row = rows_[r];
    std::uint32_t a = 0;
    for (auto [c, v] : row) {
      if (c == col) {
        a = v;
        break;
      }
    }
    if (a == 0) return;
    const std::uint32_t na = f_.neg(a);
    scratch_.clear();
    auto it = row.begin();
    auto jt = prow.begin();
    while (it != row.end() || jt != prow.end()) {
      if (jt == prow.end() || (it != row.end() && it->first < jt->first)) {
        scratch_.push_back(*it++);
      } else if (it == row.end() || jt->first < it->first) {
        const std::uint32_t c = jt->first;
        scratch_.emplace_back(c, f_.mul(na, jt->second));
        inc(c);
        col_rows_[c].push_back(r);
        heap_.emplace(col_count_[c], c);
        ++jt;
      } else {
        const std::uint32_t c = it->first;
        const std::uint32_t v = f_.add(it->second, f_.mul(na, jt->second));
        if (v != 0) {
          scratch_.emplace_back(c, v);
        } else {
          dec(c);
          if (c != col) heap_.emplace(col_count_[c], c);
        }
        ++it;
        ++jt;
      }
    }
    row.swap(scratch_);
    if (row.empty()) {
      active_[r] = false;
      --active_rows_;
    }
  }

  std::size_t dense_tail() {
    std::vector<std::uint32_t> col_index(col_count_.size(), 0);
    std::size_t n_cols = 0;
    for (std::uint32_t c = 0; c < col_count_.size(); ++c) {
      if (col_count_[c]) col_index[c] = static_cast<std::uint32_t>(n_cols++);
    }
    std::vector<std::uint64_t> dense(active_rows_ * n_cols, 0);
    std::size_t i = 0;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (!active_[r]) continue;
      for (auto [c, v] : rows_[r]) dense[i * n_cols + col_index[c]] = v;
      ++i;
    }
    return dense_rank(dense, active_rows_, n_cols, f_);
  }

  using HeapItem = std::pair<std::uint32_t, std::uint32_t>;

  const PrimeField& f_;
  RankOptions options_;
  std::vector<Row> rows_;
  std::vector<bool> active_;
  std::vector<std::uint32_t> col_count_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap_;
  std::size_t active_rows_ = 0;
  std::size_t active_cols_ = 0;
  std::size_t nnz_ = 0;
  Row scratch_;
};

}  // namespace

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t small : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % small == 0) return n == small;
  }
  std::uint32_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Bases 2, 7, 61 are a deterministic witness set below 4759123141.
  for (std::uint64_t a : {2u, 7u, 61u}) {
    if (a % n == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p <= (1u << 20) || p >= (1u << 31)) {
    throw std::invalid_argument("prime " + std::to_string(p) + " outside (2^20, 2^31)");
  }
  if (!is_prime_u32(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero");
  return static_cast<std::uint32_t>(pow_mod(a, p_ - 2, p_));
}

SparseMatrix SparseMatrix::from_entries(std::uint32_t rows, std::uint32_t cols,
                                        std::vector<MatrixEntry> entries) {
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw std::out_of_range("entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                              ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(rows, cols);
  for (const auto& e : entries) {
    if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
      m.entries_.back().value += e.value;
      if (m.entries_.back().value == 0) m.entries_.pop_back();
    } else if (e.value != 0) {
      m.entries_.push_back(e);
    }
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::uint32_t n) {
  SparseMatrix m(n, n);
  for (std::uint32_t i = 0; i < n; ++i) m.entries_.push_back({i, i, 1});
  return m;
}

SparseMatrix SparseMatrix::reduced(const PrimeField& f) const {
  SparseMatrix m(rows_, cols_);
  for (const auto& e : entries_) {
    const auto v = f.reduce(e.value);
    if (v) m.entries_.push_back({e.row, e.col, v});
  }
  return m;
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<MatrixEntry> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
  return from_entries(cols_, rows_, std::move(t));
}

std::size_t rank(const SparseMatrix& m, const PrimeField& f, const RankOptions& options) {
  if (m.is_zero()) return 0;
  SparseEliminator elim(m, f, options);
  return elim.run();
}

std::string_view to_string(Certainty c) {
  return c == Certainty::agreed_two_primes ? "agreed-two-primes" : "prime-sensitive";
}

CertifiedRank certified_rank(const SparseMatrix& m, const PrimeField& f1, const PrimeField& f2,
                             const RankOptions& options) {
  if (f1 == f2) throw std::invalid_argument("certified_rank needs two distinct primes");
  const std::size_t r1 = rank(m, f1, options);
  const std::size_t r2 = rank(m, f2, options);
  if (r1 == r2) return {r1, Certainty::agreed_two_primes};
  return {std::max(r1, r2), Certainty::prime_sensitive};
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const PrimeField& f) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("cannot multiply " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
  }
  std::vector<std::size_t> row_start(b.rows() + 1, 0);
  for (const auto& e : b.entries()) ++row_start[e.row + 1];
  for (std::size_t i = 0; i < b.rows(); ++i) row_start[i + 1] += row_start[i];

  std::vector<std::uint32_t> acc(b.cols(), 0);
  std::vector<bool> seen(b.cols(), false);
  std::vector<std::uint32_t> touched;
  std::vector<MatrixEntry> out;
  const auto& ae = a.entries();
  for (std::size_t i = 0; i < ae.size();) {
    const std::uint32_t row = ae[i].row;
    for (; i < ae.size() && ae[i].row == row; ++i) {
      const std::uint32_t x = f.reduce(ae[i].value);
      for (std::size_t k = row_start[ae[i].col]; k < row_start[ae[i].col + 1]; ++k) {
        const auto& be = b.entries()[k];
        if (!seen[be.col]) {
          seen[be.col] = true;
          touched.push_back(be.col);
        }
        acc[be.col] = f.add(acc[be.col], f.mul(x, f.reduce(be.value)));
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto c : touched) {
      if (acc[c] != 0) out.push_back({row, c, acc[c]});
      acc[c] = 0;
      seen[c] = false;
    }
    touched.clear();
  }
  return SparseMatrix::from_entries(a.rows(), b.cols(), std::move(out));
}

void write_dump(std::ostream& out, const SparseMatrix& m, const PrimeField& f) {
  const SparseMatrix r = m.reduced(f);
  out << r.rows() << ' ' << r.cols() << ' ' << f.modulus() << ' ' << r.nnz() << '\n';
  for (const auto& e : r.entries()) out << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

SparseMatrix read_dump(std::istream& in, std::uint32_t* prime) {
  std::uint64_t rows = 0, cols = 0, p = 0, nnz = 0;
  if (!(in >> rows >> cols >> p >> nnz)) throw std::runtime_error("malformed matrix dump header");
  std::vector<MatrixEntry> entries;
  entries.reserve(nnz);
  for (std::uint64_t i = 0; i < nnz; ++i) {
    MatrixEntry e{};
    if (!(in >> e.row >> e.col >> e.value)) throw std::runtime_error("truncated matrix dump");
    entries.push_back(e);
  }
  if (prime) *prime = static_cast<std::uint32_t>(p);
  return SparseMatrix::from_entries(static_cast<std::uint32_t>(rows),
                                    static_cast<std::uint32_t>(cols), std::move(entries));
}

}  // namespace syzygy
