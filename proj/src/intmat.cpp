#include "idealscan/intmat.hpp"

#include <algorithm>
#include <utility>

namespace idealscan {

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  IntMatrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != m.cols_) throw std::invalid_argument("ragged rows");
    std::size_t j = 0;
    for (long long x : row) m.at(i, j++) = x;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const BigInt& c) {
  for (std::size_t k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

IntMatrix IntMatrix::without_column(std::size_t col) const {
  if (col >= cols_) throw std::invalid_argument("column out of range");
  IntMatrix out(rows_, cols_ - 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::size_t jo = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j == col) continue;
      out.at(i, jo++) = at(i, j);
    }
  }
  return out;
}

BigInt det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a.at(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(p, k);
      sign = -sign;
    }
    // Bareiss step: every division below is exact.
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

std::vector<BigInt> maximal_minor_vector(const IntMatrix& m) {
  if (m.cols() != m.rows() + 1)
    throw std::invalid_argument("maximal_minor_vector needs a k x (k+1) matrix");
  std::vector<BigInt> d(m.cols());
  for (std::size_t nu = 0; nu < m.cols(); ++nu) {
    BigInt minor = det(m.without_column(nu));
    d[nu] = (nu % 2 == 0) ? minor : -minor;
  }
  return d;
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t nr = a.rows(), nc = a.cols();
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < nc && r < nr; ++col) {
    std::size_t p = r;
    while (p < nr && a.at(p, col) == 0) ++p;
    if (p == nr) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < nr; ++i)
      for (std::size_t j = col + 1; j < nc; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(r, col) - a.at(i, col) * a.at(r, j)) / prev;
    prev = a.at(r, col);
    ++r;
  }
  return r;
}

namespace {

// gcd elimination of column `col` using rows [top, rows); leaves the unique
// nonzero of the column (if any) at row `top`. Calls `on_swap(i, j)` and
// `on_addmul(i, j, c)` mirroring each row operation so callers can track
// side data. Returns true if the pivot ends up nonzero.
template <typename SwapFn, typename AddFn>
bool eliminate_column(IntMatrix& a, std::size_t top, std::size_t col,
                      SwapFn on_swap, AddFn on_addmul) {
  const std::size_t nr = a.rows();
  for (;;) {
    std::size_t best = nr;
    for (std::size_t i = top; i < nr; ++i) {
      if (a.at(i, col) == 0) continue;
      if (best == nr ||
          boost::multiprecision::abs(a.at(i, col)) < boost::multiprecision::abs(a.at(best, col)))
        best = i;
    }
    if (best == nr) return false;
    if (best != top) {
      a.swap_rows(best, top);
      on_swap(best, top);
    }
    bool leftover = false;
    for (std::size_t i = top + 1; i < nr; ++i) {
      if (a.at(i, col) == 0) continue;
      BigInt q = a.at(i, col) / a.at(top, col);  // truncated quotient
      if (q != 0) {
        a.add_row_multiple(i, top, -q);
        on_addmul(i, top, -q);
      }
      if (a.at(i, col) != 0) leftover = true;
    }
    if (!leftover) return true;
  }
}

}  // namespace

RowBasis row_basis(const IntMatrix& m) {
  IntMatrix a = m;
  RowBasis out;
  std::size_t top = 0;
  auto ignore_swap = [](std::size_t, std::size_t) {};
  auto ignore_add = [](std::size_t, std::size_t, const BigInt&) {};
  for (std::size_t col = 0; col < a.cols() && top < a.rows(); ++col) {
    if (eliminate_column(a, top, col, ignore_swap, ignore_add)) {
      out.pivot_cols.push_back(col);
      ++top;
    }
  }
  out.basis = IntMatrix(top, a.cols());
  for (std::size_t i = 0; i < top; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.basis.at(i, j) = a.at(i, j);
  return out;
}

TriangularSystem triangularize(IntMatrix m, std::vector<int> targets) {
  if (m.rows() != m.cols()) throw std::invalid_argument("triangularize needs a square matrix");
  if (targets.size() != m.rows()) throw std::invalid_argument("one target per row required");
  for (int t : targets)
    if (t != 1 && t != -1) throw std::invalid_argument("targets must be +1 or -1");
  auto track_swap = [&](std::size_t i, std::size_t j) { std::swap(targets[i], targets[j]); };
  // R_i <- R_i + c * R_j multiplies target_i by target_j^c; only the parity
  // of c matters since targets are signs.
  auto track_add = [&](std::size_t i, std::size_t j, const BigInt& c) {
    if (c % 2 != 0) targets[i] *= targets[j];
  };
  for (std::size_t col = 0; col < m.cols(); ++col) {
    if (!eliminate_column(m, col, col, track_swap, track_add))
      throw std::domain_error("singular system: zero pivot");
  }
  return TriangularSystem{std::move(m), std::move(targets)};
}

}  // namespace idealscan
