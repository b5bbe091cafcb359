#include "rotor/linalg.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

namespace rotor {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw LinalgError("ragged matrix literal");
    for (long long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::size_t cols, const std::vector<std::vector<BigInt>>& rows) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw LinalgError("row length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

IntMatrix IntMatrix::rows_except(std::size_t skip) const {
  if (skip >= rows_) throw LinalgError("row index out of range");
  IntMatrix out(rows_ - 1, cols_);
  for (std::size_t r = 0, o = 0; r < rows_; ++r) {
    if (r == skip) continue;
    std::copy(row(r).begin(), row(r).end(), out.row(o++).begin());
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw LinalgError("dimension mismatch in product");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << "]\n";
  }
  return os;
}

std::vector<BigInt> row_times(std::span<const BigInt> vec, const IntMatrix& m) {
  if (vec.size() != m.rows()) throw LinalgError("dimension mismatch in row product");
  std::vector<BigInt> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (vec[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += vec[i] * m(i, j);
  }
  return out;
}

IntMatrix laplacian(const DirectedMultigraph& g) {
  const auto n = g.vertex_count();
  IntMatrix lap(n, n);
  for (Vertex v = 1; v <= n; ++v) {
    lap(v - 1, v - 1) += static_cast<long long>(g.out_degree(v));
    for (Vertex h : g.out_edges(v)) lap(v - 1, h - 1) -= 1;
  }
  // A loop contributes +1 via the degree and -1 via the head, which is
  // exactly the "outdegree minus loops" diagonal.
  return lap;
}

IntMatrix delete_row_col(const IntMatrix& m, std::size_t index) {
  if (index >= m.rows() || index >= m.cols()) throw LinalgError("index out of range");
  IntMatrix out(m.rows() - 1, m.cols() - 1);
  for (std::size_t r = 0, orow = 0; r < m.rows(); ++r) {
    if (r == index) continue;
    for (std::size_t c = 0, ocol = 0; c < m.cols(); ++c) {
      if (c == index) continue;
      out(orow, ocol++) = m(r, c);
    }
    ++orow;
  }
  return out;
}

IntMatrix delete_col(const IntMatrix& m, std::size_t index) {
  if (index >= m.cols()) throw LinalgError("column index out of range");
  IntMatrix out(m.rows(), m.cols() - 1);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0, ocol = 0; c < m.cols(); ++c) {
      if (c == index) continue;
      out(r, ocol++) = m(r, c);
    }
  return out;
}

BigInt det_exact(const IntMatrix& input) {
  if (!input.is_square()) throw LinalgError("determinant of a non-square matrix");
  const auto n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = k; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Exact by Sylvester's identity.
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

BigInt gcd_of(std::span<const BigInt> values) {
  BigInt g = 0;
  for (const auto& v : values) g = boost::multiprecision::gcd(g, abs(v));
  return g;
}

TreeCountVector tree_counts(const DirectedMultigraph& g) {
  TreeCountVector out;
  const auto lap = laplacian(g);
  out.counts.reserve(g.vertex_count());
  for (std::size_t j = 0; j < g.vertex_count(); ++j) out.counts.push_back(det_exact(delete_row_col(lap, j)));
  out.m_gcd = gcd_of(out.counts);
  return out;
}

TreeCountVector brute_force_tree_counts(const DirectedMultigraph& g, BruteForceOptions options) {
  const auto n = g.vertex_count();
  std::uint64_t product = 1;
  for (Vertex v = 1; v <= n; ++v) {
    auto d = std::max<std::uint64_t>(1, g.out_degree(v));
    if (product > options.budget / d) throw LinalgError("brute-force tree count over budget");
    product *= d;
  }

  TreeCountVector out;
  out.counts.assign(n, 0);
  std::vector<std::size_t> choice(n);
  std::vector<std::size_t> parent(n);
  std::vector<char> state(n);
  for (std::size_t root = 0; root < n; ++root) {
    bool possible = true;
    for (std::size_t v = 0; v < n; ++v)
      if (v != root && g.out_degree(static_cast<Vertex>(v + 1)) == 0) possible = false;
    if (!possible) continue;

    std::fill(choice.begin(), choice.end(), 0);
    std::uint64_t count = 0;
    while (true) {
      for (std::size_t v = 0; v < n; ++v)
        if (v != root) parent[v] = g.out_edges(static_cast<Vertex>(v + 1))[choice[v]] - 1;

      // 0 = unknown, 1 = on current path, 2 = reaches root.
      std::fill(state.begin(), state.end(), 0);
      state[root] = 2;
      bool tree = true;
      for (std::size_t v = 0; v < n && tree; ++v) {
        std::size_t w = v;
        while (state[w] == 0) {
          state[w] = 1;
          w = parent[w];
        }
        if (state[w] == 1) tree = false;
        for (std::size_t u = v; state[u] == 1; u = parent[u]) state[u] = 2;
      }
      if (tree) ++count;

      std::size_t v = 0;
      for (; v < n; ++v) {
        if (v == root) continue;
        if (++choice[v] < g.out_degree(static_cast<Vertex>(v + 1))) break;
        choice[v] = 0;
      }
      if (v == n) break;
    }
    out.counts[root] = count;
  }
  out.m_gcd = gcd_of(out.counts);
  return out;
}

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void axpy_rows(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  // row[dst] -= q * row[src]
  if (q == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= q * m(src, c);
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows()), 0, {}};
  auto& h = out.hnf;
  auto& u = out.transform;
  const auto rows = h.rows();
  std::size_t k = 0;
  for (std::size_t col = 0; col < h.cols() && k < rows; ++col) {
    while (true) {
      // Bring the smallest nonzero entry of the column to row k.
      std::size_t best = rows;
      for (std::size_t r = k; r < rows; ++r) {
        if (h(r, col) != 0 && (best == rows || abs(h(r, col)) < abs(h(best, col)))) best = r;
      }
      if (best == rows) break;
      swap_rows(h, k, best);
      swap_rows(u, k, best);
      bool done = true;
      for (std::size_t r = k + 1; r < rows; ++r) {
        if (h(r, col) == 0) continue;
        BigInt q = floor_div(h(r, col), h(k, col));
        axpy_rows(h, r, k, q);
        axpy_rows(u, r, k, q);
        if (h(r, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(k, col) == 0) continue;
    if (h(k, col) < 0) {
      negate_row(h, k);
      negate_row(u, k);
    }
    for (std::size_t r = 0; r < k; ++r) {
      BigInt q = floor_div(h(r, col), h(k, col));
      axpy_rows(h, r, k, q);
      axpy_rows(u, r, k, q);
    }
    out.pivot_cols.push_back(col);
    ++k;
  }
  out.rank = k;
  return out;
}

bool lattice_member(std::span<const BigInt> vec, const HermiteForm& basis, std::size_t cols) {
  if (vec.size() != cols) throw LinalgError("dimension mismatch in lattice membership");
  std::vector<BigInt> w(vec.begin(), vec.end());
  std::size_t next_col = 0;
  for (std::size_t k = 0; k < basis.rank; ++k) {
    const auto pc = basis.pivot_cols[k];
    for (; next_col < pc; ++next_col)
      if (w[next_col] != 0) return false;
    const auto& pivot = basis.hnf(k, pc);
    if (w[pc] % pivot != 0) return false;
    BigInt q = w[pc] / pivot;
    if (q != 0)
      for (std::size_t c = pc; c < cols; ++c) w[c] -= q * basis.hnf(k, c);
    next_col = pc + 1;
  }
  for (; next_col < cols; ++next_col)
    if (w[next_col] != 0) return false;
  return true;
}

bool lattice_member(std::span<const BigInt> vec, const IntMatrix& basis) {
  if (vec.size() != basis.cols()) throw LinalgError("dimension mismatch in lattice membership");
  return lattice_member(vec, hermite_normal_form(basis), basis.cols());
}

BigInt order_in_quotient(std::span<const BigInt> vec, const IntMatrix& other_rows) {
  const auto cols = other_rows.cols();
  if (vec.size() != cols) throw LinalgError("dimension mismatch in quotient order");
  const auto base = hermite_normal_form(other_rows);

  IntMatrix extended(other_rows.rows() + 1, cols);
  std::copy(vec.begin(), vec.end(), extended.row(0).begin());
  for (std::size_t r = 0; r < other_rows.rows(); ++r)
    std::copy(other_rows.row(r).begin(), other_rows.row(r).end(), extended.row(r + 1).begin());
  const auto grown = hermite_normal_form(extended);
  if (grown.rank != base.rank) throw LinalgError("infinite order: vector outside the lattice span");

  // Same rational span, so both echelon bases share pivot columns and the
  // index of the sublattice is the ratio of pivot products.
  BigInt base_vol = 1, grown_vol = 1;
  for (std::size_t k = 0; k < base.rank; ++k) {
    base_vol *= base.hnf(k, base.pivot_cols[k]);
    grown_vol *= grown.hnf(k, grown.pivot_cols[k]);
  }
  if (base.pivot_cols != grown.pivot_cols || base_vol % grown_vol != 0)
    throw LinalgError("inconsistent Hermite forms in quotient order");
  return base_vol / grown_vol;
}

}  // namespace rotor
