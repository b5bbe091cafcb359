#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rotor/graph.hpp"

namespace rotor {

using BigInt = boost::multiprecision::cpp_int;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Build from explicit rows; every row must have `cols` entries.
  static IntMatrix from_rows(std::size_t cols, const std::vector<std::vector<BigInt>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const BigInt> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<BigInt> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  /// Rows other than `skip`, in order.
  IntMatrix rows_except(std::size_t skip) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Row vector times matrix.
std::vector<BigInt> row_times(std::span<const BigInt> vec, const IntMatrix& m);

/// Laplacian with respect to the vertex order 1..n: diagonal is outdegree
/// minus loops, off-diagonal (i, j) is minus the number of edges i -> j.
IntMatrix laplacian(const DirectedMultigraph& g);

/// Remove row `index` and column `index` (0-based).
IntMatrix delete_row_col(const IntMatrix& m, std::size_t index);
/// Remove column `index` (0-based), keeping every row.
IntMatrix delete_col(const IntMatrix& m, std::size_t index);

/// Exact determinant by Bareiss fraction-free elimination. The 0x0
/// determinant is 1.
BigInt det_exact(const IntMatrix& m);

struct TreeCountVector {
  /// counts[v-1] = number of oriented spanning trees rooted at v.
  std::vector<BigInt> counts;
  /// gcd of all counts; 0 when every count is 0.
  BigInt m_gcd;
};

BigInt gcd_of(std::span<const BigInt> values);

/// Arborescence counts per root via the matrix-tree theorem.
TreeCountVector tree_counts(const DirectedMultigraph& g);

struct BruteForceOptions {
  /// Upper bound on the product of outdegrees (sinks count as 1).
  std::uint64_t budget = 1'000'000;
};

/// Arborescence counts by enumerating every choice of one out-edge per
/// non-root vertex. Throws LinalgError when the product of outdegrees
/// exceeds the budget.
TreeCountVector brute_force_tree_counts(const DirectedMultigraph& g, BruteForceOptions options = {});

struct HermiteForm {
  /// Row-style Hermite normal form: nonzero rows first, pivots positive and
  /// strictly to the right of the previous row's pivot, entries above each
  /// pivot reduced into [0, pivot).
  IntMatrix hnf;
  /// Unimodular with transform * input == hnf.
  IntMatrix transform;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

HermiteForm hermite_normal_form(const IntMatrix& m);

/// True iff vec is an integer combination of the rows of basis.
bool lattice_member(std::span<const BigInt> vec, const IntMatrix& basis);
/// Same, reusing an already computed Hermite form of the basis.
bool lattice_member(std::span<const BigInt> vec, const HermiteForm& basis, std::size_t cols);

/// Smallest p >= 1 with p * vec in the lattice spanned by other_rows.
/// Throws LinalgError when no such p exists (vec outside the rational span).
BigInt order_in_quotient(std::span<const BigInt> vec, const IntMatrix& other_rows);

}  // namespace rotor
