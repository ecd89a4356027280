#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qldpc {

/// Dense bit-packed vector over GF(2). Padding bits past `size()` are kept zero.
class BinVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BinVector() = default;
  explicit BinVector(std::size_t len);

  static BinVector from_bits(const std::vector<std::uint8_t>& bits);
  static BinVector from_support(std::size_t len, std::span<const std::size_t> support);
  static BinVector from_support(std::size_t len, std::initializer_list<std::size_t> support) {
    return from_support(len, std::span<const std::size_t>(support.begin(), support.size()));
  }

  std::size_t size() const { return len_; }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value = true) {
    Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  /// Throws std::invalid_argument on length mismatch.
  BinVector& operator^=(const BinVector& other);
  friend BinVector operator^(BinVector a, const BinVector& b) { return a ^= b; }

  std::size_t weight() const;
  bool any() const;
  bool is_zero() const { return !any(); }
  std::vector<std::size_t> support() const;
  std::string to_string() const;

  std::span<Word> words() { return words_; }
  std::span<const Word> words() const { return words_; }

  friend bool operator==(const BinVector&, const BinVector&) = default;

 private:
  std::size_t len_ = 0;
  std::vector<Word> words_;
};

/// Dense row-major bit-packed matrix over GF(2).
class BinMatrix {
 public:
  using Word = BinVector::Word;

  BinMatrix() = default;
  BinMatrix(std::size_t rows, std::size_t cols);

  static BinMatrix identity(std::size_t n);
  /// Rows given as 0/1 lists; all rows must share one length.
  static BinMatrix from_rows(const std::vector<std::vector<std::uint8_t>>& rows);
  static BinMatrix from_row_vectors(std::size_t cols, const std::vector<BinVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * stride_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    Word mask = Word{1} << (c % 64);
    Word& w = data_[r * stride_ + c / 64];
    w = value ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / 64] ^= Word{1} << (c % 64); }

  std::span<Word> row_words(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
  std::span<const Word> row_words(std::size_t r) const {
    return {data_.data() + r * stride_, stride_};
  }
  BinVector row(std::size_t r) const;
  void set_row(std::size_t r, const BinVector& v);
  /// row(dst) ^= row(src)
  void xor_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);
  std::size_t row_weight(std::size_t r) const;
  /// Column indices of the ones in row `r`.
  std::vector<std::size_t> row_support(std::size_t r) const;

  BinMatrix transpose() const;
  BinMatrix select_columns(std::span<const std::size_t> columns) const;
  bool is_zero() const;
  std::string shape_string() const;

  friend bool operator==(const BinMatrix&, const BinMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

BinMatrix mul(const BinMatrix& a, const BinMatrix& b);
BinVector mat_vec(const BinMatrix& a, const BinVector& v);
BinMatrix kron(const BinMatrix& a, const BinMatrix& b);
BinMatrix hstack(const BinMatrix& a, const BinMatrix& b);
BinMatrix vstack(const BinMatrix& a, const BinMatrix& b);
BinMatrix add(const BinMatrix& a, const BinMatrix& b);

/// l x l cyclic shift: S[i][(i+1) mod l] = 1.
BinMatrix shift_matrix(std::size_t l);
/// S_l^power, built directly.
BinMatrix shift_matrix_power(std::size_t l, std::size_t power);

/// Gauss-Jordan elimination record of a matrix A.
///
/// Columns are scanned left to right; each pivot is the first row (at or
/// below the current rank) with a one in that column. `reduced` is the
/// reduced row echelon form of A and `transform` the invertible row-operation
/// matrix with transform * A == reduced, so one record solves A x = s for any
/// number of right-hand sides.
struct Elimination {
  BinMatrix reduced;
  BinMatrix transform;
  std::vector<std::size_t> pivots;  // pivot column of reduced row r, r < rank

  std::size_t rank() const { return pivots.size(); }
  /// Solution with all non-pivot variables zero, or nullopt if inconsistent.
  std::optional<BinVector> solve(const BinVector& s) const;
};

Elimination eliminate(const BinMatrix& a);

std::size_t rank(const BinMatrix& a);

struct SolveResult {
  std::optional<BinVector> x;
  std::vector<std::size_t> pivots;
};

/// Solves A x = s; `x` is empty when the system is inconsistent.
SolveResult solve(const BinMatrix& a, const BinVector& s);

/// Rows span {v : A v = 0}; there are cols - rank(A) of them.
BinMatrix kernel_basis(const BinMatrix& a);

bool in_rowspace(const BinMatrix& a, const BinVector& v);

/// Inverse of a square full-rank matrix; nullopt when singular.
std::optional<BinMatrix> inverse(const BinMatrix& a);

}  // namespace qldpc
