#include "qldpc/gf2.h"

#include <algorithm>
#include <stdexcept>

namespace qldpc {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

[[noreturn]] void shape_error(const char* op, const std::string& a, const std::string& b) {
  throw std::invalid_argument(std::string(op) + ": incompatible shapes " + a + " and " + b);
}

}  // namespace

BinVector::BinVector(std::size_t len) : len_(len), words_(words_for(len), 0) {}

BinVector BinVector::from_bits(const std::vector<std::uint8_t>& bits) {
  BinVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) v.set(i);
  }
  return v;
}

BinVector BinVector::from_support(std::size_t len, std::span<const std::size_t> support) {
  BinVector v(len);
  for (std::size_t i : support) {
    if (i >= len) throw std::out_of_range("BinVector: support index out of range");
    v.flip(i);
  }
  return v;
}

BinVector& BinVector::operator^=(const BinVector& other) {
  if (other.len_ != len_) {
    shape_error("xor", std::to_string(len_), std::to_string(other.len_));
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::size_t BinVector::weight() const {
  std::size_t w = 0;
  for (Word x : words_) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

bool BinVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](Word x) { return x != 0; });
}

std::vector<std::size_t> BinVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word x = words_[w];
    while (x) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

std::string BinVector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BinMatrix::BinMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BinMatrix BinMatrix::identity(std::size_t n) {
  BinMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BinMatrix BinMatrix::from_rows(const std::vector<std::vector<std::uint8_t>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BinMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c]) m.set(r, c);
    }
  }
  return m;
}

BinMatrix BinMatrix::from_row_vectors(std::size_t cols, const std::vector<BinVector>& rows) {
  BinMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BinVector BinMatrix::row(std::size_t r) const {
  BinVector v(cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * stride_), stride_, v.words().begin());
  return v;
}

void BinMatrix::set_row(std::size_t r, const BinVector& v) {
  if (v.size() != cols_) shape_error("set_row", shape_string(), std::to_string(v.size()));
  std::copy(v.words().begin(), v.words().end(), data_.begin() + static_cast<std::ptrdiff_t>(r * stride_));
}

void BinMatrix::xor_row(std::size_t dst, std::size_t src) {
  Word* d = data_.data() + dst * stride_;
  const Word* s = data_.data() + src * stride_;
  for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void BinMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                   data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                   data_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
}

std::size_t BinMatrix::row_weight(std::size_t r) const {
  std::size_t w = 0;
  for (Word x : row_words(r)) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

std::vector<std::size_t> BinMatrix::row_support(std::size_t r) const {
  std::vector<std::size_t> out;
  auto words = row_words(r);
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word x = words[w];
    while (x) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

BinMatrix BinMatrix::transpose() const {
  BinMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c : row_support(r)) t.set(c, r);
  }
  return t;
}

BinMatrix BinMatrix::select_columns(std::span<const std::size_t> columns) const {
  BinMatrix out(rows_, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] >= cols_) throw std::out_of_range("select_columns: column out of range");
    for (std::size_t r = 0; r < rows_; ++r) {
      if (get(r, columns[j])) out.set(r, j);
    }
  }
  return out;
}

bool BinMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Word x) { return x == 0; });
}

std::string BinMatrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

BinMatrix mul(const BinMatrix& a, const BinMatrix& b) {
  if (a.cols() != b.rows()) shape_error("mul", a.shape_string(), b.shape_string());
  BinMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = c.row_words(i);
    for (std::size_t k : a.row_support(i)) {
      auto src = b.row_words(k);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
    }
  }
  return c;
}

BinVector mat_vec(const BinMatrix& a, const BinVector& v) {
  if (a.cols() != v.size()) shape_error("mat_vec", a.shape_string(), std::to_string(v.size()));
  BinVector out(a.rows());
  auto vw = v.words();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto rw = a.row_words(i);
    BinVector::Word acc = 0;
    for (std::size_t w = 0; w < rw.size(); ++w) acc ^= rw[w] & vw[w];
    if (std::popcount(acc) & 1) out.set(i);
  }
  return out;
}

BinMatrix kron(const BinMatrix& a, const BinMatrix& b) {
  BinMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j : a.row_support(i)) {
      for (std::size_t p = 0; p < b.rows(); ++p) {
        for (std::size_t q : b.row_support(p)) {
          out.set(i * b.rows() + p, j * b.cols() + q);
        }
      }
    }
  }
  return out;
}

BinMatrix hstack(const BinMatrix& a, const BinMatrix& b) {
  if (a.rows() != b.rows()) shape_error("hstack", a.shape_string(), b.shape_string());
  BinMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c : a.row_support(r)) out.set(r, c);
    for (std::size_t c : b.row_support(r)) out.set(r, a.cols() + c);
  }
  return out;
}

BinMatrix vstack(const BinMatrix& a, const BinMatrix& b) {
  if (a.cols() != b.cols()) shape_error("vstack", a.shape_string(), b.shape_string());
  BinMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) out.set_row(r, a.row(r));
  for (std::size_t r = 0; r < b.rows(); ++r) out.set_row(a.rows() + r, b.row(r));
  return out;
}

BinMatrix add(const BinMatrix& a, const BinMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    shape_error("add", a.shape_string(), b.shape_string());
  }
  BinMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto d = out.row_words(r);
    auto s = b.row_words(r);
    for (std::size_t w = 0; w < d.size(); ++w) d[w] ^= s[w];
  }
  return out;
}

BinMatrix shift_matrix(std::size_t l) { return shift_matrix_power(l, 1); }

BinMatrix shift_matrix_power(std::size_t l, std::size_t power) {
  if (l == 0) throw std::invalid_argument("shift_matrix: size must be at least 1");
  BinMatrix s(l, l);
  for (std::size_t i = 0; i < l; ++i) s.set(i, (i + power) % l);
  return s;
}

Elimination eliminate(const BinMatrix& a) {
  Elimination e{a, BinMatrix::identity(a.rows()), {}};
  BinMatrix& m = e.reduced;
  BinMatrix& t = e.transform;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    t.swap_rows(r, p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && m.get(i, c)) {
        m.xor_row(i, r);
        t.xor_row(i, r);
      }
    }
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

std::optional<BinVector> Elimination::solve(const BinVector& s) const {
  if (s.size() != transform.rows()) {
    shape_error("solve", reduced.shape_string(), std::to_string(s.size()));
  }
  BinVector y = mat_vec(transform, s);
  for (std::size_t r = rank(); r < y.size(); ++r) {
    if (y.get(r)) return std::nullopt;
  }
  BinVector x(reduced.cols());
  for (std::size_t r = 0; r < rank(); ++r) {
    if (y.get(r)) x.set(pivots[r]);
  }
  return x;
}

std::size_t rank(const BinMatrix& a) {
  // Elimination without the transform bookkeeping.
  BinMatrix m = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m.get(i, c)) m.xor_row(i, r);
    }
    ++r;
  }
  return r;
}

SolveResult solve(const BinMatrix& a, const BinVector& s) {
  if (a.rows() != s.size()) shape_error("solve", a.shape_string(), std::to_string(s.size()));
  Elimination e = eliminate(a);
  return {e.solve(s), std::move(e.pivots)};
}

BinMatrix kernel_basis(const BinMatrix& a) {
  Elimination e = eliminate(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  BinMatrix basis(a.cols() - e.rank(), a.cols());
  std::size_t out = 0;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    basis.set(out, f);
    for (std::size_t r = 0; r < e.rank(); ++r) {
      if (e.reduced.get(r, f)) basis.set(out, e.pivots[r]);
    }
    ++out;
  }
  return basis;
}

bool in_rowspace(const BinMatrix& a, const BinVector& v) {
  if (a.cols() != v.size()) shape_error("in_rowspace", a.shape_string(), std::to_string(v.size()));
  Elimination e = eliminate(a);
  BinVector residual = v;
  for (std::size_t r = 0; r < e.rank(); ++r) {
    if (residual.get(e.pivots[r])) {
      auto rw = e.reduced.row_words(r);
      auto dw = residual.words();
      for (std::size_t w = 0; w < dw.size(); ++w) dw[w] ^= rw[w];
    }
  }
  return residual.is_zero();
}

std::optional<BinMatrix> inverse(const BinMatrix& a) {
  if (a.rows() != a.cols()) shape_error("inverse", a.shape_string(), a.shape_string());
  Elimination e = eliminate(a);
  if (e.rank() != a.rows()) return std::nullopt;
  return std::move(e.transform);
}

}  // namespace qldpc
