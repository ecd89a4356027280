#include "qldpc/codes.h"

#include <algorithm>
#include <numeric>

#include "qldpc/rng.h"

namespace qldpc {

std::string_view family_name(CodeFamily f) {
  switch (f) {
    case CodeFamily::GB:
      return "gb";
    case CodeFamily::BB:
      return "bb";
    case CodeFamily::CoprimeBB:
      return "coprime";
  }
  return "?";
}

BinMatrix polynomial_matrix(const CodeSpec& spec, const std::vector<PolyTerm>& terms) {
  const std::size_t size = spec.l * spec.m;
  BinMatrix sum(size, size);
  for (const PolyTerm& t : terms) {
    BinMatrix mono = mul(kron(shift_matrix_power(spec.l, t.x_exp), BinMatrix::identity(spec.m)),
                         kron(BinMatrix::identity(spec.l), shift_matrix_power(spec.m, t.y_exp)));
    sum = add(sum, mono);
  }
  return sum;
}

namespace {

void check_terms(const std::vector<PolyTerm>& terms, char which) {
  if (terms.empty()) {
    throw std::invalid_argument(std::string("polynomial ") + which + " has no terms");
  }
  std::vector<PolyTerm> sorted = terms;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw std::invalid_argument(std::string("polynomial ") + which + " has duplicate monomial x^" +
                                std::to_string(dup->x_exp) + "*y^" + std::to_string(dup->y_exp));
  }
}

// Verifies every CssCode invariant; failures are construction bugs.
void verify_code(const CssCode& code) {
  if (!mul(code.hx, code.hz.transpose()).is_zero()) {
    throw std::logic_error("CSS condition H_X H_Z^T = 0 violated");
  }
  if (code.lx.rows() != code.k || code.lz.rows() != code.k) {
    throw std::logic_error("logical basis size does not match k");
  }
  if (!mul(code.lx, code.hz.transpose()).is_zero() ||
      !mul(code.lz, code.hx.transpose()).is_zero()) {
    throw std::logic_error("logical operator does not commute with stabilizers");
  }
  if (mul(code.lx, code.lz.transpose()) != BinMatrix::identity(code.k)) {
    throw std::logic_error("logical bases are not paired");
  }
}

// Rows of `candidates` that extend span(base), greedily in order.
BinMatrix complement_rows(const BinMatrix& base, const BinMatrix& candidates) {
  // Incremental echelon form of the accumulated span keyed by leading column.
  std::vector<BinVector> echelon;
  std::vector<std::size_t> lead;
  auto reduce = [&](BinVector v) {
    for (std::size_t i = 0; i < echelon.size(); ++i) {
      if (v.get(lead[i])) v ^= echelon[i];
    }
    return v;
  };
  auto insert = [&](BinVector v) {
    std::size_t c = v.support().front();
    // Keep echelon rows fully reduced on their leading columns.
    for (auto& row : echelon) {
      if (row.get(c)) row ^= v;
    }
    echelon.push_back(std::move(v));
    lead.push_back(c);
  };
  for (std::size_t r = 0; r < base.rows(); ++r) {
    BinVector v = reduce(base.row(r));
    if (v.any()) insert(std::move(v));
  }
  std::vector<BinVector> picked;
  for (std::size_t r = 0; r < candidates.rows(); ++r) {
    BinVector row = candidates.row(r);
    BinVector v = reduce(row);
    if (v.any()) {
      insert(std::move(v));
      picked.push_back(std::move(row));
    }
  }
  return BinMatrix::from_row_vectors(candidates.cols(), picked);
}

}  // namespace

LogicalBases compute_logicals(const BinMatrix& hx, const BinMatrix& hz) {
  if (hx.cols() != hz.cols()) {
    throw std::invalid_argument("compute_logicals: hx " + hx.shape_string() + " and hz " +
                                hz.shape_string() + " differ in column count");
  }
  BinMatrix lx = complement_rows(hx, kernel_basis(hz));
  BinMatrix lz = complement_rows(hz, kernel_basis(hx));
  // Re-pair lz so that lx * lz^T = I.
  BinMatrix pairing = mul(lx, lz.transpose());
  auto inv = inverse(pairing);
  if (!inv) throw std::logic_error("logical pairing matrix is singular");
  lz = mul(inv->transpose(), lz);
  return {std::move(lx), std::move(lz)};
}

CssCode make_css_code(BinMatrix hx, BinMatrix hz, std::string name) {
  CssCode code;
  code.n = hx.cols();
  code.spec.name = std::move(name);
  if (!mul(hx, hz.transpose()).is_zero()) {
    throw std::invalid_argument("make_css_code: H_X H_Z^T != 0");
  }
  code.k = code.n - rank(hx) - rank(hz);
  auto logicals = compute_logicals(hx, hz);
  code.hx = std::move(hx);
  code.hz = std::move(hz);
  code.lx = std::move(logicals.lx);
  code.lz = std::move(logicals.lz);
  verify_code(code);
  return code;
}

CssCode build_code(const CodeSpec& spec) {
  if (spec.l == 0 || spec.m == 0) throw std::invalid_argument("build_code: l and m must be >= 1");
  if (spec.family == CodeFamily::GB && spec.m != 1) {
    throw std::invalid_argument("build_code: GB codes require m == 1");
  }
  check_terms(spec.a_terms, 'a');
  check_terms(spec.b_terms, 'b');
  for (const auto* terms : {&spec.a_terms, &spec.b_terms}) {
    for (const PolyTerm& t : *terms) {
      if (t.x_exp >= spec.l || t.y_exp >= spec.m) {
        throw std::invalid_argument("build_code: exponent not reduced mod (l, m)");
      }
    }
  }
  BinMatrix a = polynomial_matrix(spec, spec.a_terms);
  BinMatrix b = polynomial_matrix(spec, spec.b_terms);
  CssCode code = make_css_code(hstack(a, b), hstack(b.transpose(), a.transpose()), spec.name);
  code.spec = spec;
  return code;
}

std::size_t min_weight_logical_upper_bound(const CssCode& code, std::size_t budget,
                                           std::uint64_t seed) {
  std::size_t best = code.n;
  for (std::size_t r = 0; r < code.lz.rows(); ++r) best = std::min(best, code.lz.row_weight(r));
  if (code.k == 0) return best;

  auto nontrivial = [&](const BinVector& v) { return mat_vec(code.lx, v).any(); };

  Rng rng(seed, 0x6c6f676963616cULL);
  std::vector<std::size_t> perm(code.n);
  for (std::size_t trial = 0; trial < budget; ++trial) {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = code.n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    Elimination e = eliminate(code.hx.select_columns(perm));
    std::vector<bool> is_pivot(code.n, false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < code.n; ++c) {
      if (!is_pivot[c]) free_cols.push_back(c);
    }
    // Column c of the reduced matrix over pivot rows, mapped back to qubits.
    std::vector<BinVector> words;
    words.reserve(free_cols.size());
    for (std::size_t f : free_cols) {
      BinVector w(code.n);
      w.set(perm[f]);
      for (std::size_t r = 0; r < e.rank(); ++r) {
        if (e.reduced.get(r, f)) w.set(perm[e.pivots[r]]);
      }
      words.push_back(std::move(w));
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i].weight() < best && nontrivial(words[i])) best = words[i].weight();
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        BinVector v = words[i] ^ words[j];
        if (v.weight() < best && nontrivial(v)) best = v.weight();
      }
    }
  }
  return best;
}

}  // namespace qldpc
