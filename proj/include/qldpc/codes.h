#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qldpc/gf2.h"

namespace qldpc {

enum class CodeFamily { GB, BB, CoprimeBB };

std::string_view family_name(CodeFamily f);

/// Monomial x^x_exp * y^y_exp, exponents already reduced mod l and mod m.
struct PolyTerm {
  std::size_t x_exp = 0;
  std::size_t y_exp = 0;

  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
  friend auto operator<=>(const PolyTerm&, const PolyTerm&) = default;
};

struct CodeSpec {
  CodeFamily family = CodeFamily::BB;
  std::size_t l = 1;
  std::size_t m = 1;
  std::vector<PolyTerm> a_terms;
  std::vector<PolyTerm> b_terms;
  std::string name;
};

/// Raised for malformed code spec text; carries the 1-based line number.
class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses `family l m a:<terms> b:<terms> [name:<text>]`.
///
/// Terms are comma separated: `1`, `x^i`, `y^j`, `x^i*y^j` or `pi^e`.
/// Blank lines and `#` comments are skipped; the first remaining line is the
/// spec. Keywords are case-insensitive. Exponents are reduced on parse; pi
/// exponents expand to (e mod l, e mod m).
CodeSpec parse_code_spec(std::string_view text);
std::string format_code_spec(const CodeSpec& spec);

/// Looks up one of bb72, bb144, bb288, cbb126, cbb154, gb254.
CodeSpec builtin_code_spec(std::string_view name);
std::vector<std::string> builtin_code_names();

struct CssCode {
  std::size_t n = 0;
  std::size_t k = 0;
  BinMatrix hx;
  BinMatrix hz;
  BinMatrix lx;  // X-type logicals: in ker(hz), outside rowspace(hx)
  BinMatrix lz;  // Z-type logicals, paired so that lx * lz^T = I_k
  CodeSpec spec;
};

/// Polynomial matrix sum_i x^{a_i} y^{b_i} with x = S_l (x) I_m, y = I_l (x) S_m.
BinMatrix polynomial_matrix(const CodeSpec& spec, const std::vector<PolyTerm>& terms);

/// H_X = [A|B], H_Z = [B^T|A^T]; logicals computed and all invariants checked.
CssCode build_code(const CodeSpec& spec);

/// Wraps explicit check matrices (used for small fixtures such as Steane).
CssCode make_css_code(BinMatrix hx, BinMatrix hz, std::string name);

struct LogicalBases {
  BinMatrix lx;
  BinMatrix lz;
};

/// Deterministic (pivot-order) logical bases with lx * lz^T = I_k.
LogicalBases compute_logicals(const BinMatrix& hx, const BinMatrix& hz);

/// Upper bound on the Z-distance from randomized information-set probing.
///
/// Starts from the lightest row of lz. Each of `budget` trials permutes the
/// columns of hx at random, eliminates, and tests every codeword of ker(hx)
/// generated by one or two information-set columns; nontrivial logicals
/// (odd overlap with some lx row) tighten the bound.
std::size_t min_weight_logical_upper_bound(const CssCode& code, std::size_t budget,
                                           std::uint64_t seed = 1);

}  // namespace qldpc
