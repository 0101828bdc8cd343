#pragma once

#include <compare>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "quadham/error.hpp"

namespace quadham {

using Complex = std::complex<double>;

enum class SymbolKind : int { position = 0, momentum = 1 };

/// One canonical operator x_m or p_m (1-based index m).
struct OpSymbol {
  SymbolKind kind;
  int index;
  auto operator<=>(const OpSymbol&) const = default;
};

inline OpSymbol pos_symbol(int m) { return {SymbolKind::position, m}; }
inline OpSymbol mom_symbol(int m) { return {SymbolKind::momentum, m}; }

// Row/column of the symbol in the basis (x_1..x_K, p_1..p_K), 0-based.
inline int basis_index(const OpSymbol& s, int K) {
  return s.kind == SymbolKind::position ? s.index - 1 : K + s.index - 1;
}
OpSymbol basis_symbol(int idx, int K);  // inverse of basis_index

std::string symbol_name(const OpSymbol& s);

/// Ordered product of symbols.  Normal form = sorted: positions before
/// momenta, indices ascending within each group.
using Word = std::vector<OpSymbol>;

bool is_normal_form(const Word& w);

// Longest word the algebra manipulates while reducing products of two
// quadratics.  Publicly visible polynomials stay at degree <= 2.
inline constexpr int kMaxWordLength = 4;

/// Polynomial in x_1..x_K, p_1..p_K over C with [x_m, p_n] = i delta_mn.
/// Terms are keyed by normal-form words; exact-zero coefficients are never
/// stored.  Immutable value semantics: every operation returns a new value.
class OperatorPoly {
 public:
  explicit OperatorPoly(int K);

  static OperatorPoly constant(int K, Complex c);
  static OperatorPoly symbol(int K, OpSymbol s);
  static OperatorPoly position(int K, int m) { return symbol(K, pos_symbol(m)); }
  static OperatorPoly momentum(int K, int m) { return symbol(K, mom_symbol(m)); }

  int K() const { return k_; }
  const std::map<Word, Complex>& terms() const { return terms_; }
  int degree() const;  // 0 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  Complex coefficient(const Word& w) const;
  double max_abs_coefficient() const;

  // Accumulates c * (w reduced to normal form).
  void add_word(const Word& w, Complex c);

  OperatorPoly& operator+=(const OperatorPoly& rhs);
  OperatorPoly& operator-=(const OperatorPoly& rhs);
  OperatorPoly& operator*=(Complex c);

  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
  friend OperatorPoly operator*(Complex c, OperatorPoly a) { return a *= c; }
  friend OperatorPoly operator*(OperatorPoly a, Complex c) { return a *= c; }
  // Operator product ab; total degree of the factors must not exceed 4.
  friend OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b);

  std::string str() const;

 private:
  friend OperatorPoly normal_order(int K, const Word& word, Complex coeff);
  int k_;
  std::map<Word, Complex> terms_;
};

/// Reduces coeff * word to normal form via [x_m, p_n] = i delta_mn rewrites.
/// Words longer than 4 are rejected.
OperatorPoly normal_order(int K, const Word& word, Complex coeff);

/// [a, b] = ab - ba in normal form.  deg a + deg b must be <= 4, so the
/// degree-4 intermediates stay representable; the result closes at
/// deg a + deg b - 2.
OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b);

/// Word-reversed, coefficient-conjugated polynomial (x, p self-adjoint).
OperatorPoly adjoint(const OperatorPoly& a);

/// True iff every coefficient of adjoint(a) - a has magnitude <= tol.
bool is_symmetric(const OperatorPoly& a, double tol = 1e-12);

/// Largest coefficient magnitude of a - b; the coefficient-wise distance.
double max_coeff_distance(const OperatorPoly& a, const OperatorPoly& b);

}  // namespace quadham
