#include "quadham/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <utility>

namespace quadham {

namespace {

constexpr Complex kImagUnit{0.0, 1.0};

void check_index(int index, int K) {
  if (index < 1 || index > K) {
    throw DimensionError("operator index " + std::to_string(index) +
                         " outside 1.." + std::to_string(K));
  }
}

}  // namespace

OpSymbol basis_symbol(int idx, int K) {
  if (idx < 0 || idx >= 2 * K) {
    throw DimensionError("basis index out of range");
  }
  return idx < K ? pos_symbol(idx + 1) : mom_symbol(idx - K + 1);
}

std::string symbol_name(const OpSymbol& s) {
  return (s.kind == SymbolKind::position ? "x" : "p") + std::to_string(s.index);
}

bool is_normal_form(const Word& w) {
  return std::is_sorted(w.begin(), w.end());
}

OperatorPoly::OperatorPoly(int K) : k_(K) {
  if (K < 1) {
    throw DomainError("basis size K must be >= 1");
  }
}

OperatorPoly OperatorPoly::constant(int K, Complex c) {
  OperatorPoly p(K);
  if (c != 0.0) {
    p.terms_.emplace(Word{}, c);
  }
  return p;
}

OperatorPoly OperatorPoly::symbol(int K, OpSymbol s) {
  OperatorPoly p(K);
  check_index(s.index, K);
  p.terms_.emplace(Word{s}, Complex{1.0, 0.0});
  return p;
}

int OperatorPoly::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) {
    d = std::max(d, static_cast<int>(w.size()));
  }
  return d;
}

Complex OperatorPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex{} : it->second;
}

double OperatorPoly::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [w, c] : terms_) {
    m = std::max(m, std::abs(c));
  }
  return m;
}

void OperatorPoly::add_word(const Word& w, Complex c) {
  if (c == 0.0) {
    return;
  }
  for (const auto& s : w) {
    check_index(s.index, k_);
  }
  OperatorPoly reduced = normal_order(k_, w, c);
  *this += reduced;
}

OperatorPoly& OperatorPoly::operator+=(const OperatorPoly& rhs) {
  if (rhs.k_ != k_) {
    throw DimensionError("basis size mismatch: K=" + std::to_string(k_) +
                         " vs K=" + std::to_string(rhs.k_));
  }
  for (const auto& [w, c] : rhs.terms_) {
    Complex& acc = terms_[w];
    acc += c;
    if (acc == 0.0) {
      terms_.erase(w);
    }
  }
  return *this;
}

OperatorPoly& OperatorPoly::operator-=(const OperatorPoly& rhs) {
  if (rhs.k_ != k_) {
    throw DimensionError("basis size mismatch: K=" + std::to_string(k_) +
                         " vs K=" + std::to_string(rhs.k_));
  }
  for (const auto& [w, c] : rhs.terms_) {
    Complex& acc = terms_[w];
    acc -= c;
    if (acc == 0.0) {
      terms_.erase(w);
    }
  }
  return *this;
}

OperatorPoly& OperatorPoly::operator*=(Complex c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) {
    coeff *= c;
  }
  return *this;
}

OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) {
  if (a.K() != b.K()) {
    throw DimensionError("basis size mismatch in product");
  }
  if (a.degree() + b.degree() > kMaxWordLength) {
    throw DegreeError("operator product of degree " +
                      std::to_string(a.degree() + b.degree()) +
                      " exceeds the supported word length 4");
  }
  OperatorPoly out(a.K());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out += normal_order(a.K(), w, ca * cb);
    }
  }
  return out;
}

std::string OperatorPoly::str() const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) {
      os << " + ";
    }
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+")
       << std::abs(c.imag()) << "i)";
    for (const auto& s : w) {
      os << " " << symbol_name(s);
    }
  }
  return os.str();
}

OperatorPoly normal_order(int K, const Word& word, Complex coeff) {
  if (static_cast<int>(word.size()) > kMaxWordLength) {
    throw DegreeError("word of length " + std::to_string(word.size()) +
                      " exceeds the supported word length 4");
  }
  OperatorPoly out(K);
  if (coeff == 0.0) {
    return out;
  }
  for (const auto& s : word) {
    check_index(s.index, K);
  }

  // Worklist of (word, coefficient): each p_m x_m swap keeps the swapped
  // word and spawns a shorter one from the -i contraction; all other
  // adjacent pairs commute.
  std::deque<std::pair<Word, Complex>> work;
  work.emplace_back(word, coeff);
  while (!work.empty()) {
    auto [w, c] = std::move(work.front());
    work.pop_front();
    bool reduced = true;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] <= w[i + 1]) {
        continue;
      }
      reduced = false;
      if (w[i].kind == SymbolKind::momentum &&
          w[i + 1].kind == SymbolKind::position &&
          w[i].index == w[i + 1].index) {
        // p_m x_m = x_m p_m - i
        Word shorter;
        shorter.reserve(w.size() - 2);
        shorter.insert(shorter.end(), w.begin(), w.begin() + i);
        shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
        work.emplace_back(std::move(shorter), c * (-kImagUnit));
      }
      std::swap(w[i], w[i + 1]);
      work.emplace_back(std::move(w), c);
      break;
    }
    if (reduced) {
      OperatorPoly term(K);
      term.terms_[w] = c;  // already normal form
      out += term;
    }
  }
  return out;
}

OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b) {
  if (a.K() != b.K()) {
    throw DimensionError("basis size mismatch in commutator");
  }
  return a * b - b * a;
}

OperatorPoly adjoint(const OperatorPoly& a) {
  OperatorPoly out(a.K());
  for (const auto& [w, c] : a.terms()) {
    Word rev(w.rbegin(), w.rend());
    out += normal_order(a.K(), rev, std::conj(c));
  }
  return out;
}

bool is_symmetric(const OperatorPoly& a, double tol) {
  return max_coeff_distance(adjoint(a), a) <= tol;
}

double max_coeff_distance(const OperatorPoly& a, const OperatorPoly& b) {
  OperatorPoly d = a - b;
  return d.max_abs_coefficient();
}

}  // namespace quadham
