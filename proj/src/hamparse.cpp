#include "quadham/hamparse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <vector>

namespace quadham {

namespace {

constexpr Complex kImagUnit{0.0, 1.0};

struct Token {
  enum Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type;
  double number = 0.0;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(src.data() + i, src.data() + src.size(), value);
      if (ec != std::errc{} || ptr == src.data() + i) {
        throw ParseError("malformed number", start);
      }
      i = ptr - src.data();
      out.push_back({Token::Number, value, src.substr(start, i - start), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        ++i;
      }
      out.push_back({Token::Ident, 0.0, src.substr(start, i - start), start});
      continue;
    }
    Token::Type t;
    switch (c) {
      case '+': t = Token::Plus; break;
      case '-': t = Token::Minus; break;
      case '*': t = Token::Star; break;
      case '/': t = Token::Slash; break;
      case '^': t = Token::Caret; break;
      case '(': t = Token::LParen; break;
      case ')': t = Token::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({t, 0.0, std::string(1, c), start});
    ++i;
  }
  out.push_back({Token::End, 0.0, "", src.size()});
  return out;
}

// Canonical names x<N>/p<N>.  Returns the symbol even when N is outside
// 1..K so the caller can produce a range diagnostic instead of treating the
// name as a parameter.
std::optional<OpSymbol> match_canonical(const std::string& name) {
  if (name.size() < 2 || (name[0] != 'x' && name[0] != 'p')) {
    return std::nullopt;
  }
  int index = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
  if (ec != std::errc{} || ptr != name.data() + name.size()) {
    return std::nullopt;
  }
  SymbolKind kind = name[0] == 'x' ? SymbolKind::position : SymbolKind::momentum;
  return OpSymbol{kind, index};
}

// Alias table for K <= 4 plus bare p for p1; only active when the index
// fits the basis.
std::optional<OpSymbol> match_alias(const std::string& name, int K) {
  static const std::map<std::string, OpSymbol> aliases = {
      {"x", pos_symbol(1)},  {"y", pos_symbol(2)},  {"z", pos_symbol(3)},
      {"w", pos_symbol(4)},  {"p", mom_symbol(1)},  {"px", mom_symbol(1)},
      {"py", mom_symbol(2)}, {"pz", mom_symbol(3)}, {"pw", mom_symbol(4)}};
  auto it = aliases.find(name);
  if (it != aliases.end() && it->second.index <= K) {
    return it->second;
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(const std::string& src, const ParamBindings& params, int K)
      : tokens_(lex(src)), params_(params), K_(K) {}

  OperatorPoly run() {
    OperatorPoly result = parse_expr();
    if (peek().type != Token::End) {
      throw ParseError("unexpected trailing input '" + peek().text + "'",
                       peek().pos);
    }
    if (result.degree() > 2) {
      throw DegreeError("expression has operator degree " +
                        std::to_string(result.degree()) +
                        "; quadratic Hamiltonians require degree <= 2");
    }
    return result;
  }

 private:
  const Token& peek() const { return tokens_[cursor_]; }
  Token take() { return tokens_[cursor_++]; }

  OperatorPoly parse_expr() {
    OperatorPoly value = parse_term();
    while (peek().type == Token::Plus || peek().type == Token::Minus) {
      Token op = take();
      OperatorPoly rhs = parse_term();
      if (op.type == Token::Plus) {
        value += rhs;
      } else {
        value -= rhs;
      }
    }
    return value;
  }

  OperatorPoly parse_term() {
    OperatorPoly value = parse_factor();
    while (peek().type == Token::Star || peek().type == Token::Slash) {
      Token op = take();
      OperatorPoly rhs = parse_factor();
      if (op.type == Token::Star) {
        value = value * rhs;
      } else {
        if (rhs.degree() > 0) {
          throw ParseError("division by an operator", op.pos);
        }
        Complex c = rhs.coefficient({});
        if (c == 0.0) {
          throw ParseError("division by zero", op.pos);
        }
        value *= Complex{1.0, 0.0} / c;
      }
    }
    return value;
  }

  OperatorPoly parse_factor() {
    bool negate = false;
    while (peek().type == Token::Plus || peek().type == Token::Minus) {
      if (take().type == Token::Minus) {
        negate = !negate;
      }
    }
    OperatorPoly value = parse_power();
    if (negate) {
      value *= Complex{-1.0, 0.0};
    }
    return value;
  }

  OperatorPoly parse_power() {
    OperatorPoly base = parse_atom();
    if (peek().type != Token::Caret) {
      return base;
    }
    Token caret = take();
    if (peek().type != Token::Number) {
      throw ParseError("exponent must be an integer literal", peek().pos);
    }
    Token exp_tok = take();
    double e = exp_tok.number;
    if (e < 1.0 || e != std::floor(e)) {
      throw ParseError("exponent must be a positive integer", exp_tok.pos);
    }
    int n = static_cast<int>(e);
    if (base.degree() >= 1 && n > 2) {
      throw DegreeError("operator power " + std::to_string(n) +
                        " exceeds the supported degree 2 (at position " +
                        std::to_string(caret.pos) + ")");
    }
    if (base.degree() == 0 && n > 9) {
      throw ParseError("scalar exponent exceeds 9", exp_tok.pos);
    }
    OperatorPoly value = base;
    for (int k = 1; k < n; ++k) {
      value = value * base;
    }
    return value;
  }

  OperatorPoly parse_atom() {
    const Token& t = peek();
    switch (t.type) {
      case Token::Number:
        return OperatorPoly::constant(K_, take().number);
      case Token::Ident: {
        Token id = take();
        if (id.text == "i") {
          return OperatorPoly::constant(K_, kImagUnit);
        }
        if (auto sym = match_canonical(id.text)) {
          if (sym->index < 1 || sym->index > K_) {
            throw ParseError("operator '" + id.text + "' is outside the basis x1..x" +
                                 std::to_string(K_) + ", p1..p" + std::to_string(K_),
                             id.pos);
          }
          return OperatorPoly::symbol(K_, *sym);
        }
        if (auto sym = match_alias(id.text, K_)) {
          return OperatorPoly::symbol(K_, *sym);
        }
        if (auto it = params_.find(id.text); it != params_.end()) {
          return OperatorPoly::constant(K_, it->second);
        }
        throw ParseError("unknown identifier '" + id.text + "'", id.pos);
      }
      case Token::LParen: {
        take();
        OperatorPoly value = parse_expr();
        if (peek().type != Token::RParen) {
          throw ParseError("expected ')'", peek().pos);
        }
        take();
        return value;
      }
      default:
        throw ParseError("expected a number, identifier or '('", t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
  const ParamBindings& params_;
  int K_;
};

void validate_params(const ParamBindings& params, int K) {
  for (const auto& [name, value] : params) {
    bool collides = name == "i";
    if (auto sym = match_canonical(name); sym && sym->index >= 1) {
      collides = true;  // x<N>/p<N> are reserved at every N
    }
    if (match_alias(name, K)) {
      collides = true;
    }
    if (collides) {
      throw DomainError("parameter name '" + name +
                        "' collides with an operator name");
    }
    (void)value;
  }
}

}  // namespace

OperatorPoly parse(const std::string& src, const ParamBindings& params, int K) {
  if (K < 1) {
    throw DomainError("basis size K must be >= 1");
  }
  if (src.empty()) {
    throw ParseError("empty expression", 0);
  }
  validate_params(params, K);
  return Parser(src, params, K).run();
}

GammaMatrix extract_gamma(const OperatorPoly& poly, bool permissive, double tol) {
  const int K = poly.K();
  GammaMatrix g;
  g.K = K;
  g.entries = Eigen::MatrixXcd::Zero(2 * K, 2 * K);
  g.scalar_remainder = 0.0;

  for (const auto& [word, c] : poly.terms()) {
    switch (word.size()) {
      case 0:
        g.scalar_remainder += c;
        break;
      case 1:
        throw DomainError(
            "polynomial has a degree-1 term; only homogeneous quadratic "
            "Hamiltonians (plus scalars) have a gamma matrix");
      case 2: {
        int b1 = basis_index(word[0], K);
        int b2 = basis_index(word[1], K);
        if (b1 == b2) {
          g.entries(b1, b1) += c;
        } else {
          g.entries(b1, b2) += c / 2.0;
          g.entries(b2, b1) += c / 2.0;
          // normal form: the only noncommuting pair is x_m p_m, and
          // x p = (xp + px)/2 + i/2
          if (word[0].kind == SymbolKind::position &&
              word[1].kind == SymbolKind::momentum &&
              word[0].index == word[1].index) {
            g.scalar_remainder += c * kImagUnit / 2.0;
          }
        }
        break;
      }
      default:
        throw DegreeError("polynomial degree exceeds 2");
    }
  }

  if (!permissive) {
    double scale = std::max(1.0, g.entries.cwiseAbs().maxCoeff());
    double herm = (g.entries - g.entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol * scale || std::abs(g.scalar_remainder.imag()) > tol * scale) {
      throw NonSymmetricError(
          "Hamiltonian is not symmetric: gamma Hermiticity residual " +
          std::to_string(herm) + ", Im(scalar remainder) " +
          std::to_string(g.scalar_remainder.imag()));
    }
  }
  return g;
}

OperatorPoly poly_from_gamma(const GammaMatrix& g) {
  OperatorPoly out(g.K);
  const int n = 2 * g.K;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex c = g.entries(i, j);
      if (c != 0.0) {
        out.add_word({basis_symbol(i, g.K), basis_symbol(j, g.K)}, c);
      }
    }
  }
  out += OperatorPoly::constant(g.K, g.scalar_remainder);
  return out;
}

}  // namespace quadham
