#include "solder/scalar_parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace solder {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    if (pos_ >= text_.size()) return {Tok::End, "", line_, col_};
    int line = line_, col = col_;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        num += text_[pos_++];
        ++col_;
      }
      return {Tok::Number, num, line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ident += text_[pos_++];
        ++col_;
      }
      return {Tok::Ident, ident, line, col};
    }
    ++pos_;
    ++col_;
    switch (c) {
      case '+': return {Tok::Plus, "+", line, col};
      case '-': return {Tok::Minus, "-", line, col};
      case '*': return {Tok::Star, "*", line, col};
      case '^': return {Tok::Caret, "^", line, col};
      case '/': return {Tok::Slash, "/", line, col};
      case '(': return {Tok::LParen, "(", line, col};
      case ')': return {Tok::RParen, ")", line, col};
      default:
        throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
    }
  }

private:
  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
public:
  Parser(ChartPtr chart, const std::string& text)
      : chart_(std::move(chart)), lexer_(text) {
    advance();
  }

  Scalar parse() {
    Scalar value = parse_expr();
    expect(Tok::End, "end of expression");
    return value;
  }

private:
  void advance() { current_ = lexer_.next(); }

  void expect(Tok kind, const std::string& what) {
    if (current_.kind != kind)
      throw SyntaxError(current_.line, current_.col,
                        "expected " + what + ", got '" +
                            (current_.kind == Tok::End ? "<end>" : current_.text) + "'");
  }

  Scalar parse_expr() {
    Scalar value = parse_term();
    while (current_.kind == Tok::Plus || current_.kind == Tok::Minus) {
      bool minus = current_.kind == Tok::Minus;
      advance();
      Scalar rhs = parse_term();
      value = minus ? value - rhs : value + rhs;
    }
    return value;
  }

  Scalar parse_term() {
    Scalar value = strip(parse_factor());
    while (current_.kind == Tok::Star) {
      advance();
      value = value * strip(parse_factor());
    }
    return value;
  }

  // A factor remembers whether it was a bare variable so that '^' can allow
  // negative exponents exactly there.
  struct Factor {
    Scalar value;
    std::optional<int> bare_var;
  };
  static Scalar strip(const Factor& f) { return f.value; }

  Factor parse_factor() {
    if (current_.kind == Tok::Minus) {
      advance();
      Factor inner = parse_factor();
      return {-inner.value, std::nullopt};
    }
    Factor base = parse_primary();
    if (current_.kind != Tok::Caret) return base;
    advance();
    bool negative = false;
    if (current_.kind == Tok::Minus) {
      negative = true;
      advance();
    }
    expect(Tok::Number, "integer exponent");
    int exponent = std::stoi(current_.text);
    Token exp_tok = current_;
    advance();
    if (!negative) return {base.value.pow(exponent), std::nullopt};
    if (!base.bare_var.has_value())
      throw NegativePower("negative exponent at line " +
                          std::to_string(exp_tok.line) +
                          " must apply to a bare Laurent variable");
    if (!chart_->var(*base.bare_var).laurent)
      throw NegativePower("variable '" + chart_->var(*base.bare_var).name +
                          "' is not Laurent-flagged, negative powers are not "
                          "available");
    Poly p = Poly::monomial(Monomial::variable(*base.bare_var, -exponent), 1);
    return {Scalar::from_poly(chart_, p), std::nullopt};
  }

  Factor parse_primary() {
    switch (current_.kind) {
      case Tok::Number: {
        std::string text = current_.text;
        advance();
        if (current_.kind == Tok::Slash) {
          advance();
          expect(Tok::Number, "denominator");
          text += "/" + current_.text;
          advance();
        }
        auto value = rational_from_string(text);
        if (!value)
          throw SyntaxError(current_.line, current_.col,
                            "malformed rational literal '" + text + "'");
        return {Scalar::constant(chart_, *value), std::nullopt};
      }
      case Tok::Ident: {
        std::string name = current_.text;
        Token tok = current_;
        advance();
        if (name == "exp" && current_.kind == Tok::LParen) {
          advance();
          Scalar arg = parse_expr();
          expect(Tok::RParen, "')'");
          advance();
          return {Scalar::exponential(arg), std::nullopt};
        }
        if (!chart_->has(name))
          throw UnknownVariable("no variable '" + name + "' on chart '" +
                                chart_->name() + "' (line " +
                                std::to_string(tok.line) + ")");
        int idx = chart_->index_of(name);
        return {Scalar::variable(chart_, idx), idx};
      }
      case Tok::LParen: {
        advance();
        Scalar inner = parse_expr();
        expect(Tok::RParen, "')'");
        advance();
        return {inner, std::nullopt};
      }
      default:
        throw SyntaxError(current_.line, current_.col,
                          "expected a value, got '" +
                              (current_.kind == Tok::End ? "<end>" : current_.text) + "'");
    }
  }

  ChartPtr chart_;
  Lexer lexer_;
  Token current_;
};

}  // namespace

Scalar parse_scalar(const ChartPtr& chart, const std::string& text) {
  return Parser(chart, text).parse();
}

}  // namespace solder
