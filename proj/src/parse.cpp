#include "ramp1/parse.hpp"

#include <cctype>

namespace ramp1 {

namespace {

constexpr int max_exponent = 4096;

struct Lexer {
  const std::string& text;
  size_t pos = 0;

  explicit Lexer(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  size_t here() {
    skip_ws();
    return pos;
  }
  char take() {
    skip_ws();
    return pos < text.size() ? text[pos++] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
};

struct Parser {
  Lexer lex;
  const FieldSpec* spec;

  Parser(const std::string& t, const FieldSpec* s) : lex(t), spec(s) {}

  [[noreturn]] void err(size_t pos, const std::string& what) {
    throw parse_error(pos, what + " at offset " + std::to_string(pos));
  }

  uint64_t integer() {
    size_t start = lex.here();
    if (!std::isdigit((unsigned char)lex.peek())) err(start, "expected integer");
    uint64_t v = 0;
    const uint64_t p = spec->p();
    while (lex.pos < lex.text.size() &&
           std::isdigit((unsigned char)lex.text[lex.pos])) {
      v = (v * 10 + (uint64_t)(lex.text[lex.pos] - '0')) % (p * 1000003ULL);
      ++lex.pos;
    }
    return v;
  }

  int exponent(size_t caret_pos) {
    if (!std::isdigit((unsigned char)lex.peek()))
      err(caret_pos, "expected exponent");
    size_t start = lex.here();
    uint64_t v = 0;
    while (lex.pos < lex.text.size() &&
           std::isdigit((unsigned char)lex.text[lex.pos])) {
      v = v * 10 + (uint64_t)(lex.text[lex.pos] - '0');
      if (v > max_exponent) err(start, "exponent too large");
      ++lex.pos;
    }
    return (int)v;
  }

  Poly atom() {
    char c = lex.peek();
    size_t at = lex.here();
    if (c == '(') {
      lex.take();
      Poly e = expr();
      if (!lex.accept(')')) err(lex.here(), "expected ')'");
      return e;
    }
    if (c == 'x') {
      lex.take();
      return Poly::x(spec);
    }
    if (c == 'g') {
      lex.take();
      if (spec->k() < 2) err(at, "'g' needs an extension field");
      return Poly::constant(spec, spec->gen());
    }
    if (std::isdigit((unsigned char)c))
      return Poly::constant(spec, spec->from_int((int64_t)(integer() % spec->p())));
    err(at, "expected term");
  }

  Poly factor() {
    Poly base = atom();
    if (lex.peek() == '^') {
      size_t caret = lex.here();
      lex.take();
      int e = exponent(caret);
      if (base.deg() >= 1 && base.deg() * e > max_exponent)
        err(caret, "degree too large");
      Poly r = Poly::constant(spec, spec->one());
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Poly term() {
    Poly r = factor();
    while (lex.peek() == '*') {
      lex.take();
      r = r * factor();
    }
    return r;
  }

  Poly expr() {
    bool neg = false;
    if (lex.peek() == '-') {  // tolerated leading sign
      lex.take();
      neg = true;
    }
    Poly r = term();
    if (neg) r = -r;
    for (;;) {
      char c = lex.peek();
      if (c == '+') {
        lex.take();
        r = r + term();
      } else if (c == '-') {
        lex.take();
        r = r - term();
      } else {
        return r;
      }
    }
  }

  void expect_end() {
    if (lex.peek() != '\0') err(lex.here(), "unexpected trailing input");
  }
};

}  // namespace

Poly parse_poly_expression(const std::string& text, const FieldSpec* spec) {
  Parser p(text, spec);
  Poly r = p.expr();
  p.expect_end();
  return r;
}

RatMap parse_map_expression(const std::string& text, const FieldSpec* spec) {
  Parser p(text, spec);
  Poly num = p.expr();
  Poly den = Poly::constant(spec, spec->one());
  if (p.lex.peek() == '/') {
    p.lex.take();
    den = p.expr();
  }
  p.expect_end();
  return RatMap::reduce(std::move(num), std::move(den));
}

FieldElem parse_element(const std::string& text, const FieldSpec* spec) {
  Parser p(text, spec);
  size_t at = p.lex.here();
  Poly r = p.expr();
  p.expect_end();
  if (r.deg() > 0) p.err(at, "expected a constant expression");
  return r.coeff(0);
}

PointP1 parse_point(const std::string& text, const FieldSpec* spec) {
  Lexer probe(text);
  probe.skip_ws();
  if (text.compare(probe.pos, 3, "inf") == 0) {
    Lexer rest(text);
    rest.pos = probe.pos + 3;
    if (rest.peek() == '\0') return PointP1::infinity(spec);
  }
  return PointP1::affine(parse_element(text, spec));
}

}  // namespace ramp1
