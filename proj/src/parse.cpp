#include <cctype>
#include <limits>
#include <string>

#include "charp/poly.hpp"

namespace charp {

namespace {

class Parser {
 public:
  Parser(std::string_view src, const RingPtr& ring) : src_(src), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_) + " in \"" +
                                            std::string(src_) + "\"");
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    while (accept('^')) {
      skip_ws();
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        fail("expected exponent");
      std::uint64_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        n = n * 10 + static_cast<std::uint64_t>(src_[pos_++] - '0');
        if (n > std::numeric_limits<std::uint32_t>::max())
          throw Error(ErrorKind::ExponentOverflow, "exponent literal exceeds 32 bits");
      }
      base = base.pow(n);
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint64_t p = ring_->field().characteristic();
      std::uint64_t r = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        r = (r * 10 + static_cast<std::uint64_t>(src_[pos_++] - '0')) % p;
      return Polynomial::constant(ring_, Fp{static_cast<std::uint32_t>(r)});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string_view name = src_.substr(start, pos_ - start);
      int idx = ring_->var_index(name);
      if (idx < 0) throw Error(ErrorKind::UnknownVariable, std::string(name));
      return Polynomial::variable(ring_, static_cast<std::size_t>(idx));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view src, const RingPtr& ring) { return Parser(src, ring).parse(); }

}  // namespace charp
