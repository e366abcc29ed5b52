#include "hausdorff/expression.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <vector>

namespace hausdorff {

struct Expression::Node {
  enum class Kind { number, var_u, var_x, var_xi, neg, add, sub, mul, div, pow, call };
  Kind kind = Kind::number;
  double value = 0.0;
  int index = 0; // x_i (1-based)
  std::string func;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

const char* const kUnary[] = {"exp", "log", "sin", "cos", "atan", "abs"};
const char* const kVariadic[] = {"min", "max"};

class Parser {
public:
  Parser(std::string_view text, int max_dim) : text_(text), max_dim_(max_dim) {}

  NodePtr run() {
    skip_space();
    if (at_end())
      fail("empty expression");
    NodePtr e = expr();
    skip_space();
    if (!at_end())
      fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

private:
  std::string_view text_;
  int max_dim_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ", column " +
                                       std::to_string(col) + ": " + what);
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }

  bool at_end() const { return pos_ >= text_.size(); }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (at_end())
        fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "', found '" + text_[pos_] + "'");
    }
  }

  static NodePtr make(Node::Kind k, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args = std::move(args);
    return n;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Node::Kind::add, {lhs, term()});
      else if (accept('-'))
        lhs = make(Node::Kind::sub, {lhs, term()});
      else
        return lhs;
    }
  }
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Node::Kind::mul, {lhs, unary()});
      else if (accept('/'))
        lhs = make(Node::Kind::div, {lhs, unary()});
      else
        return lhs;
    }
  }
  NodePtr unary() {
    if (accept('-'))
      return make(Node::Kind::neg, {unary()});
    if (accept('+'))
      return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = atom();
    if (accept('^'))
      return make(Node::Kind::pow, {base, unary()});
    return base;
  }
  NodePtr atom() {
    skip_space();
    if (at_end())
      fail("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    fail(std::string("unexpected '") + c + "'");
  }
  NodePtr number() {
    const std::size_t start = pos_;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc() || ptr == text_.data() + pos_)
      fail("malformed number", start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->value = v;
    return n;
  }
  NodePtr identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "u")
      return make(Node::Kind::var_u);
    if (name == "x")
      return make(Node::Kind::var_x);
    if (name.size() > 1 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const int i = std::atoi(name.c_str() + 1);
      if (i < 1 || i > max_dim_)
        fail("variable '" + name + "' outside x1..x" + std::to_string(max_dim_), start);
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::var_xi;
      n->index = i;
      return n;
    }
    const bool unary = std::find(std::begin(kUnary), std::end(kUnary), name) != std::end(kUnary);
    const bool variadic =
        std::find(std::begin(kVariadic), std::end(kVariadic), name) != std::end(kVariadic);
    if (!unary && !variadic)
      fail("unknown identifier '" + name + "'", start);
    skip_space();
    if (!accept('('))
      fail("function '" + name + "' needs an argument list");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::call;
    n->func = name;
    n->args.push_back(expr());
    while (accept(','))
      n->args.push_back(expr());
    expect(')');
    if (unary && n->args.size() != 1)
      fail("function '" + name + "' takes one argument", start);
    if (variadic && n->args.size() < 2)
      fail("function '" + name + "' takes at least two arguments", start);
    return n;
  }
};

double eval(const Node& n, double u, const Point& x) {
  using K = Node::Kind;
  switch (n.kind) {
  case K::number: return n.value;
  case K::var_u: return u;
  case K::var_x:
    if (x.empty())
      throw Error(Errc::eval_error, "variable 'x' used without a point");
    return x.size() == 1 ? x[0] : euclidean_norm(x);
  case K::var_xi:
    if (static_cast<std::size_t>(n.index) > x.size())
      throw Error(Errc::eval_error, "variable x" + std::to_string(n.index) +
                                        " used on a point of dimension " + std::to_string(x.size()));
    return x[n.index - 1];
  case K::neg: return -eval(*n.args[0], u, x);
  case K::add: return eval(*n.args[0], u, x) + eval(*n.args[1], u, x);
  case K::sub: return eval(*n.args[0], u, x) - eval(*n.args[1], u, x);
  case K::mul: return eval(*n.args[0], u, x) * eval(*n.args[1], u, x);
  case K::div: return eval(*n.args[0], u, x) / eval(*n.args[1], u, x);
  case K::pow: return std::pow(eval(*n.args[0], u, x), eval(*n.args[1], u, x));
  case K::call: {
    const double a = eval(*n.args[0], u, x);
    const std::string& f = n.func;
    if (f == "exp") return std::exp(a);
    if (f == "log") return std::log(a);
    if (f == "sin") return std::sin(a);
    if (f == "cos") return std::cos(a);
    if (f == "atan") return std::atan(a);
    if (f == "abs") return std::abs(a);
    double acc = a;
    for (std::size_t i = 1; i < n.args.size(); ++i) {
      const double b = eval(*n.args[i], u, x);
      acc = f == "min" ? std::min(acc, b) : std::max(acc, b);
    }
    return acc;
  }
  }
  return 0.0;
}

void print(const Node& n, std::ostream& os) {
  using K = Node::Kind;
  auto bin = [&](const char* op) {
    os << '(';
    print(*n.args[0], os);
    os << ' ' << op << ' ';
    print(*n.args[1], os);
    os << ')';
  };
  switch (n.kind) {
  case K::number: {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
    (void)ec;
    os << '(' << std::string(buf, end) << ')';
    return;
  }
  case K::var_u: os << 'u'; return;
  case K::var_x: os << 'x'; return;
  case K::var_xi: os << 'x' << n.index; return;
  case K::neg:
    os << "(-";
    print(*n.args[0], os);
    os << ')';
    return;
  case K::add: bin("+"); return;
  case K::sub: bin("-"); return;
  case K::mul: bin("*"); return;
  case K::div: bin("/"); return;
  case K::pow: bin("^"); return;
  case K::call:
    os << n.func << '(';
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      if (i)
        os << ", ";
      print(*n.args[i], os);
    }
    os << ')';
    return;
  }
}

bool mentions_x(const Node& n) {
  if (n.kind == Node::Kind::var_x || n.kind == Node::Kind::var_xi)
    return true;
  return std::any_of(n.args.begin(), n.args.end(), [](const NodePtr& a) { return mentions_x(*a); });
}

} // namespace

Expression Expression::parse(std::string_view text, int max_dim) {
  Expression e;
  e.root_ = Parser(text, max_dim).run();
  e.text_ = std::string(text);
  return e;
}

double Expression::operator()(double u, const Point& x) const {
  if (!root_)
    throw Error(Errc::eval_error, "empty expression");
  return eval(*root_, u, x);
}

std::string Expression::canonical() const {
  if (!root_)
    return {};
  std::ostringstream os;
  print(*root_, os);
  return os.str();
}

bool Expression::uses_x() const { return root_ && mentions_x(*root_); }

} // namespace hausdorff
