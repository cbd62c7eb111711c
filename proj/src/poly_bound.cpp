#include "funalg/poly_bound.hpp"

#include <unordered_map>

#include "funalg/errors.hpp"

namespace funalg {

struct PolyBound::Node {
  Kind kind;
  Nat value;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

PolyBound PolyBound::constant(Nat c) {
  return PolyBound(std::make_shared<const Node>(Node{Kind::Const, std::move(c), nullptr, nullptr}));
}

PolyBound PolyBound::var() {
  static const PolyBound v(std::make_shared<const Node>(Node{Kind::Var, Nat{}, nullptr, nullptr}));
  return v;
}

PolyBound operator+(const PolyBound& a, const PolyBound& b) {
  return PolyBound(std::make_shared<const PolyBound::Node>(
      PolyBound::Node{PolyBound::Kind::Add, Nat{}, a.node_, b.node_}));
}

PolyBound operator*(const PolyBound& a, const PolyBound& b) {
  return PolyBound(std::make_shared<const PolyBound::Node>(
      PolyBound::Node{PolyBound::Kind::Mul, Nat{}, a.node_, b.node_}));
}

PolyBound::Kind PolyBound::kind() const noexcept { return node_->kind; }

PolyBound PolyBound::compose(const PolyBound& inner) const {
  using NodePtr = std::shared_ptr<const Node>;
  std::unordered_map<const Node*, NodePtr> memo;
  auto go = [&](auto&& self, const NodePtr& n) -> NodePtr {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    NodePtr out;
    switch (n->kind) {
      case Kind::Const:
        out = n;
        break;
      case Kind::Var:
        out = inner.node_;
        break;
      default:
        out = std::make_shared<const Node>(Node{n->kind, Nat{}, self(self, n->lhs), self(self, n->rhs)});
        break;
    }
    memo.emplace(n.get(), out);
    return out;
  };
  return PolyBound(go(go, node_));
}

Nat PolyBound::operator()(const Nat& n) const {
  std::unordered_map<const Node*, Nat> memo;
  auto go = [&](auto&& self, const Node* p) -> Nat {
    if (auto it = memo.find(p); it != memo.end()) return it->second;
    Nat out;
    switch (p->kind) {
      case Kind::Const: out = p->value; break;
      case Kind::Var: out = n; break;
      case Kind::Add: out = self(self, p->lhs.get()) + self(self, p->rhs.get()); break;
      case Kind::Mul: out = self(self, p->lhs.get()) * self(self, p->rhs.get()); break;
    }
    memo.emplace(p, out);
    return out;
  };
  return go(go, node_.get());
}

std::string PolyBound::to_string() const {
  auto go = [&](auto&& self, const Node* p) -> std::string {
    switch (p->kind) {
      case Kind::Const: return p->value.to_string();
      case Kind::Var: return "n";
      case Kind::Add: return "(" + self(self, p->lhs.get()) + " + " + self(self, p->rhs.get()) + ")";
      case Kind::Mul: return "(" + self(self, p->lhs.get()) + " * " + self(self, p->rhs.get()) + ")";
    }
    return "?";
  };
  return go(go, node_.get());
}

namespace {

class BoundParser {
 public:
  explicit BoundParser(std::string_view t) : text_(t) {}

  PolyBound parse_all() {
    PolyBound b = sum();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return b;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("bound parse error at byte " + std::to_string(pos_) + ": " + msg, pos_);
  }
  void skip() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  PolyBound sum() {
    PolyBound acc = product();
    for (skip(); pos_ < text_.size() && text_[pos_] == '+'; skip()) {
      ++pos_;
      acc = acc + product();
    }
    return acc;
  }
  PolyBound product() {
    PolyBound acc = atom();
    for (skip(); pos_ < text_.size() && text_[pos_] == '*'; skip()) {
      ++pos_;
      acc = acc * atom();
    }
    return acc;
  }
  PolyBound atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == 'n') {
      ++pos_;
      return PolyBound::var();
    }
    if (c == '(') {
      ++pos_;
      PolyBound b = sum();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return b;
    }
    if (c >= '0' && c <= '9') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
      return PolyBound::constant(Nat::from_string(text_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Derivation numeral(const Nat& c) {
  Derivation acc = d::Z();
  for (Nat i; i < c; i += Nat{1}) acc = d::comp(d::S(), acc);
  return acc;
}

}  // namespace

PolyBound PolyBound::parse(std::string_view text) { return BoundParser(text).parse_all(); }

Derivation PolyBound::to_derivation() const {
  std::unordered_map<const Node*, Derivation> memo;
  auto go = [&](auto&& self, const Node* p) -> Derivation {
    if (auto it = memo.find(p); it != memo.end()) return it->second;
    Derivation out = d::I();
    switch (p->kind) {
      case Kind::Const:
        if (p->value > Nat{4096}) throw CompileError("bound constant too large to unfold as a numeral");
        out = numeral(p->value);
        break;
      case Kind::Var:
        out = d::I();
        break;
      case Kind::Add:
        out = d::comp(d::add(), d::P(self(self, p->lhs.get()), self(self, p->rhs.get())));
        break;
      case Kind::Mul:
        out = d::comp(d::mul(), d::P(self(self, p->lhs.get()), self(self, p->rhs.get())));
        break;
    }
    memo.emplace(p, out);
    return out;
  };
  return go(go, node_.get());
}

PolyBound poly_bound(const Derivation& d) {
  std::unordered_map<const Derivation::Node*, PolyBound> memo;
  const PolyBound n = PolyBound::var();
  const PolyBound one = PolyBound::constant(Nat{1});
  const PolyBound two = PolyBound::constant(Nat{2});
  auto go = [&](auto&& self, const Derivation& cur) -> PolyBound {
    if (auto it = memo.find(cur.id()); it != memo.end()) return it->second;
    PolyBound out = n;
    switch (cur.op()) {
      case Op::S: out = n + one; break;
      case Op::Add: out = two * n; break;
      case Op::Mul: out = n * n; break;
      case Op::Lt: out = one; break;
      case Op::OracleChar: out = one; break;
      case Op::I:
      case Op::D:
      case Op::Mu:
      case Op::BPR:
      case Op::SNR: out = n; break;
      case Op::P: {
        const PolyBound s = self(self, cur.child(0)) + self(self, cur.child(1)) + two;
        out = s * s;
        break;
      }
      case Op::Comp: out = self(self, cur.child(0)).compose(self(self, cur.child(1))); break;
      case Op::PR:
      case Op::E:
      case Op::Smash:
        throw UnboundedOperator("operator " + std::string(op_name(cur.op())) + " has no polynomial bound");
    }
    memo.emplace(cur.id(), out);
    return out;
  };
  return go(go, d);
}

}  // namespace funalg
