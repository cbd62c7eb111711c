#include "funalg/derivation.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "funalg/errors.hpp"

namespace funalg {

std::size_t arity(Op op) noexcept {
  switch (op) {
    case Op::Mu:
      return 1;
    case Op::P:
    case Op::Comp:
    case Op::PR:
    case Op::BPR:
    case Op::SNR:
      return 2;
    default:
      return 0;
  }
}

std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::S: return "S";
    case Op::Add: return "add";
    case Op::Mul: return "mul";
    case Op::Lt: return "lt";
    case Op::I: return "I";
    case Op::D: return "D";
    case Op::P: return "P";
    case Op::Comp: return "comp";
    case Op::Mu: return "mu";
    case Op::PR: return "pr";
    case Op::BPR: return "bpr";
    case Op::SNR: return "snr";
    case Op::E: return "E";
    case Op::Smash: return "smash";
    case Op::OracleChar: return "X";
  }
  return "?";
}

std::optional<Op> op_from_name(std::string_view name) noexcept {
  for (Op op : kAllOps) {
    if (op_name(op) == name) return op;
  }
  return std::nullopt;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                            : a + b;
}

}  // namespace

Derivation Derivation::make(Op op, std::vector<Derivation> children) {
  if (children.size() != funalg::arity(op)) {
    throw ClassError("operator " + std::string(op_name(op)) + " expects " +
                     std::to_string(funalg::arity(op)) + " argument(s), got " +
                     std::to_string(children.size()));
  }
  std::uint64_t size = 1;
  std::uint64_t depth = 0;
  std::size_t h = static_cast<std::size_t>(op) * 0x9e3779b97f4a7c15ULL + 0x51ed27;
  for (const Derivation& c : children) {
    size = sat_add(size, c.size());
    depth = std::max(depth, c.depth());
    h ^= c.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  auto node = std::make_shared<const Node>(Node{op, std::move(children), size, depth + 1, h});
  return Derivation(std::move(node));
}

Op Derivation::op() const noexcept { return node_->op; }
std::size_t Derivation::arity() const noexcept { return node_->children.size(); }
const Derivation& Derivation::child(std::size_t i) const { return node_->children.at(i); }
const std::vector<Derivation>& Derivation::children() const noexcept { return node_->children; }
std::uint64_t Derivation::size() const noexcept { return node_->size; }
std::uint64_t Derivation::depth() const noexcept { return node_->depth; }
std::size_t Derivation::hash() const noexcept { return node_->hash; }

bool operator==(const Derivation& a, const Derivation& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.child(i) == b.child(i))) return false;
  }
  return true;
}

namespace d {

namespace {
Derivation leaf(Op op) { return Derivation::make(op); }
}  // namespace

Derivation S() {
  static const Derivation v = leaf(Op::S);
  return v;
}
Derivation add() {
  static const Derivation v = leaf(Op::Add);
  return v;
}
Derivation mul() {
  static const Derivation v = leaf(Op::Mul);
  return v;
}
Derivation lt() {
  static const Derivation v = leaf(Op::Lt);
  return v;
}
Derivation I() {
  static const Derivation v = leaf(Op::I);
  return v;
}
Derivation D() {
  static const Derivation v = leaf(Op::D);
  return v;
}
Derivation E() {
  static const Derivation v = leaf(Op::E);
  return v;
}
Derivation smash() {
  static const Derivation v = leaf(Op::Smash);
  return v;
}
Derivation X() {
  static const Derivation v = leaf(Op::OracleChar);
  return v;
}
Derivation P(Derivation g, Derivation h) { return Derivation::make(Op::P, {std::move(g), std::move(h)}); }
Derivation comp(Derivation g, Derivation h) {
  return Derivation::make(Op::Comp, {std::move(g), std::move(h)});
}
Derivation mu(Derivation g) { return Derivation::make(Op::Mu, {std::move(g)}); }
Derivation pr(Derivation g, Derivation h) { return Derivation::make(Op::PR, {std::move(g), std::move(h)}); }
Derivation bpr(Derivation g, Derivation h) {
  return Derivation::make(Op::BPR, {std::move(g), std::move(h)});
}
Derivation snr(Derivation g, Derivation h) {
  return Derivation::make(Op::SNR, {std::move(g), std::move(h)});
}

Derivation Z() {
  static const Derivation v = comp(mu(comp(S(), mul())), P(I(), I()));
  return v;
}
Derivation H() {
  static const Derivation v = comp(D(), P(Z(), I()));
  return v;
}
Derivation T() {
  static const Derivation v = comp(D(), P(comp(S(), Z()), I()));
  return v;
}
Derivation T_pow(std::size_t i) {
  Derivation acc = I();
  for (std::size_t k = 0; k < i; ++k) acc = comp(T(), acc);
  return acc;
}
Derivation Pr() {
  // least z < x with x < S(S(z)), i.e. x - 1 for x > 0
  static const Derivation v =
      comp(mu(comp(lt(), P(T(), comp(S(), comp(S(), H()))))), P(I(), I()));
  return v;
}
Derivation step_value() {
  static const Derivation v = comp(T(), H());
  return v;
}

}  // namespace d

std::string_view class_name(AlgebraClass c) noexcept {
  switch (c) {
    case AlgebraClass::DA: return "DA";
    case AlgebraClass::SA: return "SA";
    case AlgebraClass::TA: return "TA";
    case AlgebraClass::DEA: return "DEA";
    case AlgebraClass::DSA: return "DSA";
    case AlgebraClass::SSA: return "SSA";
    case AlgebraClass::PRA: return "PRA";
  }
  return "?";
}

std::optional<AlgebraClass> class_from_name(std::string_view name) noexcept {
  for (AlgebraClass c : kAllClasses) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

bool class_allows(AlgebraClass c, Op op) noexcept {
  switch (op) {
    case Op::PR: return c == AlgebraClass::PRA;
    case Op::BPR: return c == AlgebraClass::SA || c == AlgebraClass::SSA;
    case Op::SNR: return c == AlgebraClass::TA;
    case Op::E: return c == AlgebraClass::DEA;
    case Op::Smash: return c == AlgebraClass::DSA || c == AlgebraClass::SSA;
    default: return true;
  }
}

std::vector<Op> class_ops(AlgebraClass c) {
  std::vector<Op> ops{Op::OracleChar};
  for (Op op : kAllOps) {
    if (op != Op::OracleChar && class_allows(c, op)) ops.push_back(op);
  }
  return ops;
}

bool validate(const Derivation& d, AlgebraClass c) {
  std::unordered_set<const Derivation::Node*> seen;
  std::vector<Derivation> work{d};
  while (!work.empty()) {
    Derivation cur = std::move(work.back());
    work.pop_back();
    if (!seen.insert(cur.id()).second) continue;
    if (!class_allows(c, cur.op())) return false;
    for (const Derivation& ch : cur.children()) work.push_back(ch);
  }
  return true;
}

namespace {

void print_into(const Derivation& d, std::string& out) {
  if (d.arity() == 0) {
    out += op_name(d.op());
    return;
  }
  out += '(';
  out += op_name(d.op());
  for (const Derivation& c : d.children()) {
    out += ' ';
    print_into(c, out);
  }
  out += ')';
}

class SexprParser {
 public:
  explicit SexprParser(std::string_view text) : text_(text) {}

  Derivation parse_all() {
    Derivation d = parse_one();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("derivation parse error at byte " + std::to_string(pos_) + ": " + msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  std::string_view atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(' || c == ')' || c == ' ' || c == '\t' || c == '\n' || c == '\r') break;
      ++pos_;
    }
    if (start == pos_) fail("expected an operator name");
    return text_.substr(start, pos_ - start);
  }

  Derivation parse_one() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') {
      const std::size_t at = pos_;
      const std::string_view name = atom();
      const auto op = op_from_name(name);
      if (!op) {
        pos_ = at;
        fail("unknown operator '" + std::string(name) + "'");
      }
      if (arity(*op) != 0) {
        pos_ = at;
        fail("operator '" + std::string(name) + "' needs arguments; write (" + std::string(name) + " ...)");
      }
      return Derivation::make(*op);
    }
    ++pos_;
    skip_ws();
    const std::size_t at = pos_;
    const std::string_view name = atom();
    const auto op = op_from_name(name);
    if (!op) {
      pos_ = at;
      fail("unknown operator '" + std::string(name) + "'");
    }
    std::vector<Derivation> children;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      children.push_back(parse_one());
    }
    if (children.size() != arity(*op)) {
      pos_ = at;
      fail("operator '" + std::string(name) + "' expects " + std::to_string(arity(*op)) +
           " argument(s), got " + std::to_string(children.size()));
    }
    return Derivation::make(*op, std::move(children));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string d_print(const Derivation& d) {
  std::string out;
  print_into(d, out);
  return out;
}

Derivation d_parse(std::string_view text) { return SexprParser(text).parse_all(); }

}  // namespace funalg
