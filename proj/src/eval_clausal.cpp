#include "funalg/clausal.hpp"
#include "funalg/codec.hpp"
#include "funalg/errors.hpp"

namespace funalg {

Program::Program(std::vector<ClausalDef> defs) : defs_(std::move(defs)) {
  for (std::size_t i = 0; i < defs_.size(); ++i) {
    if (!index_.emplace(defs_[i].name, i).second)
      throw RefinementError("function '" + defs_[i].name + "' is defined twice");
    trees_.push_back(refine_partial(defs_[i]));
  }
}

const ClausalDef& Program::def(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw EvalError("undeclared function '" + name + "'");
  return defs_[it->second];
}

bool Program::has(const std::string& name) const { return index_.count(name) != 0; }

const Refinement& Program::tree(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw EvalError("undeclared function '" + name + "'");
  return trees_[it->second];
}

namespace {

constexpr std::size_t kMaxCallDepth = 10'000;

class Interp {
 public:
  Interp(const Program& env, const Oracle& o, const Budget& b) : env_(env), o_(o), b_(b) {}

  Nat call(const std::string& fname, const Nat& x) {
    if (++depth_ > kMaxCallDepth) throw EvalError("clausal recursion deeper than 10000 calls");
    meter.max_depth = std::max<std::uint64_t>(meter.max_depth, depth_);
    const Refinement& r = env_.tree(fname);
    std::map<std::string, Nat> vars{{r.root_var, x}};
    note(x);
    const RNode* n = r.root.get();
    Nat result;
    for (;;) {
      tick();
      switch (n->kind) {
        case RNode::Kind::Result:
          result = eval_term(n->t1, vars);
          break;
        case RNode::Kind::Default:
          break;
        case RNode::Kind::Bind: {
          const Nat arg = eval_term(n->t1, vars);
          if (n->fn == fname && !(arg < x))
            throw MeasureViolation(fname + ": recursive call on " + arg.to_string() +
                                   " is not below the argument " + x.to_string());
          vars[n->var] = call(n->fn, arg);
          n = n->kids[0].get();
          continue;
        }
        case RNode::Kind::Succ:
        case RNode::Kind::Pair: {
          const Nat& v = vars.at(n->var);
          if (v.is_zero()) {
            n = n->kids[0].get();
            continue;
          }
          if (n->kind == RNode::Kind::Succ) {
            vars[n->w1] = v - Nat{1};
          } else {
            auto [a, b] = unpair(v);
            vars[n->w1] = std::move(a);
            vars[n->w2] = std::move(b);
          }
          n = n->kids[1].get();
          continue;
        }
        case RNode::Kind::Test: {
          const Nat a = eval_term(n->t1, vars), b = eval_term(n->t2, vars);
          const bool holds = n->rel == Rel::Eq ? a == b : a < b;
          n = n->kids[holds ? 0 : 1].get();
          continue;
        }
        case RNode::Kind::Oracle:
          n = n->kids[o_.contains(eval_term(n->t1, vars)) ? 0 : 1].get();
          continue;
      }
      break;
    }
    note(result);
    --depth_;
    return result;
  }

  Meter meter;

 private:
  void tick() {
    if (++meter.steps > b_.max_steps)
      throw BudgetExceeded(BudgetExceeded::Kind::Steps, "step budget of " + std::to_string(b_.max_steps) + " exceeded");
  }
  void note(const Nat& v) {
    const std::size_t bits = v.bit_length();
    if (bits > b_.max_bits)
      throw BudgetExceeded(BudgetExceeded::Kind::Bits, "value wider than " + std::to_string(b_.max_bits) + " bits");
    meter.peak_bits = std::max(meter.peak_bits, bits);
  }

  const Program& env_;
  const Oracle& o_;
  Budget b_;
  std::uint64_t depth_ = 0;
};

}  // namespace

ClausalResult eval_clausal(const Program& env, const std::string& fname, const Nat& x, const Oracle& o,
                           const Budget& b) {
  Interp in(env, o, b);
  Nat v = in.call(fname, x);
  return {std::move(v), in.meter};
}

}  // namespace funalg
