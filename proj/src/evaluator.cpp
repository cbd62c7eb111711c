#include "funalg/evaluator.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "funalg/errors.hpp"

namespace funalg {

std::string EvalReport::line() const {
  return value.to_string() + '\t' + std::to_string(meter.steps) + '\t' + std::to_string(meter.peak_bits) +
         '\t' + std::to_string(meter.memo_hits) + '\t' + std::to_string(meter.max_depth);
}

namespace {

using NodeId = const Derivation::Node*;

struct MemoKey {
  NodeId node;
  Nat arg;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    return std::hash<const void*>{}(k.node) * 31 + k.arg.hash();
  }
};

struct SnrStat {
  Nat max_v;
  std::unordered_set<Nat> expanded;
};

struct Frame {
  const Derivation* d = nullptr;
  Nat x;
  int stage = 0;
  Nat a, b, c, i;  // scratch registers; meaning depends on the operator
  bool memo = false;
};

bool reads_only_previous_value(const Derivation& h) {
  return h.op() == Op::Comp && h.child(1) == d::step_value();
}

class Machine {
 public:
  Machine(const Oracle& o, const Budget& b, const EvalOptions& opts) : oracle_(o), budget_(b), opts_(opts) {}

  EvalReport run(const Derivation& root, const Nat& x) {
    note_bits(x);
    call(root, x);
    while (!stack_.empty()) advance();
    EvalReport r;
    r.value = ret_;
    r.meter = meter_;
    if (opts_.track_snr) {
      for (auto& [key, st] : snr_) r.snr.push_back(SnrExpansion{key.arg, st.max_v, st.expanded.size()});
    }
    return r;
  }

 private:
  void note_bits(const Nat& v) {
    const std::size_t bits = v.bit_length();
    if (bits > meter_.peak_bits) {
      meter_.peak_bits = bits;
      if (bits > budget_.max_bits) {
        throw BudgetExceeded(BudgetExceeded::Kind::Bits,
                             "bit budget exceeded: value of " + std::to_string(bits) + " bits");
      }
    }
  }

  void tick() {
    if (++meter_.steps > budget_.max_steps) {
      throw BudgetExceeded(BudgetExceeded::Kind::Steps,
                           "step budget of " + std::to_string(budget_.max_steps) + " exceeded");
    }
  }

  bool memoized(Op op) const {
    return opts_.memoize && (op == Op::PR || op == Op::BPR || op == Op::SNR);
  }

  void track_snr_call(const Derivation& d, const Nat& x, bool expanding) {
    if (!opts_.track_snr || x.is_zero()) return;
    auto [v, p] = unpair(x);
    SnrStat& st = snr_[MemoKey{d.id(), p}];
    if (st.max_v < v) st.max_v = v;
    if (expanding) st.expanded.insert(v);
  }

  // Either resolves the call from the memo table (setting ret_) or pushes a frame.
  void call(const Derivation& d, Nat x) {
    const bool memo = memoized(d.op());
    if (memo) {
      if (auto it = memo_.find(MemoKey{d.id(), x}); it != memo_.end()) {
        ++meter_.memo_hits;
        if (d.op() == Op::SNR) track_snr_call(d, x, false);
        ret_ = it->second;
        return;
      }
    }
    if (d.op() == Op::SNR) track_snr_call(d, x, true);
    tick();
    Frame& f = stack_.emplace_back();
    f.d = &d;
    f.x = std::move(x);
    f.memo = memo;
    meter_.max_depth = std::max<std::uint64_t>(meter_.max_depth, stack_.size());
  }

  void finish(Nat value) {
    note_bits(value);
    Frame& f = stack_.back();
    if (f.memo) memo_.emplace(MemoKey{f.d->id(), std::move(f.x)}, value);
    ret_ = std::move(value);
    stack_.pop_back();
  }

  // Replaces the current frame by a call of d on x (composition's outer function).
  void tail_call(const Derivation& d, Nat x) {
    stack_.pop_back();
    call(d, std::move(x));
  }

  // Runs the top frame until it either finishes or pushes a child.
  void advance() {
    Frame& f = stack_.back();
    const Derivation& d = *f.d;
    switch (d.op()) {
      case Op::S:
        finish(succ(f.x));
        return;
      case Op::Add:
        if (f.x.is_zero()) return finish(Nat{});
        {
          auto [a, b] = unpair(f.x);
          return finish(a + b);
        }
      case Op::Mul:
        if (f.x.is_zero()) return finish(Nat{});
        {
          auto [a, b] = unpair(f.x);
          return finish(a * b);
        }
      case Op::Lt:
        if (f.x.is_zero()) return finish(Nat{});
        {
          auto [a, b] = unpair(f.x);
          return finish(Nat{a < b ? 1 : 0});
        }
      case Op::I:
        return finish(f.x);
      case Op::D: {
        if (f.x.is_zero()) return finish(Nat{});
        auto [v, rest] = unpair(f.x);
        if (rest.is_zero()) return finish(Nat{});
        auto [y, z] = unpair(rest);
        return finish(v.is_zero() ? y : z);
      }
      case Op::E: {
        const auto e = f.x.to_u64();
        if (!e || *e >= budget_.max_bits) {
          throw BudgetExceeded(BudgetExceeded::Kind::Bits, "bit budget exceeded: E of " + f.x.to_string());
        }
        return finish(Nat::pow2(static_cast<std::size_t>(*e)));
      }
      case Op::Smash: {
        const std::uint64_t len = f.x.bit_length();
        if (len > 0 && len * len >= budget_.max_bits) {
          throw BudgetExceeded(BudgetExceeded::Kind::Bits,
                               "bit budget exceeded: smash of a " + std::to_string(len) + "-bit value");
        }
        return finish(Nat::pow2(static_cast<std::size_t>(len * len)));
      }
      case Op::OracleChar:
        return finish(Nat{oracle_.contains(f.x) ? 1 : 0});
      case Op::P:
        switch (f.stage) {
          case 0:
            f.stage = 1;
            return call(d.child(0), f.x);
          case 1:
            f.a = ret_;
            f.stage = 2;
            return call(d.child(1), f.x);
          default:
            return finish(pair(f.a, ret_));
        }
      case Op::Comp:
        if (f.stage == 0) {
          f.stage = 1;
          return call(d.child(1), f.x);
        }
        return tail_call(d.child(0), ret_);
      case Op::Mu:
        return advance_mu(f, d);
      case Op::PR:
      case Op::BPR:
        return advance_pr(f, d, d.op() == Op::BPR);
      case Op::SNR:
        return advance_snr(f, d);
    }
  }

  // a = bound, b = parameter, i = candidate
  void advance_mu(Frame& f, const Derivation& d) {
    if (f.stage == 0) {
      if (f.x.is_zero()) return finish(Nat{});
      std::tie(f.a, f.b) = unpair(f.x);
      f.i = Nat{};
      f.stage = 1;
    } else {
      if (ret_ == Nat{1}) return finish(f.i);
      f.i += Nat{1};
    }
    if (!(f.i < f.a)) return finish(f.a);
    return call(d.child(0), pair(f.i, f.b));
  }

  // a = v, b = p, c = current value f(i, p), i = level
  void advance_pr(Frame& f, const Derivation& d, bool bounded) {
    switch (f.stage) {
      case 0:
        if (f.x.is_zero()) return finish(Nat{});
        std::tie(f.a, f.b) = unpair(f.x);
        f.stage = 1;
        return call(d.child(0), f.b);
      case 1:
        f.c = (bounded && f.b < ret_) ? Nat{} : ret_;
        f.i = Nat{};
        break;
      default: {
        Nat next = (bounded && f.b < ret_) ? Nat{} : ret_;
        f.i += Nat{1};
        if (opts_.stationary_shortcut && next == f.c && reads_only_previous_value(d.child(1))) {
          return finish(std::move(next));
        }
        f.c = std::move(next);
        break;
      }
    }
    if (!(f.i < f.a)) return finish(f.c);
    if (f.stage == 2) tick();  // each further level is one more evaluation of the recursive node
    f.stage = 2;
    return call(d.child(1), pair(pair(f.i, f.c), f.b));
  }

  // a = v, b = p, c = u
  void advance_snr(Frame& f, const Derivation& d) {
    switch (f.stage) {
      case 0:
        if (f.x.is_zero()) return finish(Nat{});
        std::tie(f.a, f.b) = unpair(f.x);
        f.stage = 1;
        return call(d.child(0), f.x);
      case 1: {
        if (ret_.is_zero()) return finish(Nat{});
        auto [tag, z] = unpair(ret_);
        if (tag == Nat{1}) return finish(z <= f.b ? z : Nat{});
        if (!tag.is_zero() || !(z < f.a)) return finish(Nat{});
        f.stage = 2;
        return call(d, pair(z, f.b));
      }
      case 2:
        f.c = ret_;
        f.stage = 3;
        return call(d.child(1), pair(pair(f.a, f.c), f.b));
      case 3:
        if (!(ret_ < f.a)) return finish(Nat{});
        f.stage = 4;
        return call(d, pair(ret_, f.b));
      default:
        return finish(ret_);
    }
  }

  const Oracle& oracle_;
  Budget budget_;
  EvalOptions opts_;
  Meter meter_;
  std::vector<Frame> stack_;
  Nat ret_;
  std::unordered_map<MemoKey, Nat, MemoKeyHash> memo_;
  std::unordered_map<MemoKey, SnrStat, MemoKeyHash> snr_;
};

}  // namespace

EvalReport evaluate(const Derivation& d, const Nat& x, const Oracle& o, const Budget& b,
                    const EvalOptions& opts) {
  return Machine(o, b, opts).run(d, x);
}

EvalReport eval(const Derivation& d, const Nat& x, const Oracle& o, const Budget& b) {
  return evaluate(d, x, o, b, EvalOptions{});
}

EvalReport eval_memo(const Derivation& d, const Nat& x, const Oracle& o, const Budget& b) {
  EvalOptions opts;
  opts.memoize = true;
  opts.track_snr = true;
  return evaluate(d, x, o, b, opts);
}

Nat run(const Derivation& d, const Nat& x, const Oracle& o) { return eval(d, x, o).value; }

}  // namespace funalg
