#include "funalg/reference.hpp"

namespace funalg::ref {

Nat pair(const Nat& x, const Nat& y) {
  // 2z = (x+y)(x+y+1) + 2x + 2
  const Nat s = x + y;
  return (s * (s + Nat{1}) + Nat{2} * x + Nat{2}) / Nat{2};
}

std::pair<Nat, Nat> unpair(const Nat& z) {
  // largest s with pair(0, s) <= z
  Nat lo{0};
  Nat hi{1};
  while (pair(Nat{0}, hi) <= z) hi = hi * Nat{2};
  while (lo + Nat{1} < hi) {
    const Nat mid = (lo + hi) / Nat{2};
    if (pair(Nat{0}, mid) <= z)
      lo = mid;
    else
      hi = mid;
  }
  const Nat x = z - pair(Nat{0}, lo);
  return {x, lo - x};
}

namespace {

struct Ctx {
  const std::set<Nat>& oracle;
  std::uint64_t limit;
  std::uint64_t calls = 0;
  std::size_t depth = 0;
};

constexpr std::size_t kMaxBits = 20'000;

Nat checked(Nat v) {
  if (v.bit_length() > kMaxBits) throw TooExpensive();
  return v;
}

Nat hd(const Nat& z) { return z.is_zero() ? Nat{} : unpair(z).first; }
Nat tl(const Nat& z) { return z.is_zero() ? Nat{} : unpair(z).second; }

Nat go_raw(Ctx& c, const Derivation& d, const Nat& x);

Nat go(Ctx& c, const Derivation& d, const Nat& x) {
  if (++c.depth > 5'000) throw TooExpensive();
  Nat v = checked(go_raw(c, d, x));
  --c.depth;
  return v;
}

Nat go_raw(Ctx& c, const Derivation& d, const Nat& x) {
  if (++c.calls > c.limit) throw TooExpensive();
  switch (d.op()) {
    case Op::S: return x + Nat{1};
    case Op::Add: return hd(x) + tl(x);
    case Op::Mul: return hd(x) * tl(x);
    case Op::Lt: return Nat{!x.is_zero() && hd(x) < tl(x) ? 1 : 0};
    case Op::I: return x;
    case Op::D: {
      if (x.is_zero() || tl(x).is_zero()) return Nat{};
      return hd(x).is_zero() ? hd(tl(x)) : tl(tl(x));
    }
    case Op::P: return pair(go(c, d.child(0), x), go(c, d.child(1), x));
    case Op::Comp: return go(c, d.child(0), go(c, d.child(1), x));
    case Op::Mu: {
      if (x.is_zero()) return Nat{};
      const Nat b = hd(x), p = tl(x);
      for (Nat z; z < b; z = z + Nat{1}) {
        if (go(c, d.child(0), pair(z, p)) == Nat{1}) return z;
      }
      return b;
    }
    case Op::PR:
    case Op::BPR: {
      if (x.is_zero()) return Nat{};
      const Nat v = hd(x), p = tl(x);
      Nat r;
      if (v.is_zero()) {
        r = go(c, d.child(0), p);
      } else {
        const Nat w = v - Nat{1};
        r = go(c, d.child(1), pair(pair(w, go(c, d, pair(w, p))), p));
      }
      if (d.op() == Op::BPR && p < r) return Nat{};
      return r;
    }
    case Op::SNR: {
      if (x.is_zero()) return Nat{};
      const Nat v = hd(x), p = tl(x);
      const Nat r = go(c, d.child(0), x);
      if (r.is_zero()) return Nat{};
      const Nat tag = hd(r), z = tl(r);
      if (tag == Nat{1}) return z <= p ? z : Nat{};
      if (!tag.is_zero() || !(z < v)) return Nat{};
      const Nat u = go(c, d, pair(z, p));
      const Nat w = go(c, d.child(1), pair(pair(v, u), p));
      return w < v ? go(c, d, pair(w, p)) : Nat{};
    }
    case Op::E: {
      if (Nat{kMaxBits} <= x) throw TooExpensive();
      Nat r{1};
      for (Nat i; i < x; i = i + Nat{1}) r = r + r;
      return r;
    }
    case Op::Smash: {
      std::size_t len = 0;
      for (Nat y = x; !y.is_zero(); y = y / Nat{2}) ++len;
      if (len * len > kMaxBits) throw TooExpensive();
      Nat r{1};
      for (std::size_t i = 0; i < len * len; ++i) r = r + r;
      return r;
    }
    case Op::OracleChar: return Nat{c.oracle.count(x) ? 1 : 0};
  }
  return Nat{};
}

}  // namespace

Nat eval(const Derivation& d, const Nat& x, const std::set<Nat>& oracle, std::uint64_t limit) {
  Ctx c{oracle, limit};
  return go(c, d, x);
}

Derivation random_derivation(std::mt19937_64& rng, AlgebraClass c, int depth) {
  std::vector<Op> pool;
  for (Op op : class_ops(c)) {
    if (depth > 0 || arity(op) == 0) pool.push_back(op);
  }
  const Op op = pool[rng() % pool.size()];
  std::vector<Derivation> kids;
  for (std::size_t i = 0; i < arity(op); ++i) kids.push_back(random_derivation(rng, c, depth - 1));
  return Derivation::make(op, std::move(kids));
}

}  // namespace funalg::ref
