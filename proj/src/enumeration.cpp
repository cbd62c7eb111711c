#include "funalg/enumeration.hpp"

#include <algorithm>

#include "funalg/errors.hpp"

namespace funalg {

Enumeration::Enumeration(AlgebraClass c) : class_(c), ops_(class_ops(c)) {
  counts_.emplace_back();   // no derivation has 0 nodes
  offsets_.emplace_back();  // offsets_[0] unused
  offsets_.emplace_back();  // offsets_[1] = 0
}

Nat Enumeration::count(std::size_t nodes) {
  while (counts_.size() <= nodes) {
    const std::size_t n = counts_.size();
    Nat total;
    for (Op op : ops_) {
      switch (arity(op)) {
        case 0:
          if (n == 1) total += Nat{1};
          break;
        case 1:
          if (n >= 2) total += counts_[n - 1];
          break;
        default:
          if (n >= 3) {
            for (std::size_t k = 1; k <= n - 2; ++k) total += counts_[k] * counts_[n - 1 - k];
          }
          break;
      }
    }
    counts_.push_back(std::move(total));
  }
  return counts_[nodes];
}

Nat Enumeration::offset_of_size(std::size_t nodes) {
  while (offsets_.size() <= nodes) {
    const std::size_t n = offsets_.size();
    offsets_.push_back(offsets_[n - 1] + count(n - 1));
  }
  return offsets_[nodes];
}

Nat Enumeration::rank_within_size(const Derivation& d) {
  if (!class_allows(class_, d.op())) {
    throw ClassError("operator " + std::string(op_name(d.op())) + " is not in class " +
                     std::string(class_name(class_)));
  }
  const std::size_t n = static_cast<std::size_t>(d.size());
  Nat rank;
  for (Op op : ops_) {
    if (op == d.op()) break;
    switch (arity(op)) {
      case 0:
        if (n == 1) rank += Nat{1};
        break;
      case 1:
        if (n >= 2) rank += count(n - 1);
        break;
      default:
        if (n >= 3) {
          for (std::size_t k = 1; k <= n - 2; ++k) rank += count(k) * count(n - 1 - k);
        }
        break;
    }
  }
  switch (d.arity()) {
    case 0:
      break;
    case 1:
      rank += rank_within_size(d.child(0));
      break;
    default: {
      const std::size_t k1 = static_cast<std::size_t>(d.child(0).size());
      const std::size_t k2 = n - 1 - k1;
      for (std::size_t k = 1; k < k1; ++k) rank += count(k) * count(n - 1 - k);
      rank += rank_within_size(d.child(0)) * count(k2) + rank_within_size(d.child(1));
      break;
    }
  }
  return rank;
}

Nat Enumeration::index_of(const Derivation& d) {
  if (d.size() > 4096) throw ClassError("index_of: derivation too large to index");
  if (!validate(d, class_)) {
    throw ClassError("derivation is not in class " + std::string(class_name(class_)));
  }
  const std::size_t n = static_cast<std::size_t>(d.size());
  return offset_of_size(n) + rank_within_size(d);
}

Derivation Enumeration::unrank(std::size_t n, Nat rank) {
  for (Op op : ops_) {
    switch (arity(op)) {
      case 0:
        if (n == 1) {
          if (rank.is_zero()) return Derivation::make(op);
          rank -= Nat{1};
        }
        break;
      case 1:
        if (n >= 2) {
          const Nat c = count(n - 1);
          if (rank < c) return Derivation::make(op, {unrank(n - 1, rank)});
          rank -= c;
        }
        break;
      default:
        if (n >= 3) {
          for (std::size_t k = 1; k <= n - 2; ++k) {
            const Nat c2 = count(n - 1 - k);
            const Nat block = count(k) * c2;
            if (rank < block) {
              const Nat r1 = rank / c2;
              const Nat r2 = rank % c2;
              return Derivation::make(op, {unrank(k, r1), unrank(n - 1 - k, r2)});
            }
            rank -= block;
          }
        }
        break;
    }
  }
  throw ClassError("rank out of range for node count " + std::to_string(n));
}

Derivation Enumeration::at(const Nat& index) {
  std::size_t n = 1;
  while (!(index < offset_of_size(n + 1))) ++n;
  return unrank(n, index - offset_of_size(n));
}

std::vector<Derivation> Enumeration::first(std::size_t n) {
  std::vector<Derivation> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(Nat{i}));
  return out;
}

std::vector<Derivation> enumerate(AlgebraClass c, std::size_t n) { return Enumeration(c).first(n); }

Nat index_of(const Derivation& d, AlgebraClass c) { return Enumeration(c).index_of(d); }

Derivation derivation_at(const Nat& i, AlgebraClass c) { return Enumeration(c).at(i); }

}  // namespace funalg
