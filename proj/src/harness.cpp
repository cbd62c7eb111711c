#include <cmath>
#include <cstdio>
#include <random>

#include "funalg/clausal.hpp"
#include "funalg/compile.hpp"
#include "funalg/errors.hpp"
#include "funalg/harness.hpp"
#include "funalg/poly_bound.hpp"

namespace funalg {

CharResult char_run(const Derivation& d, CharMode mode, const CharInput& input, const Budget& b) {
  EvalReport r;
  if (mode == CharMode::Zero) {
    const Nat* x = std::get_if<Nat>(&input);
    if (!x) throw Error("zero mode expects a number");
    r = eval_memo(d, *x, Oracle{}, b);
  } else {
    const FinSet* s = std::get_if<FinSet>(&input);
    if (!s) throw Error("one mode expects a finite set");
    r = eval_memo(d, s->size(), Oracle{*s}, b);
  }
  if (Nat{1} < r.value) throw PredicateViolation("predicate returned " + r.value.to_string());
  return CharResult{r.value == Nat{1}, r.meter};
}

Certificate certify_bound(const Derivation& d, const std::vector<Nat>& xs, const Budget& b) {
  const PolyBound bound = poly_bound(d);
  for (const Nat& x : xs) {
    const Nat v = evaluate(d, x, Oracle{}, b, EvalOptions{true, true, false}).value;
    const Nat limit = bound(x);
    if (limit < v) return Certificate{false, x, v, limit};
  }
  return {};
}

std::string ScalingReport::csv() const {
  std::string out = "size,steps,peak_bits\n";
  for (const ScalingRow& r : rows)
    out += std::to_string(r.size) + "," + std::to_string(r.steps) + "," + std::to_string(r.peak_bits) + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "# fitted_exponent=%.4f\n", fitted_exponent);
  out += buf;
  if (superpolynomial) out += "# superpolynomial=1\n";
  if (truncated) out += "# truncated=1\n";
  return out;
}

namespace {

FinSet random_set(std::mt19937_64& rng, std::uint64_t size) {
  std::vector<Nat> xs;
  if (size == 0) return {};
  for (std::uint64_t i = 0; i + 1 < size; ++i)
    if (rng() & 1) xs.emplace_back(i);
  xs.emplace_back(size - 1);
  return FinSet(std::move(xs));
}

void fit(ScalingReport& rep) {
  std::vector<std::pair<double, double>> pts;
  for (const ScalingRow& r : rep.rows)
    if (r.size > 0 && r.steps > 0) pts.emplace_back(std::log(double(r.size)), std::log(double(r.steps)));
  if (pts.size() < 2) return;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) mx += x, my += y;
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
  rep.fitted_exponent = sxx > 0 ? sxy / sxx : 0;

  // mean log steps per size, then slopes between neighbouring sizes
  std::vector<std::pair<double, double>> means;
  for (auto [x, y] : pts) {
    if (!means.empty() && means.back().first == x) continue;
    double sum = 0;
    int n = 0;
    for (auto [x2, y2] : pts)
      if (x2 == x) sum += y2, ++n;
    means.emplace_back(x, sum / n);
  }
  if (means.size() < 3) return;
  std::vector<double> slopes;
  for (std::size_t i = 1; i < means.size(); ++i)
    slopes.push_back((means[i].second - means[i - 1].second) / (means[i].first - means[i - 1].first));
  bool rising = true;
  for (std::size_t i = 1; i < slopes.size(); ++i) rising &= slopes[i] > slopes[i - 1];
  rep.superpolynomial = rising && slopes.back() > 1.25 * slopes.front() && slopes.back() > 2;
}

}  // namespace

ScalingReport scaling_study(const Derivation& d, CharMode mode, const std::vector<std::uint64_t>& sizes,
                            std::size_t trials_per_size, std::uint64_t seed, const Budget& b) {
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) throw Error("sizes must be strictly ascending");
  ScalingReport rep;
  std::mt19937_64 rng(seed);
  for (std::uint64_t size : sizes) {
    std::vector<ScalingRow> rows;
    try {
      for (std::size_t t = 0; t < std::max<std::size_t>(trials_per_size, 1); ++t) {
        const CharInput in = mode == CharMode::Zero ? CharInput{Nat{size}} : CharInput{random_set(rng, size)};
        const CharResult r = char_run(d, mode, in, b);
        rows.push_back(ScalingRow{size, r.meter.steps, r.meter.peak_bits});
      }
    } catch (const BudgetExceeded&) {
      rep.truncated = true;
      break;
    }
    rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
  }
  fit(rep);
  return rep;
}

namespace pred {

Derivation parity() { return compile_formula(parse_formula("exists z < S(x). z + z = x"), {"x"}); }

Derivation power_of_two() {
  // BPR: f(0, p) = 1, f(w + 1, p) = 2 f(w, p), and 0 once a value exceeds p
  const Derivation doubling = d::bpr(constant(Nat{1}), d::comp(d::add(), d::P(d::step_value(), d::step_value())));
  DerivEnv env{{"dbl", doubling}};
  return compile_formula(parse_formula("0 < x & exists v < x. dbl((v,x)) = x"), {"x"}, env);
}

Derivation degenerate_snr() {
  // g((v, p)) = (1, 1) when v = 0, else (0, v - 1); h = 0
  const Derivation one = constant(Nat{1});
  const Derivation g = dispatch(d::H(), d::P(one, one), d::P(d::Z(), d::comp(d::Pr(), d::H())));
  return d::comp(d::snr(g, d::Z()), d::P(d::I(), d::I()));
}

Derivation consecutive_members() {
  return compile_formula(parse_formula("exists z < x. z in X & S(z) in X"), {"x"});
}

Derivation member(const Nat& k) { return d::comp(d::X(), constant(k)); }

Derivation constant_true() { return d::comp(d::S(), d::Z()); }

Derivation exponential_scan() {
  const TermPtr big = t::call(d::E(), t::var("x"), "E");
  return compile_formula(fm::exists_lt("z", big, fm::lt(t::var("z"), t::zero())), {"x"});
}

}  // namespace pred

}  // namespace funalg
