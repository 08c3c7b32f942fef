#include <algorithm>
#include <set>

#include "germcalc/errors.hpp"
#include "germcalc/expr.hpp"
#include "germcalc/operators.hpp"
#include "germcalc/random_jet.hpp"

namespace germcalc {

const char* operator_class_name(OperatorClass c) {
  switch (c) {
    case OperatorClass::BStar: return "B*";
    case OperatorClass::CStar: return "C*";
    case OperatorClass::DStar: return "D*";
  }
  return "?";
}

Classification classify(const ExprPtr& e) {
  Classification out{OperatorClass::BStar, true};
  auto visit = [&](auto&& self, const ExprPtr& n) -> void {
    switch (n->kind) {
      case ExprKind::MonomialDiv:
        out.cls = std::max(out.cls, OperatorClass::CStar);
        break;
      case ExprKind::Deram:
        out.cls = std::max(out.cls, OperatorClass::DStar);
        break;
      case ExprKind::Poly:
        out.gaussian_only = false;
        break;
      default:
        break;
    }
    for (const auto& c : n->children) self(self, c);
  };
  visit(visit, e);
  return out;
}

ShiftBound::ShiftBound(std::vector<std::pair<long, long>> pieces) : pieces_(std::move(pieces)) {
  // Prune dominated pieces; keep a deterministic order.
  std::sort(pieces_.begin(), pieces_.end());
  pieces_.erase(std::unique(pieces_.begin(), pieces_.end()), pieces_.end());
  std::vector<std::pair<long, long>> kept;
  for (const auto& p : pieces_) {
    bool dominated = false;
    for (const auto& q : pieces_)
      if (q != p && q.first >= p.first && q.second >= p.second &&
          (q.first > p.first || q.second > p.second)) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(p);
  }
  pieces_ = std::move(kept);
}

long ShiftBound::operator()(long n) const {
  long best = 0;
  for (const auto& [a, b] : pieces_) best = std::max(best, a * n + b);
  return best;
}

bool ShiftBound::has_constant_excess() const {
  for (const auto& [a, b] : pieces_)
    if (a != 1) return false;
  return true;
}

long ShiftBound::constant_excess() const {
  require(has_constant_excess(), ErrorKind::BadArgument,
          "shift bound has a piece of slope > 1");
  long excess = 0;
  for (const auto& [a, b] : pieces_) excess = std::max(excess, b);
  return excess;
}

std::string ShiftBound::to_string() const {
  if (pieces_.empty()) return "0";
  std::string s;
  for (const auto& [a, b] : pieces_) {
    if (!s.empty()) s = s + ", ";
    std::string term = a == 1 ? "n" : std::to_string(a) + "n";
    if (b > 0) term += "+" + std::to_string(b);
    s += term;
  }
  return pieces_.size() == 1 ? s : "max(" + s + ")";
}

ShiftBound shift_bound(const ExprPtr& e) {
  // Pieces accumulate along root-to-leaf paths; (A, B) composed with the
  // node atom n -> a*n + b becomes (A*a, A*b + B).
  std::vector<std::pair<long, long>> pieces;
  auto walk = [&](auto&& self, const ExprPtr& n, long A, long B) -> void {
    switch (n->kind) {
      case ExprKind::InputGerm:
        pieces.emplace_back(A, B);
        return;
      case ExprKind::Poly:
      case ExprKind::GaussianPoly:
        return;
      case ExprKind::Schwarz:
      case ExprKind::Compose:
      case ExprKind::Implicit:
        for (const auto& c : n->children) self(self, c, A, B);
        return;
      case ExprKind::Partial:
      case ExprKind::MonomialDiv:
        self(self, n->children[0], A, A + B);
        return;
      case ExprKind::Deram:
        self(self, n->children[0], A * static_cast<long>(n->deram_m), B);
        return;
    }
  };
  walk(walk, e, 1, 0);
  return ShiftBound(std::move(pieces));
}

void GermEnv::bind(const std::string& name, Jet jet) {
  auto& slot = map_[name];
  for (auto& existing : slot)
    if (points_equal(existing.base(), jet.base())) {
      existing = std::move(jet);
      return;
    }
  slot.push_back(std::move(jet));
}

const Jet* GermEnv::find(const std::string& name, const Point& base) const {
  auto it = map_.find(name);
  if (it == map_.end()) return nullptr;
  for (const auto& j : it->second)
    if (points_equal(j.base(), base)) return &j;
  return nullptr;
}

std::vector<std::pair<std::string, const Jet*>> GermEnv::bindings() const {
  std::vector<std::pair<std::string, const Jet*>> out;
  for (const auto& [name, jets] : map_)
    for (const auto& j : jets) out.emplace_back(name, &j);
  return out;
}

GermEnv GermEnv::with_replaced(const std::string& name, const Point& base, Jet jet) const {
  GermEnv out = *this;
  auto it = out.map_.find(name);
  require(it != out.map_.end(), ErrorKind::UnboundGerm, "no binding for germ '" + name + "'");
  for (auto& j : it->second)
    if (points_equal(j.base(), base)) {
      j = std::move(jet);
      return out;
    }
  fail(ErrorKind::UnboundGerm, "no binding for germ '" + name + "' at the requested base");
}

namespace {

class Evaluator {
public:
  Evaluator(const GermEnv& env) : env_(env) {}

  Jet eval(const ExprPtr& e, int k) {
    auto key = std::make_pair(e.get(), k);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Jet out = eval_uncached(e, k);
    memo_.emplace(key, out);
    return out;
  }

private:
  Jet eval_uncached(const ExprPtr& e, int k) {
    switch (e->kind) {
      case ExprKind::InputGerm: {
        const Jet* j = env_.find(e->name, e->base);
        if (!j) {
          // Distinguish a missing name from a base-point mismatch.
          fail(ErrorKind::UnboundGerm,
               "germ '" + e->name + "' is not bound at the declared base point");
        }
        require(j->order() >= k, ErrorKind::OrderTooLow,
                "germ '" + e->name + "' has order " + std::to_string(j->order()) +
                    " but the shift bound requires order " + std::to_string(k) + " here");
        return j->truncated(k);
      }
      case ExprKind::Poly:
      case ExprKind::GaussianPoly:
        return embed_polynomial(e->poly, e->base, k);
      case ExprKind::Schwarz:
        return schwarz(eval(e->children[0], k));
      case ExprKind::Compose: {
        Jet outer = eval(e->children[0], k);
        std::vector<Jet> inner;
        inner.reserve(e->children.size() - 1);
        for (std::size_t i = 1; i < e->children.size(); ++i)
          inner.push_back(eval(e->children[i], k));
        return compose(outer, inner);
      }
      case ExprKind::Partial:
        return partial_derivative(eval(e->children[0], k + 1), e->axis);
      case ExprKind::Implicit:
        // The operator's domain test needs the first-order coefficient.
        return implicit_fn(eval(e->children[0], std::max(k, 1)), k);
      case ExprKind::MonomialDiv:
        return monomial_div(eval(e->children[0], k + 1));
      case ExprKind::Deram:
        return deramify(eval(e->children[0], k * static_cast<int>(e->deram_m)), e->deram_m);
    }
    fail(ErrorKind::BadArgument, "corrupt expression node");
  }

  const GermEnv& env_;
  std::map<std::pair<const ExprNode*, int>, Jet> memo_;
};

}  // namespace

Jet apply_expr(const ExprPtr& e, const GermEnv& env, int k_out) {
  require(k_out >= 0, ErrorKind::BadArgument, "output order must be non-negative");
  return Evaluator(env).eval(e, k_out);
}

bool measure_shift_lower_bound(const ExprPtr& e, const GermEnv& env, int n, int probe_order) {
  require(n >= 0 && probe_order >= 0, ErrorKind::BadArgument, "orders must be non-negative");
  const Jet baseline = apply_expr(e, env, n);
  for (const auto& [name, jet] : env.bindings()) {
    require(jet->order() >= probe_order, ErrorKind::OrderTooLow,
            "germ '" + name + "' cannot carry an order-" + std::to_string(probe_order) +
                " probe");
    for (const auto& beta : multi_indices_up_to(jet->dim(), probe_order)) {
      if (static_cast<int>(beta.degree()) != probe_order) continue;
      Jet perturbed = jet->with_coeff(beta, jet->coeff(beta) + GaussianRational(1));
      GermEnv probed = env.with_replaced(name, jet->base(), std::move(perturbed));
      try {
        Jet out = apply_expr(e, probed, n);
        if (!equal_to_order(out, baseline, n)) return true;
      } catch (const CalcError&) {
        // The perturbed germ left the operator's domain; that probe
        // witnesses nothing.
      }
    }
  }
  return false;
}

long measured_shift(const ExprPtr& e, const GermEnv& env, int n, int probe_max) {
  for (int l = probe_max; l >= 1; --l)
    if (measure_shift_lower_bound(e, env, n, l)) return l;
  return 0;
}

bool StabilityReport::stable() const {
  if (!baseline_zero) return false;
  for (const auto& t : trials)
    if (t.status != StabilityTrial::Status::Zero) return false;
  return true;
}

StabilityReport vanishing_stability_test(const ExprPtr& e, const GermEnv& env, int K,
                                         int trials, int tested_order, std::uint64_t seed) {
  require(K >= 0 && trials >= 0, ErrorKind::BadArgument, "bad stability parameters");
  StabilityReport report;
  report.tested_order = tested_order;
  report.preserved_order = K;
  Jet baseline = apply_expr(e, env, tested_order);
  report.baseline_zero = baseline.is_zero();

  for (int t = 0; t < trials; ++t) {
    std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
    SeededRng rng(trial_seed);
    GermEnv perturbed = env;
    for (const auto& [name, jet] : env.bindings()) {
      Jet::CoeffMap c = jet->coeffs();
      for (const auto& alpha : multi_indices_up_to(jet->dim(), jet->order())) {
        if (static_cast<int>(alpha.degree()) <= K) continue;
        GaussianRational delta = random_gaussian_rational(rng, 8);
        auto [it, inserted] = c.emplace(alpha, delta);
        if (!inserted) it->second += delta;
      }
      perturbed = perturbed.with_replaced(name, jet->base(),
                                          Jet(jet->dim(), jet->order(), jet->base(), std::move(c)));
    }
    StabilityTrial trial{trial_seed, StabilityTrial::Status::DomainError};
    try {
      Jet out = apply_expr(e, perturbed, tested_order);
      trial.status =
          out.is_zero() ? StabilityTrial::Status::Zero : StabilityTrial::Status::NonZero;
    } catch (const CalcError&) {
      trial.status = StabilityTrial::Status::DomainError;
    }
    report.trials.push_back(trial);
  }
  return report;
}

}  // namespace germcalc
