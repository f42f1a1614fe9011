#include "neutro/limits.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "neutro/error.hpp"
#include "neutro/evaluate.hpp"

namespace neutro {

void LimitConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(Errc::PreconditionError, what); };
  if (!(h0 > 0.0) || !std::isfinite(h0)) bad("h0 must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) bad("ratio must lie in (0,1)");
  if (!(tol > 0.0) || !std::isfinite(tol)) bad("tol must be positive");
  if (max_steps < 4) bad("max_steps must be at least 4");
  if (!(blowup > 0.0) || !std::isfinite(blowup)) bad("blowup threshold must be positive");
}

LimitOutcome LimitOutcome::finite(RealSet value) {
  if (value.empty()) throw Error(Errc::EmptySet, "finite limit with empty set");
  LimitOutcome o(Kind::Finite);
  o.value_ = std::move(value);
  return o;
}

LimitOutcome LimitOutcome::does_not_exist(std::string reason) {
  LimitOutcome o(Kind::DoesNotExist);
  o.reason_ = std::move(reason);
  return o;
}

const RealSet& LimitOutcome::value() const {
  if (kind_ != Kind::Finite) throw Error(Errc::PreconditionError, "limit is not finite");
  return value_;
}

namespace {

int decimals_for(double tol) {
  return std::clamp(static_cast<int>(std::ceil(-std::log10(tol))), 0, 15);
}

double round_to(double v, int digits) {
  const double s = std::pow(10.0, digits);
  if (std::abs(v) * s > 1e15) return v;
  const double r = std::round(v * s) / s;
  return r == 0.0 ? 0.0 : r;
}

// Richardson step for values linear in h, then rounding.  Falls back to the
// last value when the two sets differ in shape.
RealSet extrapolate(const RealSet& cur, const RealSet& prev, double r, int digits) {
  const bool same_shape = cur.intervals().size() == prev.intervals().size() &&
                          cur.isolated_points().size() == prev.isolated_points().size();
  auto ex = [&](double a, double b) {
    return round_to(same_shape ? (a - r * b) / (1.0 - r) : a, digits);
  };
  std::vector<Interval> ivs;
  std::vector<double> pts;
  for (std::size_t i = 0; i < cur.intervals().size(); ++i) {
    const Interval& c = cur.intervals()[i];
    const Interval& p = same_shape ? prev.intervals()[i] : c;
    const double lo = ex(c.lo, p.lo);
    const double hi = ex(c.hi, p.hi);
    if (lo == hi) {
      pts.push_back(lo);
    } else {
      ivs.push_back(Interval::make(lo, hi, c.lo_open, c.hi_open));
    }
  }
  for (std::size_t i = 0; i < cur.isolated_points().size(); ++i) {
    const double c = cur.isolated_points()[i];
    pts.push_back(ex(c, same_shape ? prev.isolated_points()[i] : c));
  }
  return RealSet::normalize(ivs, pts);
}

// Convergence bookkeeping for one branch of the sampled sequence.
class Tracker {
 public:
  explicit Tracker(const LimitConfig& cfg) : cfg_(cfg) {}

  std::optional<LimitOutcome> push(RealSet s) {
    hist_.push_back(std::move(s));
    const std::size_t k = hist_.size() - 1;
    if (k == 0) return std::nullopt;
    const RealSet& cur = hist_[k];
    const RealSet& prev = hist_[k - 1];
    const double d = eta_metric(cur, prev);

    cauchy_ = d < cfg_.tol ? cauchy_ + 1 : 0;
    if (cauchy_ >= 3) {
      return LimitOutcome::finite(extrapolate(cur, prev, cfg_.ratio, decimals_for(cfg_.tol)));
    }
    if (k >= 3) {
      if (cur.inf() > cfg_.blowup && rising(k, true) && rising(k - 1, true) &&
          rising(k - 2, true)) {
        return LimitOutcome::plus_infinity();
      }
      if (cur.sup() < -cfg_.blowup && !rising(k, false) && !rising(k - 1, false) &&
          !rising(k - 2, false) && strictly_moved(k) && strictly_moved(k - 1) &&
          strictly_moved(k - 2)) {
        return LimitOutcome::minus_infinity();
      }
    }
    if (k >= 2) {
      const bool monotone = k >= 3 && same_direction(k) && same_direction(k - 1);
      nondecrease_ = (d >= last_d_ && !monotone) ? nondecrease_ + 1 : 0;
      if (nondecrease_ >= 10) return LimitOutcome::does_not_exist("oscillation");
    }
    last_d_ = d;
    return std::nullopt;
  }

 private:
  // True when the inf (or sup) strictly increased at step k.
  [[nodiscard]] bool rising(std::size_t k, bool use_inf) const {
    return use_inf ? hist_[k].inf() > hist_[k - 1].inf() : hist_[k].sup() > hist_[k - 1].sup();
  }
  [[nodiscard]] bool strictly_moved(std::size_t k) const {
    return hist_[k].sup() != hist_[k - 1].sup();
  }
  // Both endpoints moved strictly, in the same direction as the step before.
  [[nodiscard]] bool same_direction(std::size_t k) const {
    auto dir = [&](std::size_t j) {
      const double a = hist_[j].inf() - hist_[j - 1].inf();
      const double b = hist_[j].sup() - hist_[j - 1].sup();
      if (a > 0 && b > 0) return 1;
      if (a < 0 && b < 0) return -1;
      return 0;
    };
    const int now = dir(k);
    return now != 0 && now == dir(k - 1);
  }

  LimitConfig cfg_;
  std::vector<RealSet> hist_;
  int cauchy_ = 0;
  int nondecrease_ = 0;
  double last_d_ = 0.0;
};

std::vector<LimitOutcome> all_dne(std::size_t n, const std::string& reason) {
  return std::vector<LimitOutcome>(std::max<std::size_t>(n, 1),
                                   LimitOutcome::does_not_exist(reason));
}

}  // namespace

std::vector<LimitOutcome> branch_limits(const FuncSpec& f, double c, Side side,
                                        const LimitConfig& cfg) {
  cfg.validate();
  const double sign = side == Side::Left ? -1.0 : 1.0;
  std::vector<Tracker> trackers;
  std::vector<std::optional<LimitOutcome>> done;
  double h = cfg.h0;
  double last_x = c;
  for (int k = 0; k < cfg.max_steps; ++k, h *= cfg.ratio) {
    const double x = c + sign * h;
    if (x == c || x == last_x) break;
    last_x = x;
    NeutroValue v;
    try {
      v = eval_at(f, x);
    } catch (const Error& e) {
      return all_dne(trackers.size(), std::string("evaluation failed: ") + e.what());
    }
    if (trackers.empty()) {
      trackers.assign(v.size(), Tracker(cfg));
      done.assign(v.size(), std::nullopt);
    } else if (v.size() != trackers.size()) {
      return all_dne(trackers.size(), "number of alternatives changes");
    }
    bool all_done = true;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (done[j]) continue;
      const auto* s = std::get_if<RealSet>(&v.branches()[j]);
      if (!s) {
        done[j] = LimitOutcome::does_not_exist("indeterminate value");
        continue;
      }
      done[j] = trackers[j].push(*s);
      all_done = all_done && done[j].has_value();
    }
    if (all_done) break;
  }
  std::vector<LimitOutcome> out;
  for (auto& d : done) {
    out.push_back(d ? *d : LimitOutcome::does_not_exist("no convergence within step budget"));
  }
  if (out.empty()) out.push_back(LimitOutcome::does_not_exist("no samples"));
  return out;
}

bool within_tol(const RealSet& a, const RealSet& b, double tol) {
  const double mag = std::max({1.0, mu_norm(a), mu_norm(b)});
  return eta_metric(a, b) <= tol + 1e-12 * mag;
}

LimitOutcome directional_limit(const FuncSpec& f, double c, Side side, const LimitConfig& cfg) {
  const std::vector<LimitOutcome> bs = branch_limits(f, c, side, cfg);
  const LimitOutcome& first = bs.front();
  for (std::size_t j = 1; j < bs.size(); ++j) {
    const LimitOutcome& o = bs[j];
    const bool agree = o.kind() == first.kind() &&
                       (!o.is_finite() || within_tol(o.value(), first.value(), cfg.tol)) &&
                       o.kind() != LimitOutcome::Kind::DoesNotExist;
    if (!agree) {
      std::string detail;
      for (const auto& b : bs) detail += (detail.empty() ? "" : " | ") + to_string(b);
      return LimitOutcome::does_not_exist("alternatives disagree: " + detail);
    }
  }
  return first;
}

namespace {

LimitOutcome two_sided(const FuncSpec& f, double c, const LimitConfig& cfg, bool mereo) {
  const LimitOutcome l = directional_limit(f, c, Side::Left, cfg);
  const LimitOutcome r = directional_limit(f, c, Side::Right, cfg);
  using K = LimitOutcome::Kind;
  if (l.kind() == K::DoesNotExist) return LimitOutcome::does_not_exist("left: " + l.reason());
  if (r.kind() == K::DoesNotExist) return LimitOutcome::does_not_exist("right: " + r.reason());
  if (l.kind() != r.kind()) {
    return LimitOutcome::does_not_exist("left " + to_string(l) + " differs from right " +
                                        to_string(r));
  }
  if (!l.is_finite()) return l;
  if (mereo) {
    if (within_tol(l.value(), r.value(), cfg.tol)) return l;
    RealSet both = intersect(l.value(), r.value());
    if (both.empty()) {
      return LimitOutcome::does_not_exist("left " + to_string(l) + " and right " + to_string(r) +
                                          " do not intersect");
    }
    return LimitOutcome::finite(std::move(both));
  }
  if (!within_tol(l.value(), r.value(), cfg.tol)) {
    return LimitOutcome::does_not_exist("left " + to_string(l) + " differs from right " +
                                        to_string(r));
  }
  return l;
}

}  // namespace

LimitOutcome mereo_limit(const FuncSpec& f, double c, const LimitConfig& cfg) {
  return two_sided(f, c, cfg, true);
}

LimitOutcome full_limit(const FuncSpec& f, double c, const LimitConfig& cfg) {
  return two_sided(f, c, cfg, false);
}

LimitOutcome interval_param_limit(const Expr& templ, double p, double q, double c,
                                  const LimitConfig& cfg) {
  if (!std::isfinite(p) || !std::isfinite(q)) {
    throw Error(Errc::PreconditionError, "parameter bounds must be finite");
  }
  if (p > q) std::swap(p, q);
  auto at = [&](double alpha) {
    return full_limit(FuncSpec::from_expr(bind_param(templ, alpha)), c, cfg);
  };
  const LimitOutcome lp = at(p);
  if (!lp.is_finite()) return lp;
  const LimitOutcome lq = at(q);
  if (!lq.is_finite()) return lq;
  const LimitOutcome lm = at(0.5 * (p + q));
  if (!lm.is_finite()) return lm;
  const double lo = std::min(lp.value().inf(), lq.value().inf());
  const double hi = std::max(lp.value().sup(), lq.value().sup());
  if (lm.value().inf() < lo - cfg.tol || lm.value().sup() > hi + cfg.tol) {
    throw Error(Errc::NonMonotoneParameter,
                "midpoint limit " + to_string(lm.value()) + " lies outside [" +
                    format_number(lo) + ", " + format_number(hi) + "]");
  }
  return LimitOutcome::finite(RealSet::closed(lo, hi));
}

std::string to_string(const LimitOutcome& o) {
  switch (o.kind()) {
    case LimitOutcome::Kind::Finite: return to_string(o.value());
    case LimitOutcome::Kind::PlusInfinity: return "+inf";
    case LimitOutcome::Kind::MinusInfinity: return "-inf";
    case LimitOutcome::Kind::DoesNotExist: break;
  }
  return "does not exist (" + o.reason() + ")";
}

}  // namespace neutro
