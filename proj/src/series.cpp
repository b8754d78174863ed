#include "skelcoh/series.hpp"

#include "skelcoh/error.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace skelcoh {

namespace {

using Dense = std::vector<ValuedScalar>;

// Hard cap on the length of any expansion; reaching it means the requested
// precision is out of reach.
constexpr std::int64_t kMaxTerms = 100000;

Valuation val(const ValuedScalar& x) { return x.valuation(); }

ValuedScalar one(const ScalarContext& sc) { return ValuedScalar(sc, Rational(1)); }

void check_scalar(const LaurentSeries& a, const LaurentSeries& b) {
  if (!(a.ctx().scalar == b.ctx().scalar))
    throw Error("ContextMismatch", "series over different scalar contexts");
}

[[noreturn]] void overflow(const std::string& what) { throw Error("PrecisionOverflow", what); }

Valuation min_with_prec(const LaurentSeries& f) {
  return min(f.min_valuation(), Valuation(f.prec()));
}

SeriesContext with(const SeriesContext& base, const Rational& prec, std::int64_t lo, std::int64_t hi) {
  SeriesContext c = base;
  c.prec = prec;
  c.n_min = std::min<std::int64_t>(lo, 0);
  c.n_max = std::max<std::int64_t>(hi, 0);
  return c;
}

// Coefficients r_0..r_depth of 1/x for x = 1 + x_1 t + x_2 t^2 + ... (x[0] = 1).
Dense inverse_terms(const Dense& x, std::int64_t depth, const Rational& prec) {
  const ScalarContext& sc = x.front().context();
  Dense r{one(sc)};
  const auto deg = static_cast<std::int64_t>(x.size()) - 1;
  for (std::int64_t m = 1; m <= depth; ++m) {
    ValuedScalar s(sc);
    for (std::int64_t j = 1; j <= std::min(m, deg); ++j) {
      if (x[static_cast<std::size_t>(j)].is_zero()) continue;
      s += x[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(m - j)];
    }
    r.push_back((-s).reduced(prec));
  }
  return r;
}

// 1/x extended until it provably vanishes modulo prec: once deg(x)
// consecutive terms are zero, the recursion stays at zero. Returns nullopt
// if that does not happen within `limit` terms.
std::optional<Dense> terminating_inverse(const Dense& x, const Rational& prec, std::int64_t limit) {
  const ScalarContext& sc = x.front().context();
  const auto deg = static_cast<std::int64_t>(x.size()) - 1;
  Dense r{one(sc)};
  if (deg == 0) return r;
  std::int64_t zeros = 0;
  for (std::int64_t m = 1; m <= limit; ++m) {
    ValuedScalar s(sc);
    for (std::int64_t j = 1; j <= std::min(m, deg); ++j) {
      if (x[static_cast<std::size_t>(j)].is_zero()) continue;
      s += x[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(m - j)];
    }
    r.push_back((-s).reduced(prec));
    zeros = r.back().is_zero() ? zeros + 1 : 0;
    if (zeros >= deg) {
      while (r.size() > 1 && r.back().is_zero()) r.pop_back();
      return r;
    }
  }
  return std::nullopt;
}

bool all_zero(const Dense& xs) {
  return std::all_of(xs.begin(), xs.end(), [](const ValuedScalar& x) { return x.is_zero(); });
}

}  // namespace

SeriesContext SeriesContext::make(ScalarContext scalar, const Rational& prec, std::int64_t n_min,
                                  std::int64_t n_max) {
  if (prec <= 0) throw Error("InvalidContext", "precision must be positive");
  if (n_min > 0 || n_max < 0) throw Error("InvalidContext", "window must contain 0");
  return SeriesContext{scalar, prec, n_min, n_max};
}

LaurentSeries::LaurentSeries(SeriesContext ctx, const Coeffs& coeffs, Valuation head_bound)
    : ctx_(std::move(ctx)), head_(std::move(head_bound)) {
  ctx_ = SeriesContext::make(ctx_.scalar, ctx_.prec, ctx_.n_min, ctx_.n_max);
  for (const auto& [n, c] : coeffs) {
    if (!(c.context() == ctx_.scalar)) throw Error("ContextMismatch", "coefficient from another field");
    if (n < ctx_.n_min || n > ctx_.n_max)
      throw Error("OutOfWindow", "exponent " + std::to_string(n) + " outside [" +
                                     std::to_string(ctx_.n_min) + ", " + std::to_string(ctx_.n_max) + "]");
    coeffs_.emplace(n, c);
  }
  normalize();
}

void LaurentSeries::normalize() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    it->second = it->second.reduced(ctx_.prec);
    it = it->second.is_zero() ? coeffs_.erase(it) : std::next(it);
  }
  if (!head_.is_infinite() && head_ >= Valuation(ctx_.prec)) head_ = Valuation::infinity();
}

LaurentSeries LaurentSeries::zero(const SeriesContext& ctx) { return LaurentSeries(ctx, {}); }

LaurentSeries LaurentSeries::constant(const SeriesContext& ctx, const ValuedScalar& c) {
  return LaurentSeries(ctx, {{0, c}});
}

LaurentSeries LaurentSeries::monomial(SeriesContext ctx, std::int64_t k, const ValuedScalar& c) {
  ctx.n_min = std::min(ctx.n_min, k);
  ctx.n_max = std::max(ctx.n_max, k);
  return LaurentSeries(ctx, {{k, c}});
}

ValuedScalar LaurentSeries::coeff(std::int64_t n) const {
  if (n > ctx_.n_max && !head_negligible())
    throw Error("NotDetermined", "coefficient " + std::to_string(n) + " lies beyond the certified window");
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? ValuedScalar(ctx_.scalar) : it->second;
}

bool LaurentSeries::is_integral() const {
  return min_valuation() >= Valuation(Rational(0));
}

Valuation LaurentSeries::min_valuation() const {
  Valuation m = head_;
  for (const auto& [n, c] : coeffs_) m = min(m, val(c));
  return m;
}

std::int64_t LaurentSeries::lowest_exponent() const {
  return coeffs_.empty() ? 0 : coeffs_.begin()->first;
}

std::int64_t LaurentSeries::highest_exponent() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

std::string LaurentSeries::str() const {
  std::string out;
  for (const auto& [n, c] : coeffs_) {
    if (!out.empty()) out += ",";
    out += std::to_string(n) + ":" + c.str();
  }
  if (out.empty()) out = "0:0";
  if (!head_negligible()) out += " +O(T^" + std::to_string(ctx_.n_max + 1) + ", v>=" + head_.str() + ")";
  return out;
}

// ---------------------------------------------------------------- arithmetic

LaurentSeries operator-(const LaurentSeries& a) {
  LaurentSeries::Coeffs out;
  for (const auto& [n, c] : a.coeffs()) out.emplace(n, -c);
  return LaurentSeries(a.ctx(), out, a.head_bound());
}

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) {
  check_scalar(a, b);
  const Rational prec = std::min(a.prec(), b.prec());
  std::int64_t top = std::numeric_limits<std::int64_t>::max();
  if (!a.head_negligible()) top = std::min(top, a.n_max());
  if (!b.head_negligible()) top = std::min(top, b.n_max());
  const bool exact = top == std::numeric_limits<std::int64_t>::max();
  if (exact) top = std::max(a.n_max(), b.n_max());

  Valuation head = Valuation::infinity();
  if (!a.head_negligible()) head = min(head, a.head_bound());
  if (!b.head_negligible()) head = min(head, b.head_bound());
  LaurentSeries::Coeffs out;
  for (const auto* f : {&a, &b}) {
    for (const auto& [n, c] : f->coeffs()) {
      if (n > top) {
        head = min(head, val(c));
        continue;
      }
      auto [it, fresh] = out.emplace(n, c);
      if (!fresh) it->second += c;
    }
  }
  return LaurentSeries(with(a.ctx(), prec, std::min(a.n_min(), b.n_min()), top), out, head);
}

LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b) { return add(a, -b); }

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) {
  check_scalar(a, b);
  const Valuation ma(a.prec()), mb(b.prec());
  const Valuation mr = min(min(ma, mb), min(ma + min_with_prec(b), mb + min_with_prec(a)));
  if (mr <= Valuation(Rational(0))) overflow("product has no positive precision");
  const Rational prec = mr.value();

  // The head of x meets the coefficients of y below n - x.n_max(); the first
  // of those pairs that could fall below prec bounds the certified window.
  auto head_limit = [&](const LaurentSeries& x, const LaurentSeries& y) -> std::optional<std::int64_t> {
    if (x.head_negligible()) return std::nullopt;
    const Valuation& g = x.head_bound();
    for (const auto& [j, c] : y.coeffs())
      if (g + val(c) < Valuation(prec)) return x.n_max() + j;
    if (!y.head_negligible() && g + y.head_bound() < Valuation(prec)) return x.n_max() + y.n_max() + 1;
    return std::nullopt;
  };
  const auto la = head_limit(a, b);
  const auto lb = head_limit(b, a);
  const bool exact = !la && !lb;
  std::int64_t top = a.n_max() + b.n_max();
  if (la) top = *la;
  if (lb) top = la ? std::min(*la, *lb) : *lb;
  if (top < 0) overflow("product not certified at exponent 0");

  Valuation head = Valuation::infinity();
  if (!exact) {
    if (!a.head_negligible()) head = min(head, a.head_bound() + b.min_valuation());
    if (!b.head_negligible()) head = min(head, b.head_bound() + a.min_valuation());
  }
  LaurentSeries::Coeffs out;
  for (const auto& [i, x] : a.coeffs()) {
    for (const auto& [j, y] : b.coeffs()) {
      if (i + j > top) {
        head = min(head, val(x) + val(y));
        continue;
      }
      ValuedScalar t = x * y;
      auto [it, fresh] = out.emplace(i + j, t);
      if (!fresh) it->second += t;
    }
  }
  const std::int64_t lo = a.n_min() + b.n_min();
  return LaurentSeries(with(a.ctx(), prec, lo, top), out, exact ? Valuation::infinity() : head);
}

LaurentSeries scalar_mul(const ValuedScalar& s, const LaurentSeries& f) {
  if (!(s.context() == f.ctx().scalar)) throw Error("ContextMismatch", "scalar from another field");
  if (s.is_zero()) return LaurentSeries::zero(f.ctx());
  const Rational vs = s.valuation().value();
  const Rational prec = f.prec() + vs;
  if (prec <= 0) overflow("scalar multiple has no positive precision");
  LaurentSeries::Coeffs out;
  for (const auto& [n, c] : f.coeffs()) out.emplace(n, s * c);
  return LaurentSeries(with(f.ctx(), prec, f.n_min(), f.n_max()), out, f.head_bound() + Valuation(vs));
}

LaurentSeries shift(const LaurentSeries& f, std::int64_t k) {
  if (!f.head_negligible() && f.n_max() + k < 0) overflow("shifted series not certified at exponent 0");
  LaurentSeries::Coeffs out;
  for (const auto& [n, c] : f.coeffs()) out.emplace(n + k, c);
  return LaurentSeries(with(f.ctx(), f.prec(), f.n_min() + k, f.n_max() + k), out, f.head_bound());
}

LaurentSeries theta(const LaurentSeries& f) {
  LaurentSeries::Coeffs out;
  for (const auto& [n, c] : f.coeffs()) out.emplace(n, c * Rational(n));
  return LaurentSeries(f.ctx(), out, f.head_bound());
}

LaurentSeries derive(const LaurentSeries& f) { return shift(theta(f), -1); }

bool congruent(const LaurentSeries& a, const LaurentSeries& b) { return sub(a, b).coeffs().empty(); }

// ------------------------------------------------------------ factorization

NewtonData newton_data(const LaurentSeries& u) {
  if (u.coeffs().empty()) throw Error("NotDetermined", "series vanishes to the working precision");
  Rational v;
  std::int64_t vp = 0;
  bool first = true;
  for (const auto& [n, c] : u.coeffs()) {
    const Rational cv = c.valuation().value();
    if (first || cv < v) {
      v = cv;
      vp = n;
      first = false;
    }
  }
  if (!u.head_negligible() && u.head_bound() < Valuation(v))
    throw Error("NotDetermined", "minimum could hide beyond exponent " + std::to_string(u.n_max()));
  return {v, vp};
}

UnitFactorization factorize_unit(const LaurentSeries& u) {
  NewtonData nd;
  try {
    nd = newton_data(u);
  } catch (const Error& e) {
    throw Error("NotAUnit", e.what());
  }
  if (!u.head_negligible()) overflow("factorization needs a negligible head");
  const ScalarContext& sc = u.ctx().scalar;
  const Rational work = u.prec() - nd.v;
  const std::int64_t k = nd.v_prime;
  const ValuedScalar ck = u.coeff(k);
  const ValuedScalar ck_inv = ck.inverse();

  std::map<std::int64_t, ValuedScalar> u0;
  for (const auto& [n, c] : u.coeffs()) {
    ValuedScalar x = (c * ck_inv).reduced(work);
    if (!x.is_zero()) u0.emplace(n - k, x);
  }
  const std::int64_t dp = u0.rbegin()->first;   // >= 0
  const std::int64_t dm = -u0.begin()->first;   // >= 0

  Dense up(static_cast<std::size_t>(dp + 1), ValuedScalar(sc));
  Dense um(static_cast<std::size_t>(dm + 1), ValuedScalar(sc));
  up[0] = one(sc);
  um[0] = one(sc);
  ValuedScalar b0 = one(sc);

  // Each pass gains at least min_{n<0} v(u0_n) >= 1/e.
  const std::int64_t cap = 4 * (floor_to_int(work * sc.e) + 2) + 16;
  for (std::int64_t it = 0;; ++it) {
    if (it > cap) overflow("factorization did not stabilize");
    const Dense im = inverse_terms(um, dp, work);
    Dense f(static_cast<std::size_t>(dp + 1), ValuedScalar(sc));
    for (const auto& [i, c] : u0) {
      if (i < 0) continue;
      for (std::int64_t n = 0; n <= i; ++n) {
        const auto& r = im[static_cast<std::size_t>(i - n)];
        if (!r.is_zero()) f[static_cast<std::size_t>(n)] += c * r;
      }
    }
    b0 = f[0].reduced(work);
    const ValuedScalar b0_inv = b0.inverse();
    Dense next_up(f.size(), ValuedScalar(sc));
    next_up[0] = one(sc);
    for (std::size_t n = 1; n < f.size(); ++n) next_up[n] = (f[n] * b0_inv).reduced(work);

    const Dense ip = inverse_terms(next_up, dm, work);
    Dense g(static_cast<std::size_t>(dm + 1), ValuedScalar(sc));
    for (const auto& [i, c] : u0) {
      if (i > 0) continue;
      for (std::int64_t m = 0; m <= -i; ++m) {
        const auto& r = ip[static_cast<std::size_t>(-m - i)];
        if (!r.is_zero()) g[static_cast<std::size_t>(m)] += c * r;
      }
    }
    const ValuedScalar g0_inv = g[0].reduced(work).inverse();
    Dense next_um(g.size(), ValuedScalar(sc));
    next_um[0] = one(sc);
    for (std::size_t m = 1; m < g.size(); ++m) next_um[m] = (g[m] * g0_inv).reduced(work);

    const bool stable = next_up == up && next_um == um;
    up = std::move(next_up);
    um = std::move(next_um);
    if (stable) break;
  }

  LaurentSeries::Coeffs plus, minus;
  for (std::int64_t n = 0; n <= dp; ++n) plus.emplace(n, up[static_cast<std::size_t>(n)]);
  for (std::int64_t m = 0; m <= dm; ++m) minus.emplace(-m, um[static_cast<std::size_t>(m)]);
  const SeriesContext base = u.ctx();
  return UnitFactorization{(ck * b0).reduced(u.prec()), k,
                           LaurentSeries(with(base, work, 0, dp), plus),
                           LaurentSeries(with(base, work, -dm, 0), minus)};
}

LaurentSeries expand(const UnitFactorization& f) {
  return shift(scalar_mul(f.c, mul(f.u_plus, f.u_minus)), f.k);
}

LaurentSeries invert(const LaurentSeries& u, std::int64_t top) {
  const UnitFactorization fac = factorize_unit(u);
  const ScalarContext& sc = u.ctx().scalar;
  const Rational work = fac.u_plus.prec();

  Dense um(static_cast<std::size_t>(-fac.u_minus.n_min() + 1), ValuedScalar(sc));
  for (const auto& [n, c] : fac.u_minus.coeffs()) um[static_cast<std::size_t>(-n)] = c;
  const auto im = terminating_inverse(um, work, kMaxTerms);
  if (!im) overflow("inverse of the T^-1 part does not terminate");
  LaurentSeries::Coeffs minus;
  for (std::size_t m = 0; m < im->size(); ++m) minus.emplace(-static_cast<std::int64_t>(m), (*im)[m]);
  const auto depth = static_cast<std::int64_t>(im->size()) - 1;

  // the product is certified up to (terms of 1/u_plus) - depth
  const std::int64_t terms = std::max<std::int64_t>(top + fac.k + depth, 0);
  if (terms > kMaxTerms) overflow("inverse window too large");
  Dense up(static_cast<std::size_t>(fac.u_plus.n_max() + 1), ValuedScalar(sc));
  for (const auto& [n, c] : fac.u_plus.coeffs()) up[static_cast<std::size_t>(n)] = c;
  LaurentSeries::Coeffs plus;
  Valuation head = Valuation(Rational(0));
  std::int64_t hi = terms;
  if (auto exact = terminating_inverse(up, work, terms)) {
    head = Valuation::infinity();
    hi = static_cast<std::int64_t>(exact->size()) - 1;
    for (std::size_t n = 0; n < exact->size(); ++n) plus.emplace(static_cast<std::int64_t>(n), (*exact)[n]);
  } else {
    const Dense ip = inverse_terms(up, terms, work);
    for (std::size_t n = 0; n < ip.size(); ++n) plus.emplace(static_cast<std::int64_t>(n), ip[n]);
  }
  const LaurentSeries inv_plus(with(u.ctx(), work, 0, hi), plus, head);
  const LaurentSeries inv_minus(with(u.ctx(), work, -depth, 0), minus);
  return scalar_mul(fac.c.inverse(), shift(mul(inv_plus, inv_minus), -fac.k));
}

LaurentSeries invert(const LaurentSeries& u) { return invert(u, u.n_max()); }

LaurentSeries substitute_parameter(const LaurentSeries& u, const LaurentSeries& w) {
  check_scalar(u, w);
  NewtonData nw;
  try {
    nw = newton_data(w);
  } catch (const Error& e) {
    throw Error("NotAParameter", e.what());
  }
  if (nw.v != 0 || nw.v_prime != 1 || !w.is_integral())
    throw Error("NotAParameter", "w must be integral with Newton data (0, 1)");
  if (!u.head_negligible()) overflow("substitution needs a negligible head");

  const ScalarContext& sc = u.ctx().scalar;
  const std::int64_t goal = std::max<std::int64_t>(u.n_max(), 0) * std::max<std::int64_t>(w.n_max(), 1);
  SeriesContext base = u.ctx();
  base.prec = std::min(u.prec(), w.prec());
  LaurentSeries acc = LaurentSeries::constant(base, u.coeff(0));
  LaurentSeries power = LaurentSeries::constant(base, one(sc));
  for (std::int64_t n = 1; n <= u.highest_exponent(); ++n) {
    power = mul(power, w);
    const ValuedScalar a = u.coeff(n);
    if (!a.is_zero()) acc = add(acc, scalar_mul(a, power));
  }
  const std::int64_t neg = -u.lowest_exponent();
  if (neg > 0) {
    LaurentSeries iw = invert(w, goal);
    if (neg > 1) iw = invert(w, goal + (neg - 1) * -iw.lowest_exponent());
    power = LaurentSeries::constant(base, one(sc));
    for (std::int64_t n = 1; n <= neg; ++n) {
      power = mul(power, iw);
      const ValuedScalar a = u.coeff(-n);
      if (!a.is_zero()) acc = add(acc, scalar_mul(a, power));
    }
  }
  return acc;
}

// --------------------------------------------------------- residue calculus

ValuedScalar residue(const LaurentSeries& omega) { return omega.coeff(0); }

LaurentSeries dlog(const LaurentSeries& u) {
  const LaurentSeries t = theta(u);
  if (t.coeffs().empty()) return LaurentSeries::zero(u.ctx());
  // 1/u certified far enough that the product is certified up to u.n_max()
  return mul(t, invert(u, u.n_max() - t.lowest_exponent()));
}

LaurentSeries leg_restrict(const LaurentSeries& f, int side, const Rational& mu) {
  if (side != 1 && side != 2) throw Error("InvalidSide", "side must be 1 or 2");
  if (mu <= 0) throw Error("NotInValueGroup", "leg length must be positive");
  const ScalarContext& sc = f.ctx().scalar;
  const ValuedScalar p_mu = ValuedScalar::p_power(sc, mu);
  if (side == 1) return f;
  if (!f.head_negligible()) overflow("leg restriction needs a finite sum");
  const std::int64_t depth = std::max<std::int64_t>(-f.lowest_exponent(), 0);
  const Rational prec = f.prec() - mu * depth;
  if (prec <= 0) overflow("no precision left after rescaling by p^(" + to_string(mu) + ")");
  LaurentSeries::Coeffs out;
  for (const auto& [n, c] : f.coeffs()) out.emplace(-n, c * p_mu.pow(n));
  return LaurentSeries(with(f.ctx(), prec, -f.n_max(), -f.n_min()), out);
}

LaurentSeries leg_restrict_form(const LaurentSeries& f, int side, const Rational& mu) {
  LaurentSeries g = leg_restrict(f, side, mu);
  return side == 2 ? -g : g;
}

LaurentSeries prime_to_p_root(const LaurentSeries& u, std::int64_t ell) {
  const ScalarContext& sc = u.ctx().scalar;
  if (ell < 2 || ell % sc.p == 0)
    throw Error("InvalidExponent", "ell = " + std::to_string(ell) + " must be >= 2 and prime to p");
  if (!(u.coeff(0) == one(sc))) throw Error("BadSubgroup", "constant term must be 1");
  const Rational prec = u.prec();

  bool has_neg = false, has_pos = !u.head_negligible();
  for (const auto& [n, c] : u.coeffs()) {
    if (n < 0) has_neg = true;
    if (n > 0) has_pos = true;
  }
  if (!has_neg && !has_pos) return u;
  if (has_neg && has_pos) throw Error("BadSubgroup", "u mixes positive and negative exponents");

  // binomial coefficients C(1/ell, k), all p-integral
  const Rational exponent(Integer(1), Integer(ell));
  auto next_binom = [&](const Rational& prev, std::int64_t k) {
    return prev * (exponent - Rational(k - 1)) / Rational(k);
  };

  if (has_pos) {
    if (!u.is_integral()) throw Error("BadSubgroup", "u must be integral");
    const std::int64_t d = u.n_max();
    Dense x(static_cast<std::size_t>(d + 1), ValuedScalar(sc));
    for (const auto& [n, c] : u.coeffs())
      if (n > 0) x[static_cast<std::size_t>(n)] = c;
    Dense r(x.size(), ValuedScalar(sc));
    r[0] = one(sc);
    Dense pw = r;  // x^k truncated to degree d
    Rational binom(1);
    for (std::int64_t k = 1; k <= d; ++k) {
      Dense next(x.size(), ValuedScalar(sc));
      for (std::int64_t i = 0; i <= d; ++i) {
        if (pw[static_cast<std::size_t>(i)].is_zero()) continue;
        for (std::int64_t j = 1; i + j <= d; ++j)
          if (!x[static_cast<std::size_t>(j)].is_zero())
            next[static_cast<std::size_t>(i + j)] += pw[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
      }
      for (auto& c : next) c = c.reduced(prec);
      pw = std::move(next);
      binom = next_binom(binom, k);
      for (std::int64_t n = 0; n <= d; ++n) r[static_cast<std::size_t>(n)] += pw[static_cast<std::size_t>(n)] * binom;
    }
    LaurentSeries::Coeffs out;
    for (std::int64_t n = 0; n <= d; ++n) out.emplace(n, r[static_cast<std::size_t>(n)]);
    const Valuation head = u.head_negligible() && all_zero(Dense(x.begin() + 1, x.end()))
                               ? Valuation::infinity()
                               : Valuation(Rational(0));
    return LaurentSeries(with(u.ctx(), prec, 0, d), out, head);
  }

  for (const auto& [n, c] : u.coeffs())
    if (n < 0 && c.valuation() <= Valuation(Rational(0)))
      throw Error("BadSubgroup", "negative-exponent coefficients must have positive valuation");
  const LaurentSeries x = sub(u, LaurentSeries::constant(u.ctx(), one(sc)));
  LaurentSeries r = LaurentSeries::constant(u.ctx(), one(sc));
  LaurentSeries pw = r;
  Rational binom(1);
  for (std::int64_t k = 1;; ++k) {
    if (k > kMaxTerms) overflow("binomial series did not terminate");
    pw = mul(pw, x);
    if (pw.coeffs().empty()) break;
    binom = next_binom(binom, k);
    r = add(r, scalar_mul(ValuedScalar(sc, binom), pw));
  }
  return r;
}

LaurentSeries rational_on_circle(ScalarContext scalar, const Rational& prec,
                                 const std::vector<DivisorPoint>& divisor, const Rational& r) {
  const ValuedScalar p_r = ValuedScalar::p_power(scalar, r);
  const SeriesContext base = SeriesContext::make(scalar, prec, 0, 0);
  LaurentSeries acc = LaurentSeries::zero(base);
  for (const auto& [a, m] : divisor) {
    if (!(a.context() == scalar)) throw Error("ContextMismatch", "divisor point from another field");
    if (m == 0) continue;
    const Valuation va = a.valuation();
    if (va == Valuation(r)) throw Error("PointOnCircle", "a point of valuation " + to_string(r) + " lies on the circle");
    const bool inside = va > Valuation(r);
    // inside: sum_{n>=0} (a/p^r)^n S^-n; outside: -sum_{n>=1} (p^r/a)^n S^n
    const ValuedScalar q = inside ? a * p_r.inverse() : p_r * a.inverse();
    LaurentSeries::Coeffs terms;
    const ValuedScalar mult(scalar, Rational(m));
    ValuedScalar pw = one(scalar);
    std::int64_t n = 0;
    if (inside) terms.emplace(0, mult);
    while (true) {
      ++n;
      pw = (pw * q).reduced(prec);
      if (pw.is_zero()) break;
      if (n > kMaxTerms) overflow("expansion did not terminate");
      terms.emplace(inside ? -n : n, inside ? pw * mult : -(pw * mult));
    }
    std::int64_t lo = 0, hi = 0;
    if (!terms.empty()) {
      lo = terms.begin()->first;
      hi = terms.rbegin()->first;
    }
    acc = add(acc, LaurentSeries(with(base, prec, lo, hi), terms));
  }
  return acc;
}

LaurentSeries::Coeffs parse_coefficients(ScalarContext scalar, std::string_view text) {
  LaurentSeries::Coeffs out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw InputError("expected 'n:value' in '" + std::string(item) + "'");
    const Rational n = parse_rational(item.substr(0, colon));
    if (!is_integer(n)) throw InputError("exponent must be an integer: '" + std::string(item) + "'");
    const auto exp = boost::multiprecision::numerator(n).convert_to<std::int64_t>();
    auto [it, fresh] = out.emplace(exp, ValuedScalar::parse(scalar, item.substr(colon + 1)));
    if (!fresh) throw InputError("exponent " + std::to_string(exp) + " given twice");
    start = end + 1;
  }
  return out;
}

}  // namespace skelcoh
