#include "towerlab/poly.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace towerlab {

std::string Var::name() const {
  static constexpr char kLetters[] = {'a', 'b', 'c'};
  return kLetters[static_cast<int>(kind)] + std::to_string(index);
}

std::optional<Var> Var::parse(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  VarKind kind;
  switch (text[0]) {
    case 'a': kind = VarKind::A; break;
    case 'b': kind = VarKind::B; break;
    case 'c': kind = VarKind::C; break;
    default: return std::nullopt;
  }
  unsigned index = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), index);
  if (ec != std::errc() || ptr != text.data() + text.size() || index == 0) return std::nullopt;
  return Var{kind, index};
}

std::uint32_t total_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

bool TermOrder::operator()(const Monomial& x, const Monomial& y) const {
  const auto dx = total_degree(x), dy = total_degree(y);
  if (dx != dy) return dx > dy;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first == y[j].first) {
      if (x[i].second != y[j].second) return x[i].second > y[j].second;
      ++i;
      ++j;
    } else {
      return x[i].first < y[j].first;
    }
  }
  return i < x.size() && j == y.size();
}

Monomial monomial_mul(const Monomial& x, const Monomial& y) {
  Monomial out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.push_back(y[j++]);
    } else {
      out.emplace_back(x[i].first, x[i].second + y[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::optional<Monomial> monomial_div(const Monomial& x, const Monomial& y) {
  Monomial out;
  std::size_t i = 0;
  for (const auto& [v, e] : y) {
    while (i < x.size() && x[i].first < v) out.push_back(x[i++]);
    if (i == x.size() || x[i].first != v || x[i].second < e) return std::nullopt;
    if (x[i].second > e) out.emplace_back(v, x[i].second - e);
    ++i;
  }
  while (i < x.size()) out.push_back(x[i++]);
  return out;
}

std::string monomial_to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : m) {
    if (!s.empty()) s += '*';
    s += v.name();
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s;
}

SparsePoly SparsePoly::constant(const Element& c) {
  SparsePoly out(c.ctx());
  out.add_term({}, c);
  return out;
}

SparsePoly SparsePoly::constant(const FieldCtx& ctx, long long n) {
  return constant(Element::from_integer(ctx, n));
}

SparsePoly SparsePoly::variable(const FieldCtx& ctx, Var v, std::uint32_t exp) {
  SparsePoly out(ctx);
  if (exp == 0) {
    out.add_term({}, Element::one(ctx));
  } else {
    out.add_term({{v, exp}}, Element::one(ctx));
  }
  return out;
}

SparsePoly SparsePoly::term(const Element& coeff, Monomial m) {
  std::sort(m.begin(), m.end());
  Monomial clean;
  for (const auto& [v, e] : m) {
    if (e == 0) continue;
    if (!clean.empty() && clean.back().first == v) {
      clean.back().second += e;
    } else {
      clean.emplace_back(v, e);
    }
  }
  SparsePoly out(coeff.ctx());
  out.add_term(clean, coeff);
  return out;
}

void SparsePoly::add_term(const Monomial& m, const Element& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool SparsePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

const Element& SparsePoly::leading_coefficient() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return terms_.begin()->second;
}

const Monomial& SparsePoly::leading_monomial() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return terms_.begin()->first;
}

std::vector<Var> SparsePoly::variables() const {
  std::vector<Var> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) vars.push_back(v);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

SparsePoly::Exponents SparsePoly::dense_exponents(const Monomial& m, const std::vector<Var>& vars) {
  Exponents out(vars.size(), 0);
  std::size_t i = 0;
  for (const auto& [v, e] : m) {
    while (i < vars.size() && vars[i] < v) ++i;
    if (i == vars.size() || vars[i] != v) throw InvalidArgument("variable " + v.name() + " not in variable list");
    out[i] = e;
  }
  return out;
}

std::uint32_t SparsePoly::degree_in(Var v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) {
    for (const auto& [w, e] : m) {
      if (w == v) d = std::max(d, e);
    }
  }
  return d;
}

std::uint32_t SparsePoly::total_degree() const {
  // grlex puts the highest total degree first
  return terms_.empty() ? 0 : towerlab::total_degree(terms_.begin()->first);
}

std::map<std::uint32_t, SparsePoly> SparsePoly::collect(Var v) const {
  std::map<std::uint32_t, SparsePoly> out;
  for (const auto& [m, c] : terms_) {
    std::uint32_t d = 0;
    Monomial rest;
    for (const auto& [w, e] : m) {
      if (w == v) {
        d = e;
      } else {
        rest.emplace_back(w, e);
      }
    }
    out.try_emplace(d, *ctx_).first->second.add_term(rest, c);
  }
  return out;
}

SparsePoly SparsePoly::coefficient_of(Var v, std::uint32_t deg) const {
  auto parts = collect(v);
  auto it = parts.find(deg);
  return it == parts.end() ? SparsePoly(*ctx_) : it->second;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& x, const SparsePoly& y) {
  x.check_same(y);
  SparsePoly out(*x.ctx_);
  for (const auto& [mx, cx] : x.terms_) {
    for (const auto& [my, cy] : y.terms_) out.add_term(monomial_mul(mx, my), cx * cy);
  }
  return out;
}

SparsePoly& SparsePoly::operator*=(const SparsePoly& o) { return *this = *this * o; }

SparsePoly& SparsePoly::operator*=(const Element& c) {
  if (&c.ctx() != ctx_) throw ContextMismatch();
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

SparsePoly operator-(SparsePoly x) {
  for (auto& [m, c] : x.terms_) c = -c;
  return x;
}

bool operator==(const SparsePoly& x, const SparsePoly& y) {
  return x.ctx_ == y.ctx_ && x.terms_ == y.terms_;
}

SparsePoly SparsePoly::shifted(const Monomial& m) const {
  SparsePoly out(*ctx_);
  for (const auto& [mx, c] : terms_) out.terms_.emplace(monomial_mul(mx, m), c);
  return out;
}

Element SparsePoly::evaluate(const Assignment& at) const {
  Element acc = Element::zero(*ctx_);
  std::map<Var, Element> cache;
  for (const auto& [m, c] : terms_) {
    Element t = c;
    for (const auto& [v, e] : m) {
      auto it = cache.find(v);
      if (it == cache.end()) {
        auto value = at(v);
        if (!value) throw DomainError("no coordinate for " + v.name());
        if (&value->ctx() != ctx_) throw ContextMismatch();
        it = cache.emplace(v, *value).first;
      }
      t *= pow(it->second, e);
    }
    acc += t;
  }
  return acc;
}

std::optional<SparsePoly> SparsePoly::divide_exact(const SparsePoly& divisor) const {
  check_same(divisor);
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  const auto& lm = divisor.leading_monomial();
  const Element lc_inv = inverse(divisor.leading_coefficient());
  SparsePoly rem = *this;
  SparsePoly quot(*ctx_);
  while (!rem.is_zero()) {
    auto shift = monomial_div(rem.leading_monomial(), lm);
    if (!shift) return std::nullopt;
    SparsePoly t = term(rem.leading_coefficient() * lc_inv, *shift);
    quot += t;
    rem -= t * divisor;
  }
  return quot;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool prime_field = c.code() < ctx_->p();
    std::string coeff = prime_field ? std::to_string(c.code()) : c.to_string();
    if (m.empty()) {
      os << coeff;
    } else if (c.is_one()) {
      os << monomial_to_string(m);
    } else {
      os << coeff << '*' << monomial_to_string(m);
    }
  }
  return os.str();
}

std::strong_ordering SparsePoly::compare(const SparsePoly& x, const SparsePoly& y) {
  auto ix = x.terms_.begin();
  auto iy = y.terms_.begin();
  const TermOrder before;
  for (; ix != x.terms_.end() && iy != y.terms_.end(); ++ix, ++iy) {
    if (ix->first != iy->first) return before(ix->first, iy->first) ? std::strong_ordering::less
                                                                     : std::strong_ordering::greater;
    if (auto c = ix->second.code() <=> iy->second.code(); c != 0) return c;
  }
  return x.terms_.size() <=> y.terms_.size();
}

SparsePoly pow(const SparsePoly& x, std::uint32_t e) {
  SparsePoly result = SparsePoly::constant(x.ctx(), 1);
  SparsePoly base = x;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

}  // namespace towerlab
