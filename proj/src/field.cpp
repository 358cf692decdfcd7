#include "towerlab/field.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace towerlab {

namespace {

// Dense univariate polynomials (c0 first) over a small field given by Ops.
template <class Ops>
bool monic_divides(std::vector<typename Ops::T> f, const std::vector<typename Ops::T>& g, const Ops& ops) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t i = f.size(); i-- > dg;) {
    auto lead = f[i];
    if (ops.is_zero(lead)) continue;
    for (std::size_t j = 0; j <= dg; ++j) {
      f[i - dg + j] = ops.sub(f[i - dg + j], ops.mul(lead, g[j]));
    }
  }
  for (std::size_t i = 0; i < dg; ++i) {
    if (!ops.is_zero(f[i])) return false;
  }
  return true;
}

// Calls fn on every monic polynomial of degree d over a field of `order` elements.
template <class T, class Fn>
bool any_monic(unsigned d, std::uint64_t order, Fn&& fn) {
  std::vector<T> g(d + 1, T{0});
  g[d] = T{1};
  std::uint64_t total = 1;
  for (unsigned i = 0; i < d; ++i) total *= order;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (unsigned i = 0; i < d; ++i) {
      g[i] = static_cast<T>(r % order);
      r /= order;
    }
    if (fn(g)) return true;
  }
  return false;
}

template <class Ops>
bool is_irreducible(const std::vector<typename Ops::T>& f, std::uint64_t order, const Ops& ops) {
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  for (unsigned e = 1; e <= d / 2; ++e) {
    bool reducible = any_monic<typename Ops::T>(e, order, [&](const auto& g) { return monic_divides(f, g, ops); });
    if (reducible) return false;
  }
  return true;
}

// Lexicographically least monic irreducible of degree d, comparing c0 first.
template <class Ops>
std::vector<typename Ops::T> least_irreducible(unsigned d, std::uint64_t order, const Ops& ops) {
  using T = typename Ops::T;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < d; ++i) total *= order;
  std::vector<T> f(d + 1, T{0});
  f[d] = T{1};
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (unsigned i = d; i-- > 0;) {
      f[i] = static_cast<T>(r % order);
      r /= order;
    }
    if (is_irreducible(f, order, ops)) return f;
  }
  throw Error("no irreducible polynomial found");
}

struct PrimeOps {
  using T = unsigned;
  unsigned p;
  bool is_zero(T x) const { return x == 0; }
  T sub(T x, T y) const { return (x + p - y) % p; }
  T mul(T x, T y) const { return (x * y) % p; }
};

struct FieldOps {
  using T = FieldCtx::Code;
  const FieldCtx* f;
  bool is_zero(T x) const { return x == 0; }
  T sub(T x, T y) const { return f->sub(x, y); }
  T mul(T x, T y) const { return f->mul(x, y); }
};

std::uint64_t checked_pow(std::uint64_t base, unsigned e, std::uint64_t cap, const char* what) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > cap / base) throw CapExceeded(std::string(what) + " exceeds the size cap " + std::to_string(cap));
    r *= base;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::shared_ptr<const FieldCtx> FieldCtx::make(unsigned p, unsigned m, unsigned k, std::uint64_t size_cap) {
  if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (m < 1) throw InvalidArgument("m >= 1 required");
  if (k < 1) throw InvalidArgument("k >= 1 required");
  size_cap = std::min<std::uint64_t>(size_cap, std::numeric_limits<std::int32_t>::max());

  std::shared_ptr<FieldCtx> ctx(new FieldCtx());
  ctx->p_ = p;
  ctx->m_ = m;
  ctx->k_ = k;
  ctx->q_ = checked_pow(p, m, size_cap, "q");
  ctx->ell_ = checked_pow(ctx->q_, 3, size_cap, "l = q^3");
  ctx->size_ = checked_pow(ctx->ell_, k, size_cap, "l^k");

  if (k == 1) {
    ctx->inner_modulus_ = least_irreducible(3 * m, p, PrimeOps{p});
    ctx->outer_modulus_ = {0, 1};
  } else {
    ctx->base_ = make(p, m, 1, size_cap);
    ctx->inner_modulus_ = ctx->base_->inner_modulus_;
    ctx->outer_modulus_ = least_irreducible(k, ctx->ell_, FieldOps{ctx->base_.get()});
  }
  ctx->build_tables();
  return ctx;
}

FieldPtr make_field(unsigned p, unsigned m, unsigned k, std::uint64_t size_cap) {
  return FieldCtx::make(p, m, k, size_cap);
}

std::vector<unsigned> FieldCtx::digits(Code x) const {
  std::vector<unsigned> out(degree());
  for (auto& d : out) {
    d = x % p_;
    x /= p_;
  }
  return out;
}

FieldCtx::Code FieldCtx::from_digits(std::span<const unsigned> digits) const {
  if (digits.size() != degree()) throw InvalidArgument("digit vector has wrong length");
  Code x = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= p_) throw InvalidArgument("digit out of range [0, p)");
    x = x * p_ + digits[i];
  }
  return x;
}

std::vector<std::vector<unsigned>> FieldCtx::coordinates(Code x) const {
  auto flat = digits(x);
  std::vector<std::vector<unsigned>> out(k_);
  const unsigned d = inner_degree();
  for (unsigned j = 0; j < k_; ++j) out[j].assign(flat.begin() + j * d, flat.begin() + (j + 1) * d);
  return out;
}

FieldCtx::Code FieldCtx::from_integer(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Code>(r);
}

FieldCtx::Code FieldCtx::inner_mul_structural(Code x, Code y) const {
  const unsigned d = inner_degree();
  std::vector<unsigned> a(d), b(d);
  for (unsigned i = 0; i < d; ++i) {
    a[i] = x % p_;
    x /= p_;
    b[i] = y % p_;
    y /= p_;
  }
  std::vector<unsigned> prod(2 * d - 1, 0);
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
  }
  for (unsigned i = 2 * d - 1; i-- > d;) {
    unsigned lead = prod[i];
    if (lead == 0) continue;
    for (unsigned j = 0; j <= d; ++j) {
      prod[i - d + j] = (prod[i - d + j] + p_ * p_ - lead * inner_modulus_[j]) % p_;
    }
  }
  Code out = 0;
  for (unsigned i = d; i-- > 0;) out = out * p_ + prod[i];
  return out;
}

FieldCtx::Code FieldCtx::mul_structural(Code x, Code y) const {
  if (k_ == 1) return inner_mul_structural(x, y);
  const FieldCtx& f = *base_;
  const auto l = static_cast<Code>(ell_);
  std::vector<Code> a(k_), b(k_);
  for (unsigned i = 0; i < k_; ++i) {
    a[i] = x % l;
    x /= l;
    b[i] = y % l;
    y /= l;
  }
  std::vector<Code> prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = f.add(prod[i + j], f.inner_mul_structural(a[i], b[j]));
  }
  for (unsigned i = 2 * k_ - 1; i-- > k_;) {
    Code lead = prod[i];
    if (lead == 0) continue;
    for (unsigned j = 0; j <= k_; ++j) {
      prod[i - k_ + j] = f.sub(prod[i - k_ + j], f.inner_mul_structural(lead, outer_modulus_[j]));
    }
  }
  Code out = 0;
  for (unsigned i = k_; i-- > 0;) out = out * l + prod[i];
  return out;
}

void FieldCtx::build_tables() {
  const unsigned D = degree();
  pow_p_.resize(D);
  Code pp = 1;
  for (unsigned i = 0; i < D; ++i, pp *= p_) pow_p_[i] = pp;

  const auto n = static_cast<Code>(size_);
  neg_.resize(n);
  for (Code x = 0; x < n; ++x) {
    auto d = digits(x);
    for (auto& c : d) c = (p_ - c) % p_;
    neg_[x] = from_digits(d);
  }

  const std::uint64_t order = size_ - 1;
  const auto factors = prime_factors(order);
  auto spow = [this](Code x, std::uint64_t e) {
    Code r = 1;
    while (e) {
      if (e & 1) r = mul_structural(r, x);
      x = mul_structural(x, x);
      e >>= 1;
    }
    return r;
  };
  for (Code g = 2; g < n; ++g) {
    if (std::all_of(factors.begin(), factors.end(), [&](std::uint64_t r) { return spow(g, order / r) != 1; })) {
      generator_ = g;
      break;
    }
  }
  if (generator_ == 0) throw Error("no primitive element found");

  exp_.resize(order);
  log_.assign(n, 0);
  Code x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_structural(x, generator_);
  }

  if (p_ != 2) {
    zech_.resize(order);
    for (std::uint64_t i = 0; i < order; ++i) {
      auto d = digits(exp_[i]);
      d[0] = (d[0] + 1) % p_;
      Code s = from_digits(d);
      zech_[i] = s == 0 ? -1 : static_cast<std::int32_t>(log_[s]);
    }
  }
}

FieldCtx::Code FieldCtx::add(Code x, Code y) const {
  if (p_ == 2) return x ^ y;
  if (x == 0) return y;
  if (y == 0) return x;
  const std::uint64_t order = size_ - 1;
  const std::uint64_t lx = log_[x];
  const std::uint64_t d = (log_[y] + order - lx) % order;
  const std::int32_t z = zech_[d];
  if (z < 0) return 0;
  return exp_[(lx + static_cast<std::uint64_t>(z)) % order];
}

FieldCtx::Code FieldCtx::mul(Code x, Code y) const {
  if (x == 0 || y == 0) return 0;
  const std::uint64_t s = std::uint64_t{log_[x]} + log_[y];
  const std::uint64_t order = size_ - 1;
  return exp_[s >= order ? s - order : s];
}

FieldCtx::Code FieldCtx::inv(Code x) const {
  if (x == 0) throw DomainError("inversion of zero");
  const std::uint64_t order = size_ - 1;
  return exp_[(order - log_[x]) % order];
}

FieldCtx::Code FieldCtx::pow(Code x, std::uint64_t e) const {
  if (e == 0) return 1;
  if (x == 0) return 0;
  const std::uint64_t order = size_ - 1;
  return exp_[(std::uint64_t{log_[x]} * (e % order)) % order];
}

std::uint32_t FieldCtx::log(Code x) const {
  if (x == 0) throw DomainError("logarithm of zero");
  return log_[x];
}

Element& Element::operator+=(const Element& o) {
  check_same(o);
  code_ = ctx_->add(code_, o.code_);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  check_same(o);
  code_ = ctx_->sub(code_, o.code_);
  return *this;
}

Element& Element::operator*=(const Element& o) {
  check_same(o);
  code_ = ctx_->mul(code_, o.code_);
  return *this;
}

Element& Element::operator/=(const Element& o) {
  check_same(o);
  code_ = ctx_->mul(code_, ctx_->inv(o.code_));
  return *this;
}

std::string Element::to_string() const {
  std::ostringstream os;
  os << '[';
  auto coords = coordinates();
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (j) os << ',';
    os << '[';
    for (std::size_t i = 0; i < coords[j].size(); ++i) os << (i ? "," : "") << coords[j][i];
    os << ']';
  }
  os << ']';
  return os.str();
}

Element inverse(const Element& x) { return {x.ctx(), x.ctx().inv(x.code())}; }
Element pow(const Element& x, std::uint64_t e) { return {x.ctx(), x.ctx().pow(x.code(), e)}; }
Element frobenius(const Element& x) { return {x.ctx(), x.ctx().frobenius(x.code())}; }

}  // namespace towerlab
