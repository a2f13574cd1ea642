#include "emn/number_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

namespace emn {

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s, 10));
    return Rational(Integer(s.substr(0, slash), 10), Integer(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational '" + s + "'");
  }
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const { return q_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

Rational pow(const Rational& q, unsigned e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), q.num().get_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q.den().get_mpz_t(), e);
  return Rational(n, d);
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return r;
}

bool rational_sqrt(const Rational& q, Rational& root) {
  if (q.sign() < 0) return false;
  if (mpz_perfect_square_p(q.num().get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(q.den().get_mpz_t()) == 0) return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.den().get_mpz_t());
  root = Rational(n, d);
  return true;
}

std::string to_string(const Integer& z) { return z.get_str(10); }

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer pow(const Integer& base, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// ---------------------------------------------------------------------------
// Factorization

Integer Factorization::value() const {
  Integer v = sign;
  for (const auto& [p, e] : factors) v *= pow(p, e);
  return v;
}

unsigned Factorization::exponent_of(const Integer& p) const {
  for (const auto& f : factors)
    if (f.prime == p) return f.exponent;
  return 0;
}

std::string Factorization::to_string() const {
  std::ostringstream os;
  os << (sign < 0 ? "-" : "");
  if (factors.empty()) return os.str() + "1";
  bool first = true;
  for (const auto& [p, e] : factors) {
    if (!first) os << " * ";
    first = false;
    os << p.get_str();
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

IncompleteFactorization::IncompleteFactorization(Factorization partial, Integer cofactor)
    : Error("factorization effort exhausted; unfactored cofactor " + cofactor.get_str()),
      partial_(std::move(partial)),
      cofactor_(std::move(cofactor)) {}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = primes_up_to(kTrialDivisionLimit);
  return primes;
}

struct Budget {
  u64 limit;
  u64 used = 0;
  bool spend(u64 n = 1) {
    used += n;
    return used <= limit;
  }
};

// Pollard-Brent rho; returns a nontrivial factor or 0 when the budget ends.
Integer rho_split(const Integer& n, Budget& budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1, t;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) f(y);
      unsigned long k = 0;
      do {
        ys = y;
        const unsigned long steps = std::min(m, r - k);
        for (unsigned long i = 0; i < steps; ++i) {
          f(y);
          t = x - y;
          q = q * abs(t);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        if (!budget.spend(steps)) return 0;
        g = gcd(q, n);
        k += steps;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        f(ys);
        g = gcd(abs(Integer(x - ys)), n);
        if (!budget.spend()) return 0;
      } while (g == 1);
    }
    if (g != n) return g;
    // Cycle closed without a split; retry with another constant.
  }
}

void add_factor(std::map<Integer, unsigned>& acc, const Integer& p, unsigned e) { acc[p] += e; }

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t()) != 0 && sizeof(unsigned long) == 8) {
    return is_prime_u64(mpz_get_ui(n.get_mpz_t()));
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 88) != 0;
}

unsigned valuation(const Integer& a, const Integer& p) {
  if (a == 0) throw UndefinedValuation("valuation of zero is undefined");
  if (!is_prime(p)) throw DomainError("valuation base " + p.get_str() + " is not prime");
  Integer rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rational& a, const Integer& p) {
  if (a.is_zero()) throw UndefinedValuation("valuation of zero is undefined");
  return static_cast<long>(valuation(a.num(), p)) - static_cast<long>(valuation(a.den(), p));
}

Factorization factor(const Integer& n, std::uint64_t effort) {
  if (n == 0) throw DomainError("cannot factor zero");
  Factorization out;
  out.sign = n < 0 ? -1 : 1;
  Integer rest = abs(n);
  std::map<Integer, unsigned> acc;
  Budget budget{effort};

  auto finish = [&]() {
    for (const auto& [p, e] : acc) out.factors.push_back({p, e});
  };
  auto partial_error = [&](const Integer& cofactor) {
    finish();
    return IncompleteFactorization(out, cofactor);
  };

  // Trial division, on machine words while the cofactor fits.
  const u64 trial_sq = kTrialDivisionLimit * kTrialDivisionLimit;
  for (u64 p : small_primes()) {
    if (rest == 1) break;
    if (mpz_fits_ulong_p(rest.get_mpz_t()) != 0) {
      u64 r = mpz_get_ui(rest.get_mpz_t());
      if (p * p > r) break;
      if (!budget.spend()) throw partial_error(rest);
      if (r % p == 0) {
        unsigned e = 0;
        while (r % p == 0) {
          r /= p;
          ++e;
        }
        add_factor(acc, Integer(static_cast<unsigned long>(p)), e);
        rest = Integer(static_cast<unsigned long>(r));
      }
    } else {
      if (!budget.spend()) throw partial_error(rest);
      if (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
        const Integer pz(static_cast<unsigned long>(p));
        unsigned e = static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t()));
        add_factor(acc, pz, e);
      }
    }
  }
  if (rest == 1) {
    finish();
    return out;
  }
  // Everything below p_max^2 left after trial division is prime.
  if (rest < Integer(static_cast<unsigned long>(trial_sq)) || is_prime(rest)) {
    add_factor(acc, rest, 1);
    finish();
    return out;
  }

  std::vector<std::pair<Integer, unsigned>> stack{{rest, 1}};
  while (!stack.empty()) {
    auto [c, mult] = stack.back();
    stack.pop_back();
    if (c == 1) continue;
    if (is_prime(c)) {
      add_factor(acc, c, mult);
      continue;
    }
    if (mpz_perfect_power_p(c.get_mpz_t()) != 0) {
      bool split = false;
      for (unsigned k = 2; !split && k <= mpz_sizeinbase(c.get_mpz_t(), 2); ++k) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), c.get_mpz_t(), k) != 0) {
          stack.push_back({root, mult * k});
          split = true;
        }
      }
      if (split) continue;
    }
    Integer d = rho_split(c, budget);
    if (d == 0) {
      Integer remaining = c;
      for (auto& [s, k] : stack) remaining *= pow(s, k);
      throw partial_error(remaining);
    }
    stack.push_back({d, mult});
    stack.push_back({Integer(c / d), mult});
  }
  finish();
  return out;
}

std::optional<std::vector<Integer>> divisors(const Factorization& f, std::size_t cap) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = out.size();
    if (base * (e + 1) > cap) return std::nullopt;
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t nth_prime(std::size_t k) {
  if (k == 0) throw DomainError("nth_prime is 1-based");
  const double kd = static_cast<double>(k);
  std::uint64_t bound =
      k < 6 ? 15 : static_cast<std::uint64_t>(kd * (std::log(kd) + std::log(std::log(kd)))) + 3;
  for (;;) {
    const auto primes = primes_up_to(bound);
    if (primes.size() >= k) return primes[k - 1];
    bound *= 2;
  }
}

Rational prime_zeta_partial_exact(std::size_t K) {
  Rational sum = 0;
  std::size_t seen = 0;
  std::uint64_t bound = 64;
  std::vector<std::uint64_t> primes;
  while (primes.size() < K) {
    primes = primes_up_to(bound);
    bound *= 2;
  }
  for (std::uint64_t p : primes) {
    if (seen++ == K) break;
    const Integer pz(static_cast<unsigned long>(p));
    sum += Rational(Integer(1), pz * pz);
  }
  return sum;
}

Interval prime_zeta_partial(std::size_t K, mpfr_prec_t prec) {
  if (K == 0) throw DomainError("prime_zeta_partial needs K >= 1");
  return Interval(prime_zeta_partial_exact(K), prec);
}

}  // namespace emn
