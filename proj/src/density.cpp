#include "emn/density.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "emn/curve.hpp"
#include "emn/errors.hpp"
#include "emn/local_analysis.hpp"

namespace emn {

std::string to_string(Family f) { return f == Family::E1N ? "e1n" : "em1"; }

Family parse_family(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (t == "e1n") return Family::E1N;
  if (t == "em1") return Family::EM1;
  throw DomainError("unknown family '" + text + "' (expected e1n or em1)");
}

Integer family_polynomial(Family f, const Integer& t) {
  if (f == Family::E1N) return 27 * pow(t, 4) - 4;
  return 27 - 4 * pow(t, 6);
}

unsigned omega_bound(Family f) { return f == Family::E1N ? 4 : 6; }

unsigned omega_count(Family f, std::uint64_t p) {
  if (p <= 3 || p >= (1ULL << 31) || !is_prime(Integer(static_cast<unsigned long>(p))))
    throw DomainError("omega_count needs a prime 3 < p < 2^31, got " + std::to_string(p));
  using u128 = unsigned __int128;
  const std::uint64_t q = p * p;
  auto mul = [q](std::uint64_t a, std::uint64_t b) { return static_cast<std::uint64_t>(u128(a) * b % q); };
  unsigned count = 0;
  for (std::uint64_t t = 0; t < q; ++t) {
    const std::uint64_t t2 = mul(t, t);
    std::uint64_t lhs, rhs;
    if (f == Family::E1N) {
      lhs = mul(27, mul(t2, t2));
      rhs = 4 % q;
    } else {
      lhs = 27 % q;
      rhs = mul(4, mul(t2, mul(t2, t2)));
    }
    if (lhs == rhs) ++count;
  }
  return count;
}

namespace {

int moebius(unsigned long k) {
  int mu = 1;
  for (unsigned long d = 2; d * d <= k; ++d) {
    if (k % d) continue;
    k /= d;
    if (k % d == 0) return 0;
    mu = -mu;
  }
  return k > 1 ? -mu : mu;
}

}  // namespace

Interval prime_zeta_2(mpfr_prec_t prec) {
  // P(2) = sum_k mu(k)/k log zeta(2k). Past K the terms are bounded by
  // zeta(2k) - 1 <= 3 * 4^-k, so the tail is at most 4^-K.
  const unsigned long K = static_cast<unsigned long>(prec) / 2 + 8;
  Interval sum(0L, prec);
  for (unsigned long k = 1; k <= K; ++k) {
    const int mu = moebius(k);
    if (mu == 0) continue;
    const Interval term = log(zeta(2 * k, prec)) / Interval(static_cast<long>(k), prec);
    sum = mu > 0 ? sum + term : sum - term;
  }
  const Interval tail(Rational(Integer(1), pow(Integer(4), static_cast<unsigned>(K))), prec);
  return Interval::hull(sum - tail, sum + tail);
}

KappaBound kappa_lower_bound(Family f, std::size_t K, mpfr_prec_t prec) {
  if (K < 3) throw DomainError("kappa_lower_bound needs K >= 3");
  KappaBound out;
  out.primes = K;
  out.product_exact = Rational(1);
  for (std::size_t k = 3; k <= K; ++k) {
    const std::uint64_t p = nth_prime(k);
    const Integer p2 = Integer(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
    out.product_exact *= Rational(1) - Rational(Integer(omega_count(f, p)), p2);
  }
  out.product = Interval(out.product_exact, prec);
  const Interval rest = prime_zeta_2(prec) - prime_zeta_partial(K, prec);
  out.tail = Interval(1L, prec) - Interval(static_cast<long>(omega_bound(f)), prec) * rest;
  out.bound = out.product * out.tail;
  return out;
}

bool squarefree_member(Family f, const Integer& t, std::uint64_t effort) {
  const Curve c = f == Family::E1N ? make_curve(1, t) : make_curve(t, 1);
  try {
    return squarefree_condition_holds(c, effort);
  } catch (const Error& e) {
    throw Error(to_string(f) + " parameter " + emn::to_string(t) + ": " + e.what());
  }
}

std::uint64_t squarefree_census(Family f, std::uint64_t x, unsigned workers, std::uint64_t effort) {
  if (x < 1) throw DomainError("census needs x >= 1");
  workers = std::max(1u, workers);
  std::vector<char> hit(x, 0);
  std::atomic<std::uint64_t> next{1};
  std::mutex err_mutex;
  std::uint64_t err_at = 0;
  std::string err_text;
  auto worker = [&] {
    for (std::uint64_t t; (t = next.fetch_add(1)) <= x;) {
      try {
        hit[t - 1] = squarefree_member(f, Integer(static_cast<unsigned long>(t)), effort);
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mutex);
        // Report the smallest failing parameter whatever the scheduling.
        if (err_at == 0 || t < err_at) {
          err_at = t;
          err_text = e.what();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (err_at != 0)
    throw Error("census " + to_string(f) + ": parameter " + std::to_string(err_at) + ": " + err_text);
  return static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 1));
}

}  // namespace emn
