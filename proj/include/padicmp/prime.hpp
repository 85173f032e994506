#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "padicmp/error.hpp"

namespace padicmp {

namespace detail {

__extension__ using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace detail

/// Deterministic primality for every 64-bit value. Trial division by small
/// primes, then Miller-Rabin with the first twelve prime bases, which has
/// no pseudoprimes below 3.3e24.
inline bool is_prime(std::uint64_t n) {
  constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (auto p : small) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (auto a : small) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// A verified prime. Construction throws NotPrime otherwise.
class Prime {
 public:
  explicit Prime(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  }

  std::uint64_t value() const noexcept { return p_; }
  operator std::uint64_t() const noexcept { return p_; }  // NOLINT(google-explicit-constructor)

  friend bool operator==(Prime a, Prime b) noexcept { return a.p_ == b.p_; }
  friend auto operator<=>(Prime a, Prime b) noexcept { return a.p_ <=> b.p_; }

 private:
  std::uint64_t p_;
};

/// Smallest-prime-factor table up to a fixed bound.
class Sieve {
 public:
  explicit Sieve(std::uint32_t limit) : spf_(static_cast<std::size_t>(limit) + 1, 0) {
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (spf_[i] != 0) continue;
      primes_.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i); j <= limit; j += i) {
        if (spf_[j] == 0) spf_[j] = i;
      }
    }
  }

  std::uint32_t limit() const noexcept { return static_cast<std::uint32_t>(spf_.size() - 1); }

  /// The prime p when n = p^k with k >= 1, otherwise nothing.
  std::optional<std::uint32_t> prime_power_base(std::uint32_t n) const {
    if (n < 2 || n > limit()) return std::nullopt;
    std::uint32_t p = spf_[n];
    while (n % p == 0) n /= p;
    if (n != 1) return std::nullopt;
    return p;
  }

  /// Least prime strictly greater than p, if it lies within the table.
  std::optional<std::uint32_t> next_prime(std::uint32_t p) const {
    auto it = std::upper_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end()) return std::nullopt;
    return *it;
  }

  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

  /// Shared, lazily built instance per bound.
  static std::shared_ptr<const Sieve> shared(std::uint32_t limit) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::shared_ptr<const Sieve>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[limit];
    if (!slot) slot = std::make_shared<const Sieve>(limit);
    return slot;
  }

 private:
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

}  // namespace padicmp
