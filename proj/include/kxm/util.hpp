#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kxm {

// Thrown when a configurable search bound is exhausted before an answer is
// found.  The quantity that ran out is named in the message.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by the text parsers; `pos` is a 0-based byte offset into the input.
struct parse_error : std::runtime_error {
  std::size_t pos;
  parse_error(std::size_t p, const std::string& msg)
      : std::runtime_error(msg + " (at offset " + std::to_string(p) + ")"), pos(p) {}
};

// Deterministic 64-bit generator (splitmix64).  Used everywhere randomness is
// needed so that identical seeds give identical output on every platform;
// std::uniform_int_distribution is implementation-defined and is avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound), bound > 0.  Rejection sampling keeps the
  // distribution exact and the byte stream reproducible.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& p) {
  while (p < s.size() && (s[p] == ' ' || s[p] == '\t')) ++p;
}

inline std::uint64_t parse_uint(const std::string& s, std::size_t& p, const char* what) {
  skip_ws(s, p);
  if (p >= s.size() || s[p] < '0' || s[p] > '9') throw parse_error(p, std::string("expected ") + what);
  std::uint64_t v = 0;
  while (p < s.size() && s[p] >= '0' && s[p] <= '9') {
    v = v * 10 + static_cast<std::uint64_t>(s[p] - '0');
    if (v > (1ULL << 32)) throw parse_error(p, std::string(what) + " out of range");
    ++p;
  }
  return v;
}

}  // namespace detail

// Stateless mix of a seed with a stream of labels; handy for deriving
// independent sub-seeds (field components, indeterminate values, ...).
inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
  Rng g(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
  return g.next();
}

inline std::uint64_t hash_string(std::uint64_t seed, const std::string& s) {
  std::uint64_t h = seed ^ 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = hash_mix(h, c + 0x100);
  return h;
}

}  // namespace kxm
