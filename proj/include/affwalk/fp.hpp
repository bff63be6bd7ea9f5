#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace affwalk {

using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Raised when a requested enumeration or product set exceeds a hard size cap.
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an iterative solver fails to reach its tolerance.
struct non_convergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a quantity that is guaranteed by construction fails its check.
struct verification_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Raised when input data fails a mathematical hypothesis of the requested
/// computation (as opposed to being malformed).
struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_prime(u32 n);

/// Throws std::invalid_argument unless p is prime.
void require_prime(u32 p);

inline u32 fp_add(u32 a, u32 b, u32 p) { u32 s = a + b; return s >= p ? s - p : s; }
inline u32 fp_sub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
inline u32 fp_neg(u32 a, u32 p) { return a == 0 ? 0 : p - a; }
inline u32 fp_mul(u32 a, u32 b, u32 p) { return static_cast<u32>((u64(a) * u64(b)) % p); }

/// Multiplicative inverse mod p; throws std::invalid_argument on a == 0.
u32 fp_inv(u32 a, u32 p);

/// Reduces an arbitrary signed integer into [0, p).
inline u32 fp_reduce(i64 a, u32 p) {
    i64 r = a % i64(p);
    if (r < 0) r += p;
    return static_cast<u32>(r);
}

} // namespace affwalk
