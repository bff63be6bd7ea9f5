#include "affwalk/fp.hpp"

namespace affwalk {

bool is_prime(u32 n) {
    if (n < 2) return false;
    for (u64 q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

void require_prime(u32 p) {
    if (!is_prime(p))
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

u32 fp_inv(u32 a, u32 p) {
    if (a == 0) throw std::invalid_argument("inverse of 0 mod " + std::to_string(p));
    // extended Euclid on (a, p)
    i64 t = 0, new_t = 1;
    i64 r = p, new_r = a % p;
    while (new_r != 0) {
        i64 q = r / new_r;
        t -= q * new_t; std::swap(t, new_t);
        r -= q * new_r; std::swap(r, new_r);
    }
    return fp_reduce(t, p); // r == gcd == 1 since p prime
}

} // namespace affwalk
