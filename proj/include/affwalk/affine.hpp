#pragma once

#include "affwalk/fp.hpp"

#include <vector>

namespace affwalk {

/// Element of F_p^d, coordinates stored in order x_0, ..., x_{d-1}.
struct FpVector {
    u32 p = 0;
    std::vector<u32> coords;

    FpVector() = default;
    FpVector(u32 p_, std::vector<u32> c);
    static FpVector zero(u32 p, u32 d);

    u32 dim() const { return static_cast<u32>(coords.size()); }
    bool is_zero() const;

    /// Row-major radix-p encoding: index = sum_i coords[i] * p^(d-1-i).
    u64 index() const;
    static FpVector from_index(u32 p, u32 d, u64 idx);

    friend bool operator==(const FpVector&, const FpVector&) = default;
};

FpVector add(const FpVector& a, const FpVector& b);
FpVector sub(const FpVector& a, const FpVector& b);
FpVector neg(const FpVector& a);

/// d x d matrix over F_p with determinant 1, entries row-major.
struct SLMatrix {
    u32 p = 0;
    u32 d = 0;
    std::vector<u32> e; // e[r*d + c]

    SLMatrix() = default;
    SLMatrix(u32 p_, u32 d_, std::vector<u32> entries);
    static SLMatrix identity(u32 p, u32 d);

    u32 at(u32 r, u32 c) const { return e[r * d + c]; }
    u32& at(u32 r, u32 c) { return e[r * d + c]; }

    /// Row-major radix-p encoding of the entry list; strictly monotone in
    /// lexicographic entry order.
    u64 code() const;
    static SLMatrix from_code(u32 p, u32 d, u64 code);

    friend bool operator==(const SLMatrix&, const SLMatrix&) = default;
};

u32 det(const SLMatrix& m);
SLMatrix mat_mul(const SLMatrix& a, const SLMatrix& b);
FpVector mat_apply(const SLMatrix& m, const FpVector& x);
SLMatrix mat_inverse(const SLMatrix& m);
SLMatrix mat_transpose(const SLMatrix& m);

/// Element (v, theta) of F_p^d  x|  SL_d(F_p), acting on x as v + theta x.
struct AffineElement {
    FpVector v;
    SLMatrix m;

    AffineElement() = default;
    AffineElement(FpVector v_, SLMatrix m_);
    static AffineElement identity(u32 p, u32 d);

    u32 p() const { return m.p; }
    u32 d() const { return m.d; }

    friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

/// (v1, m1) * (v2, m2) = (v1 + m1 v2, m1 m2).
AffineElement compose(const AffineElement& a, const AffineElement& b);
AffineElement inverse(const AffineElement& g);
FpVector act(const AffineElement& g, const FpVector& x);

} // namespace affwalk
