#include "affwalk/affine.hpp"

namespace affwalk {

namespace {

void require_same_field(u32 pa, u32 pb) {
    if (pa != pb) throw std::invalid_argument("mixed moduli");
}

void require_same_dim(u32 da, u32 db) {
    if (da != db) throw std::invalid_argument("mixed dimensions");
}

} // namespace

FpVector::FpVector(u32 p_, std::vector<u32> c) : p(p_), coords(std::move(c)) {
    for (u32& x : coords)
        if (x >= p) throw std::invalid_argument("coordinate out of range");
}

FpVector FpVector::zero(u32 p, u32 d) { return FpVector(p, std::vector<u32>(d, 0)); }

bool FpVector::is_zero() const {
    for (u32 x : coords)
        if (x != 0) return false;
    return true;
}

u64 FpVector::index() const {
    u64 idx = 0;
    for (u32 x : coords) idx = idx * p + x;
    return idx;
}

FpVector FpVector::from_index(u32 p, u32 d, u64 idx) {
    std::vector<u32> c(d);
    for (u32 i = d; i-- > 0;) {
        c[i] = static_cast<u32>(idx % p);
        idx /= p;
    }
    if (idx != 0) throw std::invalid_argument("vector index out of range");
    FpVector v;
    v.p = p;
    v.coords = std::move(c);
    return v;
}

FpVector add(const FpVector& a, const FpVector& b) {
    require_same_field(a.p, b.p);
    require_same_dim(a.dim(), b.dim());
    FpVector r = a;
    for (u32 i = 0; i < a.dim(); ++i) r.coords[i] = fp_add(a.coords[i], b.coords[i], a.p);
    return r;
}

FpVector sub(const FpVector& a, const FpVector& b) {
    require_same_field(a.p, b.p);
    require_same_dim(a.dim(), b.dim());
    FpVector r = a;
    for (u32 i = 0; i < a.dim(); ++i) r.coords[i] = fp_sub(a.coords[i], b.coords[i], a.p);
    return r;
}

FpVector neg(const FpVector& a) {
    FpVector r = a;
    for (u32 i = 0; i < a.dim(); ++i) r.coords[i] = fp_neg(a.coords[i], a.p);
    return r;
}

SLMatrix::SLMatrix(u32 p_, u32 d_, std::vector<u32> entries) : p(p_), d(d_), e(std::move(entries)) {
    if (e.size() != size_t(d) * d) throw std::invalid_argument("entry count mismatch");
    for (u32& x : e)
        if (x >= p) throw std::invalid_argument("entry out of range");
}

SLMatrix SLMatrix::identity(u32 p, u32 d) {
    SLMatrix m;
    m.p = p;
    m.d = d;
    m.e.assign(size_t(d) * d, 0);
    for (u32 i = 0; i < d; ++i) m.at(i, i) = 1;
    return m;
}

u64 SLMatrix::code() const {
    u64 c = 0;
    for (u32 x : e) c = c * p + x;
    return c;
}

SLMatrix SLMatrix::from_code(u32 p, u32 d, u64 code) {
    std::vector<u32> e(size_t(d) * d);
    for (size_t i = e.size(); i-- > 0;) {
        e[i] = static_cast<u32>(code % p);
        code /= p;
    }
    if (code != 0) throw std::invalid_argument("matrix code out of range");
    SLMatrix m;
    m.p = p;
    m.d = d;
    m.e = std::move(e);
    return m;
}

u32 det(const SLMatrix& m) {
    // Gaussian elimination over F_p.
    const u32 p = m.p, d = m.d;
    std::vector<u32> a = m.e;
    u32 result = 1;
    for (u32 col = 0; col < d; ++col) {
        u32 pivot = col;
        while (pivot < d && a[pivot * d + col] == 0) ++pivot;
        if (pivot == d) return 0;
        if (pivot != col) {
            for (u32 c = 0; c < d; ++c) std::swap(a[pivot * d + c], a[col * d + c]);
            result = fp_neg(result, p);
        }
        const u32 pv = a[col * d + col];
        result = fp_mul(result, pv, p);
        const u32 pv_inv = fp_inv(pv, p);
        for (u32 r = col + 1; r < d; ++r) {
            const u32 f = fp_mul(a[r * d + col], pv_inv, p);
            if (f == 0) continue;
            for (u32 c = col; c < d; ++c)
                a[r * d + c] = fp_sub(a[r * d + c], fp_mul(f, a[col * d + c], p), p);
        }
    }
    return result;
}

SLMatrix mat_mul(const SLMatrix& a, const SLMatrix& b) {
    require_same_field(a.p, b.p);
    require_same_dim(a.d, b.d);
    const u32 p = a.p, d = a.d;
    SLMatrix r;
    r.p = p;
    r.d = d;
    r.e.assign(size_t(d) * d, 0);
    for (u32 i = 0; i < d; ++i)
        for (u32 k = 0; k < d; ++k) {
            const u64 aik = a.e[i * d + k];
            if (aik == 0) continue;
            for (u32 j = 0; j < d; ++j)
                r.e[i * d + j] = static_cast<u32>((r.e[i * d + j] + aik * b.e[k * d + j]) % p);
        }
    return r;
}

FpVector mat_apply(const SLMatrix& m, const FpVector& x) {
    require_same_field(m.p, x.p);
    require_same_dim(m.d, x.dim());
    const u32 p = m.p, d = m.d;
    FpVector r = FpVector::zero(p, d);
    for (u32 i = 0; i < d; ++i) {
        u64 s = 0;
        for (u32 j = 0; j < d; ++j) s += u64(m.e[i * d + j]) * x.coords[j];
        r.coords[i] = static_cast<u32>(s % p);
    }
    return r;
}

SLMatrix mat_inverse(const SLMatrix& m) {
    // Gauss-Jordan on [m | I].
    const u32 p = m.p, d = m.d;
    std::vector<u32> a = m.e;
    SLMatrix inv = SLMatrix::identity(p, d);
    for (u32 col = 0; col < d; ++col) {
        u32 pivot = col;
        while (pivot < d && a[pivot * d + col] == 0) ++pivot;
        if (pivot == d) throw std::invalid_argument("singular matrix");
        if (pivot != col)
            for (u32 c = 0; c < d; ++c) {
                std::swap(a[pivot * d + c], a[col * d + c]);
                std::swap(inv.e[pivot * d + c], inv.e[col * d + c]);
            }
        const u32 pv_inv = fp_inv(a[col * d + col], p);
        for (u32 c = 0; c < d; ++c) {
            a[col * d + c] = fp_mul(a[col * d + c], pv_inv, p);
            inv.e[col * d + c] = fp_mul(inv.e[col * d + c], pv_inv, p);
        }
        for (u32 r = 0; r < d; ++r) {
            if (r == col) continue;
            const u32 f = a[r * d + col];
            if (f == 0) continue;
            for (u32 c = 0; c < d; ++c) {
                a[r * d + c] = fp_sub(a[r * d + c], fp_mul(f, a[col * d + c], p), p);
                inv.e[r * d + c] = fp_sub(inv.e[r * d + c], fp_mul(f, inv.e[col * d + c], p), p);
            }
        }
    }
    return inv;
}

SLMatrix mat_transpose(const SLMatrix& m) {
    SLMatrix r = m;
    for (u32 i = 0; i < m.d; ++i)
        for (u32 j = 0; j < m.d; ++j) r.at(i, j) = m.at(j, i);
    return r;
}

AffineElement::AffineElement(FpVector v_, SLMatrix m_) : v(std::move(v_)), m(std::move(m_)) {
    require_same_field(v.p, m.p);
    require_same_dim(v.dim(), m.d);
}

AffineElement AffineElement::identity(u32 p, u32 d) {
    return AffineElement(FpVector::zero(p, d), SLMatrix::identity(p, d));
}

AffineElement compose(const AffineElement& a, const AffineElement& b) {
    return AffineElement(add(a.v, mat_apply(a.m, b.v)), mat_mul(a.m, b.m));
}

AffineElement inverse(const AffineElement& g) {
    SLMatrix mi = mat_inverse(g.m);
    FpVector v = neg(mat_apply(mi, g.v));
    return AffineElement(std::move(v), std::move(mi));
}

FpVector act(const AffineElement& g, const FpVector& x) {
    return add(g.v, mat_apply(g.m, x));
}

} // namespace affwalk
