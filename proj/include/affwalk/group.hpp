#pragma once

#include "affwalk/affine.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace affwalk {

inline constexpr u64 kDefaultSlCap = 1000000;       // enumerate_sl refuses beyond this
inline constexpr u64 kDefaultProductCap = 10000000; // product_set refuses beyond this

/// |SL_d(F_p)| = (1/(p-1)) * prod_{i<d} (p^d - p^i); throws cap_exceeded above cap.
u64 sl_order_formula(u32 d, u32 p, u64 cap = kDefaultSlCap);

/// Directory used for SL enumeration cache files; honours AFFWALK_SL_CACHE,
/// falls back to a per-user cache directory. Empty string disables caching.
std::string default_sl_cache_dir();

/// Shared immutable context for one group G = F_p^d x| SL_d(F_p): the canonical
/// SL enumeration plus index arithmetic on GroupIndex values
/// (index = vector_index * |SL| + matrix_index).
class GroupContext {
  public:
    static std::shared_ptr<const GroupContext> create(u32 p, u32 d,
                                                      u64 sl_cap = kDefaultSlCap,
                                                      std::optional<std::string> cache_dir = {});

    u32 p() const { return p_; }
    u32 d() const { return d_; }
    u64 space_size() const { return pd_; }       // p^d
    u64 sl_order() const { return sl_count_; }
    u64 group_order() const { return pd_ * sl_count_; }

    u32 identity_mat() const { return identity_mat_; }
    u64 identity_index() const { return identity_mat_; } // zero translation

    SLMatrix mat_at(u32 idx) const;
    u32 mat_index(const SLMatrix& m) const; // throws if absent (det != 1)

    AffineElement element_at(u64 gi) const;
    u64 index_of(const AffineElement& g) const;

    u64 vec_index_of(u64 gi) const { return gi / sl_count_; }
    u32 mat_index_of(u64 gi) const { return static_cast<u32>(gi % sl_count_); }

    // SL-level index arithmetic
    u32 sl_mul(u32 a, u32 b) const;
    u32 sl_inv(u32 a) const;
    u32 sl_transpose(u32 a) const;

    /// Digit-wise (radix-p, no carries) sum of two vector indices: index of v+w.
    u64 vec_add(u64 a, u64 b) const;
    u64 vec_neg(u64 a) const;
    /// Vector index of m * v for matrix index m and vector index v.
    u64 mat_apply_idx(u32 m, u64 v) const;

    // GroupIndex arithmetic
    u64 compose_idx(u64 a, u64 b) const;
    u64 inverse_idx(u64 a) const;
    /// Vector index of g.x = v(g) + theta(g) x.
    u64 act_idx(u64 g, u64 x) const;

  private:
    GroupContext() = default;

    u32 p_ = 0, d_ = 0;
    u64 pd_ = 0;
    u64 sl_count_ = 0;
    std::vector<u64> sl_codes_;    // sorted matrix codes, enumeration order
    std::vector<u16> sl_entries_;  // flat d*d entries per matrix
    std::vector<u32> sl_inverse_;  // matrix index -> index of inverse
    u32 identity_mat_ = 0;
    // act acceleration: mat_vec_[m * pd_ + v] = index of (matrix m) * (vector v);
    // built when |SL| * p^d is small enough, otherwise empty and the decode
    // path is used.
    std::vector<u32> mat_vec_;
};

using GroupContextPtr = std::shared_ptr<const GroupContext>;

/// Set of group elements stored as sorted unique GroupIndex values.
struct ElementSet {
    std::vector<u64> members; // sorted, unique

    static ElementSet from_indices(std::vector<u64> idx);
    bool contains(u64 gi) const;
    size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
};

bool is_symmetric(const GroupContext& ctx, const ElementSet& a);
ElementSet symmetrize(const GroupContext& ctx, const ElementSet& a);
ElementSet inverse_set(const GroupContext& ctx, const ElementSet& a);

/// Exact k-fold product set computed incrementally; throws cap_exceeded when
/// an intermediate result would exceed result_cap.
ElementSet product_set(const GroupContext& ctx, const ElementSet& a, u32 k,
                       u64 result_cap = kDefaultProductCap);

/// With allow_coset=true decides <S> = G; with allow_coset=false decides
/// <s0^{-1} S> = G for s0 the member of S with least GroupIndex (the choice of
/// s0 does not affect the answer).
bool generates_whole_group(const GroupContext& ctx, const ElementSet& s, bool allow_coset);

/// Same closure test inside SL_d(F_p), over matrix indices.
bool sl_generates(const GroupContext& ctx, const std::vector<u32>& gens);

} // namespace affwalk
