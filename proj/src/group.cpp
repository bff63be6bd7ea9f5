#include "affwalk/group.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

namespace affwalk {

namespace {

constexpr char kCacheMagic[4] = {'S', 'L', 'E', 'N'};
constexpr u32 kCacheVersion = 1;
constexpr u64 kActTableCap = 1u << 22; // max |SL| * p^d entries for the act table

u64 pow_u64(u64 b, u32 e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

void write_u32(std::ostream& os, u32 v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& os, u64 v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

bool read_u32(std::istream& is, u32& v) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    v = u32(b[0]) | (u32(b[1]) << 8) | (u32(b[2]) << 16) | (u32(b[3]) << 24);
    return true;
}

bool read_u64(std::istream& is, u64& v) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= u64(b[i]) << (8 * i);
    return true;
}

std::string cache_path(const std::string& dir, u32 d, u32 p) {
    return dir + "/slen_d" + std::to_string(d) + "_p" + std::to_string(p) + ".bin";
}

bool load_cached_enumeration(const std::string& dir, u32 d, u32 p, u64 expected_count,
                             std::vector<u16>& entries) {
    std::ifstream in(cache_path(dir, d, p), std::ios::binary);
    if (!in) return false;
    char magic[4];
    if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kCacheMagic)) return false;
    u32 version = 0, fd = 0, fp_ = 0;
    u64 count = 0;
    if (!read_u32(in, version) || version != kCacheVersion) return false;
    if (!read_u32(in, fd) || fd != d) return false;
    if (!read_u32(in, fp_) || fp_ != p) return false;
    if (!read_u64(in, count) || count != expected_count) return false;
    const size_t n = size_t(count) * d * d;
    std::vector<u16> buf(n);
    for (size_t i = 0; i < n; ++i) {
        unsigned char b[2];
        if (!in.read(reinterpret_cast<char*>(b), 2)) return false;
        buf[i] = u16(b[0]) | (u16(b[1]) << 8);
    }
    // reject trailing garbage
    char extra;
    if (in.read(&extra, 1)) return false;
    // validate determinants and strict code order before trusting the file
    u64 prev_code = 0;
    SLMatrix scratch;
    scratch.p = p;
    scratch.d = d;
    scratch.e.assign(size_t(d) * d, 0);
    for (u64 i = 0; i < count; ++i) {
        u64 code = 0;
        for (u32 j = 0; j < d * d; ++j) {
            const u16 e = buf[i * d * d + j];
            if (e >= p) return false;
            scratch.e[j] = e;
            code = code * p + e;
        }
        if (i > 0 && code <= prev_code) return false;
        prev_code = code;
        if (det(scratch) != 1) return false;
    }
    entries = std::move(buf);
    return true;
}

void store_cached_enumeration(const std::string& dir, u32 d, u32 p, u64 count,
                              const std::vector<u16>& entries) {
    try {
        std::filesystem::create_directories(dir);
        const std::string final_path = cache_path(dir, d, p);
        const std::string tmp_path = final_path + ".tmp";
        {
            std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
            if (!out) return;
            out.write(kCacheMagic, 4);
            write_u32(out, kCacheVersion);
            write_u32(out, d);
            write_u32(out, p);
            write_u64(out, count);
            for (u16 e : entries) {
                unsigned char b[2] = {static_cast<unsigned char>(e),
                                      static_cast<unsigned char>(e >> 8)};
                out.write(reinterpret_cast<const char*>(b), 2);
            }
            if (!out) return;
        }
        std::filesystem::rename(tmp_path, final_path);
    } catch (const std::exception&) {
        // cache is advisory; enumeration already succeeded
    }
}

std::vector<u16> enumerate_sl_entries(u32 d, u32 p) {
    const u32 n = d * d;
    std::vector<u32> odo(n, 0);
    SLMatrix scratch;
    scratch.p = p;
    scratch.d = d;
    scratch.e.assign(n, 0);
    std::vector<u16> entries;
    const u64 total = pow_u64(p, n);
    for (u64 it = 0; it < total; ++it) {
        for (u32 j = 0; j < n; ++j) scratch.e[j] = odo[j];
        if (det(scratch) == 1)
            for (u32 j = 0; j < n; ++j) entries.push_back(static_cast<u16>(odo[j]));
        // odometer increment, last entry fastest (lexicographic order)
        for (u32 j = n; j-- > 0;) {
            if (++odo[j] < p) break;
            odo[j] = 0;
        }
    }
    return entries;
}

} // namespace

u64 sl_order_formula(u32 d, u32 p, u64 cap) {
    require_prime(p);
    if (d == 0) throw std::invalid_argument("dimension must be positive");
    if (d > 8) throw cap_exceeded("dimension too large to enumerate");
    // |GL| = prod_{i<d} (p^d - p^i); |SL| = |GL| / (p-1)
    unsigned __int128 order = 1;
    const u64 pd = pow_u64(p, d);
    for (u32 i = 0; i < d; ++i) {
        order *= (pd - pow_u64(p, i));
        if (order / (p - 1) > static_cast<unsigned __int128>(cap) * 4096)
            throw cap_exceeded("SL enumeration cap exceeded for d=" + std::to_string(d) +
                               ", p=" + std::to_string(p));
    }
    order /= (p - 1);
    if (order > cap)
        throw cap_exceeded("SL enumeration cap exceeded for d=" + std::to_string(d) +
                           ", p=" + std::to_string(p) + " (|SL| = " + std::to_string(u64(order)) +
                           ")");
    return static_cast<u64>(order);
}

std::string default_sl_cache_dir() {
    if (const char* env = std::getenv("AFFWALK_SL_CACHE")) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME")) return std::string(xdg) + "/affwalk";
    if (const char* home = std::getenv("HOME")) return std::string(home) + "/.cache/affwalk";
    return {};
}

std::shared_ptr<const GroupContext> GroupContext::create(u32 p, u32 d, u64 sl_cap,
                                                         std::optional<std::string> cache_dir) {
    const u64 count = sl_order_formula(d, p, sl_cap);
    if (p >= 65536) throw cap_exceeded("modulus too large for 16-bit cache entries");

    static std::mutex mu;
    static std::map<std::pair<u32, u32>, std::weak_ptr<const GroupContext>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({p, d});
        if (it != memo.end())
            if (auto live = it->second.lock()) return live;
    }

    const std::string dir = cache_dir ? *cache_dir : default_sl_cache_dir();
    std::vector<u16> entries;
    bool from_cache = !dir.empty() && load_cached_enumeration(dir, d, p, count, entries);
    if (!from_cache) {
        entries = enumerate_sl_entries(d, p);
        if (entries.size() != size_t(count) * d * d)
            throw verification_error("SL enumeration size disagrees with the order formula");
        if (!dir.empty()) store_cached_enumeration(dir, d, p, count, entries);
    }

    auto ctx = std::shared_ptr<GroupContext>(new GroupContext());
    ctx->p_ = p;
    ctx->d_ = d;
    ctx->pd_ = pow_u64(p, d);
    ctx->sl_count_ = count;
    ctx->sl_entries_ = std::move(entries);
    ctx->sl_codes_.resize(count);
    for (u64 i = 0; i < count; ++i) {
        u64 code = 0;
        for (u32 j = 0; j < d * d; ++j) code = code * p + ctx->sl_entries_[i * d * d + j];
        ctx->sl_codes_[i] = code;
    }
    ctx->identity_mat_ = ctx->mat_index(SLMatrix::identity(p, d));
    ctx->sl_inverse_.resize(count);
    for (u64 i = 0; i < count; ++i)
        ctx->sl_inverse_[i] = ctx->mat_index(mat_inverse(ctx->mat_at(static_cast<u32>(i))));

    if (count * ctx->pd_ <= kActTableCap) {
        ctx->mat_vec_.assign(count * ctx->pd_, 0);
        std::vector<u32> digits(d);
        for (u64 m = 0; m < count; ++m) {
            const u16* me = &ctx->sl_entries_[m * d * d];
            std::fill(digits.begin(), digits.end(), 0);
            for (u64 v = 0; v < ctx->pd_; ++v) {
                u64 out = 0;
                for (u32 i = 0; i < d; ++i) {
                    u64 s = 0;
                    for (u32 j = 0; j < d; ++j) s += u64(me[i * d + j]) * digits[j];
                    out = out * p + (s % p);
                }
                ctx->mat_vec_[m * ctx->pd_ + v] = static_cast<u32>(out);
                for (u32 j = d; j-- > 0;) {
                    if (++digits[j] < p) break;
                    digits[j] = 0;
                }
            }
        }
    }

    std::lock_guard<std::mutex> lock(mu);
    memo[{p, d}] = ctx;
    return ctx;
}

SLMatrix GroupContext::mat_at(u32 idx) const {
    if (idx >= sl_count_) throw std::invalid_argument("matrix index out of range");
    SLMatrix m;
    m.p = p_;
    m.d = d_;
    m.e.assign(size_t(d_) * d_, 0);
    const u16* src = &sl_entries_[size_t(idx) * d_ * d_];
    for (u32 j = 0; j < d_ * d_; ++j) m.e[j] = src[j];
    return m;
}

u32 GroupContext::mat_index(const SLMatrix& m) const {
    const u64 code = m.code();
    auto it = std::lower_bound(sl_codes_.begin(), sl_codes_.end(), code);
    if (it == sl_codes_.end() || *it != code)
        throw std::invalid_argument("matrix is not in SL enumeration (det != 1?)");
    return static_cast<u32>(it - sl_codes_.begin());
}

AffineElement GroupContext::element_at(u64 gi) const {
    if (gi >= group_order()) throw std::invalid_argument("group index out of range");
    return AffineElement(FpVector::from_index(p_, d_, gi / sl_count_),
                         mat_at(static_cast<u32>(gi % sl_count_)));
}

u64 GroupContext::index_of(const AffineElement& g) const {
    if (g.p() != p_ || g.d() != d_) throw std::invalid_argument("element from wrong group");
    return g.v.index() * sl_count_ + mat_index(g.m);
}

u32 GroupContext::sl_mul(u32 a, u32 b) const {
    const u16* ae = &sl_entries_[size_t(a) * d_ * d_];
    const u16* be = &sl_entries_[size_t(b) * d_ * d_];
    u64 code = 0;
    // row-major product, fold into radix-p code on the fly
    for (u32 i = 0; i < d_; ++i)
        for (u32 j = 0; j < d_; ++j) {
            u64 s = 0;
            for (u32 k = 0; k < d_; ++k) s += u64(ae[i * d_ + k]) * be[k * d_ + j];
            code = code * p_ + (s % p_);
        }
    auto it = std::lower_bound(sl_codes_.begin(), sl_codes_.end(), code);
    return static_cast<u32>(it - sl_codes_.begin());
}

u32 GroupContext::sl_inv(u32 a) const { return sl_inverse_[a]; }

u32 GroupContext::sl_transpose(u32 a) const {
    const u16* ae = &sl_entries_[size_t(a) * d_ * d_];
    u64 code = 0;
    for (u32 i = 0; i < d_; ++i)
        for (u32 j = 0; j < d_; ++j) code = code * p_ + ae[j * d_ + i];
    auto it = std::lower_bound(sl_codes_.begin(), sl_codes_.end(), code);
    return static_cast<u32>(it - sl_codes_.begin());
}

u64 GroupContext::vec_add(u64 a, u64 b) const {
    u64 r = 0, pw = 1;
    for (u32 i = 0; i < d_; ++i) {
        const u64 da = a % p_, db = b % p_;
        u64 s = da + db;
        if (s >= p_) s -= p_;
        r += s * pw;
        a /= p_;
        b /= p_;
        pw *= p_;
    }
    return r;
}

u64 GroupContext::vec_neg(u64 a) const {
    u64 r = 0, pw = 1;
    for (u32 i = 0; i < d_; ++i) {
        const u64 da = a % p_;
        r += (da == 0 ? 0 : p_ - da) * pw;
        a /= p_;
        pw *= p_;
    }
    return r;
}

u64 GroupContext::mat_apply_idx(u32 m, u64 v) const {
    if (!mat_vec_.empty()) return mat_vec_[u64(m) * pd_ + v];
    const u16* me = &sl_entries_[size_t(m) * d_ * d_];
    u64 digits[64];
    u64 t = v;
    for (u32 j = d_; j-- > 0;) {
        digits[j] = t % p_;
        t /= p_;
    }
    u64 out = 0;
    for (u32 i = 0; i < d_; ++i) {
        u64 s = 0;
        for (u32 j = 0; j < d_; ++j) s += u64(me[i * d_ + j]) * digits[j];
        out = out * p_ + (s % p_);
    }
    return out;
}

u64 GroupContext::compose_idx(u64 a, u64 b) const {
    const u64 va = a / sl_count_, vb = b / sl_count_;
    const u32 ma = static_cast<u32>(a % sl_count_), mb = static_cast<u32>(b % sl_count_);
    const u64 v = vec_add(va, mat_apply_idx(ma, vb));
    return v * sl_count_ + sl_mul(ma, mb);
}

u64 GroupContext::inverse_idx(u64 a) const {
    const u64 va = a / sl_count_;
    const u32 ma = static_cast<u32>(a % sl_count_);
    const u32 mi = sl_inverse_[ma];
    const u64 v = vec_neg(mat_apply_idx(mi, va));
    return v * sl_count_ + mi;
}

u64 GroupContext::act_idx(u64 g, u64 x) const {
    const u64 vg = g / sl_count_;
    const u32 mg = static_cast<u32>(g % sl_count_);
    return vec_add(vg, mat_apply_idx(mg, x));
}

ElementSet ElementSet::from_indices(std::vector<u64> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    ElementSet s;
    s.members = std::move(idx);
    return s;
}

bool ElementSet::contains(u64 gi) const {
    return std::binary_search(members.begin(), members.end(), gi);
}

bool is_symmetric(const GroupContext& ctx, const ElementSet& a) {
    for (u64 gi : a.members)
        if (!a.contains(ctx.inverse_idx(gi))) return false;
    return true;
}

ElementSet inverse_set(const GroupContext& ctx, const ElementSet& a) {
    std::vector<u64> inv;
    inv.reserve(a.members.size());
    for (u64 gi : a.members) inv.push_back(ctx.inverse_idx(gi));
    return ElementSet::from_indices(std::move(inv));
}

ElementSet symmetrize(const GroupContext& ctx, const ElementSet& a) {
    std::vector<u64> all = a.members;
    for (u64 gi : a.members) all.push_back(ctx.inverse_idx(gi));
    return ElementSet::from_indices(std::move(all));
}

ElementSet product_set(const GroupContext& ctx, const ElementSet& a, u32 k, u64 result_cap) {
    if (k < 1) throw std::invalid_argument("product_set requires k >= 1");
    if (a.empty()) throw std::invalid_argument("product_set of empty set");
    const u64 n = ctx.group_order();
    ElementSet cur = a;
    for (u32 step = 2; step <= k; ++step) {
        std::vector<bool> seen(n, false);
        std::vector<u64> next;
        for (u64 g : cur.members)
            for (u64 h : a.members) {
                const u64 gh = ctx.compose_idx(g, h);
                if (!seen[gh]) {
                    seen[gh] = true;
                    next.push_back(gh);
                    if (next.size() > result_cap)
                        throw cap_exceeded("product set exceeds result cap");
                }
            }
        std::sort(next.begin(), next.end());
        cur.members = std::move(next);
        if (cur.members.size() == n) break; // saturated: further products stay G
    }
    return cur;
}

namespace {

bool closure_is_whole(const GroupContext& ctx, const std::vector<u64>& gens) {
    const u64 n = ctx.group_order();
    std::vector<bool> visited(n, false);
    std::vector<u64> frontier{ctx.identity_index()};
    visited[ctx.identity_index()] = true;
    u64 seen = 1;
    while (!frontier.empty()) {
        std::vector<u64> next;
        for (u64 g : frontier)
            for (u64 t : gens) {
                const u64 gt = ctx.compose_idx(g, t);
                if (!visited[gt]) {
                    visited[gt] = true;
                    ++seen;
                    next.push_back(gt);
                }
            }
        frontier = std::move(next);
    }
    return seen == n;
}

} // namespace

bool generates_whole_group(const GroupContext& ctx, const ElementSet& s, bool allow_coset) {
    if (s.empty()) throw std::invalid_argument("generation test on empty set");
    std::vector<u64> gens;
    if (allow_coset) {
        gens = s.members;
    } else {
        // translate so the least element becomes the identity; <s0^{-1} S> does
        // not depend on which member plays s0
        const u64 s0_inv = ctx.inverse_idx(s.members.front());
        gens.reserve(s.members.size());
        for (u64 g : s.members) gens.push_back(ctx.compose_idx(s0_inv, g));
    }
    return closure_is_whole(ctx, gens);
}

bool sl_generates(const GroupContext& ctx, const std::vector<u32>& gens) {
    if (gens.empty()) throw std::invalid_argument("generation test on empty set");
    const u64 n = ctx.sl_order();
    std::vector<bool> visited(n, false);
    std::vector<u32> frontier{ctx.identity_mat()};
    visited[ctx.identity_mat()] = true;
    u64 seen = 1;
    while (!frontier.empty()) {
        std::vector<u32> next;
        for (u32 g : frontier)
            for (u32 t : gens) {
                const u32 gt = ctx.sl_mul(g, t);
                if (!visited[gt]) {
                    visited[gt] = true;
                    ++seen;
                    next.push_back(gt);
                }
            }
        frontier = std::move(next);
    }
    return seen == n;
}

} // namespace affwalk
