// Sparse Laurent polynomial kernels on packed exponent keys.
//
// A key packs n doubled exponents into one uint64, `width` bits per variable,
// each field biased by 2^(width-1).  For keys u, v of the same packing,
// key(u + v) = u + v - zero as long as no field leaves its range; callers
// check exponent bounds before calling in.
#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jt {

enum Status { OK = 0, OVERFLOW_ = 1, INEXACT = 2, NONINTEGRAL = 3 };

struct Poly {
    const uint64_t* keys;
    const int64_t* nums;
    size_t len;
};

typedef std::unordered_map<uint64_t, int64_t> Accum;

inline bool checked_muladd(int64_t& acc, int64_t a, int64_t b) {
    int64_t p;
    if (__builtin_mul_overflow(a, b, &p)) return false;
    if (__builtin_add_overflow(acc, p, &acc)) return false;
    return true;
}

inline void drain_sorted(const Accum& acc, std::vector<uint64_t>& okeys,
                         std::vector<int64_t>& onums) {
    std::vector<std::pair<uint64_t, int64_t>> items;
    items.reserve(acc.size());
    for (const auto& kv : acc) {
        if (kv.second != 0) items.push_back(kv);
    }
    std::sort(items.begin(), items.end());
    okeys.resize(items.size());
    onums.resize(items.size());
    for (size_t i = 0; i < items.size(); ++i) {
        okeys[i] = items[i].first;
        onums[i] = items[i].second;
    }
}

// out = sum_t scale[t] * a[t] * b[t]
inline int sparse_dot(const std::vector<Poly>& a, const std::vector<Poly>& b,
                      const std::vector<int64_t>& scale, uint64_t zero,
                      std::vector<uint64_t>& okeys, std::vector<int64_t>& onums) {
    size_t hint = 0;
    for (size_t t = 0; t < a.size(); ++t) hint += std::min(a[t].len * b[t].len, (size_t)1 << 22);
    Accum acc;
    acc.reserve(hint);
    for (size_t t = 0; t < a.size(); ++t) {
        const Poly& pa = a[t];
        const Poly& pb = b[t];
        const int64_t s = scale[t];
        for (size_t i = 0; i < pa.len; ++i) {
            int64_t ca;
            if (__builtin_mul_overflow(pa.nums[i], s, &ca)) return OVERFLOW_;
            const uint64_t ka = pa.keys[i] - zero;
            for (size_t j = 0; j < pb.len; ++j) {
                int64_t& slot = acc[ka + pb.keys[j]];
                if (!checked_muladd(slot, ca, pb.nums[j])) return OVERFLOW_;
            }
        }
    }
    drain_sorted(acc, okeys, onums);
    return OK;
}

struct Order {
    int nvars;
    int width;
    uint64_t mask;
    int64_t bias;

    Order(int n, int w) : nvars(n), width(w) {
        mask = (w >= 64) ? ~(uint64_t)0 : (((uint64_t)1 << w) - 1);
        bias = (int64_t)1 << (w - 1);
    }
    inline int64_t field(uint64_t key, int i) const {
        return (int64_t)((key >> (width * i)) & mask) - bias;
    }
    inline int64_t degree(uint64_t key) const {
        int64_t d = 0;
        for (int i = 0; i < nvars; ++i) d += field(key, i);
        return d;
    }
};

// Exact division num / den by leading-term cancellation in graded-lex order
// (total degree first, then the numeric key which is lex with the last
// variable most significant).  Every quotient monomial must stay inside the
// box [lo, hi]; leaving it proves the division inexact.
inline int exact_div(const Poly& num, const Poly& den, int nvars, int width,
                     uint64_t zero, const int64_t* lo, const int64_t* hi,
                     std::vector<uint64_t>& qkeys, std::vector<int64_t>& qnums) {
    Order ord(nvars, width);
    typedef std::pair<int64_t, uint64_t> Entry;

    size_t lead = 0;
    for (size_t j = 1; j < den.len; ++j) {
        Entry cur(ord.degree(den.keys[j]), den.keys[j]);
        Entry best(ord.degree(den.keys[lead]), den.keys[lead]);
        if (cur > best) lead = j;
    }
    const uint64_t dlead = den.keys[lead];
    const int64_t lc = den.nums[lead];

    Accum rem;
    rem.reserve(num.len * 2 + 16);
    std::priority_queue<Entry> heap;
    for (size_t i = 0; i < num.len; ++i) {
        rem[num.keys[i]] = num.nums[i];
        heap.push(Entry(ord.degree(num.keys[i]), num.keys[i]));
    }
    Accum quot;
    while (!heap.empty()) {
        const uint64_t key = heap.top().second;
        heap.pop();
        auto it = rem.find(key);
        if (it == rem.end()) continue;
        const int64_t c = it->second;
        if (c == 0) {
            rem.erase(it);
            continue;
        }
        if (c % lc != 0) return NONINTEGRAL;
        const int64_t t = c / lc;
        const uint64_t qk = key - dlead + zero;
        for (int i = 0; i < nvars; ++i) {
            const int64_t e = ord.field(qk, i);
            if (e < lo[i] || e > hi[i]) return INEXACT;
        }
        quot[qk] = t;
        const uint64_t base = qk - zero;
        for (size_t j = 0; j < den.len; ++j) {
            const uint64_t k = base + den.keys[j];
            auto slot = rem.find(k);
            int64_t p;
            if (__builtin_mul_overflow(t, den.nums[j], &p)) return OVERFLOW_;
            if (slot == rem.end()) {
                rem.emplace(k, -p);
                heap.push(Entry(ord.degree(k), k));
            } else {
                if (__builtin_sub_overflow(slot->second, p, &slot->second)) return OVERFLOW_;
                if (slot->second == 0) rem.erase(slot);
            }
        }
    }
    drain_sorted(quot, qkeys, qnums);
    return OK;
}

}  // namespace jt
