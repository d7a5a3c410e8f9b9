#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "partgraph/caps.hpp"
#include "partgraph/errors.hpp"

namespace partgraph {

/// An integer partition in canonical form: weakly decreasing positive parts,
/// no trailing zeros. The empty partition is the unique partition of 0.
/// Immutable after construction; the total is cached.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        int sum = 0;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1)
                throw domain_error("partition part must be positive, got " +
                                   std::to_string(parts_[i]));
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw domain_error("partition parts must be weakly decreasing");
            sum += parts_[i];
        }
        total_ = sum;
    }

    /// Builds the canonical partition from an arbitrary bag of nonnegative
    /// values: zeros are dropped, the rest sorted descending.
    static Partition from_unsorted(std::vector<int> values) {
        values.erase(std::remove(values.begin(), values.end(), 0), values.end());
        std::sort(values.begin(), values.end(), std::greater<int>());
        return Partition(std::move(values));
    }

    const std::vector<int>& parts() const { return parts_; }
    int total() const { return total_; }
    int part_count() const { return static_cast<int>(parts_.size()); }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    bool empty() const { return parts_.empty(); }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.parts_ == b.parts_;
    }
    /// Plain lexicographic order on part sequences. Vertex enumeration uses
    /// the reverse of this (descending lexicographic).
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        return a.parts_ <=> b.parts_;
    }

    /// Comma-separated literal, e.g. "4,2,1,1". Empty string for the empty
    /// partition. This grammar is shared by CLI flags and JSON payloads.
    std::string to_string() const {
        std::ostringstream out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out << ',';
            out << parts_[i];
        }
        return out.str();
    }

    static Partition parse(const std::string& text) {
        std::vector<int> parts;
        if (text.empty()) return Partition();
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string token = text.substr(pos, comma == std::string::npos
                                                     ? std::string::npos
                                                     : comma - pos);
            if (token.empty() || token.size() > 7 ||
                token.find_first_not_of("0123456789") != std::string::npos)
                throw parse_error("bad partition literal \"" + text +
                                  "\": token \"" + token + "\" is not a positive integer");
            long value = std::stol(token);
            if (value < 1 || value > 1000000)
                throw parse_error("bad partition literal \"" + text +
                                  "\": part " + token + " out of range");
            parts.push_back(static_cast<int>(value));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        for (std::size_t i = 1; i < parts.size(); ++i)
            if (parts[i] > parts[i - 1])
                throw parse_error("bad partition literal \"" + text +
                                  "\": parts must be weakly decreasing");
        return Partition(std::move(parts));
    }

private:
    std::vector<int> parts_;
    int total_ = 0;
};

struct PartitionHash {
    std::size_t operator()(const Partition& p) const {
        std::uint64_t h = 1469598103934665603ull; // FNV-1a
        for (int part : p.parts()) {
            h ^= static_cast<std::uint64_t>(part);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Column heights of a Ferrers diagram, weakly decreasing. Unlike Partition
/// this sequence is allowed to carry trailing zeros after padding, which is
/// exactly what the L1 adjacency test needs.
struct ConjugateView {
    std::vector<int> cols;

    /// Copy padded with trailing zeros to at least `len` entries.
    std::vector<int> padded(std::size_t len) const {
        std::vector<int> out = cols;
        if (out.size() < len) out.resize(len, 0);
        return out;
    }
};

inline ConjugateView conjugate_view(const Partition& p) {
    ConjugateView view;
    if (p.empty()) return view;
    view.cols.resize(static_cast<std::size_t>(p.largest()), 0);
    for (int part : p.parts())
        for (int j = 0; j < part; ++j) view.cols[static_cast<std::size_t>(j)] += 1;
    return view;
}

/// The transpose partition. Involution: conjugate(conjugate(p)) == p.
inline Partition conjugate(const Partition& p) {
    return Partition(conjugate_view(p).cols);
}

/// L1 distance between the conjugates of two same-size partitions, after
/// zero-padding to a common length.
inline int l1_conjugate_distance(const Partition& a, const Partition& b) {
    if (a.total() != b.total())
        throw domain_error("l1_conjugate_distance requires equal totals, got " +
                           std::to_string(a.total()) + " and " + std::to_string(b.total()));
    ConjugateView va = conjugate_view(a);
    ConjugateView vb = conjugate_view(b);
    std::size_t len = std::max(va.cols.size(), vb.cols.size());
    std::vector<int> pa = va.padded(len);
    std::vector<int> pb = vb.padded(len);
    int dist = 0;
    for (std::size_t j = 0; j < len; ++j) dist += std::abs(pa[j] - pb[j]);
    return dist;
}

/// Level-graph adjacency: the partitions differ by one elementary unit
/// transfer, equivalently their conjugates are at L1 distance exactly 2.
inline bool is_adjacent(const Partition& a, const Partition& b) {
    return l1_conjugate_distance(a, b) == 2;
}

/// Ferrers translation of type tau: the unique partition of |p|+|tau| whose
/// conjugate is the coordinatewise sum of the padded conjugates.
inline Partition ferrers_translate(const Partition& p, const Partition& tau) {
    ConjugateView vp = conjugate_view(p);
    ConjugateView vt = conjugate_view(tau);
    std::size_t len = std::max(vp.cols.size(), vt.cols.size());
    std::vector<int> sum = vp.padded(len);
    std::vector<int> add = vt.padded(len);
    for (std::size_t j = 0; j < len; ++j) sum[j] += add[j];
    return conjugate(Partition(std::move(sum)));
}

/// Row growth: translate by the single-row partition (k).
inline Partition row_growth(const Partition& p, int k) {
    if (k < 1) throw domain_error("row_growth requires k >= 1");
    return ferrers_translate(p, Partition(std::vector<int>{k}));
}

/// Column growth: translate by the single-column partition (1^k).
inline Partition column_growth(const Partition& p, int k) {
    if (k < 1) throw domain_error("column_growth requires k >= 1");
    return ferrers_translate(p, Partition(std::vector<int>(static_cast<std::size_t>(k), 1)));
}

/// All partitions of n in descending lexicographic order of part sequences:
/// (n) first, (1^n) last. The list has length p(n).
inline std::vector<Partition> enumerate_partitions(int n, int cap = Caps{}.partition_cap) {
    if (n < 0) throw domain_error("enumerate_partitions requires n >= 0");
    if (n > cap)
        throw capacity_error("enumerate_partitions: n=" + std::to_string(n) +
                             " exceeds partition cap " + std::to_string(cap));
    std::vector<Partition> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> cur{n};
    for (;;) {
        out.emplace_back(Partition(cur));
        // Rightmost part larger than 1; everything after it is a run of 1s.
        int i = static_cast<int>(cur.size()) - 1;
        while (i >= 0 && cur[i] == 1) --i;
        if (i < 0) break;
        int rest = static_cast<int>(cur.size()) - 1 - i + 1; // trailing 1s plus the unit taken
        cur[i] -= 1;
        cur.resize(static_cast<std::size_t>(i) + 1);
        int chunk = cur[i];
        while (rest > 0) {
            int next = std::min(chunk, rest);
            cur.push_back(next);
            rest -= next;
        }
    }
    return out;
}

/// Distinct canonical partitions reachable from p by one elementary unit
/// transfer: move one unit between parts, where the target may be a fresh
/// part of size 1 and a source part reduced to 0 disappears. The result never
/// contains p itself, so it is exactly the neighbor set of p in its level
/// graph.
inline std::vector<Partition> unit_transfer_neighbors(const Partition& p) {
    std::vector<Partition> out;
    if (p.empty()) return out;
    const std::vector<int>& parts = p.parts();

    // Work on distinct part values: moving a unit from/to equal parts gives
    // the same multiset no matter which copy is touched.
    std::vector<std::pair<int, int>> distinct; // (value, multiplicity)
    for (int v : parts) {
        if (!distinct.empty() && distinct.back().first == v)
            distinct.back().second += 1;
        else
            distinct.emplace_back(v, 1);
    }

    auto apply = [&](int src, int dst_or_zero) {
        // Remove one copy of src and (if nonzero) one of dst, insert the
        // edited values, re-canonicalize.
        std::vector<int> edited;
        edited.reserve(parts.size() + 1);
        bool removed_src = false, removed_dst = dst_or_zero == 0;
        for (int v : parts) {
            if (!removed_src && v == src) { removed_src = true; continue; }
            if (!removed_dst && v == dst_or_zero) { removed_dst = true; continue; }
            edited.push_back(v);
        }
        if (src - 1 > 0) edited.push_back(src - 1);
        edited.push_back(dst_or_zero + 1);
        return Partition::from_unsorted(std::move(edited));
    };

    for (const auto& [src, src_mult] : distinct) {
        // Target: a fresh part of size 1.
        Partition fresh = apply(src, 0);
        if (!(fresh == p)) out.push_back(std::move(fresh));
        // Target: an existing part (a different copy when values coincide).
        for (const auto& [dst, dst_mult] : distinct) {
            if (dst == src && src_mult < 2) continue;
            Partition moved = apply(src, dst);
            if (!(moved == p)) out.push_back(std::move(moved));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace partgraph
