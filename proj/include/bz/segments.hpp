#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bz {

/// A supercuspidal representation up to unramified twist, with the numeric
/// attributes the formulas consume.
struct CuspidalLabel {
    std::string name;
    int deg = 1;           // n_tau
    int twist_index = 1;   // I(tau), divides deg
    int artin = 0;         // Artin conductor of the attached Weil representation
    int inertia_inv = 1;   // dimension of the inertia invariants, 0 or 1
    bool unitary = true;

    /// DomainError unless the attribute constraints hold.
    void validate() const;

    auto operator<=>(const CuspidalLabel&) const = default;
    bool operator==(const CuspidalLabel&) const = default;
};

/// Members tau |det|^{start2/2 + k}, k = 0..len-1.
struct Segment {
    CuspidalLabel label;
    int start2 = 0;
    int len = 1;

    /// Doubled exponent of the last member.
    int end2() const { return start2 + 2 * (len - 1); }
    bool contains(const Segment& other) const;

    auto operator<=>(const Segment& o) const {
        if (auto c = label.name <=> o.label.name; c != 0) return c;
        if (auto c = start2 <=> o.start2; c != 0) return c;
        if (auto c = len <=> o.len; c != 0) return c;
        return label <=> o.label;
    }
    bool operator==(const Segment&) const = default;
};

/// Segments kept in canonical order: label name, then start2, then len.
class MultiSegment {
public:
    MultiSegment() = default;
    explicit MultiSegment(std::vector<Segment> segs);

    const std::vector<Segment>& segments() const { return segs_; }
    std::size_t size() const { return segs_.size(); }
    bool empty() const { return segs_.empty(); }
    /// Sum of len * deg, the rank of the general linear group.
    int rank() const;
    /// Sum of len.
    int total_length() const;

    auto operator<=>(const MultiSegment&) const = default;
    bool operator==(const MultiSegment&) const = default;

private:
    std::vector<Segment> segs_;
};

bool same_line(const Segment& a, const Segment& b);
bool is_linked(const Segment& a, const Segment& b);
bool precedes(const Segment& a, const Segment& b);

/// An order in which no earlier segment precedes a later one.
std::vector<Segment> bz_sort(const MultiSegment& s);

/// Union of linked segments, and their intersection when nonempty.
std::pair<Segment, std::optional<Segment>> merge_linked(const Segment& a, const Segment& b);

std::set<MultiSegment> elementary_ops(const MultiSegment& s);

/// s0 <= s: s0 is reachable from s by elementary operations.
bool leq(const MultiSegment& s0, const MultiSegment& s, std::size_t cap = 100000);

struct Poset {
    std::vector<MultiSegment> nodes;                      // nodes[0] is the top
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (from, to), to = one op applied to from
};

/// Every multisegment below s with one edge per elementary operation.
/// GuardExceeded when more than cap nodes would be produced.
Poset poset_below(const MultiSegment& s, std::size_t cap);

/// Label name -> (label, total length on that line).
std::map<std::string, std::pair<CuspidalLabel, int>> supercuspidal_support(const MultiSegment& s);

bool is_unlinked(const MultiSegment& s);

/// Segments centred at zero (start2 = 1 - len) shifted by chi_shift2.
MultiSegment tempered_multisegment(const std::vector<std::pair<CuspidalLabel, int>>& specs, int chi_shift2);

} // namespace bz
