#include "bz/segments.hpp"

#include "bz/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace bz {

void CuspidalLabel::validate() const {
    if (name.empty()) throw DomainError("cuspidal label needs a name");
    if (deg < 1) throw DomainError("cuspidal " + name + ": deg must be positive");
    if (twist_index < 1 || deg % twist_index != 0)
        throw DomainError("cuspidal " + name + ": twist_index must be a positive divisor of deg");
    if (artin < 0) throw DomainError("cuspidal " + name + ": artin must be nonnegative");
    if (inertia_inv != 0 && inertia_inv != 1)
        throw DomainError("cuspidal " + name + ": inertia_inv must be 0 or 1");
    bool unramified_char = artin == 0 && deg == 1;
    if ((inertia_inv == 1) != unramified_char)
        throw DomainError("cuspidal " + name +
                          ": inertia_inv is 1 exactly for an unramified character (deg 1, artin 0)");
}

bool Segment::contains(const Segment& o) const {
    return same_line(*this, o) && start2 <= o.start2 && o.end2() <= end2();
}

MultiSegment::MultiSegment(std::vector<Segment> segs) : segs_(std::move(segs)) {
    for (const auto& s : segs_) {
        if (s.len < 1) throw DomainError("segment length must be positive");
        s.label.validate();
    }
    std::sort(segs_.begin(), segs_.end());
}

int MultiSegment::rank() const {
    int n = 0;
    for (const auto& s : segs_) n += s.len * s.label.deg;
    return n;
}

int MultiSegment::total_length() const {
    int n = 0;
    for (const auto& s : segs_) n += s.len;
    return n;
}

bool same_line(const Segment& a, const Segment& b) {
    return a.label == b.label && (a.start2 - b.start2) % 2 == 0;
}

bool is_linked(const Segment& a, const Segment& b) {
    if (!same_line(a, b)) return false;
    if (a.contains(b) || b.contains(a)) return false;
    // Interval union (in steps of 2) has no gap.
    return std::max(a.start2, b.start2) <= std::min(a.end2(), b.end2()) + 2;
}

bool precedes(const Segment& a, const Segment& b) {
    return is_linked(a, b) && b.start2 - a.start2 >= 2;
}

std::vector<Segment> bz_sort(const MultiSegment& s) {
    std::vector<Segment> out = s.segments();
    std::stable_sort(out.begin(), out.end(), [](const Segment& a, const Segment& b) {
        if (a.label.name != b.label.name) return a.label.name < b.label.name;
        if (a.start2 != b.start2) return a.start2 > b.start2;
        return a.len < b.len;
    });
    return out;
}

std::pair<Segment, std::optional<Segment>> merge_linked(const Segment& a, const Segment& b) {
    if (!is_linked(a, b)) throw DomainError("merge of segments that are not linked");
    int lo = std::min(a.start2, b.start2), hi = std::max(a.end2(), b.end2());
    Segment uni{a.label, lo, (hi - lo) / 2 + 1};
    int ilo = std::max(a.start2, b.start2), ihi = std::min(a.end2(), b.end2());
    if (ilo > ihi) return {uni, std::nullopt};
    return {uni, Segment{a.label, ilo, (ihi - ilo) / 2 + 1}};
}

std::set<MultiSegment> elementary_ops(const MultiSegment& s) {
    std::set<MultiSegment> out;
    const auto& segs = s.segments();
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            if (!is_linked(segs[i], segs[j])) continue;
            std::vector<Segment> next;
            for (std::size_t k = 0; k < segs.size(); ++k)
                if (k != i && k != j) next.push_back(segs[k]);
            auto [uni, inter] = merge_linked(segs[i], segs[j]);
            next.push_back(uni);
            if (inter) next.push_back(*inter);
            out.insert(MultiSegment(std::move(next)));
        }
    return out;
}

std::map<std::string, std::pair<CuspidalLabel, int>> supercuspidal_support(const MultiSegment& s) {
    std::map<std::string, std::pair<CuspidalLabel, int>> out;
    for (const auto& seg : s.segments()) {
        auto [it, fresh] = out.try_emplace(seg.label.name, seg.label, 0);
        if (!fresh && it->second.first != seg.label)
            throw DomainError("two different cuspidal labels share the name " + seg.label.name);
        it->second.second += seg.len;
    }
    return out;
}

namespace {

// Multiset of members (label, doubled exponent); elementary operations keep it.
std::map<std::pair<std::string, int>, int> fine_support(const MultiSegment& s) {
    std::map<std::pair<std::string, int>, int> out;
    for (const auto& seg : s.segments()) {
        for (int k = 0; k < seg.len; ++k) out[{seg.label.name, seg.start2 + 2 * k}] += 1;
    }
    return out;
}

} // namespace

Poset poset_below(const MultiSegment& s, std::size_t cap) {
    Poset p;
    std::map<MultiSegment, std::size_t> index;
    p.nodes.push_back(s);
    index.emplace(s, 0);
    for (std::size_t head = 0; head < p.nodes.size(); ++head) {
        auto succ = elementary_ops(p.nodes[head]);  // std::set: already sorted
        for (const auto& t : succ) {
            auto it = index.find(t);
            if (it == index.end()) {
                if (p.nodes.size() >= cap)
                    throw GuardExceeded("poset exceeds the node cap of " + std::to_string(cap));
                it = index.emplace(t, p.nodes.size()).first;
                p.nodes.push_back(t);
            }
            p.edges.emplace_back(head, it->second);
        }
    }
    return p;
}

bool leq(const MultiSegment& s0, const MultiSegment& s, std::size_t cap) {
    if (s0 == s) return true;
    // Elementary operations keep the multiset of members; a mismatch rules
    // out reachability at once. They also strictly reduce the segment count
    // or keep it while lengthening a segment, so s0 must have no more
    // segments than s.
    if (fine_support(s0) != fine_support(s) || s0.size() > s.size()) return false;
    std::set<MultiSegment> seen{s};
    std::deque<MultiSegment> queue{s};
    while (!queue.empty()) {
        MultiSegment cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& t : elementary_ops(cur)) {
            if (t == s0) return true;
            if (seen.insert(t).second) {
                if (seen.size() > cap) throw GuardExceeded("leq search exceeds the node cap");
                queue.push_back(t);
            }
        }
    }
    return false;
}

bool is_unlinked(const MultiSegment& s) {
    const auto& segs = s.segments();
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j)
            if (is_linked(segs[i], segs[j])) return false;
    return true;
}

MultiSegment tempered_multisegment(const std::vector<std::pair<CuspidalLabel, int>>& specs, int chi_shift2) {
    std::vector<Segment> segs;
    for (const auto& [label, len] : specs) {
        if (!label.unitary) throw DomainError("tempered multisegment needs unitary labels; " + label.name + " is not");
        if (len < 1) throw DomainError("segment length must be positive");
        segs.push_back(Segment{label, 1 - len + chi_shift2, len});
    }
    MultiSegment out(std::move(segs));
    if (!is_unlinked(out)) throw DomainError("internal: centred segments turned out linked");
    return out;
}

} // namespace bz
