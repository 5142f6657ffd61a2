#include "bz/errors.hpp"
#include "bz/json_io.hpp"
#include "bz/segments.hpp"
#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace bz;
using bz::testing::ms;
using bz::testing::seg;
using bz::testing::unram;

TEST(CuspidalLabel, Validation) {
    EXPECT_NO_THROW(unram().validate());
    EXPECT_THROW((CuspidalLabel{"t", 4, 3, 0, 0, true}.validate()), DomainError);
    EXPECT_THROW((CuspidalLabel{"t", 2, 1, 0, 1, true}.validate()), DomainError);
    EXPECT_THROW((CuspidalLabel{"t", 1, 1, 1, 1, true}.validate()), DomainError);
    EXPECT_NO_THROW((CuspidalLabel{"t", 4, 2, 2, 0, true}.validate()));
}

TEST(SameLine, Examples) {
    EXPECT_TRUE(same_line(seg(0, 1), seg(1, 1)));
    EXPECT_FALSE(same_line(Segment{unram(), 0, 1}, Segment{unram(), 1, 1}));
    EXPECT_FALSE(same_line(seg(0, 1), seg(0, 1, unram("sigma"))));
}

TEST(IsLinked, Examples) {
    EXPECT_TRUE(is_linked(seg(0, 1), seg(1, 1)));
    EXPECT_FALSE(is_linked(seg(0, 2), seg(0, 1)));
    EXPECT_FALSE(is_linked(seg(0, 1), seg(4, 1)));
    EXPECT_TRUE(is_linked(seg(0, 2), seg(1, 2)));
    EXPECT_FALSE(is_linked(seg(0, 1), seg(2, 1)));
}

TEST(Precedes, Examples) {
    EXPECT_TRUE(precedes(seg(0, 1), seg(1, 1)));
    EXPECT_FALSE(precedes(seg(1, 1), seg(0, 1)));
    EXPECT_FALSE(precedes(seg(0, 2), seg(0, 1)));
}

TEST(Precedes, RelationsBetweenPredicates) {
    std::vector<Segment> pool;
    for (int s2 = -3; s2 <= 4; ++s2)
        for (int len = 1; len <= 3; ++len) pool.push_back(Segment{unram(), s2, len});
    for (const auto& a : pool)
        for (const auto& b : pool) {
            EXPECT_EQ(is_linked(a, b), is_linked(b, a));
            if (precedes(a, b)) {
                EXPECT_TRUE(is_linked(a, b));
                EXPECT_FALSE(precedes(b, a));
            }
            if (is_linked(a, b)) EXPECT_TRUE(precedes(a, b) || precedes(b, a));
        }
}

namespace {

bool admissible(const std::vector<Segment>& order) {
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (precedes(order[i], order[j])) return false;
    return true;
}

} // namespace

TEST(BzSort, Examples) {
    EXPECT_EQ(bz_sort(ms({seg(0, 1), seg(1, 1)})), (std::vector<Segment>{seg(1, 1), seg(0, 1)}));
    EXPECT_EQ(bz_sort(ms({seg(0, 2), seg(5, 2)})).size(), 2u);
    EXPECT_EQ(bz_sort(ms({seg(0, 1), seg(1, 1), seg(2, 1)})),
              (std::vector<Segment>{seg(2, 1), seg(1, 1), seg(0, 1)}));
}

TEST(BzSort, OnlyAdmissibleOrderOfChainIsChosen) {
    std::vector<Segment> segs{seg(0, 1), seg(1, 1), seg(2, 1)};
    std::sort(segs.begin(), segs.end());
    int admissible_count = 0;
    do {
        admissible_count += admissible(segs);
    } while (std::next_permutation(segs.begin(), segs.end()));
    EXPECT_EQ(admissible_count, 1);
}

TEST(BzSort, OutputIsAlwaysAdmissible) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        auto s = bz::testing::random_multisegment(rng, 8);
        auto order = bz_sort(s);
        EXPECT_TRUE(admissible(order));
        EXPECT_TRUE(std::is_permutation(order.begin(), order.end(), s.segments().begin()));
    }
}

TEST(ElementaryOps, Examples) {
    EXPECT_EQ(elementary_ops(ms({seg(0, 1), seg(1, 1)})), (std::set<MultiSegment>{ms({seg(0, 2)})}));
    EXPECT_EQ(elementary_ops(ms({seg(0, 2), seg(1, 2)})), (std::set<MultiSegment>{ms({seg(0, 3), seg(1, 1)})}));
    EXPECT_TRUE(elementary_ops(ms({seg(0, 2), seg(0, 1)})).empty());
}

TEST(ElementaryOps, PreserveSupercuspidalSupport) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = bz::testing::random_multisegment(rng, 8);
        for (const auto& t : elementary_ops(s)) EXPECT_EQ(supercuspidal_support(t), supercuspidal_support(s));
    }
}

TEST(Leq, Examples) {
    auto a = ms({seg(0, 1), seg(1, 1)});
    EXPECT_TRUE(leq(a, a));
    EXPECT_TRUE(leq(ms({seg(0, 2)}), a));
    EXPECT_FALSE(leq(a, ms({seg(0, 2)})));
}

TEST(Leq, IsAPartialOrderOnSmallPosets) {
    std::mt19937_64 rng(12);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 60; ++trial) {
        auto s = bz::testing::random_multisegment(rng, 6);
        Poset p = poset_below(s, 1000);
        if (p.nodes.size() > 5) continue;
        ++checked;
        for (const auto& a : p.nodes) {
            EXPECT_TRUE(leq(a, a));
            for (const auto& b : p.nodes) {
                if (!(a == b) && leq(a, b)) EXPECT_FALSE(leq(b, a));
                for (const auto& c : p.nodes)
                    if (leq(a, b) && leq(b, c)) EXPECT_TRUE(leq(a, c));
            }
        }
    }
    EXPECT_GT(checked, 10);
}

TEST(PosetBelow, Examples) {
    auto single = poset_below(ms({seg(0, 2)}), 10);
    EXPECT_EQ(single.nodes.size(), 1u);
    EXPECT_TRUE(single.edges.empty());

    auto two = poset_below(ms({seg(0, 1), seg(1, 1)}), 10);
    EXPECT_EQ(two.nodes.size(), 2u);
    EXPECT_EQ(two.edges.size(), 1u);

    auto three = poset_below(ms({seg(0, 1), seg(1, 1), seg(2, 1)}), 10);
    std::set<MultiSegment> nodes(three.nodes.begin(), three.nodes.end());
    EXPECT_EQ(nodes, (std::set<MultiSegment>{ms({seg(0, 1), seg(1, 1), seg(2, 1)}), ms({seg(0, 2), seg(2, 1)}),
                                             ms({seg(0, 1), seg(1, 2)}), ms({seg(0, 3)})}));
    EXPECT_EQ(three.nodes[0], ms({seg(0, 1), seg(1, 1), seg(2, 1)}));
}

TEST(PosetBelow, CapIsEnforced) {
    auto s = ms({seg(0, 1), seg(1, 1), seg(2, 1), seg(3, 1)});
    EXPECT_THROW(poset_below(s, 3), GuardExceeded);
}

TEST(PosetBelow, EveryNodeIsBelowTheTop) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = bz::testing::random_multisegment(rng, 6);
        auto p = poset_below(s, 5000);
        for (const auto& n : p.nodes) EXPECT_TRUE(leq(n, s));
    }
}

TEST(SupercuspidalSupport, Examples) {
    auto tau = unram("tau"), sigma = unram("sigma");
    auto a = supercuspidal_support(ms({seg(0, 2)}));
    EXPECT_EQ(a.at("tau").second, 2);
    auto b = supercuspidal_support(ms({seg(0, 1), seg(1, 1)}));
    EXPECT_EQ(b.at("tau").second, 2);
    auto c = supercuspidal_support(ms({seg(0, 1, tau), seg(0, 2, sigma)}));
    EXPECT_EQ(c.at("tau").second, 1);
    EXPECT_EQ(c.at("sigma").second, 2);
}

TEST(IsUnlinked, Examples) {
    EXPECT_FALSE(is_unlinked(ms({seg(0, 1), seg(1, 1)})));
    EXPECT_TRUE(is_unlinked(ms({seg(0, 2), seg(0, 1)})));
    EXPECT_TRUE(is_unlinked(ms({})));
    EXPECT_TRUE(is_unlinked(ms({seg(3, 2)})));
}

TEST(TemperedMultisegment, Examples) {
    auto tau = unram("tau"), sigma = unram("sigma");
    auto a = tempered_multisegment({{tau, 2}}, 0);
    EXPECT_EQ(a.segments()[0].start2, -1);
    EXPECT_EQ(a.segments()[0].len, 2);
    EXPECT_TRUE(is_unlinked(tempered_multisegment({{tau, 1}, {tau, 3}}, 0)));
    auto c = tempered_multisegment({{tau, 2}, {sigma, 2}}, 4);
    for (const auto& s : c.segments()) EXPECT_EQ(s.start2, 3);
    auto bad = tau;
    bad.unitary = false;
    EXPECT_THROW(tempered_multisegment({{bad, 1}}, 0), DomainError);
}

TEST(TemperedMultisegment, AlwaysUnlinked) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<CuspidalLabel, int>> specs;
        int count = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < count; ++i) specs.push_back({unram(rng() & 1 ? "tau" : "sigma"), 1 + static_cast<int>(rng() % 4)});
        EXPECT_TRUE(is_unlinked(tempered_multisegment(specs, static_cast<int>(rng() % 7) - 3)));
    }
}

TEST(MultiSegmentJson, RoundTrip) {
    auto s = ms({seg(0, 2), Segment{CuspidalLabel{"rho", 2, 2, 2, 0, true}, -1, 3}});
    EXPECT_EQ(multisegment_from_json(parse_json(multisegment_to_json(s).dump())), s);
}
