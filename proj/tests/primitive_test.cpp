#include <gtest/gtest.h>

#include <map>
#include <set>

#include <av1324/primitive.hpp>
#include <av1324/verify.hpp>

#include "oracles.hpp"

using namespace av1324;

namespace {

Permutation P(std::string_view s) { return parse_permutation(s); }

std::vector<Permutation> class_members(int n, int a, int k) {
    std::vector<Permutation> out;
    for_each_classified(n, [&](std::span<const int> w, PositionalClass c) {
        if (c.a == a && (k == 0 || c.k == k)) out.emplace_back(std::vector<int>(w.begin(), w.end()));
    });
    return out;
}

} // namespace

TEST(IsPrimitive, Examples) {
    EXPECT_TRUE(is_primitive(P("2143")));
    EXPECT_FALSE(is_primitive(P("1234")));
    EXPECT_FALSE(is_primitive(P("21")));
    EXPECT_TRUE(is_primitive(P("12")));
    EXPECT_FALSE(is_primitive(P("1")));
    EXPECT_FALSE(is_primitive(P("243516")));  // 1 next to 6, but 2435 is a 1324
}

TEST(Odot, Examples) {
    EXPECT_EQ(odot(P("2143"), P("41253")), P("72145863"));
    EXPECT_EQ(odot(P("213"), P("3142")), P("521364"));
    EXPECT_EQ(odot(P("3142"), P("213")), P("531462"));
    EXPECT_EQ(odot(P("213"), P("12")), P("2134"));
    EXPECT_EQ(odot(P("12"), P("213")), P("3124"));
    EXPECT_NE(odot(P("213"), P("12")), odot(P("12"), P("213")));
}

TEST(Odot, PreconditionErrors) {
    EXPECT_THROW(odot(P("1234"), P("12")), std::domain_error);   // left not primitive
    EXPECT_THROW(odot(P("12"), P("21")), std::domain_error);     // 1 right of max
    EXPECT_THROW(odot(P("12"), P("1")), std::domain_error);
    EXPECT_THROW(odot(P("12"), P("1324")), std::domain_error);   // contains 1324
}

// Closure: products of a primitive and an element of S_{l,k}^{1<l}(1324)
// avoid 1324 and land in class (1, k+1); the sizes add up to l+m-1.
TEST(Odot, ClosureProperty) {
    std::vector<Permutation> prims, rights;
    for (int m = 2; m <= 6; ++m)
        for (auto& p : class_members(m, 1, 1)) prims.push_back(p);
    for (int l = 2; l <= 6; ++l)
        for (auto& p : class_members(l, 1, 0)) rights.push_back(p);
    for (const auto& p1 : prims)
        for (const auto& p2 : rights) {
            const Permutation r = odot(p1, p2);
            ASSERT_EQ(r.size(), p1.size() + p2.size() - 1);
            ASSERT_FALSE(oracle::contains(r.values(), {1, 3, 2, 4})) << to_string(r);
            ASSERT_EQ(classify(r), (PositionalClass{1, classify(p2)->k + 1}));
        }
}

TEST(Factorize, TableOneExamples) {
    EXPECT_EQ(factorize(P("1243")).factors, (std::vector<Permutation>{P("12"), P("132")}));
    EXPECT_EQ(factorize(P("3124")).factors, (std::vector<Permutation>{P("12"), P("213")}));
    EXPECT_EQ(factorize(P("2143")).factors, (std::vector<Permutation>{P("2143")}));
    EXPECT_EQ(factorize(P("1234")).factors, (std::vector<Permutation>{P("12"), P("12"), P("12")}));
    EXPECT_EQ(factorize(P("1342")).factors, (std::vector<Permutation>{P("132"), P("12")}));
    EXPECT_EQ(factorize(P("2134")).factors, (std::vector<Permutation>{P("213"), P("12")}));
}

TEST(Factorize, DomainErrors) {
    EXPECT_THROW(factorize(P("21")), std::domain_error);
    EXPECT_THROW(factorize(P("1324")), std::domain_error);
    EXPECT_THROW(factorize(P("1")), std::domain_error);
    EXPECT_THROW(factorize(P("3412")), std::domain_error);
}

// Unique factorization: k primitives, recomposition, and no other primitive
// first factor reproduces sigma (exhaustive over all products of size <= 8).
TEST(Factorize, UniqueFactorizationExhaustive) {
    constexpr int kMax = 8;
    std::vector<std::vector<Permutation>> prims(kMax + 1), members(kMax + 1);
    for (int m = 2; m <= kMax; ++m) {
        prims[m] = class_members(m, 1, 1);
        members[m] = class_members(m, 1, 0);
    }
    std::map<Permutation, std::vector<Permutation>> first_factors;
    for (int m = 2; m <= kMax; ++m)
        for (int l = 2; m + l - 1 <= kMax; ++l)
            for (const auto& first : prims[m])
                for (const auto& second : members[l]) first_factors[odot(first, second)].push_back(first);

    for (int n = 2; n <= kMax; ++n) {
        for (const auto& p : members[n]) {
            const auto d = factorize(p);
            ASSERT_EQ(static_cast<int>(d.k()), classify(p)->k);
            ASSERT_EQ(d.recompose(), p);
            for (const auto& f : d.factors) ASSERT_TRUE(is_primitive(f));
            auto it = first_factors.find(p);
            if (d.k() == 1) {
                ASSERT_TRUE(it == first_factors.end()) << to_string(p);
                continue;
            }
            ASSERT_TRUE(it != first_factors.end());
            ASSERT_EQ(it->second, std::vector<Permutation>{d.factors[0]}) << to_string(p);
        }
    }
}

TEST(ExpandWithOne, Examples) {
    EXPECT_EQ(expand_with_one(P("12")), (std::vector<Permutation>{P("231")}));
    EXPECT_EQ(expand_with_one(P("132")), (std::vector<Permutation>{P("2413"), P("2431")}));
    EXPECT_EQ(expand_with_one(P("213")), (std::vector<Permutation>{P("3241")}));
    EXPECT_THROW(expand_with_one(P("21")), std::domain_error);
}

TEST(ContractOne, Examples) {
    EXPECT_EQ(contract_one(P("231")), P("12"));
    EXPECT_EQ(contract_one(P("2431")), P("132"));
    EXPECT_EQ(contract_one(P("2567134")), P("145623"));
    EXPECT_EQ(classify(P("145623")), (PositionalClass{1, 3}));
    EXPECT_THROW(contract_one(P("1234")), std::domain_error);
}

TEST(ContractOne, LeftInverseOfExpansion) {
    for (int n = 2; n <= 8; ++n)
        for (const auto& s : class_members(n, 1, 0))
            for (const auto& t : expand_with_one(s)) {
                ASSERT_EQ(classify(t), (PositionalClass{2, classify(s)->k}));
                ASSERT_EQ(contract_one(t), s);
            }
}

TEST(Tuple, DecodeExamples) {
    EXPECT_EQ(decode_tuple({{P("12"), P("2413"), P("132")}, 1}), P("2357614"));
    EXPECT_EQ(decode_tuple({{P("25134"), P("12"), P("12")}, 0}), P("2567134"));
    EXPECT_EQ(decode_tuple({{P("12"), P("12"), P("42513")}, 2}), P("6234715"));
}

TEST(Tuple, EncodeExamples) {
    EXPECT_EQ(encode_perm(P("2357614")), (MarkedTuple{{P("12"), P("2413"), P("132")}, 1}));
    EXPECT_EQ(encode_perm(P("3256714")), (MarkedTuple{{P("32514"), P("12"), P("12")}, 0}));
}

TEST(Tuple, Errors) {
    EXPECT_THROW(encode_perm(P("2341")), std::domain_error);  // ends with 1
    EXPECT_THROW(encode_perm(P("1234")), std::domain_error);
    EXPECT_THROW(decode_tuple({{P("12"), P("132")}, 0}), std::domain_error);  // 12 is not in A_{2,1}
    EXPECT_THROW(decode_tuple({{P("2413"), P("2413")}, 0}), std::domain_error);
    EXPECT_THROW(decode_tuple({{}, 0}), std::domain_error);
}

TEST(Tuple, SmallestMarkedComponentHasSizeFour) {
    std::vector<Permutation> a21;
    for (int m = 2; m <= 5; ++m)
        for (const auto& p : class_members(m, 2, 1))
            if (is_a21(p)) a21.push_back(p);
    ASSERT_FALSE(a21.empty());
    EXPECT_EQ(a21.front(), P("2413"));
    for (const auto& p : a21) EXPECT_GE(p.size(), 4u);
}

TEST(Tuple, RoundTripBothWays) {
    std::vector<std::vector<Permutation>> prims(10), a21(10);
    for (int m = 2; m <= 9; ++m) {
        prims[m] = class_members(m, 1, 1);
        for (const auto& p : class_members(m, 2, 1))
            if (is_a21(p)) a21[m].push_back(p);
    }
    for (int n = 4; n <= 9; ++n)
        for (int k = 1; k <= n - 3; ++k) {
            std::set<Permutation> images;
            for (const auto& t : enumerate_tuples(n, k, prims, a21)) {
                const Permutation p = decode_tuple(t);
                ASSERT_EQ(encode_perm(p), t);
                images.insert(p);
            }
            std::size_t expected = 0;
            for (const auto& p : class_members(n, 2, k))
                if (p.back() != 1) {
                    ++expected;
                    ASSERT_EQ(decode_tuple(encode_perm(p)), p);
                    ASSERT_TRUE(images.count(p));
                }
            ASSERT_EQ(images.size(), expected);
        }
}

TEST(Text, TupleForm) {
    const MarkedTuple t{{P("12"), P("2413"), P("132")}, 1};
    EXPECT_EQ(format_tuple(t), "(12, ^2413, 132)");
    EXPECT_EQ(parse_tuple("(12, ^2413, 132)"), t);
    EXPECT_EQ(parse_tuple("(12,^2413,132)"), t);
    const MarkedTuple big{{Permutation::identity(2), P("2,4,1,3,5,6,7,8,9,10")}, 1};
    EXPECT_EQ(parse_tuple(format_tuple(big)), big);
    EXPECT_THROW(parse_tuple("(12, 2413)"), std::invalid_argument);
    EXPECT_THROW(parse_tuple("(^12, ^2413)"), std::invalid_argument);
    EXPECT_EQ(format_product(factorize(P("1234")).factors), "12 ⊙ 12 ⊙ 12");
}
