#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "affgeo/construct.hpp"
#include "affgeo/design.hpp"

using namespace affgeo;

namespace {

const Field F2 = Field::make(2, 1);

// Counts of every t-subset of points covered by the blocks.
std::map<std::vector<int>, int> subset_counts(const ClassicalDesign& d, int t) {
    std::map<std::vector<int>, int> counts;
    std::vector<int> idx(t);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == t) {
            counts[idx] = 0;
            return;
        }
        for (int x = start; x < d.v; ++x) {
            idx[depth] = x;
            rec(x + 1, depth + 1);
        }
    };
    rec(0, 0);
    for (const auto& b : d.blocks) {
        std::set<int> in(b.begin(), b.end());
        for (auto& [sub, c] : counts) {
            bool all = true;
            for (int x : sub) all = all && in.count(x);
            c += all;
        }
    }
    return counts;
}

std::set<int> distinct_values(const std::map<std::vector<int>, int>& m) {
    std::set<int> out;
    for (const auto& [k, v] : m) out.insert(v);
    return out;
}

// Brute-force count of blocks containing each s-flat.
template <class Flat>
std::set<std::int64_t> containment_counts(const FlatFamily<Flat>& fam, int s) {
    std::set<std::int64_t> out;
    for (const auto& x : enumerate_flats_of<Flat>(fam.geometry(), s)) {
        std::int64_t c = 0;
        for (const auto& b : fam.blocks()) c += is_subflat(x, b);
        out.insert(c);
    }
    return out;
}

} // namespace

TEST(Verify, CompletePlanesOfAG32) {
    const auto fam = complete_design<AffineFlat>(GeometrySpec::affine(F2, 4), 3);
    EXPECT_EQ(fam.size(), 14u);
    const auto r = verify_design(fam, 3);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.lambda, 1);
    EXPECT_EQ(r.t_flats, 14u);
}

TEST(Verify, AffineSteinerSystem) {
    const auto fam = affine_steiner(2, 3, 2);
    const auto r = verify_design(fam, 2);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.lambda, 1);
    EXPECT_EQ(r.t_flats, 2016u);
}

TEST(Verify, DroppedBlockReportsSixLines) {
    const auto full = affine_steiner(2, 3, 2);
    auto blocks = full.blocks();
    const AffineFlat dropped = blocks[17];
    blocks.erase(blocks.begin() + 17);
    const AffineFamily fam(full.geometry(), blocks);
    const auto r = verify_design(fam, 2);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.violation->deviating, 6u);
    EXPECT_EQ(r.violation->majority_count, 1);
    EXPECT_EQ(r.violation->witness_count, 0);
    EXPECT_TRUE(is_subflat(r.violation->witness, dropped));
}

TEST(Verify, RejectsTAboveK) {
    EXPECT_THROW(verify_design(affine_steiner(2, 3, 2), 4), InvalidArgument);
}

TEST(LambdaS, SteinerSystemValues) {
    const DesignParams p{2, 3, 7, 1, 2};
    const auto type = geometry_type(GeometrySpec::affine(F2, 7));
    EXPECT_EQ(lambda_s(p, type, 2), Rational(1));
    EXPECT_EQ(lambda_s(p, type, 1), Rational(21));
    EXPECT_EQ(lambda_s(p, type, 0), Rational(336));
    const auto fam = affine_steiner(2, 3, 2);
    EXPECT_EQ(containment_counts(fam, 1), (std::set<std::int64_t>{21}));
    EXPECT_EQ(containment_counts(fam, 0), (std::set<std::int64_t>{336}));
    EXPECT_THROW(lambda_s(p, type, 3), InvalidArgument);
}

TEST(LambdaS, MatchesBruteForceForCompleteDesigns) {
    for (const auto& g : {GeometrySpec::affine(F2, 4), GeometrySpec::projective(F2, 4), GeometrySpec::affine(Field::make(3, 1), 3)}) {
        const auto type = geometry_type(g);
        for (int k = 1; k <= g.rank; ++k) {
            auto check = [&](const auto& fam) {
                for (int t = 0; t <= k; ++t) {
                    const auto r = verify_design(fam, t);
                    ASSERT_TRUE(r.ok()) << "k=" << k << " t=" << t;
                    const DesignParams p{t, k, g.rank, r.lambda, g.field.order()};
                    EXPECT_EQ(lambda_s(p, type, t), Rational(r.lambda));
                    for (int s = 0; s < t; ++s) {
                        const auto counts = containment_counts(fam, s);
                        ASSERT_EQ(counts.size(), 1u);
                        EXPECT_EQ(lambda_s(p, type, s), Rational(*counts.begin()));
                    }
                }
            };
            if (g.kind == GeometryKind::affine) check(complete_design<AffineFlat>(g, k));
            else check(complete_design<LinearSubspace>(g, k));
        }
    }
}

TEST(CompleteDesign, Counts) {
    EXPECT_EQ(complete_design<AffineFlat>(GeometrySpec::affine(F2, 4), 3).size(), 14u);
    EXPECT_EQ(complete_design<LinearSubspace>(GeometrySpec::projective(F2, 3), 2).size(), 7u);
    EXPECT_EQ(complete_design<AffineFlat>(GeometrySpec::affine(F2, 3), 2).size(), 6u);
}

TEST(Expand, FanoPlane) {
    const auto lines = complete_design<LinearSubspace>(GeometrySpec::projective(F2, 3), 2);
    const auto d = expand_subspace_design(lines);
    EXPECT_EQ(d.v, 7);
    EXPECT_EQ(d.blocks.size(), 7u);
    EXPECT_EQ(d.block_size(), 3);
    EXPECT_EQ(distinct_values(subset_counts(d, 2)), (std::set<int>{1}));
    EXPECT_TRUE(verify_classical(d, 2).ok);
}

TEST(Expand, SingleSubspaceHasGaussianSize) {
    const ProjectiveFamily one(GeometrySpec::projective(F2, 4), {LinearSubspace(F2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}})});
    const auto d = expand_subspace_design(one);
    ASSERT_EQ(d.blocks.size(), 1u);
    EXPECT_EQ(d.block_size(), 3);
    EXPECT_EQ(d.v, 15);
}

TEST(Expand, HyperplanesOfPG32) {
    const auto fam = complete_design<LinearSubspace>(GeometrySpec::projective(F2, 4), 3);
    const auto d = expand_subspace_design(fam);
    EXPECT_EQ(d.v, 15);
    EXPECT_EQ(d.block_size(), 7);
    EXPECT_EQ(distinct_values(subset_counts(d, 2)), (std::set<int>{3}));
    const auto r = verify_classical(d, 2);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.lambda, 3);
}

TEST(Expand, AffineSteinerBecomesClassical) {
    const auto d = expand_affine_design(affine_steiner(2, 3, 2), 2);
    EXPECT_EQ(d.v, 64);
    EXPECT_EQ(d.blocks.size(), 336u);
    EXPECT_EQ(d.block_size(), 4);
    EXPECT_EQ(distinct_values(subset_counts(d, 2)), (std::set<int>{1}));
}

TEST(Expand, PlanesOfAG32AreSqs8) {
    const auto d = expand_affine_design(complete_design<AffineFlat>(GeometrySpec::affine(F2, 4), 3), 3);
    EXPECT_EQ(d.v, 8);
    EXPECT_EQ(d.blocks.size(), 14u);
    EXPECT_EQ(distinct_values(subset_counts(d, 3)), (std::set<int>{1}));
    EXPECT_TRUE(verify_classical(d, 3).ok);
}

TEST(Expand, SingleLineOverF3) {
    const Field f3 = Field::make(3, 1);
    const AffineFamily one(GeometrySpec::affine(f3, 3),
                           {AffineFlat::coset(VectorFq::zero(f3, 2), LinearSubspace(f3, 2, {{1, 1}}))});
    const auto d = expand_affine_design(one, 2);
    ASSERT_EQ(d.blocks.size(), 1u);
    EXPECT_EQ(d.block_size(), 3);
    EXPECT_EQ(d.v, 9);
    EXPECT_THROW(expand_affine_design(one, 3), InvalidArgument);
}

TEST(Ev11, FanoLinesGiveSqs8) {
    const auto lines = complete_design<LinearSubspace>(GeometrySpec::projective(F2, 3), 2);
    const auto d = ev11_compose(lines);
    const auto direct = expand_affine_design(complete_design<AffineFlat>(GeometrySpec::affine(F2, 4), 3), 3);
    EXPECT_EQ(d, direct);
}

TEST(Ev11, HyperplanesOfF2Fourth) {
    // 2-(4,3,3) subspace design; double counting gives lambda = 30 * 56 / 560 = 3.
    const auto fam = complete_design<LinearSubspace>(GeometrySpec::projective(F2, 4), 3);
    EXPECT_EQ(verify_design(fam, 2).lambda, 3);
    const auto d = ev11_compose(fam);
    EXPECT_EQ(d.v, 16);
    EXPECT_EQ(d.blocks.size(), 30u);
    EXPECT_EQ(d.block_size(), 8);
    EXPECT_EQ(distinct_values(subset_counts(d, 3)), (std::set<int>{3}));
}

TEST(Ev11, EmptyAndWrongField) {
    const ProjectiveFamily none(GeometrySpec::projective(F2, 3), {});
    EXPECT_TRUE(ev11_compose(none).blocks.empty());
    const auto f3 = Field::make(3, 1);
    EXPECT_THROW(ev11_compose(complete_design<LinearSubspace>(GeometrySpec::projective(f3, 3), 2)), InvalidArgument);
}

TEST(ParallelClasses, Examples) {
    const auto s = affine_steiner(2, 3, 2);
    EXPECT_EQ(parallel_classes(s), 21);
    EXPECT_FALSE(is_skew(s));
    const auto g = GeometrySpec::affine(F2, 4);
    const LinearSubspace d(F2, 3, {{1, 0, 0}});
    const AffineFamily one(g, {AffineFlat::coset(VectorFq::zero(F2, 3), d)});
    EXPECT_EQ(parallel_classes(one), 1);
    EXPECT_TRUE(is_skew(one));
    const AffineFamily two(g, {AffineFlat::coset(VectorFq::zero(F2, 3), d), AffineFlat::coset(VectorFq::unit(F2, 3, 1), d)});
    EXPECT_EQ(parallel_classes(two), 1);
    EXPECT_FALSE(is_skew(two));
    EXPECT_THROW(parallel_classes(complete_design<LinearSubspace>(GeometrySpec::projective(F2, 3), 2)), InvalidArgument);
}

TEST(Classical, VerifierDetectsDeviation) {
    ClassicalDesign d{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}};
    const auto r = verify_classical(d, 2);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.witness, (std::vector<int>{2, 3}));
    EXPECT_EQ(r.witness_count, 0);
}
