#include <gtest/gtest.h>

#include <bit>
#include <functional>
#include <map>
#include <set>

#include "affgeo/matroid.hpp"

using namespace affgeo;

namespace {

const Field F2 = Field::make(2, 1);

MatroidOracle triangle() { return graphic_matroid(3, {{0, 1}, {1, 2}, {0, 2}}); }

std::vector<std::pair<std::string, MatroidOracle>> catalogue() {
    std::vector<std::pair<std::string, MatroidOracle>> out;
    for (int n = 0; n <= 4; ++n) out.emplace_back("free" + std::to_string(n), free_matroid(n));
    out.emplace_back("triangle", triangle());
    out.emplace_back("vector F2^3", vector_matroid(F2, 3));
    out.emplace_back("AG(2,2)", geometry_matroid(GeometrySpec::affine(F2, 3)));
    out.emplace_back("PG(2,2)", geometry_matroid(GeometrySpec::projective(F2, 3)));
    return out;
}

Mask mask_of(std::initializer_list<int> xs) {
    Mask m = 0;
    for (int x : xs) m |= Mask{1} << x;
    return m;
}

// Lengths of all maximal chains from lo to hi, by depth-first search over covers.
void chain_lengths(const FlatLattice& lat, std::size_t lo, std::size_t hi, int depth, std::set<int>& out) {
    if (lo == hi) {
        out.insert(depth);
        return;
    }
    for (std::size_t k = 0; k < lat.size(); ++k)
        if (lat.covers(k, lo) && lat.leq(k, hi)) chain_lengths(lat, k, hi, depth + 1, out);
}

} // namespace

TEST(Matroid, ExampleRanks) {
    EXPECT_EQ(free_matroid(4).rank(mask_of({1, 3})), 2);
    EXPECT_EQ(triangle().rank(mask_of({0, 1, 2})), 2);
    const auto v = vector_matroid(F2, 3);
    EXPECT_EQ(v.size(), 8);
    // Index 0 is the zero vector, a loop.
    EXPECT_EQ(v.rank(mask_of({0})), 0);
    EXPECT_EQ(v.rank(), 3);
}

TEST(Matroid, RankAxiomsHoldForAllInstances) {
    for (const auto& [name, m] : catalogue()) {
        const auto r = rank_axioms_check(m);
        EXPECT_TRUE(r.ok) << name << ": " << r.violation;
        const auto x = exchange_check(m);
        EXPECT_TRUE(x.ok) << name << ": " << x.violation;
    }
}

TEST(Matroid, AdversarialOracleFails) {
    // r = |X| mod 2 violates monotonicity.
    const MatroidOracle bad(std::vector<std::string>{"a", "b", "c"}, [](Mask x) { return std::popcount(x) % 2; });
    const auto r = rank_axioms_check(bad);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.violation.empty());
    ASSERT_FALSE(r.witness.empty());
    // Rank 1 on every proper nonempty subset, 3 on the whole set: not submodular.
    const MatroidOracle bad2(std::vector<std::string>{"a", "b", "c", "d"},
                             [](Mask x) { return x == 0 ? 0 : x == 0b1111 ? 3 : 1; });
    EXPECT_FALSE(rank_axioms_check(bad2).ok);
}

TEST(Matroid, ExhaustiveChecksGuardLargeGroundSets) {
    EXPECT_THROW(rank_axioms_check(free_matroid(13)), GuardExceeded);
    EXPECT_THROW(exchange_check(free_matroid(13)), GuardExceeded);
    EXPECT_THROW(flats_lattice(free_matroid(21)), GuardExceeded);
}

TEST(Matroid, ClosureInAG22) {
    const auto m = geometry_matroid(GeometrySpec::affine(F2, 3));
    EXPECT_EQ(closure(m, mask_of({0, 1})), mask_of({0, 1}));
    EXPECT_EQ(closure(m, mask_of({0, 1, 2})), m.ground());
    EXPECT_EQ(closure(m, 0), Mask{0});
}

TEST(Matroid, ClosureOperatorLaws) {
    for (const auto& [name, m] : catalogue()) {
        const Mask n = Mask{1} << m.size();
        for (Mask x = 0; x < n; ++x) {
            const Mask c = closure(m, x);
            ASSERT_EQ(c & x, x) << name;
            ASSERT_EQ(closure(m, c), c) << name;
            ASSERT_EQ(m.rank(c), m.rank(x)) << name;
            for (int i = 0; i < m.size(); ++i) ASSERT_EQ(closure(m, x | (Mask{1} << i)) & c, c) << name;
        }
    }
}

TEST(Matroid, BasesShareCardinality) {
    for (const auto& [name, m] : catalogue()) {
        const auto bs = bases(m);
        ASSERT_FALSE(bs.empty()) << name;
        for (Mask b : bs) {
            EXPECT_EQ(std::popcount(b), m.rank()) << name;
            EXPECT_TRUE(independent(m, b));
        }
    }
    EXPECT_EQ(bases(triangle()).size(), 3u);
    EXPECT_EQ(bases(geometry_matroid(GeometrySpec::projective(F2, 3))).size(), 28u);
}

TEST(Matroid, GeometryRankMatchesFlatRank) {
    for (const auto& g : {GeometrySpec::affine(F2, 3), GeometrySpec::affine(F2, 4), GeometrySpec::projective(F2, 3)}) {
        const auto m = geometry_matroid(g);
        const auto pts = geometry_points(g);
        ASSERT_EQ(static_cast<int>(pts.size()), m.size());
        for (Mask x = 0; x < (Mask{1} << m.size()); x += (m.size() > 8 ? 7 : 1)) {
            std::vector<Row> rows;
            for (int i = 0; i < m.size(); ++i)
                if (x >> i & 1) rows.push_back(pts[i]);
            int r = 0;
            if (g.kind == GeometryKind::projective) {
                r = LinearSubspace(g.field, g.ambient_dim(), rows).dim();
            } else if (!rows.empty()) {
                std::vector<VectorFq> vs;
                for (auto& row : rows) vs.emplace_back(g.field, row);
                r = flat_rank(aff_closure(vs));
            }
            ASSERT_EQ(m.rank(x), r);
        }
    }
}

TEST(Lattice, CountsByRank) {
    const auto ag = flats_lattice(geometry_matroid(GeometrySpec::affine(F2, 3)));
    EXPECT_EQ(ag.size(), 12u);
    std::map<int, int> by_rank;
    for (std::size_t i = 0; i < ag.size(); ++i) ++by_rank[ag.rank(i)];
    EXPECT_EQ(by_rank, (std::map<int, int>{{0, 1}, {1, 4}, {2, 6}, {3, 1}}));
    EXPECT_EQ(flats_lattice(free_matroid(3)).size(), 8u);
    EXPECT_EQ(flats_lattice(geometry_matroid(GeometrySpec::projective(F2, 3))).size(), 16u);
    EXPECT_EQ(flats_lattice(geometry_matroid(GeometrySpec::affine(F2, 4))).size(), 52u);
}

TEST(Lattice, GeometricLatticeProperties) {
    for (const auto& [name, m] : catalogue()) {
        if (m.size() == 0) continue;
        const auto lat = flats_lattice(m);
        EXPECT_TRUE(lat.is_atomistic()) << name;
        EXPECT_TRUE(lat.chain_condition_holds()) << name;
        EXPECT_TRUE(lat.is_semimodular()) << name;
        for (std::size_t i = 0; i < lat.size(); ++i)
            for (std::size_t j = 0; j < lat.size(); ++j) {
                if (!lat.leq(i, j)) continue;
                std::set<int> lens;
                chain_lengths(lat, i, j, 0, lens);
                EXPECT_EQ(lens, (std::set<int>{lat.rank(j) - lat.rank(i)})) << name;
            }
    }
}

TEST(Lattice, MeetJoinAreLatticeOperations) {
    const auto lat = flats_lattice(geometry_matroid(GeometrySpec::projective(F2, 3)));
    for (std::size_t i = 0; i < lat.size(); ++i)
        for (std::size_t j = 0; j < lat.size(); ++j) {
            const auto m = lat.meet(i, j), J = lat.join(i, j);
            EXPECT_TRUE(lat.leq(m, i) && lat.leq(m, j));
            EXPECT_TRUE(lat.leq(i, J) && lat.leq(j, J));
            for (std::size_t k = 0; k < lat.size(); ++k) {
                EXPECT_TRUE(!(lat.leq(k, i) && lat.leq(k, j)) || lat.leq(k, m));
                EXPECT_TRUE(!(lat.leq(i, k) && lat.leq(j, k)) || lat.leq(J, k));
            }
        }
}

TEST(Lattice, DistanceExamples) {
    const auto g = GeometrySpec::affine(F2, 4);
    const auto m = geometry_matroid(g);
    const auto pts = geometry_points(g);
    auto mask_for = [&](const AffineFlat& e) {
        Mask x = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (e.contains(pts[i])) x |= Mask{1} << i;
        return x;
    };
    const auto plane_dir = LinearSubspace(F2, 3, {{1, 0, 0}, {0, 1, 0}});
    const Mask e = mask_for(AffineFlat::coset(VectorFq::zero(F2, 3), plane_dir));
    const Mask f = mask_for(AffineFlat::coset(VectorFq::unit(F2, 3, 2), plane_dir));
    const Mask line = mask_for(AffineFlat::coset(VectorFq::zero(F2, 3), LinearSubspace(F2, 3, {{1, 0, 0}})));
    EXPECT_EQ(lattice_distance(m, e, e), 0);
    EXPECT_EQ(lattice_distance(m, e, f), 2);
    EXPECT_EQ(lattice_distance(m, line, e), 1);
    EXPECT_EQ(lattice_distance_prime(m, line, e), 1);
    EXPECT_THROW(lattice_distance(m, mask_of({0, 1, 2}), e), InvalidArgument);
}

TEST(Lattice, TriangleInequalitiesOnSmallGeometries) {
    for (const auto& g : {GeometrySpec::affine(F2, 3), GeometrySpec::projective(F2, 3)}) {
        const auto m = geometry_matroid(g);
        const auto lat = flats_lattice(m);
        for (Mask a : lat.flats())
            for (Mask b : lat.flats())
                for (Mask c : lat.flats()) {
                    EXPECT_LE(lattice_distance(m, a, c), lattice_distance(m, a, b) + lattice_distance(m, b, c));
                    EXPECT_LE(lattice_distance_prime(m, a, c),
                              lattice_distance_prime(m, a, b) + lattice_distance_prime(m, b, c));
                }
    }
}

TEST(Pmd, TypesOfStandardMatroids) {
    EXPECT_EQ(pmd_type(geometry_matroid(GeometrySpec::affine(F2, 3))), (PmdType{{0, 1, 2, 4}}));
    EXPECT_EQ(pmd_type(geometry_matroid(GeometrySpec::projective(F2, 3))), (PmdType{{0, 1, 3, 7}}));
    EXPECT_EQ(pmd_type(free_matroid(4)), (PmdType{{0, 1, 2, 3, 4}}));
    EXPECT_EQ(pmd_type(triangle()), (PmdType{{0, 1, 3}}));
    EXPECT_EQ(pmd_type(vector_matroid(F2, 3)), (PmdType{{1, 2, 4, 8}}));
}

TEST(Pmd, TypeMatchesClosedForm) {
    for (const auto& g : {GeometrySpec::affine(F2, 3), GeometrySpec::affine(F2, 4), GeometrySpec::projective(F2, 3),
                          GeometrySpec::affine(Field::make(3, 1), 3), GeometrySpec::projective(Field::make(3, 1), 3)})
        EXPECT_EQ(pmd_type(geometry_matroid(g)), geometry_type(g));
}

TEST(Pmd, NonPmdReportsWitness) {
    // Triangle with a pendant edge: the 2-flats {01,12,02} and {01,23} differ in size.
    const auto m = graphic_matroid(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    try {
        pmd_type(m);
        FAIL() << "expected NotPmd";
    } catch (const NotPmd& e) {
        EXPECT_EQ(e.rank, 2);
        EXPECT_NE(std::popcount(e.first), std::popcount(e.second));
        EXPECT_TRUE(is_flat(m, e.first) && is_flat(m, e.second));
    }
}

TEST(Pmd, Geometrization) {
    EXPECT_EQ(geometrize_type(PmdType{{1, 2, 4, 8}}), (PmdType{{0, 1, 3, 7}}));
    EXPECT_EQ(geometrize_type(PmdType{{0, 1, 4, 16}}), (PmdType{{0, 1, 4, 16}}));
    EXPECT_EQ(geometrize_type(PmdType{{1, 3, 9, 27}}), (PmdType{{0, 1, 4, 13}}));
    EXPECT_EQ(geometrize_type(pmd_type(vector_matroid(F2, 3))), geometry_type(GeometrySpec::projective(F2, 3)));
    EXPECT_THROW(geometrize_type(PmdType{{2, 2, 4}}), InvalidArgument);
    EXPECT_THROW(geometrize_type(PmdType{{0, 2, 3}}), InvalidArgument);
}
