#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace rtrace;
using rtrace::test::vec;

namespace {

RatVector rat(std::initializer_list<Rational> v) { return RatVector(v); }

AffineTorusMap random_affine(std::mt19937_64& rng, std::size_t n, long long bound) {
    std::uniform_int_distribution<long long> den(1, 6);
    RatVector c(n);
    for (auto& x : c) {
        const long long q = den(rng);
        x = Rational(std::uniform_int_distribution<long long>(0, q - 1)(rng), q);
    }
    return AffineTorusMap(rtrace::test::random_matrix(rng, n, n, bound), c);
}

// Coincidence points by exhaustive search: every x in [0,1)^n solves
// (B - A) x = (c_f - c_g) + k for an integer k, and as x ranges over the
// torus k ranges over a bounded box. Solve for every k in that box.
std::set<RatVector> brute_force_points(const AffineTorusMap& f, const AffineTorusMap& g) {
    const std::size_t n = f.dim();
    const IntMatrix BA = g.A - f.A;
    std::vector<long long> bound(n);
    for (std::size_t i = 0; i < n; ++i) {
        long long b = 2;
        for (std::size_t j = 0; j < n; ++j) b += static_cast<long long>(abs(BA(i, j)));
        bound[i] = b;
    }
    std::set<RatVector> out;
    std::vector<long long> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = -bound[i];
    for (;;) {
        RatVector rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = f.c[i] - g.c[i] + Rational(k[i]);
        const RatVector x = solve_rational(BA, rhs);
        bool inside = true;
        for (const auto& xi : x) inside = inside && xi >= 0 && xi < 1;
        if (inside) out.insert(x);
        std::size_t i = 0;
        while (i < n && k[i] == bound[i]) {
            k[i] = -bound[i];
            ++i;
        }
        if (i == n) break;
        ++k[i];
    }
    return out;
}

} // namespace

TEST(CoincidencePoints, Examples) {
    const AffineTorusMap id1 = AffineTorusMap::identity(1);
    const auto p3 = coincidence_points(AffineTorusMap(IntMatrix{{3}}), id1);
    ASSERT_EQ(p3.size(), 2u);
    EXPECT_EQ(p3[0].x, rat({0}));
    EXPECT_EQ(p3[1].x, rat({Rational(1, 2)}));
    EXPECT_EQ(p3[1].id, 1);

    const AffineTorusMap rot(IntMatrix{{0, -1}, {1, 0}});
    const auto pr = coincidence_points(rot, AffineTorusMap::identity(2));
    ASSERT_EQ(pr.size(), 2u);
    EXPECT_EQ(pr[0].x, rat({0, 0}));
    EXPECT_EQ(pr[1].x, rat({Rational(1, 2), Rational(1, 2)}));

    EXPECT_THROW(coincidence_points(id1, id1), SingularDifference);
    EXPECT_THROW(AdmissibleTuple(id1, id1), SingularDifference);
    EXPECT_THROW(AffineTorusMap(IntMatrix{{1, 2}}, rat({0})), NonSquare);
}

TEST(PointIndex, Examples) {
    const AffineTorusMap f(IntMatrix{{3}});
    const AffineTorusMap g = AffineTorusMap::identity(1);
    for (const auto& p : coincidence_points(f, g)) EXPECT_EQ(point_index(f, g, p), -1);
    const AffineTorusMap h(IntMatrix{{-1}});
    for (const auto& p : coincidence_points(h, g)) EXPECT_EQ(point_index(h, g, p), 1);
    EXPECT_THROW(point_index(f, g, CoincidencePoint{rat({Rational(1, 3)}), 0}), NotACoincidencePoint);
}

TEST(PointClass, Examples) {
    const AdmissibleTuple t(AffineTorusMap(IntMatrix{{3}}), AffineTorusMap::identity(1));
    const auto points = coincidence_points(t.f(), t.g());
    EXPECT_EQ(point_class(t, points[0]).representative, vec({0}));
    // x = 1/2: g~(x) - f~(x) = 1/2 - 3/2 = -1, which is class [1] mod 2.
    EXPECT_EQ(point_class(t, points[1]).representative, vec({1}));
    for (long long k = -4; k <= 4; ++k)
        EXPECT_EQ(point_class(t, points[1], IntVector{k}), point_class(t, points[1]));
    EXPECT_THROW(point_class(t, CoincidencePoint{rat({Rational(1, 4)}), 0}), NotACoincidencePoint);
}

TEST(LocalTrace, Examples) {
    const AdmissibleTuple t(AffineTorusMap(IntMatrix{{3}}), AffineTorusMap::identity(1));
    EXPECT_EQ(local_reidemeister_trace(t).str(), "-1[(0)] -1[(1)]");
    EXPECT_EQ(nielsen_report(local_reidemeister_trace(t)).str(), "N = 2 (exact)");
    EXPECT_EQ(local_reidemeister_trace(t.with_region(Region::selection({0}))).str(), "-1[(0)]");
    EXPECT_TRUE(local_reidemeister_trace(t.with_region(Region::selection({}))).is_zero());
    EXPECT_THROW(local_reidemeister_trace(t.with_region(Region::selection({5}))),
                 NotACoincidencePoint);

    const AdmissibleTuple rot(AffineTorusMap(IntMatrix{{0, -1}, {1, 0}}), AffineTorusMap::identity(2));
    const auto rt = local_reidemeister_trace(rot);
    EXPECT_EQ(coefficient_sum(rt), 2);
    EXPECT_EQ(rt.terms().size(), 2u);

    const AdmissibleTuple dbl(AffineTorusMap(IntMatrix{{2, 0}, {0, 2}}),
                              AffineTorusMap(IntMatrix{{-1, 0}, {0, -1}}));
    const auto rt_dbl = local_reidemeister_trace(dbl);
    EXPECT_EQ(rt_dbl.terms().size(), 9u);
    for (const auto& [c, k] : rt_dbl.terms()) EXPECT_EQ(k, 1);
    EXPECT_EQ(lefschetz_coincidence(dbl.f(), dbl.g()), 9);
}

TEST(LocalTrace, LefschetzExamples) {
    EXPECT_EQ(lefschetz_coincidence(AffineTorusMap(IntMatrix{{3}}), AffineTorusMap::identity(1)), -2);
    EXPECT_EQ(lefschetz_coincidence(AffineTorusMap(IntMatrix{{0, -1}, {1, 0}}),
                                    AffineTorusMap::identity(2)),
              2);
}

TEST(HomotopyTransport, KeepsTheTrace) {
    const AdmissibleTuple t(AffineTorusMap(IntMatrix{{3}}), AffineTorusMap::identity(1));
    const auto moved = homotopy_transport(t, rat({Rational(1, 4)}), rat({0}));
    EXPECT_EQ(moved.f().c, rat({Rational(1, 4)}));
    EXPECT_EQ(local_reidemeister_trace(moved).str(), "-1[(0)] -1[(1)]");

    const auto part = t.with_region(Region::selection({1}));
    const auto moved_part = homotopy_transport(part, rat({Rational(1, 4)}), rat({Rational(1, 3)}));
    EXPECT_EQ(local_reidemeister_trace(moved_part), local_reidemeister_trace(part));
}

TEST(LocalProperties, PointsMatchBruteForce) {
    std::mt19937_64 rng(51);
    int tested = 0;
    while (tested < 200) {
        const auto n = static_cast<std::size_t>(1 + tested % 3);
        const auto f = random_affine(rng, n, 3);
        const auto g = random_affine(rng, n, 3);
        const Integer det = determinant(g.A - f.A);
        if (det == 0) continue;
        ++tested;
        const auto points = coincidence_points(f, g);
        EXPECT_EQ(Integer(points.size()), abs(det));
        std::set<RatVector> found;
        for (std::size_t i = 0; i < points.size(); ++i) {
            EXPECT_EQ(points[i].id, static_cast<int>(i));
            found.insert(points[i].x);
        }
        EXPECT_EQ(found.size(), points.size());
        EXPECT_EQ(found, brute_force_points(f, g));
    }
}

TEST(LocalProperties, WeckenGroupingMatchesRationalTest) {
    // Two points lie in one class iff their gaps m, m' differ by an element
    // of the image of (B - A), i.e. (B - A)^-1 (m - m') is integral.
    std::mt19937_64 rng(52);
    int tested = 0;
    while (tested < 80) {
        const auto n = static_cast<std::size_t>(1 + tested % 3);
        const auto f = random_affine(rng, n, 3);
        const auto g = random_affine(rng, n, 3);
        if (determinant(g.A - f.A) == 0) continue;
        ++tested;
        const AdmissibleTuple t(f, g, rtrace::test::random_vector(rng, static_cast<int>(n), 2).vector(),
                                rtrace::test::random_vector(rng, static_cast<int>(n), 2).vector());
        const auto points = coincidence_points(f, g);
        std::vector<IntVector> gaps;
        std::vector<ClassId> classes;
        for (const auto& p : points) {
            RatVector m(n);
            const RatVector fx = f.lift(p.x), gx = g.lift(p.x);
            for (std::size_t i = 0; i < n; ++i)
                m[i] = gx[i] + Rational(t.twist_g()[i]) - fx[i] - Rational(t.twist_f()[i]);
            IntVector mi(n);
            for (std::size_t i = 0; i < n; ++i) {
                ASSERT_TRUE(is_integral(m[i]));
                mi[i] = to_integer(m[i]);
            }
            gaps.push_back(mi);
            classes.push_back(point_class(t, p));
        }
        const IntMatrix BA = g.A - f.A;
        for (std::size_t a = 0; a < points.size(); ++a)
            for (std::size_t b = a; b < points.size(); ++b) {
                RatVector diff(n);
                for (std::size_t i = 0; i < n; ++i) diff[i] = Rational(gaps[a][i] - gaps[b][i]);
                bool integral = true;
                for (const auto& q : solve_rational(BA, diff)) integral = integral && is_integral(q);
                EXPECT_EQ(integral, classes[a] == classes[b]);
            }
        // Every point carries the same index, so the trace is index * #points
        // per class and the class count matches the number of terms.
        const auto rt = local_reidemeister_trace(t, points);
        const std::set<ClassId> distinct(classes.begin(), classes.end());
        EXPECT_EQ(rt.terms().size(), distinct.size());
        EXPECT_EQ(coefficient_sum(rt), determinant(BA));
    }
}

TEST(LocalProperties, CircleAgreesWithChainTrace) {
    for (long long d = -6; d <= 6; ++d) {
        if (d == 1) continue;
        Word w;
        for (long long i = 0; i < std::abs(d); ++i) w.push_back(d > 0 ? 1 : -1);
        const WedgeSelfMap m(rtrace::test::free_endo(
            1, {GroupElement::from_letters(GroupDescriptor::free(1), w)}));
        const auto chain = reidemeister_trace_chain(m);
        const AdmissibleTuple t(AffineTorusMap(IntMatrix{{d}}), AffineTorusMap::identity(1));
        const auto local = local_reidemeister_trace(t);
        EXPECT_EQ(chain, local) << "degree " << d;
        EXPECT_EQ(chain.str(), local.str());
    }
}

TEST(LocalProperties, NielsenNumberIsAbsoluteLefschetz) {
    std::mt19937_64 rng(53);
    int tested = 0;
    while (tested < 100) {
        const auto n = static_cast<std::size_t>(1 + tested % 3);
        const auto f = random_affine(rng, n, 4);
        const auto id = AffineTorusMap::identity(n);
        const Integer det = determinant(id.A - f.A);
        if (det == 0) continue;
        ++tested;
        const auto report = nielsen_report(local_reidemeister_trace(AdmissibleTuple(f, id)));
        EXPECT_TRUE(report.exact);
        EXPECT_EQ(report.lower, abs(det));
    }
}
