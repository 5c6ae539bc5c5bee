#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ftdiag/error.hpp"
#include "ftdiag/geometry.hpp"
#include "ftdiag/trajectory.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ftdiag;

namespace {

// Trajectory through `pts`; the point at `golden` (if any) is the golden one.
Trajectory make(const std::string& name, const std::vector<Coords>& pts,
                std::optional<std::size_t> golden = 0) {
    Trajectory t;
    t.component = name;
    const long g = golden ? static_cast<long>(*golden) : -1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        SignaturePoint p{pts[i], std::nullopt};
        if (static_cast<long>(i) != g) {
            p.fault = FaultSpec{name, 0.1 * (static_cast<double>(i) - static_cast<double>(g))};
        }
        t.points.push_back(p);
    }
    return t;
}

std::vector<Trajectory> biquad_at(std::vector<double> tv) {
    return build_trajectories(test::biquad_simulator(), TestVector{std::move(tv)});
}

}  // namespace

TEST(Trajectory, SignatureExamples) {
    const std::vector<double> h{-3.0, -10.0}, k{-5.0, -9.0};
    EXPECT_EQ(signature(h, h), (Coords{0.0, 0.0}));
    EXPECT_EQ(signature(h, k), (Coords{-2.0, 1.0}));
    const std::vector<double> one{-4.0}, two{-1.5};
    EXPECT_EQ(signature(one, two), Coords{2.5});
    EXPECT_THROW((void)signature(h, one), ValidationError);
}

TEST(Trajectory, DefaultShape) {
    const auto trajs = biquad_at({0.5, 2.0});
    ASSERT_EQ(trajs.size(), 7u);
    for (const auto& t : trajs) {
        EXPECT_EQ(t.points.size(), 9u);
        EXPECT_EQ(t.segment_count(), 8u);
        EXPECT_EQ(t.dimension(), 2u);
        EXPECT_FALSE(t.degenerate);
        std::size_t golden = 0;
        for (std::size_t i = 0; i < t.points.size(); ++i) {
            if (t.points[i].golden()) {
                ++golden;
                EXPECT_EQ(i, 4u);
                EXPECT_EQ(t.points[i].coords, (Coords{0.0, 0.0}));
            }
            if (i > 0) {
                EXPECT_LT(t.points[i - 1].deviation(), t.points[i].deviation());
            }
        }
        EXPECT_EQ(golden, 1u);
    }
    EXPECT_EQ(trajs[0].component, "R1");
}

TEST(Trajectory, SmallGridShape) {
    FaultConfig f{{"R1", "C1"}, 0.9, 1.1, 0.1};
    const auto trajs = build_trajectories(test::biquad(), f, TestVector{{0.5, 2.0}});
    ASSERT_EQ(trajs.size(), 2u);
    EXPECT_EQ(trajs[0].points.size(), 3u);
    EXPECT_EQ(trajs[0].segment_count(), 2u);
}

TEST(Trajectory, OneDimensionalAndDegenerate) {
    const auto one = biquad_at({0.7});
    EXPECT_EQ(one[0].dimension(), 1u);
    const auto dup = biquad_at({0.7, 0.7});
    EXPECT_TRUE(dup[0].degenerate);
    EXPECT_TRUE((TestVector{{1.0, 1.0}}.degenerate()));
    EXPECT_THROW(validate(TestVector{}), ValidationError);
    EXPECT_THROW(validate(TestVector{{1.0, -2.0}}), ValidationError);
}

TEST(Intersections, XConfiguration) {
    const std::vector<Trajectory> trajs{make("A", {{0, 0}, {1, 1}, {2, 0}}),
                                        make("B", {{0, 0}, {1, 0}, {2, 1}})};
    const auto report = count_intersections(trajs, 1e-6);
    ASSERT_EQ(report.count, 1u);
    EXPECT_EQ(report.detail[0].kind, ContactKind::Cross);
    EXPECT_NEAR(report.detail[0].point[0], 1.5, 1e-12);
    EXPECT_NEAR(report.detail[0].point[1], 0.5, 1e-12);
    EXPECT_EQ(report.detail[0].segment_a, 1u);
    EXPECT_EQ(report.detail[0].segment_b, 1u);
}

TEST(Intersections, ParallelDisjoint) {
    const std::vector<Trajectory> trajs{make("A", {{0, 1}, {1, 2}}, std::nullopt),
                                        make("B", {{1, 1}, {2, 2}}, std::nullopt)};
    EXPECT_EQ(count_intersections(trajs, 1e-6).count, 0u);
}

TEST(Intersections, TouchAtOriginOnly) {
    const std::vector<Trajectory> trajs{make("A", {{0, 0}, {1, 0}, {2, 0.5}}),
                                        make("B", {{0, 0}, {0, 1}, {-1, 2}})};
    EXPECT_EQ(count_intersections(trajs, 1e-6).count, 0u);
    EXPECT_EQ(count_intersections(trajs, 1e-6, 0.0).count, 1u);
}

TEST(Intersections, SharedVertexCountsOnce) {
    // B passes exactly through A's interior vertex (1, 1)
    const std::vector<Trajectory> trajs{make("A", {{0, 0}, {1, 1}, {2, 0}}),
                                        make("B", {{0, 0}, {0, 1.5}, {2, 0.5}})};
    const auto report = count_intersections(trajs, 1e-6);
    EXPECT_EQ(report.count, 1u);
}

TEST(Intersections, CollinearOverlap) {
    const std::vector<Trajectory> trajs{make("A", {{0, 0}, {1, 0}, {2, 0}}),
                                        make("B", {{0, 0}, {0, 1}, {0.5, 1}, {0.5, 0}, {1.5, 0}})};
    const auto report = count_intersections(trajs, 1e-6);
    const auto overlaps = std::count_if(report.detail.begin(), report.detail.end(),
                                        [](const Incidence& i) { return i.kind == ContactKind::Overlap; });
    // B's last segment lies on A's two segments
    EXPECT_EQ(overlaps, 2);
}

TEST(Intersections, MixedDimensions) {
    const std::vector<Trajectory> trajs{make("A", {{0, 0}, {1, 0}}), make("B", {{0}, {1}})};
    EXPECT_THROW((void)count_intersections(trajs, 1e-6), ValidationError);
}

TEST(IntersectionsProperty, RadiatingLinesHaveNoCrossings) {
    std::vector<Trajectory> trajs;
    for (int k = 0; k < 7; ++k) {
        const double a = 0.4 * k + 0.1;
        std::vector<Coords> pts;
        for (int i = -4; i <= 4; ++i) {
            pts.push_back({i * std::cos(a), i * std::sin(a)});
        }
        trajs.push_back(make("T" + std::to_string(k), pts, 4));
    }
    EXPECT_EQ(count_intersections(trajs, 1e-6).count, 0u);
    // without the exclusion every pair meets at the golden point
    EXPECT_GE(count_intersections(trajs, 1e-6, 0.0).count, 21u);
}

TEST(IntersectionsProperty, PermutationAndPairDecomposition) {
    const std::vector<std::vector<double>> vectors{{1.0, 2.0}, {0.3, 3.0}, {0.1, 10.0},
                                                   {0.8, 1.2}, {5.0, 0.05}};
    std::mt19937_64 gen(3);
    for (const auto& tv : vectors) {
        auto trajs = biquad_at(tv);
        const auto total = count_intersections(trajs, 1e-6).count;
        std::size_t pairwise = 0;
        for (std::size_t i = 0; i < trajs.size(); ++i) {
            for (std::size_t j = i + 1; j < trajs.size(); ++j) {
                pairwise += count_pair(trajs[i], trajs[j], 1e-6, 1e-6);
            }
        }
        EXPECT_EQ(total, pairwise);
        for (int rep = 0; rep < 10; ++rep) {
            std::shuffle(trajs.begin(), trajs.end(), gen);
            EXPECT_EQ(count_intersections(trajs, 1e-6).count, total);
        }
    }
}

TEST(IntersectionsProperty, TranslationInvariance) {
    const std::vector<std::vector<double>> vectors{{1.0, 2.0}, {0.3, 3.0}, {0.8, 1.2},
                                                   {0.01, 0.4}};
    bool saw_nonzero = false;
    for (const auto& tv : vectors) {
        const auto trajs = biquad_at(tv);
        auto moved = trajs;
        for (auto& t : moved) {
            for (auto& p : t.points) {
                p.coords[0] += 0.75;
                p.coords[1] -= 2.5;
            }
        }
        const auto a = count_intersections(trajs, 1e-6).count;
        EXPECT_EQ(a, count_intersections(moved, 1e-6).count);
        saw_nonzero = saw_nonzero || a > 0;
    }
    EXPECT_TRUE(saw_nonzero);
}

TEST(IntersectionsProperty, AgreesWithBruteForce) {
    constexpr double kTol = 1e-3;
    test::SegmentPairSource source(2024);
    const Coords far_center{-100.0, -100.0};
    std::size_t checked = 0, contacts = 0, overlaps = 0;
    while (checked < 1000) {
        const auto [a0, a1, b0, b1] = source.next();
        const double d = test::sampled_distance(a0, a1, b0, b1);
        if (d >= kTol / 10 && d <= kTol * 10) {
            continue;
        }
        const bool expected = d < kTol;
        const auto contact = segment_contact(a0, a1, b0, b1, kTol, far_center, 0.0);
        EXPECT_EQ(contact.has_value(), expected)
            << "a=(" << a0[0] << "," << a0[1] << ")-(" << a1[0] << "," << a1[1] << ") b=(" << b0[0]
            << "," << b0[1] << ")-(" << b1[0] << "," << b1[1] << ") d=" << d;
        const std::vector<Trajectory> pair{make("A", {a0, a1}, std::nullopt),
                                           make("B", {b0, b1}, std::nullopt)};
        EXPECT_EQ(count_intersections(pair, kTol).count, expected ? 1u : 0u);
        contacts += expected;
        overlaps += contact && contact->kind == ContactKind::Overlap;
        ++checked;
    }
    // both outcomes well represented
    EXPECT_GT(contacts, 200u);
    EXPECT_LT(contacts, 800u);
    EXPECT_GT(overlaps, 50u);
}

TEST(Geometry, ClosestPointsAnyDimension) {
    const Coords a0{0, 0, 0}, a1{1, 0, 0}, b0{0.5, 1, -1}, b1{0.5, 1, 1};
    const auto cp = closest_points(a0, a1, b0, b1);
    EXPECT_NEAR(cp.distance, 1.0, 1e-15);
    EXPECT_NEAR(cp.on_a[0], 0.5, 1e-15);
    const auto near = segment_contact(a0, a1, Coords{0.5, 0, -1}, Coords{0.5, 0, 1}, 1e-6,
                                      Coords{9, 9, 9}, 0.0);
    ASSERT_TRUE(near.has_value());
    EXPECT_EQ(near->kind, ContactKind::Cross);
}

TEST(Trajectory, CsvRoundTrip) {
    const auto trajs = biquad_at({0.5, 2.0});
    const auto csv = trajectories_to_csv(trajs);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "component,deviation,x1,x2");
    const auto back = parse_trajectories_csv(csv);
    ASSERT_EQ(back.size(), trajs.size());
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        EXPECT_EQ(back[i].component, trajs[i].component);
        ASSERT_EQ(back[i].points.size(), trajs[i].points.size());
        for (std::size_t k = 0; k < trajs[i].points.size(); ++k) {
            EXPECT_EQ(back[i].points[k].coords, trajs[i].points[k].coords);
            EXPECT_EQ(back[i].points[k].golden(), trajs[i].points[k].golden());
            EXPECT_EQ(back[i].points[k].deviation(), trajs[i].points[k].deviation());
        }
    }
    EXPECT_EQ(trajectories_to_csv(back), csv);
}

TEST(Trajectory, CsvParseErrors) {
    EXPECT_THROW((void)parse_trajectories_csv(""), ParseError);
    EXPECT_THROW((void)parse_trajectories_csv("a,b,c\n"), ParseError);
    EXPECT_THROW((void)parse_trajectories_csv("component,deviation,x1,x2\nR1,0.1,1\n"), ParseError);
    EXPECT_THROW((void)parse_trajectories_csv("component,deviation,x1,x2\nR1,0.1,1,zz\n"),
                 ParseError);
}
