#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ftdiag/diagnose.hpp"
#include "ftdiag/error.hpp"
#include "ftdiag/geometry.hpp"
#include "support.hpp"

using namespace ftdiag;

namespace {

// Intersection-free vector for the shipped biquad (GA seed 1 defaults).
const TestVector kClean{{7.3310080459109086, 0.87728180427387714}};

const std::vector<Trajectory>& clean_trajectories() {
    static const auto t = build_trajectories(test::biquad_simulator(), kClean);
    return t;
}

Trajectory line(const std::string& name, const std::vector<Coords>& pts) {
    Trajectory t;
    t.component = name;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        SignaturePoint p{pts[i], std::nullopt};
        if (i > 0) {
            p.fault = FaultSpec{name, 0.1 * static_cast<double>(i)};
        }
        t.points.push_back(p);
    }
    return t;
}

Coords offgrid_query(const FaultSpec& fault, const TestVector& tv = kClean) {
    const auto& sim = test::biquad_simulator();
    return signature(sim.golden_at(tv.frequencies),
                     evaluate_at(test::biquad(), fault, tv.frequencies));
}

}  // namespace

TEST(Project, Examples) {
    const Coords a{0, 0}, b{2, 0};
    const auto p = project(Coords{1, 1}, a, b);
    EXPECT_DOUBLE_EQ(p.t, 0.5);
    EXPECT_DOUBLE_EQ(p.distance, 1.0);
    EXPECT_TRUE(p.has_perpendicular);
    const auto q = project(Coords{3, 0}, a, b);
    EXPECT_DOUBLE_EQ(q.t_unclamped, 1.5);
    EXPECT_DOUBLE_EQ(q.t, 1.0);
    EXPECT_FALSE(q.has_perpendicular);
    EXPECT_DOUBLE_EQ(q.distance, 1.0);
    EXPECT_EQ(project(Coords{0.7, 0}, a, b).distance, 0.0);
    EXPECT_THROW((void)project(Coords{1, 1}, a, a), ValidationError);
}

TEST(Classify, UnknownPointNearerOfTwo) {
    // two trajectories, the unknown point admits perpendiculars to one
    // segment of each and lies nearer N
    const std::vector<Trajectory> trajs{line("N", {{0, 0}, {2, 0.2}, {4, 0.6}}),
                                        line("P", {{0, 0}, {0.5, 2}, {1, 4}})};
    const Coords unknown{3.0, 1.3};
    const auto r = classify(unknown, trajs);
    ASSERT_EQ(r.hypotheses.size(), 2u);
    EXPECT_EQ(r.hypotheses[0].component, "N");
    EXPECT_TRUE(r.hypotheses[0].via_perpendicular);
    EXPECT_EQ(r.hypotheses[0].segment, 1u);
    EXPECT_TRUE(r.hypotheses[1].via_perpendicular);
    EXPECT_LT(r.hypotheses[0].distance, r.hypotheses[1].distance);
    EXPECT_FALSE(r.nominal);
}

TEST(Classify, VertexFallback) {
    // beyond the far end of both trajectories: no perpendicular foot
    const std::vector<Trajectory> trajs{line("A", {{0, 0}, {1, 0}}), line("B", {{0, 0}, {0, 1}})};
    const auto r = classify(Coords{3, 0.5}, trajs);
    EXPECT_EQ(r.hypotheses[0].component, "A");
    EXPECT_FALSE(r.hypotheses[0].via_perpendicular);
    EXPECT_DOUBLE_EQ(r.hypotheses[0].estimated_deviation, 0.1);
    EXPECT_NEAR(r.hypotheses[0].distance, std::hypot(2.0, 0.5), 1e-15);
}

TEST(Classify, NominalAndAmbiguous) {
    const std::vector<Trajectory> trajs{line("A", {{0, 0}, {1, 0}}), line("B", {{0, 0}, {0, 1}})};
    const auto nominal = classify(Coords{0, 0}, trajs);
    EXPECT_TRUE(nominal.nominal);
    EXPECT_NE(diagnosis_report(nominal).find("nominal / no fault"), std::string::npos);
    EXPECT_TRUE(classify(Coords{5e-7, 0}, trajs).nominal);

    const auto tie = classify(Coords{0.5, 0.5}, trajs);
    EXPECT_TRUE(tie.ambiguous);
    EXPECT_FALSE(classify(Coords{0.8, 0.1}, trajs).ambiguous);
}

TEST(Classify, Errors) {
    const std::vector<Trajectory> trajs{line("A", {{0, 0}, {1, 0}})};
    EXPECT_THROW((void)classify(Coords{1, 2, 3}, trajs), ValidationError);
    EXPECT_THROW((void)classify(Coords{1, 2}, std::vector<Trajectory>{}), ValidationError);
}

TEST(Classify, CleanVectorIsIntersectionFree) {
    EXPECT_EQ(count_intersections(clean_trajectories(), 1e-6).count, 0u);
}

TEST(Classify, OnGridFaultsRoundTrip) {
    for (const auto& t : clean_trajectories()) {
        for (const auto& p : t.points) {
            if (p.golden()) {
                continue;
            }
            const auto r = classify(p.coords, clean_trajectories());
            ASSERT_FALSE(r.nominal);
            EXPECT_EQ(r.hypotheses[0].component, t.component) << p.fault->deviation;
            EXPECT_LE(r.hypotheses[0].distance, 1e-9);
            EXPECT_NEAR(r.hypotheses[0].estimated_deviation, p.deviation(), 1e-9);
        }
    }
}

TEST(Classify, OffGridResistorFault) {
    for (const std::string id : {"R1", "R2", "R3", "R4", "R5"}) {
        const auto r = classify(offgrid_query({id, 0.15}), clean_trajectories());
        EXPECT_EQ(r.hypotheses[0].component, id);
        EXPECT_GT(r.hypotheses[0].estimated_deviation, 0.10) << id;
        EXPECT_LT(r.hypotheses[0].estimated_deviation, 0.20) << id;
    }
}

TEST(Classify, CsvLayout) {
    const auto r = classify(offgrid_query({"R3", 0.2}), clean_trajectories());
    const auto csv = diagnosis_to_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "rank,component,distance_db,est_deviation,via_perpendicular");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 8);
}

TEST(ClassifyProperty, GlobalMinimality) {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 300; ++i) {
        const Coords q{u(gen), u(gen)};
        const auto r = classify(q, clean_trajectories());
        if (r.nominal) {
            continue;
        }
        const double top = r.hypotheses[0].distance;
        for (std::size_t k = 1; k < r.hypotheses.size(); ++k) {
            EXPECT_LE(r.hypotheses[k - 1].distance, r.hypotheses[k].distance);
        }
        for (const auto& t : clean_trajectories()) {
            for (std::size_t s = 0; s < t.segment_count(); ++s) {
                const auto& a = t.points[s];
                const auto& b = t.points[s + 1];
                if (!a.golden()) {
                    EXPECT_LE(top, distance(q, a.coords));
                }
                const auto p = project(q, a.coords, b.coords);
                if (p.has_perpendicular && p.t > 1e-6 && p.t < 1.0 - 1e-6) {
                    EXPECT_LE(top, p.distance + 1e-15);
                }
            }
        }
    }
}

TEST(ClassifyProperty, MonotoneDegradation) {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> u(-2.0, 2.0), angle(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 300; ++i) {
        const Coords q{u(gen), u(gen)};
        const double eps = std::pow(10.0, u(gen) - 1.0);
        const double a = angle(gen);
        const Coords noisy{q[0] + eps * std::cos(a), q[1] + eps * std::sin(a)};
        const auto base = classify(q, clean_trajectories());
        const auto moved = classify(noisy, clean_trajectories());
        if (base.nominal || moved.nominal) {
            continue;
        }
        EXPECT_LE(moved.hypotheses[0].distance, base.hypotheses[0].distance + eps + 1e-12);
    }
}

TEST(ClassifyProperty, CoordinateSwap) {
    const TestVector swapped{{kClean.frequencies[1], kClean.frequencies[0]}};
    const auto trajs_swapped = build_trajectories(test::biquad_simulator(), swapped);
    std::mt19937_64 gen(29);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const Coords q{u(gen), u(gen)};
        const auto a = classify(q, clean_trajectories());
        const auto b = classify(Coords{q[1], q[0]}, trajs_swapped);
        ASSERT_EQ(a.hypotheses.size(), b.hypotheses.size());
        for (std::size_t k = 0; k < a.hypotheses.size(); ++k) {
            EXPECT_EQ(a.hypotheses[k].component, b.hypotheses[k].component);
            EXPECT_NEAR(a.hypotheses[k].distance, b.hypotheses[k].distance, 1e-12);
        }
    }
}
