#include <gtest/gtest.h>

#include "property_checks.hpp"

using namespace csg;

namespace {

constexpr std::size_t kCases = 200;

void expect_property(std::size_t index) {
    const auto& p = props::all_properties().at(index);
    EXPECT_EQ(props::run_property(p, kCases), "") << p.name;
}

} // namespace

TEST(Properties, CurvatureSymmetryValidation) { expect_property(0); }
TEST(Properties, RawIsSkewAdjoint) { expect_property(1); }
TEST(Properties, ThetaIsSelfAdjoint) { expect_property(2); }
TEST(Properties, FrameIndependence) { expect_property(3); }
TEST(Properties, OrthogonalActionInvariance) { expect_property(4); }
TEST(Properties, HypersurfaceClosedForm) { expect_property(5); }
TEST(Properties, WorkerDeterminism) { expect_property(6); }
