#include "nfield/control.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "nfield/field_io.hpp"
#include "nfield/stimuli.hpp"

namespace nfield {
namespace {

using std::numbers::pi;

Model linear_model(double mu = 1.0) { return Model{mu, ResponseKind::linear(), DoGParams::canonical()}; }
Model rational_model() { return Model{1.0, ResponseKind::rational(), DoGParams::canonical()}; }

Field plane_wave(const GridSpec& s, double xi1, double xi2) {
  return sample(s, [&](double x1, double x2) { return std::cos(2 * pi * (xi1 * x1 + xi2 * x2)); });
}

TEST(Semigroup, Basics) {
  GridSpec s(10, 64);
  const auto p = DoGParams::canonical();
  const Field u = random_smooth_field(s, 1);
  EXPECT_EQ(norm(semigroup_apply(0.0, u, 1.0, p) - u, Norm::Linf), 0.0);
  const double xi2 = s.frequency(17);
  const Field w = plane_wave(s, 0, xi2);
  EXPECT_LT(norm(semigroup_apply(0.8, w, 1.0, p) - std::exp(0.8 * (omega_hat(p, 0, xi2) - 1)) * w,
                 Norm::Linf),
            1e-14);
  for (double t : {0.1, 1.0, 5.0}) EXPECT_LT(norm(semigroup_apply(t, u, 1.9, p), Norm::L2), norm(u, Norm::L2));
  EXPECT_THROW(semigroup_apply(-1.0, u, 1.0, p), InvalidArgument);
}

TEST(LinearControl, ZeroProblemZeroControl) {
  GridSpec s(5, 32);
  const auto r = linear_control({Field::zeros(s), Field::zeros(s), 1.0, linear_model()});
  EXPECT_EQ(norm(r.control(), Norm::Linf), 0.0);
  EXPECT_TRUE(r.success);
}

TEST(LinearControl, SingleModeToTarget) {
  GridSpec s(10, 128);
  const double xi2 = s.frequency(20);
  const Field target = plane_wave(s, 0, xi2);
  const auto r = linear_control({Field::zeros(s), target, 1.0, linear_model()});
  EXPECT_LE(r.endpoint_error, 1e-10);
  // Scalar algebra per mode: I = lambda / (e^{lambda} - 1).
  const double lam = omega_hat(DoGParams::canonical(), 0, xi2) - 1;
  EXPECT_LT(norm(r.control() - (lam / std::expm1(lam)) * target, Norm::Linf), 1e-12);
}

TEST(LinearControl, EndpointMatchesTimeIntegration) {
  GridSpec s(5, 64);
  const Field a0 = random_smooth_field(s, 2), a1 = random_smooth_field(s, 3);
  const auto r = linear_control({a0, a1, 0.5, linear_model()});
  ASSERT_TRUE(r.success);
  const Field end = flow(a0, r.control(), linear_model(), 0.5, 1e-3, Scheme::ETD2);
  EXPECT_LT(norm(end - a1, Norm::Linf), 1e-6);
}

TEST(LinearControl, RejectsStrongCoupling) {
  GridSpec s(5, 32);
  EXPECT_THROW(linear_control({Field::zeros(s), Field::zeros(s), 1.0, linear_model(2.5)}),
               ContractionViolation);
}

TEST(TauMax, LambertBound) {
  const double t = tau_max(1.0, 2.0);
  EXPECT_NEAR(t * 1.5 * std::exp(1.5 * t), 1.0, 1e-14);
  EXPECT_NEAR(t, 0.378095, 1e-6);
}

TEST(SmallTime, HoldStateWithLinearKind) {
  GridSpec s(5, 64);
  const Field a0 = random_smooth_field(s, 4);
  const auto r = small_time_control({a0, a0, 0.05, linear_model()});
  EXPECT_LE(r.endpoint_error, 1e-10);
  // Holding a0 needs I = -A a0 = a0 - mu omega * a0.
  const Field expect = a0 - convolve(sample_kernel(DoGParams::canonical(), s), a0);
  EXPECT_LT(norm(r.control() - expect, Norm::Linf), 1e-10);
}

TEST(SmallTime, LinearAgreesWithExplicitFormula) {
  GridSpec s(5, 64);
  const Field a0 = random_smooth_field(s, 5), a1 = random_smooth_field(s, 6);
  const ControlProblem p{a0, a1, 0.1, linear_model()};
  const auto st = small_time_control(p);
  const auto ex = linear_control(p);
  EXPECT_LE(st.endpoint_error, 1e-8);
  EXPECT_LE(std::abs(st.endpoint_error - ex.endpoint_error), 1e-8);
  EXPECT_LT(norm(st.control() - ex.control(), Norm::Linf), 1e-8);
}

TEST(SmallTime, HorizonTooLong) {
  GridSpec s(5, 32);
  EXPECT_THROW(small_time_control({Field::zeros(s), Field::zeros(s), 0.5, linear_model()}), HorizonTooLong);
}

TEST(SmallTime, RationalShooting) {
  GridSpec s(5, 64);
  const Field a0 = random_smooth_field(s, 7, 0.8), a1 = random_smooth_field(s, 8, 1.0);
  const auto r = small_time_control({a0, a1, 0.1, rational_model()});
  EXPECT_TRUE(r.success);
  EXPECT_LE(r.endpoint_error, 1e-4);
  EXPECT_LE(r.iterations, 50);
}

TEST(TwoPhase, DecayThenSteer) {
  GridSpec s(5, 64);
  const Field a0 = random_smooth_field(s, 9, 1.0), a1 = random_smooth_field(s, 10, 0.7);
  const auto r = two_phase_control({a0, a1, 10.0, rational_model()}, 0.1);
  ASSERT_EQ(r.schedule.size(), 2u);
  EXPECT_EQ(norm(r.schedule[0].control, Norm::Linf), 0.0);
  EXPECT_DOUBLE_EQ(r.schedule[1].t_start, 9.9);
  EXPECT_LE(r.endpoint_error, 1e-4);
  EXPECT_TRUE(r.success);
}

TEST(TwoPhase, ZeroTargetNeedsLittleControl) {
  GridSpec s(5, 64);
  const Field a0 = random_smooth_field(s, 11, 1.0);
  const auto r = two_phase_control({a0, Field::zeros(s), 10.0, linear_model()}, 0.1);
  const double decay_bound = std::exp(-0.5 * 9.9) * norm(a0, Norm::Linf);
  EXPECT_LE(norm(r.schedule[1].control, Norm::Linf), 20 * decay_bound);
  EXPECT_LE(r.endpoint_error, 1e-10);
}

TEST(FlowDifferential, SmallTimeBound) {
  GridSpec s(5, 64);
  const auto m = rational_model();
  const Field a0 = random_smooth_field(s, 12, 1.5);
  const Field I = random_smooth_field(s, 13, 1.0);
  const double t = 0.2, c = 1.5;
  const double eps = 1e-6;
  const Field base = flow(a0, I, m, t, 1e-3, Scheme::ETD2);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const Field v = random_smooth_field(s, 100 + k, 1.0, 2.0);
    const Field d = (1.0 / eps) * (flow(a0 + eps * v, I, m, t, 1e-3, Scheme::ETD2) - base);
    worst = std::max(worst, norm(d - v, Norm::Linf));
  }
  EXPECT_LE(worst, t * c * std::exp(c * t) + 0.05);
}

TEST(Schedule, CsvReferencesFieldFiles) {
  GridSpec s(5, 32);
  const auto r = two_phase_control({random_smooth_field(s, 1), Field::zeros(s), 2.0, linear_model()}, 0.1);
  const auto dir = std::filesystem::temp_directory_path() / "nf_sched";
  std::filesystem::create_directories(dir);
  write_schedule_csv(dir / "plan.csv", r);
  std::ifstream is(dir / "plan.csv");
  std::string header, row0, row1;
  std::getline(is, header);
  std::getline(is, row0);
  std::getline(is, row1);
  EXPECT_EQ(header, "t_start,t_end,field");
  EXPECT_EQ(row0, "0,1.8999999999999999,plan_0.nfld");
  EXPECT_NE(row1.find("plan_1.nfld"), std::string::npos);
  EXPECT_EQ(read_field(dir / "plan_1.nfld").spec(), s);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace nfield
