#include <doctest.h>

#include <cmath>

#include "lansa/analytic_fields.hpp"
#include "lansa/errors.hpp"
#include "lansa/forward.hpp"
#include "lansa/operators.hpp"
#include "lansa/transforms.hpp"
#include "lansa/verification.hpp"
#include "oracles.hpp"

using namespace lansa;

namespace {

GridSpec grid(int n = 8, double dt = 0.01, int steps = 16) {
  GridSpec g;
  g.n = n;
  g.dt = dt;
  g.n_steps = steps;
  return g;
}

double max_state_gap(const StateTrajectory& a, const StateTrajectory& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.snapshots.size(); ++n) m = std::max(m, l2_norm(a.snapshots[n] - b.snapshots[n]));
  return m;
}

}  // namespace

TEST_SUITE("lans_forward") {
  TEST_CASE("B vanishes when either argument is zero") {
    const GridSpec g = grid();
    Rng rng(1);
    const SpectralField u = random_solenoidal(g, rng), z(g);
    CHECK(l2_norm(bilinear_B(z, u, 0.3)) == 0.0);
    CHECK(l2_norm(bilinear_B(u, z, 0.3)) == 0.0);
    CHECK(l2_norm(linearized_Bu(u, z, 0.3)) == 0.0);
    CHECK(l2_norm(linearized_Bu(z, u, 0.3)) == 0.0);
  }

  TEST_CASE("B matches refined-grid quadrature for sin(x1) e2 and sin(x2) e1") {
    for (Dealiasing d : {Dealiasing::ThreeHalves, Dealiasing::TwoThirds}) {
      GridSpec g = grid(8);
      g.dealias = d;
      PhysicalField up(g), vp(g);
      for (int iz = 0; iz < g.n; ++iz)
        for (int iy = 0; iy < g.n; ++iy)
          for (int ix = 0; ix < g.n; ++ix) {
            up.at(1, g.flat(ix, iy, iz)) = std::sin(grid_coordinate(g, ix));
            vp.at(0, g.flat(ix, iy, iz)) = std::sin(grid_coordinate(g, iy));
          }
      const SpectralField u = leray_project(to_spectral(up)), v = leray_project(to_spectral(vp));
      const double alpha = 1.0;
      const auto ref = oracle::refined_B(
          g, [](double x, double, double) { return std::array<double, 3>{0.0, std::sin(x), 0.0}; },
          [](double x, double, double) {
            std::array<std::array<double, 3>, 3> j{};
            j[1][0] = std::cos(x);
            return j;
          },
          [=](double, double y, double) { return std::array<double, 3>{(1 + alpha) * std::sin(y), 0.0, 0.0}; },
          [=](double, double y, double) {
            std::array<std::array<double, 3>, 3> j{};
            j[0][1] = (1 + alpha) * std::cos(y);
            return j;
          });
      const SpectralField b = bilinear_B(u, v, alpha);
      double worst = 0.0, peak = 0.0;
      for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.points(); ++i) {
          worst = std::max(worst, std::abs(b.at(c, i) - ref[c][i]));
          peak = std::max(peak, std::abs(ref[c][i]));
        }
      CHECK(peak == doctest::Approx(0.5));  // (1 + alpha) sin x cos y e1 -> |c| = 2 / 4
      CHECK(worst < 1e-14);
    }
  }

  TEST_CASE("skew symmetry for random fields at several filter widths") {
    const GridSpec g = grid();
    for (double a : {0.0, 0.1, 1.0}) {
      const CheckReport r = check_skew_symmetry(10, g, a, 77);
      CHECK_MESSAGE(r.passed, to_json(r).dump());
    }
  }

  TEST_CASE("D(A)' bound on B has a resolution-independent constant") {
    double worst8 = 0.0, worst16 = 0.0;
    for (int n : {8, 16}) {
      const GridSpec g = grid(n);
      Rng rng(31);
      double& w = n == 8 ? worst8 : worst16;
      for (int t = 0; t < 10; ++t) {
        const SpectralField u = random_solenoidal(g, rng, 2), v = random_solenoidal(g, rng, 2);
        w = std::max(w, da_dual_norm(leray_project(bilinear_B(u, v, 0.5))) / (v_norm(u) * da_norm(v)));
      }
    }
    CHECK(worst8 > 0.0);
    CHECK(worst8 < 1.0);
    CHECK(worst16 < 1.0);
  }

  TEST_CASE("exact quadratic remainder of B") {
    const GridSpec g = grid();
    Rng rng(2);
    const SpectralField u = random_solenoidal(g, rng), w = random_solenoidal(g, rng);
    for (double a : {0.0, 0.4}) {
      const SpectralField lhs = bilinear_B(u + w, u + w, a) - bilinear_B(u, u, a) - linearized_Bu(u, w, a);
      const SpectralField rhs = bilinear_B(w, w, a);
      CHECK(l2_norm(lhs - rhs) <= 1e-13 * l2_norm(bilinear_B(u + w, u + w, a)));
    }
  }

  TEST_CASE("non-solenoidal input is a contract violation") {
    const GridSpec g = grid();
    Rng rng(3);
    SpectralField bad = to_spectral(random_physical(g, rng));
    const SpectralField u = random_solenoidal(g, rng);
    CHECK_THROWS_AS(bilinear_B(bad, u, 0.1), ContractViolation);
    CHECK_THROWS_AS(bilinear_B(u, bad, 0.1), ContractViolation);
  }

  TEST_CASE("zero state with zero control stays zero") {
    const GridSpec g = grid();
    const StateTrajectory s = solve_forward(SpectralField(g), ControlField::zeros(g), {0.1, 0.05});
    REQUIRE(s.snapshots.size() == 17);
    for (const auto& u : s.snapshots) CHECK(l2_norm(u) == 0.0);
  }

  TEST_CASE("single small mode decays like the closed-form linear solution") {
    const GridSpec g = grid(8, 0.01, 50);
    const ModelParams p{0.2, 0.3};
    const double eps = 1e-4;
    const SpectralField u0 = single_mode(g, {1, 1, 0}, eps, {0, 0, 1});
    const StateTrajectory s = solve_forward(u0, ControlField::zeros(g), p);
    const double k2 = 2.0;
    for (int n = 1; n <= g.n_steps; ++n) {
      const double got = l2_norm(s.snapshots[n]) / l2_norm(u0);
      CHECK(got == doctest::Approx(std::pow(1.0 + p.nu * g.dt * k2, -n)).epsilon(1e-13));
      const double exact = std::exp(-p.nu * k2 * n * g.dt);
      CHECK(std::abs(got - exact) <= 0.5 * std::pow(p.nu * k2, 2) * n * g.dt * g.dt * 1.05);
    }
    const CheckReport r = check_mode_decay(g, p, {1, 1, 0});
    CHECK_MESSAGE(r.passed, to_json(r).dump());
  }

  TEST_CASE("manufactured solution converges at first order") {
    const ModelParams p{0.1, 0.2};
    const double T = 0.5;
    auto error_at_T = [&](int steps) {
      const GridSpec g = grid(8, T / steps, steps);
      Rng rng(44);
      const SpectralField a = random_solenoidal(g, rng, 2), b = random_solenoidal(g, rng, 2);
      auto ustar = [&](double t) { return std::cos(t) * a + std::sin(t) * b; };
      std::vector<SpectralField> forcing;
      for (int n = 0; n < steps; ++n) {
        const double t = n * g.dt;
        const SpectralField ut = -std::sin(t) * a + std::cos(t) * b;
        const SpectralField u = ustar(t);
        SpectralField f = apply_helmholtz(ut, p.alpha);
        f += p.nu * apply_helmholtz(apply_stokes(u), p.alpha);
        f += leray_project(bilinear_B(u, u, p.alpha));
        f.set_divergence_free(true);
        forcing.push_back(std::move(f));
      }
      const StateTrajectory s = solve_forward(ustar(0.0), forcing, p);
      return l2_norm(s.final_state() - ustar(T)) / l2_norm(ustar(T));
    };
    const double e1 = error_at_T(16), e2 = error_at_T(32), e3 = error_at_T(64);
    MESSAGE("manufactured errors ", e1, " ", e2, " ", e3);
    CHECK(e1 < 0.05);
    CHECK(e1 / e2 >= 1.7);
    CHECK(e1 / e2 <= 2.3);
    CHECK(e2 / e3 >= 1.7);
    CHECK(e2 / e3 <= 2.3);
  }

  TEST_CASE("unforced energy decreases strictly for random initial data") {
    const GridSpec g = grid();
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
      const CheckReport r = check_energy_decay(g, {0.1, 0.05}, random_solenoidal(g, rng));
      CHECK_MESSAGE(r.passed, to_json(r).dump());
      CHECK(r.context["strictly_decreasing"].get<bool>());
    }
  }

  TEST_CASE("forced energy budget holds along a trajectory") {
    const GridSpec g = grid();
    Rng rng(6);
    const ControlField v = random_control(g, rng, 2.0);
    const StateTrajectory s = solve_forward(0.3 * random_solenoidal(g, rng), v, {0.1, 0.05});
    const EnergyBudget b = energy_budget(s, &v);
    CHECK(b.constant == doctest::Approx(1.0 / 0.05));
    CHECK(b.worst_excess() <= 1e-12);
  }

  TEST_CASE("divergence-free and zero-mean snapshots") {
    const GridSpec g = grid();
    Rng rng(7);
    const StateTrajectory s = solve_forward(random_solenoidal(g, rng), random_control(g, rng, 1.0), {0.1, 0.05});
    for (const auto& u : s.snapshots) {
      CHECK(divergence_defect(u) < 1e-12);
      CHECK(std::abs(u.at(0, 0)) + std::abs(u.at(1, 0)) + std::abs(u.at(2, 0)) == 0.0);
    }
  }

  TEST_CASE("runaway forcing raises a blow-up error with the step index") {
    const GridSpec g = grid();
    Rng rng(8);
    ControlField v = random_control(g, rng, 1e12);
    try {
      (void)solve_forward(SpectralField(g), v, {0.1, 0.05});
      FAIL("expected BlowUpError");
    } catch (const BlowUpError& e) {
      CHECK(e.step() == 1);
    }
  }

  TEST_CASE("tangent model") {
    const GridSpec g = grid();
    const ModelParams p{0.1, 0.05};
    Rng rng(9);
    const SpectralField u0 = random_solenoidal(g, rng);
    const ControlField v = random_control(g, rng, 1.0);
    const StateTrajectory s = solve_forward(u0, v, p);

    SUBCASE("zero source gives zero tangent") {
      std::vector<SpectralField> zero(g.n_steps, SpectralField(g));
      const StateTrajectory w = solve_linearized(s, zero, p);
      for (const auto& x : w.snapshots) CHECK(l2_norm(x) == 0.0);
    }
    SUBCASE("zero base state gives the pure linear evolution") {
      const StateTrajectory zero = solve_forward(SpectralField(g), ControlField::zeros(g), p);
      const ControlField dv = random_control(g, rng, 1.0);
      const auto src = inject_control(dv);
      const StateTrajectory w = solve_linearized(zero, src, p);
      for (int n = 0; n < g.n_steps; ++n) {
        // (I + nu dt A) w_{n+1} = w_n + dt (I - alpha Lap)^-1 g_n
        SpectralField r = w.snapshots[n + 1] + p.nu * g.dt * apply_stokes(w.snapshots[n + 1]);
        r -= w.snapshots[n];
        r -= g.dt * invert_helmholtz(src[n], p.alpha);
        CHECK(l2_norm(r) <= 1e-14 * (l2_norm(w.snapshots[n]) + g.dt * l2_norm(src[n])));
      }
    }
    SUBCASE("finite differences of the state converge to the tangent at first order") {
      const ControlField dv = random_control(g, rng, 1.0);
      const StateTrajectory w = solve_linearized(s, inject_control(dv), p);
      auto gap = [&](double eps) {
        ControlField ve = v;
        ve.axpy(eps, dv);
        const StateTrajectory se = solve_forward(u0, ve, p);
        double m = 0.0;
        for (std::size_t n = 0; n < se.snapshots.size(); ++n)
          m = std::max(m, l2_norm((1.0 / eps) * (se.snapshots[n] - s.snapshots[n]) - w.snapshots[n]));
        return m;
      };
      const double g1 = gap(1e-3), g2 = gap(5e-4);
      CHECK(g1 < 1e-3 * l2_norm(w.final_state()) * 10);
      CHECK(g1 / g2 == doctest::Approx(2.0).epsilon(0.05));
    }
  }

  TEST_CASE("filter width to zero recovers the Navier-Stokes limit") {
    const GridSpec g = grid(8, 0.02, 16);
    const SpectralField u0 = taylor_green(g, 1.0);
    const StateTrajectory a = solve_forward(u0, ControlField::zeros(g), {1e-6, 0.05});
    const StateTrajectory b = solve_forward(u0, ControlField::zeros(g), {0.0, 0.05});
    CHECK(l2_norm(a.final_state() - b.final_state()) <= 1e-4 * l2_norm(b.final_state()));
    CHECK(max_state_gap(a, b) <= 1e-4 * l2_norm(u0));
  }
}
