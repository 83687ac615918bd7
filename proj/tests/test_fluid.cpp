#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "seedshare/fluid.hpp"
#include "seedshare/scenario.hpp"
#include "test_support.hpp"

using namespace seedshare;
using namespace seedshare::test;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SwarmParams swarm(double mu, double eta, double cap, double server,
                  double gamma) {
  SwarmParams sw;
  sw.peer_upload = mu;
  sw.downloader_upload_factor = eta;
  sw.download_cap = cap;
  sw.server_capacity = server;
  sw.seed_departure_rate = gamma;
  sw.efficiency_mode =
      eta == 1.0 ? EfficiencyMode::efficient : EfficiencyMode::inefficient;
  return sw;
}

}  // namespace

TEST_CASE("service rate") {
  SUBCASE("no downloaders, nothing to serve") {
    CHECK(service_rate(0.0, 10.0, swarm(0.5, 1.0, kInf, 3.0, 1.0)) == 0.0);
  }
  SUBCASE("efficient mode counts downloader upload") {
    CHECK(service_rate(1.0, 1.0, swarm(0.5, 1.0, kInf, 0.0, 1.0)) ==
          doctest::Approx(1.0));
  }
  SUBCASE("inefficient mode is limited by seeds plus server") {
    CHECK(service_rate(10.0, 4.0, swarm(0.5, 0.0, 1.0, 2.0, 1.0)) ==
          doctest::Approx(4.0));
  }
  SUBCASE("download cap binds when upload is plentiful") {
    CHECK(service_rate(2.0, 100.0, swarm(1.0, 1.0, 1.5, 10.0, 1.0)) ==
          doctest::Approx(3.0));
  }
}

TEST_CASE("delay estimate") {
  CHECK(delay_estimate(0.0, 5.0, swarm(0.5, 1.0, kInf, 0.0, 1.0)) == 0.0);
  // Service pinned to 2 by the per-downloader cap.
  CHECK(delay_estimate(4.0, 4.0, swarm(0.5, 0.0, 0.5, 0.0, 1.0)) ==
        doctest::Approx(2.0));
  // Inefficient swarm with no seeds and no server is dead.
  CHECK(delay_estimate(3.0, 0.0, swarm(0.5, 0.0, kInf, 0.0, 1.0)) == kInf);
}

TEST_CASE("swarm validation ties the upload factor to the mode") {
  SwarmParams sw = swarm(1.0, 1.0, 2.0, 0.0, 0.5);
  CHECK_NOTHROW(sw.validate());
  sw.downloader_upload_factor = 0.5;
  CHECK_THROWS_AS(sw.validate(), std::invalid_argument);
  sw = swarm(1.0, 0.0, 2.0, 0.0, 0.5);
  CHECK_NOTHROW(sw.validate());
  sw.seed_departure_rate = 0.0;
  CHECK_THROWS_AS(sw.validate(), std::invalid_argument);
}

TEST_CASE("empty market only receives arrivals") {
  Scenario sc = default_scenario();
  const MarketState d = fluid_rhs(MarketState{}, 0.0, sc);
  CHECK(d.x_legal + d.x_illicit == doctest::Approx(30.0));  // p * M
  CHECK(d.adopters == doctest::Approx(30.0));
  CHECK(d.y_legal == 0.0);
  CHECK(d.y_illicit == 0.0);
  CHECK(d.completed_legal == 0.0);
  CHECK(d.completed_illicit == 0.0);
}

TEST_CASE("sharing with zero behavioral response only moves money") {
  Scenario sc = no_competition_scenario();
  MarketState state;
  state.x_legal = 20.0;
  state.y_legal = 10.0;
  state.adopters = 50.0;
  state.completed_legal = 30.0;

  sc.econ.share_fraction = 0.0;
  const MarketState d0 = fluid_rhs(state, 0.0, sc);
  sc.econ.share_fraction = 0.5;
  const MarketState d1 = fluid_rhs(state, 0.0, sc);

  CHECK(d0.x_legal == d1.x_legal);
  CHECK(d0.y_legal == d1.y_legal);
  CHECK(d0.x_illicit == d1.x_illicit);
  CHECK(d0.y_illicit == d1.y_illicit);
  CHECK(d0.adopters == d1.adopters);
  CHECK(d0.completed_legal == d1.completed_legal);
  CHECK(d0.shared_revenue == 0.0);
  CHECK(d1.shared_revenue == doctest::Approx(0.5 * d1.gross_revenue));
  CHECK(d1.gross_revenue == d0.gross_revenue);
}

TEST_CASE("single-swarm fixed point") {
  const Scenario sc = fixed_point_scenario();
  MarketState star;
  star.x_legal = 1.0;
  star.y_legal = 1.0;
  star.adopters = 100.0;
  star.completed_legal = 99.0;

  SUBCASE("the rhs vanishes at the analytic fixed point") {
    const MarketState d = fluid_rhs(star, 0.0, sc);
    CHECK(d.x_legal == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.y_legal == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("the integrator converges to it") {
    const Trajectory traj =
        integrate(sc.initial_state, sc, sc.horizon, sc.dt);
    CHECK(traj.final_state().x_legal == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(traj.final_state().y_legal == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("zero demand and zero state stay identically zero") {
  Scenario sc = default_scenario();
  sc.demand.kind = ConstantDemand{0.0};
  const Trajectory traj = integrate(MarketState{}, sc, 10.0, 0.01);
  for (const MarketState& s : traj.states) {
    CHECK(s.x_legal == 0.0);
    CHECK(s.y_legal == 0.0);
    CHECK(s.x_illicit == 0.0);
    CHECK(s.adopters == 0.0);
    CHECK(s.gross_revenue == 0.0);
  }
}

TEST_CASE("pure Bass run exhausts the market") {
  Scenario sc = default_scenario();
  // Disable purchases entirely; only the adoption dynamics remain active.
  sc.econ.price = 0.0;
  const double t_star = bass_peak_time(std::get<BassParams>(sc.demand.kind));
  const Trajectory traj =
      integrate(MarketState{}, sc, 5.0 * t_star, sc.dt);
  CHECK(traj.final_state().adopters == doctest::Approx(1000.0).epsilon(0.01));
}

TEST_CASE("trajectory invariants on the default scenario") {
  const Scenario sc = default_scenario();
  const Trajectory traj = integrate(sc.initial_state, sc, sc.horizon, sc.dt);
  const double m = sc.demand.market_cap();
  REQUIRE(traj.states.size() > 100);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const MarketState& s = traj.states[i];
    CHECK(s.x_legal >= 0.0);
    CHECK(s.y_legal >= 0.0);
    CHECK(s.x_illicit >= 0.0);
    CHECK(s.y_illicit >= 0.0);
    CHECK(s.adopters <= m);
    // Every adopter is downloading or has completed.
    const double balance =
        s.adopters - (s.x_legal + s.x_illicit + s.completed_legal +
                      s.completed_illicit);
    CHECK(std::abs(balance) <= 1e-6 * m);
    // Shared ledger is exactly proportional.
    CHECK(std::abs(s.shared_revenue -
                   sc.econ.share_fraction * s.gross_revenue) <=
          1e-9 * std::max(s.gross_revenue, 1.0));
    if (i > 0) {
      CHECK(traj.times[i] > traj.times[i - 1]);
      CHECK(traj.times[i] - traj.times[i - 1] ==
            doctest::Approx(sc.recording_interval).epsilon(1e-9));
    }
  }
}

TEST_CASE("halving the step barely changes the result") {
  const Scenario sc = default_scenario();
  const double g1 =
      integrate(sc.initial_state, sc, sc.horizon, sc.dt).final_state()
          .gross_revenue;
  const double g2 =
      integrate(sc.initial_state, sc, sc.horizon, sc.dt / 2).final_state()
          .gross_revenue;
  // The competitive scenario has switching clamps, so convergence is slower
  // than on a smooth problem; 1% is the accuracy contract here.
  CHECK(std::abs(g2 - g1) < 1e-2 * std::abs(g1));
}

TEST_CASE("observed convergence order is fourth order") {
  // Measured on the cumulative revenue functional; per-population
  // observables can sit near a clamp and muddy the Richardson ratio.
  const Scenario sc = smooth_scenario();
  const auto final_y = [&](double dt) {
    return integrate(sc.initial_state, sc, sc.horizon, dt)
        .final_state()
        .gross_revenue;
  };
  const double c = final_y(0.2);
  const double f = final_y(0.1);
  const double ff = final_y(0.05);
  const double order = std::log2(std::abs(c - f) / std::abs(f - ff));
  CHECK(order > 3.5);
  CHECK(order < 4.5);
}

TEST_CASE("integrate rejects bad steps") {
  const Scenario sc = default_scenario();
  CHECK_THROWS_AS(integrate(sc.initial_state, sc, sc.horizon, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(sc.initial_state, sc, 0.005, 0.01),
                  std::invalid_argument);
  MarketState bad;
  bad.x_legal = -1.0;
  CHECK_THROWS_AS(integrate(bad, sc, sc.horizon, sc.dt),
                  std::invalid_argument);
}
