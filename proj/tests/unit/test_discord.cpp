#include "helpers.hpp"
#include "../oracles.hpp"
#include "qcal/caloric.hpp"
#include "qcal/discord.hpp"
#include "qcal/thermal.hpp"

using namespace qcal;

TEST_CASE("pair correlation") {
  const auto r = pair_correlation(1.0, 1.0);
  CHECK_NEAR(r.c_z, oracle::dimer_czz_average(1, 1), 1e-14);
  CHECK_NEAR(r.c_z, -0.93056, 1e-5);
  CHECK_NEAR(r.c_x, r.c_z, 1e-13);
  CHECK_NEAR(r.c_y, r.c_z, 1e-13);
  CHECK(r.J == 1.0);
  CHECK(r.T == 1.0);
  CHECK(std::abs(pair_correlation(1.0, 1e8).c_z) < 1e-7);
  CHECK(std::abs(pair_correlation(-2.0, 1e8).c_z) < 1e-7);
  CHECK_NEAR(pair_correlation(1.0, 0.01).c_z, -1.0, 1e-12);
  CHECK_NEAR(pair_correlation(-1.0, 0.01).c_z, 1.0 / 3.0, 1e-12);
  CHECK_QCAL_ERROR(pair_correlation(1.0, 0.0), ErrorCode::NonPositiveTemperature);
}

TEST_CASE("discord from correlation") {
  CHECK(discord_from_correlation(CorrelationRecord{1.0, 1.0, 0.0, 0.0, 0.0, 0.0}) == 0.0);
  CHECK_NEAR(discord_from_correlation(pair_correlation(1.0, 1.0)), 0.46528, 1e-5);
  CHECK_NEAR(discord_from_correlation(pair_correlation(-1.0, 0.01)), 1.0 / 6.0, 1e-12);
  CHECK_QCAL_ERROR(discord_from_correlation(CorrelationRecord{1.0, 1.0, -0.5, -0.5, -0.4, 0.0}),
                   ErrorCode::AnisotropicState);
}

TEST_CASE("discord from susceptibility") {
  CHECK(discord_from_susceptibility(0.5, 1.0) == 0.0);
  CHECK(discord_from_susceptibility(0.0, 2.0) == 0.5);
  const double chi = zero_field_susceptibility(build_dimer(1.0, 0.0, "J"), 1.0);
  CHECK_NEAR(chi, 0.03472, 1e-5);
  CHECK_NEAR(discord_from_susceptibility(chi, 1.0), discord_from_correlation(pair_correlation(1.0, 1.0)), 1e-10);
  CHECK_QCAL_ERROR(discord_from_susceptibility(-1e-3, 1.0), ErrorCode::NegativeSusceptibility);
  CHECK_QCAL_ERROR(discord_from_susceptibility(0.1, 0.0), ErrorCode::NonPositiveTemperature);
}

TEST_CASE("molar susceptibility reduction") {
  // Curie constant of two free spins per mole of dimers: 2 * N_A g^2 mu_B^2 / (4 k_B)
  const UnitSystem u;
  const double per_dimer_curie = 0.5;  // T chi for two free spins, reduced units
  const double molar = per_dimer_curie * 0.375148 * u.g * u.g;  // emu K / mol
  CHECK_NEAR(reduce_molar_susceptibility(molar, u), per_dimer_curie, 1e-4);
}

TEST_CASE("discord temperature derivative") {
  for (double J : {-1.0, 0.5, 2.0}) {
    const double h = 1e-5;
    const double fd = (discord_from_correlation(pair_correlation(J, 1.0 + h)) -
                       discord_from_correlation(pair_correlation(J, 1.0 - h))) / (2 * h);
    CHECK_NEAR(discord_temperature_derivative(J, 1.0), fd, 1e-8);
  }
}

TEST_CASE("entropy change from discord") {
  const double direct = -static_cast<double>(oracle::dimer_entropy(1.5, 0, 1) - oracle::dimer_entropy(0.5, 0, 1));
  const auto r = entropy_change_from_discord(0.5, 1.5, 1.0);
  CHECK_NEAR(r.value, direct, 1e-8);
  CHECK_NEAR(r.value, 0.8666, 1e-3);
  CHECK(r.kind == CaloricKind::EntropyChange);
  CHECK(entropy_change_from_discord(0.7, 0.7, 1.0).value == 0.0);
  const double inverse = static_cast<double>(oracle::dimer_entropy(-0.5, 0, 1) - oracle::dimer_entropy(-1.5, 0, 1));
  CHECK_NEAR(entropy_change_from_discord(-1.5, -0.5, 1.0).value, inverse, 1e-8);
  CHECK_NEAR(inverse, 0.12467, 1e-5);
  CHECK_QCAL_ERROR(entropy_change_from_discord(-0.5, 0.5, 1.0), ErrorCode::SignCrossing);
  CHECK_QCAL_ERROR(entropy_change_from_discord(0.0, 0.5, 1.0), ErrorCode::SignCrossing);
  CHECK_QCAL_ERROR(entropy_change_from_discord(0.5, 1.0, 0.0), ErrorCode::NonPositiveTemperature);
}

TEST_CASE("discord decreases with temperature") {
  for (double J : {-1.0, 0.5, 3.0}) {
    double prev = 1.0;
    for (int k = 0; k < 40; ++k) {
      const double t = 0.05 * std::abs(4 * J) * std::pow(1000.0, k / 39.0);
      const double d = discord_from_correlation(pair_correlation(J, t));
      CHECK(d <= prev + 1e-12);
      CHECK(d >= 0.0);
      CHECK(d <= 0.5);
      prev = d;
    }
  }
}
