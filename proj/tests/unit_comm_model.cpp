#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qkdlink/comm/use_case.hpp"
#include "qkdlink/qkd/channel_model.hpp"
#include "support.hpp"

using namespace qkdlink;

namespace {

comm::UseCaseConfig otp_case(std::int64_t n, double f_s, double f_rep) {
    comm::UseCaseConfig cfg;
    cfg.n_signals = n;
    cfg.sampling_rate_hz = f_s;
    cfg.reporting_rate_hz = f_rep;
    cfg.algorithm = crypto::Algorithm::OTP;
    cfg.key_reuse_factor = 1.0;
    return cfg;
}

} // namespace

TEST_CASE("effective period is the slower of the two rates") {
    CHECK(comm::effective_period(otp_case(68, 1, 1)) == 1.0);
    CHECK(comm::effective_period(otp_case(68, 10, 1)) == 1.0);
    CHECK(comm::effective_period(otp_case(68, 10, 10)) ==
          doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("kappa must be a positive integer") {
    CHECK(otp_case(68, 10, 1).kappa() == 10);
    CHECK(otp_case(68, 1, 1).kappa() == 1);
    CHECK_THROWS_AS(otp_case(68, 3, 2).kappa(), std::invalid_argument);
    CHECK_THROWS_AS(otp_case(68, 1, 2).kappa(), std::invalid_argument);
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(otp_case(2000, 1, 1).validate());
    auto bad = otp_case(68, 1, 1);
    bad.precision_bits = 16;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = otp_case(68, 1, 1);
    bad.key_reuse_factor = 0.5; // OTP must keep f_enc = 1
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = otp_case(68, 1, 1);
    bad.sampling_rate_hz = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("per-period key demand") {
    CHECK(comm::key_demand_per_period(otp_case(2000, 1, 1)) == 64000.0);
    CHECK(comm::key_demand_per_period(otp_case(68, 1, 1)) == 2176.0);
    auto aes = otp_case(68, 1, 1);
    aes.algorithm = crypto::Algorithm::AES256;
    aes.key_reuse_factor = comm::reusability_factor(aes);
    CHECK(comm::key_demand_per_period(aes) == 384.0);
    aes.n_signals = 2000; // fixed-key demand is independent of N
    CHECK(comm::key_demand_per_period(aes) == 384.0);
    auto ascon = aes;
    ascon.algorithm = crypto::Algorithm::ASCON128;
    CHECK(comm::key_demand_per_period(ascon) == 256.0);
    ascon.algorithm = crypto::Algorithm::ASCON128A;
    CHECK(comm::key_demand_per_period(ascon) == 256.0);
    ascon.algorithm = crypto::Algorithm::ASCON80PQ;
    CHECK(comm::key_demand_per_period(ascon) == 288.0);
}

TEST_CASE("OTP demand scaling in N, p and kappa") {
    const double base = comm::key_demand_per_period(otp_case(68, 1, 1));
    CHECK(comm::key_demand_per_period(otp_case(136, 1, 1)) == 2.0 * base);
    auto p64 = otp_case(68, 1, 1);
    p64.precision_bits = 64;
    CHECK(comm::key_demand_per_period(p64) == 2.0 * base);
    // halving f_rep doubles kappa and the per-batch demand; the demand per
    // second is unchanged
    const auto k2 = otp_case(68, 1, 0.5);
    CHECK(comm::key_demand_per_period(k2) == 2.0 * base);
    CHECK(comm::key_demand_per_period(k2) / comm::effective_period(k2) ==
          doctest::Approx(base / comm::effective_period(otp_case(68, 1, 1)))
              .epsilon(1e-12));
}

TEST_CASE("reusability factors") {
    CHECK(comm::reusability_factor(otp_case(68, 1, 1)) == 1.0);
    CHECK(comm::reusability_factor(otp_case(2000, 1, 1)) == 1.0);
    auto cfg = otp_case(68, 1, 1);
    cfg.algorithm = crypto::Algorithm::AES256;
    CHECK(std::abs(comm::reusability_factor(cfg) - 0.17) < 0.01);
    CHECK(comm::reusability_factor(cfg) ==
          doctest::Approx(384.0 / 2176.0).epsilon(1e-12));
    cfg.n_signals = 2000;
    CHECK(comm::reusability_factor(cfg) ==
          doctest::Approx(0.006).epsilon(1e-12));
    cfg.algorithm = crypto::Algorithm::ASCON128;
    CHECK(comm::reusability_factor(cfg) ==
          doctest::Approx(0.004).epsilon(1e-12));
    cfg.algorithm = crypto::Algorithm::ASCON80PQ;
    CHECK(comm::reusability_factor(cfg) ==
          doctest::Approx(0.0045).epsilon(1e-12));
}

TEST_CASE("tight availability boundary and monotonicity") {
    const auto uc = otp_case(68, 1, 1);
    CHECK(comm::tight_availability(uc, 2176.0)); // boundary inclusive
    CHECK_FALSE(comm::tight_availability(uc, 2175.0));
    CHECK(comm::tight_availability(otp_case(0, 1, 1), 0.0));
    testsupport::Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const double r = rng.uniform(0.0, 5000.0);
        if (comm::tight_availability(uc, r))
            CHECK(comm::tight_availability(uc, r + rng.uniform(0.0, 1000.0)));
    }
}

TEST_CASE("calibrated availability boundaries") {
    auto skr_at = [](double l) {
        return qkd::secret_key_rate(qkd::default_calibrated_model(l));
    };
    CHECK(comm::tight_availability(otp_case(2000, 1, 1), skr_at(82.0)));
    CHECK_FALSE(comm::tight_availability(otp_case(2000, 1, 1), skr_at(90.0)));
    CHECK(comm::tight_availability(otp_case(68, 1, 1), skr_at(135.0)));
    CHECK_FALSE(comm::tight_availability(otp_case(68, 1, 1), skr_at(140.0)));
}

TEST_CASE("latency record identities and budget") {
    comm::LatencyRecord rec;
    rec.fetch_a_s = 0.010;
    rec.key_a_s = 0.120;
    rec.enc_a_s = 0.030;
    rec.transmit_s = 0.080;
    rec.key_b_s = 0.110;
    rec.dec_b_s = 0.045;
    rec.action_b_s = 0.250;
    CHECK(rec.total_s() ==
          doctest::Approx(rec.qkd_s() + rec.crypto_s() + rec.com_s() +
                          rec.action_b_s)
              .epsilon(1e-15));
    // 0.395 s of budgeted stages fits a 1 s period, not a 0.1 s period
    CHECK(rec.qkd_s() + rec.crypto_s() + rec.com_s() ==
          doctest::Approx(0.395).epsilon(1e-12));
    CHECK(comm::latency_ok(rec, otp_case(2000, 1, 1)));
    CHECK_FALSE(comm::latency_ok(rec, otp_case(2000, 10, 10)));
    CHECK(comm::latency_ok(comm::LatencyRecord{}, otp_case(68, 1, 1)));
}

TEST_CASE("effective period never decreases as reporting slows") {
    for (double f_rep : {10.0, 5.0, 2.0, 1.0}) {
        const auto cfg = otp_case(68, 10, f_rep);
        CHECK(comm::effective_period(cfg) >=
              comm::effective_period(otp_case(68, 10, 10)));
    }
}
