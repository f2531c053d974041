#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qswitch/egs.hpp"
#include "qswitch/hardware.hpp"
#include "qswitch/lleg.hpp"
#include "qswitch/rng.hpp"

using namespace qswitch;

TEST_CASE("end-to-end success probability") {
  const HardwareProfile p = HardwareProfile::baseline();
  // 0.03961^2 * 0.81 * 0.5
  CHECK(egs_e2e_prob(p) == doctest::Approx(0.0006353549422343884).epsilon(1e-12));

  HardwareProfile off = p;
  off.beta = 0.0;
  CHECK(egs_e2e_prob(off) == 0.0);

  // with perfect detectors, analyzers and optics the end-to-end probability
  // collapses to p_pair^2 (the all-perfect limit evaluates to 1 as p_pair -> 1)
  HardwareProfile perfect = p;
  perfect.detector_eff = 1.0;
  perfect.p_bsa = 1.0;
  perfect.attenuation = 0.0;
  perfect.gate_eff_mem = 1.0;
  perfect.gate_eff_switch = 1.0;
  for (double beta : {0.01, 0.3, 2.0, 1.0e6}) {
    perfect.beta = beta;
    const double pp = pair_emission_prob(beta);
    CHECK(egs_e2e_prob(perfect) == doctest::Approx(pp * pp).epsilon(1e-12));
  }
}

TEST_CASE("maximum total throughput") {
  const HardwareProfile p = HardwareProfile::baseline();
  const ArchitectureMetrics m = egs_max_total_rate(p);
  CHECK(m.rate_total == doctest::Approx(50828.39537875107).epsilon(1e-12));
  CHECK(m.rate_normalized == doctest::Approx(3388.559691916738).epsilon(1e-12));
  CHECK(m.rate_normalized * p.n_flows() == doctest::Approx(m.rate_total).epsilon(1e-9));
  CHECK(m.slot_duration == doctest::Approx(1.0e-7).epsilon(1e-14));
  CHECK(m.architecture == "egs");

  SUBCASE("no stations, no rate") {
    HardwareProfile q = p;
    q.bsm_budget = 0;
    CHECK(egs_max_total_rate(q).rate_total == 0.0);
  }
  SUBCASE("dominated node limits the allocation") {
    HardwareProfile q = p;
    q.n_clients = 2;
    q.multiplex = {10, 1};
    q.mem_per_client = {10, 1};
    // E_max = min{8, 5, 1} = 1
    const double expected = egs_e2e_prob(q) * q.pulse_rate * 1.0;
    CHECK(egs_max_total_rate(q).rate_total == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("duty factor scales the rate") {
    const ArchitectureMetrics half = egs_max_total_rate(p, 0.5);
    CHECK(half.rate_total == doctest::Approx(0.5 * m.rate_total).epsilon(1e-14));
    CHECK_THROWS_AS(egs_max_total_rate(p, 1.5), std::domain_error);
  }
}

TEST_CASE("end-to-end fidelity") {
  const HardwareProfile p = HardwareProfile::baseline();
  const FidelityResult f = egs_fidelity(p);
  CHECK(f.werner == doctest::Approx(0.8270534918106032).epsilon(1e-12));
  CHECK(f.fidelity == doctest::Approx(0.8702901188579524).epsilon(1e-12));
  CHECK(f.fidelity == doctest::Approx((1.0 + 3.0 * f.werner) / 4.0).epsilon(1e-14));

  SUBCASE("decoherence-free limit") {
    HardwareProfile q = p;
    q.q_bsm = 1.0;
    q.coherence_time = 1.0e18;  // exp argument underflows to 0 exactly
    const double w0 = q.initial_werner();
    CHECK(egs_fidelity(q).werner == w0 * w0);
  }
  SUBCASE("perfect source gives unit fidelity") {
    HardwareProfile q = p;
    q.beta = 0.0;
    q.q_bsm = 1.0;
    q.coherence_time = 1.0e18;
    CHECK(egs_fidelity(q).fidelity == 1.0);
  }
}

TEST_CASE("fidelity is independent of rate-side knobs") {
  const HardwareProfile p = HardwareProfile::baseline();
  const FidelityResult base = egs_fidelity(p);

  HardwareProfile q = p;
  q.pulse_rate = 123456.0;
  CHECK(egs_fidelity(q).fidelity == base.fidelity);

  q = p;
  q.multiplex.assign(p.n_clients, 7);
  CHECK(egs_fidelity(q).fidelity == base.fidelity);

  q = p;
  q.bsm_budget = 1;
  CHECK(egs_fidelity(q).fidelity == base.fidelity);
}

TEST_CASE("rate and fidelity monotonicities") {
  const HardwareProfile p = HardwareProfile::baseline();

  SUBCASE("rate is nondecreasing in beta") {
    double prev = 0.0;
    for (double beta = 0.0; beta <= 2.0; beta += 0.05) {
      HardwareProfile q = p;
      q.beta = beta;
      const double rate = egs_max_total_rate(q).rate_total;
      CHECK(rate >= prev);
      prev = rate;
    }
  }
  SUBCASE("rate is nonincreasing in length, fidelity strictly decreasing") {
    double prev_rate = 1.0e18;
    double prev_fid = 2.0;
    for (double l = 0.1; l <= 20.0; l *= 1.7) {
      HardwareProfile q = p;
      q.link_length = l;
      CHECK(egs_max_total_rate(q).rate_total <= prev_rate);
      const double fid = egs_fidelity(q).fidelity;
      CHECK(fid < prev_fid);
      prev_rate = egs_max_total_rate(q).rate_total;
      prev_fid = fid;
    }
  }
  SUBCASE("fidelity strictly decreasing in beta") {
    double prev = 2.0;
    for (double beta = 0.005; beta <= 0.3; beta += 0.01) {
      HardwareProfile q = p;
      q.beta = beta;
      const double fid = egs_fidelity(q).fidelity;
      CHECK(fid < prev);
      prev = fid;
    }
  }
  SUBCASE("rate is exactly linear in the pulse rate") {
    HardwareProfile q = p;
    q.pulse_rate = 2.0 * p.pulse_rate;
    CHECK(egs_max_total_rate(q).rate_total == 2.0 * egs_max_total_rate(p).rate_total);
  }
}
