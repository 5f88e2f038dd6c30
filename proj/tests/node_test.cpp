#include <doctest.h>

#include <random>

#include "fogsim/node.hpp"
#include "oracles.hpp"

using namespace fogsim;

namespace {

FogNode paper_fog_node() {
  FogNode n;
  n.id = 0;
  n.mips = 15100.0;
  n.processing_units = 1;
  n.idle_power_w = 83.4333;
  n.busy_power_w = 107.339;
  n.offloading_threshold = from_ms(50.0);
  n.power = PowerState::On;
  return n;
}

}  // namespace

TEST_CASE("expected process time") {
  FogNode n = paper_fog_node();
  CHECK(to_ms(n.expected_process_time_mi(1000.0)) == doctest::Approx(66.2252).epsilon(1e-5));
  CHECK(to_ms(n.expected_process_time_mi(900.0)) == doctest::Approx(59.6026).epsilon(1e-5));

  FogNode cloudish = n;
  cloudish.mips = 448000.0;
  CHECK(to_ms(cloudish.expected_process_time_mi(1000.0)) ==
        doctest::Approx(2.2321).epsilon(1e-4));

  FogNode dual = n;
  dual.processing_units = 2;
  CHECK(dual.expected_process_time_mi(1000.0) * 2 ==
        doctest::Approx(static_cast<double>(n.expected_process_time_mi(1000.0))).epsilon(1e-6));
}

TEST_CASE("queue waiting time") {
  FogNode n = paper_fog_node();

  SUBCASE("empty and idle is zero") {
    CHECK(n.queue_waiting_time(0) == 0);
  }

  SUBCASE("two priority and one non-urgent task queued, idle processor") {
    n.push_task(1, n.expected_process_time_mi(1000.0));
    n.push_task(2, n.expected_process_time_mi(1000.0));
    n.push_task(3, n.expected_process_time_mi(900.0));
    CHECK(to_ms(n.queue_waiting_time(0)) == doctest::Approx(192.053).epsilon(1e-5));
  }

  SUBCASE("residual of the task in service counts") {
    n.processing = true;
    n.in_service = 9;
    n.in_service_done = from_ms(25.0);
    CHECK(n.queue_waiting_time(from_ms(15.0)) == from_ms(10.0));
    CHECK(n.queue_waiting_time(from_ms(25.0)) == 0);
  }
}

TEST_CASE("threshold comparison is strict") {
  FogNode n = paper_fog_node();
  n.push_task(1, n.expected_process_time_mi(1000.0));
  n.push_task(2, n.expected_process_time_mi(1000.0));
  n.push_task(3, n.expected_process_time_mi(900.0));
  CHECK(n.threshold_exceeded(0));  // 192.05 > 50

  FogNode m = paper_fog_node();
  CHECK_FALSE(m.threshold_exceeded(0));  // 0 > 50 is false

  FogNode eq = paper_fog_node();
  eq.offloading_threshold = from_ms(10.0);
  eq.push_task(1, from_ms(10.0));
  CHECK_FALSE(eq.threshold_exceeded(0));  // equality does not trigger
  eq.push_task(2, 1);
  CHECK(eq.threshold_exceeded(0));

  FogNode inf = paper_fog_node();
  inf.offloading_threshold = kTimeNever;
  inf.push_task(1, from_ms(1e9));
  CHECK_FALSE(inf.threshold_exceeded(0));
}

TEST_CASE("fifo queue order and work accounting") {
  FogNode n = paper_fog_node();
  n.push_task(10, 100);
  n.push_task(11, 200);
  n.push_task(12, 300);
  CHECK(n.queued_work() == 600);
  CHECK(n.pop_task().id == 10);
  CHECK(n.pop_task().id == 11);
  CHECK(n.queued_work() == 300);
  CHECK(n.pop_task().id == 12);
  CHECK(n.queue_empty());
  CHECK(n.queued_work() == 0);
}

TEST_CASE("queue estimate equals naive FIFO replay on random queues") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> cpu(1.0, 5000.0);
  std::uniform_real_distribution<double> mips(1000.0, 500000.0);
  for (int iter = 0; iter < 2000; ++iter) {
    FogNode n;
    n.id = 0;
    n.mips = mips(rng);
    n.processing_units = 1 + static_cast<int>(rng() % 4);
    SimTime residual = 0;
    if (rng() % 2 == 0) {
      n.processing = true;
      n.in_service = 999;
      residual = static_cast<SimTime>(rng() % 100000000);
      n.in_service_done = residual;  // query at now = 0
    }
    std::vector<double> lengths;
    int count = static_cast<int>(rng() % 100);
    for (int i = 0; i < count; ++i) {
      double c = cpu(rng);
      lengths.push_back(c);
      n.push_task(i, n.expected_process_time_mi(c));
    }
    CHECK(n.queue_waiting_time(0) ==
          testing::naive_wait_replay(lengths, n.mips, n.processing_units, residual));
  }
}

TEST_CASE("node store lookup") {
  FogNode a = paper_fog_node();
  a.id = 4;
  FogNode b = paper_fog_node();
  b.id = 2;
  NodeStore store({a, b});
  CHECK(store.by_id(2).id == 2);
  CHECK(store.by_id(4).id == 4);
  CHECK(store.all().front().id == 2);
  CHECK_THROWS_AS(store.by_id(7), ValidationError);
}
