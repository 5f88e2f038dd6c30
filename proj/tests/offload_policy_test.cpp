#include <doctest.h>

#include <random>

#include "fogsim/offload_policy.hpp"
#include "oracles.hpp"

using namespace fogsim;

namespace {

// Primary node 0 with neighbours 1 and 2; node 3 sits out of range.
Topology three_node_topology() {
  LinkLatencyTable table;
  return Topology({{0, {0, 0}, 100.0},
                   {1, {60, 0}, 100.0},
                   {2, {0, 60}, 100.0},
                   {3, {5000, 0}, 100.0}},
                  {}, table, kSpeedOfLightMps, LatencyMode::TableLatency);
}

FogNode fog_node(NodeId id, SimTime threshold = from_ms(50.0)) {
  FogNode n;
  n.id = id;
  n.mips = 15100.0;
  n.idle_power_w = 83.4333;
  n.busy_power_w = 107.339;
  n.offloading_threshold = threshold;
  n.power = PowerState::On;
  return n;
}

// Fills a node's queue with dummy tasks summing to roughly `wait`.
void load_queue(FogNode& n, SimTime wait) {
  if (wait > 0) n.push_task(1000 + n.id, wait);
}

CloudConfig paper_cloud() {
  return {448000.0, 1e6, 1e6, 1648.0, 1332.0};
}

Task priority_task() {
  Task t;
  t.id = 1;
  t.type = TaskType::PriorityRequest;
  t.cpu_length_mi = 1000.0;
  t.network_length = 1000.0;
  return t;
}

}  // namespace

TEST_CASE("neighbour selection minimises queue wait plus link latency") {
  Topology topo = three_node_topology();

  SUBCASE("lower queue wins when links are equal") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    load_queue(nodes.by_id(1), from_ms(10.0));
    load_queue(nodes.by_id(2), from_ms(30.0));
    auto best = select_best_neighbour(0, topo, nodes, 0);
    REQUIRE(best.has_value());
    CHECK(*best == 1);  // 12 ms beats 32 ms
  }

  SUBCASE("queue difference dominates equal propagation") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    load_queue(nodes.by_id(1), from_ms(10.0));
    load_queue(nodes.by_id(2), from_ms(4.0));
    auto best = select_best_neighbour(0, topo, nodes, 0);
    REQUIRE(best.has_value());
    CHECK(*best == 2);
  }

  SUBCASE("ties break to the lowest id") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    load_queue(nodes.by_id(1), from_ms(5.0));
    load_queue(nodes.by_id(2), from_ms(5.0));
    CHECK(*select_best_neighbour(0, topo, nodes, 0) == 1);
  }

  SUBCASE("no neighbours yields nothing") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    CHECK_FALSE(select_best_neighbour(3, topo, nodes, 0).has_value());
  }
}

TEST_CASE("argmin matches exhaustive enumeration and is scale invariant") {
  std::mt19937 rng(41);
  Topology topo = three_node_topology();
  for (int iter = 0; iter < 1000; ++iter) {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    load_queue(nodes.by_id(1), static_cast<SimTime>(rng() % 50000000));
    load_queue(nodes.by_id(2), static_cast<SimTime>(rng() % 50000000));
    std::vector<NeighbourCost> costs = neighbour_costs(0, topo, nodes, 0);
    std::vector<std::pair<NodeId, SimTime>> flat, scaled;
    for (const NeighbourCost& c : costs) {
      flat.emplace_back(c.id, c.total);
      scaled.emplace_back(c.id, c.total * 3);
    }
    auto expected = testing::brute_force_best(flat);
    auto chosen = select_best_neighbour(0, topo, nodes, 0);
    REQUIRE(expected.has_value());
    REQUIRE(chosen.has_value());
    CHECK(*chosen == *expected);
    CHECK(*testing::brute_force_best(scaled) == *expected);
  }
}

TEST_CASE("cloud round trip cost") {
  Topology topo = three_node_topology();
  FogNode primary = fog_node(0);
  primary.bw_uplink = 1e6;
  PolicyConfig policy;
  Task t = priority_task();
  // 2 * (100 ms link + 0.001 ms transmission) + 2.2321 ms processing
  CHECK(to_ms(cloud_round_trip_cost(t, primary, topo, paper_cloud(), policy)) ==
        doctest::Approx(202.2341).epsilon(1e-5));
  policy.cloud_compare_includes_processing = false;
  CHECK(to_ms(cloud_round_trip_cost(t, primary, topo, paper_cloud(), policy)) ==
        doctest::Approx(200.002).epsilon(1e-6));
}

TEST_CASE("cloud process time") {
  CHECK(to_ms(cloud_process_time(paper_cloud(), 1000.0)) ==
        doctest::Approx(2.2321).epsilon(1e-4));
  CHECK(to_ms(cloud_process_time(paper_cloud(), 300.0)) ==
        doctest::Approx(0.6696).epsilon(1e-3));
}

TEST_CASE("scheduling decision follows the flowchart") {
  Topology topo = three_node_topology();
  CloudConfig cloud = paper_cloud();
  PolicyConfig policy;
  policy.offloading_threshold = from_ms(50.0);
  Task t = priority_task();

  SUBCASE("first task at an empty idle node runs immediately") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    OffloadDecision d = decide(t, nodes.by_id(0), topo, nodes, cloud, policy, 0);
    CHECK(d.action == OffloadAction::ProcessLocally);
    CHECK(d.local_reason == LocalReason::ImmediateFirstTask);
  }

  SUBCASE("under the threshold the task queues locally") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    load_queue(nodes.by_id(0), from_ms(40.0));
    OffloadDecision d = decide(t, nodes.by_id(0), topo, nodes, cloud, policy, 0);
    CHECK(d.action == OffloadAction::ProcessLocally);
    CHECK(d.local_reason == LocalReason::UnderThreshold);
  }

  SUBCASE("a threshold equal to the wait does not trigger offloading") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    load_queue(nodes.by_id(0), from_ms(50.0));
    OffloadDecision d = decide(t, nodes.by_id(0), topo, nodes, cloud, policy, 0);
    CHECK(d.action == OffloadAction::ProcessLocally);
    CHECK(d.local_reason == LocalReason::UnderThreshold);
  }

  SUBCASE("over threshold goes to the cheapest neighbour") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    load_queue(nodes.by_id(0), from_ms(192.0));
    load_queue(nodes.by_id(1), from_ms(10.0));
    load_queue(nodes.by_id(2), from_ms(30.0));
    OffloadDecision d = decide(t, nodes.by_id(0), topo, nodes, cloud, policy, 0);
    CHECK(d.action == OffloadAction::OffloadToNeighbour);
    CHECK(d.target == 1);
    REQUIRE(d.candidates.size() == 2);
  }

  SUBCASE("an already offloaded task queues unconditionally") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    load_queue(nodes.by_id(0), from_ms(192.0));
    Task hop = t;
    hop.already_offloaded = true;
    OffloadDecision d = decide(hop, nodes.by_id(0), topo, nodes, cloud, policy, 0);
    CHECK(d.action == OffloadAction::ProcessLocally);
    CHECK(d.local_reason == LocalReason::AlreadyOffloaded);
  }

  SUBCASE("busy neighbours push the choice to the cloud comparison") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    for (FogNode& n : nodes.all()) n.bw_uplink = 1e6;
    load_queue(nodes.by_id(1), from_ms(300.0));
    load_queue(nodes.by_id(2), from_ms(300.0));

    // 192 ms local wait < ~202.23 ms cloud round trip: stay local.
    load_queue(nodes.by_id(0), from_ms(192.0));
    OffloadDecision d = decide(t, nodes.by_id(0), topo, nodes, cloud, policy, 0);
    CHECK(d.action == OffloadAction::ProcessLocally);
    CHECK(d.local_reason == LocalReason::CloudNotWorthIt);
    CHECK(d.cloud_compared);

    // 210 ms local wait > cloud round trip: ship it.
    NodeStore nodes2({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    for (FogNode& n : nodes2.all()) n.bw_uplink = 1e6;
    load_queue(nodes2.by_id(1), from_ms(300.0));
    load_queue(nodes2.by_id(2), from_ms(300.0));
    load_queue(nodes2.by_id(0), from_ms(210.0));
    OffloadDecision d2 = decide(t, nodes2.by_id(0), topo, nodes2, cloud, policy, 0);
    CHECK(d2.action == OffloadAction::SendToCloud);
  }

  SUBCASE("the selected neighbour is re-checked, not replaced") {
    // Best neighbour over its threshold pushes straight to the cloud
    // comparison even though the other neighbour is idle but costlier.
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    for (FogNode& n : nodes.all()) n.bw_uplink = 1e6;
    load_queue(nodes.by_id(0), from_ms(400.0));
    load_queue(nodes.by_id(1), from_ms(60.0));   // cheapest but over threshold
    load_queue(nodes.by_id(2), from_ms(70.0));
    OffloadDecision d = decide(t, nodes.by_id(0), topo, nodes, cloud, policy, 0);
    CHECK(d.action == OffloadAction::SendToCloud);
  }

  SUBCASE("a node without neighbours only queues or uses the cloud") {
    NodeStore nodes({fog_node(0), fog_node(1), fog_node(2), fog_node(3)});
    for (FogNode& n : nodes.all()) n.bw_uplink = 1e6;
    load_queue(nodes.by_id(3), from_ms(400.0));
    OffloadDecision d = decide(t, nodes.by_id(3), topo, nodes, cloud, policy, 0);
    CHECK(d.action == OffloadAction::SendToCloud);
    CHECK(d.candidates.empty());
  }

  SUBCASE("an infinite threshold never offloads") {
    PolicyConfig inf = policy;
    inf.offloading_threshold = kTimeNever;
    NodeStore nodes({fog_node(0, kTimeNever), fog_node(1, kTimeNever),
                     fog_node(2, kTimeNever), fog_node(3, kTimeNever)});
    load_queue(nodes.by_id(0), from_ms(1e7));
    OffloadDecision d = decide(t, nodes.by_id(0), topo, nodes, cloud, inf, 0);
    CHECK(d.action == OffloadAction::ProcessLocally);
    CHECK(d.local_reason == LocalReason::UnderThreshold);
  }
}
