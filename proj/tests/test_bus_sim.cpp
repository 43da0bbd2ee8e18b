#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "goosesec/bus_sim.hpp"
#include "goosesec/codec.hpp"
#include "test_support.hpp"

using namespace goosesec;

TEST_CASE("events fire in time order, ties in scheduling order", "[bus]") {
    Simulation sim;
    std::vector<int> order;
    sim.schedule(5, [&] { order.push_back(3); });
    sim.schedule(2, [&] { order.push_back(1); });
    sim.schedule(2, [&] { order.push_back(2); });
    REQUIRE(sim.pending() == 3);

    sim.run_until(2);
    CHECK(order == std::vector<int>{1, 2});
    CHECK(sim.now() == 2.0);
    CHECK(sim.pending() == 1);

    sim.run_until(10);
    CHECK(order == std::vector<int>{1, 2, 3});
    CHECK(sim.now() == 10.0); // clock advances to the horizon, not the last event
}

TEST_CASE("handlers can schedule forward but never backward", "[bus]") {
    Simulation sim;
    int fired = 0;
    sim.schedule(1, [&] {
        sim.schedule(4, [&] { ++fired; });
        CHECK_THROWS_AS(sim.schedule(0.5, [] {}), std::logic_error);
    });
    sim.run_until(100);
    CHECK(fired == 1);

    CHECK_THROWS_AS(sim.schedule(99, [] {}), std::logic_error);
    sim.schedule(100, [] {}); // at the current instant is allowed
}

TEST_CASE("the bus delivers to every endpoint except the origin", "[bus]") {
    Simulation sim;
    ProcessBus bus(sim);
    std::vector<std::string> seen; // "name<-origin@t"
    auto listener = [&](const std::string& name) {
        return [&, name](const Bytes&, const std::string& origin, double now) {
            seen.push_back(name + "<-" + origin + "@" + std::to_string(static_cast<int>(now)));
        };
    };
    bus.attach("pub", listener("pub"));
    bus.attach("subA", listener("subA"));
    bus.attach("subB", listener("subB"));

    Bytes frame = encode_frame(testsup::canonical_frame()).take();
    sim.schedule(10, [&] { bus.publish("pub", frame); });
    sim.run_until(20);

    CHECK(seen == std::vector<std::string>{"subA<-pub@10", "subB<-pub@10"});
    CHECK(bus.forwarded_count() == 1);
    CHECK(bus.dropped_count() == 0);
}

TEST_CASE("taps observe forwarded traffic at publish time", "[bus]") {
    Simulation sim;
    ProcessBus bus(sim);
    bus.propagation_delay_ms = 0.5;
    bus.attach("pub", [](const Bytes&, const std::string&, double) {});

    std::vector<double> tap_times;
    bus.add_tap([&](const Bytes&, double now) { tap_times.push_back(now); });

    Bytes frame = encode_frame(testsup::canonical_frame()).take();
    sim.schedule(10, [&] { bus.publish("pub", frame); });
    sim.run_until(9.9);
    CHECK(tap_times.empty());
    sim.run_until(20);
    REQUIRE(tap_times == std::vector<double>{10.0});
}

TEST_CASE("propagation delay separates publish from delivery", "[bus]") {
    Simulation sim;
    ProcessBus bus(sim);
    bus.propagation_delay_ms = 0.5;
    bus.attach("pub", [](const Bytes&, const std::string&, double) {});
    std::vector<double> rx_times;
    bus.attach("sub", [&](const Bytes&, const std::string&, double now) {
        rx_times.push_back(now);
    });

    Bytes frame = encode_frame(testsup::canonical_frame()).take();
    sim.schedule(10, [&] { bus.publish("pub", frame); });
    sim.run_until(10.4);
    CHECK(rx_times.empty());
    sim.run_until(10.5);
    CHECK(rx_times == std::vector<double>{10.5});
}

TEST_CASE("drop rules silence matching sources inside the window", "[bus]") {
    Simulation sim;
    ProcessBus bus(sim);
    bus.attach("pub", [](const Bytes&, const std::string&, double) {});
    uint64_t delivered = 0;
    bus.attach("sub", [&](const Bytes&, const std::string&, double) { ++delivered; });
    uint64_t tapped = 0;
    bus.add_tap([&](const Bytes&, double) { ++tapped; });

    SwitchRule rule;
    rule.name = "mute";
    rule.match_src = testsup::canonical_frame().eth.src;
    rule.from_ms = 100;
    rule.until_ms = 200;
    bus.add_rule(rule);

    Bytes victim = encode_frame(testsup::canonical_frame()).take();
    GooseFrame other_f = testsup::canonical_frame();
    other_f.eth.src = MacAddress{{0x02, 0x00, 0x00, 0x00, 0x00, 0x07}};
    Bytes other = encode_frame(other_f).take();

    sim.schedule(50, [&] { bus.publish("pub", victim); });  // before window
    sim.schedule(150, [&] { bus.publish("pub", victim); }); // dropped
    sim.schedule(150, [&] { bus.publish("pub", other); });  // wrong src, passes
    sim.schedule(250, [&] { bus.publish("pub", victim); }); // after window
    sim.run_until(1000);

    CHECK(delivered == 3);
    CHECK(tapped == 3);
    CHECK(bus.forwarded_count() == 3);
    CHECK(bus.dropped_count() == 1);
    CHECK(bus.forwarded_count() + bus.dropped_count() == bus.log().size());
}

TEST_CASE("count-limited rules exhaust themselves", "[bus]") {
    Simulation sim;
    ProcessBus bus(sim);
    uint64_t delivered = 0;
    bus.attach("sub", [&](const Bytes&, const std::string&, double) { ++delivered; });

    SwitchRule rule;
    rule.name = "first-two";
    rule.remaining = 2;
    bus.add_rule(rule);

    Bytes frame = encode_frame(testsup::canonical_frame()).take();
    for (int i = 0; i < 5; ++i)
        sim.schedule(i, [&] { bus.publish("pub", frame); });
    sim.run_until(100);

    CHECK(bus.dropped_count() == 2);
    CHECK(delivered == 3);
}

TEST_CASE("hop records render one line per frame", "[bus]") {
    Simulation sim;
    ProcessBus bus(sim);
    bus.attach("pub", [](const Bytes&, const std::string&, double) {});
    bus.attach("subA", [](const Bytes&, const std::string&, double) {});
    bus.attach("subB", [](const Bytes&, const std::string&, double) {});
    SwitchRule rule;
    rule.name = "mute";
    rule.from_ms = 20;
    bus.add_rule(rule);

    Bytes frame = encode_frame(testsup::canonical_frame()).take();
    sim.schedule(12.5, [&] { bus.publish("pub", frame); });
    sim.schedule(21, [&] { bus.publish("pub", frame); });
    sim.run_until(100);

    REQUIRE(bus.log().size() == 2);
    CHECK(bus.log()[0].to_line() ==
          "t=12.500 origin=pub src=dc:37:52:0a:cf:c2 dst=01:0c:cd:01:00:10 len=131 "
          "fwd=[subA,subB]");
    CHECK(bus.log()[1].to_line() ==
          "t=21.000 origin=pub src=dc:37:52:0a:cf:c2 dst=01:0c:cd:01:00:10 len=131 "
          "drop=mute");
}

TEST_CASE("runt frames still log with zeroed addresses", "[bus]") {
    Simulation sim;
    ProcessBus bus(sim);
    sim.schedule(1, [&] { bus.publish("x", Bytes{0xAA, 0xBB}); });
    sim.run_until(10);
    REQUIRE(bus.log().size() == 1);
    CHECK(bus.log()[0].src == "00:00:00:00:00:00");
    CHECK(bus.log()[0].size == 2);
}
