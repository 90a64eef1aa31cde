#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ctxlab/scenario.hpp"
#include "support.hpp"

using namespace ctxlab;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a ctxlab::Error");
    return ErrorCode::InternalInconsistency;
}

} // namespace

TEST_CASE("context keys join sorted members with commas") {
    CHECK(context_key({"b", "x"}) == "b,x");
    CHECK(context_key({"a"}) == "a");
}

TEST_CASE("validation canonicalizes order and is insensitive to input order") {
    RawScenario raw{{"b", "a", "c"}, {{"c", "a"}, {"b", "c"}}, {"1", "0"}};
    Scenario s = validate_scenario(raw);
    CHECK(s.measurements() == std::vector<std::string>{"a", "b", "c"});
    CHECK(s.outcomes() == std::vector<std::string>{"0", "1"});
    CHECK(s.contexts() == std::vector<Context>{{"a", "c"}, {"b", "c"}});

    RawScenario shuffled{{"c", "b", "a"}, {{"b", "c"}, {"a", "c"}}, {"0", "1"}};
    CHECK(validate_scenario(shuffled) == s);

    CHECK(s.has_measurement("a"));
    CHECK_FALSE(s.has_measurement("d"));
    CHECK(s.outcome_index("1") == 1);
    CHECK_FALSE(s.outcome_index("2").has_value());
    CHECK(s.context_position({"a", "c"}) == 0);
    CHECK_FALSE(s.context_position({"a", "b"}).has_value());
}

TEST_CASE("each scenario axiom failure reports its own code") {
    RawScenario base{{"a", "b"}, {{"a", "b"}}, {"0", "1"}};
    CHECK(validate_scenario(base).contexts().size() == 1);

    auto broken = base;
    broken.outcomes.clear();
    CHECK(code_of([&] { validate_scenario(broken); }) == ErrorCode::EmptyOutcomeSet);

    broken = base;
    broken.contexts.clear();
    CHECK(code_of([&] { validate_scenario(broken); }) == ErrorCode::EmptyScenario);

    broken = base;
    broken.contexts.push_back({});
    CHECK(code_of([&] { validate_scenario(broken); }) == ErrorCode::EmptyContext);

    broken = base;
    broken.contexts.push_back({"b", "a"});
    CHECK(code_of([&] { validate_scenario(broken); }) == ErrorCode::DuplicateContext);

    broken = base;
    broken.contexts.push_back({"a"});
    CHECK(code_of([&] { validate_scenario(broken); }) == ErrorCode::NestedContext);

    broken = base;
    broken.contexts.push_back({"c"});
    CHECK(code_of([&] { validate_scenario(broken); }) == ErrorCode::UnknownMeasurement);

    broken = base;
    broken.measurements.push_back("c");
    CHECK(code_of([&] { validate_scenario(broken); }) == ErrorCode::UncoveredMeasurement);

    broken = base;
    broken.measurements.push_back("a b");
    CHECK(code_of([&] { validate_scenario(broken); }) == ErrorCode::InvalidToken);

    broken = base;
    broken.outcomes.push_back("x,y");
    CHECK(code_of([&] { validate_scenario(broken); }) == ErrorCode::InvalidToken);

    broken = base;
    broken.measurements.push_back("");
    CHECK(code_of([&] { validate_scenario(broken); }) == ErrorCode::InvalidToken);
}

TEST_CASE("cycles have n two-element contexts and need n at least 3") {
    Scenario c4 = ncycle_scenario(4);
    CHECK(c4.measurements().size() == 4);
    CHECK(c4.contexts().size() == 4);
    for (const auto& c : c4.contexts()) CHECK(c.size() == 2);
    CHECK(c4.outcomes() == std::vector<std::string>{"0", "1"});

    Scenario c3 = ncycle_scenario(3, {"u", "v", "w"});
    CHECK(c3.outcomes().size() == 3);
    CHECK(c3.contexts().size() == 3);

    CHECK(code_of([] { ncycle_scenario(2); }) == ErrorCode::DuplicateContext);
    CHECK(code_of([] { ncycle_scenario(0); }) == ErrorCode::DuplicateContext);
}

TEST_CASE("contexts_of lists the contexts containing a measurement in order") {
    Scenario c4 = ncycle_scenario(4);
    auto around_0 = contexts_of(c4, "x_0");
    REQUIRE(around_0.size() == 2);
    CHECK(around_0[0] == Context{"x_0", "x_1"});
    CHECK(around_0[1] == Context{"x_0", "x_3"});
    CHECK(code_of([&] { contexts_of(c4, "absent"); }) == ErrorCode::UnknownMeasurement);
}

TEST_CASE("extension splits measurements into per-context copies") {
    Scenario c4 = ncycle_scenario(4);
    ExtendedScenario ext = extend_scenario(c4);

    CHECK(ext.base() == c4);
    CHECK(ext.full().measurements().size() == 8);
    CHECK(ext.full().contexts().size() == 8);
    CHECK(ext.full().outcomes() == c4.outcomes());
    CHECK(ext.context_images().size() == 4);
    CHECK(ext.connections().size() == 4);

    for (std::size_t i = 0; i < c4.contexts().size(); ++i) {
        const Context& image = ext.context_images()[i];
        REQUIRE(image.size() == c4.contexts()[i].size());
        CHECK(ext.full().contexts()[ext.image_position(i)] == image);
        for (const auto& t : image) {
            auto [x, pos] = ext.split_tag(t);
            CHECK(pos == i);
            CHECK(c4.has_measurement(x));
        }
    }
    for (const auto& [x, connection] : ext.connections()) {
        CHECK(connection.size() == 2);
        CHECK(ext.has_connection(x));
        CHECK(ext.full().contexts()[ext.connection_position(x)] == connection);
    }
    CHECK_FALSE(ext.has_connection("x_0@0"));
}

TEST_CASE("single-context measurements get no connection") {
    Scenario s = validate_scenario({{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {"0", "1"}});
    ExtendedScenario ext = extend_scenario(s);
    CHECK(ext.connections().size() == 1);
    CHECK(ext.connections()[0].first == "b");
    CHECK(ext.full().contexts().size() == 3);
    CHECK(ext.full().measurements().size() == 4);
    CHECK(ext.has_connection("b"));
    CHECK_FALSE(ext.has_connection("a"));
}

TEST_CASE("tags stay distinct when base names already contain separators") {
    Scenario s = validate_scenario({{"x", "x@0"}, {{"x", "x@0"}}, {"0", "1"}});
    ExtendedScenario ext = extend_scenario(s);
    CHECK(ext.full().measurements().size() == 2);
    auto [x, pos] = ext.split_tag(ExtendedScenario::tag("x@0", 0));
    CHECK(x == "x@0");
    CHECK(pos == 0);
}

TEST_CASE("random scenarios satisfy the axioms and extend cleanly") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        Scenario s = support::random_scenario(rng);
        ExtendedScenario ext = extend_scenario(s);
        std::size_t copies = 0;
        for (const auto& c : s.contexts()) copies += c.size();
        CHECK(ext.full().measurements().size() == copies);
        CHECK(ext.full().contexts().size() == s.contexts().size() + ext.connections().size());
        for (const auto& tag : ext.full().measurements()) {
            auto [x, pos] = ext.split_tag(tag);
            CHECK(ExtendedScenario::tag(x, pos) == tag);
        }
    }
}
