#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "ctxlab/behaviour.hpp"
#include "ctxlab/families.hpp"
#include "support.hpp"

using namespace ctxlab;

namespace {

const std::vector<std::string> kBits{"0", "1"};

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

template <typename F>
std::string message_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    FAIL("expected a ctxlab::Error");
    return {};
}

Rational q(long num, long den = 1) { return Rational(num) / Rational(den); }

Scenario chain() {
    return validate_scenario({{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {"0", "1"}});
}

Behaviour chain_behaviour(const std::vector<Rational>& ab, const std::vector<Rational>& bc) {
    Scenario s = chain();
    return make_behaviour(s, {Distribution({"a", "b"}, kBits, ab),
                              Distribution({"b", "c"}, kBits, bc)});
}

} // namespace

TEST_CASE("behaviours carry one table per context in canonical order") {
    Behaviour b = chain_behaviour({q(1, 4), q(1, 4), q(1, 4), q(1, 4)},
                                  {q(1, 2), 0, 0, q(1, 2)});
    CHECK(b.tables().size() == 2);
    CHECK(b.tables()[0].coordinates() == std::vector<std::string>{"a", "b"});
    CHECK(b.table({"b", "c"}).at({"0", "0"}) == q(1, 2));
    CHECK(code_of([&] { b.table({"a", "c"}); }) == ErrorCode::MissingContextTable);
}

TEST_CASE("make_behaviour rejects shape mismatches") {
    Scenario s = chain();
    Distribution ab({"a", "b"}, kBits, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
    Distribution cb({"c", "b"}, kBits, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
    Distribution other({"b", "c"}, {"x", "y"}, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
    CHECK(code_of([&] { make_behaviour(s, {ab}); }) == ErrorCode::MissingContextTable);
    CHECK(code_of([&] { make_behaviour(s, {ab, cb}); }) == ErrorCode::CoordinateMismatch);
    CHECK(code_of([&] { make_behaviour(s, {ab, other}); }) == ErrorCode::MismatchedOutcomeSets);
}

TEST_CASE("sparse tables validate with context-prefixed diagnostics") {
    Scenario s = chain();
    RawTables good{{"a,b", {{"0,0", q(1, 2)}, {"1,1", q(1, 2)}}},
                   {"b,c", {{"0,1", q(1, 2)}, {"1,0", q(1, 2)}}}};
    Behaviour b = validate_behaviour(s, good);
    CHECK(b.table({"a", "b"}).at({"0", "0"}) == q(1, 2));
    CHECK(b.table({"a", "b"}).at({"0", "1"}) == 0);

    RawTables missing{{"a,b", {{"0,0", 1}}}};
    CHECK(code_of([&] { validate_behaviour(s, missing); }) == ErrorCode::MissingContextTable);

    RawTables unknown = good;
    unknown["a,c"] = {{"0,0", 1}};
    CHECK(code_of([&] { validate_behaviour(s, unknown); }) == ErrorCode::ParseError);

    RawTables arity = good;
    arity["a,b"] = {{"0,0,0", 1}};
    CHECK(code_of([&] { validate_behaviour(s, arity); }) == ErrorCode::ParseError);

    RawTables alien = good;
    alien["a,b"] = {{"0,2", 1}};
    CHECK(code_of([&] { validate_behaviour(s, alien); }) == ErrorCode::ParseError);

    RawTables negative = good;
    negative["a,b"] = {{"0,0", q(3, 2)}, {"0,1", q(-1, 2)}};
    CHECK(code_of([&] { validate_behaviour(s, negative); }) == ErrorCode::NegativeProbability);
    CHECK(message_of([&] { validate_behaviour(s, negative); }).find("context {a,b}") !=
          std::string::npos);

    RawTables short_sum = good;
    short_sum["a,b"] = {{"0,0", q(1, 2)}};
    CHECK(code_of([&] { validate_behaviour(s, short_sum); }) == ErrorCode::SumNotOne);
}

TEST_CASE("context marginals and point distributions") {
    Behaviour b = chain_behaviour({q(1, 2), q(1, 4), q(1, 8), q(1, 8)},
                                  {q(1, 2), 0, 0, q(1, 2)});
    Distribution pb = context_marginal(b, {"a", "b"}, {"b"});
    CHECK(pb.table() == std::vector<Rational>{q(5, 8), q(3, 8)});
    CHECK(point_distribution(b, {"a", "b"}, "a").table() ==
          std::vector<Rational>{q(3, 4), q(1, 4)});

    CHECK(code_of([&] { context_marginal(b, {"a", "b"}, {}); }) == ErrorCode::EmptySubset);
    CHECK(code_of([&] { context_marginal(b, {"a", "b"}, {"c"}); }) == ErrorCode::NotASubset);
    CHECK(code_of([&] { point_distribution(b, {"a", "b"}, "c"); }) ==
          ErrorCode::MeasurementNotInContext);
    CHECK(code_of([&] { context_marginal(b, {"a", "c"}, {"a"}); }) ==
          ErrorCode::MissingContextTable);
}

TEST_CASE("non-disturbance compares overlap marginals and names the first violation") {
    Behaviour good = chain_behaviour({q(1, 4), q(1, 4), q(1, 4), q(1, 4)},
                                     {q(1, 2), 0, 0, q(1, 2)});
    CHECK(is_nondisturbing(good).nondisturbing);

    Behaviour bad = chain_behaviour({q(1, 4), q(1, 4), q(1, 4), q(1, 4)},
                                    {q(3, 4), 0, 0, q(1, 4)});
    NondisturbanceVerdict v = is_nondisturbing(bad);
    REQUIRE_FALSE(v.nondisturbing);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->first_context == Context{"a", "b"});
    CHECK(v.witness->second_context == Context{"b", "c"});
    CHECK(v.witness->overlap == std::vector<std::string>{"b"});
    CHECK(v.witness->lhs.table() == std::vector<Rational>{q(1, 2), q(1, 2)});
    CHECK(v.witness->rhs.table() == std::vector<Rational>{q(3, 4), q(1, 4)});
}

TEST_CASE("non-degeneracy compares per-measurement distributions across contexts") {
    Behaviour bad = chain_behaviour({q(1, 4), q(1, 4), q(1, 4), q(1, 4)},
                                    {q(3, 4), 0, 0, q(1, 4)});
    NondegeneracyVerdict v = is_nondegenerate(bad);
    REQUIRE_FALSE(v.nondegenerate);
    CHECK(v.witness->measurement == "b");
    CHECK(v.witness->first_context == Context{"a", "b"});
    CHECK(v.witness->second_context == Context{"b", "c"});
    CHECK(v.witness->lhs.table() == std::vector<Rational>{q(1, 2), q(1, 2)});
    CHECK(v.witness->rhs.table() == std::vector<Rational>{q(3, 4), q(1, 4)});

    CHECK(is_nondegenerate(prbox_behaviour()).nondegenerate);
    CHECK(is_nondegenerate(counterexample_behaviour()).nondegenerate);
}

TEST_CASE("the canonical counterexample separates the two notions") {
    Behaviour ce = counterexample_behaviour();
    CHECK_FALSE(is_nondisturbing(ce).nondisturbing);
    CHECK(is_nondegenerate(ce).nondegenerate);
    DisturbanceWitness w = *is_nondisturbing(ce).witness;
    CHECK(w.overlap == std::vector<std::string>{"b", "c"});
}

TEST_CASE("vectorization is the inverse of reconstruction") {
    Behaviour b = prbox_behaviour();
    CHECK(vector_length(b.scenario()) == 16);
    CHECK(context_offsets(b.scenario()) == std::vector<std::size_t>{0, 4, 8, 12});
    BehaviourVector v = vectorize(b);
    REQUIRE(v.entries.size() == 16);
    CHECK(behaviour_from_vector(b.scenario(), v.entries) == b);

    std::vector<Rational> broken = v.entries;
    broken[0] += 1;
    broken[1] -= 1;
    CHECK(code_of([&] { behaviour_from_vector(b.scenario(), broken); }) ==
          ErrorCode::NegativeProbability);
    broken[1] += 2;
    CHECK(code_of([&] { behaviour_from_vector(b.scenario(), broken); }) == ErrorCode::SumNotOne);
    CHECK(code_of([&] { behaviour_from_vector(b.scenario(), {1}); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("counterexample construction validates its ingredients") {
    Distribution pa({"a"}, kBits, {q(1, 2), q(1, 2)});
    Distribution pd({"d"}, kBits, {q(1, 3), q(2, 3)});
    Distribution f({"u", "v"}, kBits, {q(1, 2), 0, 0, q(1, 2)});
    Distribution g({"u", "v"}, kBits, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)});

    Behaviour ce = degenerate_counterexample(pa, pd, f, g);
    CHECK_FALSE(is_nondisturbing(ce).nondisturbing);
    CHECK(is_nondegenerate(ce).nondegenerate);
    CHECK(ce.table({"a", "b", "c"}).at({"0", "0", "0"}) == q(1, 2) * q(1, 2));
    CHECK(ce.table({"b", "c", "d"}).at({"0", "1", "1"}) == q(1, 4) * q(2, 3));

    Distribution skew({"u", "v"}, kBits, {q(1, 2), q(1, 4), q(1, 8), q(1, 8)});
    CHECK(code_of([&] { degenerate_counterexample(pa, pd, f, skew); }) ==
          ErrorCode::MarginalMismatch);
    CHECK(code_of([&] { degenerate_counterexample(pa, pd, f, f); }) ==
          ErrorCode::CouplingsEqual);
    CHECK(code_of([&] { degenerate_counterexample(pa, pd, pa, g); }) ==
          ErrorCode::DimensionMismatch);
    Distribution tri({"u", "v"}, {"0", "1", "2"},
                     {q(1, 9), q(1, 9), q(1, 9), q(1, 9), q(1, 9), q(1, 9), q(1, 9), q(1, 9),
                      q(1, 9)});
    CHECK(code_of([&] { degenerate_counterexample(pa, pd, tri, g); }) ==
          ErrorCode::MismatchedOutcomeSets);
}

TEST_CASE("random marginal pairs always separate non-degeneracy from non-disturbance") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t k = 2 + support::draw(rng, 2);
        std::vector<std::string> outcomes;
        for (std::size_t o = 0; o < k; ++o) outcomes.push_back(std::to_string(o));
        auto [f, g] = support::marginal_pair(rng, k);
        Distribution pa = support::random_distribution(rng, {"a"}, outcomes, 7);
        Distribution pd = support::random_distribution(rng, {"d"}, outcomes, 7);
        Behaviour ce = degenerate_counterexample(pa, pd, f, g);
        CHECK_FALSE(is_nondisturbing(ce).nondisturbing);
        CHECK(is_nondegenerate(ce).nondegenerate);
    }
}

TEST_CASE("global restrictions are non-disturbing and reproduce their marginals") {
    Scenario s = ncycle_scenario(4);
    Distribution global({"x_0", "x_1", "x_2", "x_3"}, kBits,
                        std::vector<Rational>(16, q(1, 16)));
    Behaviour b = behaviour_from_global(s, global);
    CHECK(is_nondisturbing(b).nondisturbing);
    for (const auto& c : s.contexts()) {
        CHECK(b.table(c) == marginalize(global, c));
    }
    Distribution wrong({"y_0", "x_1", "x_2", "x_3"}, kBits,
                       std::vector<Rational>(16, q(1, 16)));
    CHECK(code_of([&] { behaviour_from_global(s, wrong); }) == ErrorCode::CoordinateMismatch);
}

TEST_CASE("sampling is deterministic in the seed and always valid") {
    Scenario s = ncycle_scenario(5);
    Behaviour a = sample_behaviour(s, 99, 10);
    Behaviour b = sample_behaviour(s, 99, 10);
    CHECK(a == b);
    Behaviour c = sample_behaviour(s, 100, 10);
    CHECK(a != c);
    CHECK(code_of([&] { sample_behaviour(s, 1, 0); }) == ErrorCode::DimensionMismatch);

    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        Scenario r = support::random_scenario(rng);
        Behaviour sampled = sample_behaviour(r, trial, 6);
        CHECK(sampled.tables().size() == r.contexts().size());
    }
}

TEST_CASE("the PR box is non-disturbing with uniform marginals") {
    Behaviour pr = prbox_behaviour();
    CHECK(is_nondisturbing(pr).nondisturbing);
    CHECK(is_nondegenerate(pr).nondegenerate);
    for (const auto& c : pr.scenario().contexts()) {
        for (const auto& x : c) {
            CHECK(point_distribution(pr, c, x).table() ==
                  std::vector<Rational>{q(1, 2), q(1, 2)});
        }
    }
    Behaviour pr6 = prbox_behaviour(6);
    CHECK(pr6.scenario().contexts().size() == 6);
    CHECK(is_nondisturbing(pr6).nondisturbing);
    CHECK(code_of([] { prbox_behaviour(5); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { prbox_behaviour(2); }) == ErrorCode::DimensionMismatch);
}
