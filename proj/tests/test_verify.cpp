#include <doctest.h>

#include <set>

#include "jamming/bethe.hpp"
#include "jamming/verify.hpp"

using namespace jamming;

TEST_CASE("criteria are numbered 1..14 with unique ids") {
    const auto& all = verify::criteria();
    REQUIRE(all.size() == 14);
    std::set<std::string> ids;
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].number == static_cast<int>(i) + 1);
        CHECK(ids.insert(all[i].id).second);
    }
}

TEST_CASE("selection") {
    const auto fwd = verify::select("forward-equations");
    REQUIRE(fwd.size() == 1);
    CHECK(fwd[0]->number == 5);
    CHECK(verify::select("").size() == 14);
    const auto two = verify::select("1,correlations-table");
    REQUIRE(two.size() == 2);
    CHECK(two[0]->number == 1);
    CHECK(two[1]->number == 2);
    CHECK_THROWS_AS(verify::select("no-such-check"), std::invalid_argument);
    CHECK_THROWS_AS(verify::select("15"), std::invalid_argument);
}

TEST_CASE("fast criteria pass on a clean build") {
    verify::Options opt;
    for (const auto* c : verify::select("1,2,3,5,6")) {
        CAPTURE(c->id);
        const auto out = verify::run(*c, opt);
        CHECK(out.error.empty());
        CHECK(out.passed);
        CHECK_FALSE(out.checks.empty());
    }
}

TEST_CASE("a flipped covariance sign is caught") {
    verify::Options opt;
    opt.covariance = [](ProcessKind kind, int k, int m, double t) {
        const double c = bethe::covariance(kind, k, m, t);
        return kind == ProcessKind::blocking ? -c : c;
    };
    const auto out = verify::run(*verify::select("correlation-signs")[0], opt);
    CHECK_FALSE(out.passed);
    bool some_failed = false;
    for (const auto& r : out.checks) some_failed |= !r.passed;
    CHECK(some_failed);
}

TEST_CASE("check records serialise with the agreed keys") {
    verify::CheckResult r{"x/y", true, 0.5, 0.5, 1e-3, 7};
    const auto j = verify::to_json(r);
    for (const char* key : {"check_id", "status", "measured", "target", "tolerance", "seed"}) CHECK(j.contains(key));
    CHECK(j["status"] == "pass");
    r.passed = false;
    CHECK(verify::to_json(r)["status"] == "fail");
}

TEST_CASE("reference tables") {
    CHECK(verify::reference_occupation(ProcessKind::dimer, 3) == 0.889);
    CHECK(verify::reference_correlation(ProcessKind::blocking, 3, 2) == 0.1760);
    CHECK(verify::fixture_graphs().size() >= 10);
    for (const auto& [name, g] : verify::bipartite_fixtures()) CHECK(is_bipartite(g).has_value());
}
