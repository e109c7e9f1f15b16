#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jamming/tables.hpp"

using namespace jamming;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("text tables match the golden copies") {
    std::ostringstream occ, cor;
    tables::write_occupation(occ, tables::Format::text);
    tables::write_correlations(cor, tables::Format::text);
    CHECK(occ.str() == slurp(GOLDEN_DIR "/occupation.tsv"));
    CHECK(cor.str() == slurp(GOLDEN_DIR "/correlations.tsv"));
}

TEST_CASE("spot values") {
    const auto occ = tables::occupation_cells();
    REQUIRE(occ.size() == 21);
    // row k = 10
    CHECK(tables::display(occ[15].value, 3) == "0.200");
    CHECK(tables::display(occ[16].value, 3) == "0.940");
    CHECK(tables::display(occ[17].value, 3) == "0.124");
    const auto cor = tables::correlation_cells();
    REQUIRE(cor.size() == 30);
    // distance 4, annihilation k = 3
    const auto& c = cor[3 * 6 + 4];
    CHECK(c.kind == ProcessKind::annihilation);
    CHECK(c.k == 3);
    CHECK(c.m == 4);
    CHECK(tables::display(c.value, 4) == "0.0018");
}

TEST_CASE("display rounding") {
    CHECK(tables::display(0.33349, 3) == "0.333");
    CHECK(tables::display(0.3335001, 3) == "0.334");
    CHECK(tables::display(-0.00004, 4) == "0.0000");
    CHECK(tables::display(-0.5, 4) == "-0.5000");
    CHECK(tables::full_precision(0.1) == "0.10000000000000001");
}

TEST_CASE("csv and json") {
    std::ostringstream csv;
    tables::write_correlations(csv, tables::Format::csv);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "process,k,m,t,value,display");
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
        ++rows;
    }
    CHECK(rows == 30);

    std::ostringstream js;
    tables::write_occupation(js, tables::Format::json);
    const auto doc = nlohmann::json::parse(js.str());
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 21);
    for (const auto& rec : doc) {
        for (const char* key : {"process", "k", "m", "t", "value", "display"}) CHECK(rec.contains(key));
        CHECK(rec["m"].is_null());
        CHECK(rec["t"] == 1.0);
    }
    CHECK(doc[0]["process"] == "blocking");
    CHECK(doc[0]["display"] == "0.432");

    CHECK(tables::parse_format("csv") == tables::Format::csv);
    CHECK_THROWS_AS(tables::parse_format("xml"), std::invalid_argument);
}
