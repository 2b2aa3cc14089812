#include "hk/form_io.hpp"

#include <doctest.h>

#include <filesystem>

using namespace hk;
using nlohmann::json;

TEST_SUITE("form_io") {

TEST_CASE("round trip is exact") {
    const FormField a = random_field(2, 17);
    const FormField b = form_from_json(json::parse(to_json(a).dump()));
    CHECK(b.kmax() == a.kmax());
    for (std::size_t i = 0; i < a.mode_count(); ++i) CHECK(a[i].coeffs() == b[i].coeffs());
}

TEST_CASE("file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "hk_form_io_test.json";
    const FormField a = exterior_d(random_field(1, 3, true));
    write_form(path, a);
    const FormField b = read_form(path);
    CHECK((a - b).norm() == 0.0);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_form(path), std::runtime_error);
}

TEST_CASE("zero coefficients are omitted") {
    const FormField f = FormField::single_mode(1, {0, 1, 0, 0}, Multivector::blade(std::uint8_t{3}, cplx(0.5, -2.0)));
    const json j = to_json(f);
    REQUIRE(j["entries"].size() == 1);
    CHECK(j["entries"][0]["k"] == json::array({0, 1, 0, 0}));
    CHECK(j["entries"][0]["blade_mask"] == 3);
    CHECK(j["entries"][0]["re"] == 0.5);
    CHECK(j["entries"][0]["im"] == -2.0);
}

TEST_CASE("malformed input is rejected") {
    const json entry = {{"k", {0, 0, 0, 0}}, {"blade_mask", 1}, {"re", 1.0}, {"im", 0.0}};
    CHECK_NOTHROW(form_from_json({{"truncation", 1}, {"entries", {entry}}}));
    CHECK_THROWS_AS(form_from_json(json::array()), std::invalid_argument);
    CHECK_THROWS_AS(form_from_json({{"entries", json::array()}}), std::invalid_argument);
    CHECK_THROWS_AS(form_from_json({{"truncation", -1}, {"entries", json::array()}}), std::invalid_argument);
    CHECK_THROWS_AS(form_from_json({{"truncation", 1.5}, {"entries", json::array()}}), std::invalid_argument);
    CHECK_THROWS_AS(form_from_json({{"truncation", 1}, {"entries", {entry, entry}}}), std::invalid_argument);
    json bad = entry;
    bad["k"] = {2, 0, 0, 0};
    CHECK_THROWS_AS(form_from_json({{"truncation", 1}, {"entries", {bad}}}), std::invalid_argument);
    bad = entry;
    bad["k"] = {0, 0, 0};
    CHECK_THROWS_AS(form_from_json({{"truncation", 1}, {"entries", {bad}}}), std::invalid_argument);
    bad = entry;
    bad["blade_mask"] = 16;
    CHECK_THROWS_AS(form_from_json({{"truncation", 1}, {"entries", {bad}}}), std::invalid_argument);
    bad = entry;
    bad["re"] = "one";
    CHECK_THROWS_AS(form_from_json({{"truncation", 1}, {"entries", {bad}}}), std::invalid_argument);
    bad = entry;
    bad.erase("im");
    CHECK_THROWS_AS(form_from_json({{"truncation", 1}, {"entries", {bad}}}), std::invalid_argument);
}

}  // TEST_SUITE
