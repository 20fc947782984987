#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"

using namespace epoly;
using namespace epoly::testing;
using R = Rational;

namespace {

std::string to_text(const Document& doc) {
    std::ostringstream os;
    serialize_document(os, doc);
    return os.str();
}

Document from_text(const std::string& text) {
    std::istringstream is(text);
    return parse_document(is);
}

} // namespace

TEST_CASE("rational documents round-trip bit-exactly") {
    for (auto name :
         {GalleryName::no_proj_autos_24cell, GalleryName::regular_squares_e44, GalleryName::feasible_e33}) {
        auto cfg = fixed_gallery<R>(name);
        auto st = detect_e_product_structure(cfg);
        auto doc = make_document(cfg, &st.claimed, {{"construction", "gallery"}});
        auto text = to_text(doc);
        CHECK(to_text(from_text(text)) == text);
    }
}

TEST_CASE("float documents round-trip through the 17-digit encoding") {
    auto as = build_emn(4, 5);
    auto doc = make_document(as.config, &as.lattice, {{"m", "4"}, {"n", "5"}});
    auto text = to_text(doc);
    auto doc2 = from_text(text);
    CHECK(to_text(doc2) == text);
    const auto& cfg2 = std::get<PointConfig<double>>(doc2.points);
    for (int i = 0; i < as.config.size(); ++i)
        for (int j = 0; j < 4; ++j) CHECK(cfg2.pts[size_t(i)][size_t(j)] == as.config.pts[size_t(i)][size_t(j)]);
}

TEST_CASE("claimed lattice is rebuilt from the FACETS section") {
    auto as = build_emn(3, 3);
    auto doc = make_document(as.config, &as.lattice, {});
    auto doc2 = from_text(to_text(doc));
    auto L = doc2.claimed_lattice();
    CHECK(f_vector(L) == f_vector(as.lattice));
    auto cert = certify_realization(std::get<PointConfig<double>>(doc2.points), L);
    CHECK(cert.certified);
}

TEST_CASE("polymake export carries POINTS and VERTICES_IN_FACETS") {
    auto cfg = fixed_gallery<R>(GalleryName::feasible_e33);
    auto st = detect_e_product_structure(cfg);
    auto doc = make_document(cfg, &st.claimed, {});
    std::ostringstream os;
    export_polymake(os, doc);
    auto text = os.str();
    CHECK(text.find("POINTS\n") != std::string::npos);
    CHECK(text.find("VERTICES_IN_FACETS\n") != std::string::npos);
    CHECK(text.find("1 9/247 289/247 819/1387 364/1387") != std::string::npos);
}

TEST_CASE("json export mirrors the document fields") {
    auto cfg = fixed_gallery<R>(GalleryName::feasible_e33);
    auto doc = make_document(cfg, nullptr, {{"name", "feasible_e33"}});
    std::ostringstream os;
    export_json(os, doc);
    auto j = nlohmann::json::parse(os.str());
    CHECK(j["dim"] == 4);
    CHECK(j["backend"] == "rational");
    CHECK(j["points"].size() == 15);
    CHECK(j["meta"]["name"] == "feasible_e33");
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(from_text("DIM 4\nBACKEND rational\n"), DocumentError);
    CHECK_THROWS_AS(from_text("DIM 2\nBACKEND rational\nPOINTS 1\n2 0 0\n"), DocumentError);
    CHECK_THROWS_AS(from_text("DIM 2\nBACKEND maple\nPOINTS 0\n"), DocumentError);
    CHECK_THROWS_AS(from_text("WHAT 4\n"), DocumentError);
}
