#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace epoly;
using namespace epoly::testing;

TEST_CASE("lattice_isomorphism finds a rotated polygon relabeling") {
    auto C5 = polygon_lattice(5);
    std::vector<int> rot{1, 2, 3, 4, 0};
    auto rotated = C5.relabel(rot);
    auto iso = lattice_isomorphism(C5, rotated);
    REQUIRE(iso.has_value());
    CHECK(maps_facets_to_facets(C5, rotated, iso->vertex_map));
}

TEST_CASE("lattice_isomorphism distinguishes different f-vectors") {
    auto E34 = e_lattice(product_lattice(polygon_lattice(3), polygon_lattice(4)));
    auto E44 = e_lattice(product_lattice(polygon_lattice(4), polygon_lattice(4)));
    CHECK_FALSE(lattice_isomorphism(E34, E44).has_value());
}

TEST_CASE("automorphism groups of small polytopes") {
    CHECK(lattice_automorphisms(polygon_lattice(3)).size() == 6);
    CHECK(lattice_automorphisms(polygon_lattice(4)).size() == 8);
    CHECK(lattice_automorphisms(simplex_lattice(3)).size() == 24);
    CHECK(lattice_automorphisms(cube_lattice(3)).size() == 48);
}

TEST_CASE("every enumerated automorphism maps facets to facets") {
    auto L = e_lattice(product_lattice(polygon_lattice(3), polygon_lattice(3)));
    auto autos = lattice_automorphisms(L);
    CHECK(autos.size() >= 72);  // at least the rotations, reflections and the factor swap
    for (const auto& a : autos) CHECK(maps_facets_to_facets(L, L, a.vertex_map));
}

TEST_CASE("24-cell lattice automorphism group has order 1152") {
    auto E44 = e_lattice(product_lattice(polygon_lattice(4), polygon_lattice(4)));
    CHECK(lattice_automorphisms(E44).size() == 1152);
}
