#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace epoly;
using namespace epoly::testing;

namespace {

// crossing parameter of the segment a->b with the line through p, q
double crossing_param(const Vec<double>& a, const Vec<double>& b, const Vec<double>& p, const Vec<double>& q) {
    double nx = q[1] - p[1], ny = p[0] - q[0];
    double c = nx * p[0] + ny * p[1];
    double sa = nx * a[0] + ny * a[1] - c;
    double sb = nx * b[0] + ny * b[1] - c;
    return sa / (sa - sb);
}

Vec<double> tangent_intersection(double a, double b) { return {(a + b) / 2, a * b}; }

} // namespace

TEST_CASE("D(4, 1/2) has the documented vertices") {
    auto D = build_polygon_d(4, 0.5);
    REQUIRE(D.polygon.size() == 4);
    const double s2 = std::sqrt(2.0);
    CHECK(D.polygon.pts[0][0] == doctest::Approx(0.0));
    CHECK(D.polygon.pts[0][1] == doctest::Approx(0.0));
    CHECK(D.polygon.pts[1][0] == doctest::Approx(s2));
    CHECK(D.polygon.pts[1][1] == doctest::Approx(2.0));
    CHECK(D.polygon.pts[2][0] == doctest::Approx(0.0));
    CHECK(D.polygon.pts[2][1] == doctest::Approx(4.0));
    CHECK(D.polygon.pts[3][0] == doctest::Approx(-s2));
    CHECK(d_next_abscissa(0.0, 0.5) == doctest::Approx(s2));
    CHECK(d_top_height(s2, 0.5) == doctest::Approx(4.0));
    CHECK(d_top_apex_abscissa(s2, 0.5) == doctest::Approx(2.1213203435596424));
}

TEST_CASE("build_polygon_d rejects out-of-range input") {
    CHECK_THROWS(build_polygon_d(3, 0.5));
    CHECK_THROWS(build_polygon_d(6, 0.7));
    CHECK_THROWS(build_polygon_d(6, 0.0));
}

TEST_CASE("all apex ratios of D(m,r) equal r") {
    for (int m : {4, 5, 6, 7, 8, 9, 10})
        for (double r : {0.35, 0.5, 0.6}) {
            auto D = build_polygon_d(m, r);
            auto planes = polygon_edge_planes(D.polygon);
            for (const auto& apex : D.e_polygon.pts) {
                double t = segment_boundary_ratio(D.s, apex, planes);
                CHECK(std::fabs(t - r) < 1e-9);
            }
        }
}

TEST_CASE("parabola construction function properties (random samples)") {
    int count = 0;
    while (count < 200) {
        double r = uniform(0.02, 0.65);
        double a = uniform(0.0, 4.0);
        ++count;
        double C = d_next_abscissa(a, r);
        CHECK(C > 1.0);  // keeps s = (0,1) inside the polygon

        // secant between (a,a^2) and (C,C^2) cuts the segment s -> p(a) at fraction r
        Vec<double> s{0.0, 1.0};
        Vec<double> p = tangent_intersection(a, C);
        double t = crossing_param(s, p, {a, a * a}, {C, C * C});
        CHECK(std::fabs(t - r) < 1e-9);

        double atop = uniform(1.001, 4.0);
        double topy = d_top_height(atop, r);
        double topx = d_top_apex_abscissa(atop, r);
        CHECK(topy > atop * atop);
        CHECK(std::fabs(topy - (2 * atop * topx - atop * atop)) < 1e-9);

        // the top edge line from (atop, atop^2) to (0, topy) cuts s -> (topx, topy) at fraction r
        double t2 = crossing_param(s, {topx, topy}, {atop, atop * atop}, {0.0, topy});
        CHECK(std::fabs(t2 - r) < 1e-9);
    }
}

TEST_CASE("build_regular_d at the minimum fraction puts vertices at edge midpoints") {
    auto D = build_regular_d(4, 0.5);
    for (int k = 0; k < 4; ++k) {
        Vec<double> mid{(D.e_polygon.pts[size_t(k)][0] + D.e_polygon.pts[size_t((k + 3) % 4)][0]) / 2,
                        (D.e_polygon.pts[size_t(k)][1] + D.e_polygon.pts[size_t((k + 3) % 4)][1]) / 2};
        bool found = false;
        for (const auto& p : D.polygon.pts)
            if (std::fabs(p[0] - mid[0]) < 1e-9 && std::fabs(p[1] - mid[1]) < 1e-9) found = true;
        CHECK(found);
    }
}

TEST_CASE("build_regular_d range checks") {
    CHECK_NOTHROW(build_regular_d(3, 0.26));  // range is [1/4, 1)
    CHECK_THROWS(build_regular_d(5, 0.5));    // below cos^2(pi/5) ~ 0.6545
    CHECK_THROWS(build_regular_d(3, 1.0));
}

TEST_CASE("build_regular_d hits the requested fraction") {
    for (int m : {3, 4, 5, 6}) {
        double fmin = regular_min_fraction(m);
        for (double f : {fmin + 0.02, fmin + 0.1, 0.9}) {
            auto D = build_regular_d(m, f);
            CHECK(std::fabs(D.r - f) < 1e-9);
            auto planes = polygon_edge_planes(D.polygon);
            for (const auto& apex : D.e_polygon.pts)
                CHECK(std::fabs(segment_boundary_ratio(D.s, apex, planes) - f) < 1e-9);
        }
    }
}

TEST_CASE("regular_pair feasibility matches the five listed pairs") {
    auto rp44 = regular_pair(4, 4);
    REQUIRE(rp44.has_value());
    CHECK(rp44->fraction == doctest::Approx(0.5));

    auto rp36 = regular_pair(3, 6);
    REQUIRE(rp36.has_value());
    CHECK(rp36->fraction == doctest::Approx(0.25));

    CHECK_FALSE(regular_pair(5, 5).has_value());
    CHECK_THROWS(regular_pair(3, 4, 0.9));  // outside the feasible interval
}

TEST_CASE("regular_pair(4,4) assembles to the regular 24-cell up to scaling") {
    auto rp = regular_pair(4, 4);
    auto as = assemble_e_product(to_efactor(rp->first), to_efactor(rp->second));
    REQUIRE(as.certificate.certified);
    // scaled by 2: the vertex set {+-1}^4 union {+-2 e_i}
    int cube_like = 0, axis_like = 0;
    for (const auto& p : as.config.pts) {
        Vec<double> q{2 * p[0], 2 * p[1], 2 * p[2], 2 * p[3]};
        bool cube = true;
        for (double x : q) cube = cube && std::fabs(std::fabs(x) - 1.0) < 1e-9;
        if (cube) ++cube_like;
        int axes = 0, zeros = 0;
        for (double x : q) {
            if (std::fabs(std::fabs(x) - 2.0) < 1e-9) ++axes;
            if (std::fabs(x) < 1e-9) ++zeros;
        }
        if (axes == 1 && zeros == 3) ++axis_like;
    }
    CHECK(cube_like == 16);
    CHECK(axis_like == 8);
}

TEST_CASE("cube factor") {
    auto c3 = build_cube_factor<Rational>(3);
    CHECK(c3.body.size() == 8);
    CHECK(c3.n_apexes() == 6);
    auto planes = c3.facet_planes;
    for (const auto& a : c3.apexes)
        CHECK(segment_boundary_ratio(*c3.interior, a, planes) == Rational(1, 2));

    auto c1 = build_cube_factor<Rational>(1);
    CHECK(c1.body.size() == 2);
    CHECK(c1.n_apexes() == 2);
    CHECK(scalar_traits<Rational>::abs(c1.apexes[0][0]) == Rational(2));

    auto c4 = build_cube_factor<double>(4);
    PointConfig<double> all = c4.body;
    for (const auto& a : c4.apexes) all.pts.push_back(a);
    auto cert = certify_realization(all, e_lattice(cube_lattice(4)));
    CHECK(cert.certified);
}

TEST_CASE("simplex factor base case matches the regular triangle construction") {
    auto s2 = build_simplex_factor(2, 0.5);
    CHECK(s2.body.size() == 3);
    CHECK(s2.n_apexes() == 3);
    // equilateral with barycentre at the origin
    double e01 = std::hypot(s2.body.pts[0][0] - s2.body.pts[1][0], s2.body.pts[0][1] - s2.body.pts[1][1]);
    double e12 = std::hypot(s2.body.pts[1][0] - s2.body.pts[2][0], s2.body.pts[1][1] - s2.body.pts[2][1]);
    CHECK(e01 == doctest::Approx(e12));
    CHECK(std::fabs(s2.body.pts[0][0] + s2.body.pts[1][0] + s2.body.pts[2][0]) < 1e-9);
}

TEST_CASE("simplex factor certifies its own E-polytope and keeps ratios") {
    for (auto [d, r] : std::vector<std::pair<int, double>>{{3, 0.5}, {3, 0.6}, {4, 0.6}}) {
        auto f = build_simplex_factor(d, r);
        for (const auto& a : f.apexes)
            CHECK(std::fabs(segment_boundary_ratio(*f.interior, a, f.facet_planes) - r) < 1e-9);
        PointConfig<double> all = f.body;
        for (const auto& a : f.apexes) all.pts.push_back(a);
        auto cert = certify_realization(all, e_lattice(simplex_lattice(d)));
        CHECK(cert.certified);
    }
    CHECK_THROWS(build_simplex_factor(3, 0.4));
    CHECK_THROWS(build_simplex_factor(3, 1.0));
}

TEST_CASE("check_condition_b") {
    auto c3 = build_cube_factor<double>(3);
    CHECK(check_condition_b(c3, c3).pass);

    auto f46 = to_efactor(build_polygon_d(4, 0.6));
    auto f54 = to_efactor(build_polygon_d(5, 0.4));
    CHECK(check_condition_b(f46, f54).pass);

    auto f55 = to_efactor(build_polygon_d(5, 0.5));
    auto rep = check_condition_b(f46, f55);
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_gap == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("assembled products match the flag-formula counts") {
    auto as57 = build_emn(5, 7);
    REQUIRE(as57.certificate.certified);
    CHECK(f_vector(as57.lattice) == FVector{47, 210, 210, 47});

    auto P = product_lattice(polygon_lattice(5), polygon_lattice(7));
    CHECK(as57.config.size() == int(P.faces(0).size() + P.facets().size()));
    CHECK(as57.lattice.facets().size() == P.ridges().size());
}

TEST_CASE("5-dimensional assembly: triangle factor x cube factor") {
    auto s2 = build_simplex_factor(2, 0.5);
    auto c3 = build_cube_factor<double>(3);
    auto as = assemble_e_product(s2, c3);
    REQUIRE(as.certificate.certified);
    auto P = product_lattice(simplex_lattice(2), cube_lattice(3));
    CHECK(f_vector(as.lattice) == e_fvector_formula(f_vector(P), flag_vector(P)));
}

TEST_CASE("projections of an assembled product hull to the factor E-polygons") {
    auto D0 = build_polygon_d(4, 0.5);
    auto D1 = build_polygon_d(5, 0.5);
    auto f0 = to_efactor(D0);
    auto f1 = to_efactor(D1);
    auto as = assemble_e_product(f0, f1);

    auto check_factor = [&](int lo, int hi, const EFactor<double>& f) {
        auto proj = project(as.config, lo, hi);
        auto hull = hull2d(proj.pts);
        // hull vertices are exactly the factor's apexes
        CHECK(hull.size() == f.apexes.size());
        for (int h : hull) {
            bool is_apex = false;
            for (const auto& a : f.apexes)
                if (std::fabs(a[0] - proj.pts[size_t(h)][0]) < 1e-9 &&
                    std::fabs(a[1] - proj.pts[size_t(h)][1]) < 1e-9)
                    is_apex = true;
            CHECK(is_apex);
        }
    };
    check_factor(0, 2, f0);
    check_factor(2, 4, f1);
}
