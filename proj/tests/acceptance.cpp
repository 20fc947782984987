// Acceptance suite: one line per criterion, nonzero exit code on any failure.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <sstream>

#include "epoly/epoly.hpp"

using namespace epoly;
using R = Rational;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::mt19937 gen(424242u);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }

struct Criterion {
    int id;
    std::string what;
    bool ok = true;
    std::string detail;
    Clock::time_point start = Clock::now();

    Criterion(int id_, std::string what_) : id(id_), what(std::move(what_)) {}
    void require(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
    ~Criterion() {
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        std::printf("C%02d %s  %s (%.1fs)%s%s\n", id, ok ? "PASS" : "FAIL", what.c_str(), secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failures;
        std::fflush(stdout);
    }
};

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

} // namespace

static void criterion1() {
    Criterion c(1, "flag vectors of E(C_m x C_n) match the closed form, 3 <= m,n <= 8");
    for (int m = 3; m <= 8; ++m)
        for (int n = 3; n <= 8; ++n) {
            auto E = emn_lattice(m, n);
            long long v = (long long)m * n + m + n;
            c.require(f_vector(E) == FVector{v, 6ll * m * n, 6ll * m * n, v}, fmt("f-vector off at (%d,%d)", m, n));
            c.require(flag_entry(E, {0, 3}) == 8ll * m * n + 2 * (m + n), fmt("f_03 off at (%d,%d)", m, n));
        }
}

static void criterion2() {
    Criterion c(2, "D-based E_mn certifies with margins > 1e-7 for 3 <= m,n <= 10, r = 1/2");
    double worst_margin = 1e300, worst_time = 0;
    for (int m = 3; m <= 10 && c.ok; ++m)
        for (int n = 3; n <= 10 && c.ok; ++n) {
            auto t0 = Clock::now();
            try {
                auto as = build_emn(m, n, 0.5);
                double secs = std::chrono::duration<double>(Clock::now() - t0).count();
                worst_time = std::max(worst_time, secs);
                c.require(as.certificate.certified, fmt("not certified at (%d,%d)", m, n));
                worst_margin = std::min(worst_margin, as.certificate.global_min_margin);
                c.require(as.certificate.global_min_margin > 1e-7, fmt("margin too small at (%d,%d)", m, n));
                c.require(int(as.lattice.facets().size()) == m * n + m + n, fmt("facet count at (%d,%d)", m, n));
                c.require(secs <= 1.0, fmt("instance (%d,%d) took %.2fs", m, n, secs));
            } catch (const std::exception& e) {
                c.require(false, fmt("(%d,%d): %s", m, n, e.what()));
            }
        }
    if (c.ok) c.detail = fmt("min margin %.2e, max instance %.2fs", worst_margin, worst_time);
}

static void criterion3() {
    Criterion c(3, "D(m,r) apex ratios within 1e-9; parabola identities hold on 200 samples");
    for (int m = 4; m <= 10; ++m)
        for (double r : {0.35, 0.5, 0.6}) {
            auto D = build_polygon_d(m, r);
            auto planes = polygon_edge_planes(D.polygon);
            for (const auto& apex : D.e_polygon.pts)
                c.require(std::fabs(segment_boundary_ratio(D.s, apex, planes) - r) < 1e-9,
                          fmt("ratio off for D(%d,%.2f)", m, r));
        }
    auto crossing = [](const Vec<double>& a, const Vec<double>& b, const Vec<double>& p, const Vec<double>& q) {
        double nx = q[1] - p[1], ny = p[0] - q[0];
        double cc = nx * p[0] + ny * p[1];
        double sa = nx * a[0] + ny * a[1] - cc;
        double sb = nx * b[0] + ny * b[1] - cc;
        return sa / (sa - sb);
    };
    for (int i = 0; i < 200; ++i) {
        double r = uniform(0.02, 0.65);
        double a = uniform(0.0, 4.0);
        double C = d_next_abscissa(a, r);
        c.require(C > 1.0, "C(a) <= 1");
        Vec<double> s{0, 1}, p{(a + C) / 2, a * C};
        c.require(std::fabs(crossing(s, p, {a, a * a}, {C, C * C}) - r) < 1e-9, "secant ratio off");
        double at = uniform(1.001, 4.0);
        double ty = d_top_height(at, r), tx = d_top_apex_abscissa(at, r);
        c.require(ty > at * at, "top height not above the parabola");
        c.require(std::fabs(ty - (2 * at * tx - at * at)) < 1e-9, "top identity off");
        c.require(std::fabs(crossing(s, {tx, ty}, {at, at * at}, {0, ty}) - r) < 1e-9, "top edge ratio off");
    }
}

static void criterion4() {
    Criterion c(4, "E_mn is 2-simple 2-simplicial on the grid; the products are not");
    for (int m = 3; m <= 8; ++m)
        for (int n = 3; n <= 8; ++n) {
            auto P = product_lattice(polygon_lattice(m), polygon_lattice(n));
            c.require(check_2s2s(e_lattice(P)), fmt("E(%d,%d) not 2s2s", m, n));
            c.require(!check_2s2s(P), fmt("product (%d,%d) reported 2s2s", m, n));
        }
}

static void criterion5() {
    Criterion c(5, "explicit self-duality is an order-2 antiautomorphism on the grid");
    for (int m = 3; m <= 8; ++m)
        for (int n = 3; n <= 8; ++n) {
            try {
                self_duality_map(m, n);
            } catch (const std::exception& e) {
                c.require(false, fmt("(%d,%d): %s", m, n, e.what()));
            }
        }
}

static void criterion6() {
    Criterion c(6, "24-cell coherence: regular pair, family24(0), regular-squares table");
    auto reference = emn_lattice(4, 4);
    c.require(f_vector(reference) == FVector{24, 96, 96, 24}, "reference f-vector");

    auto rp = regular_pair(4, 4);
    c.require(rp.has_value(), "regular_pair(4,4) infeasible");
    auto as = assemble_e_product(to_efactor(rp->first), to_efactor(rp->second));
    c.require(as.certificate.certified, "regular pair assembly not certified");
    c.require(lattice_isomorphism(as.lattice, reference).has_value(), "assembly not isomorphic to E44");

    auto fam = family24(Family24Params<R>::zero());
    auto stf = detect_e_product_structure(fam);
    c.require(certify_realization(fam, stf.claimed).certified, "family24(0) not certified");
    c.require(lattice_isomorphism(stf.claimed, reference).has_value(), "family24(0) not a 24-cell");

    auto tab = fixed_gallery<R>(GalleryName::regular_squares_e44);
    auto stt = detect_e_product_structure(tab);
    c.require(certify_realization(tab, stt.claimed).certified, "regular_squares_e44 not certified");
    c.require(lattice_isomorphism(stt.claimed, reference).has_value(), "regular_squares_e44 not a 24-cell");
}

static void criterion7() {
    Criterion c(7, "golden E33 certifies exactly; ratio recovery re-solves to the same points");
    auto cfg = fixed_gallery<R>(GalleryName::feasible_e33);
    auto st = detect_e_product_structure(cfg);
    auto cert = certify_realization(cfg, st.claimed);
    c.require(cert.certified && cert.global_max_residual == R(0), "exact certification failed");
    c.require(lattice_isomorphism(st.claimed, emn_lattice(3, 3)).has_value(), "not an E33 lattice");

    auto ratios = measure_e33_ratios(st.f0, st.f1);
    auto sys = solve_triangle_ratio_system(st.f0.body, st.f1.body, ratios);
    c.require(sys.status == E33Status::feasible, "re-solve infeasible");
    if (sys.status == E33Status::feasible) {
        for (int x = 0; x < 3; ++x) {
            c.require(sys.solution.w[size_t(x)] == st.f0.beta[size_t(x)], "w point differs");
            c.require(sys.solution.wp[size_t(x)] == st.f1.beta[size_t(x)], "w' point differs");
        }
        auto match = [&](const PointConfig<R>& ap, const EFactor<R>& f) {
            for (int k = 0; k < 3; ++k)
                if (ap.pts[size_t(k)] != f.apexes[size_t(k)]) return false;
            return true;
        };
        bool b0 = match(circumscribe_e_triangle(st.f0.body, sys.solution.delta, Branch::plus), st.f0) ||
                  match(circumscribe_e_triangle(st.f0.body, sys.solution.delta, Branch::minus), st.f0);
        bool b1 = match(circumscribe_e_triangle(st.f1.body, sys.solution.deltap, Branch::plus), st.f1) ||
                  match(circumscribe_e_triangle(st.f1.body, sys.solution.deltap, Branch::minus), st.f1);
        c.require(b0 && b1, "circumscription does not reproduce the table apexes");
    }
}

static void criterion8() {
    Criterion c(8, "random family24 samples certify; internal squares behave");
    std::uniform_int_distribution<int> num(-899, 899);
    for (int trial = 0; trial < 20 && c.ok; ++trial) {
        Family24Params<R> p{R(num(gen), 1000), R(num(gen), 1000), R(num(gen), 1000), R(num(gen), 1000)};
        try {
            auto cfg = family24(p);
            auto st = detect_e_product_structure(cfg);
            c.require(certify_realization(cfg, st.claimed).certified, fmt("sample %d not certified", trial));
            c.require(lattice_isomorphism(st.claimed, emn_lattice(4, 4)).has_value(),
                      fmt("sample %d not a 24-cell", trial));
        } catch (const std::exception& e) {
            c.require(false, fmt("sample %d: %s", trial, e.what()));
        }
    }
    auto squares = family24_internal_squares();
    auto c0 = family24(Family24Params<R>::zero());
    for (int r : internal_squares(c0, squares)) c.require(r == 2, "designated quadruple not coplanar at p=0");
    c.require(internal_squares(c0, {family24_apex_plane_quadruple()})[0] == 2, "apex plane not coplanar at p=0");
    for (int trial = 0; trial < 5; ++trial) {
        Family24Params<R> p{R(num(gen), 1000), R(num(gen), 1000), R(num(gen), 1000), R(num(gen), 1000)};
        if (p.a1.sign() == 0) p.a1 = R(1, 2);
        auto ranks = internal_squares(family24(p), squares);
        c.require(std::count(ranks.begin(), ranks.end(), 3) >= 1,
                  fmt("no designated square destroyed at sample %d", trial));
    }
}

static void criterion9() {
    Criterion c(9, "regular pairs feasible exactly for (3,3),(3,4),(3,5),(3,6),(4,4)");
    for (int m = 3; m <= 12; ++m)
        for (int n = m; n <= 12; ++n) {
            bool expect = (m == 3 && n <= 6) || (m == 4 && n == 4);
            bool got = regular_pair(m, n).has_value();
            c.require(got == expect, fmt("(%d,%d): got %s", m, n, got ? "feasible" : "infeasible"));
        }
}

static void criterion10() {
    Criterion c(10, "fatness matches the closed form; increases along the diagonal to 118/23");
    R prev(0);
    for (int m = 3; m <= 10; ++m)
        for (int n = 3; n <= 10; ++n) {
            auto f = f_vector(emn_lattice(m, n));
            R expect = R(12 * m * n - 20) / R(2 * m * n + 2 * m + 2 * n - 10);
            c.require(fatness(f) == expect, fmt("fatness off at (%d,%d)", m, n));
            if (m == n) {
                c.require(fatness(f) > prev, fmt("diagonal not increasing at m=%d", m));
                prev = fatness(f);
            }
        }
    auto f1010 = f_vector(emn_lattice(10, 10));
    c.require(fatness(f1010) == R(118, 23), "F(E_10,10) != 118/23");
    c.require(fatness(f1010) > R(5073, 1000), "F(E_10,10) <= 5.073");
}

static void criterion11() {
    Criterion c(11, "symmetry realizability: regular 24-cell, D-based E56, no-projective table");
    auto rp = regular_pair(4, 4);
    auto as44 = assemble_e_product(to_efactor(rp->first), to_efactor(rp->second));
    auto rs44 = rotation_symmetries(4, 4);
    c.require(find_affine_symmetry(as44.config, rs44.sm).has_value(), "S_4 rotation not affine on regular E44");
    c.require(find_affine_symmetry(as44.config, rs44.sn).has_value(), "S_4' rotation not affine on regular E44");

    auto as56 = build_emn(5, 6);
    auto rs56 = rotation_symmetries(5, 6);
    c.require(!find_affine_symmetry(as56.config, rs56.t).has_value(), "T affinely realizable on D-based E56");

    auto cfg = fixed_gallery<R>(GalleryName::no_proj_autos_24cell);
    auto st = detect_e_product_structure(cfg);
    auto autos = lattice_automorphisms(st.claimed);
    c.require(autos.size() == 1152, fmt("automorphism count %zu != 1152", autos.size()));
    auto id = identity_perm(24);
    int tested = 0;
    for (const auto& a : autos) {
        if (a.vertex_map == id) continue;
        ++tested;
        if (find_projective_symmetry(cfg, a.vertex_map).has_value()) {
            c.require(false, "a nontrivial automorphism is projectively realizable");
            break;
        }
    }
    c.require(tested == 1151, fmt("tested %d nontrivial automorphisms", tested));
}

static void criterion12() {
    Criterion c(12, "higher-dimensional factors and one 5- and 6-dimensional product");
    for (int d : {2, 3, 4})
        for (double r : {0.5, 0.6}) {
            try {
                auto f = build_simplex_factor(d, r);  // validates beyond/beneath and the ratio
                for (const auto& a : f.apexes)
                    c.require(std::fabs(segment_boundary_ratio(*f.interior, a, f.facet_planes) - r) < 1e-9,
                              fmt("simplex(%d,%.1f) ratio off", d, r));
            } catch (const std::exception& e) {
                c.require(false, fmt("simplex(%d,%.1f): %s", d, r, e.what()));
            }
        }
    for (int d : {1, 2, 3, 4}) {
        try {
            auto f = build_cube_factor<R>(d);
            for (const auto& a : f.apexes)
                c.require(segment_boundary_ratio(*f.interior, a, f.facet_planes) == R(1, 2),
                          fmt("cube(%d) ratio off", d));
        } catch (const std::exception& e) {
            c.require(false, fmt("cube(%d): %s", d, e.what()));
        }
    }
    // pairing checks: complementary ratios pass, equal non-half ratios fail
    c.require(check_condition_b(build_simplex_factor(3, 0.5), build_cube_factor<double>(2)).pass,
              "simplex(3,1/2) x cube(2) fails condition (B')");
    {
        auto bad = check_condition_b(build_simplex_factor(2, 0.6), build_simplex_factor(2, 0.6));
        c.require(!bad.pass && std::fabs(bad.max_gap - 0.2) < 1e-6, "0.6/0.6 pairing should fail by 0.2");
    }
    {
        auto t0 = Clock::now();
        auto as5 = assemble_e_product(build_simplex_factor(2, 0.5), build_cube_factor<double>(3));
        c.require(as5.certificate.certified, "5-dim product not certified");
        auto P = product_lattice(simplex_lattice(2), cube_lattice(3));
        c.require(f_vector(as5.lattice) == e_fvector_formula(f_vector(P), flag_vector(P)),
                  "5-dim f-vector mismatch");
        c.require(std::chrono::duration<double>(Clock::now() - t0).count() <= 10.0, "5-dim took too long");
    }
    {
        auto t0 = Clock::now();
        auto cube = build_cube_factor<R>(3);
        auto as6 = assemble_e_product(cube, cube);
        c.require(as6.certificate.certified, "6-dim product not certified");
        auto P = product_lattice(cube_lattice(3), cube_lattice(3));
        c.require(f_vector(as6.lattice) == e_fvector_formula(f_vector(P), flag_vector(P)),
                  "6-dim f-vector mismatch");
        c.require(std::chrono::duration<double>(Clock::now() - t0).count() <= 10.0, "6-dim took too long");
    }
}

static void criterion13() {
    Criterion c(13, ">= 95% of ratio samples in [0.45,0.55]^9 give certified E33 realizations");
    PointConfig<double> tri{2, {{1, 0}, {0, 0}, {0, 1}}};
    int feasible = 0, certified = 0;
    const int total = 100;
    for (int trial = 0; trial < total; ++trial) {
        RatioMatrix<double> rm;
        for (auto& row : rm.r)
            for (auto& v : row) v = uniform(0.45, 0.55);
        if (solve_triangle_ratio_system(tri, tri, rm).status != E33Status::feasible) continue;
        ++feasible;
        try {
            if (e33_from_ratios(tri, tri, rm).certificate.certified) ++certified;
        } catch (const std::exception&) {
        }
    }
    // Context for the failure: the box straddles the all-equal-ratio manifold,
    // where the 18x18 system is singular, so most samples leave it infeasible.
    // Around the known feasible ratio vector of the golden table the property
    // does hold; that neighbourhood rate is reported alongside.
    auto stg = detect_e_product_structure(fixed_gallery<R>(GalleryName::feasible_e33));
    auto golden = measure_e33_ratios(stg.f0, stg.f1);
    int near_golden = 0;
    for (int trial = 0; trial < total; ++trial) {
        RatioMatrix<double> rm;
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
                rm.r[size_t(x)][size_t(y)] =
                    golden.r[size_t(x)][size_t(y)].to_double() + uniform(-0.05, 0.05);
        try {
            if (e33_from_ratios(tri, tri, rm).certificate.certified) ++near_golden;
        } catch (const std::exception&) {
        }
    }
    c.detail = fmt("box [0.45,0.55]^9: %d/100 feasible, %d certified; golden+-0.05: %d/100 certified",
                   feasible, certified, near_golden);
    c.require(certified >= 95, c.detail);
}

static void criterion14() {
    Criterion c(14, "export/import round-trip is bit-exact on the rational gallery documents");
    for (auto name :
         {GalleryName::no_proj_autos_24cell, GalleryName::regular_squares_e44, GalleryName::feasible_e33}) {
        auto cfg = fixed_gallery<R>(name);
        auto st = detect_e_product_structure(cfg);
        auto doc = make_document(cfg, &st.claimed, {{"construction", "gallery"}});
        std::ostringstream os;
        serialize_document(os, doc);
        std::istringstream is(os.str());
        auto doc2 = parse_document(is);
        std::ostringstream os2;
        serialize_document(os2, doc2);
        c.require(os.str() == os2.str(), "round trip not bit-exact");
    }
}

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    criterion13();
    criterion14();
    if (failures == 0)
        std::printf("ACCEPTANCE: all criteria passed\n");
    else
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
