// Command-line front end: constructs E-polytopes of polygon products and
// related families, certifies coordinate files against claimed facets, and
// reports flags, fatness, duality, and symmetry realizability.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "epoly/epoly.hpp"

namespace {

using namespace epoly;

constexpr int EXIT_VERIFY_FAILED = 2;
constexpr int EXIT_INFEASIBLE = 3;
constexpr int EXIT_BAD_INPUT = 4;

Document read_document(const std::string& path) {
    if (path == "-") return parse_document(std::cin);
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot open " + path);
    return parse_document(in);
}

std::vector<int> parse_cycles(const std::string& notation, int n) {
    std::vector<int> perm = identity_perm(n);
    std::vector<int> cycle;
    std::string num;
    auto flush_num = [&]() {
        if (!num.empty()) {
            cycle.push_back(std::stoi(num));
            num.clear();
        }
    };
    for (char c : notation) {
        if (isdigit(c)) {
            num += c;
        } else if (c == ',' || c == ' ') {
            flush_num();
        } else if (c == '(') {
            cycle.clear();
        } else if (c == ')') {
            flush_num();
            for (size_t i = 0; i < cycle.size(); ++i) {
                int from = cycle[i], to = cycle[(i + 1) % cycle.size()];
                if (from < 0 || from >= n) throw DocumentError("cycle entry out of range");
                perm[size_t(from)] = to;
            }
            cycle.clear();
        } else {
            throw DocumentError("bad cycle notation");
        }
    }
    return perm;
}

void emit(const Document& doc) { serialize_document(std::cout, doc); }

template <class K>
int do_verify_config(const PointConfig<K>& cfg, const FaceLattice& claimed) {
    auto cert = certify_realization(cfg, claimed);
    if (cert.certified) {
        std::cout << "certified, facets=" << claimed.facets().size()
                  << ", min_margin=" << scalar_traits<K>::str(cert.global_min_margin)
                  << ", backend=" << (scalar_traits<K>::exact ? "rational" : "float") << "\n";
        return 0;
    }
    std::cout << "verification-failed: " << cert.reason << "\n";
    return EXIT_VERIFY_FAILED;
}

int do_verify(const Document& doc) {
    auto claimed = doc.claimed_lattice();
    return std::visit([&](const auto& cfg) { return do_verify_config(cfg, claimed); }, doc.points);
}

std::vector<std::pair<std::string, std::string>> base_meta(const std::string& construction) {
    return {{"construction", construction}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"E-polytopes of products of polygons: construction, certification, analysis"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "build a realization and print its document");
    construct->require_subcommand(1);

    auto* emn = construct->add_subcommand("emn", "E-polytope of C_m x C_n");
    int emn_m = 4, emn_n = 4;
    double emn_ratio = -1;
    std::string emn_method = "d";
    emn->add_option("--m", emn_m, "vertices of the first polygon")->required();
    emn->add_option("--n", emn_n, "vertices of the second polygon")->required();
    emn->add_option("--ratio", emn_ratio, "intersection ratio of the first factor");
    emn->add_option("--method", emn_method, "d | regular")->check(CLI::IsMember({"d", "regular"}));

    auto* e33 = construct->add_subcommand("e33", "E33 from nine intersection ratios");
    std::vector<double> e33_ratios;
    e33->add_option("--ratios", e33_ratios, "nine ratios r_xy in row-major order")->expected(9);

    auto* fam = construct->add_subcommand("family24", "4-parameter family of 24-cells");
    double fa1 = 0, fb1 = 0, fa2 = 0, fb2 = 0;
    fam->add_option("--a1", fa1);
    fam->add_option("--b1", fb1);
    fam->add_option("--a2", fa2);
    fam->add_option("--b2", fb2);

    auto* gal = construct->add_subcommand("gallery", "fixed coordinate tables");
    std::string gal_name;
    gal->add_option("name", gal_name, "no_proj_autos_24cell | regular_squares_e44 | feasible_e33")->required();

    auto* fac = construct->add_subcommand("factor", "one factor of the product construction");
    std::string fac_kind;
    int fac_dim = 3, fac_m = 4;
    double fac_ratio = 0.5;
    fac->add_option("--kind", fac_kind, "cube | simplex | polygon")->required();
    fac->add_option("--dim", fac_dim, "dimension (cube/simplex)");
    fac->add_option("--m", fac_m, "polygon vertex count");
    fac->add_option("--ratio", fac_ratio, "intersection ratio");

    // file commands
    std::string file_arg;
    auto* verify = app.add_subcommand("verify", "certify a document against its FACETS");
    verify->add_option("file", file_arg, "document path or -")->required();

    auto* flag = app.add_subcommand("flag", "chain counts of the claimed lattice");
    std::string flag_s = "";
    flag->add_option("file", file_arg)->required();
    flag->add_option("--S", flag_s, "comma-separated dimension set, e.g. 0,3");

    auto* fat = app.add_subcommand("fatness", "fatness of the claimed lattice");
    fat->add_option("file", file_arg)->required();

    auto* dualc = app.add_subcommand("dual-check", "self-duality of the claimed lattice");
    dualc->add_option("file", file_arg)->required();

    auto* symm = app.add_subcommand("symmetry", "affine/projective realizability of symmetries");
    std::string symm_perm;
    symm->add_option("file", file_arg)->required();
    symm->add_option("--perm", symm_perm, "vertex permutation in cycle notation");

    auto* exp = app.add_subcommand("export", "re-emit a document in another format");
    std::string exp_format = "polymake";
    exp->add_option("file", file_arg)->required();
    exp->add_option("--format", exp_format, "polymake | json")->check(CLI::IsMember({"polymake", "json"}));

    auto* imp = app.add_subcommand("import", "parse and re-emit a native document");
    imp->add_option("file", file_arg)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (emn->parsed()) {
            std::optional<double> ratio;
            if (emn_ratio >= 0) ratio = emn_ratio;
            auto method = emn_method == "regular" ? EmnMethod::regular : EmnMethod::d_polygons;
            auto prod = build_emn(emn_m, emn_n, ratio, method);
            auto meta = base_meta("emn");
            meta.push_back({"m", std::to_string(emn_m)});
            meta.push_back({"n", std::to_string(emn_n)});
            meta.push_back({"method", emn_method});
            meta.push_back({"certified", prod.certificate.certified ? "true" : "false"});
            meta.push_back({"min_margin", scalar_traits<double>::str(prod.certificate.global_min_margin)});
            emit(make_document(prod.config, &prod.lattice, meta));
            return 0;
        }
        if (e33->parsed()) {
            if (e33_ratios.size() != 9) throw DocumentError("--ratios expects nine values");
            PointConfig<double> tri{2, {{1, 0}, {0, 0}, {0, 1}}};
            RatioMatrix<double> rm;
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) rm.r[size_t(x)][size_t(y)] = e33_ratios[size_t(3 * x + y)];
            auto prod = e33_from_ratios(tri, tri, rm);
            auto meta = base_meta("e33");
            meta.push_back({"certified", prod.certificate.certified ? "true" : "false"});
            emit(make_document(prod.config, &prod.lattice, meta));
            return 0;
        }
        if (fam->parsed()) {
            using R = Rational;
            auto approx = [](double v) {
                return R(llround(v * 1000000), 1000000);
            };
            Family24Params<R> p{approx(fa1), approx(fb1), approx(fa2), approx(fb2)};
            auto cfg = family24(p);
            auto st = detect_e_product_structure(cfg);
            auto meta = base_meta("family24");
            emit(make_document(cfg, &st.claimed, meta));
            return 0;
        }
        if (gal->parsed()) {
            auto cfg = fixed_gallery<Rational>(gallery_name_from(gal_name));
            auto st = detect_e_product_structure(cfg);
            auto meta = base_meta("gallery");
            meta.push_back({"name", gal_name});
            emit(make_document(cfg, &st.claimed, meta));
            return 0;
        }
        if (fac->parsed()) {
            auto emit_factor = [&](const auto& f, const std::string& kind) {
                PointConfig<std::decay_t<decltype(f.body.pts[0][0])>> all = f.body;
                for (const auto& a : f.apexes) all.pts.push_back(a);
                FaceLattice el = e_lattice(f.lattice);
                auto meta = base_meta("factor");
                meta.push_back({"kind", kind});
                if (f.dim >= 3)
                    emit(make_document(all, &el, meta));
                else
                    emit(make_document(all, nullptr, meta));
            };
            if (fac_kind == "cube")
                emit_factor(build_cube_factor<Rational>(fac_dim), "cube");
            else if (fac_kind == "simplex")
                emit_factor(build_simplex_factor(fac_dim, fac_ratio), "simplex");
            else if (fac_kind == "polygon")
                emit_factor(to_efactor(fac_m >= 4 ? build_polygon_d(fac_m, fac_ratio)
                                                  : build_regular_d(fac_m, fac_ratio)),
                            "polygon");
            else
                throw DocumentError("unknown factor kind " + fac_kind);
            return 0;
        }
        if (verify->parsed()) return do_verify(read_document(file_arg));
        if (flag->parsed()) {
            auto doc = read_document(file_arg);
            auto L = doc.claimed_lattice();
            if (flag_s.empty()) {
                auto f = f_vector(L);
                std::cout << "f-vector:";
                for (long long v : f) std::cout << ' ' << v;
                std::cout << "\n";
            } else {
                std::vector<int> S;
                std::stringstream ss(flag_s);
                std::string tok;
                while (std::getline(ss, tok, ',')) S.push_back(std::stoi(tok));
                std::cout << "f_S = " << flag_entry(L, S) << "\n";
            }
            return 0;
        }
        if (fat->parsed()) {
            auto doc = read_document(file_arg);
            std::cout << "fatness = " << fatness(f_vector(doc.claimed_lattice())).str() << "\n";
            return 0;
        }
        if (dualc->parsed()) {
            auto doc = read_document(file_arg);
            auto L = doc.claimed_lattice();
            auto iso = lattice_isomorphism(L, dual_lattice(L));
            std::cout << (iso ? "self-dual" : "not self-dual") << "\n";
            return iso ? 0 : EXIT_VERIFY_FAILED;
        }
        if (symm->parsed()) {
            auto doc = read_document(file_arg);
            auto L = doc.claimed_lattice();
            std::vector<std::pair<std::string, std::vector<int>>> perms;
            if (!symm_perm.empty()) {
                perms.push_back({"perm", parse_cycles(symm_perm, doc.n_points())});
            } else {
                std::string ms = doc.meta_value("m"), ns = doc.meta_value("n");
                if (ms.empty() || ns.empty())
                    throw DocumentError("symmetry: give --perm or a document with m/n metadata");
                auto rs = rotation_symmetries(std::stoi(ms), std::stoi(ns), &L);
                perms = {{"S_m", rs.sm}, {"S_n", rs.sn}, {"T", rs.t}};
            }
            auto report = std::visit([&](const auto& cfg) { return symmetry_report(cfg, L, perms); },
                                     doc.points);
            for (const auto& e : report.entries)
                std::cout << e.name << ": lattice_automorphism=" << (e.is_lattice_automorphism ? "yes" : "no")
                          << " affine=" << (e.affine ? "yes" : "no")
                          << " projective=" << (e.projective ? "yes" : "no") << "\n";
            return 0;
        }
        if (exp->parsed()) {
            auto doc = read_document(file_arg);
            if (exp_format == "polymake")
                export_polymake(std::cout, doc);
            else
                export_json(std::cout, doc);
            return 0;
        }
        if (imp->parsed()) {
            emit(read_document(file_arg));
            return 0;
        }
    } catch (const DocumentError& e) {
        std::cerr << "error: bad-input: " << e.what() << "\n";
        return EXIT_BAD_INPUT;
    } catch (const std::domain_error& e) {
        std::cerr << "error: infeasible: " << e.what() << "\n";
        return EXIT_INFEASIBLE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_BAD_INPUT;
    }
    return EXIT_BAD_INPUT;
}
