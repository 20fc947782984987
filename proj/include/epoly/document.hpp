#pragma once

#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "certify.hpp"
#include "geometry.hpp"
#include "lattice.hpp"

#include <json.hpp>

namespace epoly {

struct DocumentError : std::runtime_error {
    explicit DocumentError(const std::string& m) : std::runtime_error(m) {}
};

// Line-oriented text document: sections DIM, BACKEND, POINTS (homogeneous
// rows with leading 1), optional FACETS ({..} vertex label sets) and META
// (key value) lines. Rational literals are "p/q" or integers; float entries
// use a fixed 17-significant-digit decimal encoding.
struct Document {
    enum class Backend { rational, floating };

    int dim = 0;
    Backend backend = Backend::rational;
    std::variant<PointConfig<Rational>, PointConfig<double>> points;
    std::vector<std::vector<int>> facets;  // empty = section absent
    std::vector<std::pair<std::string, std::string>> meta;

    bool has_facets() const { return !facets.empty(); }
    int n_points() const {
        return std::visit([](const auto& c) { return c.size(); }, points);
    }
    std::string meta_value(const std::string& key) const {
        for (const auto& [k, v] : meta)
            if (k == key) return v;
        return {};
    }

    FaceLattice claimed_lattice() const {
        if (!has_facets()) throw DocumentError("document has no FACETS section");
        std::vector<Bitset> fs;
        for (const auto& f : facets) fs.push_back(Bitset::of(n_points(), f));
        return FaceLattice::from_incidence(n_points(), fs);
    }
};

template <class K>
Document make_document(const PointConfig<K>& config, const FaceLattice* lattice = nullptr,
                       std::vector<std::pair<std::string, std::string>> meta = {}) {
    Document doc;
    doc.dim = config.dim;
    doc.backend = scalar_traits<K>::exact ? Document::Backend::rational : Document::Backend::floating;
    doc.points = config;
    if (lattice)
        for (const auto& F : lattice->facets()) doc.facets.push_back(F.members());
    doc.meta = std::move(meta);
    return doc;
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

template <class K>
PointConfig<K> parse_points(std::istream& in, int dim, int count) {
    PointConfig<K> cfg;
    cfg.dim = dim;
    std::string line;
    while (int(cfg.pts.size()) < count && std::getline(in, line)) {
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (int(toks.size()) != dim + 1) throw DocumentError("point row with wrong arity: " + line);
        if (toks[0] != "1") throw DocumentError("homogeneous rows must have leading coordinate 1");
        Vec<K> p;
        for (int j = 1; j <= dim; ++j) p.push_back(scalar_traits<K>::parse(toks[size_t(j)]));
        cfg.pts.push_back(std::move(p));
    }
    if (int(cfg.pts.size()) != count) throw DocumentError("POINTS section ended early");
    return cfg;
}

} // namespace detail

inline Document parse_document(std::istream& in) {
    Document doc;
    bool have_dim = false, have_backend = false, have_points = false;
    std::string line;
    while (std::getline(in, line)) {
        auto toks = detail::split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        const std::string& kw = toks[0];
        if (kw == "DIM") {
            if (toks.size() != 2) throw DocumentError("bad DIM line");
            doc.dim = std::stoi(toks[1]);
            have_dim = true;
        } else if (kw == "BACKEND") {
            if (toks.size() != 2 || (toks[1] != "rational" && toks[1] != "float"))
                throw DocumentError("bad BACKEND line");
            doc.backend = toks[1] == "rational" ? Document::Backend::rational : Document::Backend::floating;
            have_backend = true;
        } else if (kw == "POINTS") {
            if (!have_dim || !have_backend) throw DocumentError("POINTS before DIM/BACKEND");
            if (toks.size() != 2) throw DocumentError("bad POINTS line");
            int count = std::stoi(toks[1]);
            if (doc.backend == Document::Backend::rational)
                doc.points = detail::parse_points<Rational>(in, doc.dim, count);
            else
                doc.points = detail::parse_points<double>(in, doc.dim, count);
            have_points = true;
        } else if (kw == "FACETS") {
            if (toks.size() != 2) throw DocumentError("bad FACETS line");
            int count = std::stoi(toks[1]);
            for (int i = 0; i < count; ++i) {
                if (!std::getline(in, line)) throw DocumentError("FACETS section ended early");
                std::string stripped;
                for (char c : line)
                    if (c != '{' && c != '}') stripped += c;
                auto nums = detail::split_ws(stripped);
                if (nums.empty()) {
                    --i;
                    continue;
                }
                std::vector<int> f;
                for (const auto& s : nums) f.push_back(std::stoi(s));
                doc.facets.push_back(std::move(f));
            }
        } else if (kw == "META") {
            if (toks.size() < 2) throw DocumentError("bad META line");
            std::string value;
            for (size_t i = 2; i < toks.size(); ++i) {
                if (i > 2) value += ' ';
                value += toks[i];
            }
            doc.meta.push_back({toks[1], value});
        } else {
            throw DocumentError("unknown section: " + kw);
        }
    }
    if (!have_points) throw DocumentError("document without POINTS");
    return doc;
}

inline void serialize_document(std::ostream& out, const Document& doc) {
    out << "DIM " << doc.dim << "\n";
    out << "BACKEND " << (doc.backend == Document::Backend::rational ? "rational" : "float") << "\n";
    std::visit(
        [&](const auto& cfg) {
            using K = std::decay_t<decltype(cfg.pts[0][0])>;
            out << "POINTS " << cfg.size() << "\n";
            for (const auto& p : cfg.pts) {
                out << "1";
                for (const auto& x : p) out << ' ' << scalar_traits<K>::str(x);
                out << "\n";
            }
        },
        doc.points);
    if (doc.has_facets()) {
        out << "FACETS " << doc.facets.size() << "\n";
        for (const auto& f : doc.facets) {
            out << '{';
            for (size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[size_t(i)];
            out << "}\n";
        }
    }
    for (const auto& [k, v] : doc.meta) out << "META " << k << ' ' << v << "\n";
}

inline void export_polymake(std::ostream& out, const Document& doc) {
    out << "POINTS\n";
    std::visit(
        [&](const auto& cfg) {
            using K = std::decay_t<decltype(cfg.pts[0][0])>;
            for (const auto& p : cfg.pts) {
                out << "1";
                for (const auto& x : p) out << ' ' << scalar_traits<K>::str(x);
                out << "\n";
            }
        },
        doc.points);
    if (doc.has_facets()) {
        out << "\nVERTICES_IN_FACETS\n";
        for (const auto& f : doc.facets) {
            out << '{';
            for (size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[size_t(i)];
            out << "}\n";
        }
    }
}

inline void export_json(std::ostream& out, const Document& doc) {
    nlohmann::json j;
    j["dim"] = doc.dim;
    j["backend"] = doc.backend == Document::Backend::rational ? "rational" : "float";
    j["points"] = nlohmann::json::array();
    std::visit(
        [&](const auto& cfg) {
            using K = std::decay_t<decltype(cfg.pts[0][0])>;
            for (const auto& p : cfg.pts) {
                nlohmann::json row = nlohmann::json::array();
                row.push_back("1");
                for (const auto& x : p) row.push_back(scalar_traits<K>::str(x));
                j["points"].push_back(row);
            }
        },
        doc.points);
    if (doc.has_facets()) j["facets"] = doc.facets;
    nlohmann::json meta = nlohmann::json::object();
    for (const auto& [k, v] : doc.meta) meta[k] = v;
    j["meta"] = meta;
    out << j.dump(2) << "\n";
}

} // namespace epoly
