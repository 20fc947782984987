#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "geometry.hpp"

namespace epoly {

namespace gallery_data {

// Transcribed coordinate tables, one row per vertex, entries as rational
// literals. Kept in one place and guarded by a checksum test against
// transcription drift.

inline constexpr const char* regular_squares_e44[24][4] = {
    {"1", "1", "1", "1"},     {"1", "1", "1", "-1"},    {"1", "1", "-1", "1"},    {"1", "1", "-1", "-1"},
    {"1", "-1", "1", "1"},    {"1", "-1", "1", "-1"},   {"1", "-1", "-1", "1"},   {"1", "-1", "-1", "-1"},
    {"-1", "1", "1", "1"},    {"-1", "1", "1", "-1"},   {"-1", "1", "-1", "1"},   {"-1", "1", "-1", "-1"},
    {"-1", "-1", "1", "1"},   {"-1", "-1", "1", "-1"},  {"-1", "-1", "-1", "1"},  {"-1", "-1", "-1", "-1"},
    {"3/5", "9/5", "-3/5", "-3/5"},   {"9/5", "-3/5", "-3/5", "3/5"},
    {"-3/5", "-9/5", "3/5", "3/5"},   {"-9/5", "3/5", "3/5", "-3/5"},
    {"-3/5", "3/5", "3/5", "9/5"},    {"-3/5", "-3/5", "-9/5", "3/5"},
    {"3/5", "-3/5", "-3/5", "-9/5"},  {"3/5", "3/5", "9/5", "-3/5"},
};

inline constexpr const char* no_proj_autos_24cell[24][4] = {
    {"-1", "5/4", "-1", "1"},   {"-1", "5/4", "-1", "-1"},  {"-1", "5/4", "1", "-1"},  {"-1", "5/4", "5/3", "1"},
    {"-1", "-1", "-1", "1"},    {"-1", "-1", "-1", "-1"},   {"-1", "-1", "1", "-1"},   {"-1", "-1", "5/3", "1"},
    {"1", "-1", "-1", "1"},     {"1", "-1", "-1", "-1"},    {"1", "-1", "1", "-1"},    {"1", "-1", "5/3", "1"},
    {"1", "23/12", "-1", "1"},  {"1", "23/12", "-1", "-1"}, {"1", "23/12", "1", "-1"}, {"1", "23/12", "5/3", "1"},
    {"-1/2", "-1/2", "-3/2", "1/2"},  {"-1/2", "-1/2", "-5/6", "-3/2"},
    {"-1/2", "-1/2", "17/6", "-1/2"}, {"-1/2", "-1/2", "1/2", "5/2"},
    {"-3/2", "-5/6", "-1/2", "-1/2"}, {"1/2", "-3/2", "-1/2", "-1/2"},
    {"5/2", "1/2", "-1/2", "-1/2"},   {"-1/2", "10/3", "-1/2", "-1/2"},
};

inline constexpr const char* feasible_e33[15][4] = {
    {"1", "0", "1", "0"},
    {"1", "0", "0", "0"},
    {"1", "0", "0", "1"},
    {"0", "0", "1", "0"},
    {"0", "0", "0", "0"},
    {"0", "0", "0", "1"},
    {"0", "1", "1", "0"},
    {"0", "1", "0", "0"},
    {"0", "1", "0", "1"},
    {"9/247", "289/247", "819/1387", "364/1387"},
    {"289/247", "-51/247", "364/1387", "204/1387"},
    {"-51/247", "9/247", "204/1387", "819/1387"},
    {"153/494", "34/247", "169/1387", "1764/1387"},
    {"34/247", "21/38", "1764/1387", "-546/1387"},
    {"21/38", "153/494", "-546/1387", "169/1387"},
};

// sign patterns of the 16 cube rows of the 24-cell family, in table order
inline constexpr int family24_signs[16][4] = {
    {-1, -1, -1, -1}, {1, 1, -1, -1},  {1, -1, 1, -1},  {-1, 1, 1, -1},
    {1, -1, -1, 1},   {-1, 1, -1, 1},  {-1, -1, 1, 1},  {1, 1, 1, 1},
    {1, -1, -1, -1},  {-1, 1, -1, -1}, {-1, -1, 1, -1}, {-1, -1, -1, 1},
    {1, 1, 1, -1},    {1, 1, -1, 1},   {1, -1, 1, 1},   {-1, 1, 1, 1},
};

} // namespace gallery_data

template <class K>
struct Family24Params {
    K a1, b1, a2, b2;

    static Family24Params zero() {
        using st = scalar_traits<K>;
        return {st::zero(), st::zero(), st::zero(), st::zero()};
    }
};

/// The 4-parameter family of 24-cells, rows in table order: 16 sign-pattern
/// rows, then 4 factor-1 apex rows with image (a1,b1), then 4 factor-0 apex
/// rows with image (a2,b2). Every parameter must lie strictly between -1 and 1.
template <class K>
PointConfig<K> family24(const Family24Params<K>& p) {
    using st = scalar_traits<K>;
    const K one = st::one();
    const K two = st::from_int(2);
    for (const K& v : {p.a1, p.b1, p.a2, p.b2})
        if (!(v > -one && v < one)) throw std::domain_error("family24: parameters must lie in (-1, 1)");

    PointConfig<K> out;
    out.dim = 4;
    for (const auto& row : gallery_data::family24_signs)
        out.pts.push_back({st::from_int(row[0]), st::from_int(row[1]), st::from_int(row[2]), st::from_int(row[3])});
    out.pts.push_back({p.a1, p.b1, p.a2, -two - p.b2});
    out.pts.push_back({p.a1, p.b1, two - p.a2, p.b2});
    out.pts.push_back({p.a1, p.b1, p.a2, two - p.b2});
    out.pts.push_back({p.a1, p.b1, -two - p.a2, p.b2});
    out.pts.push_back({p.a1, two - p.b1, p.a2, p.b2});
    out.pts.push_back({-two - p.a1, p.b1, p.a2, p.b2});
    out.pts.push_back({p.a1, -two - p.b1, p.a2, p.b2});
    out.pts.push_back({two - p.a1, p.b1, p.a2, p.b2});
    return out;
}

enum class GalleryName { no_proj_autos_24cell, regular_squares_e44, feasible_e33 };

inline GalleryName gallery_name_from(const std::string& s) {
    if (s == "no_proj_autos_24cell") return GalleryName::no_proj_autos_24cell;
    if (s == "regular_squares_e44") return GalleryName::regular_squares_e44;
    if (s == "feasible_e33") return GalleryName::feasible_e33;
    throw std::invalid_argument("unknown gallery name: " + s);
}

/// Exact coordinates of the named fixed table, in table row order.
template <class K>
PointConfig<K> fixed_gallery(GalleryName name) {
    using st = scalar_traits<K>;
    PointConfig<K> out;
    out.dim = 4;
    auto load = [&](const auto& table) {
        for (const auto& row : table) {
            Vec<K> p;
            for (const char* lit : row) p.push_back(st::parse(lit));
            out.pts.push_back(std::move(p));
        }
    };
    switch (name) {
        case GalleryName::no_proj_autos_24cell: load(gallery_data::no_proj_autos_24cell); break;
        case GalleryName::regular_squares_e44: load(gallery_data::regular_squares_e44); break;
        case GalleryName::feasible_e33: load(gallery_data::feasible_e33); break;
    }
    return out;
}

/// Affine rank of each labeled quadruple (2 = coplanar square candidate).
template <class K>
std::vector<int> internal_squares(const PointConfig<K>& config,
                                  const std::vector<std::array<int, 4>>& quadruples) {
    std::vector<int> ranks;
    for (const auto& q : quadruples) {
        for (int l : q)
            if (l < 0 || l >= config.size()) throw std::out_of_range("internal_squares: bad label");
        ranks.push_back(affine_rank(config, {q[0], q[1], q[2], q[3]}));
    }
    return ranks;
}

/// The four factor-1 apex rows of the family table. They share their first
/// two coordinates, so they stay coplanar (rank 2) for every parameter value.
/// Resolved empirically as the quadruple the family's source describes by
/// vertex numbers; neither 0- nor 1-based reading of those numbers is
/// coplanar, this one is.
inline std::array<int, 4> family24_apex_plane_quadruple() { return {16, 17, 18, 19}; }

/// Squares of the inscribed cubes (rows 8..23 and rows 0..7+16..23) that are
/// genuine geometric squares at p = 0 and lose coplanarity for generic
/// parameters. Determined empirically over all coplanar quadruples.
inline std::vector<std::array<int, 4>> family24_internal_squares() {
    return {{8, 9, 16, 19}, {8, 10, 16, 22}, {0, 1, 16, 19}, {0, 2, 16, 22}};
}

/// FNV-1a checksum of the canonical transcription strings.
inline uint64_t gallery_checksum() {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](const char* s) {
        for (const char* c = s; *c; ++c) {
            h ^= uint64_t(uint8_t(*c));
            h *= 1099511628211ull;
        }
        h ^= uint64_t(';');
        h *= 1099511628211ull;
    };
    for (const auto& row : gallery_data::regular_squares_e44)
        for (const char* s : row) mix(s);
    for (const auto& row : gallery_data::no_proj_autos_24cell)
        for (const char* s : row) mix(s);
    for (const auto& row : gallery_data::feasible_e33)
        for (const char* s : row) mix(s);
    for (const auto& row : gallery_data::family24_signs)
        for (int v : row) mix(v > 0 ? "1" : "-1");
    return h;
}

} // namespace epoly
