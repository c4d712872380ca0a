#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "polya/geometry.hpp"

namespace polya {

inline constexpr std::string_view k_version = "0.1.0";

struct LoadedPolygon {
    ConvexPolygon polygon;
    bool reversed = false; // input was clockwise and got flipped on load
};

/// Reads a polygon from a JSON document: either a bare vertex array
/// [[x,y],...] or an object {"vertices": [[x,y],...]}. Clockwise input is
/// reversed (the `reversed` flag is set so callers can warn).
LoadedPolygon load_polygon(const std::filesystem::path& path);
LoadedPolygon parse_polygon(const std::string& text);

std::string polygon_to_json(const ConvexPolygon& poly);
void save_polygon(const std::filesystem::path& path, const ConvexPolygon& poly);

/// Comment header embedded in every output file: version, command, seed.
std::string file_header(std::string_view command_line, std::uint64_t seed);

void write_file(const std::filesystem::path& path, const std::string& contents);

/// Full-precision, locale-independent double formatting ("%.17g").
std::string format_double(double x);

} // namespace polya
