#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "kakeya/linalg.hpp"

namespace kakeya {

/// Text format, versioned and bit-exact across platforms:
///   kakeya-pointset v1
///   q=<q> p=<p> m=<m> mod=<c0,...,cm>
///   n=<n> card=<card>
///   <c0>,<c1>,...,<c_{n-1}>      one member per line, ascending index
void write_pointset(std::ostream& os, const PointSet& s);
std::string pointset_to_string(const PointSet& s);
void save_pointset(const std::string& path, const PointSet& s);

/// Owns the field the loaded set refers to.
struct LoadedPointSet {
    std::unique_ptr<Field> field;
    std::unique_ptr<PointSet> set;
};

LoadedPointSet read_pointset(std::istream& is);
LoadedPointSet load_pointset(const std::string& path);

}  // namespace kakeya
