#pragma once

#include <string>
#include <vector>

#include "renormlab/core.hpp"

namespace renormlab {

// Side of a point relative to the critical point 0.
enum class Sym : signed char { L = -1, C = 0, R = 1 };

using Itinerary = std::vector<Sym>;

inline Sym side_of(ext x) { return x < 0 ? Sym::L : (x > 0 ? Sym::R : Sym::C); }
inline int sign_of(Sym s) { return static_cast<int>(s); }

char to_char(Sym s);
std::string to_string(const Itinerary& it);
Itinerary itinerary_from_string(const std::string& s);

// Order of points of a map that decreases left of 0 and increases right of 0,
// read from their itineraries: negative if the first point lies left of the second.
// Returns 0 when the itineraries agree on their common length or share a C.
int compare_itineraries(const Itinerary& a, const Itinerary& b);

// Symbols of f_c^k(0) for k = 1..n.
Itinerary kneading(ext c, int n);

// Number of leading symbols on which two itineraries agree.
int agreement_depth(const Itinerary& a, const Itinerary& b);

}  // namespace renormlab
