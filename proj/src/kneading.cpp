#include "renormlab/kneading.hpp"

#include <algorithm>

#include "renormlab/errors.hpp"

namespace renormlab {

char to_char(Sym s) {
  switch (s) {
    case Sym::L: return 'L';
    case Sym::C: return 'C';
    case Sym::R: return 'R';
  }
  return '?';
}

std::string to_string(const Itinerary& it) {
  std::string s;
  s.reserve(it.size());
  for (Sym x : it) s.push_back(to_char(x));
  return s;
}

Itinerary itinerary_from_string(const std::string& s) {
  Itinerary out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case 'L': out.push_back(Sym::L); break;
      case 'C': out.push_back(Sym::C); break;
      case 'R': out.push_back(Sym::R); break;
      default: throw ParseError(std::string("unknown itinerary symbol '") + ch + "'");
    }
  }
  return out;
}

int compare_itineraries(const Itinerary& a, const Itinerary& b) {
  const std::size_t n = std::min(a.size(), b.size());
  int orientation = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) {
      const int d = sign_of(a[i]) - sign_of(b[i]);
      return orientation * (d > 0 ? 1 : -1);
    }
    if (a[i] == Sym::C) return 0;
    orientation *= sign_of(a[i]);
  }
  return 0;
}

Itinerary kneading(ext c, int n) {
  Itinerary out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  ext x = 0;
  for (int k = 0; k < n; ++k) {
    x = quad(c, x);
    out.push_back(side_of(x));
  }
  return out;
}

int agreement_depth(const Itinerary& a, const Itinerary& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return static_cast<int>(i);
}

}  // namespace renormlab
