#include "renormlab/shuffle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "renormlab/errors.hpp"

namespace renormlab {

int Shuffle::critical_index() const {
  const auto it = std::find(perm.begin(), perm.end(), 1);
  return static_cast<int>(it - perm.begin()) + 1;
}

namespace {

void check_bijection(const std::vector<int>& perm) {
  const int p = static_cast<int>(perm.size());
  if (p < 1) throw NotABijection("empty permutation");
  std::vector<char> seen(static_cast<std::size_t>(p) + 1, 0);
  for (int v : perm) {
    if (v < 1 || v > p) throw NotABijection("value " + std::to_string(v) + " out of range");
    if (seen[static_cast<std::size_t>(v)]) {
      throw NotABijection("value " + std::to_string(v) + " repeated");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

void check_cycle(const std::vector<int>& perm) {
  const int p = static_cast<int>(perm.size());
  int i = 1, len = 0;
  do {
    i = perm[static_cast<std::size_t>(i - 1)];
    ++len;
  } while (i != 1);
  if (len != p) {
    throw NotACycle("the cycle through 1 has length " + std::to_string(len) + " < " +
                    std::to_string(p));
  }
}

void check_unimodal(const std::vector<int>& perm) {
  const int p = static_cast<int>(perm.size());
  const int k = static_cast<int>(std::find(perm.begin(), perm.end(), 1) - perm.begin()) + 1;
  for (int i = 1; i < k; ++i) {
    if (perm[static_cast<std::size_t>(i - 1)] <= perm[static_cast<std::size_t>(i)]) {
      throw NotUnimodal("not decreasing left of the critical index " + std::to_string(k) +
                        " at index " + std::to_string(i));
    }
  }
  for (int i = k; i < p; ++i) {
    if (perm[static_cast<std::size_t>(i - 1)] >= perm[static_cast<std::size_t>(i)]) {
      throw NotUnimodal("not increasing right of the critical index " + std::to_string(k) +
                        " at index " + std::to_string(i));
    }
  }
}

bool blocks_permuted(const std::vector<int>& perm, int q) {
  const int p = static_cast<int>(perm.size());
  for (int start = 0; start < p; start += q) {
    const int target = (perm[static_cast<std::size_t>(start)] - 1) / q;
    for (int i = start + 1; i < start + q; ++i) {
      if ((perm[static_cast<std::size_t>(i)] - 1) / q != target) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<int> renormalizing_block(const std::vector<int>& perm) {
  const int p = static_cast<int>(perm.size());
  for (int q = p - 1; q > 1; --q) {
    if (p % q == 0 && blocks_permuted(perm, q)) return q;
  }
  return std::nullopt;
}

Shuffle validate_unimodal_cycle(const std::vector<int>& perm) {
  check_bijection(perm);
  Shuffle s;
  s.perm = perm;
  if (perm.size() == 1) return s;
  check_cycle(perm);
  check_unimodal(perm);
  s.immediately_renormalizable = perm.size() == 2;
  s.tuned_block = renormalizing_block(perm);
  return s;
}

Shuffle validate_shuffle(const std::vector<int>& perm) {
  if (perm.size() < 2) throw PreconditionViolation("a shuffle has period at least 2");
  Shuffle s = validate_unimodal_cycle(perm);
  if (s.tuned_block) {
    const int q = *s.tuned_block;
    // Report the smallest block size, which is the first witness of the divisor scan.
    const int p = s.period();
    for (int d = 2; d < p; ++d) {
      if (p % d == 0 && blocks_permuted(perm, d)) throw Renormalizable(d, p / d);
    }
    throw Renormalizable(q, p / q);
  }
  return s;
}

Shuffle shuffle_of_center(ext c, int p) {
  if (p < 1) throw PreconditionViolation("period must be positive");
  std::vector<ext> orbit(static_cast<std::size_t>(p));
  ext x = 0;
  for (int k = 0; k < p; ++k) {
    orbit[static_cast<std::size_t>(k)] = x;
    x = quad(c, x);
    if (k + 1 < p && std::fabs(x) <= 1e-9L) {
      throw NotSuperattracting("critical orbit returns at time " + std::to_string(k + 1) +
                               " before the requested period " + std::to_string(p));
    }
  }
  if (!(std::fabs(x) <= 1e-9L)) {
    std::ostringstream os;
    os << "|f^" << p << "(0)| = " << static_cast<double>(std::fabs(x)) << " exceeds 1e-9";
    throw NotSuperattracting(os.str());
  }
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return orbit[static_cast<std::size_t>(a)] < orbit[static_cast<std::size_t>(b)];
  });
  const ext diam = orbit[static_cast<std::size_t>(order.back())] -
                   orbit[static_cast<std::size_t>(order.front())];
  for (int r = 1; r < p; ++r) {
    const ext gap = orbit[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] -
                    orbit[static_cast<std::size_t>(order[static_cast<std::size_t>(r - 1)])];
    if (gap <= 1e-6L * diam) {
      throw OrbitCollision("orbit points " + std::to_string(order[static_cast<std::size_t>(r - 1)]) +
                           " and " + std::to_string(order[static_cast<std::size_t>(r)]) +
                           " are closer than 1e-6 of the orbit diameter");
    }
  }
  std::vector<int> rank(static_cast<std::size_t>(p));
  for (int r = 0; r < p; ++r) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r + 1;
  std::vector<int> perm(static_cast<std::size_t>(p));
  for (int t = 0; t < p; ++t) {
    perm[static_cast<std::size_t>(rank[static_cast<std::size_t>(t)] - 1)] =
        rank[static_cast<std::size_t>((t + 1) % p)];
  }
  return validate_unimodal_cycle(perm);
}

Itinerary kneading_from_perm(const std::vector<int>& perm) {
  const int p = static_cast<int>(perm.size());
  const int k = static_cast<int>(std::find(perm.begin(), perm.end(), 1) - perm.begin()) + 1;
  Itinerary out;
  out.reserve(static_cast<std::size_t>(p));
  int i = k;
  for (int t = 0; t < p; ++t) {
    i = perm[static_cast<std::size_t>(i - 1)];
    out.push_back(i == k ? Sym::C : (i < k ? Sym::L : Sym::R));
  }
  return out;
}

std::vector<int> perm_from_kneading(const Itinerary& k) {
  const int p = static_cast<int>(k.size());
  if (p < 1 || k.back() != Sym::C) throw PreconditionViolation("kneading must end with C");
  auto sym = [&](int j) { return (j % p == 0) ? Sym::C : k[static_cast<std::size_t>(j % p - 1)]; };
  std::vector<Itinerary> its(static_cast<std::size_t>(p));
  for (int t = 0; t < p; ++t) {
    for (int s = 0; s <= p; ++s) its[static_cast<std::size_t>(t)].push_back(sym(t + s));
  }
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return compare_itineraries(its[static_cast<std::size_t>(a)], its[static_cast<std::size_t>(b)]) < 0;
  });
  std::vector<int> rank(static_cast<std::size_t>(p));
  for (int r = 0; r < p; ++r) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r + 1;
  std::vector<int> perm(static_cast<std::size_t>(p));
  for (int t = 0; t < p; ++t) {
    perm[static_cast<std::size_t>(rank[static_cast<std::size_t>(t)] - 1)] =
        rank[static_cast<std::size_t>((t + 1) % p)];
  }
  return perm;
}

Shuffle identity_shuffle() {
  Shuffle s;
  s.perm = {1};
  return s;
}

Shuffle sigma2() { return validate_shuffle({2, 1}); }

Shuffle sigma3() { return validate_shuffle({3, 1, 2}); }

Itinerary sigma3_n_kneading(int n) {
  if (n < 1) throw PreconditionViolation("sigma3_n requires n >= 1");
  Itinerary k{Sym::L, Sym::R};
  for (int i = 1; i < n; ++i) {
    k.push_back(Sym::L);
    k.push_back(Sym::L);
    k.push_back(Sym::R);
  }
  k.push_back(Sym::L);
  k.push_back(Sym::L);
  k.push_back(Sym::C);
  return k;
}

Shuffle sigma3_n(int n) { return validate_shuffle(perm_from_kneading(sigma3_n_kneading(n))); }

Shuffle star_product(const Shuffle& outer, const Shuffle& inner) {
  const int p1 = outer.period();
  const int p2 = inner.period();
  if (p1 == 1) return inner;
  if (p2 == 1) return outer;
  const Itinerary ko = kneading_from_perm(outer.perm);
  // sides[t] = side of the t-th outer orbit point (t = 1..p1-1).
  std::vector<int> sides(static_cast<std::size_t>(p1), 0);
  int eps0 = 1;
  for (int t = 1; t < p1; ++t) {
    sides[static_cast<std::size_t>(t)] = sign_of(ko[static_cast<std::size_t>(t - 1)]);
    eps0 *= sides[static_cast<std::size_t>(t)];
  }
  // Labels of the inner orbit starting at the inner critical point.
  std::vector<int> rin(static_cast<std::size_t>(p2));
  {
    int i = inner.critical_index();
    for (int k = 0; k < p2; ++k) {
      rin[static_cast<std::size_t>(k)] = i;
      i = inner(i);
    }
  }
  std::vector<int> ro(static_cast<std::size_t>(p1));
  {
    int i = outer.critical_index();
    for (int t = 0; t < p1; ++t) {
      ro[static_cast<std::size_t>(t)] = i;
      i = outer(i);
    }
  }
  const int total = p1 * p2;
  std::vector<std::pair<int, int>> keys(static_cast<std::size_t>(total));
  for (int big_t = 0; big_t < total; ++big_t) {
    const int k = big_t / p1, j = big_t % p1;
    int key;
    if (j == 0) {
      key = eps0 == 1 ? rin[static_cast<std::size_t>(k)] : -rin[static_cast<std::size_t>(k)];
    } else {
      key = rin[static_cast<std::size_t>((k + 1) % p2)];
      int o = 1;
      for (int t = 1; t < j; ++t) o *= sides[static_cast<std::size_t>(t)];
      key *= o;
    }
    keys[static_cast<std::size_t>(big_t)] = {ro[static_cast<std::size_t>(j)], key};
  }
  std::vector<int> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank(static_cast<std::size_t>(total));
  for (int r = 0; r < total; ++r) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r + 1;
  std::vector<int> perm(static_cast<std::size_t>(total));
  for (int big_t = 0; big_t < total; ++big_t) {
    perm[static_cast<std::size_t>(rank[static_cast<std::size_t>(big_t)] - 1)] =
        rank[static_cast<std::size_t>((big_t + 1) % total)];
  }
  Shuffle s = validate_unimodal_cycle(perm);
  s.immediately_renormalizable = false;
  return s;
}

std::string to_cycle_notation(const Shuffle& s) {
  std::ostringstream os;
  os << '(';
  int i = 1;
  for (int k = 0; k < s.period(); ++k) {
    if (k) os << ' ';
    os << i;
    i = s(i);
  }
  os << ')';
  return os.str();
}

std::vector<int> parse_cycle_notation(const std::string& text) {
  std::string body;
  for (char ch : text) {
    if (ch == '#') break;
    body.push_back(ch);
  }
  const auto open = body.find('(');
  const auto close = body.find(')');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw ParseError("expected one-line cycle notation such as (1 3 2)");
  }
  std::string inside = body.substr(open + 1, close - open - 1);
  std::replace(inside.begin(), inside.end(), ',', ' ');
  std::istringstream is(inside);
  std::vector<int> cycle;
  int v;
  while (is >> v) cycle.push_back(v);
  if (!is.eof()) throw ParseError("non-integer entry in cycle notation");
  const int p = static_cast<int>(cycle.size());
  if (p == 0) throw ParseError("empty cycle");
  std::vector<int> perm(static_cast<std::size_t>(p), 0);
  for (int k = 0; k < p; ++k) {
    const int from = cycle[static_cast<std::size_t>(k)];
    if (from < 1 || from > p) throw ParseError("cycle entry out of range");
    if (perm[static_cast<std::size_t>(from - 1)] != 0) throw ParseError("cycle entry repeated");
    perm[static_cast<std::size_t>(from - 1)] = cycle[static_cast<std::size_t>((k + 1) % p)];
  }
  return perm;
}

}  // namespace renormlab
