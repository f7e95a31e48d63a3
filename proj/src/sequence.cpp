#include "renormlab/sequence.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "renormlab/errors.hpp"

namespace renormlab {

ReturnTypeSequence sequence_from_homs(const std::vector<ReturnHom>& homs_bottom_up) {
  if (homs_bottom_up.empty()) throw PreconditionViolation("a sequence needs at least one map");
  ReturnTypeSequence seq;
  seq.levels.push_back(homs_bottom_up.front().target);
  for (const auto& chi : homs_bottom_up) {
    if (!(chi.target == seq.levels.back())) {
      throw AdmissibilityViolation("maps are not composable at level " +
                                   std::to_string(seq.levels.size()));
    }
    seq.levels.push_back(chi.source);
    seq.homs.push_back(chi);
  }
  seq.irreducible = is_irreducible(seq);
  return seq;
}

void check_sequence(const ReturnTypeSequence& seq) {
  if (seq.levels.size() != seq.homs.size() + 1 || seq.homs.empty()) {
    throw AdmissibilityViolation("level and map counts disagree");
  }
  if (!(seq.levels[0] == gamma0())) throw AdmissibilityViolation("level 0 must be Gamma_0");
  const int top = seq.top();
  for (int m = 1; m <= top; ++m) {
    const ReturnHom& chi = seq.chi(m);
    const std::string where = " at level " + std::to_string(m);
    if (!(chi.source == seq.levels[static_cast<std::size_t>(m)]) ||
        !(chi.target == seq.levels[static_cast<std::size_t>(m - 1)])) {
      throw AdmissibilityViolation("chain not composable" + where);
    }
    if (!is_admissible(chi)) throw AdmissibilityViolation("map not admissible" + where);
    if (m < top && seq.levels[static_cast<std::size_t>(m)].size() == 1) {
      throw AdmissibilityViolation("single generator below the top" + where);
    }
  }
  if (!is_zero_admissible(seq.chi(1))) throw AdmissibilityViolation("chi_1 is not zero-admissible");
  if (seq.levels.back().size() != 1) throw AdmissibilityViolation("top level has several generators");
}

std::vector<std::vector<int>> reachable_positions(const ReturnTypeSequence& seq) {
  const int top = seq.top();
  std::vector<std::set<int>> reach(static_cast<std::size_t>(top) + 1);
  reach[static_cast<std::size_t>(top)].insert(0);
  for (int m = top; m >= 1; --m) {
    for (int a : reach[static_cast<std::size_t>(m)]) {
      for (int letter : seq.chi(m).image(a)) reach[static_cast<std::size_t>(m - 1)].insert(letter);
    }
  }
  std::vector<std::vector<int>> out;
  for (const auto& s : reach) out.emplace_back(s.begin(), s.end());
  return out;
}

bool is_irreducible(const ReturnTypeSequence& seq) {
  const auto reach = reachable_positions(seq);
  for (std::size_t m = 0; m < seq.levels.size(); ++m) {
    if (reach[m].size() != seq.levels[m].size()) return false;
  }
  return true;
}

ReturnTypeSequence reduce(const ReturnTypeSequence& seq) {
  const auto reach = reachable_positions(seq);
  ReturnTypeSequence out;
  for (std::size_t m = 0; m < seq.levels.size(); ++m) {
    if (m == 0) {
      out.levels.push_back(seq.levels[0]);
      continue;
    }
    std::vector<Generator> gens;
    for (int p : reach[m]) gens.push_back({p, seq.levels[m].sign(p)});
    out.levels.push_back(SignedSemigroup::from(gens));
  }
  for (int m = 1; m <= seq.top(); ++m) {
    ReturnHom chi;
    chi.source = out.levels[static_cast<std::size_t>(m)];
    chi.target = out.levels[static_cast<std::size_t>(m - 1)];
    for (int p : chi.source.positions()) chi.words[p] = seq.chi(m).image(p);
    out.homs.push_back(chi);
  }
  // A single-generator level whose higher maps are all I_0 -> I_0 is the true top.
  for (int m = 1; m < out.top(); ++m) {
    if (out.levels[static_cast<std::size_t>(m)].size() != 1) continue;
    bool trivial_above = true;
    for (int k = m + 1; k <= out.top(); ++k) {
      if (out.levels[static_cast<std::size_t>(k)].size() != 1 || out.chi(k).image(0) != Word{0}) {
        trivial_above = false;
      }
    }
    if (trivial_above) {
      out.levels.resize(static_cast<std::size_t>(m) + 1);
      out.homs.resize(static_cast<std::size_t>(m));
    }
    break;
  }
  out.irreducible = true;
  return out;
}

int SymbolicOrbit::depth(int t) const {
  const int p = period();
  t %= p;
  if (t < 0) t += p;
  if (t == 0) return top;
  const SymbolicStep& s = steps[static_cast<std::size_t>(t - 1)];
  return s.pos == 0 ? top : s.level - 1;
}

Sym SymbolicOrbit::side(int t) const {
  const int p = period();
  t %= p;
  if (t < 0) t += p;
  if (t == 0) return Sym::C;
  const int pos = steps[static_cast<std::size_t>(t - 1)].pos;
  return pos < 0 ? Sym::L : (pos > 0 ? Sym::R : Sym::C);
}

SymbolicOrbit realize(const ReturnTypeSequence& seq) {
  SymbolicOrbit orbit;
  orbit.top = seq.top();
  std::vector<SymbolicStep>& steps = orbit.steps;
  std::function<void(int, int)> expand = [&](int m, int a) {
    const Word& w = seq.chi(m).image(a);
    if (m == 1) {
      for (int letter : w) steps.push_back({0, letter});
      return;
    }
    expand(m - 1, 0);
    steps.back() = {m - 1, w[0]};
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      expand(m - 1, w[k]);
      steps.back() = {m - 1, w[k + 1]};
    }
  };
  expand(orbit.top, 0);
  steps.back() = {orbit.top, 0};
  return orbit;
}

Itinerary kneading_of_sequence(const ReturnTypeSequence& seq) {
  const SymbolicOrbit orbit = realize(seq);
  Itinerary k;
  for (int s = 1; s <= orbit.period(); ++s) k.push_back(orbit.side(s));
  return k;
}

Shuffle shuffle_of_sequence(const ReturnTypeSequence& seq) {
  return validate_shuffle(perm_from_kneading(kneading_of_sequence(seq)));
}

CascadeData cascade_data(const ReturnTypeSequence& seq) {
  CascadeData data;
  data.top = seq.top();
  const SymbolicOrbit orbit = realize(seq);
  data.period = orbit.period();
  for (int m = 1; m < data.top; ++m) {
    if (seq.chi(m + 1).image(0).front() != 0) data.noncentral.push_back(m);
  }
  std::map<std::pair<int, int>, long> memo;
  std::function<long(int, int)> len = [&](int m, int a) -> long {
    const auto key = std::make_pair(m, a);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const Word& w = seq.chi(m).image(a);
    long total = 0;
    if (m == 1) {
      total = static_cast<long>(w.size());
    } else {
      total = len(m - 1, 0);
      for (std::size_t k = 0; k + 1 < w.size(); ++k) total += len(m - 1, w[k]);
    }
    memo[key] = total;
    return total;
  };
  data.central_return.assign(static_cast<std::size_t>(data.top) + 1, 0);
  data.central_sign.assign(static_cast<std::size_t>(data.top) + 1, 1);
  for (int m = 1; m <= data.top; ++m) {
    data.central_return[static_cast<std::size_t>(m)] = static_cast<int>(len(m, 0));
    data.central_sign[static_cast<std::size_t>(m)] = seq.levels[static_cast<std::size_t>(m)].sign(0);
  }
  for (int t = 0; t < data.period; ++t) {
    data.depth.push_back(orbit.depth(t));
    data.side.push_back(sign_of(orbit.side(t)));
  }
  return data;
}

std::vector<Cascade> cascades_from_data(const CascadeData& data) {
  std::vector<int> marks{0};
  for (int m : data.noncentral) {
    if (m > 0 && m < data.top) marks.push_back(m);
  }
  marks.push_back(data.top);
  std::vector<Cascade> out;
  const int p = data.period;
  for (std::size_t k = 0; k + 1 < marks.size(); ++k) {
    Cascade cas;
    cas.k = static_cast<int>(k);
    cas.start = marks[k];
    cas.end = marks[k + 1];
    const int r = data.central_return[static_cast<std::size_t>(cas.start + 1)];
    const int s = data.central_sign[static_cast<std::size_t>(cas.start + 1)];
    const int side_r = data.side[static_cast<std::size_t>(r % p)];
    cas.kind = (side_r == s) ? CascadeKind::SaddleNode : CascadeKind::UlamNeumann;
    int d = 0;
    for (int t = 0; t < p; ++t) {
      if (data.depth[static_cast<std::size_t>(t)] != cas.start) continue;
      for (int u = 1; u <= p; ++u) {
        const int dj = data.depth[static_cast<std::size_t>((t + u) % p)];
        if (dj >= cas.start) {
          const int j = std::min(dj, cas.end);
          d = std::max(d, std::min(j - cas.start, cas.end - j));
          break;
        }
      }
    }
    cas.d = d;
    for (int l = cas.start + d + 1; l < cas.end - d; ++l) cas.neglectable.push_back(l);
    out.push_back(cas);
  }
  return out;
}

std::vector<Cascade> detect_cascades(const ReturnTypeSequence& seq) {
  return cascades_from_data(cascade_data(seq));
}

std::vector<int> neglectable_levels(const std::vector<Cascade>& cascades) {
  std::vector<int> out;
  for (const auto& c : cascades) out.insert(out.end(), c.neglectable.begin(), c.neglectable.end());
  std::sort(out.begin(), out.end());
  return out;
}

int essential_period_from_data(const CascadeData& data, const std::vector<Cascade>& cascades) {
  const std::vector<int> neg = neglectable_levels(cascades);
  const int p = data.period;
  int survivors = 0;
  for (int t = 0; t < p; ++t) {
    int landing_depth = -1;
    for (int s = 0; s < p; ++s) {
      const int dd = data.depth[static_cast<std::size_t>((t + s) % p)];
      if (dd >= 0) {
        landing_depth = dd;
        break;
      }
    }
    if (!std::binary_search(neg.begin(), neg.end(), landing_depth)) ++survivors;
  }
  return survivors;
}

int essential_period(const ReturnTypeSequence& seq) {
  const CascadeData data = cascade_data(seq);
  return essential_period_from_data(data, cascades_from_data(data));
}

ReturnTypeSequence truncated_sequence(const ReturnTypeSequence& seq, int l) {
  const std::vector<int> neg = neglectable_levels(detect_cascades(seq));
  if (!std::binary_search(neg.begin(), neg.end(), l)) {
    throw NotNeglectable("level " + std::to_string(l) + " is not neglectable");
  }
  ReturnTypeSequence out;
  out.levels.assign(seq.levels.begin(), seq.levels.begin() + l);
  out.homs.assign(seq.homs.begin(), seq.homs.begin() + (l - 1));
  const SignedSemigroup gamma_t =
      SignedSemigroup::from({{0, seq.levels[static_cast<std::size_t>(l)].sign(0)}});
  ReturnHom chi_t;
  chi_t.source = gamma_t;
  chi_t.target = seq.levels[static_cast<std::size_t>(l - 1)];
  chi_t.words[0] = seq.chi(l).image(0);
  out.levels.push_back(gamma_t);
  out.homs.push_back(chi_t);
  return reduce(out);
}

Shuffle truncate(const ReturnTypeSequence& seq, int l) {
  return shuffle_of_sequence(truncated_sequence(seq, l));
}

ReturnTypeSequence insert_neglectable(const ReturnTypeSequence& seq, int l) {
  const std::vector<int> neg = neglectable_levels(detect_cascades(seq));
  if (!std::binary_search(neg.begin(), neg.end(), l)) {
    throw NotInsertable("level " + std::to_string(l) + " is not neglectable");
  }
  if (l < 2 || !(seq.levels[static_cast<std::size_t>(l)] == seq.levels[static_cast<std::size_t>(l - 1)]) ||
      !is_canonical(seq.chi(l))) {
    throw NotInsertable("level " + std::to_string(l) +
                        " does not carry the canonical cascade map I_i -> I_i I_0");
  }
  ReturnTypeSequence out = seq;
  out.levels.insert(out.levels.begin() + l, seq.levels[static_cast<std::size_t>(l)]);
  out.homs.insert(out.homs.begin() + l, canonical_hom(seq.levels[static_cast<std::size_t>(l)]));
  check_sequence(out);
  out.irreducible = is_irreducible(out);
  return out;
}

ReturnTypeSequence canonical_form(const ReturnTypeSequence& seq) {
  const std::vector<int> neg = neglectable_levels(detect_cascades(seq));
  ReturnTypeSequence out = seq;
  for (auto it = neg.rbegin(); it != neg.rend(); ++it) {
    const int l = *it;
    if (l < 2) continue;
    if (!(seq.levels[static_cast<std::size_t>(l)] == seq.levels[static_cast<std::size_t>(l - 1)]) ||
        !is_canonical(seq.chi(l))) {
      continue;
    }
    out.levels.erase(out.levels.begin() + l);
    out.homs.erase(out.homs.begin() + (l - 1));
  }
  return out;
}

bool CompactShuffle::is_end() const {
  return std::any_of(coords.begin(), coords.end(), [](const auto& c) { return !c.has_value(); });
}

namespace {

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

CompactShuffle compact_coords(const ReturnTypeSequence& seq) {
  CompactShuffle out;
  out.class_id = fnv1a_hex(to_text(canonical_form(seq)));
  for (const auto& c : detect_cascades(seq)) {
    if (!c.neglectable.empty()) out.coords.emplace_back(static_cast<long>(c.neglectable.size()));
  }
  return out;
}

double embed_F(const std::vector<long>& coords) {
  double sum = 0;
  double prod = 1;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] < 1) throw PreconditionViolation("embed_F coordinates must be positive");
    prod *= static_cast<double>(coords[k]);
    sum += std::ldexp(1.0, static_cast<int>(-prod - static_cast<double>(k)));
  }
  return sum;
}

SignedSemigroup gamma() { return SignedSemigroup::from({{-1, 1}, {0, -1}}); }
SignedSemigroup gamma_prime() { return SignedSemigroup::from({{0, -1}}); }

ReturnHom chi0() {
  ReturnHom chi;
  chi.source = gamma();
  chi.target = gamma0();
  chi.words = {{-1, {-1, 0}}, {0, {-1, 1, 0}}};
  return chi;
}

ReturnHom chi_canonical() { return canonical_hom(gamma()); }

ReturnHom chi_prime() {
  ReturnHom chi;
  chi.source = gamma_prime();
  chi.target = gamma();
  chi.words = {{0, {-1, 0}}};
  return chi;
}

ReturnHom chi2() {
  ReturnHom chi;
  chi.source = gamma();
  chi.target = gamma();
  chi.words = {{-1, {-1, -1, 0}}, {0, {0}}};
  return chi;
}

ReturnHom chi3() {
  ReturnHom chi;
  chi.source = gamma();
  chi.target = gamma();
  chi.words = {{-1, {-1, -1, 0}}, {0, {-1, 0}}};
  return chi;
}

ReturnTypeSequence sigma3_sequence(int n) {
  if (n < 1) throw PreconditionViolation("sigma3_sequence requires n >= 1");
  std::vector<ReturnHom> homs{chi0()};
  for (int i = 1; i < n; ++i) homs.push_back(chi_canonical());
  homs.push_back(chi_prime());
  return sequence_from_homs(homs);
}

ReturnTypeSequence sandwich_sequence(int below, const ReturnHom& middle, int above) {
  std::vector<ReturnHom> homs{chi0()};
  for (int i = 0; i < below; ++i) homs.push_back(chi_canonical());
  homs.push_back(middle);
  for (int i = 0; i < above; ++i) homs.push_back(chi_canonical());
  homs.push_back(chi_prime());
  return sequence_from_homs(homs);
}

std::string to_text(const ReturnTypeSequence& seq) {
  std::ostringstream os;
  for (int m = 1; m <= seq.top(); ++m) {
    if (m > 1) os << "---\n";
    os << "# chi_" << m << '\n' << to_text(seq.chi(m));
  }
  return os.str();
}

ReturnTypeSequence parse_sequence(const std::string& text) {
  std::vector<ReturnHom> homs;
  std::istringstream is(text);
  std::string line, block;
  auto flush = [&] {
    if (block.find_first_not_of(" \t\r\n") != std::string::npos) homs.push_back(parse_return_hom(block));
    block.clear();
  };
  while (std::getline(is, line)) {
    if (line.rfind("---", 0) == 0) {
      flush();
    } else {
      block += line;
      block += '\n';
    }
  }
  flush();
  ReturnTypeSequence seq = sequence_from_homs(homs);
  check_sequence(seq);
  return seq;
}

}  // namespace renormlab
