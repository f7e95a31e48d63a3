#include "renormlab/semigroup.hpp"

#include <algorithm>
#include <sstream>

#include "renormlab/errors.hpp"

namespace renormlab {

SignedSemigroup SignedSemigroup::from(std::vector<Generator> gens) {
  std::sort(gens.begin(), gens.end(),
            [](const Generator& a, const Generator& b) { return a.pos < b.pos; });
  int central = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].sign != 1 && gens[i].sign != -1) throw PreconditionViolation("sign must be +-1");
    if (i > 0 && gens[i].pos == gens[i - 1].pos) throw PreconditionViolation("repeated generator");
    if (gens[i].pos == 0) ++central;
  }
  if (central != 1) throw PreconditionViolation("exactly one central generator required");
  SignedSemigroup g;
  g.gens = std::move(gens);
  return g;
}

bool SignedSemigroup::has(int pos) const {
  return std::any_of(gens.begin(), gens.end(), [pos](const Generator& g) { return g.pos == pos; });
}

int SignedSemigroup::sign(int pos) const {
  for (const auto& g : gens) {
    if (g.pos == pos) return g.sign;
  }
  throw PreconditionViolation("no generator at position " + std::to_string(pos));
}

std::vector<int> SignedSemigroup::positions() const {
  std::vector<int> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(g.pos);
  return out;
}

SignedSemigroup gamma0() { return SignedSemigroup::from({{-1, -1}, {0, 1}, {1, 1}}); }

int word_sign(const SignedSemigroup& g, const Word& w) {
  int s = 1;
  for (int p : w) s *= g.sign(p);
  return s;
}

const Word& ReturnHom::image(int pos) const {
  const auto it = words.find(pos);
  if (it == words.end()) throw PreconditionViolation("no word for I_" + std::to_string(pos));
  return it->second;
}

ReturnHom canonical_hom(const SignedSemigroup& g) {
  ReturnHom chi;
  chi.source = g;
  chi.target = g;
  for (int p : g.positions()) chi.words[p] = (p == 0) ? Word{0} : Word{p, 0};
  return chi;
}

bool is_canonical(const ReturnHom& chi) {
  return chi.source == chi.target && chi == canonical_hom(chi.target);
}

bool is_well_formed(const ReturnHom& chi) {
  if (chi.words.size() != chi.source.size()) return false;
  for (int p : chi.source.positions()) {
    const auto it = chi.words.find(p);
    if (it == chi.words.end() || it->second.empty()) return false;
    for (int letter : it->second) {
      if (!chi.target.has(letter)) return false;
    }
  }
  return true;
}

bool is_unimodal(const ReturnHom& chi) {
  if (!is_well_formed(chi)) return false;
  for (const auto& [pos, w] : chi.words) {
    if (w.back() != 0) return false;
  }
  const std::vector<int> pos = chi.source.positions();
  std::vector<int> first;
  for (int p : pos) first.push_back(chi.image(p).front());
  const auto centre = static_cast<std::size_t>(std::find(pos.begin(), pos.end(), 0) - pos.begin());
  // V shape (orient = 1) or inverted V shape (orient = -1) with the extremum at the centre.
  for (int orient : {1, -1}) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < pos.size() && ok; ++i) {
      const int d = orient * (first[i + 1] - first[i]);
      if (i < centre ? d > 0 : d < 0) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

SignedSemigroup induced_source(const SignedSemigroup& target, const std::map<int, Word>& words) {
  std::vector<Generator> gens;
  for (const auto& [pos, w] : words) {
    const int e = word_sign(target, w);
    gens.push_back({pos, pos == 0 ? e : (pos > 0 ? e : -e)});
  }
  return SignedSemigroup::from(gens);
}

bool is_admissible(const ReturnHom& chi) {
  if (!is_unimodal(chi)) return false;
  for (const auto& g : chi.source.gens) {
    const int e = word_sign(chi.target, chi.image(g.pos));
    const int expected = g.pos == 0 ? e : (g.pos > 0 ? e : -e);
    if (g.sign != expected) return false;
  }
  return true;
}

bool is_zero_admissible(const ReturnHom& chi) {
  if (!(chi.target == gamma0())) return false;
  if (!is_admissible(chi)) return false;
  for (const auto& [pos, w] : chi.words) {
    if (w.size() < 2 || w.front() != -1 || w.back() != 0) return false;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
      if (w[i] != 1) return false;
    }
    if (pos == 0 && w.size() < 3) return false;
  }
  return true;
}

std::string generator_name(int pos) { return "I_" + std::to_string(pos); }

std::string to_text(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += generator_name(w[i]);
  }
  return out;
}

std::string to_text(const SignedSemigroup& g) {
  std::string out;
  for (std::size_t i = 0; i < g.gens.size(); ++i) {
    if (i) out += ' ';
    out += (g.gens[i].sign > 0 ? '+' : '-');
    out += generator_name(g.gens[i].pos);
  }
  return out;
}

std::string to_text(const ReturnHom& chi) {
  std::ostringstream os;
  os << "source: " << to_text(chi.source) << '\n';
  os << "target: " << to_text(chi.target) << '\n';
  for (const auto& [pos, w] : chi.words) os << generator_name(pos) << " -> " << to_text(w) << '\n';
  return os.str();
}

namespace {

int parse_generator_token(const std::string& tok, int* power) {
  // I_<int> optionally followed by ^<int>.
  if (tok.size() < 3 || tok[0] != 'I' || tok[1] != '_') throw ParseError("bad generator '" + tok + "'");
  const auto caret = tok.find('^');
  const std::string num = tok.substr(2, caret == std::string::npos ? std::string::npos : caret - 2);
  std::size_t used = 0;
  int pos = 0;
  try {
    pos = std::stoi(num, &used);
  } catch (const std::exception&) {
    throw ParseError("bad generator '" + tok + "'");
  }
  if (used != num.size()) throw ParseError("bad generator '" + tok + "'");
  *power = 1;
  if (caret != std::string::npos) {
    try {
      *power = std::stoi(tok.substr(caret + 1));
    } catch (const std::exception&) {
      throw ParseError("bad power in '" + tok + "'");
    }
    if (*power < 1) throw ParseError("power must be positive in '" + tok + "'");
  }
  return pos;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Word parse_word(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  Word w;
  while (is >> tok) {
    int power = 1;
    const int pos = parse_generator_token(tok, &power);
    for (int k = 0; k < power; ++k) w.push_back(pos);
  }
  if (w.empty()) throw ParseError("empty word");
  return w;
}

SignedSemigroup parse_semigroup(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::vector<Generator> gens;
  while (is >> tok) {
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-')) {
      throw ParseError("generator needs a sign: '" + tok + "'");
    }
    int power = 1;
    const int pos = parse_generator_token(tok.substr(1), &power);
    gens.push_back({pos, tok[0] == '+' ? 1 : -1});
  }
  try {
    return SignedSemigroup::from(gens);
  } catch (const PreconditionViolation& e) {
    throw ParseError(e.what());
  }
}

ReturnHom parse_return_hom(const std::string& text) {
  ReturnHom chi;
  bool have_source = false, have_target = false;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("source:", 0) == 0) {
      chi.source = parse_semigroup(line.substr(7));
      have_source = true;
    } else if (line.rfind("target:", 0) == 0) {
      chi.target = parse_semigroup(line.substr(7));
      have_target = true;
    } else {
      const auto arrow = line.find("->");
      if (arrow == std::string::npos) throw ParseError("expected 'I_j -> word': " + line);
      int power = 1;
      const int pos = parse_generator_token(trim(line.substr(0, arrow)), &power);
      if (chi.words.count(pos)) throw ParseError("word for " + generator_name(pos) + " repeated");
      chi.words[pos] = parse_word(line.substr(arrow + 2));
    }
  }
  if (!have_target) throw ParseError("missing target line");
  if (!have_source) chi.source = induced_source(chi.target, chi.words);
  if (!is_well_formed(chi)) throw ParseError("homomorphism is not well formed");
  return chi;
}

}  // namespace renormlab
