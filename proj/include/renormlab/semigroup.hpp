#pragma once

#include <map>
#include <string>
#include <vector>

namespace renormlab {

struct Generator {
  int pos = 0;   // ..., -1, 0, 1, ...; 0 is the central generator
  int sign = 1;  // +1 or -1
  bool operator==(const Generator& o) const { return pos == o.pos && sign == o.sign; }
};

// Free ordered signed semigroup: generators sorted by position, exactly one at 0.
struct SignedSemigroup {
  std::vector<Generator> gens;

  static SignedSemigroup from(std::vector<Generator> gens);
  std::size_t size() const { return gens.size(); }
  bool has(int pos) const;
  int sign(int pos) const;
  std::vector<int> positions() const;
  bool operator==(const SignedSemigroup& o) const { return gens == o.gens; }
};

// The level-zero semigroup <-I_{-1}, +I_0, +I_1>.
SignedSemigroup gamma0();

using Word = std::vector<int>;

int word_sign(const SignedSemigroup& g, const Word& w);

struct ReturnHom {
  SignedSemigroup source;
  SignedSemigroup target;
  std::map<int, Word> words;

  const Word& image(int pos) const;
  bool operator==(const ReturnHom& o) const {
    return source == o.source && target == o.target && words == o.words;
  }
};

// The canonical cascade map I_i -> I_i I_0, I_0 -> I_0 of a semigroup to itself.
ReturnHom canonical_hom(const SignedSemigroup& g);
bool is_canonical(const ReturnHom& chi);

bool is_well_formed(const ReturnHom& chi);
bool is_unimodal(const ReturnHom& chi);
bool is_admissible(const ReturnHom& chi);
bool is_zero_admissible(const ReturnHom& chi);

// Signs forced on the source by the admissibility rule.
SignedSemigroup induced_source(const SignedSemigroup& target, const std::map<int, Word>& words);

std::string generator_name(int pos);
std::string to_text(const Word& w);
std::string to_text(const SignedSemigroup& g);
std::string to_text(const ReturnHom& chi);
ReturnHom parse_return_hom(const std::string& text);
Word parse_word(const std::string& text);
SignedSemigroup parse_semigroup(const std::string& text);

}  // namespace renormlab
