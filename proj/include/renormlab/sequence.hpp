#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renormlab/semigroup.hpp"
#include "renormlab/shuffle.hpp"

namespace renormlab {

// Chain Gamma_M -> ... -> Gamma_1 -> Gamma_0 of return-type homomorphisms.
// levels[m] is Gamma_m; homs[m-1] is chi_m : Gamma_m -> Gamma_{m-1}.
struct ReturnTypeSequence {
  std::vector<SignedSemigroup> levels;
  std::vector<ReturnHom> homs;
  bool irreducible = true;

  int top() const { return static_cast<int>(levels.size()) - 1; }
  const ReturnHom& chi(int m) const { return homs.at(static_cast<std::size_t>(m - 1)); }
  bool operator==(const ReturnTypeSequence& o) const {
    return levels == o.levels && homs == o.homs;
  }
};

// Builds a sequence from its homomorphisms listed bottom-up (chi_1 first).
ReturnTypeSequence sequence_from_homs(const std::vector<ReturnHom>& homs_bottom_up);

// Structural checks: composable chain, admissibility, zero-admissible chi_1,
// one generator exactly at the top. Throws AdmissibilityViolation with the reason.
void check_sequence(const ReturnTypeSequence& seq);

// Generators reachable from the top central generator through the words.
std::vector<std::vector<int>> reachable_positions(const ReturnTypeSequence& seq);
bool is_irreducible(const ReturnTypeSequence& seq);
// Removes generators outside the combinatorial orbit of the central symbol.
ReturnTypeSequence reduce(const ReturnTypeSequence& seq);

// Symbolic critical orbit: step s = 1..p lands on a point labeled (level, pos).
struct SymbolicStep {
  int level = 0;
  int pos = 0;
};

struct SymbolicOrbit {
  int top = 0;
  std::vector<SymbolicStep> steps;  // steps[s-1] describes x_s; steps.back() is the return to 0
  int period() const { return static_cast<int>(steps.size()); }
  // Deepest central interval containing x_t (t taken mod p; x_0 = 0 has depth top).
  int depth(int t) const;
  Sym side(int t) const;
};

SymbolicOrbit realize(const ReturnTypeSequence& seq);
Itinerary kneading_of_sequence(const ReturnTypeSequence& seq);
// The unique shuffle with the given return-type sequence.
Shuffle shuffle_of_sequence(const ReturnTypeSequence& seq);

enum class CascadeKind { SaddleNode, UlamNeumann };

struct Cascade {
  int k = 0;
  int start = 0;  // m(k)
  int end = 0;    // m(k+1)
  CascadeKind kind = CascadeKind::UlamNeumann;
  int d = 0;
  std::vector<int> neglectable;
  int length() const { return end - start; }
};

// Inputs shared by the symbolic and the numeric cascade detection.
struct CascadeData {
  int top = 0;
  int period = 0;
  std::vector<int> noncentral;     // noncentral levels m in [1, top)
  std::vector<int> central_return; // central_return[m] = return time of I^m_0, m = 1..top
  std::vector<int> central_sign;   // type of the central generator at level m
  std::vector<int> depth;          // depth of x_t, t = 0..p-1
  std::vector<int> side;           // sign of x_t
};

std::vector<Cascade> cascades_from_data(const CascadeData& data);
CascadeData cascade_data(const ReturnTypeSequence& seq);
std::vector<Cascade> detect_cascades(const ReturnTypeSequence& seq);
std::vector<int> neglectable_levels(const std::vector<Cascade>& cascades);
int essential_period_from_data(const CascadeData& data, const std::vector<Cascade>& cascades);
int essential_period(const ReturnTypeSequence& seq);

Shuffle truncate(const ReturnTypeSequence& seq, int l);
ReturnTypeSequence truncated_sequence(const ReturnTypeSequence& seq, int l);
ReturnTypeSequence insert_neglectable(const ReturnTypeSequence& seq, int l);
// Removes every neglectable level that is the inverse of an insertion.
ReturnTypeSequence canonical_form(const ReturnTypeSequence& seq);

struct CompactShuffle {
  std::string class_id;
  std::vector<std::optional<long>> coords;  // nullopt marks an infinite coordinate
  bool is_end() const;
};

CompactShuffle compact_coords(const ReturnTypeSequence& seq);
double embed_F(const std::vector<long>& coords);

// The named homomorphisms and the fixture families.
SignedSemigroup gamma();
SignedSemigroup gamma_prime();
ReturnHom chi0();
ReturnHom chi_canonical();
ReturnHom chi_prime();
ReturnHom chi2();
ReturnHom chi3();
ReturnTypeSequence sigma3_sequence(int n);
// chi_0, chi^below, middle, chi^above, chi' bottom-up.
ReturnTypeSequence sandwich_sequence(int below, const ReturnHom& middle, int above);

std::string to_text(const ReturnTypeSequence& seq);
ReturnTypeSequence parse_sequence(const std::string& text);

}  // namespace renormlab
