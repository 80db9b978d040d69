#pragma once

// The 0-generated free algebra of the reflexive-symmetric class: four atoms
// e1, e2, m2, m3 and the sixteen sets of atoms, with converse and
// composition given by tables and checked against finite models.

#include <array>
#include <bitset>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "relalg/model.hpp"
#include "relalg/term.hpp"

namespace relalg {

enum class Atom : std::uint8_t { E1, E2, M2, M3 };
constexpr std::array<Atom, 4> kAtoms{Atom::E1, Atom::E2, Atom::M2, Atom::M3};
std::string atom_name(Atom a);

// An element of the 16-element algebra.
class AtomSet {
 public:
  constexpr AtomSet() = default;
  constexpr AtomSet(std::initializer_list<Atom> atoms) {
    for (auto a : atoms) bits_ |= bit(a);
  }
  static constexpr AtomSet top() { return from_bits(0xF); }
  static constexpr AtomSet from_bits(std::uint8_t bits) {
    AtomSet s;
    s.bits_ = bits & 0xF;
    return s;
  }

  constexpr bool contains(Atom a) const { return (bits_ & bit(a)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  std::size_t size() const { return std::bitset<4>(bits_).count(); }
  std::vector<Atom> atoms() const;
  // "0" for the empty set, otherwise atom names joined by '+'.
  std::string str() const;

  constexpr AtomSet operator|(AtomSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr AtomSet operator&(AtomSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr AtomSet operator~() const { return from_bits(static_cast<std::uint8_t>(~bits_)); }
  constexpr bool operator==(const AtomSet&) const = default;

 private:
  static constexpr std::uint8_t bit(Atom a) { return static_cast<std::uint8_t>(1u << static_cast<int>(a)); }
  std::uint8_t bits_ = 0;
};

struct FreeZero {
  std::array<Term, 4> atom_terms;
  std::array<Atom, 4> converse_table;
  std::array<std::array<AtomSet, 4>, 4> composition_table;

  const Term& term(Atom a) const { return atom_terms[static_cast<int>(a)]; }
  Atom converse(Atom a) const { return converse_table[static_cast<int>(a)]; }
  AtomSet compose(Atom a, Atom b) const { return composition_table[static_cast<int>(a)][static_cast<int>(b)]; }
  // All sixteen elements, by bit pattern.
  std::vector<AtomSet> elements() const;
};

FreeZero tables();

// Throws InputError if the term has variables.
AtomSet eval_in_free0(const Term& t, const FreeZero& fz);

struct TableEntryCheck {
  std::string equation;  // e.g. "m3;m3 = e2+m3"
  bool ok = true;
  std::string counterexample;  // model JSON and edge when !ok
};

struct VerifyReport {
  std::vector<TableEntryCheck> entries;  // 16 composition entries, then 4 converse entries
  std::uint64_t exhaustive_models = 0;
  std::uint64_t random_models = 0;
  std::size_t failures() const;
};

struct VerifyOptions {
  std::uint32_t max_base = 4;            // exhaustive over reflexive-symmetric units
  std::uint32_t random_units = 1000;     // extra random units
  std::uint32_t random_min_base = 5;
  std::uint32_t random_max_base = 6;
  std::uint64_t rng_seed = 20240521;
};

// Checks every table entry as an equation on every model considered.
VerifyReport verify_tables(const FreeZero& fz, const VerifyOptions& opts = {});

struct AtomicityResult {
  bool atomic = false;
  std::vector<Atom> atoms;
};

// Minimal nonzero elements of the 16-element Boolean algebra.
AtomicityResult is_atomic(const FreeZero& fz);

nlohmann::json free_zero_to_json(const FreeZero& fz);
std::string free_zero_table_text(const FreeZero& fz);

}  // namespace relalg
