#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qot {

// Single-qubit measurement axis. X < Y < Z is the canonical order used for
// every tie-break in the toolkit. Identity is never stored as an axis:
// Pauli words with identity factors are represented by smaller supports.
enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAxes = {Axis::X, Axis::Y, Axis::Z};

constexpr char axis_char(Axis a) { return "XYZ"[static_cast<int>(a)]; }
Axis axis_from_char(char c);

// A full-width parallel measurement basis: one concrete axis per qubit.
struct Setting {
  std::vector<Axis> axes;

  Setting() = default;
  explicit Setting(std::vector<Axis> a) : axes(std::move(a)) {}

  static Setting from_string(const std::string& s);

  int size() const { return static_cast<int>(axes.size()); }
  std::string str() const;

  auto operator<=>(const Setting&) const = default;
};

struct PauliTerm {
  int qubit = 0;
  Axis axis = Axis::X;

  auto operator<=>(const PauliTerm&) const = default;
};

// A sparse Pauli word over {X,Y,Z}: strictly ascending unique qubit indices,
// one axis per support qubit.
struct LocalObservable {
  std::vector<PauliTerm> terms;

  LocalObservable() = default;
  explicit LocalObservable(std::vector<PauliTerm> t);  // validates ordering

  int weight() const { return static_cast<int>(terms.size()); }
  int max_qubit() const { return terms.back().qubit; }
  std::string str() const;  // "X0 Y1"
  static LocalObservable from_string(const std::string& s);

  auto operator<=>(const LocalObservable&) const = default;
};

// True iff g's axis equals o's axis on every qubit of o's support, i.e. the
// observable is qubit-wise commuting with the full-width setting and its
// expectation can be read off from that setting's outcomes.
bool qwc_compatible(const LocalObservable& o, const Setting& g);

// The axes of g on `subset`, as a local observable. The result is always
// qwc-compatible with g. Throws on an empty subset, duplicate indices, or
// indices outside g.
LocalObservable restrict_to(const Setting& g, std::span<const int> subset);

}  // namespace qot
