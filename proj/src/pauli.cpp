#include "qot/pauli.hpp"

#include <algorithm>
#include <stdexcept>

namespace qot {

Axis axis_from_char(char c) {
  switch (c) {
    case 'X': return Axis::X;
    case 'Y': return Axis::Y;
    case 'Z': return Axis::Z;
    default: throw std::invalid_argument(std::string("not a Pauli axis: '") + c + "'");
  }
}

Setting Setting::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty setting string");
  std::vector<Axis> axes;
  axes.reserve(s.size());
  for (char c : s) axes.push_back(axis_from_char(c));
  return Setting(std::move(axes));
}

std::string Setting::str() const {
  std::string s;
  s.reserve(axes.size());
  for (Axis a : axes) s.push_back(axis_char(a));
  return s;
}

LocalObservable::LocalObservable(std::vector<PauliTerm> t) : terms(std::move(t)) {
  if (terms.empty()) throw std::invalid_argument("local observable needs at least one term");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].qubit < 0) throw std::invalid_argument("negative qubit index");
    if (i > 0 && terms[i].qubit <= terms[i - 1].qubit)
      throw std::invalid_argument("observable terms must have strictly ascending qubit indices");
  }
}

std::string LocalObservable::str() const {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) s.push_back(' ');
    s.push_back(axis_char(terms[i].axis));
    s += std::to_string(terms[i].qubit);
  }
  return s;
}

LocalObservable LocalObservable::from_string(const std::string& s) {
  std::vector<PauliTerm> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    Axis a = axis_from_char(s[i]);
    ++i;
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("malformed observable string: " + s);
    int q = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      q = q * 10 + (s[i] - '0');
      ++i;
    }
    terms.push_back({q, a});
  }
  return LocalObservable(std::move(terms));
}

bool qwc_compatible(const LocalObservable& o, const Setting& g) {
  if (o.terms.empty()) return true;
  if (o.max_qubit() >= g.size())
    throw std::out_of_range("observable acts on qubit " + std::to_string(o.max_qubit()) +
                            " but setting has only " + std::to_string(g.size()) + " qubits");
  for (const PauliTerm& t : o.terms)
    if (g.axes[t.qubit] != t.axis) return false;
  return true;
}

LocalObservable restrict_to(const Setting& g, std::span<const int> subset) {
  if (subset.empty()) throw std::invalid_argument("cannot restrict to an empty subset");
  std::vector<int> qs(subset.begin(), subset.end());
  std::sort(qs.begin(), qs.end());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (qs[i] < 0 || qs[i] >= g.size())
      throw std::out_of_range("subset index out of range: " + std::to_string(qs[i]));
    if (i > 0 && qs[i] == qs[i - 1])
      throw std::invalid_argument("duplicate qubit index in subset: " + std::to_string(qs[i]));
  }
  std::vector<PauliTerm> terms;
  terms.reserve(qs.size());
  for (int q : qs) terms.push_back({q, g.axes[q]});
  return LocalObservable(std::move(terms));
}

}  // namespace qot
