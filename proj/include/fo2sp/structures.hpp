#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fo2sp::structures {

using Element = std::string;

// Finite universe carrying one linear order and one total preorder.
//
// The linear order is the `order` sequence (ascending); the preorder is the
// ordered partition `classes` (ascending class order). Both successor
// relations and the orders themselves are always derived from these two
// fields, never stored, so the usual axioms hold by construction on any
// structure that passes validate().
struct OrderedStructure {
  std::vector<Element> order;
  std::vector<std::vector<Element>> classes;
  std::map<std::string, std::set<Element>> labels;

  bool operator==(const OrderedStructure&) const = default;
};

// Builds a structure in canonical form: class members sorted by linear
// position, empty label sets dropped. Does not validate; pair with
// validate() when the input is untrusted.
OrderedStructure make_structure(std::vector<Element> order,
                                std::vector<std::vector<Element>> classes,
                                std::map<std::string, std::set<Element>> labels = {});

// Returns violation descriptions; an empty result means the structure is
// valid. Checks the partition/universe invariants plus the order axioms of
// the reconstructed relations (preorder: reflexive, transitive, total;
// linear order additionally antisymmetric).
std::vector<std::string> validate(const OrderedStructure& s);

using SuccRelation = std::vector<std::pair<Element, Element>>;

// Linear-order successor: consecutive pairs of `order`. Exactly n-1 pairs.
SuccRelation derive_succ_l(const OrderedStructure& s);

// Preorder successor: all pairs between consecutive classes. Complete
// bipartite between class i and class i+1, empty within a class.
SuccRelation derive_succ_p(const OrderedStructure& s);

// Position of e in the linear order. Throws UnknownElement.
std::size_t position(const OrderedStructure& s, const Element& e);

// Index of the class containing e. Throws UnknownElement.
std::size_t class_index(const OrderedStructure& s, const Element& e);

bool same_class(const OrderedStructure& s, const Element& u, const Element& v);

// Text format:
//   size: 3
//   order: e0 e1 e2
//   classes: [e0] [e1] [e2]
//   label B: e1
// '#' starts a comment. One `label` line per predicate; omitted means empty.
OrderedStructure parse_structure(std::string_view text);
std::string serialize_structure(const OrderedStructure& s);

}  // namespace fo2sp::structures
