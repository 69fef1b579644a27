#include "fo2sp/structures.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fo2sp/errors.hpp"

namespace fo2sp::structures {

namespace {

std::unordered_map<Element, std::size_t> position_map(const OrderedStructure& s) {
  std::unordered_map<Element, std::size_t> pos;
  pos.reserve(s.order.size());
  for (std::size_t i = 0; i < s.order.size(); ++i) pos.emplace(s.order[i], i);
  return pos;
}

}  // namespace

OrderedStructure make_structure(std::vector<Element> order,
                                std::vector<std::vector<Element>> classes,
                                std::map<std::string, std::set<Element>> labels) {
  OrderedStructure s;
  s.order = std::move(order);
  s.classes = std::move(classes);

  auto pos = position_map(s);
  auto rank = [&pos](const Element& e) {
    auto it = pos.find(e);
    // Elements outside the universe sort last; validate() reports them.
    return it == pos.end() ? pos.size() : it->second;
  };
  for (auto& cls : s.classes)
    std::stable_sort(cls.begin(), cls.end(),
                     [&](const Element& a, const Element& b) { return rank(a) < rank(b); });

  for (auto& [pred, elems] : labels)
    if (!elems.empty()) s.labels.emplace(pred, std::move(elems));
  return s;
}

std::vector<std::string> validate(const OrderedStructure& s) {
  std::vector<std::string> violations;

  if (s.order.empty()) violations.push_back("empty universe: order has no elements");

  std::unordered_set<Element> universe;
  for (const auto& e : s.order)
    if (!universe.insert(e).second)
      violations.push_back("duplicate element in order: " + e);

  std::unordered_map<Element, std::size_t> seen_class;
  bool disjoint = true;
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    if (s.classes[i].empty()) violations.push_back("class " + std::to_string(i) + " is empty");
    for (const auto& e : s.classes[i]) {
      if (!universe.count(e))
        violations.push_back("partition/universe mismatch: class element not in order: " + e);
      auto [it, fresh] = seen_class.emplace(e, i);
      if (!fresh) {
        violations.push_back("classes not disjoint: " + e + " in classes " +
                             std::to_string(it->second) + " and " + std::to_string(i));
        disjoint = false;
      }
    }
  }
  for (const auto& e : s.order)
    if (!seen_class.count(e))
      violations.push_back("partition/universe mismatch: element not in any class: " + e);

  for (const auto& [pred, elems] : s.labels)
    for (const auto& e : elems)
      if (!universe.count(e))
        violations.push_back("label " + pred + " references unknown element: " + e);

  // Axiom checks on the reconstructed relations. Only meaningful once every
  // element has a unique position and class.
  if (violations.empty() && disjoint) {
    const std::size_t n = s.order.size();
    auto pos = position_map(s);
    std::vector<std::size_t> cls(n);
    for (const auto& e : s.order) cls[pos[e]] = seen_class[e];

    auto le_p = [&](std::size_t u, std::size_t v) { return cls[u] <= cls[v]; };
    auto le_l = [&](std::size_t u, std::size_t v) { return u <= v; };

    for (std::size_t u = 0; u < n; ++u) {
      if (!le_p(u, u)) violations.push_back("preorder not reflexive");
      for (std::size_t v = 0; v < n; ++v) {
        if (!le_p(u, v) && !le_p(v, u)) violations.push_back("preorder not total");
        if (!le_l(u, v) && !le_l(v, u)) violations.push_back("linear order not total");
        if (le_l(u, v) && le_l(v, u) && u != v)
          violations.push_back("linear order not antisymmetric");
        for (std::size_t w = 0; w < n; ++w)
          if (le_p(u, v) && le_p(v, w) && !le_p(u, w))
            violations.push_back("preorder not transitive");
      }
    }
  }

  return violations;
}

SuccRelation derive_succ_l(const OrderedStructure& s) {
  SuccRelation pairs;
  if (s.order.size() < 2) return pairs;
  pairs.reserve(s.order.size() - 1);
  for (std::size_t i = 0; i + 1 < s.order.size(); ++i)
    pairs.emplace_back(s.order[i], s.order[i + 1]);
  return pairs;
}

SuccRelation derive_succ_p(const OrderedStructure& s) {
  SuccRelation pairs;
  for (std::size_t i = 0; i + 1 < s.classes.size(); ++i)
    for (const auto& u : s.classes[i])
      for (const auto& v : s.classes[i + 1]) pairs.emplace_back(u, v);
  return pairs;
}

std::size_t position(const OrderedStructure& s, const Element& e) {
  for (std::size_t i = 0; i < s.order.size(); ++i)
    if (s.order[i] == e) return i;
  throw UnknownElement("unknown element: " + e);
}

std::size_t class_index(const OrderedStructure& s, const Element& e) {
  for (std::size_t i = 0; i < s.classes.size(); ++i)
    for (const auto& member : s.classes[i])
      if (member == e) return i;
  throw UnknownElement("unknown element: " + e);
}

bool same_class(const OrderedStructure& s, const Element& u, const Element& v) {
  return class_index(s, u) == class_index(s, v);
}

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(std::move(w));
  return words;
}

}  // namespace

OrderedStructure parse_structure(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;

  bool have_size = false, have_order = false, have_classes = false;
  long declared_size = 0;
  std::vector<Element> order;
  std::vector<std::vector<Element>> classes;
  std::map<std::string, std::set<Element>> labels;

  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    auto words = split_words(line);
    if (words.empty()) continue;

    const std::string& key = words[0];
    if (key == "size:") {
      if (have_size) throw ParseError("duplicate size line", lineno);
      if (words.size() != 2) throw ParseError("size expects one number", lineno);
      try {
        declared_size = std::stol(words[1]);
      } catch (const std::exception&) {
        throw ParseError("size is not a number: " + words[1], lineno);
      }
      have_size = true;
    } else if (key == "order:") {
      if (have_order) throw ParseError("duplicate order line", lineno);
      order.assign(words.begin() + 1, words.end());
      have_order = true;
    } else if (key == "classes:") {
      if (have_classes) throw ParseError("duplicate classes line", lineno);
      std::vector<Element> current;
      bool open = false;
      for (std::size_t i = 1; i < words.size(); ++i) {
        std::string w = words[i];
        if (w.front() == '[') {
          if (open) throw ParseError("nested '[' in classes", lineno);
          open = true;
          w = w.substr(1);
        }
        bool closes = !w.empty() && w.back() == ']';
        if (closes) w = w.substr(0, w.size() - 1);
        if (!open) throw ParseError("class element outside brackets: " + words[i], lineno);
        if (!w.empty()) current.push_back(w);
        if (closes) {
          classes.push_back(std::move(current));
          current.clear();
          open = false;
        }
      }
      if (open) throw ParseError("unterminated '[' in classes", lineno);
      have_classes = true;
    } else if (key == "label") {
      if (words.size() < 2 || words[1].back() != ':')
        throw ParseError("label expects 'label <predicate>: <elements>'", lineno);
      std::string pred = words[1].substr(0, words[1].size() - 1);
      if (pred.empty()) throw ParseError("empty predicate name", lineno);
      auto& set = labels[pred];
      for (std::size_t i = 2; i < words.size(); ++i) set.insert(words[i]);
    } else {
      throw ParseError("unknown directive: " + key, lineno);
    }
  }

  if (!have_size) throw ParseError("missing size line");
  if (!have_order) throw ParseError("missing order line");
  if (!have_classes) throw ParseError("missing classes line");
  if (declared_size != static_cast<long>(order.size()))
    throw ParseError("size " + std::to_string(declared_size) + " does not match order length " +
                     std::to_string(order.size()));

  return make_structure(std::move(order), std::move(classes), std::move(labels));
}

std::string serialize_structure(const OrderedStructure& s) {
  std::ostringstream out;
  out << "size: " << s.order.size() << '\n';
  out << "order:";
  for (const auto& e : s.order) out << ' ' << e;
  out << '\n';
  out << "classes:";
  for (const auto& cls : s.classes) {
    out << " [";
    for (std::size_t i = 0; i < cls.size(); ++i) out << (i ? " " : "") << cls[i];
    out << ']';
  }
  out << '\n';
  for (const auto& [pred, elems] : s.labels) {
    if (elems.empty()) continue;
    // Members in linear-order position, matching the normalized class layout.
    std::vector<Element> sorted;
    for (const auto& e : s.order)
      if (elems.count(e)) sorted.push_back(e);
    for (const auto& e : elems)
      if (std::find(s.order.begin(), s.order.end(), e) == s.order.end()) sorted.push_back(e);
    out << "label " << pred << ':';
    for (const auto& e : sorted) out << ' ' << e;
    out << '\n';
  }
  return out.str();
}

}  // namespace fo2sp::structures
