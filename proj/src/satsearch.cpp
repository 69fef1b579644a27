#include "fo2sp/satsearch.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fo2sp::satsearch {

SearchSpec spec_for_sentence(fo2::FormulaRef sentence, int max_size, LabelingMode mode) {
  SearchSpec spec;
  spec.max_size = max_size;
  spec.mode = mode;
  for (const auto& pred : fo2::collect_predicates(*sentence)) {
    if (mode == LabelingMode::FullPowerset)
      spec.plain_preds.push_back(pred);
    else if (pred == "B" || pred == "R")
      spec.color_preds.push_back(pred);
    else
      spec.tag_preds.push_back(pred);
  }
  spec.sentence = std::move(sentence);
  return spec;
}

namespace {

bool emit_partitions(std::vector<int>& remaining, OrderedPartition& prefix,
                     const std::function<bool(const OrderedPartition&)>& visit) {
  if (remaining.empty()) return visit(prefix);
  // First block: every nonempty subset of the remaining positions, by mask.
  const std::size_t r = remaining.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
    std::vector<int> block, rest;
    for (std::size_t i = 0; i < r; ++i)
      (mask >> i & 1 ? block : rest).push_back(remaining[i]);
    prefix.push_back(std::move(block));
    if (!emit_partitions(rest, prefix, visit)) return false;
    prefix.pop_back();
  }
  return true;
}

}  // namespace

void enumerate_ordered_partitions(int n,
                                  const std::function<bool(const OrderedPartition&)>& visit) {
  if (n < 1) throw std::invalid_argument("partition enumeration needs n >= 1");
  if (n > 20) throw std::invalid_argument("partition enumeration capped at n = 20");
  std::vector<int> positions(n);
  for (int i = 0; i < n; ++i) positions[i] = i;
  OrderedPartition prefix;
  emit_partitions(positions, prefix, visit);
}

std::string serialize_certificate(const UnsatCertificate& cert) {
  std::ostringstream out;
  out << "unsat-up-to: " << cert.max_size << " mode: " << mode_name(cert.mode);
  return out.str();
}

namespace {

// Per-element choices in well-colored mode: none-or-one tag times
// none-or-one color. Plain predicates get an independent subset each.
struct LabelingOdometer {
  int n;
  const SearchSpec& spec;
  int tag_options;    // 1 + #tags
  int color_options;  // 1 + #colors
  std::vector<int> tag_choice, color_choice;  // per element
  std::vector<std::uint64_t> plain_subsets;   // per plain predicate, bitmask over elements
  bool done = false;

  LabelingOdometer(int n_, const SearchSpec& spec_) : n(n_), spec(spec_) {
    bool well_colored = spec.mode == LabelingMode::WellColored;
    tag_options = well_colored ? 1 + static_cast<int>(spec.tag_preds.size()) : 1;
    color_options = well_colored ? 1 + static_cast<int>(spec.color_preds.size()) : 1;
    tag_choice.assign(n, 0);
    color_choice.assign(n, 0);
    std::size_t plain = spec.plain_preds.size();
    plain_subsets.assign(plain, 0);
  }

  std::map<std::string, std::set<structures::Element>> labels(
      const std::vector<structures::Element>& order) const {
    std::map<std::string, std::set<structures::Element>> out;
    for (int e = 0; e < n; ++e) {
      if (tag_choice[e] > 0) out[spec.tag_preds[tag_choice[e] - 1]].insert(order[e]);
      if (color_choice[e] > 0) out[spec.color_preds[color_choice[e] - 1]].insert(order[e]);
    }
    for (std::size_t p = 0; p < plain_subsets.size(); ++p)
      for (int e = 0; e < n; ++e)
        if (plain_subsets[p] >> e & 1) out[spec.plain_preds[p]].insert(order[e]);
    return out;
  }

  // Mixed-radix increment; element n-1 and the last plain predicate vary
  // fastest.
  void advance() {
    for (std::size_t p = plain_subsets.size(); p-- > 0;) {
      if (++plain_subsets[p] < (std::uint64_t{1} << n)) return;
      plain_subsets[p] = 0;
    }
    for (int e = n - 1; e >= 0; --e) {
      if (++color_choice[e] < color_options) return;
      color_choice[e] = 0;
      if (++tag_choice[e] < tag_options) return;
      tag_choice[e] = 0;
    }
    done = true;
  }
};

}  // namespace

void for_each_model(const SearchSpec& spec,
                    const std::function<bool(const structures::OrderedStructure&)>& visit) {
  if (!spec.sentence) throw std::invalid_argument("search needs a sentence");
  if (!fo2::is_sentence(*spec.sentence))
    throw std::invalid_argument("search sentence has free variables");
  if (spec.max_size < 1) throw std::invalid_argument("max_size must be at least 1");

  for (int n = 1; n <= spec.max_size; ++n) {
    std::vector<structures::Element> order;
    for (int i = 0; i < n; ++i) order.push_back("e" + std::to_string(i));

    bool keep_going = true;
    enumerate_ordered_partitions(n, [&](const OrderedPartition& partition) {
      std::vector<std::vector<structures::Element>> classes;
      classes.reserve(partition.size());
      for (const auto& block : partition) {
        std::vector<structures::Element> cls;
        for (int p : block) cls.push_back(order[p]);
        classes.push_back(std::move(cls));
      }

      for (LabelingOdometer odo(n, spec); !odo.done; odo.advance()) {
        structures::OrderedStructure candidate =
            structures::make_structure(order, classes, odo.labels(order));
        if (fo2::evaluate(candidate, *spec.sentence)) {
          if (!visit(candidate)) {
            keep_going = false;
            return false;
          }
        }
      }
      return true;
    });
    if (!keep_going) return;
  }
}

std::variant<structures::OrderedStructure, UnsatCertificate> solve(const SearchSpec& spec) {
  std::variant<structures::OrderedStructure, UnsatCertificate> result =
      UnsatCertificate{spec.max_size, spec.mode};
  for_each_model(spec, [&](const structures::OrderedStructure& model) {
    result = model;
    return false;
  });
  return result;
}

}  // namespace fo2sp::satsearch
