#include "fo2sp/codec.hpp"

#include <algorithm>
#include <sstream>

#include "fo2sp/errors.hpp"
#include "fo2sp/reduction.hpp"

namespace fo2sp::codec {

Encoded encode(const ca::CounterMachine& m, const ca::Run& run) {
  auto check = ca::validate_run(m, run);
  if (!check) throw EncodeError("run is not accepting: " + check.reason);
  if (run.steps.empty()) throw EncodeError("run must have at least one step");

  auto voc = reduction::make_vocabulary(m);
  const int n = static_cast<int>(run.steps.size());

  std::vector<int> blue(n + 1), red(n + 1);
  int k = 1;
  for (int i = 0; i <= n; ++i) {
    blue[i] = static_cast<int>(run.configs[i].values.at(voc.counter_b));
    red[i] = static_cast<int>(run.configs[i].values.at(voc.counter_r));
    k = std::max(k, blue[i] + red[i]);
  }

  // Element at linear position t*(n+1)+i belongs to class i and thread t.
  auto element = [n](int thread, int cls) {
    return structures::Element("e" + std::to_string(thread * (n + 1) + cls));
  };

  std::vector<structures::Element> order;
  for (int p = 0; p < k * (n + 1); ++p) order.push_back("e" + std::to_string(p));

  std::vector<std::vector<structures::Element>> classes(n + 1);
  std::map<std::string, std::set<structures::Element>> labels;
  for (int i = 0; i <= n; ++i) {
    for (int t = 0; t < k; ++t) {
      classes[i].push_back(element(t, i));
      if (t < blue[i]) labels[voc.color_b].insert(element(t, i));
      if (t >= k - red[i]) labels[voc.color_r].insert(element(t, i));
    }
    if (i > 0)
      for (int t = 0; t < k; ++t) labels[run.steps[i - 1].tag].insert(element(t, i));
  }

  Encoded result;
  result.structure = structures::make_structure(std::move(order), std::move(classes), std::move(labels));
  result.meta = {k, k, n + 1};
  return result;
}

ca::Run decode(const ca::CounterMachine& m, const structures::OrderedStructure& s) {
  auto violations = structures::validate(s);
  if (!violations.empty())
    throw std::invalid_argument("structure is not valid: " + violations.front());
  if (s.classes.size() < 2) throw DecodeError(DecodeError::Kind::SingleClass,
                                              "structure has a single class, no transition to read");

  auto voc = reduction::make_vocabulary(m);

  auto count_label = [&s](const std::string& pred, const std::vector<structures::Element>& cls) {
    auto it = s.labels.find(pred);
    if (it == s.labels.end()) return std::int64_t{0};
    std::int64_t count = 0;
    for (const auto& e : cls)
      if (it->second.count(e)) ++count;
    return count;
  };

  // The unique transition tag appearing on elements of the class.
  auto class_tag = [&](std::size_t idx) -> const ca::Transition* {
    const ca::Transition* found = nullptr;
    for (const auto& t : m.transitions) {
      if (count_label(t.tag, s.classes[idx]) == 0) continue;
      if (found && found->tag != t.tag)
        throw DecodeError(DecodeError::Kind::AmbiguousTag,
                          "class " + std::to_string(idx) + " carries both " + found->tag + " and " +
                              t.tag);
      found = &t;
    }
    if (!found)
      throw DecodeError(DecodeError::Kind::NoTag,
                        "class " + std::to_string(idx) + " carries no transition tag");
    return found;
  };

  ca::Run run;
  for (std::size_t i = 1; i < s.classes.size(); ++i) run.steps.push_back(*class_tag(i));

  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    ca::Configuration c;
    c.state = i == 0 ? run.steps.front().source : run.steps[i - 1].target;
    c.values[voc.counter_b] = count_label(voc.color_b, s.classes[i]);
    c.values[voc.counter_r] = count_label(voc.color_r, s.classes[i]);
    run.configs.push_back(std::move(c));
  }
  return run;
}

std::string serialize_meta(const EncodingMeta& meta) {
  std::ostringstream out;
  out << "# k: " << meta.k << '\n'
      << "# threads: " << meta.threads << '\n'
      << "# classes: " << meta.class_count << '\n';
  return out.str();
}

}  // namespace fo2sp::codec
