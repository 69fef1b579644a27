#include "fo2sp/ca.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fo2sp/errors.hpp"

namespace fo2sp::ca {

std::optional<OpKind> op_from_name(std::string_view name) {
  if (name == "inc") return OpKind::Inc;
  if (name == "dec") return OpKind::Dec;
  if (name == "ifz") return OpKind::Ifz;
  return std::nullopt;
}

bool CounterMachine::is_state(const std::string& s) const {
  return std::find(states.begin(), states.end(), s) != states.end();
}
bool CounterMachine::is_counter(const std::string& c) const {
  return std::find(counters.begin(), counters.end(), c) != counters.end();
}
bool CounterMachine::is_final(const std::string& s) const {
  return std::find(finals.begin(), finals.end(), s) != finals.end();
}
const Transition* CounterMachine::transition_by_tag(const std::string& tag) const {
  for (const auto& t : transitions)
    if (t.tag == tag) return &t;
  return nullptr;
}

std::vector<std::string> validate_machine(const CounterMachine& m) {
  std::vector<std::string> violations;

  std::unordered_set<std::string> seen;
  for (const auto& s : m.states)
    if (s.empty() || !seen.insert(s).second)
      violations.push_back("bad or duplicate state: '" + s + "'");
  seen.clear();
  for (const auto& c : m.counters)
    if (c.empty() || !seen.insert(c).second)
      violations.push_back("bad or duplicate counter: '" + c + "'");

  if (!m.is_state(m.initial)) violations.push_back("initial state not declared: " + m.initial);
  for (const auto& f : m.finals)
    if (!m.is_state(f)) violations.push_back("final state not declared: " + f);

  seen.clear();
  for (const auto& t : m.transitions) {
    if (!m.is_state(t.source)) violations.push_back("transition source not declared: " + t.source);
    if (!m.is_state(t.target)) violations.push_back("transition target not declared: " + t.target);
    if (!m.is_counter(t.op.counter))
      violations.push_back("transition counter not declared: " + t.op.counter);
    if (t.tag.empty() || !seen.insert(t.tag).second)
      violations.push_back("bad or duplicate transition tag: '" + t.tag + "'");
  }
  return violations;
}

Configuration initial_configuration(const CounterMachine& m) {
  Configuration c;
  c.state = m.initial;
  for (const auto& counter : m.counters) c.values[counter] = 0;
  return c;
}

bool applicable(const Transition& t, const Configuration& c) {
  if (c.state != t.source) return false;
  auto it = c.values.find(t.op.counter);
  std::int64_t value = it == c.values.end() ? 0 : it->second;
  switch (t.op.kind) {
    case OpKind::Inc: return true;
    case OpKind::Dec: return value > 0;
    case OpKind::Ifz: return value == 0;
  }
  return false;
}

Configuration apply(const CounterMachine& m, const Transition& t, const Configuration& c) {
  (void)m;
  if (c.state != t.source)
    throw NotApplicable("transition " + t.tag + " starts at " + t.source + ", configuration is at " +
                        c.state);
  std::int64_t value = 0;
  if (auto it = c.values.find(t.op.counter); it != c.values.end()) value = it->second;
  if (t.op.kind == OpKind::Dec && value <= 0)
    throw NotApplicable("dec(" + t.op.counter + ") needs a positive counter");
  if (t.op.kind == OpKind::Ifz && value != 0)
    throw NotApplicable("ifz(" + t.op.counter + ") needs a zero counter");

  Configuration next = c;
  next.state = t.target;
  if (t.op.kind == OpKind::Inc) next.values[t.op.counter] = value + 1;
  if (t.op.kind == OpKind::Dec) next.values[t.op.counter] = value - 1;
  return next;
}

RunCheck validate_run(const CounterMachine& m, const Run& run) {
  auto reject = [](std::string reason) { return RunCheck{false, std::move(reason)}; };

  if (run.configs.empty()) return reject("run has no configurations");
  if (run.steps.size() + 1 != run.configs.size())
    return reject("step count does not match configuration count");

  for (std::size_t i = 0; i < run.configs.size(); ++i) {
    const auto& c = run.configs[i];
    if (!m.is_state(c.state))
      return reject("configuration " + std::to_string(i) + " uses unknown state " + c.state);
    if (c.values.size() != m.counters.size())
      return reject("configuration " + std::to_string(i) + " does not value every counter");
    for (const auto& counter : m.counters) {
      auto it = c.values.find(counter);
      if (it == c.values.end())
        return reject("configuration " + std::to_string(i) + " misses counter " + counter);
      if (it->second < 0)
        return reject("configuration " + std::to_string(i) + " has negative " + counter);
    }
  }

  if (run.configs.front() != initial_configuration(m))
    return reject("run does not start at the initial configuration");

  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    const Transition& t = run.steps[i];
    if (std::find(m.transitions.begin(), m.transitions.end(), t) == m.transitions.end())
      return reject("step " + std::to_string(i + 1) + " is not a machine transition");
    if (!applicable(t, run.configs[i]))
      return reject("step " + std::to_string(i + 1) + " (" + t.tag + ") is not applicable");
    if (apply(m, t, run.configs[i]) != run.configs[i + 1])
      return reject("step " + std::to_string(i + 1) + " (" + t.tag +
                    ") does not yield the recorded configuration");
  }

  const auto& last = run.configs.back();
  if (!m.is_final(last.state)) return reject("final state " + last.state + " is not accepting");
  for (const auto& [counter, value] : last.values)
    if (value != 0) return reject("final counters must be zero, " + counter + " is nonzero");

  return {true, ""};
}

namespace {

std::string config_key(const Configuration& c) {
  std::string key = c.state;
  for (const auto& [counter, value] : c.values) {
    key += '|';
    key += std::to_string(value);
  }
  return key;
}

bool is_goal(const CounterMachine& m, const Configuration& c) {
  if (!m.is_final(c.state)) return false;
  for (const auto& [counter, value] : c.values)
    if (value != 0) return false;
  return true;
}

}  // namespace

std::optional<Run> find_accepting_run(const CounterMachine& m, int max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");

  struct Node {
    Configuration config;
    std::string parent;  // empty for the root
    std::size_t step_index = 0;
    int depth = 0;
  };

  Configuration start = initial_configuration(m);
  std::unordered_map<std::string, Node> visited;
  std::deque<std::string> queue;

  auto reconstruct = [&](const std::string& goal_key) {
    std::vector<Configuration> configs;
    std::vector<Transition> steps;
    for (std::string key = goal_key; !key.empty();) {
      const Node& node = visited.at(key);
      configs.push_back(node.config);
      if (node.parent.empty()) break;
      steps.push_back(m.transitions[node.step_index]);
      key = node.parent;
    }
    std::reverse(configs.begin(), configs.end());
    std::reverse(steps.begin(), steps.end());
    return Run{std::move(configs), std::move(steps)};
  };

  std::string start_key = config_key(start);
  visited.emplace(start_key, Node{start, "", 0, 0});
  if (is_goal(m, start)) return reconstruct(start_key);
  queue.push_back(start_key);

  while (!queue.empty()) {
    std::string key = queue.front();
    queue.pop_front();
    Node node = visited.at(key);
    if (node.depth >= max_steps) continue;

    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
      const Transition& t = m.transitions[i];
      if (!applicable(t, node.config)) continue;
      Configuration next = apply(m, t, node.config);

      // Values above max_steps are unreachable within the bound.
      bool pruned = false;
      for (const auto& [counter, value] : next.values)
        if (value > max_steps) pruned = true;
      if (pruned) continue;

      std::string next_key = config_key(next);
      if (visited.count(next_key)) continue;
      visited.emplace(next_key, Node{next, key, i, node.depth + 1});
      if (is_goal(m, next)) return reconstruct(next_key);
      queue.push_back(next_key);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text formats

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

CounterMachine parse_machine(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;

  CounterMachine m;
  bool have_init = false;

  while (std::getline(in, line)) {
    ++lineno;
    auto words = split_words(strip_comment(line));
    if (words.empty()) continue;

    const std::string& key = words[0];
    if (key == "states:") {
      m.states.insert(m.states.end(), words.begin() + 1, words.end());
    } else if (key == "counters:") {
      m.counters.insert(m.counters.end(), words.begin() + 1, words.end());
    } else if (key == "init:") {
      if (have_init) throw ParseError("duplicate init line", lineno);
      if (words.size() != 2) throw ParseError("init expects one state", lineno);
      m.initial = words[1];
      have_init = true;
    } else if (key == "final:") {
      m.finals.insert(m.finals.end(), words.begin() + 1, words.end());
    } else if (key == "trans:") {
      if (words.size() != 5)
        throw ParseError("trans expects 'trans: <src> <op> <counter> <tgt>'", lineno);
      auto op = op_from_name(words[2]);
      if (!op) throw ParseError("unknown operation: " + words[2], lineno);
      Transition t;
      t.source = words[1];
      t.op = {*op, words[3]};
      t.target = words[4];
      t.tag = "t" + std::to_string(m.transitions.size() + 1);
      m.transitions.push_back(std::move(t));
    } else {
      throw ParseError("unknown directive: " + key, lineno);
    }
  }

  if (!have_init) throw ParseError("missing init line");
  auto violations = validate_machine(m);
  if (!violations.empty()) throw ParseError("invalid machine: " + violations.front());
  return m;
}

std::string serialize_machine(const CounterMachine& m) {
  std::ostringstream out;
  out << "states:";
  for (const auto& s : m.states) out << ' ' << s;
  out << "\ncounters:";
  for (const auto& c : m.counters) out << ' ' << c;
  out << "\ninit: " << m.initial << "\nfinal:";
  for (const auto& f : m.finals) out << ' ' << f;
  out << '\n';
  for (const auto& t : m.transitions)
    out << "trans: " << t.source << ' ' << op_name(t.op.kind) << ' ' << t.op.counter << ' '
        << t.target << '\n';
  return out.str();
}

Run parse_run(const CounterMachine& m, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;

  Run run;
  bool expect_config = true;

  while (std::getline(in, line)) {
    ++lineno;
    auto words = split_words(strip_comment(line));
    if (words.empty()) continue;

    const std::string& key = words[0];
    if (key == "config:") {
      if (!expect_config) throw ParseError("expected a step line", lineno);
      if (words.size() < 2) throw ParseError("config expects a state", lineno);
      Configuration c;
      c.state = words[1];
      for (std::size_t i = 2; i < words.size(); ++i) {
        auto sep = words[i].find('=');
        if (sep == std::string::npos)
          throw ParseError("expected <counter>=<value>, got " + words[i], lineno);
        std::string counter = words[i].substr(0, sep);
        std::int64_t value = 0;
        try {
          value = std::stoll(words[i].substr(sep + 1));
        } catch (const std::exception&) {
          throw ParseError("bad counter value in " + words[i], lineno);
        }
        if (!m.is_counter(counter)) throw ParseError("unknown counter: " + counter, lineno);
        if (!c.values.emplace(counter, value).second)
          throw ParseError("duplicate counter: " + counter, lineno);
      }
      if (c.values.size() != m.counters.size())
        throw ParseError("config must value every machine counter", lineno);
      run.configs.push_back(std::move(c));
      expect_config = false;
    } else if (key == "step:") {
      if (expect_config) throw ParseError("expected a config line", lineno);
      if (words.size() != 2) throw ParseError("step expects one transition tag", lineno);
      const Transition* t = m.transition_by_tag(words[1]);
      if (!t) throw ParseError("unknown transition tag: " + words[1], lineno);
      run.steps.push_back(*t);
      expect_config = true;
    } else {
      throw ParseError("unknown directive: " + key, lineno);
    }
  }

  if (run.configs.empty()) throw ParseError("run has no configurations");
  if (expect_config) throw ParseError("run ends with a dangling step");
  return run;
}

std::string serialize_run(const CounterMachine& m, const Run& run) {
  std::ostringstream out;
  for (std::size_t i = 0; i < run.configs.size(); ++i) {
    if (i > 0) out << "step: " << run.steps[i - 1].tag << '\n';
    const auto& c = run.configs[i];
    out << "config: " << c.state;
    for (const auto& counter : m.counters) {
      auto it = c.values.find(counter);
      out << ' ' << counter << '=' << (it == c.values.end() ? 0 : it->second);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fo2sp::ca
