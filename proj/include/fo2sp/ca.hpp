#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fo2sp::ca {

enum class OpKind : unsigned char { Inc, Dec, Ifz };

constexpr const char* op_name(OpKind k) {
  switch (k) {
    case OpKind::Inc: return "inc";
    case OpKind::Dec: return "dec";
    case OpKind::Ifz: return "ifz";
  }
  return "?";
}
std::optional<OpKind> op_from_name(std::string_view name);

struct CounterOp {
  OpKind kind;
  std::string counter;
  bool operator==(const CounterOp&) const = default;
};

struct Transition {
  std::string source;
  CounterOp op;
  std::string target;
  std::string tag;  // stable identifier, t1.. in file order
  bool operator==(const Transition&) const = default;
};

// A counter automaton. Any number of counters is allowed here; the reduction
// restricts to two.
struct CounterMachine {
  std::vector<std::string> states;
  std::vector<std::string> counters;
  std::vector<Transition> transitions;
  std::string initial;
  std::vector<std::string> finals;
  bool operator==(const CounterMachine&) const = default;

  bool is_state(const std::string& s) const;
  bool is_counter(const std::string& c) const;
  bool is_final(const std::string& s) const;
  const Transition* transition_by_tag(const std::string& tag) const;
};

// Well-formedness violations; empty result means the machine is valid.
std::vector<std::string> validate_machine(const CounterMachine& m);

struct Configuration {
  std::string state;
  std::map<std::string, std::int64_t> values;  // one entry per machine counter
  bool operator==(const Configuration&) const = default;
};

struct Run {
  std::vector<Configuration> configs;  // nonempty
  std::vector<Transition> steps;       // steps[i] leads configs[i] -> configs[i+1]
  bool operator==(const Run&) const = default;
};

Configuration initial_configuration(const CounterMachine& m);

// True when t fires from c: states match and the counter guard holds
// (dec needs a positive counter, ifz a zero one).
bool applicable(const Transition& t, const Configuration& c);

// Successor configuration. Throws NotApplicable on state mismatch or a
// failed guard. The result never carries a negative counter.
Configuration apply(const CounterMachine& m, const Transition& t, const Configuration& c);

struct RunCheck {
  bool accepting = false;
  std::string reason;  // first violation when not accepting
  explicit operator bool() const { return accepting; }
};

// Accepting means: starts at (initial, all zero), every step fires and yields
// the recorded successor, ends in a final state with all counters zero.
RunCheck validate_run(const CounterMachine& m, const Run& run);

// Breadth-first search for a shortest accepting run of at most max_steps
// steps; ties are broken by transition order. Counter values are pruned at
// max_steps, which no run of that length can exceed, so the search is
// complete within the bound and always terminates.
std::optional<Run> find_accepting_run(const CounterMachine& m, int max_steps);

// Text format, '#' comments:
//   states: q0 q1 q2
//   counters: B R
//   init: q0
//   final: q2
//   trans: q0 inc B q1
// Transition tags are assigned t1, t2, ... in file order.
CounterMachine parse_machine(std::string_view text);
std::string serialize_machine(const CounterMachine& m);

// Run text format, alternating lines:
//   config: q0 B=0 R=0
//   step: t1
//   config: q1 B=1 R=0
Run parse_run(const CounterMachine& m, std::string_view text);
std::string serialize_run(const CounterMachine& m, const Run& run);

}  // namespace fo2sp::ca
