// Command-line frontend. Exit codes: 0 success/true, 1 false/none/violation,
// 2 usage or parse errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fo2sp/ca.hpp"
#include "fo2sp/codec.hpp"
#include "fo2sp/errors.hpp"
#include "fo2sp/fo2.hpp"
#include "fo2sp/reduction.hpp"
#include "fo2sp/satsearch.hpp"
#include "fo2sp/structures.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fo2sp::ParseError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw fo2sp::ParseError("cannot open output file: " + out_path);
  out << content;
}

fo2sp::satsearch::LabelingMode parse_mode(const std::string& mode) {
  if (mode == "well-colored") return fo2sp::satsearch::LabelingMode::WellColored;
  if (mode == "full") return fo2sp::satsearch::LabelingMode::FullPowerset;
  throw fo2sp::ParseError("unknown mode: " + mode + " (expected well-colored or full)");
}

int cmd_compile(const std::string& ca_path, const std::string& out_path) {
  auto machine = fo2sp::ca::parse_machine(read_file(ca_path));
  auto sentence = fo2sp::reduction::compile(machine);
  write_output(out_path, fo2sp::fo2::print_formula_pretty(*sentence) + "\n");
  return kOk;
}

int cmd_simulate(const std::string& ca_path, int max_steps) {
  auto machine = fo2sp::ca::parse_machine(read_file(ca_path));
  auto run = fo2sp::ca::find_accepting_run(machine, max_steps);
  if (!run) {
    std::cout << "none\n";
    return kNegative;
  }
  std::cout << fo2sp::ca::serialize_run(machine, *run);
  return kOk;
}

int cmd_encode(const std::string& ca_path, const std::string& run_path, int max_steps,
               const std::string& out_path) {
  auto machine = fo2sp::ca::parse_machine(read_file(ca_path));
  std::optional<fo2sp::ca::Run> run;
  if (!run_path.empty()) {
    run = fo2sp::ca::parse_run(machine, read_file(run_path));
  } else {
    run = fo2sp::ca::find_accepting_run(machine, max_steps);
    if (!run) {
      std::cout << "none\n";
      return kNegative;
    }
  }
  auto encoded = fo2sp::codec::encode(machine, *run);
  write_output(out_path, fo2sp::codec::serialize_meta(encoded.meta) +
                             fo2sp::structures::serialize_structure(encoded.structure));
  return kOk;
}

int cmd_decode(const std::string& ca_path, const std::string& structure_path) {
  auto machine = fo2sp::ca::parse_machine(read_file(ca_path));
  auto structure = fo2sp::structures::parse_structure(read_file(structure_path));

  auto violations = fo2sp::structures::validate(structure);
  if (!violations.empty()) {
    std::cerr << "invalid structure:\n";
    for (const auto& v : violations) std::cerr << "  " << v << '\n';
    return kNegative;
  }

  fo2sp::ca::Run run;
  try {
    run = fo2sp::codec::decode(machine, structure);
  } catch (const fo2sp::DecodeError& e) {
    std::cerr << "decode failed: " << e.what() << '\n';
    return kNegative;
  }

  std::cout << fo2sp::ca::serialize_run(machine, run);
  auto check = fo2sp::ca::validate_run(machine, run);
  if (!check) {
    std::cout << "# not-accepting: " << check.reason << '\n';
    return kNegative;
  }
  std::cout << "# accepting\n";
  return kOk;
}

int cmd_check(const std::string& structure_path, const std::string& formula_path) {
  auto structure = fo2sp::structures::parse_structure(read_file(structure_path));
  auto formula = fo2sp::fo2::parse_formula(read_file(formula_path));
  if (!fo2sp::fo2::is_sentence(*formula))
    throw fo2sp::ParseError("check needs a sentence, formula has free variables");
  bool holds = fo2sp::fo2::evaluate(structure, *formula);
  std::cout << (holds ? "true" : "false") << '\n';
  return holds ? kOk : kNegative;
}

int cmd_solve(const std::string& formula_path, int max_size, const std::string& mode,
              const std::string& out_path) {
  auto formula = fo2sp::fo2::parse_formula(read_file(formula_path));
  auto spec = fo2sp::satsearch::spec_for_sentence(formula, max_size, parse_mode(mode));
  auto result = fo2sp::satsearch::solve(spec);
  if (auto* model = std::get_if<fo2sp::structures::OrderedStructure>(&result)) {
    write_output(out_path, fo2sp::structures::serialize_structure(*model));
    return kOk;
  }
  std::cout << fo2sp::satsearch::serialize_certificate(std::get<fo2sp::satsearch::UnsatCertificate>(result))
            << '\n';
  return kNegative;
}

// Both correctness directions plus the exact round trip:
// (i) the simulated run's encoding satisfies the compiled sentence,
// (ii) every model found up to max_size decodes to an accepting run,
// (iii) decode(encode(run)) == run.
int cmd_roundtrip(const std::string& ca_path, int max_steps, int max_size) {
  auto machine = fo2sp::ca::parse_machine(read_file(ca_path));
  auto sentence = fo2sp::reduction::compile(machine);

  auto run = fo2sp::ca::find_accepting_run(machine, max_steps);
  if (!run) {
    std::cout << "no accepting run within " << max_steps << " steps\n";
    return kNegative;
  }

  auto encoded = fo2sp::codec::encode(machine, *run);
  if (!fo2sp::fo2::evaluate(encoded.structure, *sentence)) {
    std::cout << "FAIL: encoded run does not satisfy the compiled sentence\n";
    return kNegative;
  }
  std::cout << "encode(run) satisfies the sentence (size " << encoded.structure.order.size()
            << ")\n";

  if (fo2sp::codec::decode(machine, encoded.structure) != *run) {
    std::cout << "FAIL: decode(encode(run)) differs from the run\n";
    return kNegative;
  }
  std::cout << "decode(encode(run)) == run\n";

  auto spec = fo2sp::satsearch::spec_for_sentence(
      sentence, max_size, fo2sp::satsearch::LabelingMode::WellColored);
  int models = 0;
  bool all_decode = true;
  fo2sp::satsearch::for_each_model(spec, [&](const fo2sp::structures::OrderedStructure& model) {
    ++models;
    try {
      auto decoded = fo2sp::codec::decode(machine, model);
      if (!fo2sp::ca::validate_run(machine, decoded)) all_decode = false;
    } catch (const fo2sp::DecodeError&) {
      all_decode = false;
    }
    return all_decode;
  });
  if (!all_decode) {
    std::cout << "FAIL: a model up to size " << max_size << " does not decode to an accepting run\n";
    return kNegative;
  }
  std::cout << models << " model(s) up to size " << max_size
            << ", all decode to accepting runs\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counter machines, two-variable logic over successor structures, and the compiler between them"};
  app.require_subcommand(1);

  std::string ca_path, structure_path, formula_path, run_path, out_path;
  std::string mode = "well-colored";
  int max_steps = 0, max_size = 0;

  auto* compile = app.add_subcommand("compile", "Compile a counter machine to a sentence");
  compile->add_option("ca-file", ca_path)->required();
  compile->add_option("-o,--output", out_path);

  auto* simulate = app.add_subcommand("simulate", "Search for a shortest accepting run");
  simulate->add_option("ca-file", ca_path)->required();
  simulate->add_option("--max-steps", max_steps)->required();

  auto* encode = app.add_subcommand("encode", "Encode an accepting run as a structure");
  encode->add_option("ca-file", ca_path)->required();
  encode->add_option("--run", run_path);
  encode->add_option("--max-steps", max_steps);
  encode->add_option("-o,--output", out_path);

  auto* decode = app.add_subcommand("decode", "Read a run back from a structure");
  decode->add_option("ca-file", ca_path)->required();
  decode->add_option("structure-file", structure_path)->required();

  auto* check = app.add_subcommand("check", "Evaluate a sentence on a structure");
  check->add_option("structure-file", structure_path)->required();
  check->add_option("formula-file", formula_path)->required();

  auto* solve = app.add_subcommand("solve", "Search for a model up to a size bound");
  solve->add_option("formula-file", formula_path)->required();
  solve->add_option("--max-size", max_size)->required();
  solve->add_option("--mode", mode)->check(CLI::IsMember({"well-colored", "full"}));
  solve->add_option("-o,--output", out_path);

  auto* roundtrip = app.add_subcommand("roundtrip", "Run both correctness directions end to end");
  roundtrip->add_option("ca-file", ca_path)->required();
  roundtrip->add_option("--max-steps", max_steps)->required();
  roundtrip->add_option("--max-size", max_size)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (compile->parsed()) return cmd_compile(ca_path, out_path);
    if (simulate->parsed()) {
      if (max_steps < 1) throw fo2sp::ParseError("--max-steps must be at least 1");
      return cmd_simulate(ca_path, max_steps);
    }
    if (encode->parsed()) {
      if (run_path.empty() == (max_steps == 0))
        throw fo2sp::ParseError("encode needs exactly one of --run or --max-steps");
      return cmd_encode(ca_path, run_path, max_steps, out_path);
    }
    if (decode->parsed()) return cmd_decode(ca_path, structure_path);
    if (check->parsed()) return cmd_check(structure_path, formula_path);
    if (solve->parsed()) {
      if (max_size < 1) throw fo2sp::ParseError("--max-size must be at least 1");
      return cmd_solve(formula_path, max_size, mode, out_path);
    }
    if (roundtrip->parsed()) {
      if (max_steps < 1 || max_size < 1)
        throw fo2sp::ParseError("--max-steps and --max-size must be at least 1");
      return cmd_roundtrip(ca_path, max_steps, max_size);
    }
  } catch (const fo2sp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fo2sp::UnsupportedCounters& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fo2sp::TrivialMachine& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNegative;
  }
  return kUsage;
}
