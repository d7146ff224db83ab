// lhc: command-line front end.
//
//   lhc check FILE        type and code of main
//   lhc eval FILE         normalize main under a strategy
//   lhc trace FILE        as eval, printing every step
//   lhc graph FILE        reduction graph as DOT
//   lhc erase FILE        main in the simplified calculus
//   lhc enumerate         well-typed closed codes up to --size
//
// Exit codes: 0 ok, 1 type error, 2 parse error, 3 fuel or node bound hit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lhc/lhc.hpp"

namespace {

using namespace lhc;

struct Config {
  std::string input;
  std::string prelude;
  std::string strategy = "cbv";
  std::size_t fuel = 10000;
  std::size_t max_nodes = 50000;
  bool show_trail = false;
  std::string dot_out;
  std::uint64_t seed = 0;
  std::size_t oracle_bound = 7;
  std::size_t size = 5;
  bool simplified = false;
};

struct Exit {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << path << ": cannot open file\n";
    throw Exit{2};
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SourceFile load(const Config& cfg) {
  std::vector<std::pair<std::string, Code>> defs;
  std::string at = cfg.prelude;
  try {
    if (!cfg.prelude.empty()) defs = parse_definitions(read_file(cfg.prelude));
    at = cfg.input;
    return parse_program(read_file(cfg.input), defs);
  } catch (const ParseError& e) {
    std::cerr << at << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
    throw Exit{2};
  }
}

[[noreturn]] void type_error(const Config& cfg, const SourceFile& f, const TypeError& e) {
  std::cerr << cfg.input << ":" << f.main_line << ":" << f.main_col << ": " << e.what() << "\n";
  throw Exit{1};
}

Strategy strategy(const Config& cfg) {
  if (cfg.strategy == "lo") return Strategy::leftmost_outermost;
  if (cfg.strategy == "all") return Strategy::all;
  return Strategy::cbv;
}

// Bang-rooted term for main; a main that is not a bang is wrapped in one
// with an empty history.
Term rooted(const SourceFile& f) {
  if (f.is_term()) {
    const Term& m = std::get<Term>(f.main);
    if (as<Bang<TermTag>>(m)) return m;
    return term::bang(trail::refl(code_of(m)), m);
  }
  const Code& c = std::get<Code>(f.main);
  if (as<Bang<CodeTag>>(c)) return code_as_term(c);
  return term::bang(trail::refl(c), code_as_term(c));
}

Term checked_root(const Config& cfg, const SourceFile& f) {
  Term m = rooted(f);
  try {
    infer_term(m);
  } catch (const TypeError& e) {
    type_error(cfg, f, e);
  }
  return m;
}

std::string show(const Config& cfg, const Term& m) { return cfg.show_trail ? pretty(m) : pretty_elided(m); }

const Trail& root_trail(const Term& m) { return as<Bang<TermTag>>(m)->trail; }

std::string path_text(const Path& p) {
  std::string s;
  for (int k : p) s += (s.empty() ? "" : ".") + std::to_string(k);
  return s.empty() ? "root" : s;
}

int cmd_check(const Config& cfg) {
  SourceFile f = load(cfg);
  try {
    if (f.is_term()) {
      auto r = infer_term(std::get<Term>(f.main));
      std::cout << "type: " << pretty(r.type) << "\ncode: " << pretty(r.code) << "\n";
    } else {
      const Code& c = std::get<Code>(f.main);
      Type t = infer_code(c);
      std::cout << "type: " << pretty(t) << "\ncode: " << pretty(c) << "\n";
    }
  } catch (const TypeError& e) {
    type_error(cfg, f, e);
  }
  return 0;
}

int cmd_eval(const Config& cfg, bool trace) {
  SourceFile f = load(cfg);
  Term m = checked_root(cfg, f);
  Strategy s = strategy(cfg);
  std::size_t steps = 0;
  for (;;) {
    auto next = step(m, s);
    if (!next) break;
    if (steps == cfg.fuel) {
      std::cout << "partial: " << show(cfg, m) << "\n";
      std::cerr << cfg.input << ": fuel exhausted after " << steps << " steps\n";
      return 3;
    }
    m = std::move(next->first);
    ++steps;
    if (trace) {
      const auto& info = next->second;
      std::cout << "step " << steps << ": " << rule_name(info.rule) << " at " << path_text(info.path) << "\n"
                << "  delta: " << pretty(info.delta) << "\n"
                << "  term: " << show(cfg, m) << "\n";
    }
  }
  std::cout << "steps: " << steps << "\n";
  std::cout << "result: " << show(cfg, m) << "\n";
  if (cfg.show_trail) std::cout << "trail: " << pretty(root_trail(m)) << "\n";
  return 0;
}

void write_dot(const Config& cfg, const std::string& dot) {
  if (cfg.dot_out.empty()) {
    std::cout << dot;
    return;
  }
  std::ofstream out(cfg.dot_out, std::ios::binary);
  out << dot;
}

int cmd_graph(const Config& cfg) {
  SourceFile f = load(cfg);
  Term m = checked_root(cfg, f);
  try {
    std::ostream& info = cfg.dot_out.empty() ? std::cerr : std::cout;
    if (cfg.simplified) {
      auto g = hs_reduction_graph(erase_term(m), TrailOracle::bounded(cfg.oracle_bound), cfg.fuel, cfg.max_nodes);
      std::ostringstream dot;
      dot << "digraph reduction {\n";
      for (std::size_t i = 0; i < g.nodes.size(); ++i)
        dot << "  n" << i << " [label=\"" << detail::dot_escape(pretty(g.nodes[i].term)) << "\""
            << (g.nodes[i].normal ? ", peripheries=2" : "") << "];\n";
      for (const auto& e : g.edges) dot << "  n" << e.from << " -> n" << e.to << ";\n";
      dot << "}\n";
      write_dot(cfg, dot.str());
      info << "nodes: " << g.nodes.size() << " edges: " << g.edges.size() << "\n";
      if (!g.complete()) {
        std::cerr << cfg.input << ": fuel exhausted\n";
        return 3;
      }
      return 0;
    }
    auto g = reduction_graph(m, cfg.fuel, cfg.max_nodes);
    write_dot(cfg, to_dot(g, cfg.show_trail));
    std::size_t normal = 0;
    for (const auto& n : g.nodes) normal += n.normal;
    info << "nodes: " << g.nodes.size() << " edges: " << g.edges.size() << " normal: " << normal << "\n";
    if (!g.complete()) {
      std::cerr << cfg.input << ": fuel exhausted\n";
      return 3;
    }
  } catch (const BoundExceeded& e) {
    std::cerr << cfg.input << ": " << e.what() << "\n";
    return 3;
  }
  return 0;
}

int cmd_erase(const Config& cfg) {
  SourceFile f = load(cfg);
  HsTerm s = f.is_term() ? erase_term(std::get<Term>(f.main)) : erase_code(std::get<Code>(f.main));
  std::cout << pretty(s) << "\n";
  return 0;
}

int cmd_enumerate(const Config& cfg) {
  auto codes = enumerate_closed(cfg.size, cfg.seed);
  for (const auto& c : codes) std::cout << pretty(c.code) << " : " << pretty(c.type) << "\n";
  std::cout << "-- count: " << codes.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audited computation with inspectable trails"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub, bool needs_file) {
    if (needs_file) sub->add_option("file", cfg.input, "Program (.lhc)")->required();
    sub->add_option("--prelude", cfg.prelude, "Definitions made visible to the program");
    sub->add_option("--strategy", cfg.strategy, "Reduction strategy")
        ->check(CLI::IsMember({"cbv", "lo", "all"}))
        ->capture_default_str();
    sub->add_option("--fuel", cfg.fuel, "Step limit")->capture_default_str();
    sub->add_option("--max-nodes", cfg.max_nodes, "Graph node limit")->capture_default_str();
    sub->add_flag("--show-trail", cfg.show_trail, "Print trails");
    sub->add_option("--dot", cfg.dot_out, "Write DOT output here");
    sub->add_option("--seed", cfg.seed, "Enumeration order seed")->capture_default_str();
    sub->add_option("--oracle-bound", cfg.oracle_bound, "Largest oracle trail")->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "Type and code of main");
  auto* eval = app.add_subcommand("eval", "Evaluate main");
  auto* trace = app.add_subcommand("trace", "Evaluate main, printing each step");
  auto* graph = app.add_subcommand("graph", "Reduction graph of main");
  auto* erase = app.add_subcommand("erase", "Erase main to the simplified calculus");
  auto* enumerate = app.add_subcommand("enumerate", "List well-typed closed codes");
  for (auto* sub : {check, eval, trace, graph, erase}) add_common(sub, true);
  add_common(enumerate, false);
  graph->add_flag("--simplified", cfg.simplified, "Explore the erased term with oracle trails");
  enumerate->add_option("--size", cfg.size, "Largest code size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(cfg);
    if (*eval) return cmd_eval(cfg, false);
    if (*trace) return cmd_eval(cfg, true);
    if (*graph) return cmd_graph(cfg);
    if (*erase) return cmd_erase(cfg);
    if (*enumerate) return cmd_enumerate(cfg);
  } catch (const Exit& e) {
    return e.code;
  }
  return 0;
}
