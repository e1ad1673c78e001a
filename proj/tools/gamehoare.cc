// gamehoare: command-line front end.
//
// Exit status: 0 when every query is valid (or the proof is accepted), 1 when
// some query is invalid (or the proof is rejected), 2 on usage, input or
// resource errors.

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gamehoare/arena.hh"
#include "gamehoare/decide.hh"
#include "gamehoare/denotation.hh"
#include "gamehoare/encode.hh"
#include "gamehoare/proof.hh"
#include "gamehoare/synth.hh"

using namespace gamehoare;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem load_problem(const std::string& path) {
  try {
    return parse_problem(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

std::optional<Mode> parse_mode(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "strong") return Mode::Strong;
  if (s == "weak") return Mode::Weak;
  throw UsageError("mode must be 'strong' or 'weak'");
}

std::vector<std::size_t> select_queries(const Problem& p, int query) {
  std::vector<std::size_t> out;
  if (query > 0) {
    if (static_cast<std::size_t>(query) > p.queries.size())
      throw UsageError("no query " + std::to_string(query) + " (file has " + std::to_string(p.queries.size()) + ")");
    out.push_back(static_cast<std::size_t>(query) - 1);
  } else {
    for (std::size_t i = 0; i < p.queries.size(); ++i) out.push_back(i);
  }
  return out;
}

std::string dump_path(const std::string& base, std::size_t query, bool several) {
  if (!several) return base;
  auto dot = base.rfind('.');
  std::string suffix = ".q" + std::to_string(query);
  if (dot == std::string::npos || base.find('/', dot) != std::string::npos) return base + suffix;
  return base.substr(0, dot) + suffix + base.substr(dot);
}

// Plays through encoded games carry whole loop bodies; --json keeps the full text.
std::string shorten(const std::string& s, std::size_t limit = 160) {
  if (s.size() <= limit) return s;
  return s.substr(0, limit - 4) + " ...";
}

struct CheckArgs {
  std::string file;
  std::string mode;
  bool json = false;
  std::string dump_game;
  int query = 0;
  unsigned jobs = 1;
  std::size_t max_tests = kDefaultMaxTests;
  std::size_t max_vertices = kDefaultMaxVertices;
};

int run_check(const CheckArgs& a) {
  Problem p = load_problem(a.file);
  auto which = select_queries(p, a.query);
  DecideOptions opts;
  opts.mode_override = parse_mode(a.mode);
  opts.max_tests = a.max_tests;
  opts.max_vertices = a.max_vertices;
  opts.synthesize = false;
  opts.with_labels = !a.dump_game.empty();

  struct Slot {
    std::optional<Verdict> verdict;
    std::string error;
    double seconds = 0;
  };
  std::vector<Slot> slots(which.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < which.size();) {
      auto t0 = std::chrono::steady_clock::now();
      try {
        std::size_t qi = which[k];
        if (!a.dump_game.empty()) {
          Decision d = prepare_decision(p, p.queries[qi], opts);
          std::ofstream out(dump_path(a.dump_game, qi + 1, which.size() > 1));
          out << game_to_json(d.og.game) << "\n";
        }
        slots[k].verdict = decide_query(p, qi, opts);
      } catch (const ResourceError& e) {
        slots[k].error = std::string("resource limit: ") + e.what();
      } catch (const std::exception& e) {
        slots[k].error = e.what();
      }
      slots[k].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(which.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool all_valid = true, error = false;
  nlohmann::json report = nlohmann::json::array();
  for (std::size_t k = 0; k < which.size(); ++k) {
    const auto& s = slots[k];
    std::size_t qn = which[k] + 1;
    if (!s.error.empty()) {
      error = true;
      std::cerr << "query " << qn << ": " << s.error << "\n";
      if (a.json) report.push_back({{"query", qn}, {"error", s.error}});
      continue;
    }
    const Verdict& v = *s.verdict;
    all_valid = all_valid && v.valid;
    if (a.json) {
      auto j = nlohmann::json::parse(verdict_to_json(v));
      report.push_back(j);
      continue;
    }
    std::cout << "query " << qn << " " << (v.valid ? "valid" : "invalid") << " (" << mode_name(v.mode) << "; "
              << v.stats.atoms << " atoms, " << v.stats.terms << " terms, " << v.stats.vertices << " vertices)\n";
    if (v.counterexample) {
      std::cout << "  counterexample from atom: " << v.counterexample->start_atom << "\n";
      for (const auto& step : v.counterexample->play) std::cout << "    " << shorten(step) << "\n";
    }
  }
  if (a.json) std::cout << nlohmann::json{{"file", a.file}, {"verdicts", report}}.dump(2) << "\n";
  if (error) return 2;
  return all_valid ? 0 : 1;
}

int run_synth(const std::string& file, int query, bool provenance) {
  Problem p = load_problem(file);
  bool all_valid = true;
  for (auto qi : select_queries(p, query)) {
    Query q = p.queries[qi];
    q.mode = Mode::Strong;
    Decision d = prepare_decision(p, q);
    if (!d.valid()) {
      std::cout << "query " << qi + 1 << " invalid: nothing to synthesize\n";
      all_valid = false;
      continue;
    }
    SynthesizedProgram s = synthesize(d);
    if (provenance)
      std::cout << provenance_to_json(s) << "\n";
    else
      std::cout << "query " << qi + 1 << ": " << pretty_scheme(s.program) << "\n";
  }
  return all_valid ? 0 : 1;
}

int run_solve_game(const std::string& file, bool json) {
  SafetyGame g = game_from_json(read_file(file));
  if (auto err = validate_game(g)) throw UsageError(file + ": " + *err);
  SolveResult r = solve_game(g);
  if (json) {
    std::cout << solve_result_to_json(g, r) << "\n";
    return 0;
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::cout << g.external_id(v) << " " << g.labels[v] << ": ";
    if (r.angel_win.test(v)) {
      std::cout << "angel";
      if (r.angel_strategy[v] != kNoMove) std::cout << ", moves to " << g.external_id(r.angel_strategy[v]);
    } else {
      std::cout << "demon, rank " << r.rank[v];
      if (r.demon_strategy[v] != kNoMove) std::cout << ", moves to " << g.external_id(r.demon_strategy[v]);
    }
    std::cout << "\n";
  }
  return 0;
}

int run_encode_game(const std::string& file, const std::vector<long long>& starts) {
  SafetyGame g = game_from_json(read_file(file));
  std::vector<std::size_t> from;
  for (auto s : starts) {
    std::size_t found = kNoMove;
    for (std::size_t v = 0; v < g.size(); ++v)
      if (g.external_id(v) == s) found = v;
    if (found == kNoMove) throw UsageError("no vertex with id " + std::to_string(s));
    from.push_back(found);
  }
  std::cout << pretty_problem(encode_safety_game(g, from));
  return 0;
}

int run_gen_atm(const std::string& file, bool check) {
  ATMSpec m = atm_from_json(read_file(file));
  Problem p = gen_atm_instance(m);
  if (!check) {
    std::cout << pretty_problem(p);
    return 0;
  }
  Verdict v = decide_query(p, 0);
  bool direct = atm_accepts(m);
  std::cout << "encoded query " << (v.valid ? "valid" : "invalid") << " (" << v.stats.atoms << " atoms, "
            << v.stats.terms << " terms, " << v.stats.vertices << " vertices); machine "
            << (direct ? "accepts" : "rejects") << "\n";
  if (v.valid != direct) {
    std::cerr << "disagreement between the encoding and the direct evaluation\n";
    return 2;
  }
  return v.valid ? 0 : 1;
}

int run_eval_model(const std::string& file, const std::string& program) {
  Model m = model_from_json(read_file(file));
  Problem ctx;
  for (const auto& [name, _] : m.tests) ctx.tests.push_back(name);
  for (const auto& [name, _] : m.actions) ctx.actions.push_back(name);
  Scheme f;
  try {
    f = parse_scheme(program, ctx);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--program: ") + e.what());
  }
  GameFunction g = eval_game(m, f);
  for (std::size_t u = 0; u < m.size(); ++u)
    std::cout << m.state_labels[u] << " -> " << format_options(g.at(u), m.state_labels) << "\n";
  return 0;
}

int run_prove_check(const std::string& file, const std::string& proof_file, int query) {
  Problem p = load_problem(file);
  ProofNode root;
  try {
    root = proof_from_json(read_file(proof_file), p);
  } catch (const ParseError& e) {
    throw UsageError(proof_file + ": " + e.what());
  }
  std::optional<Query> expected;
  if (query > 0) expected = p.queries.at(select_queries(p, query).front());
  ProofCheck r = check_proof(p, root, expected);
  if (!r.ok) {
    std::cout << "rejected at " << r.path << ": " << r.message << "\n";
    return 1;
  }
  std::cout << "accepted; witness " << pretty_scheme(*r.witness) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide, synthesize and check Hoare implications for while game schemes"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "decide every query of a problem file");
  c->add_option("file", check.file, "problem file")->required();
  c->add_option("--mode", check.mode, "override the mode of every query (strong or weak)");
  c->add_flag("--json", check.json, "machine-readable verdicts");
  c->add_option("--dump-game", check.dump_game, "write the built game(s) as JSON");
  c->add_option("--query", check.query, "decide only query N (1-based)");
  c->add_option("--jobs", check.jobs, "decide queries in parallel");
  c->add_option("--max-tests", check.max_tests, "limit on atomic tests");
  c->add_option("--max-vertices", check.max_vertices, "limit on game vertices");

  std::string synth_file;
  int synth_query = 0;
  bool provenance = false;
  auto* s = app.add_subcommand("synth", "print angel-free programs for valid queries");
  s->add_option("file", synth_file, "problem file")->required();
  s->add_option("--query", synth_query, "synthesize only query N (1-based)");
  s->add_flag("--provenance", provenance, "show how each angelic choice was resolved, as JSON");

  std::string game_file;
  bool game_json = false;
  auto* sg = app.add_subcommand("solve-game", "solve an explicit safety game");
  sg->add_option("game", game_file, "safety game (JSON)")->required();
  sg->add_flag("--json", game_json, "print regions, strategy and ranks as JSON");

  std::string enc_file;
  std::vector<long long> starts;
  auto* eg = app.add_subcommand("encode-game", "print the problem encoding of a safety game");
  eg->add_option("game", enc_file, "safety game (JSON)")->required();
  eg->add_option("--start", starts, "start vertex ids (default: all)");

  std::string atm_file;
  bool atm_check = false;
  auto* ga = app.add_subcommand("gen-atm", "print the problem encoding of an alternating Turing machine");
  ga->add_option("machine", atm_file, "machine description (JSON)")->required();
  ga->add_flag("--check", atm_check, "decide the encoding and compare with direct evaluation");

  std::string model_file, program;
  auto* em = app.add_subcommand("eval-model", "print the game function of a program in a model");
  em->add_option("model", model_file, "model (JSON)")->required();
  em->add_option("--program", program, "scheme over the model's tests and actions")->required();

  std::string pc_file, proof_file;
  int pc_query = 0;
  auto* pc = app.add_subcommand("prove-check", "check a derivation");
  pc->add_option("file", pc_file, "problem file")->required();
  pc->add_option("proof", proof_file, "derivation (JSON)")->required();
  pc->add_option("--query", pc_query, "require the proof to conclude query N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c->parsed()) return run_check(check);
    if (s->parsed()) return run_synth(synth_file, synth_query, provenance);
    if (sg->parsed()) return run_solve_game(game_file, game_json);
    if (eg->parsed()) return run_encode_game(enc_file, starts);
    if (ga->parsed()) return run_gen_atm(atm_file, atm_check);
    if (em->parsed()) return run_eval_model(model_file, program);
    if (pc->parsed()) return run_prove_check(pc_file, proof_file, pc_query);
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
