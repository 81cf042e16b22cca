// glimca: command-line front end for the simulation, subshift and analysis
// library. Exit codes: 0 pass, 1 a checked property failed, 2 bad input,
// 3 budget exceeded.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "glimca/engine.hpp"
#include "glimca/error.hpp"
#include "glimca/io.hpp"
#include "glimca/lab.hpp"
#include "glimca/render.hpp"
#include "glimca/sft.hpp"
#include "glimca/signal_ca.hpp"
#include "glimca/tm.hpp"

using namespace glimca;

namespace {

constexpr int kPass = 0, kFail = 1, kInput = 2, kBudget = 3;

struct Output {
  std::string path;
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
  }
};

void add_bounds(CLI::App* cmd, Bounds& b, bool with_seed = true) {
  cmd->add_option("--context", b.U, "context length U");
  cmd->add_option("--horizon", b.T_max, "time horizon T_max");
  cmd->add_option("--hits", b.K, "hit threshold K");
  cmd->add_option("--branching", b.branching, "context / extension budget");
  cmd->add_option("--samples", b.N, "sample count N");
  cmd->add_option("--burn-in", b.T0, "burn-in T0");
  cmd->add_option("--n", b.n, "window length n");
  cmd->add_option("--period", b.period, "sampled configuration period");
  cmd->add_option("--m-max", b.m_max, "classifier horizon");
  cmd->add_option("--threads", b.threads, "worker threads for sampling");
  if (with_seed) cmd->add_option("--seed", b.seed, "random seed");
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  return s;
}

std::string show_word(const Alphabet& a, const Word& w) { return w.empty() ? "(empty)" : a.show(w); }

std::shared_ptr<const TuringMachine> load_machine(const std::string& path) {
  return std::make_shared<const TuringMachine>(parse_machine(read_file(path)));
}

PredicateProgram constant_predicate(const std::string& psi, const std::vector<std::string>& letters) {
  Alphabet a(letters);
  if (psi == "always-true") return PredicateProgram::always_true(a);
  if (psi == "always-false") return PredicateProgram::always_false(a);
  throw ParseError("--psi must be always-true or always-false");
}

std::string language_lines(const LanguageSample& s) {
  std::ostringstream os;
  std::string tag = s.sampled ? " [sampled seed=" + std::to_string(s.sampled->seed) + " " + s.sampled->params + " uniform]"
                              : " [exact]";
  for (const auto& [len, words] : s.words) {
    if (len == 0) continue;
    os << "L_" << len << " (" << words.size() << "):";
    std::size_t shown = 0;
    for (const auto& w : words) {
      if (++shown > 16) {
        os << " ...";
        break;
      }
      os << " " << s.alphabet.show(w);
    }
    os << tag << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glimca: cellular automata, subshifts and bounded generic-limit analysis"};
  app.require_subcommand(0, 1);
  bool show_defaults = false;
  app.add_flag("--show-defaults", show_defaults, "print default bounds and exit");
  Output out;
  app.add_option("-o,--output", out.path, "write output to a file");

  Bounds bounds;

  // sim
  auto* sim = app.add_subcommand("sim", "run a rule on a configuration and render the spacetime diagram");
  std::string rule_path, config_text, format_name = "text";
  int steps = 1;
  std::vector<std::int64_t> window;
  sim->add_option("--rule", rule_path, "rule file (.ca)")->required();
  sim->add_option("--config", config_text, "cyclic:WORD or 'L^inf (C@k) R^inf'")->required();
  sim->add_option("--steps", steps, "number of steps")->check(CLI::NonNegativeNumber);
  sim->add_option("--window", window, "first and last cell")->expected(2);
  sim->add_option("--format", format_name, "text, csv or pnm");

  // compile / machine
  auto* compile = app.add_subcommand("compile", "compile a .tm machine into the radius-3 signal CA (.ca)");
  std::string tm_path;
  compile->add_option("--tm", tm_path, "machine file (.tm)")->required();

  auto* machine = app.add_subcommand("machine", "emit the enumeration machine for a constant predicate (.tm)");
  std::string psi_name = "always-true";
  std::vector<std::string> letters{"a", "b"};
  machine->add_option("--psi", psi_name, "always-true or always-false");
  machine->add_option("--letters", letters, "input letters");

  // simulate-tm
  auto* simtm = app.add_subcommand("simulate-tm", "run a two-tape machine directly");
  std::string ro_text, rw_text;
  std::uint64_t max_steps = 100000;
  bool trace = false;
  simtm->add_option("--tm", tm_path, "machine file (.tm)")->required();
  simtm->add_option("--ro", ro_text, "read-only tape prefix")->required();
  simtm->add_option("--rw", rw_text, "read-write tape prefix ('_' is blank)")->required();
  simtm->add_option("--max-steps", max_steps, "step limit");
  simtm->add_flag("--trace", trace, "print every configuration");

  // verify-geometry
  auto* geo = app.add_subcommand("verify-geometry", "check the collision schedule of the compiled CA");
  std::string w_text = "a", u_text, v_text;
  std::size_t m_dollars = 0, n_from = 5, n_to = 12;
  geo->add_option("--tm", tm_path, "machine file (.tm)")->required();
  geo->add_option("--w", w_text, "input word over the machine letters");
  geo->add_option("--m", m_dollars, "number of $ symbols");
  geo->add_option("--n-from", n_from, "first n");
  geo->add_option("--n-to", n_to, "last n");
  geo->add_option("--u", u_text, "word left of w~ (signal alphabet, comma separated)");
  geo->add_option("--v", v_text, "word right of w~ (signal alphabet, comma separated)");

  // fidelity
  auto* fid = app.add_subcommand("fidelity", "compare the compiled head with direct simulation");
  fid->add_option("--tm", tm_path, "machine file (.tm); default: the enumeration machine of --psi");
  fid->add_option("--psi", psi_name, "always-true or always-false");
  fid->add_option("--letters", letters, "input letters");
  fid->add_option("--w", w_text, "input word");
  fid->add_option("--m", m_dollars, "number of $ symbols");
  fid->add_option("--n-from", n_from, "first n");
  fid->add_option("--n-to", n_to, "last n");
  fid->add_option("--max-steps", max_steps, "machine step limit");

  // sft
  auto* sft = app.add_subcommand("sft", "subshift of finite type checks");
  std::string sft_path, check;
  std::size_t width = 0;
  sft->add_option("--file", sft_path, "subshift file (.sft)")->required();
  sft->add_option("--check", check, "transitive, mixing, period, components or obstruction")
      ->required()
      ->check(CLI::IsMember({"transitive", "mixing", "period", "components", "obstruction"}));
  sft->add_option("--width", width, "component width (default: the window)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "estimate the generic language and report realizability");
  analyze->add_option("--rule", rule_path, "rule file (.ca)")->required();
  analyze->add_option("--sft", sft_path, "analyze this subshift instead of the estimated language");
  analyze->add_option("--format", format_name, "text or csv");
  add_bounds(analyze, bounds);

  // enables
  auto* enables = app.add_subcommand("enables", "bounded check that v enables s");
  std::string s_text;
  std::int64_t at = 0;
  enables->add_option("--rule", rule_path, "rule file (.ca)")->required();
  enables->add_option("--v", v_text, "enabling candidate")->required();
  enables->add_option("--at", at, "position of v");
  enables->add_option("--s", s_text, "target word at 0")->required();
  add_bounds(enables, bounds);

  // forcing
  auto* forcing = app.add_subcommand("forcing", "greedy search for a forcing extension of a seed word");
  std::string seed_word, oracle_path;
  Bounds fbounds;
  fbounds.n = 2;
  std::uint64_t rng_seed = fbounds.seed;
  forcing->add_option("--rule", rule_path, "rule file (.ca)")->required();
  forcing->add_option("--seed", seed_word, "seed word")->required();
  forcing->add_option("--at", at, "position of the seed word");
  forcing->add_option("--oracle-sft", oracle_path, "use this subshift's language instead of an estimate");
  forcing->add_option("--rng-seed", rng_seed, "random seed for the estimated oracle");
  add_bounds(forcing, fbounds, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (show_defaults) {
      Bounds d;
      out.write("defaults: " + d.describe() + " threads=" + std::to_string(d.threads) + "\n");
      return kPass;
    }

    if (*sim) {
      const LocalRule rule = parse_rule(read_file(rule_path));
      const Configuration x = parse_configuration(config_text, rule.alphabet());
      std::int64_t a = 0, b = 0;
      if (window.size() == 2) {
        a = window[0];
        b = window[1];
      } else if (x.is_cyclic()) {
        b = static_cast<std::int64_t>(x.period()) - 1;
      } else {
        a = x.offset() - 4;
        b = x.center_end() + 3;
      }
      if (a > b) throw ParseError("--window needs first <= last");
      const auto diagram = run(rule, x, steps, a, b);
      out.write(render(diagram, parse_render_format(format_name)));
      return kPass;
    }

    if (*compile) {
      out.write(format_rule(compile_signal_ca(load_machine(tm_path))));
      return kPass;
    }

    if (*machine) {
      out.write(format_machine(build_sigma3_machine(constant_predicate(psi_name, letters))));
      return kPass;
    }

    if (*simtm) {
      const auto tm = load_machine(tm_path);
      const Word ro = tm->gamma_a().parse_word(ro_text);
      std::vector<std::string> names = tm->gamma();
      names.push_back(TuringMachine::kBlankName);
      const Alphabet rw_alpha(names);
      std::vector<int> rw;
      for (Symbol s : rw_alpha.parse_word(rw_text)) rw.push_back(static_cast<int>(s));
      const TmRun r = simulate_tm(*tm, ro, rw, max_steps, trace);
      std::ostringstream os;
      auto tape = [&](const std::vector<int>& t) {
        std::string s;
        for (int g : t) s += (s.empty() || rw_alpha.single_char() ? "" : ",") + tm->tape_name(g);
        return s;
      };
      if (trace) {
        for (const auto& st : r.trace)
          os << "step state=" << tm->state_name(st.state) << " head=" << st.head
             << " read=" << tm->tape_name(st.tape_under_head) << "\n";
      }
      os << "outcome " << outcome_name(r.outcome) << "\n"
         << "steps " << r.steps << "\n"
         << "state " << tm->state_name(r.state) << "\n"
         << "head " << r.head << "\n"
         << "read-only " << tm->gamma_a().show(r.read_only) << "\n"
         << "read-write " << tape(r.read_write) << "\n";
      out.write(os.str());
      return r.outcome == TmRun::Outcome::Timeout ? kFail : kPass;
    }

    if (*geo) {
      const auto tm = load_machine(tm_path);
      const LocalRule rule = compile_signal_ca(tm);
      const SignalAlphabet& sa = as_signal_rule(rule)->signal_alphabet();
      const Word w = tm->gamma_a().parse_word(w_text);
      const Word u = u_text.empty() ? Word{} : sa.alphabet().parse_word(u_text);
      const Word v = v_text.empty() ? Word{} : sa.alphabet().parse_word(v_text);
      std::ostringstream os;
      bool all = true;
      for (std::size_t n = n_from; n <= n_to; ++n) {
        try {
          const Configuration x = build_proof_config(sa, w, m_dollars, n, u, v);
          const EventSchedule sched = expected_events(*tm, n);
          for (const auto& ev : sched.events) {
            EventSchedule one{{ev}};
            const EventCheck c = verify_events(rule, sa, x, one);
            all = all && c.ok;
            os << "n=" << n << " t=" << ev.time << " c=" << ev.coordinate << " " << ev.label << " "
               << (c.ok ? "pass" : "FAIL") << " exact\n";
            for (const auto& msg : c.mismatches) os << "  " << msg << "\n";
          }
        } catch (const PreconditionError& e) {
          all = false;
          os << "n=" << n << " error: " << e.what() << "\n";
        }
      }
      out.write(os.str());
      return all ? kPass : kFail;
    }

    if (*fid) {
      const auto tm = tm_path.empty()
                          ? std::make_shared<const TuringMachine>(
                                build_sigma3_machine(constant_predicate(psi_name, letters)))
                          : load_machine(tm_path);
      const LocalRule rule = compile_signal_ca(tm);
      const SignalAlphabet& sa = as_signal_rule(rule)->signal_alphabet();
      const Word w = tm->gamma_a().parse_word(w_text);
      std::ostringstream os;
      bool all = true;
      for (std::size_t n = n_from; n <= n_to; ++n) {
        const FidelityReport r = check_fidelity(rule, sa, w, m_dollars, n, max_steps);
        all = all && r.ok;
        os << "n=" << n << " machine=" << outcome_name(r.machine_run.outcome) << " steps=" << r.machine_run.steps
           << " compared=" << r.compared_steps << " tape-init=" << (r.tape_initialized ? "yes" : "no")
           << " w_hat=" << (r.w_hat_time ? "t=" + std::to_string(*r.w_hat_time) : std::string("absent")) << " "
           << (r.ok ? "pass" : "FAIL: " + r.first_mismatch) << " exact\n";
      }
      out.write(os.str());
      return all ? kPass : kFail;
    }

    if (*sft) {
      const Sft x = parse_sft(read_file(sft_path));
      std::ostringstream os;
      int code = kPass;
      if (x.empty()) {
        os << "empty subshift\n";
        out.write(os.str());
        return kFail;
      }
      if (check == "transitive") {
        const bool t = is_transitive(x);
        os << (t ? "true" : "false") << " exact\n";
        code = t ? kPass : kFail;
      } else if (check == "mixing") {
        const bool m = is_mixing(x);
        os << (m ? "true" : "false") << " exact\n";
        code = m ? kPass : kFail;
      } else if (check == "period") {
        const auto comps = irreducible_components(x);
        for (std::size_t i = 0; i < comps.size(); ++i) {
          std::string verts;
          for (int v : comps[i].vertices) verts += (verts.empty() ? "" : " ") + show_word(x.alphabet(), x.vertices()[v]);
          os << "component " << i + 1 << " period " << comps[i].period << " vertices {" << verts << "} exact\n";
        }
      } else if (check == "components") {
        const auto p = chain_components(x, width ? width : x.window());
        os << "width " << p.width << ", " << p.classes.size() << " chain components exact\n";
        for (std::size_t i = 0; i < p.classes.size(); ++i) {
          os << "component " << i + 1 << ":";
          for (const auto& w : p.classes[i]) os << " " << show_word(x.alphabet(), w);
          os << "\n";
        }
      } else {
        const auto v = periodic_factor_obstruction(x);
        switch (v.kind) {
          case ObstructionVerdict::Kind::Obstructed:
            os << "obstructed p=" << v.period << ": cannot be the generic limit set exact\n";
            code = kFail;
            break;
          case ObstructionVerdict::Kind::Clear: os << "clear exact\n"; break;
          case ObstructionVerdict::Kind::Inconclusive: os << "inconclusive exact\n"; break;
        }
      }
      out.write(os.str());
      return code;
    }

    if (*analyze) {
      bounds.validate();
      const LocalRule rule = parse_rule(read_file(rule_path));
      std::ostringstream os;
      AnalysisReport rep;
      if (!sft_path.empty()) {
        const Sft x = parse_sft(read_file(sft_path));
        os << "subshift " << sft_path << " [exact]\n";
        rep = realizability_report(x, &rule, bounds);
      } else {
        const LanguageSample s = estimate_generic_language(rule, bounds);
        os << "generic language estimate (measure-generic heuristic)\n" << language_lines(s);
        rep = realizability_report(s, &rule, bounds);
      }
      if (format_name == "csv") {
        out.write(rep.csv());
      } else if (format_name == "text") {
        out.write(os.str() + join_lines(rep.text()));
      } else {
        throw ParseError("--format must be text or csv");
      }
      return rep.excluded() ? kFail : kPass;
    }

    if (*enables) {
      const LocalRule rule = parse_rule(read_file(rule_path));
      const Word v = rule.alphabet().parse_word(v_text);
      const Word s = rule.alphabet().parse_word(s_text);
      const EnablingResult r = check_enables(rule, {v, at}, s, bounds);
      out.write(verdict_name(r.verdict) + (r.certificate.exact ? " exact" : " sampled seed=" + std::to_string(bounds.seed)) +
                " T_max=" + std::to_string(bounds.T_max) + " K=" + std::to_string(bounds.K) + "\n" +
                join_lines(r.certificate.lines()));
      return r.verdict == EnablingResult::Verdict::Supported ? kPass : kFail;
    }

    if (*forcing) {
      const LocalRule rule = parse_rule(read_file(rule_path));
      const Word w = rule.alphabet().parse_word(seed_word);
      LanguageSample oracle;
      std::string origin;
      if (!oracle_path.empty()) {
        const Sft x = parse_sft(read_file(oracle_path));
        std::set<Word> seeds = x.language(fbounds.n);
        oracle = LanguageSample::closure(x.alphabet(), seeds, fbounds.n);
        origin = "oracle " + oracle_path + " exact";
      } else {
        Bounds est = fbounds;
        est.seed = rng_seed;
        oracle = estimate_generic_language(rule, est);
        origin = "oracle estimated, sampled seed=" + std::to_string(rng_seed) + " " + est.describe();
      }
      const ForcingResult r = search_forcing_word(rule, {w, at}, fbounds.n, fbounds, oracle);
      std::ostringstream os;
      if (r.found)
        os << "word " << show_word(rule.alphabet(), r.cylinder.word) << " at " << r.cylinder.position << ", T=" << r.T
           << "\n";
      else
        os << "not-found; first unkillable " << show_word(rule.alphabet(), *r.unkillable) << "\n";
      os << origin << "\n" << join_lines(r.certificate.lines());
      out.write(os.str());
      return r.found ? kPass : kFail;
    }

    std::cout << app.help();
    return kPass;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  }
}
