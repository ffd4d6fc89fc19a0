#include "gitrees/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "gitrees/aff_lang.hpp"
#include "gitrees/interop.hpp"
#include "gitrees/sexp.hpp"

namespace gitrees::cli {

std::vector<Natural> parse_tape(std::string_view text) {
  std::vector<Natural> tape;
  if (text.empty()) return tape;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start);
    Natural n = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw std::invalid_argument("bad tape entry '" + std::string(item) + "'");
    }
    tape.push_back(n);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return tape;
}

std::string render_tape(const std::vector<Natural>& tape) {
  std::string s = "[";
  for (std::size_t i = 0; i < tape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(tape[i]);
  }
  return s + "]";
}

namespace {

/// A typechecked program ready to be denoted.
struct Checked {
  std::optional<io::Expr> io_term;
  std::optional<aff::Derivation> aff_term;
  std::string type;
};

std::string render_value(const ITree& v, const Checked& prog) {
  const auto* n = v.get_if<NatHead>();
  if (prog.aff_term) {
    const aff::Type& t = prog.aff_term->type;
    if (n && t.is<aff::Type::Bool>()) return n->value ? "#t" : "#f";
    if (n && t.is<aff::Type::Unit>()) return "unit";
    if (n && t.is<aff::Type::Ref>()) return "loc " + std::to_string(n->value);
    if (t.is<aff::Type::Tensor>()) return "<pair>";
  }
  if (n) return std::to_string(n->value);
  if (v.kind() == HeadKind::Fun) return "<fun>";
  return describe(v);
}

const IoState* find_io(const GlobalState& s) {
  for (const LocalState& l : s.locals) {
    if (const auto* io = std::get_if<IoState>(&l)) return io;
  }
  return nullptr;
}

std::size_t heap_cells(const GlobalState& s) {
  std::size_t cells = 0;
  for (const LocalState& l : s.locals) {
    if (const auto* h = std::get_if<HeapState>(&l)) cells += h->cells.size();
  }
  return cells;
}

std::string state_fields(const IoState* io, std::size_t cells, std::size_t steps) {
  std::ostringstream s;
  s << " | tape-in " << render_tape(io ? io->input_tape : std::vector<Natural>{})
    << " | tape-out " << render_tape(io ? io->output_tape : std::vector<Natural>{})
    << " | heap " << cells << " | steps " << steps;
  return s.str();
}

/// Observable result used by compare mode.
struct Observation {
  enum class Class { Value, Failure, OutOfFuel } cls = Class::Value;
  std::optional<Natural> nat;  // for Value; nullopt means a function
  IoState tapes;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct Report {
  std::string line;
  int exit = kExitOk;
  Observation obs;
};

Report report_denote(const Outcome& o, const Checked& prog) {
  Report r;
  const IoState* io = find_io(o.state);
  std::string fields = state_fields(io, heap_cells(o.state), o.steps);
  if (io) r.obs.tapes = *io;
  switch (o.kind) {
    case OutcomeKind::Value:
      r.line = "OK " + render_value(o.last, prog) + fields;
      if (const auto* n = o.last.get_if<NatHead>()) r.obs.nat = n->value;
      break;
    case OutcomeKind::Errored:
      r.line = "ERR " + std::string(to_string(*o.error)) +
               (o.acceptable ? " (acceptable)" : " (violation)") + fields;
      r.obs.cls = Observation::Class::Failure;
      if (!o.acceptable) r.exit = kExitViolation;
      break;
    case OutcomeKind::Stuck:
      r.line = "STUCK" + fields;
      r.obs.cls = Observation::Class::Failure;
      r.exit = kExitViolation;
      break;
    case OutcomeKind::OutOfFuel:
      r.line = "OUT-OF-FUEL" + fields;
      r.obs.cls = Observation::Class::OutOfFuel;
      r.exit = kExitOutOfFuel;
      break;
  }
  return r;
}

Report report_operational(const io::OpRunResult& res) {
  Report r;
  r.obs.tapes = res.final.tapes;
  std::string fields = state_fields(&res.final.tapes, 0, res.steps);
  switch (res.status) {
    case io::OpRunResult::Status::Value:
      if (const auto* lit = res.final.expr.get_if<io::Lit>()) {
        r.line = "OK " + std::to_string(lit->value) + fields;
        r.obs.nat = lit->value;
      } else {
        r.line = "OK <fun>" + fields;
      }
      break;
    case io::OpRunResult::Status::Stuck:
      r.line = "STUCK" + fields;
      r.obs.cls = Observation::Class::Failure;
      r.exit = kExitViolation;
      break;
    case io::OpRunResult::Status::OutOfFuel:
      r.line = "OUT-OF-FUEL" + fields;
      r.obs.cls = Observation::Class::OutOfFuel;
      r.exit = kExitOutOfFuel;
      break;
  }
  return r;
}

GlobalReifier reifier_for(Language lang, const std::vector<Natural>& tape) {
  IoState tapes{tape, {}};
  switch (lang) {
    case Language::Io:
      return GlobalReifier({io_reifier(tapes)});
    case Language::Aff:
      return GlobalReifier({store_reifier()});
    case Language::Comb:
      return GlobalReifier({store_reifier(), io_reifier(tapes)});
  }
  throw std::logic_error("unknown language");
}

/// Parses and typechecks; nullopt after reporting a diagnostic.
std::optional<Checked> check(std::string_view source, Language lang,
                             std::ostream& err) {
  sexp::Sexp form = sexp::read_one(source);
  Checked prog;
  if (lang == Language::Io) {
    io::Expr e = io::parse_expr(form);
    if (!io::is_closed(e)) {
      err << "type error: program has free variables\n";
      return std::nullopt;
    }
    auto t = io::typecheck_io({}, e);
    if (!t) {
      err << "type error: iolang program does not typecheck\n";
      return std::nullopt;
    }
    prog.io_term = e;
    prog.type = io::to_string(*t);
    return prog;
  }
  aff::Expr e = aff::parse_expr(form);
  auto d = lang == Language::Aff ? aff::typecheck_aff({}, e)
                                 : interop::typecheck_comb({}, e);
  if (!d) {
    err << "type error: program is not affinely typed\n";
    return std::nullopt;
  }
  prog.type = aff::to_string(d->type);
  prog.aff_term = std::move(d);
  return prog;
}

RunResult denote(const Checked& prog, const RunConfig& config,
                 const GlobalReifier& reifier) {
  ITree tree = ITree::nat(0);
  if (prog.io_term) {
    tree = io::denote_io(*prog.io_term, {}, IoOps::embed(reifier.signature()));
  } else {
    aff::Ambient ambient{StoreOps::embed(reifier.signature()), std::nullopt};
    if (config.language == Language::Comb) {
      ambient.io = IoOps::embed(reifier.signature());
    }
    tree = aff::denote_aff(*prog.aff_term, {}, ambient);
  }
  RunOptions options{config.fuel, config.allowed_errors, config.trace};
  return run(tree, reifier.initial_state(), reifier, options);
}

io::OpRunResult operational(const Checked& prog, const RunConfig& config,
                            std::ostream& out) {
  io::Config c{*prog.io_term, IoState{config.input_tape, {}}};
  if (!config.trace) return io::op_run(c, config.fuel, config.op_options);
  // Stepping by hand so each configuration can be printed.
  io::OpRunResult res{io::OpRunResult::Status::Value, c, 0};
  while (!res.final.expr.is_value()) {
    if (res.steps == config.fuel) {
      res.status = io::OpRunResult::Status::OutOfFuel;
      return res;
    }
    auto next = io::op_step(res.final, config.op_options);
    if (!next) {
      res.status = io::OpRunResult::Status::Stuck;
      return res;
    }
    res.final = std::move(*next);
    out << "#" << res.steps++ << " STEP | in=" << res.final.tapes.input_tape.size()
        << " out=" << res.final.tapes.output_tape.size() << " | "
        << io::to_string(res.final.expr) << "\n";
  }
  return res;
}

}  // namespace

int run_program(std::string_view source, const RunConfig& config,
                std::ostream& out, std::ostream& err) {
  if (config.mode != Mode::Denote && config.language != Language::Io) {
    err << "operational and compare modes need --lang io\n";
    return kExitTypeError;
  }
  std::optional<Checked> prog;
  try {
    prog = check(source, config.language, err);
  } catch (const sexp::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitTypeError;
  }
  if (!prog) return kExitTypeError;

  if (config.mode == Mode::Operational) {
    Report r = report_operational(operational(*prog, config, out));
    out << r.line << "\n";
    return r.exit;
  }

  GlobalReifier reifier = reifier_for(config.language, config.input_tape);
  RunResult res = denote(*prog, config, reifier);
  for (const TraceEntry& e : res.trace) out << render_trace_entry(e, reifier) << "\n";
  Report d = report_denote(res.outcome, *prog);
  if (config.mode == Mode::Denote) {
    out << d.line << "\n";
    return d.exit;
  }

  Report o = report_operational(operational(*prog, config, out));
  out << "denote      " << d.line << "\n";
  out << "operational " << o.line << "\n";
  if (!(d.obs == o.obs)) {
    out << "MISMATCH\n";
    return kExitMismatch;
  }
  out << "MATCH\n";
  return d.exit;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Guarded interaction tree interpreters for iolang, afflang and their combination"};
  app.name("gitrees");
  app.require_subcommand(1);

  RunConfig config;
  std::string path;
  std::string tape;
  std::vector<std::string> allow;
  std::string mutant;

  const std::map<std::string, Language> languages{
      {"io", Language::Io}, {"aff", Language::Aff}, {"comb", Language::Comb}};
  const std::map<std::string, Mode> modes{{"denote", Mode::Denote},
                                          {"operational", Mode::Operational},
                                          {"compare", Mode::Compare}};
  const std::map<std::string, ErrorKind> kinds{{"lin", ErrorKind::Lin},
                                               {"runtime", ErrorKind::RunTime}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lang", config.language, "io | aff | comb")
        ->transform(CLI::CheckedTransformer(languages, CLI::ignore_case));
    sub->add_option("program", path, "Program file (one s-expression)")
        ->required()
        ->check(CLI::ExistingFile);
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Typecheck and evaluate a program");
  add_common(run_cmd);
  run_cmd->add_option("--mode", config.mode, "denote | operational | compare")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  run_cmd->add_option("--fuel", config.fuel, "Step budget")->capture_default_str();
  run_cmd->add_option("--tape", tape, "Input tape, comma-separated naturals");
  run_cmd->add_option("--allow", allow, "Acceptable error kind (lin, runtime)")
      ->check(CLI::IsMember({"lin", "runtime"}, CLI::ignore_case));
  run_cmd->add_flag("--trace", config.trace, "Print every step");
  run_cmd->add_option("--mutant", mutant)
      ->check(CLI::IsMember({"if-flip"}))
      ->group("");

  CLI::App* check_cmd = app.add_subcommand("check", "Typecheck a program and print its type");
  add_common(check_cmd);

  std::vector<const char*> argv{"gitrees"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    config.input_tape = parse_tape(tape);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 64;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 64;
  }
  for (const std::string& a : allow) {
    config.allowed_errors.insert(kinds.at(CLI::detail::to_lower(a)));
  }
  config.op_options.flip_if = mutant == "if-flip";

  std::ifstream file(path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  if (!file) {
    err << "cannot read " << path << "\n";
    return 64;
  }

  if (check_cmd->parsed()) {
    try {
      auto prog = check(buffer.str(), config.language, err);
      if (!prog) return kExitTypeError;
      out << prog->type << "\n";
      return kExitOk;
    } catch (const sexp::ParseError& e) {
      err << "parse error: " << e.what() << "\n";
      return kExitTypeError;
    }
  }
  return run_program(buffer.str(), config, out, err);
}

}  // namespace gitrees::cli
