#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gitrees/cli.hpp"

namespace gitrees::testing {

const World& world() {
  static const World w;
  return w;
}

namespace {

ITree identity_fun() {
  return ITree::fun(Endo([](const ITree& x) { return x; }));
}

ITree succ_fun() {
  return ITree::fun(Endo([](const ITree& x) {
    return get_nat(x, [](Natural n) { return ITree::nat(n + 1); });
  }));
}

Later<ITree> later(ITree t) { return Later<ITree>::next(std::move(t)); }

std::vector<Payload> sample_payloads() {
  return {UnitPayload{},
          NumPayload{0},
          NumPayload{3},
          LocPayload{Location{0}},
          LocPayload{Location{1}},
          TreePayload{later(ITree::nat(2))},
          LocTreePayload{Location{0}, later(ITree::nat(1))}};
}

bool payload_equiv(const Payload& a, const Payload& b, int depth) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<TreePayload>(&a)) {
    return equiv(x->tree.force(), std::get<TreePayload>(b).tree.force(), depth);
  }
  if (const auto* x = std::get_if<LocTreePayload>(&a)) {
    const auto& y = std::get<LocTreePayload>(b);
    return x->loc == y.loc && equiv(x->tree.force(), y.tree.force(), depth);
  }
  return a == b;
}

}  // namespace

ITree random_value(Gen& g) {
  switch (g.below(5)) {
    case 0:
      return identity_fun();
    case 1: {
      Natural k = g.nat();
      return ITree::fun(Endo([k](const ITree&) { return ITree::nat(k); }));
    }
    case 2:
      return succ_fun();
    default:
      return ITree::nat(g.nat());
  }
}

ITree random_tree(Gen& g, int depth) {
  const World& w = world();
  if (depth <= 0) {
    if (g.below(6) == 0) return ITree::err(g.coin() ? ErrorKind::RunTime : ErrorKind::Lin);
    return random_value(g);
  }
  switch (g.below(9)) {
    case 0:
      return random_value(g);
    case 1:
      return ITree::err(g.below(3) == 0 ? ErrorKind::Lin : ErrorKind::RunTime);
    case 2:
    case 3:
      return ITree::tau(later(random_tree(g, depth - 1)));
    case 4: {
      ITree rest = random_tree(g, depth - 1);
      bool use_input = g.coin();
      return ITree::vis(w.io.input, UnitPayload{},
                        [rest, use_input](const Payload& y) -> std::optional<Later<ITree>> {
                          const auto* n = std::get_if<NumPayload>(&y);
                          if (!n) return std::nullopt;
                          return later(use_input ? ITree::nat(n->value) : rest);
                        });
    }
    case 5: {
      ITree rest = random_tree(g, depth - 1);
      return ITree::vis(w.io.output, NumPayload{g.nat()},
                        [rest](const Payload& y) -> std::optional<Later<ITree>> {
                          if (!std::holds_alternative<UnitPayload>(y)) return std::nullopt;
                          return later(rest);
                        });
    }
    case 6: {
      ITree rest = random_tree(g, depth - 1);
      bool use_loc = g.coin();
      return ITree::vis(w.store.alloc, TreePayload{later(random_value(g))},
                        [rest, use_loc](const Payload& y) -> std::optional<Later<ITree>> {
                          const auto* l = std::get_if<LocPayload>(&y);
                          if (!l) return std::nullopt;
                          return later(use_loc ? ITree::nat(l->loc.index) : rest);
                        });
    }
    case 7: {
      ITree rest = random_tree(g, depth - 1);
      bool use_cell = g.coin();
      return ITree::vis(w.store.read, LocPayload{Location{g.nat(3)}},
                        [rest, use_cell](const Payload& y) -> std::optional<Later<ITree>> {
                          const auto* t = std::get_if<TreePayload>(&y);
                          if (!t) return std::nullopt;
                          return use_cell ? t->tree : later(rest);
                        });
    }
    default: {
      ITree rest = random_tree(g, depth - 1);
      auto k = [rest](const Payload& y) -> std::optional<Later<ITree>> {
        if (!std::holds_alternative<UnitPayload>(y)) return std::nullopt;
        return later(rest);
      };
      if (g.coin()) {
        return ITree::vis(w.store.write,
                          LocTreePayload{Location{g.nat(3)}, later(random_value(g))}, k);
      }
      return ITree::vis(w.store.dealloc, LocPayload{Location{g.nat(3)}}, k);
    }
  }
}

HeapState random_heap(Gen& g, std::size_t max_cells) {
  HeapState h;
  std::size_t n = g.below(max_cells + 1);
  for (std::size_t i = 0; i < n; ++i) {
    h.cells.insert_or_assign(Location{g.nat(5)}, later(random_value(g)));
  }
  return h;
}

NamedHom random_hom(Gen& g) {
  const World& w = world();
  Natural k = g.nat();
  switch (g.below(12)) {
    case 0:
      return {"get_nat(-, succ)", [](const ITree& t) {
                return get_nat(t, [](Natural n) { return ITree::nat(n + 1); });
              }};
    case 1:
      return {"get_val(-, tick)", [](const ITree& t) {
                return get_val(t, [](const ITree& v) { return tick(v); });
              }};
    case 2:
      return {"ifz(-, 1, tick 2)", [](const ITree& t) {
                return ifz(t, ITree::nat(1), tick(ITree::nat(2)));
              }};
    case 3:
      return {"seq(-, k)", [k](const ITree& t) { return seq(t, ITree::nat(k)); }};
    case 4:
      return {"app_strict(succ, -)", [](const ITree& t) { return app_strict(succ_fun(), t); }};
    case 5:
      return {"app_strict(-, k)", [k](const ITree& t) { return app_strict(t, ITree::nat(k)); }};
    case 6:
      return {"app_cbn(-, k)", [k](const ITree& t) { return app_cbn(t, ITree::nat(k)); }};
    case 7:
      return {"natop(+, k, -)", [k](const ITree& t) {
                return natop(std::plus<Natural>(), ITree::nat(k), t);
              }};
    case 8:
      return {"natop(*, -, k)", [k](const ITree& t) {
                return natop(std::multiplies<Natural>(), t, ITree::nat(k));
              }};
    case 9:
      return {"get_fun(-, apply 1)", [](const ITree& t) {
                return get_fun(t, [](const Later<Endo>& f) {
                  return tick(f.force()(ITree::nat(1)));
                });
              }};
    case 10:
      return {"get_nat(-, output)", [io = w.io](const ITree& t) {
                return get_nat(t, [io](Natural n) { return output_node(io, n); });
              }};
    default: {
      NamedHom a = random_hom(g);
      NamedHom b = random_hom(g);
      return {a.name + " . " + b.name, compose(a.hom, b.hom)};
    }
  }
}

bool equiv(const ITree& a, const ITree& b, int depth) {
  if (a.kind() != b.kind()) return false;
  if (depth <= 0) return true;
  if (const auto* x = a.get_if<NatHead>()) return x->value == b.get_if<NatHead>()->value;
  if (const auto* x = a.get_if<ErrHead>()) return x->error == b.get_if<ErrHead>()->error;
  if (const auto* x = a.get_if<TauHead>()) {
    return equiv(x->next.force(), b.get_if<TauHead>()->next.force(), depth - 1);
  }
  if (const auto* x = a.get_if<FunHead>()) {
    Endo f = x->body.force();
    Endo h = b.get_if<FunHead>()->body.force();
    for (const ITree& arg : {ITree::nat(0), ITree::nat(5), identity_fun()}) {
      if (!equiv(f(arg), h(arg), depth - 1)) return false;
    }
    return true;
  }
  const VisHead& x = *a.get_if<VisHead>();
  const VisHead& y = *b.get_if<VisHead>();
  if (!(x.op == y.op) || !payload_equiv(x.input, y.input, depth - 1)) return false;
  for (const Payload& out : sample_payloads()) {
    auto kx = x.k(out);
    auto ky = y.k(out);
    if (kx.has_value() != ky.has_value()) return false;
    if (kx && !equiv(kx->force(), ky->force(), depth - 1)) return false;
  }
  return true;
}

Observation observe(const Outcome& o) {
  Observation obs;
  obs.kind = o.kind;
  if (o.kind == OutcomeKind::Value) {
    if (const auto* n = o.last.get_if<NatHead>()) obs.nat = n->value;
    obs.is_fun = o.last.kind() == HeadKind::Fun;
  }
  obs.error = o.error;
  for (const LocalState& l : o.state.locals) {
    if (const auto* io = std::get_if<IoState>(&l)) obs.tapes.push_back(*io);
    if (const auto* h = std::get_if<HeapState>(&l)) {
      std::vector<Natural> dom;
      for (const auto& [loc, _] : h->cells) dom.push_back(loc.index);
      obs.heap_domains.push_back(std::move(dom));
    }
  }
  return obs;
}

Observation observe(const ITree& t, const GlobalState& s, const GlobalReifier& r,
                    std::size_t fuel) {
  RunOptions options;
  options.fuel = fuel;
  return observe(run(t, s, r, options).outcome);
}

std::string to_string(const Observation& o) {
  std::ostringstream out;
  out << gitrees::to_string(o.kind);
  if (o.nat) out << " nat=" << *o.nat;
  if (o.is_fun) out << " fun";
  if (o.error) out << " err=" << gitrees::to_string(*o.error);
  for (const IoState& io : o.tapes) {
    out << " in=" << cli::render_tape(io.input_tape)
        << " out=" << cli::render_tape(io.output_tape);
  }
  for (const auto& dom : o.heap_domains) out << " heap=" << cli::render_tape(dom);
  return out.str();
}

std::optional<Natural> as_nat(const ITree& t) {
  if (const auto* n = t.get_if<NatHead>()) return n->value;
  return std::nullopt;
}

std::optional<ErrorKind> as_err(const ITree& t) {
  if (const auto* e = t.get_if<ErrHead>()) return e->error;
  return std::nullopt;
}

Natural factorial(Natural n) {
  Natural acc = 1;
  for (Natural i = 2; i <= n; ++i) acc *= i;
  return acc;
}

std::filesystem::path corpus_dir(const std::string& language) {
  return std::filesystem::path(GITREES_CORPUS_DIR) / language;
}

std::vector<std::filesystem::path> corpus_files(const std::string& language) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir(language))) {
    if (entry.path().extension() == ".sexp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Natural> corpus_tape(const std::string& source) {
  std::istringstream lines(source);
  std::string line;
  const std::string marker = "; tape:";
  while (std::getline(lines, line)) {
    if (line.rfind(marker, 0) == 0) {
      std::string rest = line.substr(marker.size());
      rest.erase(std::remove(rest.begin(), rest.end(), ' '), rest.end());
      return cli::parse_tape(rest);
    }
  }
  return {};
}

}  // namespace gitrees::testing
