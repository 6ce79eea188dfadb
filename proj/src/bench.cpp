#include "crr/bench.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "crr/equiv.hpp"

namespace crr {

const char* to_string(BugKind kind) {
  switch (kind) {
    case BugKind::None: return "none";
    case BugKind::GateFlip: return "gate-flip";
    case BugKind::FaninSwap: return "fanin-swap";
    case BugKind::PolarityFlip: return "polarity-flip";
  }
  return "?";
}

std::optional<BugKind> bug_kind_from_string(std::string_view s) {
  if (s == "none") return BugKind::None;
  if (s == "gate-flip") return BugKind::GateFlip;
  if (s == "fanin-swap") return BugKind::FaninSwap;
  if (s == "polarity-flip") return BugKind::PolarityFlip;
  return std::nullopt;
}

namespace {

// Name-based working copy; the builder re-validates and re-sorts on rebuild.
struct Workbench {
  struct MGate {
    GateKind kind;
    std::string out;
    std::vector<std::string> fanins;
  };
  std::string name;
  std::vector<std::string> inputs;
  std::vector<MGate> gates;
  std::vector<std::string> outputs;
  std::set<std::string> used;
  int fresh = 0;

  static Workbench from(const Circuit& c) {
    Workbench w;
    w.name = c.name();
    for (Var v : c.inputs()) w.inputs.push_back(c.var_name(v));
    for (const Gate& g : c.gates()) {
      MGate mg{g.kind, c.var_name(g.out), {}};
      for (Var f : g.fanins) mg.fanins.push_back(c.var_name(f));
      w.gates.push_back(std::move(mg));
    }
    for (Var z : c.outputs()) w.outputs.push_back(c.var_name(z));
    for (Var v = 0; v < c.num_vars(); ++v) w.used.insert(c.var_name(v));
    return w;
  }

  std::string fresh_name() {
    std::string n;
    do {
      n = "rw" + std::to_string(fresh++);
    } while (!used.insert(n).second);
    return n;
  }

  std::size_t fanout(const std::string& var) const {
    std::size_t n = 0;
    for (const auto& g : gates) n += std::count(g.fanins.begin(), g.fanins.end(), var);
    n += std::count(outputs.begin(), outputs.end(), var);
    return n;
  }

  Circuit build() const {
    CircuitBuilder b(name);
    for (const auto& i : inputs) b.input(i);
    for (const auto& g : gates) b.gate(g.kind, g.out, g.fanins);
    for (const auto& o : outputs) b.output(o);
    return b.build();
  }
};

GateKind random_kind(Rng& rng, std::size_t pool_size) {
  if (pool_size < 2) return rng.next_bool() ? GateKind::Not : GateKind::Buf;
  static const GateKind weighted[] = {
      GateKind::And,  GateKind::And, GateKind::And, GateKind::Or,
      GateKind::Or,   GateKind::Or,  GateKind::Xor, GateKind::Xor,
      GateKind::Nand, GateKind::Nand, GateKind::Nor, GateKind::Nor,
      GateKind::Xnor, GateKind::Not, GateKind::Not, GateKind::Buf,
  };
  return weighted[rng.next_below(std::size(weighted))];
}

}  // namespace

Circuit random_circuit(int num_inputs, int num_gates, Rng& rng, int num_outputs,
                       const std::string& name) {
  if (num_inputs < 1 || num_gates < num_outputs || num_outputs < 1)
    throw std::invalid_argument("bad random-circuit shape");
  CircuitBuilder b(name);
  std::vector<std::string> pool;
  for (int i = 1; i <= num_inputs; ++i) {
    std::string n = "x" + std::to_string(i);
    b.input(n);
    pool.push_back(n);
  }
  std::vector<std::string> gate_names;
  for (int i = 1; i <= num_gates; ++i) {
    GateKind kind = random_kind(rng, pool.size());
    std::size_t arity = 1;
    if (kind == GateKind::Not || kind == GateKind::Buf) {
      arity = 1;
    } else if (kind == GateKind::And || kind == GateKind::Or) {
      arity = rng.next_below(6) == 0 ? 3 : 2;  // occasional 3-input gate
      arity = std::min(arity, pool.size());
      if (arity < 2) arity = 2;
    } else {
      arity = 2;
    }
    std::vector<std::string> fanins;
    std::vector<std::size_t> picks;
    while (picks.size() < arity) {
      std::size_t p = rng.next_below(pool.size());
      if (std::find(picks.begin(), picks.end(), p) == picks.end())
        picks.push_back(p);
    }
    for (auto p : picks) fanins.push_back(pool[p]);
    std::string out = "g" + std::to_string(i);
    b.gate(kind, out, std::move(fanins));
    pool.push_back(out);
    gate_names.push_back(out);
  }
  for (int i = num_outputs; i >= 1; --i)
    b.output(gate_names[gate_names.size() - static_cast<std::size_t>(i)]);
  return b.build();
}

Circuit rewrite_equivalent(const Circuit& c, int steps, Rng& rng) {
  Workbench w = Workbench::from(c);
  struct Op {
    enum Kind { Commute, DoubleNeg, DeMorgan, Flatten, Split } kind;
    std::size_t gate;
    std::size_t child;  // Flatten: fanin position of the absorbed child
  };

  for (int step = 0; step < steps; ++step) {
    std::vector<Op> ops;
    for (std::size_t gi = 0; gi < w.gates.size(); ++gi) {
      const auto& g = w.gates[gi];
      if (g.fanins.size() >= 2) ops.push_back({Op::Commute, gi, 0});
      if (!g.fanins.empty()) ops.push_back({Op::DoubleNeg, gi, 0});
      if (g.kind == GateKind::And || g.kind == GateKind::Or ||
          g.kind == GateKind::Nand || g.kind == GateKind::Nor)
        ops.push_back({Op::DeMorgan, gi, 0});
      if ((g.kind == GateKind::And || g.kind == GateKind::Or) &&
          g.fanins.size() >= 3)
        ops.push_back({Op::Split, gi, 0});
      if (g.kind == GateKind::And || g.kind == GateKind::Or) {
        for (std::size_t fi = 0; fi < g.fanins.size(); ++fi) {
          for (const auto& h : w.gates) {
            if (h.out != g.fanins[fi] || h.kind != g.kind) continue;
            if (w.fanout(h.out) == 1) ops.push_back({Op::Flatten, gi, fi});
          }
        }
      }
    }
    if (ops.empty()) break;
    const Op op = ops[rng.next_below(ops.size())];
    auto& g = w.gates[op.gate];
    switch (op.kind) {
      case Op::Commute: {
        const std::size_t r = 1 + rng.next_below(g.fanins.size() - 1);
        std::rotate(g.fanins.begin(),
                    g.fanins.begin() + static_cast<std::ptrdiff_t>(r),
                    g.fanins.end());
        break;
      }
      case Op::DoubleNeg: {
        const std::size_t fi = rng.next_below(g.fanins.size());
        std::string n1 = w.fresh_name(), n2 = w.fresh_name();
        w.gates.push_back({GateKind::Not, n1, {w.gates[op.gate].fanins[fi]}});
        w.gates.push_back({GateKind::Not, n2, {n1}});
        w.gates[op.gate].fanins[fi] = n2;
        break;
      }
      case Op::DeMorgan: {
        static const auto dual = [](GateKind k) {
          switch (k) {
            case GateKind::And: return GateKind::Nor;
            case GateKind::Or: return GateKind::Nand;
            case GateKind::Nand: return GateKind::Or;
            case GateKind::Nor: return GateKind::And;
            default: return k;
          }
        };
        const GateKind old_kind = g.kind;
        const std::vector<std::string> fanins = g.fanins;  // push_back below reallocates
        std::vector<std::string> inverted;
        for (const auto& f : fanins) {
          std::string n = w.fresh_name();
          w.gates.push_back({GateKind::Not, n, {f}});
          inverted.push_back(n);
        }
        w.gates[op.gate].fanins = std::move(inverted);
        w.gates[op.gate].kind = dual(old_kind);
        break;
      }
      case Op::Split: {
        std::size_t a = rng.next_below(g.fanins.size());
        std::size_t bpos = rng.next_below(g.fanins.size() - 1);
        if (bpos >= a) ++bpos;
        std::string n = w.fresh_name();
        std::vector<std::string> sub = {g.fanins[a], g.fanins[bpos]};
        w.gates.push_back({g.kind, n, std::move(sub)});
        auto& fan = w.gates[op.gate].fanins;
        std::vector<std::string> rest;
        for (std::size_t k = 0; k < fan.size(); ++k)
          if (k != a && k != bpos) rest.push_back(fan[k]);
        rest.push_back(n);
        fan = std::move(rest);
        break;
      }
      case Op::Flatten: {
        const std::string child_var = g.fanins[op.child];
        std::size_t hi = w.gates.size();
        for (std::size_t k = 0; k < w.gates.size(); ++k)
          if (w.gates[k].out == child_var) hi = k;
        std::vector<std::string> merged;
        for (std::size_t k = 0; k < g.fanins.size(); ++k)
          if (k != op.child) merged.push_back(g.fanins[k]);
        for (const auto& f : w.gates[hi].fanins) merged.push_back(f);
        w.gates[op.gate].fanins = std::move(merged);
        w.gates.erase(w.gates.begin() + static_cast<std::ptrdiff_t>(hi));
        break;
      }
    }
  }
  return w.build();
}

bool truth_table_equal(const Circuit& n1, const Circuit& n2) {
  const auto pairing = pair_inputs(n1, n2);
  if (n1.inputs().size() > 20)
    throw std::invalid_argument("truth-table comparison bound exceeded");
  const auto xs = n1.inputs();
  const std::uint64_t total = 1ull << xs.size();
  const Var z1 = n1.output(), z2 = n2.output();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Assignment x1 = Assignment::from_index(xs, idx);
    Assignment x2;
    for (const auto& [lv, rv] : pairing) x2.set(rv, x1.value(lv));
    if (simulate(n1, x1).value(z1) != simulate(n2, x2).value(z2)) return false;
  }
  return true;
}

std::optional<Circuit> inject_bug(const Circuit& c, BugKind kind, Rng& rng) {
  if (kind == BugKind::None) return c;
  const bool can_certify = c.inputs().size() <= 10;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Workbench w = Workbench::from(c);
    if (w.gates.empty()) return std::nullopt;
    const std::size_t gi = rng.next_below(w.gates.size());
    auto& g = w.gates[gi];
    switch (kind) {
      case BugKind::GateFlip: {
        std::vector<GateKind> options;
        if (g.fanins.size() == 2)
          options = {GateKind::And, GateKind::Or,  GateKind::Nand,
                     GateKind::Nor, GateKind::Xor, GateKind::Xnor};
        else if (g.fanins.size() > 2)
          options = {GateKind::And, GateKind::Or, GateKind::Nand, GateKind::Nor};
        else if (g.fanins.size() == 1)
          options = {GateKind::Not, GateKind::Buf};
        else
          options = {GateKind::Const0, GateKind::Const1};
        options.erase(std::remove(options.begin(), options.end(), g.kind),
                      options.end());
        if (options.empty()) continue;
        g.kind = options[rng.next_below(options.size())];
        break;
      }
      case BugKind::FaninSwap: {
        if (g.fanins.empty()) continue;
        const std::size_t fi = rng.next_below(g.fanins.size());
        // Any input or strictly earlier gate keeps the graph acyclic.
        std::vector<std::string> scope(w.inputs);
        for (const Gate& og : c.gates()) {
          if (c.var_name(og.out) == g.out) break;
          scope.push_back(c.var_name(og.out));
        }
        scope.erase(std::remove(scope.begin(), scope.end(), g.fanins[fi]),
                    scope.end());
        if (scope.empty()) continue;
        g.fanins[fi] = scope[rng.next_below(scope.size())];
        break;
      }
      case BugKind::PolarityFlip: {
        if (g.fanins.empty()) continue;
        const std::size_t fi = rng.next_below(g.fanins.size());
        std::string n = w.fresh_name();
        w.gates.push_back({GateKind::Not, n, {w.gates[gi].fanins[fi]}});
        w.gates[gi].fanins[fi] = n;
        break;
      }
      case BugKind::None:
        return c;
    }
    Circuit mutated = w.build();
    if (!can_certify) return mutated;
    if (!truth_table_equal(c, mutated)) return mutated;
  }
  return std::nullopt;
}

BenchPair generate_pair(const BenchSpec& spec) {
  Rng rng(spec.seed);
  BenchPair pair{random_circuit(spec.num_inputs, spec.num_gates, rng, 1, "left"),
                 Circuit{}, spec.bug == BugKind::None, false};
  Circuit right = rewrite_equivalent(pair.left, spec.rewrite_steps, rng);
  right.set_name("right");
  if (spec.bug != BugKind::None) {
    auto bugged = inject_bug(right, spec.bug, rng);
    if (!bugged)
      throw std::runtime_error("bug injection failed to change the function");
    right = std::move(*bugged);
    right.set_name("right");
  }
  pair.right = std::move(right);
  if (pair.left.inputs().size() <= 10) {
    pair.certified = true;
    if (truth_table_equal(pair.left, pair.right) != pair.expected_equivalent)
      throw std::logic_error("generated pair fails its expected verdict");
  }
  return pair;
}

}  // namespace crr
