#include "synt/aiger.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace synt::aig {

namespace {

constexpr std::string_view kRealizableKey = "SYNTCOMP realizable:";
constexpr std::string_view kReferenceKey = "SYNTCOMP reference_size:";

std::string_view rstrip(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Cursor over a text/byte buffer with 1-based line tracking.
struct Cursor {
  std::string_view data;
  size_t pos = 0;
  size_t line = 1;

  bool eof() const { return pos >= data.size(); }

  std::string_view next_line() {
    if (eof()) throw ParseError(line, "unexpected end of input");
    size_t nl = data.find('\n', pos);
    std::string_view out;
    if (nl == std::string_view::npos) {
      out = data.substr(pos);
      pos = data.size();
    } else {
      out = data.substr(pos, nl - pos);
      pos = nl + 1;
    }
    ++line;
    return rstrip(out);
  }
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

unsigned parse_uint(std::string_view tok, size_t line, const char* what) {
  unsigned v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, std::string("expected unsigned integer for ") + what);
  return v;
}

bool has_controllable_prefix(std::string_view name) {
  return name.substr(0, kControllablePrefix.size()) == kControllablePrefix;
}

struct SymbolTables {
  std::vector<std::string> inputs, latches, outputs;
};

// Symbol and comment sections are shared between the ascii and binary readers.
void parse_symbols_and_comments(Cursor& cur, Circuit& c) {
  std::vector<bool> seen_i(c.inputs.size()), seen_l(c.latches.size()), seen_o(c.outputs.size());
  bool in_comments = false;
  while (!cur.eof()) {
    size_t at = cur.line;
    std::string_view ln = cur.next_line();
    if (in_comments) {
      c.comments.emplace_back(ln);
      continue;
    }
    if (ln == "c") {
      in_comments = true;
      continue;
    }
    if (ln.empty()) throw ParseError(at, "unexpected blank line in symbol table");
    char kind = ln[0];
    if (kind != 'i' && kind != 'l' && kind != 'o')
      throw ParseError(at, "expected symbol entry or comment section");
    size_t sp = ln.find(' ');
    if (sp == std::string_view::npos || sp < 2)
      throw ParseError(at, "malformed symbol entry");
    unsigned idx = parse_uint(ln.substr(1, sp - 1), at, "symbol index");
    std::string name(ln.substr(sp + 1));
    if (name.empty()) throw ParseError(at, "empty symbol name");
    auto assign = [&](auto& vec, std::vector<bool>& seen, const char* what) {
      if (idx >= vec.size()) throw ParseError(at, std::string("symbol index out of range for ") + what);
      if (seen[idx]) throw ParseError(at, std::string("duplicate symbol for ") + what);
      seen[idx] = true;
      return idx;
    };
    switch (kind) {
      case 'i': {
        assign(c.inputs, seen_i, "input");
        c.inputs[idx].name = name;
        c.inputs[idx].controllable = has_controllable_prefix(name);
        break;
      }
      case 'l': {
        assign(c.latches, seen_l, "latch");
        c.latches[idx].name = name;
        break;
      }
      case 'o': {
        assign(c.outputs, seen_o, "output");
        c.output_names[idx] = name;
        break;
      }
    }
  }
}

struct Header {
  unsigned m, i, l, o, a;
};

Header parse_header(Cursor& cur, std::string_view keyword) {
  size_t at = cur.line;
  auto toks = split_ws(cur.next_line());
  if (toks.size() != 6 || toks[0] != keyword)
    throw ParseError(at, "malformed header, expected '" + std::string(keyword) + " M I L O A'");
  Header h{parse_uint(toks[1], at, "M"), parse_uint(toks[2], at, "I"),
           parse_uint(toks[3], at, "L"), parse_uint(toks[4], at, "O"),
           parse_uint(toks[5], at, "A")};
  if (h.m != h.i + h.l + h.a)
    throw ParseError(at, "header/body mismatch: M must equal I+L+A");
  if (h.m > (1u << 30))
    throw ParseError(at, "circuit too large");
  return h;
}

Literal check_literal(unsigned value, unsigned max_var, size_t line) {
  if (value > 2 * max_var + 1) throw ParseError(line, "literal out of range");
  return Literal(value);
}

void check_latch_init(const std::vector<std::string_view>& toks, size_t expected, size_t at) {
  if (toks.size() == expected + 1) {
    if (toks[expected] != "0")
      throw ParseError(at, "unsupported latch reset value (only 0 is supported)");
  } else if (toks.size() != expected) {
    throw ParseError(at, "malformed latch line");
  }
}

}  // namespace

std::vector<size_t> Circuit::controllable_indices() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < inputs.size(); ++i)
    if (inputs[i].controllable) out.push_back(i);
  return out;
}

std::vector<size_t> Circuit::uncontrollable_indices() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < inputs.size(); ++i)
    if (!inputs[i].controllable) out.push_back(i);
  return out;
}

void validate(const Circuit& c, ParseMode mode) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("invalid circuit: " + msg); };
  if (c.outputs.size() != c.output_names.size()) fail("output name table size mismatch");
  if (mode == ParseMode::specification && c.outputs.size() != 1)
    fail("specification must have exactly one output");

  std::vector<uint8_t> defined(c.max_var + 1, 0);  // 1=input 2=latch 3=and
  auto define = [&](Literal lit, uint8_t kind, const char* what) {
    if (lit.negated()) fail(std::string(what) + " literal must be even");
    unsigned v = lit.var();
    if (v == 0 || v > c.max_var) fail(std::string(what) + " literal out of range");
    if (defined[v]) fail("duplicate definition of variable " + std::to_string(v));
    defined[v] = kind;
  };
  auto check_ref = [&](Literal lit, const char* what) {
    if (lit.var() > c.max_var) fail(std::string(what) + " literal out of range");
  };

  for (const auto& in : c.inputs) define(in.lit, 1, "input");
  for (const auto& la : c.latches) define(la.lit, 2, "latch");
  for (const auto& g : c.ands) {
    define(g.lhs, 3, "AND");
    check_ref(g.rhs0, "AND operand");
    check_ref(g.rhs1, "AND operand");
    if (g.lhs.var() <= g.rhs0.var() || g.lhs.var() <= g.rhs1.var())
      fail("AND ordering violation at variable " + std::to_string(g.lhs.var()));
  }
  for (const auto& la : c.latches) check_ref(la.next, "latch next-state");
  for (Literal o : c.outputs) check_ref(o, "output");
  for (unsigned v = 1; v <= c.max_var; ++v)
    if (!defined[v]) fail("variable " + std::to_string(v) + " is not defined");
  for (const auto& in : c.inputs)
    if (in.controllable != has_controllable_prefix(in.name))
      fail("controllable flag disagrees with symbol name of input " + std::to_string(in.lit.value()));
}

Circuit parse_ascii(std::string_view text, ParseMode mode) {
  Cursor cur{text};
  Header h = parse_header(cur, "aag");
  Circuit c;
  c.max_var = h.m;

  for (unsigned i = 0; i < h.i; ++i) {
    size_t at = cur.line;
    auto toks = split_ws(cur.next_line());
    if (toks.size() != 1) throw ParseError(at, "malformed input line");
    unsigned v = parse_uint(toks[0], at, "input literal");
    Literal lit = check_literal(v, h.m, at);
    if (lit.negated() || lit.var() == 0) throw ParseError(at, "input literal must be a fresh even literal");
    c.inputs.push_back({lit, "", false});
  }
  for (unsigned i = 0; i < h.l; ++i) {
    size_t at = cur.line;
    auto toks = split_ws(cur.next_line());
    if (toks.size() < 2) throw ParseError(at, "malformed latch line");
    check_latch_init(toks, 2, at);
    Literal lit = check_literal(parse_uint(toks[0], at, "latch literal"), h.m, at);
    Literal next = check_literal(parse_uint(toks[1], at, "latch next-state"), h.m, at);
    if (lit.negated() || lit.var() == 0) throw ParseError(at, "latch literal must be a fresh even literal");
    c.latches.push_back({lit, next, ""});
  }
  for (unsigned i = 0; i < h.o; ++i) {
    size_t at = cur.line;
    auto toks = split_ws(cur.next_line());
    if (toks.size() != 1) throw ParseError(at, "malformed output line");
    c.outputs.push_back(check_literal(parse_uint(toks[0], at, "output literal"), h.m, at));
    c.output_names.emplace_back();
  }
  if (mode == ParseMode::specification && h.o != 1)
    throw ParseError(1, "specification must have exactly one output");
  for (unsigned i = 0; i < h.a; ++i) {
    size_t at = cur.line;
    auto toks = split_ws(cur.next_line());
    if (toks.size() != 3) throw ParseError(at, "malformed AND line");
    Literal lhs = check_literal(parse_uint(toks[0], at, "AND literal"), h.m, at);
    Literal r0 = check_literal(parse_uint(toks[1], at, "AND operand"), h.m, at);
    Literal r1 = check_literal(parse_uint(toks[2], at, "AND operand"), h.m, at);
    if (lhs.negated()) throw ParseError(at, "AND literal must be even");
    if (lhs.var() <= r0.var() || lhs.var() <= r1.var())
      throw ParseError(at, "AND ordering violation (lhs must exceed both operands)");
    c.ands.push_back({lhs, r0, r1});
  }

  parse_symbols_and_comments(cur, c);
  try {
    validate(c, mode);
  } catch (const std::invalid_argument& e) {
    throw ParseError(cur.line, e.what());
  }
  return c;
}

namespace {

unsigned read_delta(std::string_view data, size_t& pos, size_t line) {
  unsigned value = 0;
  unsigned shift = 0;
  while (true) {
    if (pos >= data.size()) throw ParseError(line, "truncated stream in AND section");
    unsigned byte = static_cast<unsigned char>(data[pos++]);
    if (shift >= 32) throw ParseError(line, "delta encoding overflow");
    value |= (byte & 0x7fu) << shift;
    if (!(byte & 0x80u)) return value;
    shift += 7;
  }
}

}  // namespace

Circuit parse_binary(std::string_view bytes, ParseMode mode) {
  Cursor cur{bytes};
  Header h = parse_header(cur, "aig");
  Circuit c;
  c.max_var = h.m;

  // Inputs are implicit: variables 1..I.
  for (unsigned i = 0; i < h.i; ++i) c.inputs.push_back({Literal::positive(i + 1), "", false});
  for (unsigned i = 0; i < h.l; ++i) {
    size_t at = cur.line;
    auto toks = split_ws(cur.next_line());
    if (toks.empty()) throw ParseError(at, "malformed latch line");
    check_latch_init(toks, 1, at);
    Literal next = check_literal(parse_uint(toks[0], at, "latch next-state"), h.m, at);
    c.latches.push_back({Literal::positive(h.i + i + 1), next, ""});
  }
  for (unsigned i = 0; i < h.o; ++i) {
    size_t at = cur.line;
    auto toks = split_ws(cur.next_line());
    if (toks.size() != 1) throw ParseError(at, "malformed output line");
    c.outputs.push_back(check_literal(parse_uint(toks[0], at, "output literal"), h.m, at));
    c.output_names.emplace_back();
  }
  if (mode == ParseMode::specification && h.o != 1)
    throw ParseError(1, "specification must have exactly one output");

  for (unsigned i = 0; i < h.a; ++i) {
    unsigned lhs = 2 * (h.i + h.l + i + 1);
    unsigned d0 = read_delta(bytes, cur.pos, cur.line);
    if (d0 == 0) throw ParseError(cur.line, "non-monotone delta");
    if (d0 > lhs) throw ParseError(cur.line, "delta exceeds left-hand side");
    unsigned rhs0 = lhs - d0;
    unsigned d1 = read_delta(bytes, cur.pos, cur.line);
    if (d1 > rhs0) throw ParseError(cur.line, "non-monotone delta");
    unsigned rhs1 = rhs0 - d1;
    c.ands.push_back({Literal(lhs), Literal(rhs0), Literal(rhs1)});
  }

  parse_symbols_and_comments(cur, c);
  try {
    validate(c, mode);
  } catch (const std::invalid_argument& e) {
    throw ParseError(cur.line, e.what());
  }
  return c;
}

Circuit parse_auto(std::string_view data, ParseMode mode) {
  if (data.substr(0, 4) == "aag ") return parse_ascii(data, mode);
  if (data.substr(0, 4) == "aig ") return parse_binary(data, mode);
  throw ParseError(1, "unrecognized header (expected 'aag' or 'aig')");
}

Circuit read_file(const std::filesystem::path& path, ParseMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_auto(buf.str(), mode);
}

std::string serialize_ascii(const Circuit& c) {
  std::ostringstream out;
  out << "aag " << c.max_var << ' ' << c.inputs.size() << ' ' << c.latches.size() << ' '
      << c.outputs.size() << ' ' << c.ands.size() << '\n';
  for (const auto& in : c.inputs) out << in.lit.value() << '\n';
  for (const auto& la : c.latches) out << la.lit.value() << ' ' << la.next.value() << '\n';
  for (Literal o : c.outputs) out << o.value() << '\n';
  for (const auto& g : c.ands)
    out << g.lhs.value() << ' ' << g.rhs0.value() << ' ' << g.rhs1.value() << '\n';
  for (size_t i = 0; i < c.inputs.size(); ++i)
    if (!c.inputs[i].name.empty()) out << 'i' << i << ' ' << c.inputs[i].name << '\n';
  for (size_t i = 0; i < c.latches.size(); ++i)
    if (!c.latches[i].name.empty()) out << 'l' << i << ' ' << c.latches[i].name << '\n';
  for (size_t i = 0; i < c.outputs.size(); ++i)
    if (!c.output_names[i].empty()) out << 'o' << i << ' ' << c.output_names[i] << '\n';
  if (!c.comments.empty()) {
    out << "c\n";
    for (const auto& line : c.comments) out << std::string(rstrip(line)) << '\n';
  }
  return out.str();
}

void write_file(const std::filesystem::path& path, const Circuit& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_ascii(c);
}

namespace {

// Variable classification for cone checks.
struct VarKinds {
  enum Kind : uint8_t { none, uncontrollable, controllable, latch, gate };
  std::vector<Kind> kind;
  std::vector<const AndGate*> gate_of;

  explicit VarKinds(const Circuit& c) : kind(c.max_var + 1, none), gate_of(c.max_var + 1, nullptr) {
    for (const auto& in : c.inputs) kind[in.lit.var()] = in.controllable ? controllable : uncontrollable;
    for (const auto& la : c.latches) kind[la.lit.var()] = latch;
    for (const auto& g : c.ands) {
      kind[g.lhs.var()] = gate;
      gate_of[g.lhs.var()] = &g;
    }
  }
};

// True iff the cone of `root` in `kinds` avoids controllable input variables.
bool cone_avoids_controllables(const VarKinds& kinds, Literal root, std::string* offender) {
  std::vector<unsigned> stack{root.var()};
  std::vector<bool> seen(kinds.kind.size(), false);
  while (!stack.empty()) {
    unsigned v = stack.back();
    stack.pop_back();
    if (v == 0 || seen[v]) continue;
    seen[v] = true;
    switch (kinds.kind[v]) {
      case VarKinds::controllable:
        if (offender) *offender = "variable " + std::to_string(v);
        return false;
      case VarKinds::gate:
        stack.push_back(kinds.gate_of[v]->rhs0.var());
        stack.push_back(kinds.gate_of[v]->rhs1.var());
        break;
      default:
        break;
    }
  }
  return true;
}

template <typename T, typename Key>
std::vector<Key> sorted_keys(const std::vector<T>& items, Key (*key)(const T&)) {
  std::vector<Key> out;
  out.reserve(items.size());
  for (const auto& it : items) out.push_back(key(it));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SyntacticReport check_syntactic(const Circuit& spec, const Circuit& solution) {
  SyntacticReport rep;
  rep.spec_contained = true;
  rep.controllables_defined = true;
  rep.frame_preserved = true;
  auto note = [&](bool& flag, const std::string& why) {
    flag = false;
    if (rep.detail.empty()) rep.detail = why;
  };

  // (a) containment under the identity variable mapping
  if (solution.max_var < spec.max_var)
    note(rep.spec_contained, "solution has a smaller variable range than the specification");
  {
    std::unordered_map<unsigned, const Input*> sol_inputs;
    for (const auto& in : solution.inputs) sol_inputs[in.lit.var()] = &in;
    for (const auto& in : spec.inputs) {
      auto it = sol_inputs.find(in.lit.var());
      if (it == sol_inputs.end() || !(*it->second == in)) {
        note(rep.spec_contained, "input " + std::to_string(in.lit.value()) + " missing or altered");
        break;
      }
    }
    std::unordered_map<unsigned, const Latch*> sol_latches;
    for (const auto& la : solution.latches) sol_latches[la.lit.var()] = &la;
    for (const auto& la : spec.latches) {
      auto it = sol_latches.find(la.lit.var());
      if (it == sol_latches.end() || !(*it->second == la)) {
        note(rep.spec_contained, "latch " + std::to_string(la.lit.value()) + " missing or altered");
        break;
      }
    }
    std::unordered_map<unsigned, const AndGate*> sol_ands;
    for (const auto& g : solution.ands) sol_ands[g.lhs.var()] = &g;
    for (const auto& g : spec.ands) {
      auto it = sol_ands.find(g.lhs.var());
      bool same = it != sol_ands.end() &&
                  ((it->second->rhs0 == g.rhs0 && it->second->rhs1 == g.rhs1) ||
                   (it->second->rhs0 == g.rhs1 && it->second->rhs1 == g.rhs0));
      if (!same) {
        note(rep.spec_contained, "AND gate " + std::to_string(g.lhs.value()) + " missing or altered");
        break;
      }
    }
    if (solution.outputs.empty() || spec.outputs.empty() ||
        solution.outputs[0] != spec.outputs[0])
      note(rep.spec_contained, "error output differs from the specification");
  }

  // (b) one definition output per controllable input, cones over (latches, u)
  {
    auto ctrl = spec.controllable_indices();
    if (solution.outputs.size() != 1 + ctrl.size()) {
      note(rep.controllables_defined,
           "expected " + std::to_string(1 + ctrl.size()) + " outputs, found " +
               std::to_string(solution.outputs.size()));
    } else {
      VarKinds kinds(solution);
      for (size_t i = 0; i < ctrl.size(); ++i) {
        Literal def = solution.outputs[1 + i];
        std::string offender;
        if (!cone_avoids_controllables(kinds, def, &offender)) {
          note(rep.controllables_defined,
               "definition of " + spec.inputs[ctrl[i]].name + " depends on controllable " + offender);
          break;
        }
      }
    }
  }

  // (c) input and latch frame unchanged
  {
    auto input_key = +[](const Input& in) {
      return std::make_tuple(in.lit.value(), in.name, in.controllable);
    };
    auto latch_key = +[](const Latch& la) {
      return std::make_tuple(la.lit.value(), la.next.value(), la.name);
    };
    if (sorted_keys(spec.inputs, input_key) != sorted_keys(solution.inputs, input_key))
      note(rep.frame_preserved, "input set changed");
    if (sorted_keys(spec.latches, latch_key) != sorted_keys(solution.latches, latch_key))
      note(rep.frame_preserved, "latch set changed");
  }

  return rep;
}

Circuit merge_solution(const Circuit& spec,
                       const std::map<Literal, Literal>& defs,
                       const std::vector<AndGate>& new_ands) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("merge_solution: " + msg); };

  VarKinds kinds(spec);
  std::unordered_set<unsigned> new_vars;
  auto check_ref = [&](Literal lit, const std::string& what) {
    unsigned v = lit.var();
    if (v == 0) return;  // constants are fine
    if (v <= spec.max_var) {
      switch (kinds.kind[v]) {
        case VarKinds::controllable:
          fail(what + " references a controllable input (cyclic control)");
          break;
        case VarKinds::uncontrollable:
        case VarKinds::latch:
          return;
        default:
          fail(what + " references variable " + std::to_string(v) +
               " which is neither a latch nor an uncontrollable input");
      }
    } else if (!new_vars.count(v)) {
      fail(what + " references undefined variable " + std::to_string(v));
    }
  };

  Circuit out = spec;
  for (size_t i = 0; i < new_ands.size(); ++i) {
    const AndGate& g = new_ands[i];
    unsigned expect = spec.max_var + static_cast<unsigned>(i) + 1;
    if (g.lhs != Literal::positive(expect))
      fail("new gate " + std::to_string(i) + " must define variable " + std::to_string(expect));
    check_ref(g.rhs0, "new gate operand");
    check_ref(g.rhs1, "new gate operand");
    new_vars.insert(expect);
    out.ands.push_back(g);
  }
  out.max_var = spec.max_var + static_cast<unsigned>(new_ands.size());

  auto ctrl = spec.controllable_indices();
  if (defs.size() != ctrl.size()) {
    for (const auto& [in_lit, def] : defs) {
      (void)def;
      bool known = false;
      for (size_t i : ctrl) known |= spec.inputs[i].lit == in_lit;
      if (!known) fail("definition given for non-controllable literal " + std::to_string(in_lit.value()));
    }
  }
  for (size_t i : ctrl) {
    auto it = defs.find(spec.inputs[i].lit);
    if (it == defs.end()) fail("undefined controllable input " + spec.inputs[i].name);
    check_ref(it->second, "definition of " + spec.inputs[i].name);
    out.outputs.push_back(it->second);
    out.output_names.push_back(spec.inputs[i].name);
  }

  validate(out, ParseMode::any_outputs);
  return out;
}

BenchmarkMeta read_meta(const Circuit& c) {
  BenchmarkMeta meta;
  for (const auto& raw : c.comments) {
    std::string_view line = rstrip(raw);
    auto parse_tail = [&](std::string_view key) -> std::optional<std::string_view> {
      if (line.substr(0, key.size()) != key) return std::nullopt;
      std::string_view tail = line.substr(key.size());
      while (!tail.empty() && tail.front() == ' ') tail.remove_prefix(1);
      return tail;
    };
    if (auto tail = parse_tail(kRealizableKey)) {
      bool value;
      if (*tail == "0") value = false;
      else if (*tail == "1") value = true;
      else throw MetaError("malformed realizability metadata: " + std::string(line));
      if (meta.realizable && *meta.realizable != value)
        throw MetaError("conflicting realizability metadata");
      meta.realizable = value;
    } else if (auto tail2 = parse_tail(kReferenceKey)) {
      uint64_t value = 0;
      auto [p, ec] = std::from_chars(tail2->data(), tail2->data() + tail2->size(), value);
      if (ec != std::errc() || p != tail2->data() + tail2->size())
        throw MetaError("malformed reference size metadata: " + std::string(line));
      if (meta.reference_size && *meta.reference_size != value)
        throw MetaError("conflicting reference size metadata");
      meta.reference_size = value;
    }
  }
  return meta;
}

Circuit write_meta(Circuit c, const BenchmarkMeta& meta) {
  std::vector<std::string> kept;
  for (auto& line : c.comments) {
    std::string_view s = rstrip(line);
    if (s.substr(0, kRealizableKey.size()) == kRealizableKey) continue;
    if (s.substr(0, kReferenceKey.size()) == kReferenceKey) continue;
    kept.push_back(std::move(line));
  }
  if (meta.realizable)
    kept.push_back(std::string(kRealizableKey) + " " + (*meta.realizable ? "1" : "0"));
  if (meta.reference_size)
    kept.push_back(std::string(kReferenceKey) + " " + std::to_string(*meta.reference_size));
  c.comments = std::move(kept);
  return c;
}

}  // namespace synt::aig
