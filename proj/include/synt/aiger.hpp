#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace synt::aig {

/// AIGER literal: 2*var for a positive reference, 2*var+1 for a negated one.
/// Variable 0 is reserved for the constants (literal 0 = false, 1 = true).
class Literal {
public:
  constexpr Literal() = default;
  constexpr explicit Literal(unsigned value) : value_(value) {}

  static constexpr Literal constant(bool b) { return Literal(b ? 1u : 0u); }
  static constexpr Literal positive(unsigned var) { return Literal(2 * var); }

  constexpr unsigned value() const { return value_; }
  constexpr unsigned var() const { return value_ / 2; }
  constexpr bool negated() const { return (value_ & 1u) != 0; }
  constexpr bool is_constant() const { return var() == 0; }

  constexpr Literal operator!() const { return Literal(value_ ^ 1u); }

  friend constexpr bool operator==(Literal a, Literal b) = default;
  friend constexpr auto operator<=>(Literal a, Literal b) = default;

private:
  unsigned value_ = 0;
};

constexpr Literal kFalse = Literal::constant(false);
constexpr Literal kTrue = Literal::constant(true);

/// Inputs whose symbol name starts with this prefix belong to the controller.
inline constexpr std::string_view kControllablePrefix = "controllable_";

struct Input {
  Literal lit;        // defining literal, even
  std::string name;   // symbol table entry, may be empty
  bool controllable = false;

  friend bool operator==(const Input&, const Input&) = default;
};

struct Latch {
  Literal lit;        // defining literal, even
  Literal next;       // next-state function
  std::string name;   // symbol table entry, may be empty

  friend bool operator==(const Latch&, const Latch&) = default;
};

struct AndGate {
  Literal lhs;        // even, strictly greater than both operands
  Literal rhs0;
  Literal rhs1;

  friend bool operator==(const AndGate&, const AndGate&) = default;
};

/// An and-inverter graph with latches. Variables 1..max_var are partitioned
/// into inputs, latches and AND gates; all latches reset to 0.
struct Circuit {
  unsigned max_var = 0;
  std::vector<Input> inputs;
  std::vector<Latch> latches;
  std::vector<Literal> outputs;
  std::vector<std::string> output_names;  // parallel to outputs, "" = unnamed
  std::vector<AndGate> ands;
  std::vector<std::string> comments;      // without the leading 'c' marker line

  std::vector<size_t> controllable_indices() const;
  std::vector<size_t> uncontrollable_indices() const;
  size_t num_controllable() const { return controllable_indices().size(); }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

enum class ParseMode {
  specification,  // exactly one output required
  any_outputs,    // e.g. synthesized solutions carrying definition outputs
};

class ParseError : public std::runtime_error {
public:
  ParseError(size_t line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  size_t line() const { return line_; }

private:
  size_t line_;
};

/// Throws std::invalid_argument if the circuit violates a structural
/// invariant (literal ranges, AND ordering, variable partition, ...).
void validate(const Circuit& c, ParseMode mode);

Circuit parse_ascii(std::string_view text, ParseMode mode = ParseMode::specification);
Circuit parse_binary(std::string_view bytes, ParseMode mode = ParseMode::specification);

/// Dispatches on the header keyword (aag/aig).
Circuit parse_auto(std::string_view data, ParseMode mode = ParseMode::specification);
Circuit read_file(const std::filesystem::path& path, ParseMode mode = ParseMode::specification);

std::string serialize_ascii(const Circuit& c);
void write_file(const std::filesystem::path& path, const Circuit& c);

/// Syntactic solution check. A solution must contain the specification
/// unchanged (identity variable mapping), keep its input/latch frame, and
/// define every controllable input through an extra output whose cone uses
/// only uncontrollable inputs and latches: output 0 is the specification's
/// error output, output 1+i defines the i-th controllable input.
struct SyntacticReport {
  bool spec_contained = false;       // (a) specification is a subcircuit
  bool controllables_defined = false;// (b) definitions present, cones legal
  bool frame_preserved = false;      // (c) input/latch frame unchanged
  std::string detail;                // first violation, empty if pass
  bool pass() const { return spec_contained && controllables_defined && frame_preserved; }
};

SyntacticReport check_syntactic(const Circuit& spec, const Circuit& solution);

/// Builds a solution circuit from per-controllable-input definitions.
/// defs maps each controllable input literal to its defining literal; new
/// gates extend the variable range consecutively and may reference latches,
/// uncontrollable inputs and earlier new gates only.
Circuit merge_solution(const Circuit& spec,
                       const std::map<Literal, Literal>& defs,
                       const std::vector<AndGate>& new_ands);

/// Benchmark metadata kept in the comment section.
struct BenchmarkMeta {
  std::optional<bool> realizable;
  std::optional<uint64_t> reference_size;

  friend bool operator==(const BenchmarkMeta&, const BenchmarkMeta&) = default;
};

class MetaError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

BenchmarkMeta read_meta(const Circuit& c);       // throws MetaError on conflicts
Circuit write_meta(Circuit c, const BenchmarkMeta& meta);

}  // namespace synt::aig
