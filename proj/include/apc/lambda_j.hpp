#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "apc/contract.hpp"
#include "apc/path_trie.hpp"
#include "apc/property.hpp"

namespace apc::lj {

// ---------------------------------------------------------------------------
// Syntax

enum class ExprKind { Const, Var, Abs, App, New, Get, Put, Permit, Let };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Constant {
  enum class Type { Undefined, Null, Bool, Number, String };
  Type type = Type::Undefined;
  bool boolean = false;
  double number = 0;
  std::string string;
};

struct Expr {
  ExprKind kind;
  Constant konst;       // Const
  std::string name;     // Var; Abs/Let binder
  ExprPtr a, b, c;      // Abs: a=body; App: a(b); New: a; Get: a[b];
                        // Put: a[b]=c; Permit: a; Let: a=bound, b=body
  Contract contract;    // Permit
  size_t pos = 0;       // source offset, for diagnostics
};

struct ProgramParseError : std::runtime_error {
  ProgramParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg), position(pos) {}
  size_t position;
};

/// Parses the surface syntax into the core AST. Sugar handled here:
/// e.p ⇒ e["p"], object literals ⇒ new + writes, e1;e2 ⇒ let with a fresh
/// binder. Contracts after `permit` are parsed eagerly.
ExprPtr parse_program(std::string_view source);

// ---------------------------------------------------------------------------
// Semantic domains

using Location = uint32_t;

struct Value {
  enum class Kind { Undefined, Null, Bool, Number, String, Loc };
  Kind kind = Kind::Undefined;
  bool boolean = false;
  double number = 0;
  std::string string;
  Location loc = 0;

  static Value undefined() { return {}; }
  static Value null() {
    Value v;
    v.kind = Kind::Null;
    return v;
  }
  static Value boolean_(bool b) {
    Value v;
    v.kind = Kind::Bool;
    v.boolean = b;
    return v;
  }
  static Value number_(double n) {
    Value v;
    v.kind = Kind::Number;
    v.number = n;
    return v;
  }
  static Value string_(std::string s) {
    Value v;
    v.kind = Kind::String;
    v.string = std::move(s);
    return v;
  }
  static Value location(Location l) {
    Value v;
    v.kind = Kind::Loc;
    v.loc = l;
    return v;
  }
  bool is_loc() const { return kind == Kind::Loc; }
  bool operator==(const Value&) const = default;
};

struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;
struct EnvNode {
  std::string name;
  Value value;
  Env parent;
};
Env env_bind(Env parent, std::string name, Value v);
const Value* env_lookup(const Env& env, const std::string& name);

struct Closure {
  Env env;
  std::string param;
  ExprPtr body;
};

/// Plain storable ⟨o, f, prototype⟩: property map, optional closure,
/// prototype value. Lookup walks own properties, then the prototype chain,
/// and defaults to undefined.
struct PlainObject {
  std::map<std::string, Value> props;
  std::optional<Closure> closure;
  Value prototype = Value::null();
};

/// Proxy ⟨target, ⟨paths, contract⟩⟩; the handler's contract is always
/// normalized and reduced.
struct ProxyObject {
  Location target;
  PathTrie paths;
  Contract contract;
};

using Storable = std::variant<PlainObject, ProxyObject>;

struct Heap {
  std::vector<Storable> slots;
  Location alloc(Storable s) {
    slots.push_back(std::move(s));
    return Location(slots.size() - 1);
  }
  const Storable& at(Location l) const { return slots.at(l); }
  Storable& at(Location l) { return slots.at(l); }
};

// ---------------------------------------------------------------------------
// Monitor

enum class EffectKind { Read, Write, ReadViolation, WriteViolation };

struct MonitorEntry {
  EffectKind kind;
  PathTrie paths;
  std::optional<Contract> contract;  // violations carry the handler contract
  size_t op_index = 0;               // evaluation-order index of the get/put/app
};

using Monitor = std::vector<MonitorEntry>;

// ---------------------------------------------------------------------------
// Evaluation

enum class Mode { Strict, Observer, Protector };

std::string to_string(Mode m);

/// Per-access probe for tests: raw target state around proxy-mediated ops.
struct TraceEvent {
  size_t op_index;
  char op;  // 'g' get, 'p' put, 'a' app argument wrap
  bool allowed;
  std::string prop;
  Value before, after;  // put: raw target slot around the operation
  Value result;         // get: the value handed to the program
};

struct Options {
  Mode mode = Mode::Observer;
  bool merge_membranes = true;  // false: naive chained-proxy reference
  bool log_paths = true;        // read/write collection (violations kept)
  bool enforce = true;          // false: permit is the identity
  size_t max_steps = 4000000;   // eval budget, guards non-termination
  std::function<void(const TraceEvent&)> trace;
};

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Strict-mode contract violation, surfaced as a structured error.
struct ViolationError {
  EffectKind kind;
  PathTrie paths;
  Contract contract;
  size_t op_index;
};

class Interpreter {
public:
  explicit Interpreter(Options opts) : opts_(std::move(opts)) {}

  Value eval_program(const ExprPtr& program) { return eval(program, nullptr); }

  Heap& heap() { return heap_; }
  const Monitor& monitor() const { return monitor_; }
  size_t op_count() const { return op_counter_; }

private:
  Value eval(const ExprPtr& e, const Env& env);
  Value do_app(Location callee, Value arg, size_t op);
  Value do_get(Location obj, const std::string& prop, size_t op);
  Value do_put(Location obj, const std::string& prop, Value v, size_t op);
  Location wrap_argument(Location arg, Contract c);
  Value lookup(const PlainObject& o, const std::string& prop) const;
  Location resolve_raw(Location l) const;
  void log(EffectKind kind, PathTrie paths, std::optional<Contract> c,
           size_t op);

  Options opts_;
  Heap heap_;
  Monitor monitor_;
  size_t op_counter_ = 0;
  size_t steps_ = 0;
};

/// Transparent deep rendering; proxies resolve to their targets, cycles
/// print as <cycle>, closures as <function>.
std::string render_value(const Value& v, const Heap& heap);

// ---------------------------------------------------------------------------
// Whole-program driver

struct RunOutcome {
  enum class Status { Ok, ParseError, RuntimeError, Violation };
  Status status = Status::Ok;
  std::string error;            // ParseError/RuntimeError
  AccessPath violation_path;    // Violation (first path of the trie)
  std::string violation_contract;
  Value result;
  Heap heap;
  Monitor monitor;
  size_t op_count = 0;
  uint64_t wall_time_ms = 0;
};

RunOutcome run_program(std::string_view source, const Options& opts);

}  // namespace apc::lj
