#include "apc/lambda_j.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "apc/containment.hpp"

namespace apc::lj {

// ---------------------------------------------------------------------------
// Environment

Env env_bind(Env parent, std::string name, Value v) {
  auto n = std::make_shared<EnvNode>();
  n->name = std::move(name);
  n->value = std::move(v);
  n->parent = std::move(parent);
  return n;
}

const Value* env_lookup(const Env& env, const std::string& name) {
  for (const EnvNode* n = env.get(); n; n = n->parent.get())
    if (n->name == name) return &n->value;
  return nullptr;
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Strict:
      return "strict";
    case Mode::Observer:
      return "observer";
    case Mode::Protector:
      return "protector";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

ExprPtr mk(Expr e) { return std::make_shared<Expr>(std::move(e)); }

ExprPtr mk_const(Constant c, size_t pos) {
  Expr e;
  e.kind = ExprKind::Const;
  e.konst = std::move(c);
  e.pos = pos;
  return mk(std::move(e));
}

ExprPtr mk_str(std::string s, size_t pos) {
  Constant c;
  c.type = Constant::Type::String;
  c.string = std::move(s);
  return mk_const(std::move(c), pos);
}

class ProgramParser {
public:
  explicit ProgramParser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    ExprPtr e = sequence();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

private:
  // seq := assign (';' assign)*, desugared to let with a fresh binder.
  ExprPtr sequence() {
    ExprPtr e = assign_level();
    while (eat_punct(';')) {
      ExprPtr rhs = assign_level();
      Expr let;
      let.kind = ExprKind::Let;
      let.name = fresh();
      let.a = e;
      let.b = rhs;
      let.pos = e->pos;
      e = mk(std::move(let));
    }
    return e;
  }

  ExprPtr assign_level() {
    skip_ws();
    size_t pos = pos_;
    if (eat_keyword("let")) {
      std::string name = ident("binder");
      expect_punct('=');
      ExprPtr bound = assign_level();
      expect_keyword("in");
      ExprPtr body = sequence();
      Expr e;
      e.kind = ExprKind::Let;
      e.name = std::move(name);
      e.a = bound;
      e.b = body;
      e.pos = pos;
      return mk(std::move(e));
    }
    if (eat_keyword("permit")) {
      std::string src = string_literal("contract string");
      Contract c = [&] {
        try {
          return parse_contract(src);
        } catch (const ContractParseError& err) {
          throw ProgramParseError(std::string("bad contract: ") + err.what(),
                                  pos);
        }
      }();
      expect_keyword("in");
      ExprPtr body = assign_level();
      Expr e;
      e.kind = ExprKind::Permit;
      e.a = body;
      e.contract = c;
      e.pos = pos;
      return mk(std::move(e));
    }
    ExprPtr target = postfix();
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '=' &&
        (pos_ + 1 >= src_.size() || src_[pos_ + 1] != '=')) {
      ++pos_;
      ExprPtr value = assign_level();
      if (target->kind != ExprKind::Get)
        throw ProgramParseError("invalid assignment target", pos);
      Expr e;
      e.kind = ExprKind::Put;
      e.a = target->a;
      e.b = target->b;
      e.c = value;
      e.pos = pos;
      return mk(std::move(e));
    }
    return target;
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (true) {
      skip_ws();
      if (pos_ >= src_.size()) break;
      char c = src_[pos_];
      if (c == '.') {
        ++pos_;
        size_t pos = pos_;
        std::string key = ident("property name");
        Expr g;
        g.kind = ExprKind::Get;
        g.a = e;
        g.b = mk_str(std::move(key), pos);
        g.pos = pos;
        e = mk(std::move(g));
      } else if (c == '[') {
        ++pos_;
        ExprPtr key = sequence();
        expect_punct(']');
        Expr g;
        g.kind = ExprKind::Get;
        g.a = e;
        g.b = key;
        g.pos = pos_;
        e = mk(std::move(g));
      } else if (c == '(') {
        ++pos_;
        skip_ws();
        ExprPtr arg;
        size_t pos = pos_;
        if (pos_ < src_.size() && src_[pos_] == ')') {
          Constant u;  // zero-argument call passes undefined
          arg = mk_const(u, pos);
        } else {
          arg = sequence();
        }
        expect_punct(')');
        Expr a;
        a.kind = ExprKind::App;
        a.a = e;
        a.b = arg;
        a.pos = pos;
        e = mk(std::move(a));
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr primary() {
    skip_ws();
    size_t pos = pos_;
    if (pos_ >= src_.size()) fail("expected an expression");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = sequence();
      expect_punct(')');
      return e;
    }
    if (c == '{') return object_literal();
    if (c == '\'' || c == '"') return mk_str(string_literal("string"), pos);
    if (std::isdigit(uint8_t(c)) ||
        (c == '-' && pos_ + 1 < src_.size() && std::isdigit(uint8_t(src_[pos_ + 1]))))
      return number_literal();
    if (eat_keyword("fun")) {
      expect_punct('(');
      std::string param = ident("parameter");
      expect_punct(')');
      expect_punct('{');
      ExprPtr body = sequence();
      expect_punct('}');
      Expr e;
      e.kind = ExprKind::Abs;
      e.name = std::move(param);
      e.a = body;
      e.pos = pos;
      return mk(std::move(e));
    }
    if (eat_keyword("new")) {
      ExprPtr proto = postfix();
      Expr e;
      e.kind = ExprKind::New;
      e.a = proto;
      e.pos = pos;
      return mk(std::move(e));
    }
    if (eat_keyword("true") || eat_keyword("false")) {
      Constant k;
      k.type = Constant::Type::Bool;
      k.boolean = src_.substr(pos).starts_with("true");
      return mk_const(std::move(k), pos);
    }
    if (eat_keyword("undefined")) return mk_const(Constant{}, pos);
    if (eat_keyword("null")) {
      Constant k;
      k.type = Constant::Type::Null;
      return mk_const(std::move(k), pos);
    }
    std::string name = ident("expression");
    Expr e;
    e.kind = ExprKind::Var;
    e.name = std::move(name);
    e.pos = pos;
    return mk(std::move(e));
  }

  // {k: e, ...} becomes let $t = new null in ($t[k]=e; ...; $t).
  ExprPtr object_literal() {
    size_t pos = pos_;
    expect_punct('{');
    std::vector<std::pair<std::string, ExprPtr>> fields;
    skip_ws();
    if (!eat_punct('}')) {
      while (true) {
        std::string key = object_key();
        expect_punct(':');
        fields.emplace_back(std::move(key), assign_level());
        if (eat_punct(',')) continue;
        expect_punct('}');
        break;
      }
    }
    std::string tmp = fresh();
    Expr var;
    var.kind = ExprKind::Var;
    var.name = tmp;
    var.pos = pos;
    ExprPtr body = mk(std::move(var));
    for (size_t i = fields.size(); i-- > 0;) {
      Expr put;
      put.kind = ExprKind::Put;
      put.a = [&] {
        Expr v;
        v.kind = ExprKind::Var;
        v.name = tmp;
        v.pos = pos;
        return mk(std::move(v));
      }();
      put.b = mk_str(fields[i].first, pos);
      put.c = fields[i].second;
      put.pos = pos;
      Expr let;
      let.kind = ExprKind::Let;
      let.name = fresh();
      let.a = mk(std::move(put));
      let.b = body;
      let.pos = pos;
      body = mk(std::move(let));
    }
    Expr newe;
    newe.kind = ExprKind::New;
    newe.a = mk_const([] {
      Constant k;
      k.type = Constant::Type::Null;
      return k;
    }(), pos);
    newe.pos = pos;
    Expr let;
    let.kind = ExprKind::Let;
    let.name = tmp;
    let.a = mk(std::move(newe));
    let.b = body;
    let.pos = pos;
    return mk(std::move(let));
  }

  std::string object_key() {
    skip_ws();
    if (pos_ < src_.size() && (src_[pos_] == '\'' || src_[pos_] == '"'))
      return string_literal("object key");
    if (pos_ < src_.size() && std::isdigit(uint8_t(src_[pos_]))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(uint8_t(src_[pos_]))) ++pos_;
      return std::string(src_.substr(start, pos_ - start));
    }
    return ident("object key");
  }

  ExprPtr number_literal() {
    skip_ws();
    size_t pos = pos_;
    size_t end = pos_;
    if (end < src_.size() && src_[end] == '-') ++end;
    while (end < src_.size() &&
           (std::isdigit(uint8_t(src_[end])) || src_[end] == '.'))
      ++end;
    double num = std::stod(std::string(src_.substr(pos_, end - pos_)));
    pos_ = end;
    Constant k;
    k.type = Constant::Type::Number;
    k.number = num;
    return mk_const(std::move(k), pos);
  }

  std::string string_literal(const char* what) {
    skip_ws();
    if (pos_ >= src_.size() || (src_[pos_] != '\'' && src_[pos_] != '"'))
      fail(std::string("expected ") + what);
    char quote = src_[pos_++];
    std::string out;
    while (true) {
      if (pos_ >= src_.size()) fail("unterminated string");
      char c = src_[pos_++];
      if (c == quote) break;
      if (c == '\\' && pos_ < src_.size()) {
        char esc = src_[pos_++];
        switch (esc) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          default: out += esc; break;
        }
        continue;
      }
      out += c;
    }
    return out;
  }

  std::string ident(const char* what) {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isalnum(uint8_t(c)) || c == '_' ||
          (c == '$' && pos_ > start))
        ++pos_;
      else
        break;
    }
    if (pos_ == start) fail(std::string("expected ") + what);
    std::string name(src_.substr(start, pos_ - start));
    if (is_keyword(name)) fail("'" + name + "' is a keyword");
    return name;
  }

  static bool is_keyword(const std::string& s) {
    return s == "let" || s == "in" || s == "fun" || s == "new" ||
           s == "permit" || s == "true" || s == "false" || s == "null" ||
           s == "undefined";
  }

  bool eat_keyword(const char* kw) {
    skip_ws();
    size_t len = std::string_view(kw).size();
    if (src_.substr(pos_).starts_with(kw)) {
      size_t after = pos_ + len;
      if (after < src_.size() &&
          (std::isalnum(uint8_t(src_[after])) || src_[after] == '_'))
        return false;
      pos_ = after;
      return true;
    }
    return false;
  }

  void expect_keyword(const char* kw) {
    if (!eat_keyword(kw)) fail(std::string("expected '") + kw + "'");
  }

  bool eat_punct(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_punct(char c) {
    if (!eat_punct(c)) fail(std::string("expected '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(uint8_t(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        pos_ += 2;
        while (pos_ + 1 < src_.size() &&
               !(src_[pos_] == '*' && src_[pos_ + 1] == '/'))
          ++pos_;
        pos_ = pos_ + 2 <= src_.size() ? pos_ + 2 : src_.size();
      } else {
        break;
      }
    }
  }

  std::string fresh() { return "$" + std::to_string(fresh_counter_++); }

  [[noreturn]] void fail(const std::string& msg) {
    throw ProgramParseError(msg, pos_);
  }

  std::string_view src_;
  size_t pos_ = 0;
  size_t fresh_counter_ = 0;
};

}  // namespace

ExprPtr parse_program(std::string_view source) {
  return ProgramParser(source).parse();
}

// ---------------------------------------------------------------------------
// Interpreter

namespace {

Value constant_value(const Constant& k) {
  switch (k.type) {
    case Constant::Type::Undefined:
      return Value::undefined();
    case Constant::Type::Null:
      return Value::null();
    case Constant::Type::Bool:
      return Value::boolean_(k.boolean);
    case Constant::Type::Number:
      return Value::number_(k.number);
    case Constant::Type::String:
      return Value::string_(k.string);
  }
  return Value::undefined();
}

}  // namespace

Value Interpreter::eval(const ExprPtr& e, const Env& env) {
  if (++steps_ > opts_.max_steps) throw EvalError("evaluation step budget exceeded");
  switch (e->kind) {
    case ExprKind::Const:
      return constant_value(e->konst);
    case ExprKind::Var: {
      const Value* v = env_lookup(env, e->name);
      if (!v) throw EvalError("unbound variable: " + e->name);
      return *v;
    }
    case ExprKind::Abs: {
      PlainObject o;
      o.closure = Closure{env, e->name, e->a};
      return Value::location(heap_.alloc(std::move(o)));
    }
    case ExprKind::Let: {
      Value bound = eval(e->a, env);
      return eval(e->b, env_bind(env, e->name, std::move(bound)));
    }
    case ExprKind::App: {
      Value fn = eval(e->a, env);
      Value arg = eval(e->b, env);
      if (!fn.is_loc()) throw EvalError("applying a non-function");
      size_t op = op_counter_++;
      return do_app(fn.loc, std::move(arg), op);
    }
    case ExprKind::New: {
      Value proto = eval(e->a, env);
      PlainObject o;
      o.prototype = proto;
      return Value::location(heap_.alloc(std::move(o)));
    }
    case ExprKind::Get: {
      Value obj = eval(e->a, env);
      Value key = eval(e->b, env);
      if (!obj.is_loc()) throw EvalError("property access on a constant");
      if (key.kind != Value::Kind::String)
        throw EvalError("property key must be a string");
      size_t op = op_counter_++;
      return do_get(obj.loc, key.string, op);
    }
    case ExprKind::Put: {
      Value obj = eval(e->a, env);
      Value key = eval(e->b, env);
      Value val = eval(e->c, env);
      if (!obj.is_loc()) throw EvalError("property assignment on a constant");
      if (key.kind != Value::Kind::String)
        throw EvalError("property key must be a string");
      size_t op = op_counter_++;
      return do_put(obj.loc, key.string, std::move(val), op);
    }
    case ExprKind::Permit: {
      Value v = eval(e->a, env);
      if (!opts_.enforce) return v;
      if (!v.is_loc()) return v;  // constants carry no state to protect
      return Value::location(wrap_argument(v.loc, reduce(e->contract)));
    }
  }
  throw EvalError("malformed expression");
}

void Interpreter::log(EffectKind kind, PathTrie paths,
                      std::optional<Contract> c, size_t op) {
  bool violation =
      kind == EffectKind::ReadViolation || kind == EffectKind::WriteViolation;
  if (!violation && !opts_.log_paths) return;
  monitor_.push_back(MonitorEntry{kind, std::move(paths), std::move(c), op});
}

Value Interpreter::lookup(const PlainObject& o, const std::string& prop) const {
  if (auto it = o.props.find(prop); it != o.props.end()) return it->second;
  Value proto = o.prototype;
  while (proto.is_loc()) {
    const Storable& s = heap_.at(proto.loc);
    if (const auto* plain = std::get_if<PlainObject>(&s)) {
      if (auto it = plain->props.find(prop); it != plain->props.end())
        return it->second;
      proto = plain->prototype;
    } else {
      // Prototype behind a membrane: continue on the raw target.
      proto = Value::location(std::get<ProxyObject>(s).target);
    }
  }
  return Value::undefined();
}

Location Interpreter::resolve_raw(Location l) const {
  while (const auto* p = std::get_if<ProxyObject>(&heap_.at(l))) l = p->target;
  return l;
}

Location Interpreter::wrap_argument(Location arg, Contract c) {
  PathTrie eps = PathTrie::single(AccessPath{});
  if (opts_.merge_membranes) {
    if (const auto* inner = std::get_if<ProxyObject>(&heap_.at(arg))) {
      ProxyObject merged{inner->target, PathTrie::unite(eps, inner->paths),
                         reduce(Contract::both(c, inner->contract))};
      return heap_.alloc(std::move(merged));
    }
  }
  return heap_.alloc(ProxyObject{arg, eps, c});
}

Value Interpreter::do_app(Location callee, Value arg, size_t op) {
  const Storable& s = heap_.at(callee);
  if (const auto* plain = std::get_if<PlainObject>(&s)) {
    if (!plain->closure) throw EvalError("callee has no closure");
    Closure cl = *plain->closure;
    return eval(cl.body, env_bind(cl.env, cl.param, std::move(arg)));
  }
  ProxyObject proxy = std::get<ProxyObject>(s);
  if (!arg.is_loc()) return do_app(proxy.target, std::move(arg), op);
  Location wrapped = wrap_argument(arg.loc, proxy.contract);
  if (opts_.trace)
    opts_.trace(TraceEvent{op, 'a', true, "", {}, {}, Value::location(wrapped)});
  return do_app(proxy.target, Value::location(wrapped), op);
}

Value Interpreter::do_get(Location obj, const std::string& prop, size_t op) {
  const Storable& s = heap_.at(obj);
  if (const auto* plain = std::get_if<PlainObject>(&s))
    return lookup(*plain, prop);

  ProxyObject proxy = std::get<ProxyObject>(s);
  Property property = Property::name(prop);
  PathTrie touched = proxy.paths.append(property);
  bool allowed = is_readable(proxy.contract, AccessPath{property});

  auto trace = [&](const Value& result) {
    if (opts_.trace)
      opts_.trace(TraceEvent{op, 'g', allowed, prop, {}, {}, result});
  };

  auto wrap_result = [&](Value v) -> Value {
    if (!v.is_loc()) return v;
    Contract residual = reduce(derive(proxy.contract, property));
    if (opts_.merge_membranes) {
      if (const auto* inner = std::get_if<ProxyObject>(&heap_.at(v.loc))) {
        ProxyObject merged{inner->target,
                           PathTrie::unite(touched, inner->paths),
                           reduce(Contract::both(residual, inner->contract))};
        return Value::location(heap_.alloc(std::move(merged)));
      }
    }
    return Value::location(heap_.alloc(ProxyObject{v.loc, touched, residual}));
  };

  if (allowed) {
    Value v = do_get(proxy.target, prop, op);
    log(EffectKind::Read, touched, std::nullopt, op);
    Value out = wrap_result(std::move(v));
    trace(out);
    return out;
  }
  switch (opts_.mode) {
    case Mode::Strict:
      log(EffectKind::ReadViolation, touched, proxy.contract, op);
      throw ViolationError{EffectKind::ReadViolation, touched, proxy.contract,
                           op};
    case Mode::Observer: {
      Value v = do_get(proxy.target, prop, op);
      log(EffectKind::ReadViolation, touched, proxy.contract, op);
      Value out = wrap_result(std::move(v));
      trace(out);
      return out;
    }
    case Mode::Protector: {
      log(EffectKind::ReadViolation, touched, proxy.contract, op);
      Value out = Value::undefined();
      trace(out);
      return out;
    }
  }
  return Value::undefined();
}

Value Interpreter::do_put(Location obj, const std::string& prop, Value v,
                          size_t op) {
  Storable& s = heap_.at(obj);
  if (auto* plain = std::get_if<PlainObject>(&s)) {
    plain->props[prop] = v;
    return v;
  }

  ProxyObject proxy = std::get<ProxyObject>(s);
  Property property = Property::name(prop);
  PathTrie touched = proxy.paths.append(property);
  bool allowed = is_writeable(proxy.contract, AccessPath{property});

  Location raw = resolve_raw(proxy.target);
  auto raw_slot = [&]() -> Value {
    const auto& plain = std::get<PlainObject>(heap_.at(raw));
    auto it = plain.props.find(prop);
    return it == plain.props.end() ? Value::undefined() : it->second;
  };
  Value before = raw_slot();

  auto trace = [&](const Value& result) {
    if (opts_.trace)
      opts_.trace(TraceEvent{op, 'p', allowed, prop, before, raw_slot(), result});
  };

  if (allowed) {
    Value out = do_put(proxy.target, prop, std::move(v), op);
    log(EffectKind::Write, touched, std::nullopt, op);
    trace(out);
    return out;
  }
  switch (opts_.mode) {
    case Mode::Strict:
      log(EffectKind::WriteViolation, touched, proxy.contract, op);
      throw ViolationError{EffectKind::WriteViolation, touched, proxy.contract,
                           op};
    case Mode::Observer: {
      Value out = do_put(proxy.target, prop, std::move(v), op);
      log(EffectKind::WriteViolation, touched, proxy.contract, op);
      trace(out);
      return out;
    }
    case Mode::Protector: {
      // Forbidden writes are omitted; the value passes through unchanged.
      log(EffectKind::WriteViolation, touched, proxy.contract, op);
      trace(v);
      return v;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string render_number(double n) {
  if (std::isfinite(n) && n == std::floor(n) && std::abs(n) < 1e15) {
    long long i = (long long)n;
    return std::to_string(i);
  }
  std::ostringstream out;
  out << n;
  return out.str();
}

void render(const Value& v, const Heap& heap,
            std::unordered_set<Location>& visiting, std::string& out) {
  switch (v.kind) {
    case Value::Kind::Undefined:
      out += "undefined";
      return;
    case Value::Kind::Null:
      out += "null";
      return;
    case Value::Kind::Bool:
      out += v.boolean ? "true" : "false";
      return;
    case Value::Kind::Number:
      out += render_number(v.number);
      return;
    case Value::Kind::String:
      out += '"';
      for (char c : v.string) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
      return;
    case Value::Kind::Loc:
      break;
  }
  Location l = v.loc;
  while (const auto* p = std::get_if<ProxyObject>(&heap.at(l))) l = p->target;
  if (visiting.count(l)) {
    out += "<cycle>";
    return;
  }
  const auto& plain = std::get<PlainObject>(heap.at(l));
  if (plain.closure) {
    out += "<function>";
    return;
  }
  visiting.insert(l);
  out += '{';
  bool first = true;
  for (const auto& [k, val] : plain.props) {
    if (!first) out += ", ";
    first = false;
    out += k;
    out += ": ";
    render(val, heap, visiting, out);
  }
  if (plain.prototype.kind != Value::Kind::Null) {
    if (!first) out += ", ";
    out += "__proto__: ";
    render(plain.prototype, heap, visiting, out);
  }
  out += '}';
  visiting.erase(l);
}

}  // namespace

std::string render_value(const Value& v, const Heap& heap) {
  std::unordered_set<Location> visiting;
  std::string out;
  render(v, heap, visiting, out);
  return out;
}

// ---------------------------------------------------------------------------
// Driver

RunOutcome run_program(std::string_view source, const Options& opts) {
  RunOutcome out;
  auto t0 = std::chrono::steady_clock::now();
  ExprPtr program;
  try {
    program = parse_program(source);
  } catch (const ProgramParseError& e) {
    out.status = RunOutcome::Status::ParseError;
    out.error = std::string(e.what()) + " at offset " +
                std::to_string(e.position);
    return out;
  }
  Interpreter interp(opts);
  try {
    out.result = interp.eval_program(program);
    out.status = RunOutcome::Status::Ok;
  } catch (const ViolationError& v) {
    out.status = RunOutcome::Status::Violation;
    auto paths = v.paths.flatten(1000000);
    if (!paths.empty()) out.violation_path = paths.front();
    out.violation_contract = to_string(v.contract);
    out.error = std::string(v.kind == EffectKind::ReadViolation ? "read"
                                                                : "write") +
                " violation at " + to_string(out.violation_path) +
                " (contract " + out.violation_contract + ")";
  } catch (const EvalError& e) {
    out.status = RunOutcome::Status::RuntimeError;
    out.error = e.what();
  } catch (const TrieOverflowError& e) {
    out.status = RunOutcome::Status::RuntimeError;
    out.error = e.what();
  }
  out.heap = std::move(interp.heap());
  out.monitor = interp.monitor();
  out.op_count = interp.op_count();
  auto t1 = std::chrono::steady_clock::now();
  out.wall_time_ms = uint64_t(
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  return out;
}

}  // namespace apc::lj
