#include "solder/script.hpp"

#include <chrono>
#include <cctype>
#include <cstdio>
#include <functional>
#include <sstream>

#include "solder/scalar_parser.hpp"

#include "json.hpp"

namespace solder {

namespace {

// ------------------------------------------------------------- text utils

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  size_t pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

// Split on a separator at bracket depth zero, so component tuples and
// parenthesized expressions survive intact.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] void rethrow_parse(const EngineError& e, int line) {
  if (e.code() == "UnknownVariable" || e.code() == "NameError")
    throw NameError("line " + std::to_string(line) + ": " + e.what());
  throw SyntaxError(line, 1, e.what());
}

Scalar parse_expr(const ChartPtr& chart, const std::string& text, int line) {
  try {
    return parse_scalar(chart, text);
  } catch (const SyntaxError& e) {
    std::string what = e.what();
    size_t anchor = what.find("col ");
    size_t msg = anchor == std::string::npos ? std::string::npos
                                             : what.find(": ", anchor);
    throw SyntaxError(line, e.col(),
                      msg == std::string::npos ? what : what.substr(msg + 2));
  } catch (const EngineError& e) {
    rethrow_parse(e, line);
  }
}

Rational parse_rational(const std::string& text, int line) {
  auto r = rational_from_string(trim(text));
  if (!r)
    throw SyntaxError(line, 1, "expected a rational constant, got '" +
                                   trim(text) + "'");
  return *r;
}

// `[a,b,c]` to indices; empty brackets give the empty tuple.
std::vector<int> parse_tuple(const ChartPtr& chart, const std::string& text,
                             int line) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw SyntaxError(line, 1, "expected [vars] tuple, got '" + t + "'");
  std::string inner = trim(t.substr(1, t.size() - 2));
  std::vector<int> idx;
  if (inner.empty()) return idx;
  for (const std::string& piece : split_top(inner, ',')) {
    try {
      idx.push_back(chart->index_of(trim(piece)));
    } catch (const EngineError& e) {
      rethrow_parse(e, line);
    }
  }
  return idx;
}

// ----------------------------------------------------------- declarations

struct Pending {
  std::string kind;        // chart, vector, bivector, multivector, form,
                           // metric, submanifold, frame, involution, point
  std::string name;
  std::string chart_name;  // submanifold name for frames
  int degree = -1;
  int line = 0;
  std::vector<std::pair<int, std::string>> items;
  bool open = false;
};

const std::vector<std::string> kPoissonFlagNames = {
    "aPc", "quasiDirac", "dirac", "strongDirac",
    "cosymplectic", "solderedAlgebraic", "soldered"};
const std::vector<std::string> kJacobiFlagNames = {
    "almostDirac", "aJc", "quasiDirac", "dirac", "fieldNormal"};
const std::vector<std::string> kFrameFlagNames = {"aPc", "dirac"};

bool known_flag(const std::vector<std::string>& set, const std::string& name) {
  for (const std::string& s : set)
    if (s == name) return true;
  return false;
}

class Builder {
public:
  explicit Builder(CheckScript& script) : script_(script) {}

  void header(int line, const std::string& body);
  void add_item(int line, const std::string& body);
  void finalize();

private:
  void register_name(const std::string& name, int line);
  const ChartPtr& chart_of(const std::string& name, int line) const;
  const ScriptObject& resolve(const std::string& name, int line) const;
  const ScriptObject& expect_kind(const std::string& name,
                                  ScriptObject::Kind kind, const char* what,
                                  int line) const;
  const Multivector& multivector_arg(const std::string& name, int degree,
                                     int line) const;
  void check_line(int line, const std::string& tail);
  void finish_tensor();
  void finish_chart();
  void finish_metric();
  void finish_submanifold();
  void finish_frame();
  void finish_involution();
  void finish_point();

  CheckScript& script_;
  Pending p_;
};

void Builder::register_name(const std::string& name, int line) {
  if (name.empty())
    throw SyntaxError(line, 1, "missing declaration name");
  if (script_.charts.count(name) || script_.objects.count(name))
    throw NameError("line " + std::to_string(line) + ": name '" + name +
                    "' is already declared");
  script_.decl_order.push_back(name);
}

const ChartPtr& Builder::chart_of(const std::string& name, int line) const {
  auto it = script_.charts.find(name);
  if (it == script_.charts.end())
    throw NameError("line " + std::to_string(line) + ": unknown chart '" +
                    name + "'");
  return it->second;
}

const ScriptObject& Builder::resolve(const std::string& name, int line) const {
  auto it = script_.objects.find(name);
  if (it == script_.objects.end())
    throw NameError("line " + std::to_string(line) + ": unknown object '" +
                    name + "'");
  return it->second;
}

const ScriptObject& Builder::expect_kind(const std::string& name,
                                         ScriptObject::Kind kind,
                                         const char* what, int line) const {
  const ScriptObject& obj = resolve(name, line);
  if (obj.kind != kind)
    throw NameError("line " + std::to_string(line) + ": '" + name +
                    "' is not a " + what);
  return obj;
}

const Multivector& Builder::multivector_arg(const std::string& name,
                                            int degree, int line) const {
  const ScriptObject& obj =
      expect_kind(name, ScriptObject::kMultivector,
                  degree == 2 ? "bivector" : "vector field", line);
  if (obj.multivector->degree() != degree)
    throw NameError("line " + std::to_string(line) + ": '" + name +
                    "' has degree " +
                    std::to_string(obj.multivector->degree()) + ", expected " +
                    std::to_string(degree));
  return *obj.multivector;
}

void Builder::header(int line, const std::string& body) {
  size_t sp = body.find_first_of(" \t");
  std::string word = body.substr(0, sp);
  std::string rest = sp == std::string::npos ? "" : trim(body.substr(sp));

  if (word == "check") {
    check_line(line, rest);
    return;
  }

  size_t colon = rest.find(':');
  if (colon == std::string::npos &&
      (word == "chart" || word == "scalar" || word == "vector" ||
       word == "bivector" || word == "multivector" || word == "form" ||
       word == "metric" || word == "submanifold" || word == "frame" ||
       word == "involution" || word == "point"))
    throw SyntaxError(line, 1, "missing ':' in " + word + " declaration");

  std::string head = trim(rest.substr(0, colon));
  std::string inline_items = trim(rest.substr(colon + 1));
  std::vector<std::string> words = split_words(head);

  auto need_on = [&](size_t count, const char* link) {
    if (words.size() != count || words[count - 2] != link)
      throw SyntaxError(line, 1, "expected '" + word + " <name> " + link +
                                     " <chart>:'");
  };

  if (word == "chart") {
    if (words.size() != 1)
      throw SyntaxError(line, 1, "expected 'chart <name>: vars'");
    p_ = {word, words[0], "", -1, line, {}, true};
  } else if (word == "scalar") {
    need_on(3, "on");
    if (inline_items.empty())
      throw SyntaxError(line, 1, "scalar declaration needs an expression");
    const ChartPtr& chart = chart_of(words[2], line);
    register_name(words[0], line);
    ScriptObject obj;
    obj.kind = ScriptObject::kScalar;
    obj.chart_name = words[2];
    obj.scalar = parse_expr(chart, inline_items, line);
    script_.objects.emplace(words[0], std::move(obj));
    return;
  } else if (word == "vector" || word == "bivector") {
    need_on(3, "on");
    p_ = {word, words[0], words[2], word == "vector" ? 1 : 2, line, {}, true};
  } else if (word == "multivector" || word == "form") {
    int degree = -1;
    if (words.size() == 5 && words[1] == "degree" && words[3] == "on") {
      try {
        degree = std::stoi(words[2]);
      } catch (const std::exception&) {
        throw SyntaxError(line, 1, "bad degree '" + words[2] + "'");
      }
      words = {words[0], "on", words[4]};
    }
    if (word == "multivector" && degree < 0)
      throw SyntaxError(line, 1,
                        "multivector declaration needs 'degree <k>'");
    need_on(3, "on");
    p_ = {word, words[0], words[2], degree, line, {}, true};
  } else if (word == "metric") {
    need_on(3, "on");
    p_ = {word, words[0], words[2], -1, line, {}, true};
  } else if (word == "submanifold") {
    need_on(3, "in");
    p_ = {word, words[0], words[2], -1, line, {}, true};
  } else if (word == "frame") {
    need_on(3, "for");
    p_ = {word, words[0], words[2], -1, line, {}, true};
  } else if (word == "involution" || word == "point") {
    need_on(3, "on");
    p_ = {word, words[0], words[2], -1, line, {}, true};
  } else {
    throw SyntaxError(line, 1, "unknown declaration '" + word + "'");
  }

  if (!inline_items.empty())
    for (const std::string& item : split_top(inline_items, ','))
      if (!trim(item).empty()) p_.items.push_back({line, trim(item)});
}

void Builder::add_item(int line, const std::string& body) {
  if (!p_.open)
    throw SyntaxError(line, 1, "continuation line outside a declaration");
  for (const std::string& item : split_top(body, ','))
    if (!trim(item).empty()) p_.items.push_back({line, trim(item)});
}

void Builder::finalize() {
  if (!p_.open) return;
  p_.open = false;
  if (p_.kind == "chart")
    finish_chart();
  else if (p_.kind == "metric")
    finish_metric();
  else if (p_.kind == "submanifold")
    finish_submanifold();
  else if (p_.kind == "frame")
    finish_frame();
  else if (p_.kind == "involution")
    finish_involution();
  else if (p_.kind == "point")
    finish_point();
  else
    finish_tensor();
}

void Builder::finish_chart() {
  auto is_identifier = [](const std::string& s) {
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_'))
      return false;
    for (char ch : s)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
  };
  std::vector<Variable> vars;
  for (const auto& [line, item] : p_.items) {
    std::string name = item;
    bool laurent = false;
    size_t paren = item.find('(');
    if (paren != std::string::npos) {
      std::string tag = trim(item.substr(paren));
      if (tag != "(laurent)")
        throw SyntaxError(line, 1, "unknown variable tag '" + tag + "'");
      name = trim(item.substr(0, paren));
      laurent = true;
    }
    if (!is_identifier(name))
      throw SyntaxError(line, 1, "bad variable name '" + name + "'");
    vars.push_back({name, laurent});
  }
  register_name(p_.name, p_.line);
  try {
    script_.charts.emplace(p_.name, Chart::make(p_.name, vars));
  } catch (const EngineError& e) {
    rethrow_parse(e, p_.line);
  }
}

void Builder::finish_tensor() {
  const ChartPtr& chart = chart_of(p_.chart_name, p_.line);
  int degree = p_.degree;
  std::vector<std::tuple<int, std::vector<int>, Scalar>> terms;
  for (const auto& [line, item] : p_.items) {
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw SyntaxError(line, 1, "expected '[vars] = expr'");
    std::vector<int> tuple = parse_tuple(chart, item.substr(0, eq), line);
    Scalar value = parse_expr(chart, item.substr(eq + 1), line);
    if (degree < 0) degree = static_cast<int>(tuple.size());
    terms.push_back({line, std::move(tuple), std::move(value)});
  }
  if (degree < 0)
    throw SyntaxError(p_.line, 1,
                      "cannot infer the degree of '" + p_.name +
                          "'; add 'degree <k>' or a component");
  register_name(p_.name, p_.line);
  ScriptObject obj;
  obj.chart_name = p_.chart_name;
  obj.decl_word = p_.kind;
  try {
    if (p_.kind == "form") {
      auto t = DifferentialForm::zero(chart, degree);
      for (auto& [line, tuple, value] : terms) t.add_term(tuple, value);
      obj.kind = ScriptObject::kForm;
      obj.form = std::move(t);
    } else {
      auto t = Multivector::zero(chart, degree);
      for (auto& [line, tuple, value] : terms) t.add_term(tuple, value);
      obj.kind = ScriptObject::kMultivector;
      obj.multivector = std::move(t);
    }
  } catch (const EngineError& e) {
    rethrow_parse(e, p_.line);
  }
  script_.objects.emplace(p_.name, std::move(obj));
}

void Builder::finish_metric() {
  const ChartPtr& chart = chart_of(p_.chart_name, p_.line);
  auto g = SymmetricTwoTensor::zero(chart);
  for (const auto& [line, item] : p_.items) {
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw SyntaxError(line, 1, "expected '[a,b] = expr'");
    std::vector<int> tuple = parse_tuple(chart, item.substr(0, eq), line);
    if (tuple.size() != 2)
      throw SyntaxError(line, 1, "metric components take two indices");
    Scalar value = parse_expr(chart, item.substr(eq + 1), line);
    try {
      g.set_component(tuple[0], tuple[1],
                      g.component(tuple[0], tuple[1]) + value);
    } catch (const EngineError& e) {
      rethrow_parse(e, line);
    }
  }
  register_name(p_.name, p_.line);
  ScriptObject obj;
  obj.kind = ScriptObject::kMetric;
  obj.chart_name = p_.chart_name;
  obj.metric = std::move(g);
  script_.objects.emplace(p_.name, std::move(obj));
}

void Builder::finish_submanifold() {
  const ChartPtr& chart = chart_of(p_.chart_name, p_.line);
  std::vector<std::pair<std::string, Rational>> normals;
  for (const auto& [line, item] : p_.items) {
    std::vector<std::string> words = split_words(item);
    if (words.size() < 2 || words[0] != "normal")
      throw SyntaxError(line, 1, "expected 'normal <var> = <value>'");
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw SyntaxError(line, 1, "expected 'normal <var> = <value>'");
    normals.push_back(
        {words[1], parse_rational(item.substr(eq + 1), line)});
  }
  register_name(p_.name, p_.line);
  ScriptObject obj;
  obj.kind = ScriptObject::kSubmanifold;
  obj.chart_name = p_.chart_name;
  try {
    obj.submanifold = NormalizedSubmanifold::make_by_name(chart, normals);
  } catch (const EngineError& e) {
    rethrow_parse(e, p_.line);
  }
  script_.objects.emplace(p_.name, std::move(obj));
}

void Builder::finish_frame() {
  const ScriptObject& owner =
      expect_kind(p_.chart_name, ScriptObject::kSubmanifold, "submanifold",
                  p_.line);
  const ChartPtr& chart = owner.submanifold->ambient();
  FrameMatrix theta = FrameMatrix::zero(chart);
  for (const auto& [line, item] : p_.items) {
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw SyntaxError(line, 1, "expected '[tangent;normal] = expr'");
    std::string key = trim(item.substr(0, eq));
    if (key.size() < 2 || key.front() != '[' || key.back() != ']')
      throw SyntaxError(line, 1, "expected '[tangent;normal] = expr'");
    std::vector<std::string> parts =
        split_top(key.substr(1, key.size() - 2), ';');
    if (parts.size() != 2)
      throw SyntaxError(line, 1, "frame entries take '[tangent;normal]'");
    Scalar value = parse_expr(chart, item.substr(eq + 1), line);
    try {
      int u = chart->index_of(trim(parts[0]));
      int a = chart->index_of(trim(parts[1]));
      theta.set_entry(u, a, theta.entry(u, a) + value);
    } catch (const EngineError& e) {
      rethrow_parse(e, line);
    }
  }
  register_name(p_.name, p_.line);
  ScriptObject obj;
  obj.kind = ScriptObject::kFrame;
  obj.chart_name = owner.chart_name;
  obj.frame_for = p_.chart_name;
  obj.frame = std::move(theta);
  script_.objects.emplace(p_.name, std::move(obj));
}

void Builder::finish_involution() {
  const ChartPtr& chart = chart_of(p_.chart_name, p_.line);
  std::vector<Scalar> forward;
  for (int v = 0; v < chart->dim(); ++v)
    forward.push_back(Scalar::variable(chart, v));
  for (const auto& [line, item] : p_.items) {
    size_t arrow = item.find("->");
    if (arrow == std::string::npos)
      throw SyntaxError(line, 1, "expected '<var> -> <expr>'");
    std::string var = trim(item.substr(0, arrow));
    try {
      forward[static_cast<size_t>(chart->index_of(var))] =
          parse_expr(chart, item.substr(arrow + 2), line);
    } catch (const EngineError& e) {
      rethrow_parse(e, line);
    }
  }
  register_name(p_.name, p_.line);
  ScriptObject obj;
  obj.kind = ScriptObject::kInvolution;
  obj.chart_name = p_.chart_name;
  try {
    obj.involution = PolyMap::make(chart, chart, forward, forward);
  } catch (const EngineError& e) {
    rethrow_parse(e, p_.line);
  }
  script_.objects.emplace(p_.name, std::move(obj));
}

void Builder::finish_point() {
  const ChartPtr& chart = chart_of(p_.chart_name, p_.line);
  std::vector<Rational> coords(static_cast<size_t>(chart->dim()), Rational(0));
  for (const auto& [line, item] : p_.items) {
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw SyntaxError(line, 1, "expected '<var> = <value>'");
    try {
      int v = chart->index_of(trim(item.substr(0, eq)));
      coords[static_cast<size_t>(v)] = parse_rational(item.substr(eq + 1), line);
    } catch (const EngineError& e) {
      rethrow_parse(e, line);
    }
  }
  register_name(p_.name, p_.line);
  ScriptObject obj;
  obj.kind = ScriptObject::kPoint;
  obj.chart_name = p_.chart_name;
  obj.point = std::move(coords);
  script_.objects.emplace(p_.name, std::move(obj));
}

// ----------------------------------------------------------- check parsing

void Builder::check_line(int line, const std::string& tail) {
  ScriptCheck c;
  c.line = line;
  std::vector<std::string> words = split_words(tail);
  if (words.empty()) throw SyntaxError(line, 1, "empty check");
  c.kind = words[0];
  words.erase(words.begin());

  // peel structural suffixes from the word stream, right to left
  auto find_word = [&](const std::string& w) {
    for (size_t i = 0; i < words.size(); ++i)
      if (words[i] == w) return static_cast<long>(i);
    return -1L;
  };

  std::string expect_part;
  long e = find_word("expect");
  if (e >= 0) {
    for (size_t i = e + 1; i < words.size(); ++i) {
      if (i > static_cast<size_t>(e) + 1) expect_part += " ";
      expect_part += words[i];
    }
    words.resize(static_cast<size_t>(e));
  }
  long a = find_word("at");
  if (a >= 0) {
    if (a + 2 != static_cast<long>(words.size()))
      throw SyntaxError(line, 1, "'at' takes exactly one point name");
    c.at_point = words[static_cast<size_t>(a) + 1];
    words.resize(static_cast<size_t>(a));
  }
  long q = find_word("=");
  if (q >= 0) {
    if (q + 2 != static_cast<long>(words.size()))
      throw SyntaxError(line, 1, "'=' takes exactly one verdict word");
    c.expect_word = words[static_cast<size_t>(q) + 1];
    words.resize(static_cast<size_t>(q));
  }
  long sep = find_word(":");
  if (sep >= 0) {
    std::string list;
    for (size_t i = sep + 1; i < words.size(); ++i) list += words[i];
    for (const std::string& piece : split_top(list, ','))
      if (!trim(piece).empty()) c.defining.push_back(trim(piece));
    words.resize(static_cast<size_t>(sep));
  }
  c.args = words;

  auto parse_expect_flags = [&](const std::vector<std::string>& known) {
    for (const std::string& piece : split_top(expect_part, ',')) {
      std::string flag = trim(piece);
      if (flag.empty()) continue;
      bool want = true;
      if (flag.front() == '!') {
        want = false;
        flag = trim(flag.substr(1));
      }
      if (!known_flag(known, flag))
        throw NameError("line " + std::to_string(line) + ": unknown flag '" +
                        flag + "'");
      c.expect_flags.push_back({flag, want});
    }
  };
  auto expect_one_of = [&](std::initializer_list<const char*> allowed) {
    if (expect_part.empty()) return;
    for (const char* w : allowed)
      if (expect_part == w) {
        c.expect_word = expect_part;
        return;
      }
    throw SyntaxError(line, 1, "bad expectation '" + expect_part + "'");
  };
  auto need_args = [&](size_t n) {
    if (c.args.size() != n)
      throw SyntaxError(line, 1, "check " + c.kind + " takes " +
                                     std::to_string(n) + " names");
  };
  auto sub_arg = [&](const std::string& name) -> const NormalizedSubmanifold& {
    return *expect_kind(name, ScriptObject::kSubmanifold, "submanifold", line)
                .submanifold;
  };
  auto form_arg = [&](const std::string& name, int degree) {
    const ScriptObject& obj =
        expect_kind(name, ScriptObject::kForm, "form", line);
    if (obj.form->degree() != degree)
      throw NameError("line " + std::to_string(line) + ": '" + name +
                      "' has degree " + std::to_string(obj.form->degree()) +
                      ", expected " + std::to_string(degree));
  };
  auto point_arg = [&]() {
    if (!c.at_point)
      throw SyntaxError(line, 1, "check " + c.kind + " needs 'at <point>'");
    expect_kind(*c.at_point, ScriptObject::kPoint, "point", line);
  };

  if (c.kind == "poisson") {
    need_args(1);
    multivector_arg(c.args[0], 2, line);
  } else if (c.kind == "jacobi" || c.kind == "poissonize") {
    need_args(2);
    multivector_arg(c.args[0], 2, line);
    multivector_arg(c.args[1], 1, line);
  } else if (c.kind == "classify-poisson") {
    need_args(2);
    multivector_arg(c.args[0], 2, line);
    sub_arg(c.args[1]);
    parse_expect_flags(kPoissonFlagNames);
  } else if (c.kind == "classify-jacobi") {
    need_args(3);
    multivector_arg(c.args[0], 2, line);
    multivector_arg(c.args[1], 1, line);
    sub_arg(c.args[2]);
    parse_expect_flags(kJacobiFlagNames);
  } else if (c.kind == "soldered") {
    need_args(2);
    const ScriptObject& obj = resolve(c.args[0], line);
    if (obj.kind != ScriptObject::kScalar &&
        obj.kind != ScriptObject::kForm &&
        obj.kind != ScriptObject::kMultivector &&
        obj.kind != ScriptObject::kMetric)
      throw NameError("line " + std::to_string(line) + ": '" + c.args[0] +
                      "' is not a tensor");
    sub_arg(c.args[1]);
    expect_one_of({"yes", "no"});
  } else if (c.kind == "induced") {
    if (c.args.size() == 2) {
      multivector_arg(c.args[0], 2, line);
      sub_arg(c.args[1]);
    } else if (c.args.size() == 3) {
      multivector_arg(c.args[0], 2, line);
      multivector_arg(c.args[1], 1, line);
      sub_arg(c.args[2]);
    } else {
      throw SyntaxError(line, 1, "check induced takes 2 or 3 names");
    }
    expect_one_of({"poisson", "jacobi"});
  } else if (c.kind == "coisotropic") {
    need_args(1);
    const Multivector& pi = multivector_arg(c.args[0], 2, line);
    if (c.defining.empty())
      throw SyntaxError(line, 1,
                        "check coisotropic needs ': <defining vars>'");
    for (const std::string& var : c.defining) {
      try {
        pi.chart()->index_of(var);
      } catch (const EngineError& err) {
        rethrow_parse(err, line);
      }
    }
    expect_one_of({"yes", "no"});
  } else if (c.kind == "conformal-flatten") {
    need_args(3);
    multivector_arg(c.args[0], 2, line);
    multivector_arg(c.args[1], 1, line);
    sub_arg(c.args[2]);
  } else if (c.kind == "involution") {
    need_args(2);
    const ScriptObject& obj = resolve(c.args[0], line);
    if (obj.kind != ScriptObject::kForm &&
        obj.kind != ScriptObject::kMultivector)
      throw NameError("line " + std::to_string(line) + ": '" + c.args[0] +
                      "' is not a form or multivector");
    expect_kind(c.args[1], ScriptObject::kInvolution, "involution", line);
    if (!c.expect_word ||
        (*c.expect_word != "preserved" && *c.expect_word != "not-preserved"))
      throw SyntaxError(line, 1,
                        "check involution needs '= preserved' or "
                        "'= not-preserved'");
  } else if (c.kind == "contact" || c.kind == "symplectization") {
    need_args(3);
    form_arg(c.args[0], 1);
    multivector_arg(c.args[1], 1, line);
    multivector_arg(c.args[2], 2, line);
    point_arg();
  } else if (c.kind == "lcs") {
    need_args(4);
    form_arg(c.args[0], 2);
    form_arg(c.args[1], 1);
    multivector_arg(c.args[2], 2, line);
    multivector_arg(c.args[3], 1, line);
    point_arg();
  } else if (c.kind == "alternate-normal") {
    need_args(3);
    multivector_arg(c.args[0], 2, line);
    const ScriptObject& sub = expect_kind(c.args[1], ScriptObject::kSubmanifold,
                                          "submanifold", line);
    const ScriptObject& frame =
        expect_kind(c.args[2], ScriptObject::kFrame, "frame", line);
    if (frame.frame_for != c.args[1])
      throw NameError("line " + std::to_string(line) + ": frame '" +
                      c.args[2] + "' belongs to '" + frame.frame_for +
                      "', not '" + c.args[1] + "'");
    (void)sub;
    parse_expect_flags(kFrameFlagNames);
  } else {
    throw SyntaxError(line, 1, "unknown check '" + c.kind + "'");
  }

  script_.checks.push_back(std::move(c));
}

}  // namespace

CheckScript parse_script(const std::string& text) {
  CheckScript script;
  Builder builder(script);
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (trim(line).empty()) continue;
    bool indented = line[0] == ' ' || line[0] == '\t';
    if (indented) {
      builder.add_item(lineno, trim(line));
    } else {
      builder.finalize();
      builder.header(lineno, trim(line));
    }
  }
  builder.finalize();
  return script;
}

// ------------------------------------------------------------------ print

namespace {

std::string print_check(const ScriptCheck& c) {
  std::string out = "check " + c.kind;
  for (const std::string& arg : c.args) out += " " + arg;
  if (!c.defining.empty()) {
    out += " :";
    for (size_t i = 0; i < c.defining.size(); ++i)
      out += (i ? ", " : " ") + c.defining[i];
  }
  if (c.kind == "involution" && c.expect_word) out += " = " + *c.expect_word;
  if (c.at_point) out += " at " + *c.at_point;
  if (!c.expect_flags.empty()) {
    out += " expect ";
    for (size_t i = 0; i < c.expect_flags.size(); ++i) {
      if (i) out += ", ";
      out += (c.expect_flags[i].second ? "" : "!") + c.expect_flags[i].first;
    }
  } else if (c.kind != "involution" && c.expect_word) {
    out += " expect " + *c.expect_word;
  }
  return out;
}

template <class Tensor>
void print_components(std::ostringstream& out, const Tensor& t) {
  for (const auto& [tuple, value] : t.components())
    out << "  " << detail::tuple_str(*t.chart(), tuple) << " = " << value.str()
        << "\n";
}

}  // namespace

std::string print_script(const CheckScript& script) {
  std::ostringstream out;
  for (const std::string& name : script.decl_order) {
    auto chart_it = script.charts.find(name);
    if (chart_it != script.charts.end()) {
      const ChartPtr& chart = chart_it->second;
      out << "chart " << name << ":";
      for (int v = 0; v < chart->dim(); ++v)
        out << (v ? ", " : " ") << chart->var(v).name
            << (chart->var(v).laurent ? "(laurent)" : "");
      out << "\n";
      continue;
    }
    const ScriptObject& obj = script.objects.at(name);
    switch (obj.kind) {
      case ScriptObject::kScalar:
        out << "scalar " << name << " on " << obj.chart_name << ": "
            << obj.scalar->str() << "\n";
        break;
      case ScriptObject::kMultivector:
        out << obj.decl_word << " " << name;
        if (obj.decl_word == "multivector")
          out << " degree " << obj.multivector->degree();
        out << " on " << obj.chart_name << ":\n";
        print_components(out, *obj.multivector);
        break;
      case ScriptObject::kForm:
        out << "form " << name << " degree " << obj.form->degree() << " on "
            << obj.chart_name << ":\n";
        print_components(out, *obj.form);
        break;
      case ScriptObject::kMetric: {
        out << "metric " << name << " on " << obj.chart_name << ":\n";
        const ChartPtr& chart = obj.metric->chart();
        for (const auto& [key, value] : obj.metric->components())
          out << "  [" << chart->var(key.first).name << ","
              << chart->var(key.second).name << "] = " << value.str() << "\n";
        break;
      }
      case ScriptObject::kSubmanifold: {
        out << "submanifold " << name << " in " << obj.chart_name << ":";
        const auto& sub = *obj.submanifold;
        bool first = true;
        for (const auto& [idx, value] : sub.normals()) {
          out << (first ? " " : ", ") << "normal "
              << sub.ambient()->var(idx).name << " = " << to_string(value);
          first = false;
        }
        out << "\n";
        break;
      }
      case ScriptObject::kFrame: {
        out << "frame " << name << " for " << obj.frame_for << ":\n";
        const ChartPtr& chart = obj.frame->chart();
        for (const auto& [key, value] : obj.frame->entries())
          out << "  [" << chart->var(key.first).name << ";"
              << chart->var(key.second).name << "] = " << value.str() << "\n";
        break;
      }
      case ScriptObject::kInvolution: {
        out << "involution " << name << " on " << obj.chart_name << ":";
        const ChartPtr& chart = obj.involution->source();
        bool first = true;
        for (int v = 0; v < chart->dim(); ++v) {
          const Scalar& image = obj.involution->forward_component(v);
          if (image == Scalar::variable(chart, v)) continue;
          out << (first ? " " : ", ") << chart->var(v).name << " -> "
              << image.str();
          first = false;
        }
        out << "\n";
        break;
      }
      case ScriptObject::kPoint: {
        out << "point " << name << " on " << obj.chart_name << ":";
        const ChartPtr& chart = script.charts.at(obj.chart_name);
        bool first = true;
        for (int v = 0; v < chart->dim(); ++v) {
          if (obj.point[static_cast<size_t>(v)] == 0) continue;
          out << (first ? " " : ", ") << chart->var(v).name << " = "
              << to_string(obj.point[static_cast<size_t>(v)]);
          first = false;
        }
        out << "\n";
        break;
      }
    }
  }
  for (const ScriptCheck& c : script.checks) out << print_check(c) << "\n";
  return out.str();
}

bool CheckScript::operator==(const CheckScript& other) const {
  return print_script(*this) == print_script(other);
}

// -------------------------------------------------------------- execution

namespace {

struct Executor {
  const CheckScript& script;

  const ScriptObject& obj(const std::string& name) const {
    return script.objects.at(name);
  }
  JacobiPair pair(const ScriptCheck& c, size_t i = 0) const {
    return JacobiPair::make(*obj(c.args[i]).multivector,
                            *obj(c.args[i + 1]).multivector);
  }

  void run_one(const ScriptCheck& c, CheckResult& out) const;
  void classify_result(const ScriptCheck& c,
                       const std::vector<std::string>& display,
                       const std::function<bool(const std::string&)>& value,
                       const std::map<std::string, std::string>& witnesses,
                       CheckResult& out) const;
};

void Executor::classify_result(
    const ScriptCheck& c, const std::vector<std::string>& display,
    const std::function<bool(const std::string&)>& value,
    const std::map<std::string, std::string>& witnesses,
    CheckResult& out) const {
  std::string summary;
  for (const std::string& name : display) {
    if (!summary.empty()) summary += " ";
    summary += name + "=" + (value(name) ? "yes" : "no");
  }
  out.summary = summary;
  bool pass = true;
  for (const auto& [flag, want] : c.expect_flags) {
    bool got = value(flag);
    if (got != want) {
      pass = false;
      out.details.push_back("flag " + flag + " is " + (got ? "yes" : "no") +
                            ", expected " + (want ? "yes" : "no"));
    }
  }
  for (const auto& [flag, witness] : witnesses)
    out.details.push_back(flag + ": " + witness);
  out.verdict = pass ? "PASS" : "FAIL";
}

void Executor::run_one(const ScriptCheck& c, CheckResult& out) const {
  if (c.kind == "poisson") {
    StructureReport r = is_poisson(*obj(c.args[0]).multivector);
    out.verdict = r.ok ? "PASS" : "FAIL";
    if (!r.ok) out.details.push_back(r.witness);
  } else if (c.kind == "jacobi") {
    StructureReport r = is_jacobi(pair(c));
    out.verdict = r.ok ? "PASS" : "FAIL";
    if (!r.ok) out.details.push_back(r.witness);
  } else if (c.kind == "classify-poisson") {
    PoissonFlags flags = classify_poisson(*obj(c.args[0]).multivector,
                                          *obj(c.args[1]).submanifold);
    classify_result(
        c, {"aPc", "quasiDirac", "dirac", "strongDirac", "cosymplectic"},
        [&](const std::string& n) { return flags.flag(n); }, flags.witnesses,
        out);
  } else if (c.kind == "classify-jacobi") {
    JacobiFlags flags = classify_jacobi(pair(c), *obj(c.args[2]).submanifold);
    classify_result(
        c, {"almostDirac", "aJc", "quasiDirac", "dirac", "fieldNormal"},
        [&](const std::string& n) { return flags.flag(n); }, flags.witnesses,
        out);
  } else if (c.kind == "soldered") {
    const ScriptObject& target = obj(c.args[0]);
    const NormalizedSubmanifold& sub = *obj(c.args[1]).submanifold;
    SolderingReport r;
    if (target.kind == ScriptObject::kForm)
      r = is_soldered(*target.form, sub);
    else if (target.kind == ScriptObject::kMultivector)
      r = is_soldered(*target.multivector, sub);
    else if (target.kind == ScriptObject::kMetric)
      r = is_soldered(*target.metric, sub).report;
    else
      r = is_soldered(DifferentialForm::from_scalar(*target.scalar), sub);
    bool want = !c.expect_word || *c.expect_word == "yes";
    out.summary = std::string("soldered=") + (r.ok ? "yes" : "no");
    out.verdict = (r.ok == want) ? "PASS" : "FAIL";
    for (const std::string& w : r.witnesses) out.details.push_back(w);
  } else if (c.kind == "induced") {
    InducedStructure result =
        c.args.size() == 2
            ? induced_structure(*obj(c.args[0]).multivector,
                                *obj(c.args[1]).submanifold)
            : induced_structure(pair(c), *obj(c.args[2]).submanifold);
    std::string kind = result.jacobi_kind ? "jacobi" : "poisson";
    out.summary = "kind=" + kind;
    StructureReport valid = result.jacobi_kind
                                ? is_jacobi(result.pair)
                                : is_poisson(result.pair.bivector);
    bool pass = valid.ok && (!c.expect_word || *c.expect_word == kind);
    out.verdict = pass ? "PASS" : "FAIL";
    if (!valid.ok) out.details.push_back("induced pair invalid: " + valid.witness);
    if (c.expect_word && *c.expect_word != kind)
      out.details.push_back("expected kind " + *c.expect_word);
    out.details.push_back("bivector: " + result.pair.bivector.str());
    out.details.push_back("field: " + result.pair.field.str());
  } else if (c.kind == "poissonize") {
    HomogeneousPoisson hp = poissonize(pair(c));
    StructureReport flat = is_poisson(hp.pi);
    StructureReport hom = is_homogeneous(hp.pi, hp.z);
    out.summary = "chart=" + hp.chart->name();
    out.verdict = (flat.ok && hom.ok) ? "PASS" : "FAIL";
    if (!flat.ok) out.details.push_back("not Poisson: " + flat.witness);
    if (!hom.ok) out.details.push_back("not homogeneous: " + hom.witness);
    out.details.push_back("bivector: " + hp.pi.str());
  } else if (c.kind == "coisotropic") {
    bool verdict = is_coisotropic(*obj(c.args[0]).multivector, c.defining);
    bool want = !c.expect_word || *c.expect_word == "yes";
    out.summary = std::string("coisotropic=") + (verdict ? "yes" : "no");
    out.verdict = (verdict == want) ? "PASS" : "FAIL";
  } else if (c.kind == "conformal-flatten") {
    JacobiPair p = pair(c);
    const NormalizedSubmanifold& sub = *obj(c.args[2]).submanifold;
    Scalar phi = conformal_flatten(p, sub);
    out.summary = "phi = " + phi.str();
    bool vanishes = sub.vanishes_on(phi);
    JacobiPair changed = conformal_change(p, phi);
    bool tangent = true;
    for (const auto& [a, value] : sub.normals())
      if (!sub.vanishes_on(changed.field.component({a}))) tangent = false;
    StructureReport still = is_jacobi(changed);
    out.verdict = (vanishes && tangent && still.ok) ? "PASS" : "FAIL";
    if (!vanishes) out.details.push_back("phi does not vanish on N");
    if (!tangent)
      out.details.push_back("changed field is not tangent to N");
    if (!still.ok)
      out.details.push_back("changed pair is not Jacobi: " + still.witness);
  } else if (c.kind == "involution") {
    const ScriptObject& target = obj(c.args[0]);
    const PolyMap& map = *obj(c.args[1]).involution;
    bool want_preserved = *c.expect_word == "preserved";
    try {
      InvolutionOutcome outcome =
          target.kind == ScriptObject::kForm
              ? involution_fixed_locus_check(*target.form, map)
              : involution_fixed_locus_check(*target.multivector, map);
      out.summary = "preserved; locus " + outcome.locus.locus_str() +
                    "; soldered=" + (outcome.soldering.ok ? "yes" : "no");
      out.verdict = (want_preserved && outcome.soldering.ok) ? "PASS" : "FAIL";
      for (const std::string& w : outcome.soldering.witnesses)
        out.details.push_back(w);
      if (!want_preserved)
        out.details.push_back("expected the involution to break the tensor");
    } catch (const NotPreserved& e) {
      out.summary = "not preserved";
      out.verdict = want_preserved ? "FAIL" : "PASS";
      out.details.push_back("defect: " + e.defect());
    }
  } else if (c.kind == "contact") {
    ContactData data = ContactData::make(*obj(c.args[0]).form,
                                         *obj(c.args[1]).multivector,
                                         *obj(c.args[2]).multivector);
    IdentityReport r = contact_verify(data, obj(*c.at_point).point);
    out.verdict = r.ok ? "PASS" : "FAIL";
    out.details = r.lines;
  } else if (c.kind == "lcs") {
    LcsData data =
        LcsData::make(*obj(c.args[0]).form, *obj(c.args[1]).form,
                      *obj(c.args[2]).multivector, *obj(c.args[3]).multivector);
    IdentityReport r = lcs_verify(data, obj(*c.at_point).point);
    out.verdict = r.ok ? "PASS" : "FAIL";
    out.details = r.lines;
  } else if (c.kind == "symplectization") {
    ContactData data = ContactData::make(*obj(c.args[0]).form,
                                         *obj(c.args[1]).multivector,
                                         *obj(c.args[2]).multivector);
    HomogeneousPoisson hp =
        poissonize(JacobiPair::make(data.bivector, data.reeb));
    IdentityReport r = symplectization_check(data, hp.pi, obj(*c.at_point).point);
    out.verdict = r.ok ? "PASS" : "FAIL";
    out.details = r.lines;
  } else if (c.kind == "alternate-normal") {
    FrameFlags flags = alternate_normal_check(*obj(c.args[0]).multivector,
                                              *obj(c.args[1]).submanifold,
                                              *obj(c.args[2]).frame);
    classify_result(
        c, {"aPc", "dirac"},
        [&](const std::string& n) {
          return n == "aPc" ? flags.apc_tilde : flags.dirac_tilde;
        },
        flags.witnesses, out);
  }
}

}  // namespace

int Report::passes() const {
  int n = 0;
  for (const CheckResult& c : checks) n += c.verdict == "PASS";
  return n;
}
int Report::failures() const {
  int n = 0;
  for (const CheckResult& c : checks) n += c.verdict == "FAIL";
  return n;
}
int Report::errors() const {
  int n = 0;
  for (const CheckResult& c : checks) n += c.verdict == "ERROR";
  return n;
}
int Report::exit_code() const {
  if (errors() > 0) return 2;
  if (failures() > 0) return 1;
  return 0;
}

Report run_script(const CheckScript& script) {
  Report report;
  Executor exec{script};
  for (const ScriptCheck& c : script.checks) {
    CheckResult result;
    result.label = print_check(c);
    auto start = std::chrono::steady_clock::now();
    try {
      exec.run_one(c, result);
    } catch (const EngineError& e) {
      result.verdict = "ERROR";
      result.summary = e.what();
    } catch (const std::exception& e) {
      result.verdict = "ERROR";
      result.summary = e.what();
    }
    auto stop = std::chrono::steady_clock::now();
    result.millis =
        std::chrono::duration<double, std::milli>(stop - start).count();
    report.checks.push_back(std::move(result));
  }
  return report;
}

std::string report_text(const Report& report, bool verbose) {
  std::ostringstream out;
  for (const CheckResult& c : report.checks) {
    out << "[" << c.verdict << "] " << c.label;
    char ms[32];
    std::snprintf(ms, sizeof(ms), " (%.1f ms)", c.millis);
    out << ms << "\n";
    if (!c.summary.empty()) out << "    = " << c.summary << "\n";
    std::vector<std::string> shown;
    if (verbose || c.verdict == "ERROR") {
      shown = c.details;
    } else if (c.verdict == "FAIL") {
      for (const std::string& d : c.details)
        if (d.find(": FAIL") != std::string::npos) shown.push_back(d);
      if (shown.empty() && !c.details.empty()) shown.push_back(c.details[0]);
    }
    for (const std::string& d : shown) out << "    - " << d << "\n";
  }
  out << report.checks.size() << " checks: " << report.passes() << " passed, "
      << report.failures() << " failed, " << report.errors() << " errors\n";
  return out.str();
}

std::string report_json(const Report& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"label", c.label},
                      {"verdict", c.verdict},
                      {"summary", c.summary},
                      {"details", c.details},
                      {"millis", c.millis}});
  }
  nlohmann::json j = {
      {"checks", checks},
      {"summary",
       {{"pass", report.passes()},
        {"fail", report.failures()},
        {"error", report.errors()}}},
      {"exit", report.exit_code()}};
  return j.dump(2);
}

}  // namespace solder
