/*
 * Copyright 2026 The norml Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "norml/trace/expr.hpp"

#include <cctype>
#include <numeric>
#include <regex>
#include <sstream>

#include "norml/error.hpp"

namespace norml {

const char* group_name(GroupKind g) {
  return g == GroupKind::kAdditive ? "a1" : "gm";
}

GroupKind parse_group(const std::string& s) {
  if (s == "a1" || s == "A1" || s == "additive") return GroupKind::kAdditive;
  if (s == "gm" || s == "Gm" || s == "multiplicative") return GroupKind::kMultiplicative;
  throw Error(ErrorCode::kParseError, "unknown group '" + s + "'");
}

namespace ex {

namespace {
std::shared_ptr<Expr> make(ExprKind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

void require_integral(const CycNumber& alpha) {
  for (const auto& c : alpha.coords()) {
    if (c.get_den() != 1) {
      throw Error(ErrorCode::kTwistNotIntegral, "twist " + alpha.to_string() + " not in Z[zeta]");
    }
  }
}
}  // namespace

ExprPtr constant() { return make(ExprKind::kConstant); }

ExprPtr twist(const CycNumber& alpha, int weight) {
  require_integral(alpha);
  auto e = make(ExprKind::kTwistDeg);
  e->alpha = alpha;
  e->weight = weight;
  return e;
}

ExprPtr artin_schreier(u64 a, BasePoly g) {
  auto e = make(ExprKind::kArtinSchreier);
  e->psi_a = a;
  e->poly = std::move(g);
  return e;
}

ExprPtr kummer(const MultiplicativeCharacter& chi, BasePoly g) {
  auto e = make(ExprKind::kKummer);
  e->chi = chi;
  e->poly = std::move(g);
  return e;
}

ExprPtr count(BasePoly g) {
  auto e = make(ExprKind::kPushforwardCount);
  e->poly = std::move(g);
  return e;
}

ExprPtr kernel(BasePoly g) {
  auto e = make(ExprKind::kPushforwardKernel);
  e->poly = std::move(g);
  return e;
}

ExprPtr punctual(u64 p, int degree, u64 encoding, const CycNumber& alpha) {
  require_integral(alpha);
  auto e = make(ExprKind::kPunctual);
  e->point_p = p;
  e->point_degree = degree;
  e->point = encoding;
  e->alpha = alpha;
  return e;
}

ExprPtr induced_kummer(int d, const MultiplicativeCharacter& chi) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "induced degree must be >= 1");
  auto e = make(ExprKind::kInducedKummer);
  e->induced_degree = d;
  e->chi = chi;
  return e;
}

ExprPtr shift(ExprPtr c) {
  auto e = make(ExprKind::kShift);
  e->children.push_back(std::move(c));
  return e;
}

ExprPtr sum(std::vector<ExprPtr> es) {
  auto e = make(ExprKind::kSum);
  e->children = std::move(es);
  return e;
}

ExprPtr product(std::vector<ExprPtr> es) {
  auto e = make(ExprKind::kProduct);
  e->children = std::move(es);
  return e;
}

}  // namespace ex

namespace {

struct Node {
  std::string atom;
  std::vector<Node> list;
  bool is_list = false;
};

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}

  Node read() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    Node n;
    if (s_[pos_] == '(') {
      ++pos_;
      n.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= s_.size()) fail("missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        n.list.push_back(read());
      }
      return n;
    }
    if (s_[pos_] == ')') fail("unexpected ')'");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')') {
      ++pos_;
    }
    n.atom = s_.substr(start, pos_ - start);
    return n;
  }

  void expect_end() {
    skip();
    if (pos_ != s_.size()) fail("trailing input");
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kParseError, why + " at offset " + std::to_string(pos_));
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorCode::kParseError, why); }

const std::string& head(const Node& n) {
  if (!n.is_list || n.list.empty() || n.list[0].is_list) bad("expected (operator ...)");
  return n.list[0].atom;
}

std::int64_t to_int(const Node& n) {
  if (n.is_list) bad("expected integer");
  try {
    std::size_t used = 0;
    const long long v = std::stoll(n.atom, &used);
    if (used != n.atom.size()) bad("bad integer '" + n.atom + "'");
    return v;
  } catch (const std::logic_error&) {
    bad("bad integer '" + n.atom + "'");
  }
}

BasePoly to_poly(const Node& n) {
  if (head(n) != "poly") bad("expected (poly ...)");
  BasePoly g;
  for (std::size_t i = 1; i < n.list.size(); ++i) g.push_back(to_int(n.list[i]));
  return g;
}

CycNumber to_alpha(const Node& n) {
  if (!n.is_list) return CycNumber(static_cast<long>(to_int(n)));
  const std::string& h = head(n);
  if (h == "zeta" && n.list.size() == 3) {
    const auto M = to_int(n.list[1]);
    if (M < 1) bad("zeta conductor must be positive");
    return CycNumber::zeta(static_cast<u64>(M), to_int(n.list[2]));
  }
  if (h == "cyc" && n.list.size() >= 3) {
    const auto M = to_int(n.list[1]);
    if (M < 1) bad("cyc conductor must be positive");
    std::vector<std::int64_t> raw;
    for (std::size_t i = 2; i < n.list.size(); ++i) raw.push_back(to_int(n.list[i]));
    return CycNumber::from_powers(static_cast<u64>(M), raw);
  }
  bad("expected integer, (zeta M k) or (cyc M c0 c1 ...)");
}

MultiplicativeCharacter to_chi(const Node& n) {
  if (head(n) != "chi" || n.list.size() != 2 || n.list[1].is_list) bad("expected (chi e=N@p^d)");
  return parse_multiplicative(n.list[1].atom);
}

void point_literal(const std::string& s, u64* enc, u64* p, int* d) {
  static const std::regex re(R"(^a=(\d+)@(\d+)(?:\^(\d+))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) bad("expected a=<enc>@<p>^<d>, got '" + s + "'");
  *enc = std::stoull(m[1]);
  *p = std::stoull(m[2]);
  *d = m[3].matched ? std::stoi(m[3]) : 1;
}

ExprPtr build(const Node& n) {
  const std::string& h = head(n);
  const std::size_t argc = n.list.size() - 1;
  auto need = [&](std::size_t k) {
    if (argc != k) bad("'" + h + "' takes " + std::to_string(k) + " argument(s)");
  };
  if (h == "const") {
    need(0);
    return ex::constant();
  }
  if (h == "twist") {
    if (argc != 1 && argc != 2) bad("'twist' takes alpha and an optional weight");
    const int w = argc == 2 ? static_cast<int>(to_int(n.list[2])) : 0;
    return ex::twist(to_alpha(n.list[1]), w);
  }
  if (h == "artin-schreier" || h == "as") {
    need(2);
    const Node& psi = n.list[1];
    if (head(psi) != "psi" || psi.list.size() != 2 || psi.list[1].is_list) bad("expected (psi a=N)");
    static const std::regex re(R"(^a=(\d+)$)");
    std::smatch m;
    if (!std::regex_match(psi.list[1].atom, m, re)) bad("expected a=N in psi");
    return ex::artin_schreier(std::stoull(m[1]), to_poly(n.list[2]));
  }
  if (h == "kummer") {
    need(2);
    return ex::kummer(to_chi(n.list[1]), to_poly(n.list[2]));
  }
  if (h == "count" || h == "pushforward") {
    need(1);
    return ex::count(to_poly(n.list[1]));
  }
  if (h == "kernel") {
    need(1);
    return ex::kernel(to_poly(n.list[1]));
  }
  if (h == "punctual") {
    if (argc != 1 && argc != 2) bad("'punctual' takes a point and an optional alpha");
    if (n.list[1].is_list) bad("expected a=<enc>@<p>^<d>");
    u64 enc = 0, p = 0;
    int d = 1;
    point_literal(n.list[1].atom, &enc, &p, &d);
    return ex::punctual(p, d, enc, argc == 2 ? to_alpha(n.list[2]) : CycNumber(1L));
  }
  if (h == "induced-kummer") {
    need(2);
    return ex::induced_kummer(static_cast<int>(to_int(n.list[1])), to_chi(n.list[2]));
  }
  if (h == "shift") {
    need(1);
    return ex::shift(build(n.list[1]));
  }
  if (h == "sum" || h == "+" || h == "product" || h == "*") {
    if (argc == 0) bad("'" + h + "' needs at least one argument");
    std::vector<ExprPtr> kids;
    for (std::size_t i = 1; i < n.list.size(); ++i) kids.push_back(build(n.list[i]));
    return (h == "sum" || h == "+") ? ex::sum(std::move(kids)) : ex::product(std::move(kids));
  }
  bad("unknown operator '" + h + "'");
}

std::string poly_str(const BasePoly& g) {
  std::string s = "(poly";
  for (auto c : g) s += " " + std::to_string(c);
  return s + ")";
}

std::string alpha_str(const CycNumber& a) {
  CycNumber v = a.normalized();
  if (v.is_rational()) return v.rational_value().get_str();
  std::string s = "(cyc " + std::to_string(v.conductor());
  for (const auto& c : v.coords()) s += " " + c.get_str();
  return s + ")";
}

}  // namespace

ExprPtr parse_expr(const std::string& text) {
  Reader r(text);
  Node n = r.read();
  r.expect_end();
  return build(n);
}

std::string to_sexpr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kConstant: return "(const)";
    case ExprKind::kTwistDeg:
      return "(twist " + alpha_str(e.alpha) + " " + std::to_string(e.weight) + ")";
    case ExprKind::kArtinSchreier:
      return "(artin-schreier (psi a=" + std::to_string(e.psi_a) + ") " + poly_str(e.poly) + ")";
    case ExprKind::kKummer: return "(kummer (chi " + e.chi.to_string().substr(4) + ") " + poly_str(e.poly) + ")";
    case ExprKind::kPushforwardCount: return "(count " + poly_str(e.poly) + ")";
    case ExprKind::kPushforwardKernel: return "(kernel " + poly_str(e.poly) + ")";
    case ExprKind::kPunctual: {
      std::string s = "(punctual a=" + std::to_string(e.point) + "@" + std::to_string(e.point_p) +
                      "^" + std::to_string(e.point_degree);
      if (e.alpha != CycNumber(1L)) s += " " + alpha_str(e.alpha);
      return s + ")";
    }
    case ExprKind::kInducedKummer:
      return "(induced-kummer " + std::to_string(e.induced_degree) + " (chi " +
             e.chi.to_string().substr(4) + "))";
    case ExprKind::kShift: return "(shift " + to_sexpr(*e.children[0]) + ")";
    case ExprKind::kSum:
    case ExprKind::kProduct: {
      std::string s = e.kind == ExprKind::kSum ? "(sum" : "(product";
      for (const auto& c : e.children) s += " " + to_sexpr(*c);
      return s + ")";
    }
  }
  return "";
}

bool is_integral(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kConstant:
    case ExprKind::kPushforwardCount:
    case ExprKind::kPushforwardKernel: return true;
    case ExprKind::kTwistDeg:
    case ExprKind::kPunctual: return e.alpha.is_integer();
    case ExprKind::kArtinSchreier: return e.psi_a == 0;
    case ExprKind::kKummer:
    case ExprKind::kInducedKummer: return e.chi.order() <= 2;
    case ExprKind::kShift:
    case ExprKind::kSum:
    case ExprKind::kProduct:
      for (const auto& c : e.children) {
        if (!is_integral(*c)) return false;
      }
      return true;
  }
  return false;
}

u64 expr_conductor(const Expr& e, u64 p) {
  switch (e.kind) {
    case ExprKind::kConstant:
    case ExprKind::kPushforwardCount:
    case ExprKind::kPushforwardKernel: return 1;
    case ExprKind::kTwistDeg:
    case ExprKind::kPunctual: return e.alpha.normalized().conductor();
    case ExprKind::kArtinSchreier: return e.psi_a == 0 ? 1 : p;
    case ExprKind::kKummer:
    case ExprKind::kInducedKummer: return e.chi.order();
    case ExprKind::kShift:
    case ExprKind::kSum:
    case ExprKind::kProduct: {
      u64 M = 1;
      for (const auto& c : e.children) M = std::lcm(M, expr_conductor(*c, p));
      return M;
    }
  }
  return 1;
}

int expr_parameter_degree(const Expr& e, int m0) {
  int L = m0;
  switch (e.kind) {
    case ExprKind::kKummer: L = std::lcm(L, e.chi.d0); break;
    case ExprKind::kInducedKummer: L = std::lcm(L, e.chi.d0); break;
    case ExprKind::kPunctual: L = std::lcm(L, e.point_degree); break;
    default: break;
  }
  for (const auto& c : e.children) L = std::lcm(L, expr_parameter_degree(*c, m0));
  return L;
}

int declared_weight(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kTwistDeg: return e.weight;
    case ExprKind::kShift: return declared_weight(*e.children[0]);
    case ExprKind::kSum: {
      int w = 0;
      for (const auto& c : e.children) w = std::max(w, declared_weight(*c));
      return w;
    }
    case ExprKind::kProduct: {
      int w = 0;
      for (const auto& c : e.children) w += declared_weight(*c);
      return w;
    }
    default: return 0;
  }
}

}  // namespace norml
