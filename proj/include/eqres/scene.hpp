// Versioned JSON scene files describing a diagonal action together with a
// collection of branches (and, in divisorial mode, marked component pairs),
// plus all load-time validation: schema shape, polynomial grammar,
// faithfulness of the action, primitivity of every parametrization.

#pragma once

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eqres/resgraph.hpp"

namespace eqres {

// Malformed input: bad JSON, schema violations, dangling references.  A
// refinement of input_error (exit code 2), distinct from math_error
// (violated mathematical precondition, exit code 3).
class scene_error : public input_error {
 public:
  explicit scene_error(const std::string& w) : input_error(w) {}
};

struct Scene {
  GroupAction act;
  Mode mode = Mode::kCurves;
  std::vector<std::string> names;
  std::vector<Branch> branches;
  std::vector<DivPair> pairs;  // divisorial mode only
  long bound = 10;
};

// Recursive-descent parser for branch coordinate polynomials in t.
// Grammar (whitespace free between tokens):
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' nat)?
//   atom   := nat ('/' nat)? | 'z' | 't' | '(' expr ')'
// 'z' is the primitive N-th root of unity of the scene's coefficient field.
class PolyExprParser {
 public:
  PolyExprParser(std::string src, FieldPtr zfield)
      : s_(std::move(src)), f_(std::move(zfield)) {}

  CPoly parse() {
    CPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  CPoly expr() {
    CPoly p = term();
    for (;;) {
      skip();
      if (eat('+'))
        p = p + term();
      else if (eat('-'))
        p = p - term();
      else
        return p;
    }
  }

  CPoly term() {
    CPoly p = unary();
    for (;;) {
      skip();
      if (eat('*'))
        p = p * unary();
      else
        return p;
    }
  }

  CPoly unary() {
    skip();
    if (eat('-')) return CycloNum(-1) * unary();
    return power();
  }

  CPoly power() {
    CPoly b = atom();
    skip();
    if (!eat('^')) return b;
    long e = nat();
    CPoly r = constant(CycloNum(1));
    for (long i = 0; i < e; ++i) r = r * b;
    return r;
  }

  CPoly atom() {
    skip();
    if (eat('(')) {
      CPoly p = expr();
      skip();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (eat('z')) return constant(CycloNum::zeta_power(f_, 1));
    if (eat('t')) return CPoly({CycloNum(0), CycloNum(1)});
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      long num = nat();
      if (eat('/')) {
        long den = nat();
        if (den == 0) fail("zero denominator");
        return constant(CycloNum(Rational(num, den)));
      }
      return constant(CycloNum(num));
    }
    fail("expected a rational, 'z', 't', or '('");
    return CPoly();  // unreachable
  }

  long nat() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected a nonnegative integer");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000000L) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }

  static CPoly constant(CycloNum c) { return CPoly({std::move(c)}); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw scene_error("polynomial \"" + s_ + "\", column " +
                      std::to_string(pos_ + 1) + ": " + what);
  }

  std::string s_;
  FieldPtr f_;
  size_t pos_ = 0;
};

inline CPoly parse_poly(const std::string& src, const FieldPtr& zfield) {
  return PolyExprParser(src, zfield).parse();
}

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw scene_error("missing key \"" + key + "\"");
  return *it;
}

inline long integer(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw scene_error(where + " must be an integer");
  return j.get<long>();
}

inline std::vector<long> integer_list(const nlohmann::json& j,
                                      const std::string& where) {
  if (!j.is_array()) throw scene_error(where + " must be an array of integers");
  std::vector<long> v;
  for (const auto& e : j) v.push_back(integer(e, where + " entry"));
  return v;
}

}  // namespace detail

// Builds a Scene from parsed JSON.  Schema problems raise scene_error;
// violated mathematical preconditions (unfaithful action, non-primitive or
// coincident branches) raise math_error.
inline Scene scene_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw scene_error("scene must be a JSON object");
  static const std::set<std::string> known = {
      "version", "group", "chi_x", "chi_y", "modulus",
      "mode",    "bound", "branches", "pairs"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) throw scene_error("unknown key \"" + key + "\"");
  }
  if (detail::integer(detail::field(j, "version"), "\"version\"") != 1)
    throw scene_error("unsupported scene version");

  std::vector<long> orders =
      detail::integer_list(detail::field(j, "group"), "\"group\"");
  if (orders.empty()) throw scene_error("\"group\" must be nonempty");
  for (long n : orders)
    if (n < 1) throw scene_error("group factor orders must be positive");
  AbelianGroup G(orders);

  auto tuple_of = [&](const char* key) {
    std::vector<long> t = detail::integer_list(detail::field(j, key),
                                               std::string("\"") + key + "\"");
    if (t.size() != orders.size())
      throw scene_error(std::string("\"") + key +
                        "\" must have one residue per group factor");
    return Character(G, std::move(t));
  };

  Scene sc;
  sc.act = GroupAction(G, tuple_of("chi_x"), tuple_of("chi_y"));
  if (!sc.act.faithful()) throw math_error("action is not faithful");

  long modulus = G.exponent();
  if (j.count("modulus")) {
    modulus = detail::integer(j.at("modulus"), "\"modulus\"");
    if (modulus < 1) throw scene_error("\"modulus\" must be positive");
  }
  FieldPtr zfield = CycloField::get(modulus);

  if (j.count("mode")) {
    const auto& m = j.at("mode");
    if (!m.is_string()) throw scene_error("\"mode\" must be a string");
    std::string s = m.get<std::string>();
    if (s == "curves")
      sc.mode = Mode::kCurves;
    else if (s == "divisorial")
      sc.mode = Mode::kDivisorial;
    else
      throw scene_error("\"mode\" must be \"curves\" or \"divisorial\"");
  }

  if (j.count("bound")) {
    sc.bound = detail::integer(j.at("bound"), "\"bound\"");
    if (sc.bound < 1) throw scene_error("\"bound\" must be positive");
  }

  const auto& br = detail::field(j, "branches");
  if (!br.is_array() || br.empty())
    throw scene_error("\"branches\" must be a nonempty array");
  for (size_t i = 0; i < br.size(); ++i) {
    const auto& b = br[i];
    if (!b.is_object())
      throw scene_error("branch " + std::to_string(i) + " must be an object");
    for (const auto& [key, value] : b.items()) {
      (void)value;
      if (key != "name" && key != "x" && key != "y")
        throw scene_error("branch " + std::to_string(i) + ": unknown key \"" +
                          key + "\"");
    }
    std::string name = "C" + std::to_string(i);
    if (b.count("name")) {
      if (!b.at("name").is_string())
        throw scene_error("branch " + std::to_string(i) + ": name must be a string");
      name = b.at("name").get<std::string>();
    }
    auto poly_of = [&](const char* key) {
      const auto& p = detail::field(b, key);
      if (!p.is_string())
        throw scene_error("branch " + std::to_string(i) + ": \"" + key +
                          "\" must be a polynomial string");
      return parse_poly(p.get<std::string>(), zfield);
    };
    sc.names.push_back(std::move(name));
    sc.branches.emplace_back(poly_of("x"), poly_of("y"));
  }
  for (size_t i = 0; i < sc.branches.size(); ++i)
    for (size_t k = i + 1; k < sc.branches.size(); ++k)
      if (same_germ(sc.branches[i], sc.branches[k]))
        throw math_error("branches " + std::to_string(i) + " and " +
                         std::to_string(k) + " define the same germ");

  if (j.count("pairs")) {
    const auto& ps = j.at("pairs");
    if (!ps.is_array()) throw scene_error("\"pairs\" must be an array");
    for (const auto& p : ps) {
      std::vector<long> ab = detail::integer_list(p, "pair");
      if (ab.size() != 2) throw scene_error("each pair must have two entries");
      long n = static_cast<long>(sc.branches.size());
      if (ab[0] < 0 || ab[0] >= n || ab[1] < 0 || ab[1] >= n)
        throw scene_error("pair references a branch that does not exist");
      if (ab[0] == ab[1])
        throw scene_error("pair must reference two distinct branches");
      sc.pairs.push_back(DivPair{static_cast<int>(ab[0]), static_cast<int>(ab[1])});
    }
  }
  // A curves-mode scene may still carry pairs: the command line can override
  // the mode, and the pairs are simply unused otherwise.
  if (sc.mode == Mode::kDivisorial && sc.pairs.empty())
    throw scene_error("divisorial mode requires a nonempty \"pairs\" list");
  return sc;
}

inline Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw scene_error("cannot open scene file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw scene_error(path + ": " + e.what());
  }
  try {
    return scene_from_json(j);
  } catch (const scene_error& e) {
    throw scene_error(path + ": " + e.what());
  }
}

}  // namespace eqres
