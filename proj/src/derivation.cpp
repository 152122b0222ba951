#include "nilq/derivation.hpp"

#include <cctype>
#include <random>
#include <set>
#include <sstream>

#include "nilq/linalg.hpp"

namespace nilq {
namespace {

constexpr unsigned kSeriesBudget = 256;

/// sum_k scale^k δ^k(p) / k!
Polynomial exp_series(const Derivation& d, const Polynomial& p, const Polynomial& scale) {
  Polynomial out = p;
  Polynomial term = p;
  Polynomial power(1);
  Scalar factorial = 1;
  for (unsigned k = 1;; ++k) {
    term = apply(d, term);
    if (term.is_zero()) return out;
    if (k > kSeriesBudget) throw InputError("exponential series did not terminate; derivation is not locally nilpotent");
    power = power * scale;
    factorial *= k;
    out += power * term * Scalar(1 / factorial);
  }
}

std::string trim_copy(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class PolyParser {
 public:
  PolyParser(const std::vector<std::string>& names, const std::string& text) : names_(names), s_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw InputError("polynomial '" + s_ + "': " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Polynomial expr() {
    Polynomial out;
    bool negative = false;
    if (eat('-'))
      negative = true;
    else
      eat('+');
    Polynomial t = term();
    out = negative ? -t : t;
    while (true) {
      if (eat('+'))
        out += term();
      else if (eat('-'))
        out -= term();
      else
        return out;
    }
  }
  Polynomial term() {
    Polynomial out = factor();
    while (eat('*')) out = out * factor();
    return out;
  }
  unsigned exponent_suffix() {
    if (!eat('^')) return 1;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected exponent");
    return static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
  }
  Polynomial factor() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!eat(')')) error("expected ')'");
      return inner.pow(exponent_suffix());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      return Polynomial(parse_scalar(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return Polynomial::variable(i).pow(exponent_suffix());
      error("unknown variable '" + name + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const std::vector<std::string>& names_;
  std::string s_;
  std::size_t pos_ = 0;
};

/// Splits at '+'/'-' outside parentheses, keeping the sign with each piece.
std::vector<std::pair<int, std::string>> signed_pieces(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  int depth = 0;
  int sign = 1;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-')) {
      if (!trim_copy(cur).empty()) {
        out.emplace_back(sign, trim_copy(cur));
        sign = 1;
      }
      if (c == '-') sign = -sign;
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!trim_copy(cur).empty()) out.emplace_back(sign, trim_copy(cur));
  return out;
}

}  // namespace

PolyRing::PolyRing(std::vector<std::string> n, std::vector<unsigned> w) : names(std::move(n)), weights(std::move(w)) {
  if (weights.empty()) weights.assign(names.size(), 1);
  if (weights.size() != names.size()) throw InputError("ring: weight count does not match variables");
  std::set<std::string> seen;
  for (const auto& x : names)
    if (!seen.insert(x).second) throw InputError("ring: duplicate variable '" + x + "'");
}

std::optional<std::size_t> PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

Derivation::Derivation(PolyRing r) : ring(std::move(r)), images(ring.size()) {}

Derivation::Derivation(PolyRing r, std::vector<Polynomial> imgs) : ring(std::move(r)), images(std::move(imgs)) {
  if (images.size() != ring.size()) throw InputError("derivation: image count does not match ring");
}

Polynomial apply(const Derivation& d, const Polynomial& p) {
  Polynomial out;
  for (std::size_t i = 0; i < d.ring.size(); ++i) {
    if (d.images[i].is_zero() || !p.uses(i)) continue;
    out += d.images[i] * p.derivative(i);
  }
  return out;
}

bool is_triangular(const Derivation& d) {
  for (std::size_t k = 0; k < d.ring.size(); ++k)
    if (d.images[k].span() > k) return false;
  return true;
}

bool is_locally_nilpotent(const Derivation& d, unsigned budget) {
  if (is_triangular(d)) return true;
  for (std::size_t i = 0; i < d.ring.size(); ++i) {
    Polynomial p = Polynomial::variable(i);
    unsigned steps = 0;
    while (!p.is_zero()) {
      if (++steps > budget) return false;
      p = apply(d, p);
    }
  }
  return true;
}

Derivation commutator(const Derivation& a, const Derivation& b) {
  if (!(a.ring == b.ring)) throw InputError("commutator: derivations over different rings");
  Derivation out(a.ring);
  for (std::size_t i = 0; i < a.ring.size(); ++i) out.images[i] = apply(a, b.images[i]) - apply(b, a.images[i]);
  return out;
}

Derivation operator+(const Derivation& a, const Derivation& b) {
  if (!(a.ring == b.ring)) throw InputError("sum: derivations over different rings");
  Derivation out(a.ring);
  for (std::size_t i = 0; i < a.ring.size(); ++i) out.images[i] = a.images[i] + b.images[i];
  return out;
}

Derivation operator*(const Polynomial& c, const Derivation& d) {
  Derivation out(d.ring);
  for (std::size_t i = 0; i < d.ring.size(); ++i) out.images[i] = c * d.images[i];
  return out;
}

Polynomial exp_derivation(const Derivation& d, std::size_t t_var, const Polynomial& p) {
  if (t_var < d.ring.size()) throw InputError("exp_derivation: flow parameter must lie outside the ring");
  if (!is_locally_nilpotent(d)) throw InputError("exp_derivation: derivation is not locally nilpotent");
  return exp_series(d, p, Polynomial::variable(t_var));
}

std::vector<Polynomial> flow(const std::vector<Derivation>& family) {
  if (family.empty()) throw InputError("flow: empty family");
  const PolyRing& ring = family[0].ring;
  Derivation total(ring);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!(family[i].ring == ring)) throw InputError("flow: derivations over different rings");
    total = total + Polynomial::variable(ring.size() + i) * family[i];
  }
  std::vector<Polynomial> out;
  for (std::size_t k = 0; k < ring.size(); ++k) out.push_back(exp_series(total, Polynomial::variable(k), Polynomial(1)));
  return out;
}

unsigned action_degree(const std::vector<Derivation>& family) {
  std::size_t m = family.at(0).ring.size();
  unsigned deg = 0;
  for (const auto& p : flow(family))
    for (const auto& [mono, c] : p.terms()) {
      unsigned e = 0;
      for (std::size_t i = m; i < mono.size(); ++i) e += mono[i];
      deg = std::max(deg, e);
    }
  return deg;
}

bool pairwise_commuting(const std::vector<Derivation>& family) {
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      Derivation c = commutator(family[i], family[j]);
      for (const auto& p : c.images)
        if (!p.is_zero()) return false;
    }
  return true;
}

std::string format_derivation(const Derivation& d) {
  std::string out;
  for (std::size_t i = 0; i < d.ring.size(); ++i) {
    const Polynomial& p = d.images[i];
    if (p.is_zero()) continue;
    std::string coeff = p.to_string(d.ring.names);
    bool negative = false;
    if (p.size() == 1 && coeff[0] == '-') {
      negative = true;
      coeff.erase(0, 1);
    } else if (p.size() > 1) {
      coeff = "(" + coeff + ")";
    }
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += (coeff == "1" ? "" : coeff + "*") + "d/d" + d.ring.names[i];
  }
  return out.empty() ? "0" : out;
}

Polynomial parse_polynomial(const std::vector<std::string>& names, const std::string& text) {
  return PolyParser(names, text).parse();
}

Derivation parse_derivation(const PolyRing& ring, const std::string& text) {
  Derivation d(ring);
  std::string body = trim_copy(text);
  if (body == "0") return d;
  if (body.empty()) throw InputError("empty derivation");
  for (const auto& [sign, piece] : signed_pieces(body)) {
    auto at = piece.rfind("d/d");
    if (at == std::string::npos) throw InputError("derivation term '" + piece + "' lacks d/d<var>");
    std::string var = trim_copy(piece.substr(at + 3));
    auto idx = ring.index_of(var);
    if (!idx) throw InputError("derivation term '" + piece + "': unknown variable '" + var + "'");
    std::string coeff = trim_copy(piece.substr(0, at));
    Polynomial c(1);
    if (!coeff.empty()) {
      if (coeff.back() != '*') throw InputError("derivation term '" + piece + "': expected '*' before d/d");
      coeff.pop_back();
      c = parse_polynomial(ring.names, coeff);
    }
    d.images[*idx] += sign < 0 ? -c : c;
  }
  return d;
}

DerivationFile parse_derivation_file(const std::string& text) {
  std::istringstream in(text);
  std::optional<PolyRing> ring;
  std::map<std::string, unsigned> weights;
  std::vector<std::pair<std::size_t, std::string>> deltas;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) { return InputError("line " + std::to_string(lineno) + ": " + msg); };
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = trim_copy(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream ws(line);
    std::string kw;
    ws >> kw;
    if (kw == "ring") {
      if (ring) throw fail("duplicate ring line");
      std::vector<std::string> names;
      for (std::string w; ws >> w;) names.push_back(w);
      if (names.empty()) throw fail("ring needs at least one variable");
      try {
        ring.emplace(names);
      } catch (const InputError& e) {
        throw fail(e.what());
      }
    } else if (kw == "weights") {
      for (std::string w; ws >> w;) {
        auto eq = w.find('=');
        if (eq == std::string::npos) throw fail("expected name=weight");
        try {
          weights[w.substr(0, eq)] = static_cast<unsigned>(std::stoul(w.substr(eq + 1)));
        } catch (const std::exception&) {
          throw fail("bad weight '" + w + "'");
        }
      }
    } else if (kw == "delta") {
      deltas.emplace_back(lineno, line.substr(5));
    } else {
      throw fail("unknown directive '" + kw + "'");
    }
  }
  if (!ring) throw InputError("line 1: missing 'ring' line");
  for (const auto& [name, w] : weights) {
    auto idx = ring->index_of(name);
    if (!idx) throw InputError("weights: unknown variable '" + name + "'");
    if (w == 0) throw InputError("weights: depth must be positive");
    ring->weights[*idx] = w;
  }
  DerivationFile f{*ring, {}};
  for (const auto& [ln, body] : deltas) {
    lineno = ln;
    auto eq = body.find('=');
    if (eq == std::string::npos) throw fail("expected 'delta <name> = <derivation>'");
    std::string name = trim_copy(body.substr(0, eq));
    if (name.empty()) throw fail("missing derivation name");
    try {
      f.derivations.emplace_back(name, parse_derivation(*ring, body.substr(eq + 1)));
    } catch (const InputError& e) {
      throw fail(e.what());
    }
  }
  if (f.derivations.empty()) throw InputError("no 'delta' lines");
  return f;
}

std::string emit_derivation_file(const DerivationFile& f) {
  std::ostringstream out;
  out << "ring";
  for (const auto& n : f.ring.names) out << " " << n;
  out << "\n";
  bool nondefault = false;
  for (auto w : f.ring.weights) nondefault |= w != 1;
  if (nondefault) {
    out << "weights";
    for (std::size_t i = 0; i < f.ring.size(); ++i) out << " " << f.ring.names[i] << "=" << f.ring.weights[i];
    out << "\n";
  }
  for (const auto& [name, d] : f.derivations) out << "delta " << name << " = " << format_derivation(d) << "\n";
  return out.str();
}

std::optional<std::vector<Polynomial>> slice_function_search(const std::vector<Derivation>& family, unsigned b) {
  if (family.empty()) throw InputError("slice_function_search: empty family");
  if (!pairwise_commuting(family)) throw InputError("slice_function_search: derivations do not commute");
  std::size_t m = family[0].ring.size();
  std::vector<std::size_t> vars(m);
  for (std::size_t i = 0; i < m; ++i) vars[i] = i;
  auto monos = monomials_up_to(vars, b);
  std::vector<std::vector<Polynomial>> images(family.size());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (const auto& mu : monos) images[i].push_back(apply(family[i], Polynomial::monomial(mu, 1)));
  std::vector<Polynomial> out;
  for (std::size_t j = 0; j < family.size(); ++j) {
    SparseSystem sys(monos.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
      std::map<Monomial, SparseSystem::Row, GrLex> rows;
      rows[Monomial{}];
      for (std::size_t c = 0; c < monos.size(); ++c)
        for (const auto& [nu, coef] : images[i][c].terms()) rows[nu][c] += coef;
      for (auto& [nu, row] : rows) {
        Scalar rhs = (nu.empty() && i == j) ? 1 : 0;
        if (!sys.add(std::move(row), rhs)) return std::nullopt;
      }
    }
    auto sol = sys.solution();
    if (!sol) return std::nullopt;
    Polynomial f;
    for (std::size_t c = 0; c < monos.size(); ++c) f.add_term(monos[c], (*sol)[c]);
    out.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j)
      if (apply(family[i], out[j]) != Polynomial(i == j ? 1 : 0))
        throw InconsistencyError("slice_function_search: solution failed re-verification");
  return out;
}

bool verify_slice_functions(const std::vector<Derivation>& family, const std::vector<Polynomial>& fs,
                            std::size_t samples, std::uint64_t seed) {
  std::size_t m = family.at(0).ring.size(), k = family.size();
  auto phi = flow(family);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-10, 10);
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x(m + k);
    for (std::size_t i = 0; i < m; ++i) x[i] = Scalar(dist(rng)) / (1 + (dist(rng) + 10) % 5);
    Vector params(k);
    for (std::size_t j = 0; j < k; ++j) params[j] = fs[j].evaluate(x);
    Vector onto(m + k);
    for (std::size_t j = 0; j < k; ++j) x[m + j] = -params[j];
    for (std::size_t i = 0; i < m; ++i) onto[i] = phi[i].evaluate(x);
    for (std::size_t j = 0; j < k; ++j)
      if (!is_zero(fs[j].evaluate(onto))) return false;
    for (std::size_t j = 0; j < k; ++j) onto[m + j] = params[j];
    for (std::size_t i = 0; i < m; ++i)
      if (phi[i].evaluate(onto) != x[i]) return false;
  }
  return true;
}

std::optional<LevelSetSlice> degree_one_slice(const std::vector<Derivation>& family, unsigned max_degree) {
  if (action_degree(family) > 1) throw InputError("degree_one_slice: the action is not of degree one");
  for (unsigned b = 1; b <= max_degree; ++b)
    if (auto fs = slice_function_search(family, b))
      return LevelSetSlice{*fs, family[0].ring.names, family[0].ring.size() - family.size(), b};
  return std::nullopt;
}

unsigned weighted_degree(const Polynomial& p, const std::vector<unsigned>& weights) {
  unsigned out = 0;
  for (const auto& [m, c] : p.terms()) {
    unsigned d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * (i < weights.size() ? weights[i] : 1);
    out = std::max(out, d);
  }
  return out;
}

DepthReport depth_bound(const Derivation& d, unsigned d_x0, const std::map<std::string, unsigned>& initial) {
  if (d_x0 == 0) throw InputError("depth_bound: d(x0) must be positive");
  if (!is_triangular(d)) throw InputError("depth_bound: derivation is not triangular");
  for (const auto& [name, w] : initial)
    if (!d.ring.index_of(name)) throw InputError("depth_bound: unknown variable '" + name + "'");
  std::vector<unsigned> depth(d.ring.size(), 1);
  for (std::size_t i = 0; i < d.ring.size(); ++i) {
    auto it = initial.find(d.ring.names[i]);
    if (it != initial.end()) depth[i] = it->second;
    if (!d.images[i].is_zero()) depth[i] = std::max(depth[i], weighted_degree(d.images[i], depth) + d_x0);
  }
  DepthReport r;
  for (std::size_t i = 0; i < d.ring.size(); ++i) {
    r.bounds.emplace_back(d.ring.names[i], depth[i]);
    r.max_depth = std::max(r.max_depth, depth[i]);
  }
  r.nonzero_term = r.max_depth - 1;
  return r;
}

Derivation quotient_derivation(const Derivation& d1, const Derivation& d2, const std::string& var) {
  if (!(d1.ring == d2.ring)) throw InputError("quotient_derivation: derivations over different rings");
  auto x = d1.ring.index_of(var);
  if (!x) throw InputError("quotient_derivation: unknown variable '" + var + "'");
  if (d2.images[*x] != Polynomial(1)) throw InputError("quotient_derivation: second derivation must send " + var + " to 1");
  Derivation diff = d1 + (-d1.images[*x]) * d2;
  std::vector<std::string> names;
  std::vector<unsigned> weights;
  std::vector<Polynomial> sub;
  for (std::size_t i = 0; i < d1.ring.size(); ++i) {
    if (i == *x) {
      sub.emplace_back(0);
      continue;
    }
    sub.push_back(Polynomial::variable(names.size()));
    names.push_back(d1.ring.names[i]);
    weights.push_back(d1.ring.weights[i]);
  }
  Derivation out(PolyRing(names, weights));
  for (std::size_t i = 0, k = 0; i < d1.ring.size(); ++i) {
    if (i == *x) continue;
    out.images[k++] = diff.images[i].substitute(sub);
  }
  return out;
}

Derivation quotient_by_unit(const std::vector<Derivation>& family) {
  if (family.size() != 2) throw InputError("quotient_by_unit: expected two derivations");
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t x = 0; x < family[i].ring.size(); ++x)
      if (family[i].images[x] == Polynomial(1))
        return quotient_derivation(family[1 - i], family[i], family[i].ring.names[x]);
  throw InputError("quotient_by_unit: no derivation maps a variable to 1");
}

}  // namespace nilq
