#include "nilq/lie_file.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace nilq {
namespace {

std::string trim_copy(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

/// Splits on commas outside parentheses.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim_copy(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim_copy(cur));
  return out;
}

std::pair<std::size_t, std::size_t> parse_matrix_unit(const std::string& sym, std::size_t m) {
  if (sym.size() < 6 || sym.rfind("E(", 0) != 0 || sym.back() != ')')
    throw InputError("expected E(i,j), got '" + sym + "'");
  auto parts = split_top_level(sym.substr(2, sym.size() - 3));
  if (parts.size() != 2) throw InputError("expected E(i,j), got '" + sym + "'");
  std::size_t i = 0, j = 0;
  try {
    i = std::stoul(parts[0]);
    j = std::stoul(parts[1]);
  } catch (const std::exception&) {
    throw InputError("bad matrix unit '" + sym + "'");
  }
  if (i < 1 || j < 1 || i > m || j > m) throw InputError("matrix unit '" + sym + "' out of range");
  return {i - 1, j - 1};
}

std::string format_terms(const std::vector<std::pair<Scalar, std::string>>& terms) {
  std::string out;
  for (const auto& [c, sym] : terms) {
    if (is_zero(c)) continue;
    std::string s = to_string(c);
    bool neg = s[0] == '-';
    if (neg) s.erase(0, 1);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    out += (s == "1" ? "" : s + "*") + sym;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

bool LieDocument::has_subspace(const std::string& name) const {
  for (const auto& [n, s] : subspaces)
    if (n == name) return true;
  return false;
}

const Subspace& LieDocument::subspace(const std::string& name) const {
  for (const auto& [n, s] : subspaces)
    if (n == name) return s;
  throw InputError("no subspace named '" + name + "' in algebra '" + algebra.name() + "'");
}

std::string LieDocument::variable_for(const std::string& label) const {
  for (const auto& [l, v] : variables)
    if (l == label) return v;
  std::string out = label;
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::pair<Scalar, std::string>> parse_terms(const std::string& text) {
  std::vector<std::pair<Scalar, std::string>> out;
  std::string s = trim_copy(text);
  if (s.empty()) throw InputError("empty linear combination");
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    int sign = 1;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw InputError("expected '+' or '-' in '" + s + "'");
    }
    first = false;
    std::size_t start = pos;
    int depth = 0;
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == '+' || c == '-') && pos > start) break;
      ++pos;
    }
    std::string term = trim_copy(s.substr(start, pos - start));
    if (term.empty()) throw InputError("missing term in '" + s + "'");
    Scalar c = sign;
    std::string sym = term;
    auto star = term.find('*');
    if (star != std::string::npos) {
      c *= parse_scalar(trim_copy(term.substr(0, star)));
      sym = trim_copy(term.substr(star + 1));
    } else if (std::isdigit(static_cast<unsigned char>(term[0]))) {
      c *= parse_scalar(term);
      sym.clear();
    }
    if (sym.empty() && !is_zero(c)) throw InputError("constant term in '" + s + "'");
    if (!sym.empty()) out.emplace_back(c, sym);
  }
  return out;
}

Vector parse_combination(const LieAlgebra& a, const std::string& text) {
  Vector v(a.dim());
  for (const auto& [c, sym] : parse_terms(text)) {
    auto idx = a.index_of(sym);
    if (!idx) throw InputError("unknown basis label '" + sym + "'");
    v[*idx] += c;
  }
  return v;
}

LieDocument parse_lie(const std::string& text) {
  struct Pending {
    std::size_t line;
    std::string body;
  };
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<Pending> brackets, subs, matrices, vars;
  std::optional<Pending> chart;
  std::size_t header_line = 0;

  std::istringstream in(text);
  std::size_t lineno = 0;
  auto fail = [&](std::size_t line, const std::string& msg) -> InputError {
    return InputError("line " + std::to_string(line) + ": " + msg);
  };
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = trim_copy(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto w = words(line);
    const std::string& kw = w[0];
    if (kw == "algebra") {
      if (header_line) throw fail(lineno, "duplicate algebra header");
      if (w.size() != 4 || w[2] != "dim") throw fail(lineno, "expected 'algebra <name> dim <n>'");
      name = w[1];
      try {
        dim = std::stoul(w[3]);
      } catch (const std::exception&) {
        throw fail(lineno, "bad dimension '" + w[3] + "'");
      }
      if (dim == 0) throw fail(lineno, "dimension must be positive");
      header_line = lineno;
    } else if (kw == "basis") {
      if (!header_line) throw fail(lineno, "basis before algebra header");
      if (!labels.empty()) throw fail(lineno, "duplicate basis line");
      labels.assign(w.begin() + 1, w.end());
      if (labels.size() != dim)
        throw fail(lineno, "basis has " + std::to_string(labels.size()) + " labels, expected " + std::to_string(dim));
      std::set<std::string> seen;
      for (const auto& l : labels) {
        if (!is_identifier(l)) throw fail(lineno, "bad basis label '" + l + "'");
        if (!seen.insert(l).second) throw fail(lineno, "duplicate basis label '" + l + "'");
      }
    } else if (kw[0] == '[') {
      brackets.push_back({lineno, line});
    } else if (kw == "sub") {
      subs.push_back({lineno, line.substr(3)});
    } else if (kw == "matrix") {
      matrices.push_back({lineno, line.substr(6)});
    } else if (kw == "vars") {
      vars.push_back({lineno, line.substr(4)});
    } else if (kw == "chart") {
      if (chart) throw fail(lineno, "duplicate chart line");
      chart = Pending{lineno, line.substr(5)};
    } else {
      throw fail(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!header_line) throw InputError("line 1: missing 'algebra <name> dim <n>' header");
  if (labels.empty()) throw fail(header_line, "missing basis line");

  auto index = [&](const std::string& l) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == l) return i;
    return std::nullopt;
  };

  StructureConstants sc{dim, {}};
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> bracket_line;
  for (const auto& p : brackets) {
    auto close = p.body.find(']');
    auto eq = p.body.find('=');
    if (close == std::string::npos || eq == std::string::npos || eq < close)
      throw fail(p.line, "expected '[A,B] = combination'");
    auto pair = split_top_level(p.body.substr(1, close - 1));
    if (pair.size() != 2) throw fail(p.line, "expected two labels inside brackets");
    auto i = index(pair[0]), j = index(pair[1]);
    if (!i) throw fail(p.line, "unknown basis label '" + pair[0] + "'");
    if (!j) throw fail(p.line, "unknown basis label '" + pair[1] + "'");
    if (*i == *j) throw fail(p.line, "[" + pair[0] + "," + pair[1] + "] must vanish by antisymmetry");
    if (*i > *j) throw fail(p.line, "bracket [" + pair[0] + "," + pair[1] + "] must list the earlier basis label first");
    if (bracket_line.count({*i, *j})) throw fail(p.line, "duplicate bracket [" + pair[0] + "," + pair[1] + "]");
    if (!trim_copy(p.body.substr(close + 1, eq - close - 1)).empty()) throw fail(p.line, "unexpected text before '='");
    Vector v(dim);
    try {
      for (const auto& [c, sym] : parse_terms(p.body.substr(eq + 1))) {
        auto k = index(sym);
        if (!k) throw InputError("unknown basis label '" + sym + "'");
        v[*k] += c;
      }
    } catch (const InputError& e) {
      throw fail(p.line, e.what());
    }
    bracket_line[{*i, *j}] = p.line;
    sc.brackets[{*i, *j}] = v;
  }

  if (auto viol = jacobi_check(sc)) {
    std::size_t line = header_line;
    std::size_t t[3] = {viol->i, viol->j, viol->k};
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = x + 1; y < 3; ++y) {
        auto it = bracket_line.find({t[x], t[y]});
        if (it != bracket_line.end()) line = std::max(line, it->second);
      }
    throw fail(line, "Jacobi identity fails for (" + labels[viol->i] + ", " + labels[viol->j] + ", " +
                         labels[viol->k] + "), residual " + to_string(viol->residual));
  }

  std::optional<LieAlgebra> algebra;
  try {
    algebra.emplace(name, labels, sc);
  } catch (const InputError& e) {
    throw fail(header_line, e.what());
  }
  LieDocument doc{*algebra, {}, {}, std::nullopt};

  for (const auto& p : subs) {
    auto eq = p.body.find('=');
    if (eq == std::string::npos) throw fail(p.line, "expected 'sub <name> = combinations'");
    std::string sname = trim_copy(p.body.substr(0, eq));
    if (!is_identifier(sname)) throw fail(p.line, "bad subspace name '" + sname + "'");
    if (doc.has_subspace(sname)) throw fail(p.line, "duplicate subspace '" + sname + "'");
    std::vector<Vector> vs;
    try {
      for (const auto& part : split_top_level(p.body.substr(eq + 1))) vs.push_back(parse_combination(doc.algebra, part));
    } catch (const InputError& e) {
      throw fail(p.line, e.what());
    }
    doc.subspaces.emplace_back(sname, doc.algebra.span(vs));
  }

  if (!matrices.empty()) {
    MatrixPresentation pres;
    std::vector<bool> seen(dim, false);
    pres.images.assign(dim, Matrix{});
    for (const auto& p : matrices) {
      auto eq = p.body.find('=');
      if (eq == std::string::npos) throw fail(p.line, "expected 'matrix <m> <label> = combination of E(i,j)'");
      auto head = words(p.body.substr(0, eq));
      if (head.size() != 2) throw fail(p.line, "expected 'matrix <m> <label> = ...'");
      std::size_t m = 0;
      try {
        m = std::stoul(head[0]);
      } catch (const std::exception&) {
        throw fail(p.line, "bad matrix size '" + head[0] + "'");
      }
      if (pres.size == 0) pres.size = m;
      if (m != pres.size || m == 0) throw fail(p.line, "inconsistent matrix size");
      auto k = index(head[1]);
      if (!k) throw fail(p.line, "unknown basis label '" + head[1] + "'");
      if (seen[*k]) throw fail(p.line, "duplicate matrix for '" + head[1] + "'");
      seen[*k] = true;
      Matrix img = zero_matrix(m, m);
      try {
        for (const auto& [c, sym] : parse_terms(p.body.substr(eq + 1))) {
          auto [r, col] = parse_matrix_unit(sym, m);
          img[r][col] += c;
        }
      } catch (const InputError& e) {
        throw fail(p.line, e.what());
      }
      pres.images[*k] = std::move(img);
    }
    for (std::size_t k = 0; k < dim; ++k)
      if (!seen[k]) throw fail(matrices.back().line, "no matrix given for '" + labels[k] + "'");
    try {
      doc.algebra.set_presentation(std::move(pres));
    } catch (const InputError& e) {
      throw fail(matrices.front().line, e.what());
    }
  }

  std::set<std::string> var_names;
  for (const auto& p : vars) {
    for (const auto& item : words(p.body)) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw fail(p.line, "expected Label=name, got '" + item + "'");
      std::string l = item.substr(0, eq), v = item.substr(eq + 1);
      if (!index(l)) throw fail(p.line, "unknown basis label '" + l + "'");
      if (!is_identifier(v)) throw fail(p.line, "bad variable name '" + v + "'");
      for (const auto& [ol, ov] : doc.variables)
        if (ol == l) throw fail(p.line, "duplicate variable for '" + l + "'");
      if (!var_names.insert(v).second) throw fail(p.line, "duplicate variable name '" + v + "'");
      doc.variables.emplace_back(l, v);
    }
  }
  std::stable_sort(doc.variables.begin(), doc.variables.end(),
                   [&](const auto& a, const auto& b) { return *index(a.first) < *index(b.first); });

  if (chart) {
    auto w = words(chart->body);
    if (w.empty() || (w[0] != "log" && w[0] != "product")) throw fail(chart->line, "expected 'chart log|product <labels>'");
    ChartSpec spec{w[0] == "log" ? ChartKind::Log : ChartKind::Product, {}};
    std::set<std::string> seen;
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (!index(w[i])) throw fail(chart->line, "unknown basis label '" + w[i] + "'");
      if (!seen.insert(w[i]).second) throw fail(chart->line, "duplicate chart label '" + w[i] + "'");
      spec.labels.push_back(w[i]);
    }
    doc.chart = std::move(spec);
  }
  return doc;
}

std::string emit_lie(const LieDocument& doc) {
  const LieAlgebra& a = doc.algebra;
  std::ostringstream out;
  out << "algebra " << a.name() << " dim " << a.dim() << "\n";
  out << "basis";
  for (const auto& l : a.labels()) out << " " << l;
  out << "\n";
  for (const auto& [ij, v] : a.structure().brackets)
    out << "[" << a.labels()[ij.first] << "," << a.labels()[ij.second] << "] = " << a.format(v) << "\n";
  for (const auto& [n, s] : doc.subspaces) {
    out << "sub " << n << " =";
    if (s.is_zero()) out << " 0";
    for (std::size_t i = 0; i < s.dim(); ++i) out << (i ? ", " : " ") << a.format(s.basis()[i]);
    out << "\n";
  }
  if (const auto& p = a.presentation()) {
    for (std::size_t k = 0; k < a.dim(); ++k) {
      std::vector<std::pair<Scalar, std::string>> terms;
      for (std::size_t r = 0; r < p->size; ++r)
        for (std::size_t c = 0; c < p->size; ++c)
          if (!is_zero(p->images[k][r][c]))
            terms.emplace_back(p->images[k][r][c], "E(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
      out << "matrix " << p->size << " " << a.labels()[k] << " = " << format_terms(terms) << "\n";
    }
  }
  if (!doc.variables.empty()) {
    out << "vars";
    for (const auto& [l, v] : doc.variables) out << " " << l << "=" << v;
    out << "\n";
  }
  if (doc.chart) {
    out << "chart " << (doc.chart->kind == ChartKind::Log ? "log" : "product");
    for (const auto& l : doc.chart->labels) out << " " << l;
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace nilq
