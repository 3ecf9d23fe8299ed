#include "zbnet/pajek.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "zbnet/errors.hpp"
#include "zbnet/text.hpp"

namespace zbnet {

namespace {

constexpr std::string_view kRoleComment = "% zbnet";

std::string quote(std::string_view label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

void write_links(std::ostream& out, const SparseMatrix& m, std::size_t row_offset, std::size_t col_offset) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto cs = m.row_cols(r);
    auto vs = m.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k)
      out << (r + row_offset + 1) << ' ' << (cs[k] + col_offset + 1) << ' ' << text::format_real(vs[k]) << '\n';
  }
}

void write_labels(std::ostream& out, const NodeSet& nodes, std::size_t offset) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out << (i + offset + 1) << ' ' << quote(nodes.label(static_cast<Index>(i))) << '\n';
}

struct Line {
  std::size_t number;
  std::string text;
};

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line that is neither blank nor a plain comment; role comments are kept.
  bool next(Line& line) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++number_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::string_view t = text::trim(raw);
      if (t.empty()) continue;
      if (t.front() == '%' && !text::starts_with(t, kRoleComment)) continue;
      line = {number_, std::string(t)};
      return true;
    }
    return false;
  }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

// Splits a line into tokens; double-quoted tokens may contain blanks and escapes.
std::vector<std::string> tokenize(const Line& line) {
  std::vector<std::string> out;
  const std::string& s = line.text;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t') {
      ++i;
      continue;
    }
    std::string tok;
    if (s[i] == '"') {
      ++i;
      bool closed = false;
      while (i < s.size()) {
        char c = s[i++];
        if (c == '"') {
          closed = true;
          break;
        }
        if (c == '\\' && i < s.size()) {
          char e = s[i++];
          tok.push_back(e == 'n' ? '\n' : e);
        } else {
          tok.push_back(c);
        }
      }
      if (!closed) throw PajekSyntaxError(line.number, "unterminated quoted label");
    } else {
      while (i < s.size() && s[i] != ' ' && s[i] != '\t') tok.push_back(s[i++]);
    }
    out.push_back(std::move(tok));
  }
  return out;
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) throw PajekSyntaxError(line, "expected an integer, got '" + tok + "'");
  return v;
}

double parse_real(const std::string& tok, std::size_t line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || !std::isfinite(v))
    throw PajekSyntaxError(line, "expected a number, got '" + tok + "'");
  return v;
}

std::string section_name(const std::string& tok) { return text::to_lower_ascii(tok); }

struct VerticesHeader {
  std::size_t n = 0;
  std::optional<std::size_t> n1;
};

VerticesHeader read_vertices_header(LineReader& reader, Line& line) {
  if (!reader.next(line)) throw PajekSyntaxError(0, "empty file, expected *Vertices");
  auto toks = tokenize(line);
  while (section_name(toks[0]) == "*network") {
    if (!reader.next(line)) throw PajekSyntaxError(line.number, "expected *Vertices");
    toks = tokenize(line);
  }
  if (section_name(toks[0]) != "*vertices" || toks.size() < 2 || toks.size() > 3)
    throw PajekSyntaxError(line.number, "expected '*Vertices n' or '*Vertices n n1'");
  VerticesHeader h;
  h.n = parse_count(toks[1], line.number);
  if (toks.size() == 3) {
    h.n1 = parse_count(toks[2], line.number);
    if (*h.n1 > h.n) throw PajekSyntaxError(line.number, "first-mode size exceeds vertex count");
  }
  return h;
}

struct RawNetwork {
  VerticesHeader header;
  std::vector<std::string> labels;
  std::vector<Role> roles;  // from the role comment, if any
  std::string mode_word;
  struct Link {
    std::size_t u, v;
    double w;
    bool edge;
    std::size_t line;
  };
  std::vector<Link> links;
  bool any_arcs_section = false;
  bool any_edges_section = false;
};

RawNetwork read_raw(std::istream& in) {
  LineReader reader(in);
  Line line;
  RawNetwork raw;
  raw.header = read_vertices_header(reader, line);
  const std::size_t n = raw.header.n;
  raw.labels.resize(n);
  std::vector<bool> labelled(n, false);
  enum class Section { Vertices, Arcs, Edges } section = Section::Vertices;
  while (reader.next(line)) {
    if (text::starts_with(line.text, kRoleComment)) {
      auto toks = text::split_ws(line.text);
      if (toks.size() >= 3) {
        raw.mode_word = toks[2];
        for (std::size_t i = 3; i < toks.size(); ++i) {
          auto role = role_from_name(toks[i]);
          if (!role) throw PajekSyntaxError(line.number, "unknown node role '" + toks[i] + "'");
          raw.roles.push_back(*role);
        }
      }
      continue;
    }
    auto toks = tokenize(line);
    if (toks[0].empty()) throw PajekSyntaxError(line.number, "line starts with an empty token");
    if (toks[0].front() == '*') {
      std::string name = section_name(toks[0]);
      if (name == "*arcs") {
        section = Section::Arcs;
        raw.any_arcs_section = true;
      } else if (name == "*edges") {
        section = Section::Edges;
        raw.any_edges_section = true;
      } else {
        throw PajekSyntaxError(line.number, "unsupported section " + toks[0]);
      }
      continue;
    }
    if (section == Section::Vertices) {
      std::size_t id = parse_count(toks[0], line.number);
      if (id < 1 || id > n) throw PajekSyntaxError(line.number, "vertex id out of range");
      if (labelled[id - 1]) throw PajekSyntaxError(line.number, "vertex listed twice");
      labelled[id - 1] = true;
      raw.labels[id - 1] = toks.size() > 1 ? toks[1] : toks[0];
      continue;
    }
    if (toks.size() < 2) throw PajekSyntaxError(line.number, "link needs two endpoints");
    std::size_t u = parse_count(toks[0], line.number);
    std::size_t v = parse_count(toks[1], line.number);
    if (u < 1 || u > n || v < 1 || v > n) throw PajekSyntaxError(line.number, "link endpoint out of range");
    double w = toks.size() > 2 ? parse_real(toks[2], line.number) : 1.0;
    if (!(w > 0.0)) throw PajekSyntaxError(line.number, "link weight must be positive");
    raw.links.push_back({u - 1, v - 1, w, section == Section::Edges, line.number});
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!labelled[i]) raw.labels[i] = std::to_string(i + 1);
  return raw;
}

NodeSetPtr node_set(Role role, std::vector<std::string> labels, std::size_t line) {
  try {
    return make_node_set(role, std::move(labels));
  } catch (const Error& e) {
    throw PajekSyntaxError(line, e.what());
  }
}

TwoModeNetwork to_two_mode(RawNetwork raw) {
  const std::size_t n1 = *raw.header.n1;
  const std::size_t n2 = raw.header.n - n1;
  Role row_role = Role::Works;
  Role col_role = Role::Authors;
  if (raw.mode_word == "two-mode" && raw.roles.size() == 2) {
    row_role = raw.roles[0];
    col_role = raw.roles[1];
  }
  if (row_role == col_role) throw PajekSyntaxError(1, "two-mode network needs two different roles");
  std::vector<std::string> row_labels(raw.labels.begin(), raw.labels.begin() + static_cast<std::ptrdiff_t>(n1));
  std::vector<std::string> col_labels(raw.labels.begin() + static_cast<std::ptrdiff_t>(n1), raw.labels.end());
  NodeSetPtr rows = node_set(row_role, std::move(row_labels), 1);
  NodeSetPtr cols = node_set(col_role, std::move(col_labels), 1);
  std::vector<Arc> arcs;
  for (const auto& l : raw.links) {
    std::size_t u = l.u;
    std::size_t v = l.v;
    if (l.edge && u >= n1 && v < n1) std::swap(u, v);
    if (u >= n1 || v < n1) throw PajekSyntaxError(l.line, "two-mode link must join the two modes");
    arcs.push_back({static_cast<Index>(u), static_cast<Index>(v - n1), l.w});
  }
  return TwoModeNetwork(rows, cols, SparseMatrix::from_arcs(n1, n2, std::move(arcs)));
}

OneModeNetwork to_one_mode(RawNetwork raw) {
  Role role = Role::Authors;
  if (raw.mode_word == "one-mode" && raw.roles.size() == 1) role = raw.roles[0];
  const std::size_t n = raw.header.n;
  NodeSetPtr nodes = node_set(role, std::move(raw.labels), 1);
  const bool directed = raw.any_arcs_section || !raw.any_edges_section;
  std::vector<Arc> arcs;
  for (const auto& l : raw.links) {
    Index u = static_cast<Index>(l.u);
    Index v = static_cast<Index>(l.v);
    if (directed) {
      arcs.push_back({u, v, l.w});
      if (l.edge && u != v) arcs.push_back({v, u, l.w});
    } else {
      if (u == v) throw PajekSyntaxError(l.line, "loops are not allowed in an undirected network");
      arcs.push_back({std::min(u, v), std::max(u, v), l.w});
    }
  }
  return OneModeNetwork(nodes, SparseMatrix::from_arcs(n, n, std::move(arcs)),
                        directed ? OneModeKind::Directed : OneModeKind::Undirected);
}

template <class T, class Parse>
std::vector<T> read_values(std::istream& in, const NodeSetPtr& nodes, Parse parse) {
  LineReader reader(in);
  Line line;
  VerticesHeader h = read_vertices_header(reader, line);
  if (h.n1) throw PajekSyntaxError(line.number, "unexpected first-mode size");
  if (h.n != nodes->size())
    throw PajekSyntaxError(line.number, "file has " + std::to_string(h.n) + " vertices, expected " +
                                            std::to_string(nodes->size()));
  std::vector<T> values;
  values.reserve(h.n);
  while (reader.next(line)) {
    if (line.text.front() == '%') continue;
    if (values.size() == h.n) throw PajekSyntaxError(line.number, "more values than vertices");
    values.push_back(parse(line.text, line.number));
  }
  if (values.size() != h.n) throw PajekSyntaxError(line.number, "fewer values than vertices");
  return values;
}

}  // namespace

void write_pajek(std::ostream& out, const TwoModeNetwork& n) {
  const std::size_t n1 = n.rows().size();
  out << "*Vertices " << (n1 + n.cols().size()) << ' ' << n1 << '\n';
  out << kRoleComment << " two-mode " << role_name(n.rows().role()) << ' ' << role_name(n.cols().role()) << '\n';
  write_labels(out, n.rows(), 0);
  write_labels(out, n.cols(), n1);
  out << "*Arcs\n";
  write_links(out, n.matrix(), 0, n1);
}

void write_pajek(std::ostream& out, const OneModeNetwork& n) {
  out << "*Vertices " << n.nodes().size() << '\n';
  out << kRoleComment << " one-mode " << role_name(n.nodes().role()) << '\n';
  write_labels(out, n.nodes(), 0);
  out << (n.directed() ? "*Arcs\n" : "*Edges\n");
  write_links(out, n.matrix(), 0, 0);
}

void write_partition(std::ostream& out, const Partition& p) {
  out << "*Vertices " << p.classes.size() << '\n';
  for (int c : p.classes) out << c << '\n';
}

void write_vector(std::ostream& out, const NodeVector& v) {
  out << "*Vertices " << v.values.size() << '\n';
  for (double x : v.values) out << text::format_real(x) << '\n';
}

PajekNetwork read_pajek(std::istream& in) {
  RawNetwork raw = read_raw(in);
  if (raw.header.n1) return to_two_mode(std::move(raw));
  return to_one_mode(std::move(raw));
}

TwoModeNetwork read_two_mode(std::istream& in) {
  RawNetwork raw = read_raw(in);
  if (!raw.header.n1) throw PajekSyntaxError(1, "expected a two-mode network ('*Vertices n n1')");
  return to_two_mode(std::move(raw));
}

OneModeNetwork read_one_mode(std::istream& in) {
  RawNetwork raw = read_raw(in);
  if (raw.header.n1) throw PajekSyntaxError(1, "expected a one-mode network");
  return to_one_mode(std::move(raw));
}

Partition read_partition(std::istream& in, NodeSetPtr nodes) {
  auto classes = read_values<int>(in, nodes, [](const std::string& s, std::size_t line) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw PajekSyntaxError(line, "expected a class number");
    if (v < 0) throw PajekSyntaxError(line, "class numbers must be non-negative");
    return v;
  });
  return Partition(std::move(nodes), std::move(classes));
}

NodeVector read_vector(std::istream& in, NodeSetPtr nodes) {
  auto values = read_values<double>(in, nodes, [](const std::string& s, std::size_t line) { return parse_real(s, line); });
  return NodeVector(std::move(nodes), std::move(values));
}

}  // namespace zbnet
