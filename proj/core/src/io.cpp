#include "minsum/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace minsum {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos)
    return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok)
    out.push_back(std::move(tok));
  return out;
}

class line_reader {
 public:
  explicit line_reader(std::istream& in) : in_(in) {}

  // Next line as tokens; throws at end of input.
  std::pair<int, std::vector<std::string>> next(const std::string& what) {
    std::string line;
    if (!std::getline(in_, line))
      throw parse_error(line_ + 1, "unexpected end of file, expected " + what);
    ++line_;
    return {line_, tokens(line)};
  }

  bool has_trailing_content(int* line_out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!trim(line).empty()) {
        *line_out = line_;
        return true;
      }
    }
    return false;
  }

 private:
  std::istream& in_;
  int line_ = 0;
};

long long parse_int(int line, const std::string& tok, const char* what) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw parse_error(line, std::string("bad ") + what + ": '" + tok + "'");
  return value;
}

double parse_float(int line, const std::string& tok, const char* what) {
  double value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw parse_error(line, std::string("bad ") + what + ": '" + tok + "'");
  if (!std::isfinite(value))
    throw parse_error(line, std::string(what) + " must be finite: '" + tok + "'");
  return value;
}

std::vector<double> parse_float_row(int line, const std::vector<std::string>& toks,
                                    std::size_t expect, const char* what) {
  if (toks.size() != expect)
    throw parse_error(line, std::string("expected ") + std::to_string(expect) +
                                " " + what + " values, got " +
                                std::to_string(toks.size()));
  std::vector<double> row(expect);
  for (std::size_t i = 0; i < expect; ++i)
    row[i] = parse_float(line, toks[i], what);
  return row;
}

}  // namespace

graphical_model read_model(std::istream& in) {
  line_reader reader(in);

  {
    const auto [line, toks] = reader.next("magic 'MINSUM1'");
    if (toks.size() != 1 || toks[0] != "MINSUM1")
      throw parse_error(line, "expected magic 'MINSUM1'");
  }

  int num_nodes = 0;
  {
    const auto [line, toks] = reader.next("node count");
    if (toks.size() != 1)
      throw parse_error(line, "expected a single node count");
    const long long n = parse_int(line, toks[0], "node count");
    if (n < 1 || n > (1 << 28))
      throw parse_error(line, "node count out of range");
    num_nodes = static_cast<int>(n);
  }

  std::vector<int> label_counts(num_nodes);
  {
    const auto [line, toks] = reader.next("label counts");
    if (static_cast<int>(toks.size()) != num_nodes)
      throw parse_error(line, "expected " + std::to_string(num_nodes) +
                                  " label counts, got " +
                                  std::to_string(toks.size()));
    for (int u = 0; u < num_nodes; ++u) {
      const long long k = parse_int(line, toks[u], "label count");
      if (k < 1 || k > (1 << 20))
        throw parse_error(line, "label count out of range: " + toks[u]);
      label_counts[u] = static_cast<int>(k);
    }
  }

  int num_edges = 0;
  {
    const auto [line, toks] = reader.next("edge count");
    if (toks.size() != 1)
      throw parse_error(line, "expected a single edge count");
    const long long e = parse_int(line, toks[0], "edge count");
    if (e < 0 || e > (1LL << 32))
      throw parse_error(line, "edge count out of range");
    num_edges = static_cast<int>(e);
  }

  std::vector<edge> edges;
  edges.reserve(num_edges);
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < num_edges; ++e) {
    const auto [line, toks] = reader.next("edge " + std::to_string(e));
    if (toks.size() != 2)
      throw parse_error(line, "expected 'u v'");
    const long long u = parse_int(line, toks[0], "node index");
    const long long v = parse_int(line, toks[1], "node index");
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes)
      throw parse_error(line, "node index out of range");
    if (u >= v)
      throw parse_error(line, "edge endpoints must satisfy u < v");
    if (!seen.insert({static_cast<int>(u), static_cast<int>(v)}).second)
      throw parse_error(line, "duplicate edge");
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }

  std::vector<std::vector<double>> unary(num_nodes);
  for (int u = 0; u < num_nodes; ++u) {
    const auto [line, toks] = reader.next("unary costs of node " + std::to_string(u));
    unary[u] = parse_float_row(line, toks, label_counts[u], "unary cost");
  }

  std::vector<std::vector<double>> pairwise(num_edges);
  for (int e = 0; e < num_edges; ++e) {
    const auto [line, toks] = reader.next("pairwise costs of edge " + std::to_string(e));
    const std::size_t expect = static_cast<std::size_t>(label_counts[edges[e].u]) *
                               label_counts[edges[e].v];
    pairwise[e] = parse_float_row(line, toks, expect, "pairwise cost");
  }

  int trailing = 0;
  if (reader.has_trailing_content(&trailing))
    throw parse_error(trailing, "unexpected trailing content");

  return graphical_model(std::move(label_counts), std::move(edges),
                         std::move(unary), std::move(pairwise));
}

graphical_model read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open model file: " + path);
  return read_model(in);
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_model(std::ostream& out, const graphical_model& m) {
  out << "MINSUM1\n" << m.num_nodes() << "\n";
  for (int u = 0; u < m.num_nodes(); ++u)
    out << (u ? " " : "") << m.labels(u);
  out << "\n" << m.num_edges() << "\n";
  for (const edge& e : m.edges())
    out << e.u << " " << e.v << "\n";
  for (int u = 0; u < m.num_nodes(); ++u) {
    const auto& t = m.unary(u);
    for (std::size_t i = 0; i < t.size(); ++i)
      out << (i ? " " : "") << format_double(t[i]);
    out << "\n";
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& t = m.pairwise(e);
    for (std::size_t i = 0; i < t.size(); ++i)
      out << (i ? " " : "") << format_double(t[i]);
    out << "\n";
  }
}

void write_model_file(const std::string& path, const graphical_model& m) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open output file: " + path);
  write_model(out, m);
  out.flush();
  if (!out)
    throw std::runtime_error("failed writing model file: " + path);
}

void write_trace_csv(std::ostream& out, const solve_trace& trace) {
  out << "normalized_iterations,oracle_calls,dual,wall_time_ms\n";
  char wall[32];
  for (const checkpoint& c : trace.checkpoints) {
    std::snprintf(wall, sizeof wall, "%.3f", c.wall_time_ms);
    out << format_double(c.normalized_iterations) << "," << c.oracle_calls
        << "," << format_double(c.dual) << "," << wall << "\n";
  }
}

void write_trace_csv_file(const std::string& path, const solve_trace& trace) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open output file: " + path);
  write_trace_csv(out, trace);
  out.flush();
  if (!out)
    throw std::runtime_error("failed writing trace file: " + path);
}

}  // namespace minsum
