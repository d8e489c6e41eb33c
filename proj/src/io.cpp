#include "coverpack/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>

#include "coverpack/rng.hpp"

namespace coverpack {

namespace {

// Whitespace-delimited token stream that tracks the 1-based line of the
// current token and its 1-based position in the whole stream, for error
// reporting.
class TokenReader {
public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& tok) {
    tok.clear();
    int c = in_.get();
    while (c != EOF && std::isspace(c)) {
      if (c == '\n') ++line_;
      c = in_.get();
    }
    if (c == EOF) return false;
    token_line_ = line_;
    while (c != EOF && !std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      c = in_.get();
    }
    if (c == '\n') ++line_;
    ++position_;
    return true;
  }

  int line() const { return token_line_; }
  long long position() const { return position_; }

private:
  std::istream& in_;
  int line_ = 1;
  int token_line_ = 1;
  long long position_ = 0;
};

long long read_int(TokenReader& reader, const char* what) {
  std::string tok;
  if (!reader.next(tok)) throw TruncatedFile(std::string("file ended before ") + what);
  long long value = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || end != tok.data() + tok.size())
    throw ParseError(reader.line(),
                     "expected an integer for " + std::string(what) + ", got '" + tok + "'");
  return value;
}

double read_real(TokenReader& reader, const char* what) {
  std::string tok;
  if (!reader.next(tok)) throw TruncatedFile(std::string("file ended before ") + what);
  double value = 0.0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || end != tok.data() + tok.size())
    throw ParseError(reader.line(),
                     "expected a number for " + std::string(what) + ", got '" + tok + "'");
  return value;
}

void expect_end(TokenReader& reader) {
  std::string tok;
  if (reader.next(tok))
    throw ParseError(reader.line(), "unexpected trailing token '" + tok + "'");
}

void check_cost_model(const CostModel& model) {
  switch (model.kind) {
    case CostModel::Kind::unweighted:
      return;
    case CostModel::Kind::discrete:
      if (model.a != std::floor(model.a) || model.b != std::floor(model.b))
        throw InvalidInstance("discrete cost bounds must be integers");
      if (!(model.a > 0.0) || !(model.a < model.b))
        throw InvalidInstance("discrete cost bounds need 0 < a < b");
      return;
    case CostModel::Kind::continuous:
      if (!(model.a < model.b)) throw InvalidInstance("continuous cost bounds need a < b");
      return;
  }
  throw InvalidInstance("unknown cost model");
}

}  // namespace

Instance generate(const DistributionSpec& spec, GenStats* stats) {
  if (spec.m < 2) throw InvalidInstance("generator needs at least two sets");
  if (spec.n < 1) throw InvalidInstance("generator needs at least one element");
  if (!(spec.rho > 0.0) || !(spec.rho < 1.0))
    throw InvalidInstance("density must lie strictly inside (0,1)");
  check_cost_model(spec.cost_model);

  Rng rng(spec.seed);
  std::vector<double> costs(spec.m, 1.0);
  switch (spec.cost_model.kind) {
    case CostModel::Kind::unweighted:
      break;
    case CostModel::Kind::discrete:
      for (double& c : costs)
        c = static_cast<double>(rng.uniform_int(static_cast<long long>(spec.cost_model.a),
                                                static_cast<long long>(spec.cost_model.b)));
      break;
    case CostModel::Kind::continuous:
      for (double& c : costs) c = rng.uniform(spec.cost_model.a, spec.cost_model.b);
      break;
  }

  std::vector<std::vector<int>> sets(spec.m);
  std::vector<int> degree(spec.n, 0);
  for (int i = 0; i < spec.m; ++i)
    for (int e = 0; e < spec.n; ++e)
      if (rng.bernoulli(spec.rho)) {
        sets[i].push_back(e);
        ++degree[e];
      }
  if (stats) {
    stats->pre_repair_degrees = degree;
    stats->pre_repair_memberships = 0;
    for (int d : degree) stats->pre_repair_memberships += d;
  }
  for (int e = 0; e < spec.n; ++e) {
    while (degree[e] < 2) {
      const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.m)));
      auto it = std::lower_bound(sets[i].begin(), sets[i].end(), e);
      if (it != sets[i].end() && *it == e) continue;
      sets[i].insert(it, e);
      ++degree[e];
    }
  }
  return build_instance(std::move(sets), std::move(costs), spec.n);
}

Instance hard_instance(int n, double eps) {
  if (n < 1) throw InvalidInstance("hard instance needs n >= 1");
  if (!(eps > 0.0)) throw InvalidInstance("hard instance needs eps > 0");
  std::vector<std::vector<int>> sets;
  std::vector<double> costs;
  sets.reserve(n + 1);
  for (int i = 0; i < n; ++i) {
    sets.push_back({i});
    costs.push_back(1.0 / (i + 1));
  }
  std::vector<int> all(n);
  for (int e = 0; e < n; ++e) all[e] = e;
  sets.push_back(std::move(all));
  costs.push_back(1.0 + eps);
  return build_instance(std::move(sets), std::move(costs), n);
}

Instance parse_native(std::istream& in) {
  TokenReader reader(in);
  const long long m = read_int(reader, "the set count");
  const long long n = read_int(reader, "the element count");
  if (m < 0 || n < 0) throw ParseError(reader.line(), "negative header count");
  std::vector<std::vector<int>> sets(m);
  std::vector<double> costs(m);
  for (long long i = 0; i < m; ++i) {
    costs[i] = read_real(reader, "a set cost");
    const long long k = read_int(reader, "a set size");
    if (k < 0) throw ParseError(reader.line(), "negative set size");
    sets[i].reserve(k);
    for (long long t = 0; t < k; ++t) {
      const long long e = read_int(reader, "an element index");
      if (e < 0 || e >= n)
        throw IndexOutOfRange(reader.position(), "element index " + std::to_string(e) +
                                                     " outside universe of size " +
                                                     std::to_string(n) + " at token " +
                                                     std::to_string(reader.position()));
      sets[i].push_back(static_cast<int>(e));
    }
  }
  expect_end(reader);
  return build_instance(std::move(sets), std::move(costs), static_cast<int>(n));
}

void write_native(const Instance& inst, std::ostream& out) {
  out << inst.num_sets << ' ' << inst.num_elements << '\n';
  for (int i = 0; i < inst.num_sets; ++i) {
    out << format_exact(inst.costs[i]) << ' ' << inst.sets[i].size();
    for (int e : inst.sets[i]) out << ' ' << e;
    out << '\n';
  }
}

Instance parse_orlib(std::istream& in) {
  TokenReader reader(in);
  const long long rows = read_int(reader, "the row count");
  const long long cols = read_int(reader, "the column count");
  if (rows < 0 || cols < 0) throw ParseError(reader.line(), "negative header count");
  std::vector<double> costs(cols);
  for (long long i = 0; i < cols; ++i) costs[i] = read_real(reader, "a column cost");
  std::vector<std::vector<int>> sets(cols);
  for (long long r = 0; r < rows; ++r) {
    const long long k = read_int(reader, "a row's column count");
    if (k < 0) throw ParseError(reader.line(), "negative column count");
    for (long long t = 0; t < k; ++t) {
      const long long c = read_int(reader, "a column index");
      if (c < 1 || c > cols)
        throw IndexOutOfRange(reader.position(), "column index " + std::to_string(c) +
                                                     " outside 1.." + std::to_string(cols) +
                                                     " at token " +
                                                     std::to_string(reader.position()));
      sets[c - 1].push_back(static_cast<int>(r));
    }
  }
  expect_end(reader);
  return build_instance(std::move(sets), std::move(costs), static_cast<int>(rows));
}

void write_orlib(const Instance& inst, std::ostream& out) {
  out << inst.num_elements << ' ' << inst.num_sets << '\n';
  for (int i = 0; i < inst.num_sets; ++i)
    out << format_exact(inst.costs[i]) << (i + 1 == inst.num_sets ? '\n' : ' ');
  if (inst.num_sets == 0) out << '\n';
  for (int e = 0; e < inst.num_elements; ++e) {
    out << inst.neighbourhoods[e].size();
    for (int i : inst.neighbourhoods[e]) out << ' ' << i + 1;
    out << '\n';
  }
}

std::string format_exact(double x) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    double back = 0.0;
    const char* end = buf + std::strlen(buf);
    auto [ptr, ec] = std::from_chars(buf, end, back);
    if (ec == std::errc() && ptr == end && back == x) break;
  }
  return buf;
}

CostModel parse_cost_model(const std::string& text) {
  CostModel model;
  if (text == "unweighted") return model;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (head == "discrete")
    model.kind = CostModel::Kind::discrete;
  else if (head == "continuous")
    model.kind = CostModel::Kind::continuous;
  else
    throw ParseError(0, "unknown cost model '" + text + "'");
  if (colon == std::string::npos)
    throw ParseError(0, "cost model '" + head + "' needs bounds a,b");
  const std::string rest = text.substr(colon + 1);
  const auto comma = rest.find(',');
  if (comma == std::string::npos) throw ParseError(0, "cost model bounds must be a,b");
  auto parse = [&](const std::string& tok, const char* what) {
    double value = 0.0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || end != tok.data() + tok.size())
      throw ParseError(0, std::string(what) + " expects a number, got '" + tok + "'");
    return value;
  };
  model.a = parse(rest.substr(0, comma), "cost bound a");
  model.b = parse(rest.substr(comma + 1), "cost bound b");
  return model;
}

}  // namespace coverpack
