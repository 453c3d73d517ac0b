#include "lsrank/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lsrank/errors.hpp"

namespace lsrank {

namespace {

double parse_number(const std::string& s, int line) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("malformed numeric field '" + s + "' at line " +
                         std::to_string(line),
                     line);
  }
  if (pos != s.size() || !std::isfinite(v))
    throw ParseError("malformed numeric field '" + s + "' at line " +
                         std::to_string(line),
                     line);
  return v;
}

std::int64_t parse_int(const std::string& s, int line) {
  double v = parse_number(s, line);
  auto iv = static_cast<std::int64_t>(v);
  if (static_cast<double>(iv) != v)
    throw ParseError("expected integer field '" + s + "' at line " +
                         std::to_string(line),
                     line);
  return iv;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  return out;
}

int intern(std::unordered_map<std::string, int>& table,
           std::vector<std::string>& labels, const std::string& name) {
  auto [it, inserted] = table.emplace(name, static_cast<int>(labels.size()));
  if (inserted) labels.push_back(name);
  return it->second;
}

std::string format_y(double y) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", y);
  return buf;
}

LabeledPairwiseData assemble(int n, const std::map<std::int64_t,
                                                   std::pair<std::int64_t, double>>& wy,
                             std::vector<std::string> labels,
                             std::string source) {
  if (n < 2 || wy.empty())
    throw std::runtime_error("degenerate dataset: fewer than 2 items or no edges");
  std::vector<std::pair<EdgeKey, std::int64_t>> edges;
  std::map<std::int64_t, double> y;
  for (const auto& [k, p] : wy) {
    edges.emplace_back(edge_from_index(k, n), p.first);
    y[k] = p.second;
  }
  return LabeledPairwiseData{PairwiseData{MultiGraph(n, edges), std::move(y)},
                             std::move(labels), std::move(source)};
}

}  // namespace

RatingTriplets read_ratings_csv(std::istream& in, const std::string& source) {
  RatingTriplets t;
  std::unordered_map<std::string, int> users, items;
  std::map<std::pair<int, int>, std::size_t> seen;  // (user, item) -> entry idx
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    if (fields.size() != 3)
      throw ParseError("expected 3 comma-separated fields at line " +
                           std::to_string(lineno) + " of " + source,
                       lineno);
    if (lineno == 1) {
      // Tolerate a header row.
      try {
        parse_number(fields[2], lineno);
      } catch (const ParseError&) {
        continue;
      }
    }
    double r = parse_number(fields[2], lineno);
    int u = intern(users, t.user_labels, fields[0]);
    int i = intern(items, t.item_labels, fields[1]);
    auto key = std::make_pair(u, i);
    auto it = seen.find(key);
    if (it != seen.end()) {
      std::cerr << "warning: duplicate rating for (" << fields[0] << ", "
                << fields[1] << ") at line " << lineno << "; keeping last\n";
      t.entries[it->second].rating = r;
    } else {
      seen[key] = t.entries.size();
      t.entries.push_back({u, i, r});
    }
  }
  return t;
}

RatingTriplets read_ratings_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_ratings_csv(in, path);
}

LabeledPairwiseData ratings_to_pairwise(const RatingTriplets& t,
                                        int min_reviews) {
  if (min_reviews < 0)
    throw std::invalid_argument("ratings_to_pairwise: min_reviews >= 0");
  std::vector<int> item_count(t.item_labels.size(), 0);
  for (const auto& e : t.entries) ++item_count[e.item];

  // Surviving items keep their relative order as new vertex ids.
  std::vector<int> remap(t.item_labels.size(), -1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < t.item_labels.size(); ++i)
    if (item_count[i] >= min_reviews) {
      remap[i] = static_cast<int>(labels.size());
      labels.push_back(t.item_labels[i]);
    }
  int n = static_cast<int>(labels.size());
  if (n < 2)
    throw std::runtime_error(
        "degenerate dataset: fewer than 2 items survive the review filter");

  // Per-user surviving reviews.
  std::vector<std::vector<std::pair<int, double>>> by_user(t.user_labels.size());
  for (const auto& e : t.entries)
    if (remap[e.item] >= 0) by_user[e.user].push_back({remap[e.item], e.rating});

  std::map<std::int64_t, std::pair<std::int64_t, double>> wy;  // k -> (w, sum)
  for (auto& reviews : by_user) {
    std::sort(reviews.begin(), reviews.end());
    for (std::size_t a = 0; a < reviews.size(); ++a)
      for (std::size_t b = a + 1; b < reviews.size(); ++b) {
        auto [i, ri] = reviews[a];
        auto [j, rj] = reviews[b];
        std::int64_t k = edge_index(i, j, n).k;
        auto& slot = wy[k];
        slot.first += 1;
        slot.second += rj - ri;  // head minus tail
      }
  }
  for (auto& [k, p] : wy) p.second /= static_cast<double>(p.first);
  return assemble(n, wy, std::move(labels), "ratings");
}

LabeledPairwiseData read_edge_list(std::istream& in, const std::string& source) {
  std::unordered_map<std::string, int> table;
  std::vector<std::string> labels;
  struct Raw {
    std::string a, b;
    std::int64_t w;
    double y;
    int line;
  };
  std::vector<Raw> raws;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 4)
      throw ParseError("expected 4 tab-separated fields at line " +
                           std::to_string(lineno) + " of " + source,
                       lineno);
    std::int64_t w = parse_int(fields[2], lineno);
    if (w <= 0)
      throw ParseError("weight must be positive at line " +
                           std::to_string(lineno),
                       lineno);
    double y = parse_number(fields[3], lineno);
    if (fields[0] == fields[1])
      throw ParseError("self-edge at line " + std::to_string(lineno), lineno);
    raws.push_back({fields[0], fields[1], w, y, lineno});
    intern(table, labels, fields[0]);
    intern(table, labels, fields[1]);
  }
  int n = static_cast<int>(labels.size());
  if (n < 2 || raws.empty())
    throw std::runtime_error("degenerate dataset: empty edge list in " + source);

  std::map<std::int64_t, std::pair<std::int64_t, double>> wy;
  for (const auto& r : raws) {
    int ia = table[r.a], ib = table[r.b];
    EdgeKey e = edge_index(ia, ib, n);
    double y = ia < ib ? r.y : -r.y;  // y always stored head-minus-tail
    auto it = wy.find(e.k);
    if (it == wy.end()) {
      wy[e.k] = {r.w, y};
    } else {
      std::cerr << "warning: duplicate edge {" << r.a << ", " << r.b
                << "} at line " << r.line << "; merging by weighted mean\n";
      auto& [w0, y0] = it->second;
      y0 = (y0 * w0 + y * r.w) / static_cast<double>(w0 + r.w);
      w0 += r.w;
    }
  }
  return assemble(n, wy, std::move(labels), source);
}

LabeledPairwiseData read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_edge_list(in, path);
}

void write_edge_list(const LabeledPairwiseData& data, std::ostream& out) {
  int n = data.data.graph.n();
  out << "# label_i\tlabel_j\tw\ty\n";
  for (const auto& [k, w] : data.data.graph.edges()) {
    EdgeKey e = edge_from_index(k, n);
    out << data.labels[e.i] << '\t' << data.labels[e.j] << '\t' << w << '\t'
        << format_y(data.data.y.at(k)) << '\n';
  }
}

void write_edge_list(const LabeledPairwiseData& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_edge_list(data, out);
}

LabeledPairwiseData read_schedule(std::istream& in, const std::string& source) {
  std::unordered_map<std::string, int> table;
  std::vector<std::string> labels;
  struct Game {
    std::string a, b;
    double sa, sb;
  };
  std::vector<Game> games;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    if (fields.size() != 4)
      throw ParseError("expected 4 comma-separated fields at line " +
                           std::to_string(lineno) + " of " + source,
                       lineno);
    if (lineno == 1) {
      try {
        parse_number(fields[2], lineno);
      } catch (const ParseError&) {
        continue;  // header row
      }
    }
    if (fields[0] == fields[1])
      throw ParseError("self-game at line " + std::to_string(lineno), lineno);
    double sa = parse_number(fields[2], lineno);
    double sb = parse_number(fields[3], lineno);
    games.push_back({fields[0], fields[1], sa, sb});
    intern(table, labels, fields[0]);
    intern(table, labels, fields[1]);
  }
  int n = static_cast<int>(labels.size());
  if (n < 2 || games.empty())
    throw std::runtime_error("degenerate dataset: no games in " + source);

  std::map<std::int64_t, std::pair<std::int64_t, double>> wy;
  for (const auto& game : games) {
    int ia = table[game.a], ib = table[game.b];
    EdgeKey e = edge_index(ia, ib, n);
    // Running mean of head-minus-tail score differences.
    double value = ia < ib ? game.sb - game.sa : game.sa - game.sb;
    auto& [w, y] = wy[e.k];
    y = (y * w + value) / static_cast<double>(w + 1);
    w += 1;
  }
  return assemble(n, wy, std::move(labels), source);
}

LabeledPairwiseData read_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_schedule(in, path);
}

}  // namespace lsrank
