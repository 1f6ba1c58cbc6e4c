// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "parbasis/instance_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace parbasis {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line split into tokens; false at EOF.
  bool Next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      std::istringstream ss(line);
      tokens.clear();
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (tokens.empty() || tokens[0][0] == '#') continue;
      return true;
    }
    return false;
  }
  // Next line that must exist.
  std::vector<std::string> Expect(const char* what) {
    std::vector<std::string> tokens;
    if (!Next(tokens)) throw ParseError(line_, std::string("expected ") + what);
    return tokens;
  }
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::uint64_t ParseUint(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, "not a non-negative integer: '" + s + "'");
  }
  return v;
}

std::shared_ptr<const MatroidInstance> ParseOne(LineReader& r,
                                                bool nested) {
  std::vector<std::string> head = r.Expect("matroid header");
  const std::size_t head_line = r.line();
  if (head.size() != 3 || head[0] != "matroid" || head[2].rfind("n=", 0) != 0) {
    throw ParseError(head_line, "expected `matroid <variant> n=<int>`");
  }
  const std::string variant = head[1];
  const std::size_t n = ParseUint(head[2].substr(2), head_line);

  std::vector<std::vector<std::string>> body;
  std::vector<std::size_t> body_lines;
  std::shared_ptr<const MatroidInstance> result;

  auto read_body = [&]() {
    std::vector<std::string> tokens;
    while (r.Next(tokens)) {
      if (tokens[0] == "end") return;
      body.push_back(tokens);
      body_lines.push_back(r.line());
    }
    if (nested) throw ParseError(r.line(), "missing `end` of nested instance");
  };

  try {
    if (variant == "direct-sum") {
      std::vector<std::string> t = r.Expect("children <k>");
      if (t.size() != 2 || t[0] != "children") {
        throw ParseError(r.line(), "expected `children <k>`");
      }
      std::size_t k = ParseUint(t[1], r.line());
      std::vector<std::shared_ptr<const MatroidInstance>> children;
      for (std::size_t i = 0; i < k; ++i) children.push_back(ParseOne(r, true));
      read_body();
      if (!body.empty()) throw ParseError(body_lines[0], "unexpected line");
      result = std::make_shared<DirectSumMatroid>(std::move(children));
    } else {
      read_body();
      if (variant == "uniform") {
        if (body.size() != 1 || body[0].size() != 2 || body[0][0] != "rank") {
          throw ParseError(head_line, "uniform needs exactly `rank <r>`");
        }
        result = std::make_shared<UniformMatroid>(
            n, ParseUint(body[0][1], body_lines[0]));
      } else if (variant == "partition") {
        std::vector<std::vector<ElementId>> parts;
        std::vector<std::size_t> budgets;
        for (std::size_t i = 0; i < body.size(); ++i) {
          const auto& t = body[i];
          if (t[0] != "part" || t.size() < 2) {
            throw ParseError(body_lines[i], "expected `part <budget> <ids...>`");
          }
          budgets.push_back(ParseUint(t[1], body_lines[i]));
          std::vector<ElementId> ids;
          for (std::size_t j = 2; j < t.size(); ++j) {
            ids.push_back(static_cast<ElementId>(ParseUint(t[j], body_lines[i])));
          }
          parts.push_back(std::move(ids));
        }
        result = std::make_shared<PartitionMatroid>(n, std::move(parts),
                                                    std::move(budgets));
      } else if (variant == "graphic") {
        std::size_t vertices = 0;
        bool explicit_vertices = false;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (std::size_t i = 0; i < body.size(); ++i) {
          const auto& t = body[i];
          if (t[0] == "vertices" && t.size() == 2 && edges.empty()) {
            vertices = ParseUint(t[1], body_lines[i]);
            explicit_vertices = true;
          } else if (t[0] == "edge" && t.size() == 3) {
            auto u = static_cast<std::uint32_t>(ParseUint(t[1], body_lines[i]));
            auto v = static_cast<std::uint32_t>(ParseUint(t[2], body_lines[i]));
            if (!explicit_vertices) {
              vertices = std::max<std::size_t>(vertices, std::max(u, v) + 1);
            }
            edges.emplace_back(u, v);
          } else {
            throw ParseError(body_lines[i], "expected `edge <u> <v>`");
          }
        }
        if (edges.size() != n) {
          throw ParseError(head_line, "graphic: edge count differs from n");
        }
        result = std::make_shared<GraphicMatroid>(vertices, std::move(edges));
      } else if (variant == "linear") {
        if (body.empty() || body[0][0] != "field" || body[0].size() != 2) {
          throw ParseError(head_line, "linear needs `field <p>` first");
        }
        auto p = static_cast<std::uint32_t>(ParseUint(body[0][1], body_lines[0]));
        std::vector<std::vector<std::uint32_t>> cols;
        std::size_t rows = 0;
        for (std::size_t i = 1; i < body.size(); ++i) {
          const auto& t = body[i];
          if (t[0] != "col") throw ParseError(body_lines[i], "expected `col`");
          std::vector<std::uint32_t> col;
          for (std::size_t j = 1; j < t.size(); ++j) {
            col.push_back(static_cast<std::uint32_t>(ParseUint(t[j], body_lines[i])));
          }
          if (i == 1) rows = col.size();
          cols.push_back(std::move(col));
        }
        if (cols.size() != n) {
          throw ParseError(head_line, "linear: column count differs from n");
        }
        result = std::make_shared<LinearMatroid>(p, rows, std::move(cols));
      } else {
        throw ParseError(head_line, "unknown variant '" + variant + "'");
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(head_line, e.what());
  }
  if (result->ground_size() != n) {
    throw ParseError(head_line, "declared n=" + std::to_string(n) +
                                    " but instance has " +
                                    std::to_string(result->ground_size()));
  }
  return result;
}

void WriteOne(const MatroidInstance& m, std::ostream& out) {
  out << "matroid " << KindName(m.kind()) << " n=" << m.ground_size() << '\n';
  switch (m.kind()) {
    case MatroidKind::kUniform:
      out << "rank " << static_cast<const UniformMatroid&>(m).rank() << '\n';
      break;
    case MatroidKind::kPartition: {
      const auto& p = static_cast<const PartitionMatroid&>(m);
      for (std::size_t i = 0; i < p.parts().size(); ++i) {
        out << "part " << p.budgets()[i];
        for (ElementId e : p.parts()[i]) out << ' ' << e;
        out << '\n';
      }
      break;
    }
    case MatroidKind::kGraphic: {
      const auto& g = static_cast<const GraphicMatroid&>(m);
      out << "vertices " << g.vertices() << '\n';
      for (auto [u, v] : g.edges()) out << "edge " << u << ' ' << v << '\n';
      break;
    }
    case MatroidKind::kLinear: {
      const auto& l = static_cast<const LinearMatroid&>(m);
      out << "field " << l.prime() << '\n';
      for (const auto& col : l.columns()) {
        out << "col";
        for (std::uint32_t x : col) out << ' ' << x;
        out << '\n';
      }
      break;
    }
    case MatroidKind::kDirectSum: {
      const auto& d = static_cast<const DirectSumMatroid&>(m);
      out << "children " << d.children().size() << '\n';
      for (const auto& c : d.children()) {
        WriteOne(*c, out);
        out << "end\n";
      }
      break;
    }
  }
}

}  // namespace

void WriteInstance(const MatroidInstance& m, std::ostream& out) {
  WriteOne(m, out);
}

std::shared_ptr<const MatroidInstance> ReadInstance(std::istream& in) {
  LineReader r(in);
  return ParseOne(r, false);
}

std::shared_ptr<const MatroidInstance> LoadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadInstance(in);
}

void SaveInstanceFile(const MatroidInstance& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  WriteInstance(m, out);
}

void WriteElementSet(const ElementSet& s, std::ostream& out) {
  bool first = true;
  for (ElementId e : s) {
    out << (first ? "" : " ") << e;
    first = false;
  }
  out << '\n';
}

ElementSet ReadElementSet(std::istream& in, std::size_t universe) {
  ElementSet s(universe);
  std::string tok;
  while (in >> tok) {
    std::uint64_t e = ParseUint(tok, 0);
    if (e >= universe) {
      throw std::out_of_range("element " + tok + " outside the ground set");
    }
    s.insert(static_cast<ElementId>(e));
  }
  return s;
}

}  // namespace parbasis
