#include "fdeligne/complex_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace fdeligne {

namespace {

struct Token {
  std::string text;
  int col = 0;
};

std::vector<Token> tokens(const std::string& line) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[k]))) {
      ++k;
      continue;
    }
    const std::size_t start = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    out.push_back({line.substr(start, k - start), static_cast<int>(start) + 1});
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const Token& t, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(t.text, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used != t.text.size() || t.text.empty())
    throw ParseError(line, t.col, "expected an integer, got '" + t.text + "'");
  return v;
}

struct RawBlock {
  Bidegree source;  // declared grading
  int line = 0;
  std::vector<std::vector<Scalar>> rows;
  std::vector<int> row_lines;
};

enum class Section { none, meta, dims, del, delbar, sigma };

}  // namespace

ComplexFile parse_complex_text(const std::string& text) {
  ComplexFile out;
  BigradedComplex& c = out.complex;
  std::map<Bidegree, std::pair<int, int>> dims;  // declared -> (dim, line)
  std::map<Section, std::vector<RawBlock>> blocks;
  Section sec = Section::none;
  std::istringstream in(text);
  std::string raw;
  int ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      const int col = static_cast<int>(line.find('[')) + 1;
      if (t == "[meta]") sec = Section::meta;
      else if (t == "[dims]") sec = Section::dims;
      else if (t == "[del]") sec = Section::del;
      else if (t == "[delbar]") sec = Section::delbar;
      else if (t == "[sigma]") sec = Section::sigma;
      else throw ParseError(ln, col, "unknown section " + t);
      continue;
    }
    const auto toks = tokens(line);
    switch (sec) {
      case Section::none:
        throw ParseError(ln, toks.front().col, "content outside any section");
      case Section::meta: {
        const auto eq = line.find('=');
        if (eq == std::string::npos)
          throw ParseError(ln, toks.front().col, "expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        const int vcol = static_cast<int>(line.find_first_not_of(" \t", eq + 1)) + 1;
        if (key == "name") {
          c.name = value;
        } else if (key == "variance") {
          if (value == "homological") c.variance = Variance::homological;
          else if (value == "cohomological") c.variance = Variance::cohomological;
          else throw ParseError(ln, vcol, "variance must be homological or cohomological");
        } else if (key == "dimension") {
          out.dimension = parse_int({value, vcol}, ln);
        } else {
          throw ParseError(ln, toks.front().col, "unknown key '" + key + "'");
        }
        break;
      }
      case Section::dims: {
        if (toks.size() != 3) throw ParseError(ln, toks.front().col, "expected 'p q dim'");
        const Bidegree b{parse_int(toks[0], ln), parse_int(toks[1], ln)};
        const int d = parse_int(toks[2], ln);
        if (d < 0) throw ParseError(ln, toks[2].col, "negative dimension");
        if (dims.count(b))
          throw ParseError(ln, toks[0].col, "bidegree " + to_string(b) + " declared twice");
        dims[b] = {d, ln};
        break;
      }
      default: {
        auto& list = blocks[sec];
        if (toks.front().text == "block") {
          if (toks.size() != 3) throw ParseError(ln, toks.front().col, "expected 'block p q'");
          list.push_back({{parse_int(toks[1], ln), parse_int(toks[2], ln)}, ln, {}, {}});
          break;
        }
        if (list.empty()) throw ParseError(ln, toks.front().col, "matrix row before 'block p q'");
        std::vector<Scalar> row;
        for (const auto& tk : toks) {
          try {
            row.push_back(Scalar::parse(tk.text));
          } catch (const std::invalid_argument& e) {
            throw ParseError(ln, tk.col, e.what());
          }
        }
        auto& blk = list.back();
        if (!blk.rows.empty() && row.size() != blk.rows.front().size()) {
          const std::size_t k = std::min(row.size(), blk.rows.front().size());
          const int col = k < toks.size() ? toks[k].col : static_cast<int>(raw.size()) + 1;
          throw ParseError(ln, col, "row has " + std::to_string(row.size()) +
                                        " entries, expected " +
                                        std::to_string(blk.rows.front().size()));
        }
        blk.rows.push_back(std::move(row));
        blk.row_lines.push_back(ln);
      }
    }
  }

  for (const auto& [b, dl] : dims)
    if (dl.first > 0) c.dims[c.to_internal(b)] = dl.first;

  auto fill = [&](Section s, const char* label, std::map<Bidegree, CMatrix>& target,
                  auto tgt) {
    for (const auto& blk : blocks[s]) {
      const Bidegree src = c.to_internal(blk.source);
      const Bidegree dst = tgt(src);
      const std::size_t rows = static_cast<std::size_t>(c.dim(dst));
      const std::size_t cols = static_cast<std::size_t>(c.dim(src));
      const std::size_t got_r = blk.rows.size();
      const std::size_t got_c = got_r ? blk.rows.front().size() : 0;
      const std::string name = std::string("[") + label + "] block " +
                               std::to_string(blk.source.p) + " " + std::to_string(blk.source.q);
      if (got_r != rows || (rows && got_c != cols))
        throw ParseError(blk.line, 1,
                         name + " has shape " + std::to_string(got_r) + "x" +
                             std::to_string(got_c) + ", expected " + std::to_string(rows) + "x" +
                             std::to_string(cols));
      if (target.count(src)) throw ParseError(blk.line, 1, name + " given twice");
      if (rows == 0 || cols == 0) continue;
      CMatrix m(rows, cols);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = 0; k < cols; ++k) m(r, k) = blk.rows[r][k];
      target[src] = m;
    }
  };
  fill(Section::del, "del", c.del, [](Bidegree b) { return Bidegree{b.p - 1, b.q}; });
  fill(Section::delbar, "delbar", c.delbar, [](Bidegree b) { return Bidegree{b.p, b.q - 1}; });
  fill(Section::sigma, "sigma", c.sigma, [](Bidegree b) { return b.swapped(); });
  c.normalize();
  return out;
}

ComplexFile parse_complex_file(const std::string& text) {
  ComplexFile f = parse_complex_text(text);
  require_valid(f.complex);
  return f;
}

ComplexFile read_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_complex_file(ss.str());
}

std::string serialize_complex(const BigradedComplex& c, int dimension) {
  std::ostringstream o;
  o << "[meta]\n";
  if (!c.name.empty()) o << "name = " << c.name << "\n";
  o << "variance = " << to_string(c.variance) << "\n";
  if (dimension >= 0) o << "dimension = " << dimension << "\n";
  // declared bidegrees, sorted in the declared order
  std::map<Bidegree, Bidegree> declared;  // declared -> internal
  for (const auto& [b, d] : c.dims)
    if (d > 0) declared[c.to_external(b)] = b;
  o << "\n[dims]\n";
  for (const auto& [e, b] : declared) o << e.p << " " << e.q << " " << c.dim(b) << "\n";
  auto section = [&](const char* label, const std::map<Bidegree, CMatrix>& ops) {
    o << "\n[" << label << "]\n";
    for (const auto& [e, b] : declared) {
      auto it = ops.find(b);
      if (it == ops.end() || it->second.empty() || it->second.is_zero()) continue;
      o << "block " << e.p << " " << e.q << "\n";
      const CMatrix& m = it->second;
      for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t k = 0; k < m.cols(); ++k) o << (k ? " " : "") << m(r, k).to_string();
        o << "\n";
      }
    }
  };
  section("del", c.del);
  section("delbar", c.delbar);
  section("sigma", c.sigma);
  return o.str();
}

std::string serialize_complex(const ComplexFile& f) {
  return serialize_complex(f.complex, f.dimension);
}

}  // namespace fdeligne
