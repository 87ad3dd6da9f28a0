#include "sflow/path_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sflow {

namespace {

// Tokenizer that tracks byte offsets for error reporting.
class TokenReader {
public:
  explicit TokenReader(std::string text) : text_(std::move(text)) {}

  bool next(std::string& token) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ >= text_.size()) return false;
    token_start_ = pos_;
    token.clear();
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])))
      token += text_[pos_++];
    return true;
  }

  long offset() const { return static_cast<long>(token_start_); }
  long end_offset() const { return static_cast<long>(pos_); }

private:
  std::string text_;
  size_t pos_ = 0;
  size_t token_start_ = 0;
};

}  // namespace

OperatorPath load_matrix_path(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw PathFileError("cannot open matrix path file " + filename, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  TokenReader reader(buf.str());

  std::string tok;
  const auto expect_keyword = [&](const char* kw) {
    if (!reader.next(tok) || tok != kw)
      throw PathFileError("expected keyword '" + std::string(kw) + "', got '" + tok + "'",
                          reader.offset());
  };
  const auto read_long = [&](const char* what) {
    if (!reader.next(tok))
      throw PathFileError("unexpected end of file reading " + std::string(what),
                          reader.end_offset());
    try {
      size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw PathFileError("malformed integer '" + tok + "' for " + std::string(what),
                          reader.offset());
    }
  };
  const auto read_double = [&](const char* what) {
    if (!reader.next(tok))
      throw PathFileError("unexpected end of file reading " + std::string(what),
                          reader.end_offset());
    try {
      size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw PathFileError("malformed number '" + tok + "' for " + std::string(what),
                          reader.offset());
    }
  };

  expect_keyword("dim");
  const long n = read_long("dim");
  if (n < 1) throw PathFileError("dim must be positive", reader.offset());
  expect_keyword("samples");
  const long m = read_long("samples");
  if (m < 2) throw PathFileError("need at least 2 samples", reader.offset());
  expect_keyword("interval");
  const double a = read_double("interval start");
  const double b = read_double("interval end");
  if (!(a < b)) throw PathFileError("interval must satisfy a < b", reader.offset());

  std::vector<HermitianOperator> samples;
  samples.reserve(m);
  for (long k = 0; k < m; ++k) {
    Matrix mat(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        if (!reader.next(tok))
          throw PathFileError("unexpected end of file in sample block " + std::to_string(k),
                              reader.end_offset());
        const size_t comma = tok.find(',');
        if (comma == std::string::npos)
          throw PathFileError("entry '" + tok + "' is not a re,im pair", reader.offset());
        try {
          size_t used = 0;
          const double re = std::stod(tok.substr(0, comma), &used);
          if (used != comma) throw std::invalid_argument(tok);
          const double im = std::stod(tok.substr(comma + 1), &used);
          if (used != tok.size() - comma - 1) throw std::invalid_argument(tok);
          mat(i, j) = Complex(re, im);
        } catch (const std::exception&) {
          throw PathFileError("malformed complex entry '" + tok + "'", reader.offset());
        }
      }
    try {
      samples.emplace_back(std::move(mat));
    } catch (const ValidationError& e) {
      throw PathFileError("sample block " + std::to_string(k) + ": " + e.what(),
                          reader.offset());
    }
  }
  if (reader.next(tok))
    throw PathFileError("trailing data after the last sample block", reader.offset());

  const long count = m;
  return OperatorPath(
      a, b, n,
      [samples, count, a, b](double t) {
        const double u = (t - a) / (b - a) * static_cast<double>(count - 1);
        const long k = std::min(static_cast<long>(u), count - 2);
        const double w = u - static_cast<double>(k);
        return HermitianOperator::symmetrized((1.0 - w) * samples[k].entries() +
                                              w * samples[k + 1].entries());
      },
      {Smoothness::lipschitz, 0.0});
}

void save_matrix_path(const std::string& filename, double a, double b,
                      const std::vector<HermitianOperator>& samples) {
  if (samples.size() < 2)
    throw ValidationError("save_matrix_path: need at least 2 samples");
  const Eigen::Index n = samples.front().dim();
  std::ofstream out(filename, std::ios::binary);
  if (!out) throw Error("save_matrix_path: cannot open " + filename);

  char num[64];
  out << "dim " << n << " samples " << samples.size() << " interval ";
  std::snprintf(num, sizeof num, "%.17g %.17g", a, b);
  out << num << "\n";
  for (const HermitianOperator& s : samples) {
    if (s.dim() != n) throw ValidationError("save_matrix_path: inconsistent dims");
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const Complex v = s.entries()(i, j);
        std::snprintf(num, sizeof num, "%.17g,%.17g", v.real(), v.imag());
        out << num << (j + 1 < n ? " " : "");
      }
      out << "\n";
    }
  }
}

}  // namespace sflow
