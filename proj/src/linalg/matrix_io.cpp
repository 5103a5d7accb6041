#include <lat40/matrix.hpp>

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace lat40 {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.data().size(); ++i) out.data()[i] = Rational(m.data()[i]);
  return out;
}

IntMatrix to_integer(const Mat64& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.data().size(); ++i)
    out.data()[i] = Integer(static_cast<long>(m.data()[i]));
  return out;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.data().size(); ++i) {
    const Rational& q = m.data()[i];
    if (q.get_den() != 1) throw LinalgError("matrix entry is not an integer");
    out.data()[i] = q.get_num();
  }
  return out;
}

Mat64 to_mat64(const IntMatrix& m) {
  Mat64 out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.data().size(); ++i) {
    if (!m.data()[i].fits_slong_p()) throw LinalgError("entry exceeds 64 bits");
    out.data()[i] = m.data()[i].get_si();
  }
  return out;
}

Integer common_denominator(const RatMatrix& m) {
  Integer d = 1;
  for (const auto& q : m.data()) d = lcm(d, q.get_den());
  return d;
}

namespace {

template <typename T>
void write_any(std::ostream& out, const Matrix<T>& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ' ';
      out << m(r, c).get_str();
    }
    out << '\n';
  }
}

std::pair<std::size_t, std::size_t> read_shape(std::istream& in) {
  long long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0)
    throw FormatError("matrix header must be two non-negative integers");
  return {static_cast<std::size_t>(rows), static_cast<std::size_t>(cols)};
}

}  // namespace

void write_matrix(std::ostream& out, const IntMatrix& m) { write_any(out, m); }
void write_matrix(std::ostream& out, const RatMatrix& m) { write_any(out, m); }

IntMatrix read_int_matrix(std::istream& in) {
  auto [rows, cols] = read_shape(in);
  IntMatrix m(rows, cols);
  std::string token;
  for (auto& x : m.data()) {
    if (!(in >> token)) throw FormatError("matrix body is truncated");
    if (x.set_str(token, 10) != 0) throw FormatError("bad integer token '" + token + "'");
  }
  return m;
}

RatMatrix read_rat_matrix(std::istream& in) {
  auto [rows, cols] = read_shape(in);
  RatMatrix m(rows, cols);
  std::string token;
  for (auto& x : m.data()) {
    if (!(in >> token)) throw FormatError("matrix body is truncated");
    if (x.set_str(token, 10) != 0) throw FormatError("bad rational token '" + token + "'");
    if (x.get_den() == 0) throw FormatError("zero denominator in '" + token + "'");
    x.canonicalize();
  }
  return m;
}

std::string to_text(const IntMatrix& m) {
  std::ostringstream s;
  write_matrix(s, m);
  return s.str();
}

std::string to_text(const RatMatrix& m) {
  std::ostringstream s;
  write_matrix(s, m);
  return s.str();
}

std::ostream& operator<<(std::ostream& out, const IntMatrix& m) {
  write_matrix(out, m);
  return out;
}

std::ostream& operator<<(std::ostream& out, const RatMatrix& m) {
  write_matrix(out, m);
  return out;
}

}  // namespace lat40
