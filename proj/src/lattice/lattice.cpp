#include <lat40/lattice.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lat40 {

Lattice::Lattice(FramePtr frame, IntMatrix basis)
    : frame_(std::move(frame)), basis_(std::move(basis)) {
  if (!frame_) throw LinalgError("lattice needs a frame");
  if (basis_.cols() != frame_->dim())
    throw LinalgError("basis has " + std::to_string(basis_.cols()) +
                      " columns but the frame has dimension " + std::to_string(frame_->dim()));
  hnf_ = lat40::hnf_basis(basis_);
  if (hnf_.rows() != basis_.rows()) throw LinalgError("lattice basis rows are linearly dependent");
}

RatMatrix Lattice::gram() const {
  IntMatrix g = basis_ * frame_->integer_gram * basis_.transpose();
  RatMatrix out = to_rational(g);
  for (auto& x : out.data()) {
    x /= frame_->denominator;
    x.canonicalize();
  }
  return out;
}

bool Lattice::is_integral() const {
  RatMatrix g = gram();
  for (const auto& x : g.data())
    if (x.get_den() != 1) return false;
  return true;
}

bool Lattice::is_even() const {
  if (!is_integral()) return false;
  RatMatrix g = gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (g(i, i).get_num() % 2 != 0) return false;
  return true;
}

bool Lattice::is_unimodular() const { return is_integral() && abs(gram_det()) == 1; }

Rational Lattice::gram_det() const { return det(gram()); }

std::vector<Integer> Lattice::coordinates(std::span<const Integer> v) const {
  if (v.size() != dim()) throw LinalgError("vector length does not match lattice dimension");
  // Triangular solve against the echelon basis.
  std::vector<Integer> residual(v.begin(), v.end());
  std::vector<Integer> x(hnf_.rows());
  std::size_t col = 0;
  for (std::size_t r = 0; r < hnf_.rows(); ++r) {
    while (hnf_(r, col) == 0) {
      if (residual[col] != 0) return {};
      ++col;
    }
    if (!mpz_divisible_p(residual[col].get_mpz_t(), hnf_(r, col).get_mpz_t())) return {};
    x[r] = residual[col] / hnf_(r, col);
    if (x[r] != 0)
      for (std::size_t c = col; c < dim(); ++c) residual[c] -= x[r] * hnf_(r, c);
    ++col;
  }
  for (std::size_t c = col; c < dim(); ++c)
    if (residual[c] != 0) return {};
  // x is relative to the HNF basis; convert to the stored basis.
  if (basis_ == hnf_) return x;
  RatMatrix b = to_rational(basis_);
  std::vector<Rational> target(v.begin(), v.end());
  if (!full_rank()) {
    // Express through HNF rows: hnf = T·basis, so coordinates are x·T.
    HnfResult h = lat40::hnf(basis_);
    std::vector<Integer> out(rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) out[j] += x[i] * h.transform(i, j);
    return out;
  }
  std::vector<Rational> sol = solve_left(b, target);
  std::vector<Integer> out(sol.size());
  for (std::size_t i = 0; i < sol.size(); ++i) out[i] = sol[i].get_num();
  return out;
}

bool Lattice::contains(std::span<const Integer> v) const {
  bool zero = true;
  for (const auto& c : v)
    if (c != 0) zero = false;
  if (zero) return v.size() == dim();
  return !coordinates(v).empty();
}

Lattice dual(const Lattice& l) {
  if (!l.full_rank()) throw LinalgError("dual needs a full-rank lattice");
  RatMatrix coords = inverse(l.gram()) * to_rational(l.basis());
  for (const auto& x : coords.data())
    if (x.get_den() != 1)
      throw LinalgError("dual lattice does not have integer coordinates in this frame");
  return Lattice(l.frame(), to_integer(coords));
}

namespace {
void require_same_frame(const Lattice& a, const Lattice& b) {
  if (a.frame() != b.frame() && !(a.frame()->gram == b.frame()->gram))
    throw LinalgError("lattices live in different frames");
}
}  // namespace

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  require_same_frame(a, b);
  return Lattice(a.frame(), hnf_basis(vstack(a.basis(), b.basis())));
}

bool equals(const Lattice& a, const Lattice& b) {
  require_same_frame(a, b);
  return a.hnf_basis() == b.hnf_basis();
}

bool sublattice(const Lattice& a, const Lattice& b) {
  require_same_frame(a, b);
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (!b.contains(a.basis().row(i))) return false;
  return true;
}

Lattice scale(const Lattice& l, const Rational& c) {
  if (c <= 0) throw LinalgError("scale factor must be positive");
  return Lattice(make_frame(l.frame()->gram.scaled(c), l.frame()->id + "*" + c.get_str()),
                 l.basis());
}

RatMatrix orthogonal_sum(std::span<const RatMatrix> grams) {
  return block_diagonal<Rational>(grams);
}

IntMatrix a_n_gram(std::size_t n) {
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) {
      g(i, i + 1) = -1;
      g(i + 1, i) = -1;
    }
  }
  return g;
}

long extremal_min_bound(long n) {
  if (n <= 0 || n % 8 != 0)
    throw std::invalid_argument("rank of an even unimodular lattice must be a positive multiple of 8");
  return 2 * (1 + n / 24);
}

void write_lattice(std::ostream& out, const Lattice& l) {
  if (l.frame()->id == "glue40") {
    out << "frame: glue40\n";
  } else {
    out << "frame: gram\n";
    write_matrix(out, l.frame()->gram);
  }
  write_matrix(out, l.basis());
}

Lattice read_lattice(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && line.empty()) {
  }
  const std::string prefix = "frame:";
  if (line.compare(0, prefix.size(), prefix) != 0)
    throw FormatError("lattice file must start with a 'frame:' header");
  std::istringstream kind_stream(line.substr(prefix.size()));
  std::string kind;
  kind_stream >> kind;
  FramePtr frame;
  if (kind == "glue40") {
    frame = glue_frame();
  } else if (kind == "gram") {
    frame = make_frame(read_rat_matrix(in));
  } else {
    throw FormatError("unknown frame '" + kind + "'");
  }
  IntMatrix basis = read_int_matrix(in);
  try {
    return Lattice(frame, std::move(basis));
  } catch (const LinalgError& e) {
    throw FormatError(std::string("invalid lattice basis: ") + e.what());
  }
}

Lattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open lattice file " + path);
  return read_lattice(in);
}

void save_lattice(const std::string& path, const Lattice& l) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write lattice file " + path);
  write_lattice(out, l);
}

}  // namespace lat40
