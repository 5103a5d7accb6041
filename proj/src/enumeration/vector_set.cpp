#include <lat40/vector_set.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace lat40 {

VectorSet::VectorSet(std::size_t dim, std::string frame_id, bool modulo_sign)
    : dim_(dim), frame_id_(std::move(frame_id)), modulo_sign_(modulo_sign) {}

std::vector<Integer> VectorSet::big(std::size_t i) const {
  auto v = (*this)[i];
  std::vector<Integer> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = static_cast<long>(v[k]);
  return out;
}

std::optional<Rational> VectorSet::common_norm() const {
  if (norms_.empty()) return std::nullopt;
  for (const auto& n : norms_)
    if (n != norms_.front()) return std::nullopt;
  return norms_.front();
}

std::int64_t VectorSet::max_abs() const {
  std::int64_t m = 0;
  for (auto x : coords_) m = std::max(m, x < 0 ? -x : x);
  return m;
}

void VectorSet::push_back(std::span<const std::int64_t> v, const Rational& norm) {
  if (v.size() != dim_) throw LinalgError("vector length does not match set dimension");
  coords_.insert(coords_.end(), v.begin(), v.end());
  norms_.push_back(norm);
}

void VectorSet::push_back(std::span<const Integer> v, const Rational& norm) {
  std::vector<std::int64_t> row(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].fits_slong_p()) throw LinalgError("vector coordinate exceeds 64 bits");
    row[k] = v[k].get_si();
  }
  push_back(std::span<const std::int64_t>(row), norm);
}

bool lex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::int64_t> sign_canonical(std::span<const std::int64_t> v) {
  std::vector<std::int64_t> neg(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
  if (lex_less(v, neg)) return neg;
  return {v.begin(), v.end()};
}

void VectorSet::canonicalize() {
  const std::size_t n = size();
  if (modulo_sign_) {
    for (std::size_t i = 0; i < n; ++i) {
      auto c = sign_canonical((*this)[i]);
      std::copy(c.begin(), c.end(), coords_.begin() + i * dim_);
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less((*this)[a], (*this)[b]); });
  std::vector<std::int64_t> coords;
  std::vector<Rational> norms;
  coords.reserve(coords_.size());
  norms.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    if (k > 0 && std::ranges::equal((*this)[i], (*this)[order[k - 1]])) continue;
    auto row = (*this)[i];
    coords.insert(coords.end(), row.begin(), row.end());
    norms.push_back(norms_[i]);
  }
  coords_ = std::move(coords);
  norms_ = std::move(norms);
}

std::size_t VectorSet::find(std::span<const std::int64_t> v) const {
  std::vector<std::int64_t> key(v.begin(), v.end());
  if (modulo_sign_) key = sign_canonical(v);
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (lex_less((*this)[mid], key)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::ranges::equal((*this)[lo], key)) return lo;
  return npos;
}

VectorSet VectorSet::folded() const {
  VectorSet out(dim_, frame_id_, true);
  out.coords_ = coords_;
  out.norms_ = norms_;
  out.canonicalize();
  return out;
}

VectorSet VectorSet::unfolded() const {
  VectorSet out(dim_, frame_id_, false);
  out.coords_.reserve(coords_.size() * 2);
  std::vector<std::int64_t> neg(dim_);
  for (std::size_t i = 0; i < size(); ++i) {
    auto v = (*this)[i];
    out.push_back(v, norms_[i]);
    for (std::size_t k = 0; k < dim_; ++k) neg[k] = -v[k];
    out.push_back(std::span<const std::int64_t>(neg), norms_[i]);
  }
  out.canonicalize();
  return out;
}

bool verify_norms(const VectorSet& s, const AmbientFrame& frame) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto v = s.big(i);
    if (inner(frame, v, v) != s.norm(i)) return false;
  }
  return true;
}

void write_vector_set(std::ostream& out, const VectorSet& s) {
  const VectorSet& full = s.modulo_sign() ? s.unfolded() : s;
  auto norm = full.common_norm();
  if (!full.empty() && !norm) throw FormatError("vector cache needs a common norm");
  out << full.size() << ' ' << full.dim() << ' ' << (norm ? norm->get_str() : "0") << ' '
      << (full.frame_id().empty() ? "-" : full.frame_id()) << '\n';
  for (std::size_t i = 0; i < full.size(); ++i) {
    auto v = full[i];
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? " " : "") << v[k];
    out << '\n';
  }
}

VectorSet read_vector_set(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("vector cache is empty");
  std::istringstream h(header);
  long long count = -1, dim = -1;
  std::string norm_text, frame;
  if (!(h >> count >> dim >> norm_text >> frame) || count < 0 || dim < 0)
    throw FormatError("vector cache header must be 'count dim norm frame-id'");
  Rational norm;
  if (norm.set_str(norm_text, 10) != 0) throw FormatError("bad norm in vector cache header");
  norm.canonicalize();
  VectorSet s(std::size_t(dim), frame == "-" ? "" : frame, false);
  std::vector<std::int64_t> row(static_cast<std::size_t>(dim));
  std::vector<std::int64_t> prev;
  for (long long i = 0; i < count; ++i) {
    for (auto& x : row) {
      if (!(in >> x)) throw FormatError("vector cache is truncated");
    }
    if (!prev.empty() && !lex_less(prev, row))
      throw FormatError("vector cache is not strictly sorted");
    prev = row;
    s.push_back(std::span<const std::int64_t>(row), norm);
  }
  std::string extra;
  if (in >> extra) throw FormatError("trailing data in vector cache");
  return s;
}

void save_vector_set(const std::string& path, const VectorSet& s) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write vector cache " + path);
  write_vector_set(out, s);
}

VectorSet load_vector_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open vector cache " + path);
  return read_vector_set(in);
}

}  // namespace lat40
