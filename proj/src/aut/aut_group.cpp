#include <lat40/aut.hpp>

#include <set>

namespace lat40 {

bool preserves(const Mat64& g, const IntMatrix& gram) {
  IntMatrix gi = to_integer(g);
  return gi * gram * gi.transpose() == gram;
}

Mat64 inverse_unimodular(const Mat64& g) {
  return to_mat64(to_integer(inverse(to_rational(to_integer(g)))));
}

Mat64 automorphism_from(const Lattice& o40, const IntMatrix& basis, const IntMatrix& solution) {
  const std::size_t n = o40.rank();
  IntMatrix cb(n, n), cx(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Integer> a = o40.coordinates(basis.row(r));
    std::vector<Integer> b = o40.coordinates(solution.row(r));
    if (a.empty() || b.empty()) throw AutError("automorphism_from: row outside the lattice");
    for (std::size_t c = 0; c < n; ++c) {
      cb(r, c) = a[c];
      cx(r, c) = b[c];
    }
  }
  // cb·g = cx
  RatMatrix g = inverse(to_rational(cb)) * to_rational(cx);
  Mat64 out = to_mat64(to_integer(g));
  IntMatrix gram = to_integer(o40.gram());
  if (!preserves(out, gram)) throw AutError("automorphism_from: map is not an isometry");
  return out;
}

AutGroup full_aut(const Lattice& o40, const MatrixGroup& gamma, const IntMatrix& basis,
                  std::span<const IntMatrix> solutions) {
  AutGroup out;
  out.gamma_order = gamma.order();
  out.solutions = solutions.size();
  std::vector<Mat64> gens;
  for (const auto& g : gamma.generators) gens.push_back(in_lattice_basis(o40, g));
  for (const auto& x : solutions) {
    Mat64 a = automorphism_from(o40, basis, x);
    out.adjoined.push_back(a);
    gens.push_back(std::move(a));
  }
  try {
    out.group = close_group(std::move(gens), 1000000);
  } catch (const FrameSearchError& e) {
    throw AutError(e.what());
  }
  return out;
}

SemidirectReport verify_semidirect(const MatrixGroup& g, std::size_t order_g1,
                                   std::size_t order_g2, int exponent) {
  SemidirectReport rep;
  const std::size_t n = g.order();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = element_order(g.elements[i], n);
    ++rep.order_census[order[i]];
  }
  auto powers = [](const Mat64& x, std::size_t k) {
    std::vector<Mat64> p{Mat64::identity(x.rows())};
    for (std::size_t i = 1; i < k; ++i) p.push_back(p.back() * x);
    return p;
  };
  for (std::size_t b = 0; b < n && !rep.ok; ++b) {
    if (order[b] != order_g2) continue;
    const Mat64& g2 = g.elements[b];
    std::vector<Mat64> p2 = powers(g2, order_g2);
    const Mat64& target = p2[std::size_t(exponent) % order_g2];
    for (std::size_t a = 0; a < n; ++a) {
      if (order[a] != order_g1) continue;
      const Mat64& g1 = g.elements[a];
      if (!(g1 * g2 == target * g1)) continue;
      rep.g1 = g1;
      rep.g2 = g2;
      rep.order_g1 = order_g1;
      rep.order_g2 = order_g2;
      rep.exponent = exponent;
      std::set<std::vector<std::int64_t>> sub2;
      for (const auto& x : p2) sub2.insert(x.data());
      rep.normal = true;
      for (const auto& h : g.generators) {
        Mat64 conj = h * g2 * inverse_unimodular(h);
        rep.normal = rep.normal && sub2.count(conj.data()) > 0;
      }
      std::vector<Mat64> p1 = powers(g1, order_g1);
      std::size_t common = 0;
      for (const auto& x : p1) common += sub2.count(x.data());
      rep.trivial_intersection = common == 1;
      std::set<std::vector<std::int64_t>> prod;
      for (const auto& x : p2)
        for (const auto& y : p1) prod.insert((x * y).data());
      std::set<std::vector<std::int64_t>> all;
      for (const auto& e : g.elements) all.insert(e.data());
      rep.full_product = prod == all;
      rep.ok = rep.normal && rep.trivial_intersection && rep.full_product;
      break;
    }
  }
  if (!rep.ok) throw AutError("structure mismatch");
  return rep;
}

}  // namespace lat40

namespace lat40 {

std::vector<std::vector<int>> fixture_basis_labels() {
  std::vector<std::vector<int>> labels(40, {9, 3});
  auto put = [&](int pos, std::vector<int> label) { labels[std::size_t(pos - 1)] = std::move(label); };
  put(1, {1, 1});
  put(2, {7, 7});
  put(3, {15, 1});
  put(4, {15, 1});
  put(5, {2, 2});
  put(18, {10, 3});
  put(28, {6, 4});
  put(31, {10, 8});
  put(34, {8, 4});
  put(35, {10, 6});
  put(39, {9, 5});
  put(40, {7, 4});
  for (int pos : {6, 8, 13, 14, 17, 23, 25, 26, 27, 29, 30, 33, 37, 38}) put(pos, {16, 1});
  return labels;
}

FixtureMatch match_fixture_gram(const Lattice& o40, const VectorSet& s, const OrthoGraph& g,
                                const Partition& blocks, const MatrixGroup& gamma,
                                const IntMatrix& fixture_gram) {
  const auto labels = fixture_basis_labels();
  if (fixture_gram.rows() != labels.size()) throw AutError("fixture Gram has the wrong size");
  IsometryProblem p;
  p.target = fixture_gram;
  bool anchored = false;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Block* b = blocks.find(labels[i]);
    if (!b) throw AutError("fixture basis names a block the partition does not have");
    p.allowed.push_back(b->members);
    if (!anchored && labels[i] == std::vector<int>{7, 7}) {
      p.anchor = i;
      p.anchor_choices = block_transversal(s, b->members, gamma);
      anchored = true;
    }
  }
  IsometryResult r = isometry_search(p, s, g);
  FixtureMatch out;
  out.nodes = r.nodes;
  out.solutions = std::move(r.solutions);
  if (out.solutions.empty()) return out;
  const IntMatrix& x = out.solutions.front();
  const std::size_t n = o40.rank();
  out.change = IntMatrix(n, n);
  for (std::size_t row = 0; row < n; ++row) {
    std::vector<Integer> c = o40.coordinates(x.row(row));
    for (std::size_t col = 0; col < n; ++col) out.change(row, col) = c[col];
  }
  return out;
}

Mat64 fixture_to_lattice(const IntMatrix& change, const IntMatrix& g) {
  RatMatrix b = to_rational(change);
  return to_mat64(to_integer(inverse(b) * to_rational(g) * b));
}

}  // namespace lat40
