#include "doctest.h"

#include <numeric>

#include "wilsonnet/spin_network.hpp"

using namespace wilsonnet;

namespace {

const GroupKind kU2{Family::U, 2};
const GroupKind kU3{Family::U, 3};

Vector kron_vectors(const std::vector<Vector>& vs) {
  Vector acc = Vector::Ones(1);
  for (const auto& v : vs) {
    Vector next(acc.size() * v.size());
    for (Eigen::Index i = 0; i < acc.size(); ++i) next.segment(i * v.size(), v.size()) = acc(i) * v;
    acc = std::move(next);
  }
  return acc;
}

ComplexTensor tensor_from(const Matrix& m, int dim, int slots) {
  ComplexTensor out(dim, slots);
  for (int r = 0; r < out.side(); ++r)
    for (int c = 0; c < out.side(); ++c) out.at(r, c) = m(r, c);
  return out;
}

std::vector<GroupElement> haar_list(const GroupKind& kind, int count, Rng& rng) {
  std::vector<GroupElement> out;
  for (int i = 0; i < count; ++i) out.push_back(haar_sample(kind, rng));
  return out;
}

std::vector<Matrix> matrices(const std::vector<GroupElement>& gs) {
  std::vector<Matrix> out;
  for (const auto& g : gs) out.push_back(g.matrix());
  return out;
}

// tr((h_1 (x) ... (x) h_d) o op)
Complex trace_with(const std::vector<Matrix>& hs, const IntTensor& op) {
  return (kron_all(hs) * to_matrix(to_complex(op))).trace();
}

}  // namespace

TEST_CASE("pi(sigma) moves the factor in slot i to slot sigma(i)") {
  Rng rng(1);
  for (const auto& sigma : all_permutations(3)) {
    std::vector<Vector> vs;
    for (int i = 0; i < 3; ++i) vs.push_back(Vector::Random(2));
    std::vector<Vector> moved(3);
    for (int i = 1; i <= 3; ++i) moved[static_cast<std::size_t>(sigma(i) - 1)] = vs[static_cast<std::size_t>(i - 1)];
    const Vector image = to_matrix(to_complex(perm_operator(sigma, 2))) * kron_vectors(vs);
    CHECK((image - kron_vectors(moved)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("pi is a homomorphism") {
  const auto all = all_permutations(3);
  for (const auto& a : all)
    for (const auto& b : all) {
      const Matrix lhs = to_matrix(to_complex(perm_operator(a, 2))) * to_matrix(to_complex(perm_operator(b, 2)));
      CHECK(max_abs(lhs - to_matrix(to_complex(perm_operator(a * b, 2)))) == 0.0);
    }
}

// For a cycle (a_1 ... a_k) with sigma(a_t) = a_{t+1}, the trace picks up
// h_{a_k} ... h_{a_1}. The opposite order is a different number for k >= 3.
TEST_CASE("trace against pi(sigma) follows the cycles in reverse") {
  Rng rng(2);
  const auto hs = matrices(haar_list(kU2, 4, rng));
  const Permutation sigma = Permutation::from_cycles(4, {{1, 3, 4}});
  const Complex value = trace_with(hs, perm_operator(sigma, 2));
  const Complex expected = (hs[3] * hs[2] * hs[0]).trace() * hs[1].trace();
  CHECK(std::abs(value - expected) < 1e-12);
  const Complex opposite = (hs[0] * hs[2] * hs[3]).trace() * hs[1].trace();
  CHECK(std::abs(value - opposite) > 1e-3);
}

TEST_CASE("mixed operator special cases") {
  for (const auto& sigma : all_permutations(3)) {
    const MixedSignature sig({{2, 0}, {1, 0}});
    CHECK(mixed_operator(sigma, sig, 2) == perm_operator(sigma, 2));
  }
  const IntTensor dual_identity = mixed_operator(Permutation::identity(1), MixedSignature({{0, 1}}), 3);
  CHECK(dual_identity == perm_operator(Permutation::identity(1), 3));
  CHECK_THROWS(MixedSignature({{0, 0}}));
  CHECK_THROWS(MixedSignature({{-1, 2}}));
  CHECK_THROWS(mixed_operator(Permutation::identity(2), MixedSignature({{1, 0}}), 2));
}

TEST_CASE("the (123) diagram on ((0,1),(2,0)) is tr(g^-1 h^2)") {
  const MixedSignature sig({{0, 1}, {2, 0}});
  const Permutation sigma = Permutation::from_cycles(3, {{1, 2, 3}});
  for (const GroupKind kind : {kU2, kU3}) {
    const IntTensor op = mixed_operator(sigma, sig, kind.matrix_dim());
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
      const Configuration c = Configuration::haar(Graph::bouquet(2), kind, rng);
      const Matrix& g = c.value(0).matrix();
      const Matrix& h = c.value(1).matrix();
      const Complex expected = (g.adjoint() * h * h).trace();
      CHECK(std::abs(eval_spin_network(c, sig, op) - expected) < 1e-12);
    }
  }
  const WilsonProduct compiled = compile_unitary(sigma, sig);
  CHECK(compiled.sign == 1);
  REQUIRE(compiled.loops.size() == 1);
  CHECK(compiled.loops[0] == Loop{{{0, -1}, {1, 1}, {1, 1}}});
}

TEST_CASE("slot actions use the contragredient on dual slots") {
  Rng rng(4);
  const auto gs = haar_list(kU2, 2, rng);
  const auto actions = slot_actions(MixedSignature({{1, 1}, {0, 1}}), gs);
  REQUIRE(actions.size() == 3);
  CHECK(max_abs(actions[0] - gs[0].matrix()) == 0.0);
  CHECK(max_abs(actions[1] - gs[0].matrix().conjugate()) < 1e-15);
  CHECK(max_abs(actions[2] - gs[1].matrix().conjugate()) < 1e-15);
}

TEST_CASE("spin network evaluation basics") {
  Rng rng(5);
  const MixedSignature sig({{1, 1}, {1, 0}});
  const IntTensor id = perm_operator(Permutation::identity(3), 3);
  CHECK(std::abs(eval_spin_network(Configuration::identity(Graph::bouquet(2), kU3), sig, id) - 27.0) < 1e-12);

  const Configuration c = Configuration::haar(Graph::bouquet(1), kU3, rng);
  const IntTensor one = perm_operator(Permutation::identity(1), 3);
  CHECK(std::abs(eval_spin_network(c, MixedSignature({{1, 0}}), one) - c.value(0).matrix().trace()) < 1e-12);
  CHECK(std::abs(eval_spin_network(c, MixedSignature({{0, 1}}), one) -
                 std::conj(c.value(0).matrix().trace())) < 1e-12);
  CHECK_THROWS(eval_spin_network(c, MixedSignature({{2, 0}}), one));
}

TEST_CASE("unitary compiler on random diagrams matches the oracle") {
  Rng rng(6);
  for (int t = 0; t < 30; ++t) {
    std::uniform_int_distribution<int> deg(0, 2);
    std::vector<EdgeDegree> edges{{deg(rng), deg(rng)}, {deg(rng), deg(rng)}};
    if (edges[0].p + edges[0].q + edges[1].p + edges[1].q == 0) edges[0].p = 1;
    const MixedSignature sig(edges);
    std::vector<int> images(static_cast<std::size_t>(sig.degree()));
    std::iota(images.begin(), images.end(), 1);
    std::shuffle(images.begin(), images.end(), rng);
    const Permutation sigma(images);
    const Configuration c = Configuration::haar(Graph::bouquet(2), kU2, rng);
    const Complex oracle = eval_spin_network(c, sig, mixed_operator(sigma, sig, 2));
    CHECK(std::abs(evaluate(compile_unitary(sigma, sig), c) - oracle) < 1e-10);
  }
  const WilsonProduct trivial = compile_unitary(Permutation::identity(2), MixedSignature({{1, 0}, {1, 0}}));
  CHECK(trivial.loops == std::vector<Loop>{Loop{{{0, 1}}}, Loop{{{1, 1}}}});
}

TEST_CASE("canonical rotation picks the least rotation") {
  CHECK(canonical_rotation(Loop{{{1, 1}, {1, 1}, {0, -1}}}) == Loop{{{0, -1}, {1, 1}, {1, 1}}});
  CHECK(canonical_rotation(Loop{{{0, 1}, {0, -1}}}) == Loop{{{0, -1}, {0, 1}}});
}

TEST_CASE("brauer operator special cases") {
  CHECK(brauer_operator(Pairing::from_blocks(1, {{1, 2}}), {Family::O, 2}, 1) ==
        perm_operator(Permutation::identity(1), 2));
  for (const GroupKind kind : {GroupKind(Family::O, 3), GroupKind(Family::Sp, 1)}) {
    const Pairing straight = Pairing::from_blocks(3, {{1, 4}, {2, 5}, {3, 6}});
    CHECK(brauer_operator(straight, kind, 3) == perm_operator(Permutation::identity(3), kind.matrix_dim()));
  }
  CHECK_THROWS(brauer_operator(Pairing::from_blocks(1, {{1, 2}}), kU2, 1));
  for (const auto& tau : enumerate_pairings(2)) {
    const IntTensor op = brauer_operator(tau, {Family::Sp, 2}, 2);
    for (auto x : op.entries()) CHECK(std::abs(x) <= 1);
  }
}

// Builds J_tau from its defining sum in the basis f_i = Q e_i and reads the
// operator off in the canonical basis.
TEST_CASE("J_tau does not depend on the orthonormal basis") {
  const GroupKind kind{Family::O, 3};
  Rng rng(7);
  const Matrix q = haar_sample(kind, rng).matrix();
  for (const auto& tau : enumerate_pairings(2)) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(81);  // coordinates of the V^{(x)4} element
    for (int idx = 0; idx < 81; ++idx) {
      const int i[4] = {idx / 27, (idx / 9) % 3, (idx / 3) % 3, idx % 3};
      Complex coef = 1.0;
      for (const auto& [k, l] : tau.blocks())
        coef *= (q.col(i[k - 1]).transpose() * q.col(i[l - 1])).value();
      if (std::abs(coef) < 1e-15) continue;
      x += coef * kron_vectors({q.col(i[0]), q.col(i[1]), q.col(i[2]), q.col(i[3])});
    }
    // v_1 (x) v_2 (x) v_3 (x) v_4 sends w_1 (x) w_2 to <v_1,w_1><v_2,w_2> v_3 (x) v_4.
    const IntTensor op = brauer_operator(tau, kind, 2);
    double worst = 0.0;
    for (int c = 0; c < 9; ++c)
      for (int b = 0; b < 9; ++b) worst = std::max(worst, std::abs(x(b * 9 + c) - static_cast<double>(op.at(c, b))));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("brauer operators commute with the diagonal action") {
  Rng rng(8);
  for (const GroupKind kind : {GroupKind(Family::O, 3), GroupKind(Family::SO, 3), GroupKind(Family::Sp, 1)}) {
    for (const auto& tau : enumerate_pairings(3)) {
      const IntTensor op = brauer_operator(tau, kind, 3);
      const Matrix g = haar_sample(kind, rng).matrix();
      CHECK(commutator_defect(op, {g, g, g}) < 1e-10);
    }
  }
  // A generic operator does not commute, and both code paths agree on it.
  IntTensor lopsided(2, 2);
  lopsided.at(0, 1) = 1;
  const Matrix g = haar_sample({Family::O, 2}, rng).matrix();
  const double sparse = commutator_defect(lopsided, {g, g});
  CHECK(sparse > 1e-3);
  CHECK(std::abs(commutator_defect(to_complex(lopsided), {g, g}) - sparse) < 1e-14);
}

TEST_CASE("slot transpose") {
  Rng rng(9);
  for (const GroupKind kind : {GroupKind(Family::O, 3), GroupKind(Family::SO, 4), GroupKind(Family::Sp, 2)}) {
    const double eps = symmetry_sign(kind);
    for (int t = 0; t < 20; ++t) {
      const GroupElement g = haar_sample(kind, rng);
      const Matrix tg = to_matrix(apply_slot_transpose(from_matrix(g.matrix()), 1, kind));
      CHECK(max_abs(tg - eps * g.inverse().matrix()) < 1e-12);
    }
    const int m = kind.matrix_dim();
    const ComplexTensor x = tensor_from(Matrix::Random(m * m, m * m), m, 2);
    CHECK(apply_slot_transpose(apply_slot_transpose(x, 2, kind), 2, kind) == x);
    CHECK_THROWS(apply_slot_transpose(x, 3, kind));
  }
}

TEST_CASE("flip normalization turns J_tau into pi(sigma) for symmetric forms") {
  for (const GroupKind kind : {GroupKind(Family::O, 2), GroupKind(Family::O, 3)}) {
    for (int p = 1; p <= 4; ++p)
      for (const auto& tau : enumerate_pairings(p)) {
        const FlipNormalization norm = normalize_pairing(tau);
        IntTensor op = brauer_operator(tau, kind, p);
        for (int i : norm.flips) op = apply_slot_transpose(op, i, kind);
        REQUIRE(op == perm_operator(norm.sigma, kind.matrix_dim()));
      }
  }
}

// A skew form changes sign whenever the flips reverse a block of tau.
TEST_CASE("for the symplectic form the flips cost the sign of the reversed blocks") {
  for (const GroupKind kind : {GroupKind(Family::Sp, 1), GroupKind(Family::Sp, 2)}) {
    for (int p = 1; p <= 4; ++p)
      for (const auto& tau : enumerate_pairings(p)) {
        const FlipNormalization norm = normalize_pairing(tau);
        IntTensor op = brauer_operator(tau, kind, p);
        for (int i : norm.flips) op = apply_slot_transpose(op, i, kind);
        IntTensor target = perm_operator(norm.sigma, kind.matrix_dim());
        if (reversed_blocks(tau, norm.flips) % 2 == 1)
          for (auto& x : target.entries()) x = -x;
        REQUIRE(op == target);
      }
  }
}

TEST_CASE("pairing two top points and two bottom points gives m for Sp") {
  // sum over c of omega_{c1 c2} (g^T omega g)_{c1 c2} = sum omega^2 = m.
  const Pairing cup_cap = Pairing::from_blocks(2, {{1, 2}, {3, 4}});
  const GroupKind kind{Family::Sp, 2};
  const MixedSignature sig({{2, 0}});
  Rng rng(10);
  const Configuration c = Configuration::haar(Graph::bouquet(1), kind, rng);
  CHECK(std::abs(eval_spin_network(c, sig, brauer_operator(cup_cap, kind, 2)) - 4.0) < 1e-12);
  const WilsonProduct compiled = compile_orthosymplectic(cup_cap, sig, kind);
  CHECK(compiled.sign == 1);
  CHECK(std::abs(evaluate(compiled, c) - 4.0) < 1e-12);
}

TEST_CASE("orthosymplectic compiler") {
  SUBCASE("straight pairings give products of characters") {
    const Pairing straight = Pairing::from_blocks(3, {{1, 4}, {2, 5}, {3, 6}});
    const WilsonProduct w = compile_orthosymplectic(straight, MixedSignature({{2, 0}, {1, 0}}), {Family::O, 3});
    CHECK(w.sign == 1);
    CHECK(w.loops == std::vector<Loop>{Loop{{{0, 1}}}, Loop{{{0, 1}}}, Loop{{{1, 1}}}});
  }
  SUBCASE("four-block pairing") {
    const Pairing tau = Pairing::from_blocks(4, {{1, 3}, {2, 8}, {4, 7}, {5, 6}});
    const MixedSignature sig({{1, 0}, {1, 0}, {1, 0}, {1, 0}});
    for (const GroupKind kind : {GroupKind(Family::O, 3), GroupKind(Family::Sp, 1)}) {
      Rng rng(11);
      const WilsonProduct w = compile_orthosymplectic(tau, sig, kind);
      // sigma = (1 3 4 2) with slots 2, 3, 4 inverted.
      REQUIRE(w.loops.size() == 1);
      CHECK(w.loops[0] == canonical_rotation(Loop{{{0, 1}, {2, -1}, {3, -1}, {1, -1}}}));
      // Three flips and three reversed blocks: the signs cancel.
      CHECK(w.sign == 1);
      const IntTensor op = brauer_operator(tau, kind, 4);
      for (int t = 0; t < 5; ++t) {
        const Configuration c = Configuration::haar(Graph::bouquet(4), kind, rng);
        CHECK(std::abs(evaluate(w, c) - eval_spin_network(c, sig, op)) < 1e-9);
      }
    }
  }
  SUBCASE("errors") {
    const Pairing tau = Pairing::from_blocks(1, {{1, 2}});
    CHECK_THROWS(compile_orthosymplectic(tau, MixedSignature({{1, 0}}), kU2));
    CHECK_THROWS(compile_orthosymplectic(tau, MixedSignature({{0, 1}}), {Family::O, 2}));
    CHECK_THROWS(compile_orthosymplectic(tau, MixedSignature({{2, 0}}), {Family::O, 2}));
  }
}

TEST_CASE("dense memory bound") {
  CHECK_THROWS_AS(perm_operator(Permutation::identity(12), 2), std::length_error);
  CHECK_NOTHROW(perm_operator(Permutation::identity(5), 4));
}
