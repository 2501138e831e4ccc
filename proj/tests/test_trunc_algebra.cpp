#include <doctest.h>

#include <random>

#include "frobpush/errors.hpp"
#include "frobpush/trunc_algebra.hpp"
#include "oracles.hpp"

using namespace frobpush;

namespace {

// span(D_{2l-N} . V) computed with stepwise derivatives and span enumeration.
std::size_t image_dim_oracle(int n, std::uint32_t p, int ell, const std::vector<oracle::Row>& v) {
  const int top = n * (static_cast<int>(p) - 1);
  const std::vector<int> caps(static_cast<std::size_t>(n), static_cast<int>(p) - 1);
  const auto source = oracle::box(caps, ell);
  const auto target = oracle::box(caps, top - ell);
  std::vector<oracle::Row> images;
  for (const auto& e : oracle::box(caps, 2 * ell - top)) {
    for (const auto& vec : v) {
      oracle::Row img(target.size(), 0);
      for (std::size_t c = 0; c < source.size(); ++c) {
        if (vec[c] == 0) continue;
        const auto r = oracle::derive_stepwise(e, source[c], p);
        if (!r) continue;
        const auto pos = static_cast<std::size_t>(
            std::find(target.begin(), target.end(), r->second) - target.begin());
        img[pos] = (img[pos] + vec[c] * r->first) % p;
      }
      images.push_back(std::move(img));
    }
  }
  return oracle::span_rank(images, p);
}

}  // namespace

TEST_CASE("graded pieces of R") {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint32_t pv : {2U, 3U, 5U}) {
      const Prime p(pv);
      const int top = top_degree(n, p);
      CHECK(top == n * static_cast<int>(pv - 1));
      std::size_t total = 0;
      for (int ell = -1; ell <= top + 1; ++ell) {
        const RGrade g(n, p, ell);
        CHECK(static_cast<std::int64_t>(g.dim()) == oracle::truncated_count(n, static_cast<int>(pv), ell));
        CHECK(g.dim() == RGrade(n, p, top - ell).dim());
        total += g.dim();
      }
      std::size_t full = 1;
      for (int i = 0; i < n; ++i) full *= pv;
      CHECK(total == full);
    }
  }
  const RGrade g(2, Prime(3), 2);
  CHECK(g.index_of(MultiIndex{1, 1}) == 1);
  CHECK_THROWS_AS(g.index_of(MultiIndex{0, 3}), PreconditionError);
}

TEST_CASE("derivative action examples") {
  const Prime three(3);
  auto r = apply_diff(DiffMonomial(MultiIndex{1, 0}, three), MultiIndex{2, 1}, three);
  REQUIRE_FALSE(r.is_zero());
  CHECK(r.coeff.value() == 2);
  CHECK(*r.result == MultiIndex{1, 1});

  r = apply_diff(DiffMonomial(MultiIndex{2}, three), MultiIndex{2}, three);
  REQUIRE_FALSE(r.is_zero());
  CHECK(r.coeff.value() == 2);
  CHECK(*r.result == MultiIndex{0});

  CHECK(apply_diff(DiffMonomial(MultiIndex{0, 1}, three), MultiIndex{1, 0}, three).is_zero());

  CHECK_THROWS_AS(DiffMonomial(MultiIndex{3}, three), PreconditionError);
  CHECK_THROWS_AS(apply_diff(DiffMonomial(MultiIndex{1}, three), MultiIndex{3}, three), PreconditionError);
  CHECK_THROWS_AS(apply_diff(DiffMonomial(MultiIndex{1}, three), MultiIndex{1, 0}, three), DimensionError);
}

TEST_CASE("closed-form coefficients match one derivative at a time") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint32_t pv : {2U, 3U, 5U}) {
      const Prime p(pv);
      const std::vector<int> caps(static_cast<std::size_t>(n), static_cast<int>(pv) - 1);
      for (int d = 0; d <= top_degree(n, p); ++d) {
        for (const auto& e : oracle::box(caps, d)) {
          for (int k = 0; k <= top_degree(n, p); ++k) {
            for (const auto& mono : oracle::box(caps, k)) {
              const auto got = apply_diff(DiffMonomial(MultiIndex(e), p), MultiIndex(mono), p);
              const auto want = oracle::derive_stepwise(e, mono, pv);
              REQUIRE(got.is_zero() == !want.has_value());
              if (want) {
                CHECK(got.coeff.value() == want->first);
                CHECK(got.result->exponents() == want->second);
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("partial derivatives commute") {
  for (int n = 2; n <= 3; ++n) {
    for (std::uint32_t pv : {2U, 3U, 5U}) {
      const Prime p(pv);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          std::vector<int> ei(static_cast<std::size_t>(n), 0);
          std::vector<int> ej(static_cast<std::size_t>(n), 0);
          std::vector<int> eij(static_cast<std::size_t>(n), 0);
          ei[static_cast<std::size_t>(i)] = 1;
          ej[static_cast<std::size_t>(j)] = 1;
          ++eij[static_cast<std::size_t>(i)];
          ++eij[static_cast<std::size_t>(j)];
          const DiffMonomial di(MultiIndex(ei), p);
          const DiffMonomial dj(MultiIndex(ej), p);
          for (int grade = 2; grade <= top_degree(n, p); ++grade) {
            const FpMatrix ij = operator_matrix(di, n, p, grade - 1) * operator_matrix(dj, n, p, grade);
            const FpMatrix ji = operator_matrix(dj, n, p, grade - 1) * operator_matrix(di, n, p, grade);
            CHECK(ij == ji);
            if (pv > 2 || i != j) CHECK(ij == operator_matrix(DiffMonomial(MultiIndex(eij), p), n, p, grade));
          }
        }
      }
    }
  }
}

TEST_CASE("pairing with the top monomial") {
  CHECK(omega_pairing_matrix(1, Prime(3), 1) == FpMatrix::from_rows({{2}}, Prime(3)));
  CHECK(omega_pairing_matrix(2, Prime(2), 2) == FpMatrix::from_rows({{1}}, Prime(2)));
  CHECK(omega_pairing_matrix(1, Prime(5), 4) == FpMatrix::from_rows({{4}}, Prime(5)));
  CHECK_THROWS_AS(omega_pairing_matrix(1, Prime(5), 5), PreconditionError);
  CHECK_THROWS_AS(omega_pairing_matrix(1, Prime(5), -1), PreconditionError);

  for (std::uint32_t pv : {2U, 3U, 5U, 7U, 11U, 13U}) {
    // (p-1)! = -1 mod p
    CHECK(omega_pairing_matrix(1, Prime(pv), static_cast<int>(pv) - 1)(0, 0) == pv - 1);
  }
  for (int n = 1; n <= 3; ++n) {
    for (std::uint32_t pv : {2U, 3U, 5U}) {
      for (int ell = 0; ell <= top_degree(n, Prime(pv)); ++ell) {
        const FpMatrix w = omega_pairing_matrix(n, Prime(pv), ell);
        CHECK(w.rows() == w.cols());
        CHECK(rank(w) == w.rows());
      }
    }
  }
}

TEST_CASE("subspace construction") {
  const Prime p(3);
  const GradedSubspace v(2, p, 2, FpMatrix::from_rows({{1, 0, 1}, {2, 0, 2}, {0, 1, 0}}, p));
  CHECK(v.dim() == 2);
  CHECK(v.grade() == 2);
  CHECK_THROWS_AS(GradedSubspace(2, p, 5, FpMatrix(1, 0, p)), PreconditionError);
  CHECK_THROWS_AS(GradedSubspace(2, p, 2, FpMatrix(1, 2, p)), DimensionError);
  CHECK_THROWS_AS(GradedSubspace(2, p, 2, FpMatrix(1, 3, Prime(5))), ModulusError);

  const std::vector<std::size_t> pick{0, 2};
  CHECK(GradedSubspace::coordinate(2, p, 2, pick).dim() == 2);
  const std::vector<std::size_t> bad{3};
  CHECK_THROWS_AS(GradedSubspace::coordinate(2, p, 2, bad), DimensionError);

  std::mt19937_64 a(99);
  std::mt19937_64 b(99);
  const auto va = random_subspace(3, p, 3, 4, a);
  const auto vb = random_subspace(3, p, 3, 4, b);
  CHECK(va.dim() == 4);
  CHECK(va.basis() == vb.basis());
  CHECK_THROWS_AS(random_subspace(1, p, 1, 2, a), PreconditionError);
}

TEST_CASE("image dimension examples") {
  const Prime three(3);
  const Prime two(2);
  const std::vector<std::size_t> first{0};
  CHECK(spanned_image_dim(GradedSubspace::coordinate(1, three, 2, first)) == 1);

  // middle grade: only the identity operator
  const GradedSubspace mid(2, three, 2, FpMatrix::from_rows({{1, 1, 0}, {0, 0, 1}}, three));
  CHECK(spanned_image_dim(mid) == 2);

  CHECK(spanned_image_dim(GradedSubspace::coordinate(2, two, 2, first)) == 1);
  CHECK_THROWS_AS(spanned_image_dim(GradedSubspace::coordinate(2, three, 1, first)), PreconditionError);

  const GradedSubspace zero(2, three, 3, FpMatrix(0, 2, three));
  const auto verdict = check_prop36(zero);
  CHECK(verdict.holds);
  CHECK(verdict.subspace_dim == 0);
  CHECK(verdict.image_dim == 0);

  const std::vector<std::size_t> y1sq_y2{1};
  REQUIRE(RGrade(2, three, 3).basis()[1] == MultiIndex{2, 1});
  const auto v3 = check_prop36(GradedSubspace::coordinate(2, three, 3, y1sq_y2));
  CHECK(v3.holds);
  CHECK(v3.image_dim >= 1);
  CHECK_FALSE(v3.witness.has_value());
}

TEST_CASE("every line at the top grade satisfies the inequality") {
  for (int n = 1; n <= 2; ++n) {
    for (std::uint32_t pv : {2U, 3U, 5U}) {
      const Prime p(pv);
      const int top = top_degree(n, p);
      // R^top is one-dimensional
      const GradedSubspace line(n, p, top, FpMatrix::from_rows({{1}}, p));
      CHECK(check_prop36(line).holds);
      CHECK(check_prop36(line).image_dim == 1);
    }
  }
}

TEST_CASE("image dimension agrees with a stepwise oracle on random subspaces") {
  std::mt19937_64 rng(31337);
  const std::vector<std::pair<int, std::uint32_t>> grid{{1, 3}, {1, 5}, {2, 2}, {2, 3}, {3, 2}};
  for (const auto& [n, pv] : grid) {
    const Prime p(pv);
    const int top = top_degree(n, p);
    for (int ell = (top + 1) / 2; ell <= top; ++ell) {
      const std::size_t ambient = RGrade(n, p, ell).dim();
      for (int trial = 0; trial < 6; ++trial) {
        const std::size_t dim = 1 + rng() % ambient;
        if (dim > 4) continue;
        const GradedSubspace v = random_subspace(n, p, ell, dim, rng);
        std::vector<oracle::Row> rows;
        for (std::size_t r = 0; r < v.dim(); ++r) rows.emplace_back(v.basis().row(r).begin(), v.basis().row(r).end());
        const std::size_t expected = image_dim_oracle(n, pv, ell, rows);
        CHECK(spanned_image_dim(v) == expected);
        CHECK(check_prop36(v).holds);
      }
    }
  }
}
