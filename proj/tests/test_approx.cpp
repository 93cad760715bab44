#include <doctest.h>

#include <random>

#include "homres/approx.hpp"
#include "homres/error.hpp"
#include "support/fixtures.hpp"

using namespace homres;

namespace {

ErrorKind kind_of_error(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InternalError;
}

Module sum_of(const AlgebraPtr& a, std::vector<Module> xs) { return direct_sum(a, xs).sum; }

}  // namespace

TEST_CASE("generator detection") {
  auto a = fx::truncated_poly(2);
  Module reg = Module::regular(a), k = fx::quotient_by(a, 1);
  CHECK(AddCategory({reg, k}).is_generator());
  CHECK(AddCategory({reg}).is_regular());
  CHECK_FALSE(AddCategory({k}).is_generator());
  CHECK(kind_of_error([&] { AddCategory({k}, true); }) == ErrorKind::HypothesesNotSatisfied);
  CHECK(kind_of_error([&] { AddCategory({}); }) == ErrorKind::InvalidInput);
  CHECK(kind_of_error([&] { AddCategory({Module::zero(a)}); }) == ErrorKind::InvalidInput);
  auto b = fx::a2();
  CHECK(AddCategory({vertex_projective(b, 0), vertex_projective(b, 1)}).is_generator());
  CHECK_FALSE(AddCategory({vertex_projective(b, 0)}).is_generator());
}

TEST_CASE("right approximations") {
  fx::Rng rng(41);
  auto a = fx::truncated_poly(3);
  Module reg = Module::regular(a), k = fx::quotient_by(a, 1), q = fx::quotient_by(a, 2);
  AddCategory c({k, q});
  for (int t = 0; t < 20; ++t) {
    Module x = fx::random_truncated_module(a, 3, 1 + rng() % 5, rng);
    Approximation ap = right_approximation(x, c);
    CHECK(is_right_approximation(ap.map, c));
    // Every map from a summand factors: check on random maps directly.
    for (std::size_t j = 0; j < c.summands().size(); ++j) {
      Matrix g = fx::random_hom(c.summands()[j], x, rng);
      HomSpace h(c.summands()[j], ap.source.sum);
      bool factors = false;
      // Solve ap * u = g over the Hom basis.
      Matrix sys(g.rows() * g.cols(), h.dim(), a->modulus()), rhs(g.rows() * g.cols(), 1, a->modulus());
      for (std::size_t l = 0; l < h.dim(); ++l) {
        Matrix img = ap.map.matrix() * h.basis()[l];
        for (std::size_t r = 0; r < g.rows(); ++r)
          for (std::size_t cc = 0; cc < g.cols(); ++cc) sys(r * g.cols() + cc, l) = img(r, cc);
      }
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t cc = 0; cc < g.cols(); ++cc) rhs(r * g.cols() + cc, 0) = g(r, cc);
      factors = solve_linear(sys, rhs).has_value();
      CHECK(factors);
    }
  }
  // The zero map from M is not an approximation of a module with maps from M.
  Module x = Module::regular(a);
  CHECK_FALSE(is_right_approximation(ModuleMap::zero(k, x), c));
}

TEST_CASE("add membership") {
  fx::Rng rng(42);
  auto a = fx::truncated_poly(3);
  Module reg = Module::regular(a), k = fx::quotient_by(a, 1), q = fx::quotient_by(a, 2);
  AddCategory c({reg, k});
  for (int t = 0; t < 10; ++t) {
    std::vector<Module> parts;
    const std::size_t n = 1 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) parts.push_back(rng() % 2 ? reg : k);
    Module x = fx::twist(sum_of(a, parts), rng);
    Membership m = add_membership(x, c);
    CHECK(m.member);
    REQUIRE(m.section.has_value());
    CHECK((m.approximation->map.matrix() * m.section->matrix()).is_identity());
    std::vector<Module> with_q = parts;
    with_q.push_back(q);
    CHECK_FALSE(add_membership(fx::twist(sum_of(a, with_q), rng), c).member);
  }
}

TEST_CASE("add M resolutions") {
  fx::Rng rng(43);
  auto a = fx::truncated_poly(3);
  Module reg = Module::regular(a), q = fx::quotient_by(a, 2);
  AddCategory c({reg, q});
  for (int t = 0; t < 15; ++t) {
    // Full Hom-basis approximations grow quickly; keep the instances small.
    Module x = fx::random_truncated_module(a, 3, 1 + rng() % 3, rng);
    Resolution r = addM_resolution(x, c, 1);
    CHECK(check_exactness(r) == "");
    for (const auto& term : r.terms) CHECK(add_membership(term, c).member);
  }
  auto b = fx::a2();
  Module p1 = vertex_projective(b, 0), p2 = vertex_projective(b, 1);
  Module s1 = map_cokernel(ModuleMap(p2, p1, HomSpace(p2, p1).basis()[0])).module;
  CHECK(kind_of_error([&] { addM_resolution(p1, AddCategory({s1}), 3); }) == ErrorKind::NotAGenerator);
}

TEST_CASE("perp membership") {
  auto a = fx::a2();
  Module p1 = vertex_projective(a, 0), p2 = vertex_projective(a, 1);
  Module s1 = map_cokernel(ModuleMap(p2, p1, HomSpace(p2, p1).basis()[0])).module;
  Module reg = Module::regular(a);
  CHECK_FALSE(perp_membership(s1, reg, 1));
  CHECK(perp_membership(p1, reg, 1));
  CHECK(perp_membership(s1, p1, 1));
  CHECK(kind_of_error([&] { perp_membership(s1, reg, std::nullopt); }) == ErrorKind::NeedsFiniteInjdim);
  auto k2 = fx::truncated_poly(2);
  CHECK(perp_membership(fx::quotient_by(k2, 1), Module::regular(k2), 0));
}

TEST_CASE("Auslander-Bridger kernels agree for two resolutions") {
  fx::Rng rng(44);
  auto a = fx::truncated_poly(2);
  Module reg = Module::regular(a), k = fx::quotient_by(a, 1);
  AddCategory proj({reg});
  for (int t = 0; t < 10; ++t) {
    Module x = fx::random_truncated_module(a, 2, 1 + rng() % 5, rng);
    for (std::size_t n = 1; n <= 3; ++n) {
      auto first = projective_resolution(x, 4);
      auto second = projective_resolution(x, 4, {CoverStrategy::Doubled, 0});
      auto rep = auslander_bridger_check(first, second, proj, n);
      CHECK(rep.agree());
      CHECK(rep.first_member == (rep.first_kernel.dim() == 0 || is_projective(rep.first_kernel)));
    }
  }
  Module x = fx::random_truncated_module(a, 2, 4, rng);
  auto r = projective_resolution(x, 3);
  CHECK(kind_of_error([&] { auslander_bridger_check(r, r, AddCategory({k}), 1); }) ==
        ErrorKind::HypothesesNotSatisfied);
  auto other = projective_resolution(k, 3);
  CHECK(kind_of_error([&] { auslander_bridger_check(r, other, proj, 1); }) == ErrorKind::InvalidInput);
  CHECK(kind_of_error([&] { auslander_bridger_check(r, r, proj, 0); }) == ErrorKind::InvalidInput);
  // A term outside add M violates the precondition.
  auto bad = r;
  bad.terms[0] = k;
  bad.maps[0] = ModuleMap::zero(k, x);
  CHECK(kind_of_error([&] { auslander_bridger_check(bad, r, proj, 2); }) == ErrorKind::HypothesesNotSatisfied);
}

TEST_CASE("resolution kernels") {
  auto a = fx::truncated_poly(2);
  Module k = fx::quotient_by(a, 1);
  auto r = projective_resolution(k, 3);
  for (std::size_t n = 1; n <= 3; ++n) CHECK(is_isomorphic(resolution_kernel(r, n), k) == Decision::Yes);
  CHECK_THROWS_AS(resolution_kernel(r, 0), Error);
  auto p = projective_resolution(Module::regular(a), 3);
  CHECK(resolution_kernel(p, 3).dim() == 0);
}
