#include <doctest.h>

#include <random>

#include "homres/error.hpp"
#include "homres/resolution.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace homres;

namespace {

int kind_of(const AlgebraPtr& a) { return a->quiver_vertices() == 2 ? 2 : (a->dim() == 2 ? 0 : 1); }

}  // namespace

TEST_CASE("Ext(k, k) over the dual numbers is one-dimensional in every degree") {
  auto a = fx::truncated_poly(2);
  Module k = fx::quotient_by(a, 1);
  CHECK(ext_dims(k, k, 20).dims == std::vector<std::size_t>(21, 1));
  // Odd characteristic gives the same answer.
  auto a3 = fx::truncated_poly(2, 3);
  Module k3 = fx::quotient_by(a3, 1);
  CHECK(ext_dims(k3, k3, 6).dims == std::vector<std::size_t>(7, 1));
}

TEST_CASE("Ext table of the path algebra 1 -> 2") {
  auto a = fx::a2();
  Module p1 = vertex_projective(a, 0), p2 = vertex_projective(a, 1);
  Module s1 = map_cokernel(ModuleMap(p2, p1, HomSpace(p2, p1).basis()[0])).module;
  CHECK(ext_dims(s1, p2, 2).dims == std::vector<std::size_t>{0, 1, 0});
  CHECK(ext_dims(s1, s1, 2).dims == std::vector<std::size_t>{1, 0, 0});
  CHECK(ext_dims(p2, s1, 2).dims == std::vector<std::size_t>{0, 0, 0});
  CHECK(ext_dims(s1, p1, 2).dims == std::vector<std::size_t>{0, 0, 0});
  CHECK(proj_dim(s1, 5).value == 1u);
  CHECK(proj_dim(p1, 5).value == 0u);
}

TEST_CASE("global and injective dimensions") {
  CHECK(gl_dim(fx::truncated_poly(2), 6).value == std::nullopt);
  CHECK(gl_dim(fx::truncated_poly(3), 6).value == std::nullopt);
  CHECK(gl_dim(fx::a2(), 6).value == 1u);
  CHECK(gl_dim(fx::ground_field(5), 3).value == 0u);
  QuiverPresentation a3;
  a3.vertices = 3;
  a3.arrows = {{0, 1}, {1, 2}};
  CHECK(gl_dim(from_quiver(a3, 2), 6).value == 1u);
  a3.relations = {{0, 1}};
  CHECK(gl_dim(from_quiver(a3, 2), 6).value == 2u);

  CHECK(inj_dim(Module::regular(fx::truncated_poly(2)), 6).value == 0u);
  CHECK(inj_dim(Module::regular(fx::truncated_poly(3)), 6).value == 0u);
  CHECK(inj_dim(Module::regular(fx::a2()), 6).value == 1u);
  CHECK(inj_dim(fx::quotient_by(fx::truncated_poly(2), 1), 6).value == std::nullopt);
}

TEST_CASE("projective resolutions are exact") {
  fx::Rng rng(31);
  for (const auto& a : {fx::truncated_poly(2), fx::truncated_poly(3), fx::a2()}) {
    for (int t = 0; t < 15; ++t) {
      Module x = fx::random_module(kind_of(a), a, 1 + rng() % 5, rng);
      for (CoverStrategy s : {CoverStrategy::Evaluation, CoverStrategy::Permuted, CoverStrategy::Doubled}) {
        Resolution r = projective_resolution(x, 4, {s, rng()});
        CHECK(check_exactness(r) == "");
        for (const auto& term : r.terms) CHECK(is_projective(term));
      }
    }
  }
}

TEST_CASE("exactness checker catches broken resolutions") {
  auto a = fx::truncated_poly(2);
  Module k = fx::quotient_by(a, 1);
  Resolution r = projective_resolution(k, 3);
  r.maps[2] = ModuleMap::zero(r.terms[2], r.terms[1]);
  CHECK(check_exactness(r) != "");
}

TEST_CASE("Ext and projective dimension do not depend on the chosen covers") {
  fx::Rng rng(32);
  for (const auto& a : {fx::truncated_poly(2), fx::truncated_poly(3), fx::a2()}) {
    for (int t = 0; t < 10; ++t) {
      Module x = fx::random_module(kind_of(a), a, 1 + rng() % 5, rng);
      Module y = fx::random_module(kind_of(a), a, 1 + rng() % 4, rng);
      auto base = ext_dims(x, y, 3).dims;
      auto pd = proj_dim(x, 4).value;
      for (CoverStrategy s : {CoverStrategy::Permuted, CoverStrategy::Doubled}) {
        CoverOptions o{s, rng()};
        CHECK(ext_dims(x, y, 3, o).dims == base);
        CHECK(proj_dim(x, 4, o).value == pd);
      }
    }
  }
}

TEST_CASE("Ext^0 is Hom and Ext is insensitive to isomorphism") {
  fx::Rng rng(33);
  for (const auto& a : {fx::truncated_poly(2), fx::a2()}) {
    for (int t = 0; t < 15; ++t) {
      Module x = fx::random_module(kind_of(a), a, 1 + rng() % 3, rng);
      Module y = fx::random_module(kind_of(a), a, 1 + rng() % 3, rng);
      auto dims = ext_dims(x, y, 2).dims;
      CHECK(dims[0] == oracle::hom_dim(x, y));
      CHECK(ext_dims(fx::twist(x, rng), fx::twist(y, rng), 2).dims == dims);
    }
  }
}

TEST_CASE("Ext computed through the opposite algebra") {
  // Ext^i_A(X, Y) = Ext^i_{A^op}(DY, DX).
  fx::Rng rng(34);
  for (const auto& a : {fx::truncated_poly(3), fx::a2()}) {
    auto op = opposite(a);
    for (int t = 0; t < 10; ++t) {
      Module x = fx::random_module(kind_of(a), a, 1 + rng() % 4, rng);
      Module y = fx::random_module(kind_of(a), a, 1 + rng() % 4, rng);
      CHECK(ext_dims(x, y, 2).dims == ext_dims(dual_module(y, op), dual_module(x, op), 2).dims);
    }
  }
}

TEST_CASE("projectivity test") {
  fx::Rng rng(35);
  auto a = fx::a2();
  CHECK(is_projective(Module::regular(a)));
  CHECK(is_projective(vertex_projective(a, 0)));
  CHECK(is_projective(Module::zero(a)));
  for (const auto& s : simple_modules(a))
    CHECK(is_projective(s) == (is_isomorphic(s, vertex_projective(a, 1)) == Decision::Yes));
  // Over the dual numbers, projective means free.
  auto k2 = fx::truncated_poly(2);
  for (int t = 0; t < 20; ++t) {
    Module x = fx::random_truncated_module(k2, 2, 1 + rng() % 6, rng);
    bool free = x.dim() % 2 == 0 && rank(x.action(1)) == x.dim() / 2;
    CHECK(is_projective(x) == free);
  }
}

TEST_CASE("resolution too short for the requested Ext is an internal error") {
  auto a = fx::truncated_poly(2);
  Module k = fx::quotient_by(a, 1);
  Resolution r = projective_resolution(k, 1);
  CHECK_THROWS_AS(ext_from_resolution(r, k, 3), Error);
}
