#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "sphconv/catalog.hpp"
#include "sphconv/errors.hpp"
#include "sphconv/jet.hpp"
#include "support.hpp"

using namespace sphconv;
using cd = std::complex<double>;

namespace {

bool near(cd a, cd b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("jets of elementary functions") {
  const auto e = eval_jet(parse("exp(z)"), cd(0));
  CHECK(e.v == cd(1));
  CHECK(e.d1 == cd(1));
  CHECK(e.d2 == cd(1));

  const auto sq = eval_jet(parse("z^2"), cd(3));
  CHECK(sq.v == cd(9));
  CHECK(sq.d1 == cd(6));
  CHECK(sq.d2 == cd(2));

  // f1(z) = z/2 + O(z^3) from the series of sqrt(1 +- z)
  const auto f1 = eval_jet(builtin("f1").ast, cd(0));
  CHECK(near(f1.v, cd(0), 1e-16));
  CHECK(near(f1.d1, cd(0.5), 1e-15));
  CHECK(near(f1.d2, cd(0), 1e-15));
}

TEST_CASE("closed-form derivatives away from the origin") {
  const cd w(0.3, -0.4);
  const auto inv = eval_jet(parse("1/z"), w);
  CHECK(near(inv.d1, -1.0 / (w * w), 1e-14));
  CHECK(near(inv.d2, 2.0 / (w * w * w), 1e-13));

  const auto neg = eval_jet(parse("z^-3"), w);
  CHECK(near(neg.d1, -3.0 / std::pow(w, 4), 1e-12));
  CHECK(near(neg.d2, 12.0 / std::pow(w, 5), 1e-11));

  const auto s = eval_jet(parse("sqrt(1+z)"), w);
  CHECK(near(s.d1, 0.5 / std::sqrt(1.0 + w), 1e-15));
  CHECK(near(s.d2, -0.25 * std::pow(1.0 + w, -1.5), 1e-15));

  // f3 = z^2 e^z: f' = (2z + z^2) e^z, f'' = (2 + 4z + z^2) e^z
  const auto f3 = eval_jet(builtin("f3").ast, w);
  CHECK(near(f3.d1, (2.0 * w + w * w) * std::exp(w), 1e-14));
  CHECK(near(f3.d2, (2.0 + 4.0 * w + w * w) * std::exp(w), 1e-14));
}

TEST_CASE("poles and branch points raise") {
  CHECK_THROWS_AS(eval_jet(parse("1/z"), cd(0)), PoleError);
  CHECK_THROWS_AS(eval_jet(parse("z^-2"), cd(0)), PoleError);
  CHECK_THROWS_AS(eval_jet(parse("1/(z-0.5)"), cd(0.5)), PoleError);
  CHECK_THROWS_AS(eval_jet(parse("sqrt(z)"), cd(0)), BranchError);
  CHECK_NOTHROW(eval_jet(parse("z^0"), cd(0)));
  try {
    eval_jet(parse("1/(z-0.25i)"), cd(0, 0.25));
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.where() == cd(0, 0.25));
  }
}

TEST_CASE("jets agree with central differences on the catalog") {
  testing_support::Rng rng(3);
  const double step = 1e-5;
  for (std::string name : {"identity", "f1", "f2", "f3", "scale(0.5)", "rot(0.3,1)", "rot(0.2+0.1i,2)", "invrot(0.7)"}) {
    CAPTURE(name);
    const MapDefinition m = builtin(name);
    for (int k = 0; k < 20; ++k) {
      cd w = rng.in_disk(0.9);
      // the difference quotients degrade like |w|^-5 near the pole of invrot
      if (m.ast.op() == Op::Div && std::abs(w) < 0.3) w *= 0.3 / std::max(std::abs(w), 1e-3);
      CAPTURE(w);
      const auto j = eval_jet(m.ast, w);
      const auto f = [&](cd p) { return eval_jet(m.ast, p).v; };
      const cd d1 = (f(w + step) - f(w - step)) / (2 * step);
      const cd d2 = (f(w + step) - 2.0 * f(w) + f(w - step)) / (step * step);
      CHECK(std::abs(j.d1 - d1) <= 1e-6);
      CHECK(std::abs(j.d2 - d2) <= 1e-4);
    }
  }
}

TEST_CASE("jet arithmetic is exactly linear") {
  testing_support::Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const Jet2<> a{rng.in_disk(2), rng.in_disk(2), rng.in_disk(2)};
    const Jet2<> b{rng.in_disk(2), rng.in_disk(2), rng.in_disk(2)};
    const Jet2<> sum = a + b;
    CHECK(sum.v == a.v + b.v);
    CHECK(sum.d1 == a.d1 + b.d1);
    CHECK(sum.d2 == a.d2 + b.d2);
    CHECK((a - a) == Jet2<>::constant(0));
    CHECK((-a + a) == Jet2<>::constant(0));
  }
}

TEST_CASE("product and quotient rules invert each other") {
  testing_support::Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    const Jet2<> a{rng.in_disk(2), rng.in_disk(2), rng.in_disk(2)};
    Jet2<> b{rng.in_disk(2), rng.in_disk(2), rng.in_disk(2)};
    if (std::abs(b.v) < 0.1) b.v += 1.0;
    const Jet2<> back = (a * b) / b;
    CHECK(near(back.v, a.v, 1e-12));
    CHECK(near(back.d1, a.d1, 1e-11));
    CHECK(near(back.d2, a.d2, 1e-10));
  }
}

TEST_CASE("jets work in long double") {
  const auto j = eval_jet<long double>(builtin("f1").ast, std::complex<long double>(0.2L, 0.1L));
  const auto d = eval_jet(builtin("f1").ast, cd(0.2, 0.1));
  CHECK(std::abs(static_cast<double>(j.d1.real()) - d.d1.real()) < 1e-14);
  CHECK(std::abs(static_cast<double>(j.d2.imag()) - d.d2.imag()) < 1e-14);
}
