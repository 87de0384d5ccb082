#include <doctest.h>

#include <gaffney/exterior.hpp>
#include <gaffney/fields.hpp>

using namespace gaffney;

namespace {

KForm random_form(int n, int k, Rng& rng) {
  KForm w(n, k);
  for (std::size_t t = 0; t < w.size(); ++t) w[t] = rng.symmetric();
  return w;
}

double coeff_residual(const KForm& a, const KForm& b) {
  KForm diff = a - b;
  return diff.max_abs();
}

}  // namespace

TEST_CASE("generalized component access") {
  KForm w(4, 2);
  w.coeff(MultiIndex({1, 3})) = 2.5;
  CHECK(w.general({1, 3}) == 2.5);
  CHECK(w.general({3, 1}) == -2.5);
  CHECK(w.general({3, 3}) == 0.0);
  CHECK_THROWS_AS(w.general({1, 2, 3}), std::domain_error);
}

TEST_CASE("wedge basics") {
  const int n = 3;
  CHECK(coeff_residual(wedge(basis_one_form(n, 1), basis_one_form(n, 2)),
                       basis_form(n, MultiIndex({1, 2}))) == 0.0);
  // repeated factor annihilates
  CHECK(wedge(basis_one_form(n, 1), basis_form(n, MultiIndex({1, 3}))).max_abs() == 0.0);
  // (dx1 + dx2) ^ dx3 = dx13 + dx23
  KForm a = basis_one_form(n, 1) + basis_one_form(n, 2);
  KForm expect = basis_form(n, MultiIndex({1, 3})) + basis_form(n, MultiIndex({2, 3}));
  CHECK(coeff_residual(wedge(a, basis_one_form(n, 3)), expect) == 0.0);
  CHECK_THROWS_AS(wedge(basis_form(3, MultiIndex({1, 2})), basis_form(3, MultiIndex({2, 3}))),
                  std::domain_error);
}

TEST_CASE("one-form wedge matches the insertion-sign expansion") {
  // (v ^ w)^I = sum_{g} (-1)^{g-1} v^{i_g} w^{I without i_g}
  Rng rng(11);
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k < n; ++k)
      for (int rep = 0; rep < 20; ++rep) {
        KForm v = random_form(n, 1, rng);
        KForm w = random_form(n, k, rng);
        KForm vw = wedge(v, w);
        for (const auto& I : enumerate(n, k + 1)) {
          double expect = 0;
          for (int g = 0; g < k + 1; ++g) {
            auto [s, rest] = remove(I, I[g]);
            expect += s * v[static_cast<std::size_t>(I[g] - 1)] * w.coeff(rest);
          }
          CHECK(std::abs(vw.coeff(I) - expect) < 1e-14);
        }
      }
}

TEST_CASE("wedge is graded anticommutative and associative") {
  Rng rng(17);
  for (int n = 2; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      for (int l = 0; k + l <= n; ++l) {
        KForm a = random_form(n, k, rng);
        KForm b = random_form(n, l, rng);
        KForm ab = wedge(a, b);
        KForm ba = wedge(b, a);
        const double sign = (k * l) % 2 == 0 ? 1.0 : -1.0;
        CHECK(coeff_residual(ab, sign * ba) < 1e-12);
        for (int m = 0; k + l + m <= n; ++m) {
          KForm c = random_form(n, m, rng);
          CHECK(coeff_residual(wedge(ab, c), wedge(a, wedge(b, c))) < 1e-12);
        }
      }
}

TEST_CASE("interior product basics") {
  const int n = 3;
  KForm dx12 = basis_form(n, MultiIndex({1, 2}));
  CHECK(coeff_residual(interior(basis_one_form(n, 1), dx12), basis_one_form(n, 2)) == 0.0);
  CHECK(coeff_residual(interior(basis_one_form(n, 2), dx12),
                       -1.0 * basis_one_form(n, 1)) == 0.0);
  CHECK_THROWS_AS(interior(basis_one_form(n, 1), KForm(n, 0)), std::domain_error);
}

TEST_CASE("decomposition identity v^(v-|w) + v-|(v^w) = |v|^2 w") {
  Rng rng(23);
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k < n; ++k)
      for (int rep = 0; rep < 200; ++rep) {
        KForm v = random_form(n, 1, rng);
        KForm w = random_form(n, k, rng);
        KForm lhs = wedge(v, interior(v, w)) + interior(v, wedge(v, w));
        CHECK(coeff_residual(lhs, v.norm_sq() * w) < 1e-12);
      }
}

TEST_CASE("adjunction <v^a;b> = <a;v-|b>") {
  Rng rng(29);
  for (int n = 2; n <= 6; ++n)
    for (int k = 0; k < n; ++k)
      for (int rep = 0; rep < 200; ++rep) {
        KForm v = random_form(n, 1, rng);
        KForm a = random_form(n, k, rng);
        KForm b = random_form(n, k + 1, rng);
        CHECK(std::abs(inner(wedge(v, a), b) - inner(a, interior(v, b))) < 1e-12);
      }
}

TEST_CASE("inner product on basis forms") {
  KForm dx12 = basis_form(3, MultiIndex({1, 2}));
  KForm dx13 = basis_form(3, MultiIndex({1, 3}));
  CHECK(inner(dx12, dx12) == 1.0);
  CHECK(inner(dx12, dx13) == 0.0);
}

TEST_CASE("hodge star") {
  CHECK(coeff_residual(hodge(basis_one_form(3, 1)), basis_form(3, MultiIndex({2, 3}))) == 0.0);
  KForm vol = basis_form(3, MultiIndex({1, 2, 3}));
  CHECK(hodge(vol).rank() == 0);
  CHECK(hodge(vol)[0] == 1.0);

  // defining property: w ^ l = <*w; l> dx^{1..n}
  Rng rng(31);
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      for (int rep = 0; rep < 20; ++rep) {
        KForm w = random_form(n, k, rng);
        KForm l = random_form(n, n - k, rng);
        KForm top = wedge(w, l);
        CHECK(std::abs(top[0] - inner(hodge(w), l)) < 1e-12);
      }

  // hodge(hodge(w)) = (-1)^{k(n-k)} w
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      KForm w = random_form(n, k, rng);
      const double sign = (k * (n - k)) % 2 == 0 ? 1.0 : -1.0;
      CHECK(coeff_residual(hodge(hodge(w)), sign * w) == 0.0);
    }

  // v -| w = (-1)^{n(k-1)} * (v ^ *w) at n=4, k=2 and the general range
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n; ++k)
      for (int rep = 0; rep < 10; ++rep) {
        KForm v = random_form(n, 1, rng);
        KForm w = random_form(n, k, rng);
        const double sign = (n * (k - 1)) % 2 == 0 ? 1.0 : -1.0;
        CHECK(coeff_residual(interior(v, w), sign * hodge(wedge(v, hodge(w)))) < 1e-12);
      }
}

TEST_CASE("orthogonal factors: norm product and contraction by a factor") {
  Rng rng(37);
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= std::min(4, n); ++k)
      for (int rep = 0; rep < 20; ++rep) {
        // Gram-Schmidt a random set of k one-forms
        std::vector<KForm> lam;
        for (int i = 0; i < k; ++i) {
          KForm v = random_form(n, 1, rng);
          for (const KForm& u : lam) v -= (inner(v, u) / u.norm_sq()) * u;
          lam.push_back(v);
        }
        KForm w(n, 0);
        w[0] = 1.0;
        double prod = 1.0;
        for (const KForm& u : lam) {
          w = wedge(w, u);
          prod *= std::sqrt(u.norm_sq());
        }
        CHECK(std::abs(std::sqrt(w.norm_sq()) - prod) < 1e-12);
        if (k >= 2)
          for (int i = 0; i < k; ++i) {
            KForm rest(n, 0);
            rest[0] = 1.0;
            for (int j = 0; j < k; ++j)
              if (j != i) rest = wedge(rest, lam[static_cast<std::size_t>(j)]);
            CHECK(interior(lam[static_cast<std::size_t>(i)], rest).max_abs() < 1e-12);
          }
      }
}

TEST_CASE("contraction matrix of a simple form against brute force") {
  // C^{jl} = sum over (s_2..s_k) of w^{j s_2..s_k} w^{l s_2..s_k} for
  // w = lam_1 ^ ... ^ lam_k with orthogonal factors equals
  // (k-1)! sum_g |product of the other norms|^2 lam_g^j lam_g^l
  Rng rng(41);
  for (int n = 2; n <= 5; ++n)
    for (int k = 2; k <= std::min(4, n); ++k)
      for (int rep = 0; rep < 10; ++rep) {
        std::vector<KForm> lam;
        for (int i = 0; i < k; ++i) {
          KForm v = random_form(n, 1, rng);
          for (const KForm& u : lam) v -= (inner(v, u) / u.norm_sq()) * u;
          lam.push_back(v);
        }
        KForm w(n, 0);
        w[0] = 1.0;
        for (const KForm& u : lam) w = wedge(w, u);

        double fact = 1.0;
        for (int i = 2; i <= k - 1; ++i) fact *= i;

        // brute-force sum over all generalized tuples (s_2..s_k)
        std::vector<int> tuple(static_cast<std::size_t>(k));
        for (int j = 1; j <= n; ++j)
          for (int l = 1; l <= n; ++l) {
            double brute = 0;
            std::vector<int> s(static_cast<std::size_t>(k - 1), 1);
            while (true) {
              tuple[0] = j;
              std::copy(s.begin(), s.end(), tuple.begin() + 1);
              const double wj = w.general(tuple);
              tuple[0] = l;
              brute += wj * w.general(tuple);
              int t = k - 2;
              while (t >= 0 && ++s[static_cast<std::size_t>(t)] == n + 1) {
                s[static_cast<std::size_t>(t)] = 1;
                --t;
              }
              if (t < 0) break;
            }
            double expect = 0;
            for (int g = 0; g < k; ++g) {
              double others = 1.0;
              for (int i = 0; i < k; ++i)
                if (i != g) others *= lam[static_cast<std::size_t>(i)].norm_sq();
              expect += others * lam[static_cast<std::size_t>(g)][static_cast<std::size_t>(j - 1)] *
                        lam[static_cast<std::size_t>(g)][static_cast<std::size_t>(l - 1)];
            }
            CHECK(std::abs(brute - fact * expect) < 1e-10);
          }
      }
}
