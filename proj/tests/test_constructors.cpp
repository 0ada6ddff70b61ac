#include "pkme/constructors.hpp"
#include "pkme/verifier.hpp"

#include "test_helpers.hpp"

#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace pkme;

namespace {

constexpr double kEighthNorm = 0.35355339059327373;  // 1 / (2 sqrt 2)

double real_amp(const PureState& state, std::initializer_list<int> digits) {
  const Complex value = state.amplitude(digits);
  REQUIRE(value.imag() == 0.0);
  return value.real();
}

}  // namespace

TEST_CASE("duplicated-block state on four qudits", "[constructors]") {
  const PureState state = pkme_4k(1, 2);
  CHECK(real_amp(state, {0, 0, 0, 0}) == 0.5);
  CHECK(real_amp(state, {0, 0, 1, 1}) == 0.5);
  CHECK(real_amp(state, {1, 1, 0, 0}) == 0.5);
  CHECK(real_amp(state, {1, 1, 1, 1}) == 0.5);
  CHECK(real_amp(state, {0, 1, 0, 1}) == 0.0);
  CHECK(verify_pkme(state, four_partite_spec(4, 1)).verdict);
}

TEST_CASE("duplicated-block state on eight qudits", "[constructors]") {
  const PureState state = pkme_4k(2, 2);
  // Pattern |i,j,i,j,l,m,l,m> for (i,j,l,m) = (0,1,1,0).
  CHECK(real_amp(state, {0, 1, 0, 1, 1, 0, 1, 0}) == 0.25);
  CHECK(real_amp(state, {1, 0, 0, 0, 0, 0, 0, 0}) == 0.0);
  CHECK(verify_pkme(state, four_partite_spec(8, 2)).verdict);
}

TEST_CASE("duplicated-block states verify across k and d", "[constructors]") {
  for (const auto& [k, d] :
       std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}}) {
    const VerificationReport report = verify_pkme(pkme_4k(k, d), four_partite_spec(4 * k, k));
    INFO("k=" << k << " d=" << d);
    CHECK(report.verdict);
    CHECK(report.max_deviation() <= 1e-12);
  }
}

TEST_CASE("six-qubit parity-pattern state", "[constructors]") {
  const PureState state = pkme_6qubit();
  CHECK(real_amp(state, {0, 0, 0, 0, 0, 0}) == Approx(kEighthNorm).epsilon(1e-15));
  CHECK(real_amp(state, {0, 1, 0, 0, 0, 0}) == 0.0);
  const VerificationReport report = verify_pkme(state, four_partite_spec(6, 1));
  CHECK(report.checks.size() == 12);
  CHECK(report.verdict);
}

TEST_CASE("five-qudit parity state", "[constructors]") {
  SECTION("qubit case verifies over all five structures") {
    const VerificationReport report = verify_pkme(pkme_5(2), four_partite_spec(5, 1));
    CHECK(report.checks.size() == 5);
    CHECK(report.verdict);
  }
  SECTION("adjacent pair {1,2} is not maximally mixed") {
    const DensityMatrix rho = partial_trace(pkme_5(2), {1, 2});
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    CHECK(testutil::max_abs_diff(rho.entries(), expected) < 1e-14);
  }
  SECTION("qutrit case uses mod-3 addition") {
    const PureState state = pkme_5(3);
    CHECK(real_amp(state, {1, 1, 2, 2, 0}) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(verify_pkme(state, four_partite_spec(5, 1)).verdict);
  }
}

TEST_CASE("odd-size duplicated-block states with a parity qubit", "[constructors]") {
  SECTION("k=1 coincides with the five-qubit parity state") {
    CHECK(testutil::amplitude_distance(pkme_4k1(1), pkme_5(2)) == 0.0);
    CHECK(real_amp(pkme_4k1(1), {1, 1, 1, 1, 0}) == 0.5);
  }
  SECTION("k=2 verifies on nine qubits") {
    const VerificationReport report = verify_pkme(pkme_4k1(2), four_partite_spec(9, 2));
    CHECK(report.checks.size() == 9);
    CHECK(report.verdict);
  }
}

TEST_CASE("seven-qubit state", "[constructors]") {
  const PureState state = pkme_7();
  CHECK(real_amp(state, {1, 0, 1, 0, 1, 1, 0}) == Approx(kEighthNorm).epsilon(1e-15));
  const VerificationReport report = verify_pkme(state, four_partite_spec(7, 2));
  CHECK(report.checks.size() == 7);
  CHECK(report.verdict);
  CHECK_FALSE(verify_ame(state).verdict);
}

TEST_CASE("general duplicated-block families", "[constructors]") {
  SECTION("two blocks reduce to the four-qudit pattern") {
    CHECK(testutil::amplitude_distance(general_2mk(2, 1), pkme_4k(1, 2)) == 0.0);
    CHECK(testutil::amplitude_distance(general_2mk(2, 2), pkme_4k(2, 2)) == 0.0);
  }
  SECTION("two blocks plus parity reduce to the five-qubit state") {
    CHECK(testutil::amplitude_distance(general_2mk1(2, 1), pkme_5(2)) == 0.0);
  }
  SECTION("three blocks verify against the six-part spec") {
    const StructureSpec spec = make_structure_spec(6, {1, 1, 1}, {1, 1, 1});
    CHECK(verify_pkme(general_2mk(3, 1), spec).verdict);
  }
  SECTION("three blocks plus parity verify against the uneven spec") {
    const StructureSpec spec = make_structure_spec(7, {1, 1, 1}, {1, 1, 2});
    CHECK(verify_pkme(general_2mk1(3, 1), spec).verdict);
  }
}

TEST_CASE("four-qubit family cases", "[constructors]") {
  SECTION("prime case with the identity block is the duplicated-block state") {
    const PureState state = four_qubit_family(
        FamilyParams4Qubit::prime(UnitaryMatrix::identity(3)));
    CHECK(testutil::amplitude_distance(state, pkme_4k(1, 2)) == 0.0);
  }
  SECTION("double_prime with swap-like outer block") {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const PureState state = four_qubit_family(FamilyParams4Qubit::double_prime(
        UnitaryMatrix::identity(2), UnitaryMatrix(x)));
    CHECK(real_amp(state, {0, 0, 1, 1}) == 0.5);
    CHECK(real_amp(state, {1, 1, 0, 0}) == 0.5);
    CHECK(real_amp(state, {0, 1, 0, 1}) == 0.5);
    CHECK(real_amp(state, {1, 0, 1, 0}) == 0.5);
    CHECK(real_amp(state, {0, 0, 0, 0}) == 0.0);
    CHECK(verify_pkme(state, four_partite_spec(4, 1)).verdict);
  }
  SECTION("zero case equals double_prime with identity outer block") {
    RngState rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const UnitaryMatrix inner = haar_random_unitary(2, rng);
      const PureState zero_state = four_qubit_family(FamilyParams4Qubit::zero(inner));
      const PureState dp_state = four_qubit_family(
          FamilyParams4Qubit::double_prime(inner, UnitaryMatrix::identity(2)));
      REQUIRE(testutil::amplitude_distance(zero_state, dp_state) == 0.0);
    }
  }
  SECTION("zero case equals the prime case with an embedded block") {
    RngState rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      const UnitaryMatrix inner = haar_random_unitary(2, rng);
      Matrix embedded = Matrix::Zero(3, 3);
      embedded.block(0, 0, 2, 2) = inner.entries();
      embedded(2, 2) = 1.0;
      const PureState zero_state = four_qubit_family(FamilyParams4Qubit::zero(inner));
      const PureState prime_state =
          four_qubit_family(FamilyParams4Qubit::prime(UnitaryMatrix(embedded)));
      REQUIRE(testutil::amplitude_distance(zero_state, prime_state) <= 1e-12);
    }
  }
  SECTION("random draws of every case verify") {
    RngState rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      const PureState prime_state =
          four_qubit_family(FamilyParams4Qubit::prime(haar_random_unitary(3, rng)));
      REQUIRE(verify_pkme(prime_state, four_partite_spec(4, 1)).max_deviation() <= 1e-12);
      const PureState dp_state = four_qubit_family(FamilyParams4Qubit::double_prime(
          haar_random_unitary(2, rng), haar_random_unitary(2, rng)));
      REQUIRE(verify_pkme(dp_state, four_partite_spec(4, 1)).max_deviation() <= 1e-12);
      const PureState zero_state =
          four_qubit_family(FamilyParams4Qubit::zero(haar_random_unitary(2, rng)));
      REQUIRE(verify_pkme(zero_state, four_partite_spec(4, 1)).max_deviation() <= 1e-12);
    }
  }
  SECTION("parameter matrices must have the right shape") {
    CHECK_THROWS_AS(FamilyParams4Qubit::prime(UnitaryMatrix::identity(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(FamilyParams4Qubit::zero(UnitaryMatrix::identity(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(FamilyParams4Qubit::double_prime(UnitaryMatrix::identity(2),
                                                     UnitaryMatrix::identity(3)),
                    std::invalid_argument);
  }
}

TEST_CASE("GHZ states", "[constructors]") {
  SECTION("four qubits fail the two-region check with deviation one half") {
    const VerificationReport report = verify_pkme(ghz(4, 2), four_partite_spec(4, 1));
    CHECK_FALSE(report.verdict);
    REQUIRE(report.worst() != nullptr);
    CHECK(report.worst()->deviation == Approx(0.5).margin(1e-12));
  }
  SECTION("two qubits give the Bell state") {
    const DensityMatrix rho = partial_trace(ghz(2, 2), {1});
    CHECK(testutil::max_abs_diff(rho.entries(), Matrix::Identity(2, 2) / 2.0) < 1e-15);
  }
  SECTION("three qubits pass the AME scan") {
    CHECK(verify_ame(ghz(3, 2)).verdict);
  }
  SECTION("qutrit normalization") {
    CHECK(std::abs(ghz(3, 3).amplitudes().norm() - 1.0) < 1e-15);
    CHECK(real_amp(ghz(3, 3), {2, 2, 2}) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(ghz(1, 2), std::invalid_argument);
}

TEST_CASE("five-qubit fixture passes every check", "[constructors]") {
  const PureState fixture = ame5_fixture();
  CHECK(verify_ame(fixture).verdict);
  CHECK(verify_pme(fixture).verdict);
  CHECK(verify_pkme(fixture, four_partite_spec(5, 1)).verdict);
}

TEST_CASE("constructor outputs are normalized", "[constructors]") {
  const std::vector<PureState> states = {
      pkme_4k(1, 3), pkme_6qubit(),      pkme_5(4),          pkme_4k1(2),
      pkme_7(),      general_2mk(3, 2),  general_2mk1(3, 1), ghz(5, 3),
      ame5_fixture()};
  for (const PureState& state : states) {
    CHECK(std::abs(state.amplitudes().norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("constructors respect the capacity guard", "[constructors]") {
  CHECK_THROWS_AS(pkme_4k(7, 2), std::length_error);
  CHECK_THROWS_AS(pkme_4k(2, 10), std::length_error);
  CHECK_THROWS_AS(ghz(40, 2), std::length_error);
  CHECK_THROWS_AS(general_2mk(7, 2), std::length_error);
}
