// Copyright 2026 The chiralq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "chiralq/error.hpp"
#include "chiralq/hamiltonian.hpp"
#include "chiralq/model_io.hpp"
#include "dense_oracle.hpp"

namespace chiralq {
namespace {

constexpr const char* kTiny = R"(&FCI NORB=2,NELEC=2,MS2=0,
 ORBSYM=1,1,
 ISYM=1,
&END
 0.5 1 1 1 1
 0.25 2 1 1 1
 0.125 2 1 2 1
 0.0625 2 2 1 1
 0.4 2 2 2 2
 -1.0 1 1 0 0
 0.1 2 1 0 0
 -0.3 2 2 0 0
 0.7 0 0 0 0
)";

SpatialIntegrals parse(const std::string& text) {
  std::istringstream in(text);
  return parse_fcidump(in);
}

TEST(Fcidump, ParsesHeaderAndFillsSymmetry) {
  const auto ints = parse(kTiny);
  EXPECT_EQ(ints.n_orbitals, 2u);
  EXPECT_EQ(ints.n_electrons, 2u);
  EXPECT_EQ(ints.ms2, 0);
  EXPECT_DOUBLE_EQ(ints.core_energy, 0.7);
  EXPECT_DOUBLE_EQ(ints.h(0, 1), 0.1);
  EXPECT_DOUBLE_EQ(ints.h(1, 0), 0.1);
  EXPECT_DOUBLE_EQ(ints.g(0, 0, 0, 1), 0.25);
  EXPECT_DOUBLE_EQ(ints.g(1, 0, 0, 0), 0.25);
  EXPECT_DOUBLE_EQ(ints.g(0, 1, 0, 1), 0.125);
  EXPECT_DOUBLE_EQ(ints.g(1, 0, 0, 1), 0.125);
  EXPECT_DOUBLE_EQ(ints.g(0, 0, 1, 1), 0.0625);
  EXPECT_LT(ints.g.symmetry_defect(), 1e-15);
}

TEST(Fcidump, RoundTripIsExact) {
  const auto ints = read_fcidump(testing::fixture_path("h4.fcidump"));
  std::ostringstream out;
  write_fcidump(out, ints);
  const auto back = parse(out.str());
  EXPECT_EQ(back.n_orbitals, ints.n_orbitals);
  EXPECT_EQ((back.h - ints.h).cwiseAbs().maxCoeff(), 0.0);
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = 0; q < 4; ++q)
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t s = 0; s < 4; ++s)
          ASSERT_EQ(back.g(p, q, r, s), ints.g(p, q, r, s));
  EXPECT_EQ(back.core_energy, ints.core_energy);
}

TEST(Fcidump, MalformedValueReportsLine) {
  std::string text = kTiny;
  text.replace(text.find("0.4 2 2 2 2"), 11, "abc 2 2 2 2");
  try {
    parse(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 9u);
  }
}

TEST(Fcidump, IndexOutsideNorbIsRangeError) {
  std::string text = kTiny;
  text.replace(text.find("0.4 2 2 2 2"), 11, "0.4 3 2 2 2");
  EXPECT_THROW(parse(text), RangeError);
}

TEST(Fcidump, ConflictingDuplicateIsConsistencyError) {
  std::string text = kTiny;
  text += " 0.26 1 1 2 1\n";
  EXPECT_THROW(parse(text), ConsistencyError);
}

TEST(Fcidump, IdenticalDuplicateIsAccepted) {
  std::string text = kTiny;
  text += " 0.25 1 1 1 2\n";
  EXPECT_NO_THROW(parse(text));
}

TEST(Fcidump, MissingHeaderIsParseError) {
  EXPECT_THROW(parse(" 0.5 1 1 1 1\n"), ParseError);
}

TEST(Fcidump, MissingFileIsIoError) {
  EXPECT_THROW(read_fcidump("/nonexistent/none.fcidump"), IoError);
}

TEST(PropertyIntegrals, ParseAndRoundTrip) {
  const auto props = read_property_integrals(testing::fixture_path("synthetic_chiral.props"));
  EXPECT_EQ(props.n_orbitals, 3u);
  EXPECT_NO_THROW(props.validate());
  for (int a = 0; a < 3; ++a) {
    EXPECT_LT((props.dipole[a] - props.dipole[a].transpose()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((props.magnetic[a] + props.magnetic[a].transpose()).cwiseAbs().maxCoeff(), 1e-15);
  }
  std::ostringstream out;
  write_property_integrals(out, props);
  std::istringstream in(out.str());
  const auto back = parse_property_integrals(in);
  for (int a = 0; a < 3; ++a) {
    EXPECT_EQ((back.dipole[a] - props.dipole[a]).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((back.magnetic[a] - props.magnetic[a]).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(PropertyIntegrals, UnknownAxisIsParseError) {
  std::istringstream in("NORB 2\nDIPOLE W 1 1 0.5\n");
  EXPECT_THROW(parse_property_integrals(in), ParseError);
}

TEST(ActiveSpace, LithiumHydrideOccupationsSelectSigmaSpace) {
  const auto ref = testing::read_reference("lih.ref.csv");
  std::vector<double> occ;
  for (int i = 0; i < 6; ++i) occ.push_back(ref.at("occupation_" + std::to_string(i)));
  const auto sel = select_active_space(occ, 0.002, 4);
  EXPECT_EQ(sel.active_indices, (std::vector<std::size_t>{1, 5, 2}));
  EXPECT_EQ(sel.frozen_occupied, (std::vector<std::size_t>{0}));
  EXPECT_EQ(sel.discarded_virtual, (std::vector<std::size_t>{4, 3}));
  EXPECT_EQ(sel.n_active_electrons, 2u);
}

TEST(ActiveSpace, DefaultThresholdLeavesLithiumHydrideEmpty) {
  const auto ref = testing::read_reference("lih.ref.csv");
  const auto ints = read_fcidump(testing::fixture_path("lih.fcidump"));
  std::vector<double> occ;
  for (int i = 0; i < 6; ++i) occ.push_back(ref.at("occupation_" + std::to_string(i)));
  const auto sel = select_active_space(occ, 0.02, 4);
  EXPECT_TRUE(sel.active_indices.empty());
  EXPECT_EQ(sel.frozen_occupied, (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(freeze_core(ints, sel), SelectionError);
}

TEST(ActiveSpace, OddActiveElectronCountIsSelectionError) {
  const std::vector<double> occ{2.0, 1.0, 1.0, 0.0};
  EXPECT_THROW(select_active_space(occ, 0.02, 3), SelectionError);
}

TEST(ActiveSpace, FrozenCoreCasciMatchesClassicalReference) {
  const auto ref = testing::read_reference("lih.ref.csv");
  const auto ints = read_fcidump(testing::fixture_path("lih.fcidump"));
  std::vector<double> occ;
  for (int i = 0; i < 6; ++i) occ.push_back(ref.at("occupation_" + std::to_string(i)));
  const auto prob = freeze_core(ints, select_active_space(occ, 0.002, 4));
  ASSERT_EQ(prob.n_active_orbitals, 3u);
  const auto h = testing::dense_hamiltonian(prob);
  const auto eig = testing::sector_eigen(h, testing::sector_indices(6, 2, 0));
  for (int k = 0; k < 9; ++k)
    EXPECT_NEAR(eig.values[k], ref.at("casci_energy_" + std::to_string(k)), 1e-8) << k;
}

TEST(ActiveSpace, FullSpaceKeepsIntegrals) {
  const auto ints = read_fcidump(testing::fixture_path("h2.fcidump"));
  const auto prob = freeze_core(ints, full_active_space(ints));
  EXPECT_EQ(prob.n_active_orbitals, 2u);
  EXPECT_EQ(prob.effective_core_energy, ints.core_energy);
  EXPECT_EQ((prob.h_eff - ints.h).cwiseAbs().maxCoeff(), 0.0);
}

}  // namespace
}  // namespace chiralq
