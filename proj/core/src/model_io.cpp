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

#include "chiralq/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "chiralq/error.hpp"

namespace chiralq {
namespace {

constexpr double kDuplicateTolerance = 1e-10;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

bool parse_double(std::string token, double& value) {
  // Fortran writers sometimes emit 1.0D-03.
  std::replace(token.begin(), token.end(), 'D', 'E');
  std::replace(token.begin(), token.end(), 'd', 'e');
  if (!token.empty() && token.front() == '+') token.erase(0, 1);
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last;
}

bool parse_long(const std::string& token, long& value) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last;
}

std::size_t canonical_pair(std::size_t p, std::size_t q) {
  return p >= q ? p * (p + 1) / 2 + q : q * (q + 1) / 2 + p;
}

std::size_t canonical_quad(std::size_t p, std::size_t q, std::size_t r,
                           std::size_t s) {
  const std::size_t pq = canonical_pair(p, q);
  const std::size_t rs = canonical_pair(r, s);
  return canonical_pair(pq, rs);
}

struct HeaderFields {
  long norb = -1;
  long nelec = -1;
  long ms2 = 0;
};

HeaderFields parse_header(const std::string& text,
                          const std::vector<std::size_t>& line_starts,
                          std::size_t first_line) {
  auto line_of = [&](std::size_t offset) {
    auto it = std::upper_bound(line_starts.begin(), line_starts.end(), offset);
    return first_line + static_cast<std::size_t>(it - line_starts.begin()) - 1;
  };

  static const std::regex key_re(R"(([A-Za-z_][A-Za-z0-9_]*)\s*=)");
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> keys;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), key_re);
       it != std::sregex_iterator(); ++it) {
    keys.push_back({upper((*it)[1].str()),
                    {static_cast<std::size_t>(it->position(0)),
                     static_cast<std::size_t>(it->position(0) + it->length(0))}});
  }

  HeaderFields fields;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const auto& [key, span] = keys[k];
    const std::size_t value_end =
        k + 1 < keys.size() ? keys[k + 1].second.first : text.size();
    std::string raw = text.substr(span.second, value_end - span.second);
    std::replace(raw.begin(), raw.end(), ',', ' ');
    const auto values = split_ws(raw);
    const std::size_t line = line_of(span.first);

    auto single_int = [&](long& dst) {
      if (values.size() != 1 || !parse_long(values[0], dst)) {
        throw ParseError(fmt::format("header field {} expects one integer", key),
                         line);
      }
    };
    if (key == "NORB") {
      single_int(fields.norb);
    } else if (key == "NELEC") {
      single_int(fields.nelec);
    } else if (key == "MS2") {
      single_int(fields.ms2);
    } else if (key == "ORBSYM" || key == "ISYM" || key == "UHF" ||
               key == "IUHF" || key == "ST" || key == "III") {
      // Symmetry labels are accepted and ignored.
      for (const auto& v : values) {
        long ignored = 0;
        if (!parse_long(v, ignored)) {
          throw ParseError(fmt::format("non-integer value in {}", key), line);
        }
      }
    } else {
      throw ParseError(fmt::format("unknown header field {}", key), line);
    }
  }
  if (fields.norb <= 0) {
    throw ParseError("header is missing a positive NORB", first_line);
  }
  if (fields.nelec < 0) {
    throw ParseError("header is missing NELEC", first_line);
  }
  return fields;
}

}  // namespace

void TwoElectronTensor::set_symmetric(std::size_t p, std::size_t q,
                                      std::size_t r, std::size_t s,
                                      double value) noexcept {
  (*this)(p, q, r, s) = value;
  (*this)(q, p, r, s) = value;
  (*this)(p, q, s, r) = value;
  (*this)(q, p, s, r) = value;
  (*this)(r, s, p, q) = value;
  (*this)(s, r, p, q) = value;
  (*this)(r, s, q, p) = value;
  (*this)(s, r, q, p) = value;
}

double TwoElectronTensor::symmetry_defect() const noexcept {
  double worst = 0.0;
  for (std::size_t p = 0; p < n_; ++p)
    for (std::size_t q = 0; q < n_; ++q)
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t s = 0; s < n_; ++s) {
          const double v = (*this)(p, q, r, s);
          worst = std::max({worst, std::abs(v - (*this)(q, p, r, s)),
                            std::abs(v - (*this)(p, q, s, r)),
                            std::abs(v - (*this)(r, s, p, q))});
        }
  return worst;
}

void SpatialIntegrals::validate(double tol) const {
  const auto n = static_cast<Eigen::Index>(n_orbitals);
  if (h.rows() != n || h.cols() != n || g.dim() != n_orbitals) {
    throw DimensionError("integral arrays do not match n_orbitals");
  }
  if (n_electrons == 0 || n_electrons > 2 * n_orbitals) {
    throw ConsistencyError(fmt::format(
        "electron count {} outside (0, {}]", n_electrons, 2 * n_orbitals));
  }
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw ConsistencyError("one-electron integrals are not symmetric");
  }
  if (g.symmetry_defect() > tol) {
    throw ConsistencyError("two-electron integrals lack 8-fold symmetry");
  }
}

Axis parse_axis(const std::string& token) {
  const std::string t = upper(token);
  if (t == "X") return Axis::X;
  if (t == "Y") return Axis::Y;
  if (t == "Z") return Axis::Z;
  throw Error(ErrorCategory::Parse, "invalid axis token '" + token + "'");
}

char axis_letter(Axis axis) noexcept {
  return "XYZ"[static_cast<int>(axis)];
}

PropertyIntegrals PropertyIntegrals::zeros(std::size_t n_orbitals) {
  PropertyIntegrals p;
  p.n_orbitals = n_orbitals;
  const auto n = static_cast<Eigen::Index>(n_orbitals);
  for (int a = 0; a < 3; ++a) {
    p.dipole[a] = Eigen::MatrixXd::Zero(n, n);
    p.magnetic[a] = Eigen::MatrixXd::Zero(n, n);
  }
  return p;
}

void PropertyIntegrals::validate(double tol) const {
  const auto n = static_cast<Eigen::Index>(n_orbitals);
  for (int a = 0; a < 3; ++a) {
    if (dipole[a].rows() != n || dipole[a].cols() != n ||
        magnetic[a].rows() != n || magnetic[a].cols() != n) {
      throw DimensionError("property matrices do not match NORB");
    }
    if (n == 0) continue;
    if ((dipole[a] - dipole[a].transpose()).cwiseAbs().maxCoeff() > tol) {
      throw ConsistencyError("dipole integrals are not symmetric");
    }
    if ((magnetic[a] + magnetic[a].transpose()).cwiseAbs().maxCoeff() > tol) {
      throw ConsistencyError("magnetic integrals are not antisymmetric");
    }
  }
}

SpatialIntegrals parse_fcidump(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  // Header: everything from &FCI up to and including the &END or '/' marker.
  std::string header;
  std::vector<std::size_t> line_starts;
  std::size_t header_first_line = 0;
  bool in_header = false;
  bool header_done = false;
  while (!header_done && std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (!in_header) {
      if (t.empty()) continue;
      if (upper(t).rfind("&FCI", 0) != 0) {
        throw ParseError("expected '&FCI' namelist header", line_no);
      }
      in_header = true;
      header_first_line = line_no;
      t = t.substr(4);
    }
    const std::string tu = upper(t);
    std::size_t end = tu.find("&END");
    std::size_t end_len = 4;
    if (end == std::string::npos) {
      end = tu.find('/');
      end_len = 1;
    }
    if (end != std::string::npos) {
      t = t.substr(0, end);
      header_done = true;
      (void)end_len;
    }
    line_starts.push_back(header.size());
    header += t;
    header += '\n';
  }
  if (!in_header) throw ParseError("empty FCIDUMP", line_no + 1);
  if (!header_done) {
    throw ParseError("unterminated namelist header (missing &END or /)",
                     line_no);
  }
  const HeaderFields fields = parse_header(header, line_starts, header_first_line);

  SpatialIntegrals ints;
  ints.n_orbitals = static_cast<std::size_t>(fields.norb);
  ints.n_electrons = static_cast<std::size_t>(fields.nelec);
  ints.ms2 = static_cast<int>(fields.ms2);
  const std::size_t n = ints.n_orbitals;
  ints.h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                 static_cast<Eigen::Index>(n));
  ints.g = TwoElectronTensor(n);

  std::vector<char> g_seen(canonical_quad(n - 1, n - 1, n - 1, n - 1) + 1, 0);
  std::vector<char> h_seen(canonical_pair(n - 1, n - 1) + 1, 0);
  bool core_seen = false;

  auto check_duplicate = [&](char& seen, double old_value, double new_value) {
    if (seen && std::abs(old_value - new_value) > kDuplicateTolerance) {
      throw ConsistencyError(fmt::format(
          "line {}: duplicate record conflicts with earlier value {:.17g}",
          line_no, old_value));
    }
    seen = 1;
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 5) {
      throw ParseError("integral record must have 5 fields", line_no);
    }
    double value = 0.0;
    if (!parse_double(tokens[0], value)) {
      throw ParseError("invalid numeric value '" + tokens[0] + "'", line_no);
    }
    std::array<long, 4> idx{};
    for (int k = 0; k < 4; ++k) {
      if (!parse_long(tokens[k + 1], idx[k])) {
        throw ParseError("invalid index '" + tokens[k + 1] + "'", line_no);
      }
      if (idx[k] < 0 || idx[k] > fields.norb) {
        throw RangeError(fmt::format("line {}: index {} outside [1, {}]",
                                     line_no, idx[k], fields.norb));
      }
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      char seen = core_seen ? 1 : 0;
      check_duplicate(seen, ints.core_energy, value);
      core_seen = true;
      ints.core_energy = value;
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      const auto p = static_cast<std::size_t>(i - 1);
      const auto q = static_cast<std::size_t>(j - 1);
      check_duplicate(h_seen[canonical_pair(p, q)], ints.h(p, q), value);
      ints.h(p, q) = value;
      ints.h(q, p) = value;
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      const auto p = static_cast<std::size_t>(i - 1);
      const auto q = static_cast<std::size_t>(j - 1);
      const auto r = static_cast<std::size_t>(k - 1);
      const auto s = static_cast<std::size_t>(l - 1);
      check_duplicate(g_seen[canonical_quad(p, q, r, s)], ints.g(p, q, r, s),
                      value);
      ints.g.set_symmetric(p, q, r, s, value);
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // Orbital energy record; carries no Hamiltonian information.
    } else {
      throw RangeError(fmt::format(
          "line {}: index pattern ({} {} {} {}) is not a valid record", line_no,
          i, j, k, l));
    }
  }

  if (ints.n_electrons == 0 || ints.n_electrons > 2 * n) {
    throw ConsistencyError(fmt::format("NELEC={} outside (0, {}]",
                                       ints.n_electrons, 2 * n));
  }
  return ints;
}

SpatialIntegrals read_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open FCIDUMP file " + path);
  return parse_fcidump(in);
}

void write_fcidump(std::ostream& out, const SpatialIntegrals& ints) {
  const std::size_t n = ints.n_orbitals;
  out << fmt::format("&FCI NORB={},NELEC={},MS2={},\n", n, ints.n_electrons,
                     ints.ms2);
  out << " ORBSYM=";
  for (std::size_t i = 0; i < n; ++i) out << "1,";
  out << "\n ISYM=1,\n&END\n";
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
          if (canonical_pair(p, q) < canonical_pair(r, s)) continue;
          const double v = ints.g(p, q, r, s);
          if (v == 0.0) continue;
          out << fmt::format("{:.17g} {} {} {} {}\n", v, p + 1, q + 1, r + 1,
                             s + 1);
        }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      const double v = ints.h(static_cast<Eigen::Index>(p),
                              static_cast<Eigen::Index>(q));
      if (v == 0.0) continue;
      out << fmt::format("{:.17g} {} {} 0 0\n", v, p + 1, q + 1);
    }
  out << fmt::format("{:.17g} 0 0 0 0\n", ints.core_energy);
}

PropertyIntegrals parse_property_integrals(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<PropertyIntegrals> props;
  long norb = -1;

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string keyword = upper(tokens[0]);

    if (keyword == "NORB") {
      if (props) throw ParseError("duplicate NORB line", line_no);
      if (tokens.size() != 2 || !parse_long(tokens[1], norb) || norb <= 0) {
        throw ParseError("NORB expects one positive integer", line_no);
      }
      props = PropertyIntegrals::zeros(static_cast<std::size_t>(norb));
      continue;
    }
    if (!props) throw ParseError("NORB must precede all other records", line_no);

    if (keyword == "ORIGIN") {
      if (tokens.size() != 4) throw ParseError("ORIGIN expects 3 values", line_no);
      for (int a = 0; a < 3; ++a) {
        if (!parse_double(tokens[a + 1], props->gauge_origin[a])) {
          throw ParseError("invalid ORIGIN component", line_no);
        }
      }
    } else if (keyword == "DIPOLE" || keyword == "ANGMOM") {
      if (tokens.size() != 5) {
        throw ParseError(keyword + " expects <axis> <p> <q> <value>", line_no);
      }
      Axis axis;
      try {
        axis = parse_axis(tokens[1]);
      } catch (const Error&) {
        throw ParseError("invalid axis token '" + tokens[1] + "'", line_no);
      }
      long p = 0;
      long q = 0;
      double value = 0.0;
      if (!parse_long(tokens[2], p) || !parse_long(tokens[3], q)) {
        throw ParseError("invalid orbital index", line_no);
      }
      if (!parse_double(tokens[4], value)) {
        throw ParseError("invalid numeric value '" + tokens[4] + "'", line_no);
      }
      if (p < 1 || p > norb || q < 1 || q > norb) {
        throw RangeError(fmt::format("line {}: index outside [1, {}]", line_no,
                                     norb));
      }
      const auto a = static_cast<int>(axis);
      const Eigen::Index i = p - 1;
      const Eigen::Index j = q - 1;
      if (keyword == "DIPOLE") {
        props->dipole[a](i, j) = value;
        props->dipole[a](j, i) = value;
      } else {
        if (i == j && value != 0.0) {
          throw ParseError("ANGMOM diagonal must vanish (antisymmetric)",
                           line_no);
        }
        props->magnetic[a](i, j) = value;
        props->magnetic[a](j, i) = -value;
      }
    } else {
      throw ParseError("unknown record '" + tokens[0] + "'", line_no);
    }
  }
  if (!props) throw ParseError("missing NORB header", line_no + 1);
  return *props;
}

PropertyIntegrals read_property_integrals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open property file " + path);
  return parse_property_integrals(in);
}

void write_property_integrals(std::ostream& out, const PropertyIntegrals& props) {
  out << "NORB " << props.n_orbitals << "\n";
  out << fmt::format("ORIGIN {:.17g} {:.17g} {:.17g}\n", props.gauge_origin[0],
                     props.gauge_origin[1], props.gauge_origin[2]);
  const auto n = static_cast<Eigen::Index>(props.n_orbitals);
  for (int a = 0; a < 3; ++a)
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p; q < n; ++q) {
        const double v = props.dipole[a](p, q);
        if (v != 0.0) {
          out << fmt::format("DIPOLE {} {} {} {:.17g}\n", "XYZ"[a], p + 1,
                             q + 1, v);
        }
      }
  for (int a = 0; a < 3; ++a)
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double v = props.magnetic[a](p, q);
        if (v != 0.0) {
          out << fmt::format("ANGMOM {} {} {} {:.17g}\n", "XYZ"[a], p + 1,
                             q + 1, v);
        }
      }
}

ActiveSpaceSelection select_active_space(std::span<const double> occupations,
                                         double epsilon,
                                         std::size_t n_electrons) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError(fmt::format("epsilon {} outside (0, 1)", epsilon));
  }
  std::vector<std::size_t> order(occupations.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return occupations[a] > occupations[b];
  });

  ActiveSpaceSelection sel;
  for (std::size_t i : order) {
    const double n_i = occupations[i];
    if (n_i < 0.0 || n_i > 2.0) {
      throw SelectionError(fmt::format("occupation {} of orbital {} outside [0, 2]",
                                       n_i, i));
    }
    if (n_i >= 2.0 - epsilon) {
      sel.frozen_occupied.push_back(i);
    } else if (n_i <= epsilon) {
      sel.discarded_virtual.push_back(i);
    } else {
      sel.active_indices.push_back(i);
    }
  }
  const auto frozen_electrons = 2 * sel.frozen_occupied.size();
  if (frozen_electrons > n_electrons) {
    throw SelectionError(fmt::format(
        "{} frozen orbitals need {} electrons but only {} are available",
        sel.frozen_occupied.size(), frozen_electrons, n_electrons));
  }
  sel.n_active_electrons = n_electrons - frozen_electrons;
  if (sel.n_active_electrons % 2 != 0) {
    throw SelectionError(fmt::format(
        "odd active electron count {} (closed-shell reference required)",
        sel.n_active_electrons));
  }
  return sel;
}

ActiveSpaceSelection full_active_space(const SpatialIntegrals& ints) {
  ActiveSpaceSelection sel;
  sel.active_indices.resize(ints.n_orbitals);
  std::iota(sel.active_indices.begin(), sel.active_indices.end(), std::size_t{0});
  sel.n_active_electrons = ints.n_electrons;
  return sel;
}

ActiveSpaceProblem freeze_core(const SpatialIntegrals& ints,
                               const ActiveSpaceSelection& sel,
                               const std::optional<PropertyIntegrals>& props) {
  const std::size_t n = ints.n_orbitals;
  if (sel.active_indices.empty()) {
    throw SelectionError("empty active space: nothing left to correlate");
  }
  if (ints.ms2 != 0) {
    throw SelectionError(fmt::format(
        "open-shell reference (MS2={}) is not supported", ints.ms2));
  }
  std::vector<char> used(n, 0);
  for (const auto* list : {&sel.active_indices, &sel.frozen_occupied,
                           &sel.discarded_virtual}) {
    for (std::size_t i : *list) {
      if (i >= n) {
        throw RangeError(fmt::format("orbital index {} outside [0, {})", i, n));
      }
      if (used[i]) {
        throw ConsistencyError(fmt::format("orbital {} listed twice", i));
      }
      used[i] = 1;
    }
  }
  if (std::find(used.begin(), used.end(), 0) != used.end()) {
    throw ConsistencyError("selection does not cover every orbital");
  }
  if (sel.n_active_electrons + 2 * sel.frozen_occupied.size() != ints.n_electrons ||
      sel.n_active_electrons % 2 != 0) {
    throw SelectionError("active electron count inconsistent with selection");
  }
  if (sel.n_active_electrons > 2 * sel.active_indices.size()) {
    throw SelectionError("more active electrons than active spin orbitals");
  }
  if (props && props->n_orbitals != n) {
    throw DimensionError(fmt::format(
        "property integrals have NORB={} but FCIDUMP has NORB={}",
        props->n_orbitals, n));
  }

  const auto& act = sel.active_indices;
  const auto& frz = sel.frozen_occupied;
  const std::size_t na = act.size();
  const auto& g = ints.g;
  auto h = [&](std::size_t p, std::size_t q) {
    return ints.h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
  };

  ActiveSpaceProblem prob;
  prob.n_active_orbitals = na;
  prob.n_active_electrons = sel.n_active_electrons;

  double core = ints.core_energy;
  for (std::size_t i : frz) core += 2.0 * h(i, i);
  for (std::size_t i : frz)
    for (std::size_t j : frz) core += 2.0 * g(i, i, j, j) - g(i, j, j, i);
  prob.effective_core_energy = core;

  const auto nai = static_cast<Eigen::Index>(na);
  prob.h_eff = Eigen::MatrixXd::Zero(nai, nai);
  for (std::size_t t = 0; t < na; ++t)
    for (std::size_t u = 0; u < na; ++u) {
      double v = h(act[t], act[u]);
      for (std::size_t i : frz) {
        v += 2.0 * g(i, i, act[t], act[u]) - g(act[t], i, i, act[u]);
      }
      prob.h_eff(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(u)) = v;
    }

  prob.g_act = TwoElectronTensor(na);
  for (std::size_t p = 0; p < na; ++p)
    for (std::size_t q = 0; q < na; ++q)
      for (std::size_t r = 0; r < na; ++r)
        for (std::size_t s = 0; s < na; ++s)
          prob.g_act(p, q, r, s) = g(act[p], act[q], act[r], act[s]);

  if (props) {
    PropertyIntegrals restricted = PropertyIntegrals::zeros(na);
    restricted.gauge_origin = props->gauge_origin;
    for (int a = 0; a < 3; ++a)
      for (std::size_t t = 0; t < na; ++t)
        for (std::size_t u = 0; u < na; ++u) {
          const auto ti = static_cast<Eigen::Index>(t);
          const auto ui = static_cast<Eigen::Index>(u);
          const auto at = static_cast<Eigen::Index>(act[t]);
          const auto au = static_cast<Eigen::Index>(act[u]);
          restricted.dipole[a](ti, ui) = props->dipole[a](at, au);
          restricted.magnetic[a](ti, ui) = props->magnetic[a](at, au);
        }
    prob.properties = std::move(restricted);
  }
  return prob;
}

}  // namespace chiralq
